//! Sentence-per-line reader with event offsets.
//!
//! ```text
//! doc_id<TAB>sent_idx<TAB>space-separated tokens<TAB>comma-separated event offsets
//! ```
//!
//! Offsets are sentence-local token positions; the last column may be empty
//! or `_` for sentences without events. Consecutive lines sharing a doc_id
//! belong to the same document.

use super::parse_err;
use crate::adapters::source::SourceDocument;
use crate::model::{EventMention, Token};
use crate::CoreError;

pub fn parse(text: &str, path: &str) -> Result<Vec<SourceDocument>, CoreError> {
    let mut docs: Vec<SourceDocument> = Vec::new();
    let mut current: Option<SourceDocument> = None;

    for (lineno, raw) in text.lines().enumerate() {
        let lineno = lineno + 1;
        let line = raw.trim_end_matches('\r');
        if line.trim().is_empty() {
            continue;
        }
        let cols: Vec<&str> = line.split('\t').collect();
        if cols.len() != 4 {
            return Err(parse_err(
                path,
                lineno,
                format!("expected 4 tab-separated columns, found {}", cols.len()),
            ));
        }
        let doc_id = cols[0];
        cols[1]
            .parse::<usize>()
            .map_err(|_| parse_err(path, lineno, format!("bad sentence index '{}'", cols[1])))?;
        let words: Vec<&str> = cols[2].split_whitespace().collect();
        if words.is_empty() {
            return Err(parse_err(path, lineno, "empty sentence"));
        }

        let switch = current.as_ref().map_or(true, |d| d.doc_id != doc_id);
        if switch {
            if let Some(done) = current.take() {
                docs.push(done);
            }
            current = Some(SourceDocument::new(doc_id));
        }
        let doc = current.as_mut().expect("set above");
        let sentence = doc.n_sentences();
        let base = doc.tokens.len();
        for w in &words {
            let idx = doc.tokens.len();
            doc.tokens.push(Token::new(idx, *w, sentence));
        }

        let offsets = cols[3].trim();
        if !offsets.is_empty() && offsets != "_" {
            for part in offsets.split(',') {
                let off: usize = part.trim().parse().map_err(|_| {
                    parse_err(path, lineno, format!("bad event offset '{part}'"))
                })?;
                if off >= words.len() {
                    return Err(parse_err(
                        path,
                        lineno,
                        format!("event offset {off} exceeds sentence length {}", words.len()),
                    ));
                }
                doc.events.push(EventMention::factual(base + off));
            }
        }
    }

    if let Some(done) = current.take() {
        docs.push(done);
    }
    Ok(docs)
}

#[cfg(test)]
mod tests {
    use super::*;

    const FIXTURE: &str = include_str!("../../../tests/fixtures/sample.lit");

    #[test]
    fn parses_fixture() {
        let docs = parse(FIXTURE, "sample.lit").unwrap();
        assert_eq!(docs.len(), 2);
        assert_eq!(docs[0].doc_id, "lit_001");
        assert_eq!(docs[0].n_sentences(), 3);
        assert_eq!(docs[0].events.len(), 4);
        assert_eq!(docs[1].events.len(), 1);
        let first = docs[0].events[0].token_index;
        assert_eq!(docs[0].tokens[first].text, "went");
    }

    #[test]
    fn offset_out_of_range_is_an_error() {
        let text = "d\t0\tone two\t5\n";
        let err = parse(text, "t").unwrap_err();
        assert!(err.to_string().contains("exceeds sentence length"));
    }

    #[test]
    fn empty_offsets_mean_no_events() {
        let text = "d\t0\tone two\t\n";
        let docs = parse(text, "t").unwrap();
        assert!(docs[0].events.is_empty());
    }
}
