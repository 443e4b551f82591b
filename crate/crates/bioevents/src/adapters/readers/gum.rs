//! Token-per-line reader with typed coreference brackets.
//!
//! ```text
//! # newdoc id = GUM_bio_ada
//! # sent_id = 1
//! 1	Ada	Ada	PROPN	(1-person)
//! 2	was	be	AUX	_
//! ```
//!
//! Columns: sentence-local index, form, lemma, coarse POS, coref. The coref
//! column uses bracket notation: `(id-type` opens a span of chain `id`,
//! `id)` closes it, `(id-type)` is a single-token mention; multiple entries
//! are `|`-separated and `_` means none.

use std::collections::BTreeMap;

use super::parse_err;
use crate::adapters::source::{EntityChain, SourceDocument};
use crate::model::{Token, TokenSpan};
use crate::CoreError;

#[derive(Default)]
struct ChainState {
    entity_type: String,
    mentions: Vec<TokenSpan>,
    open: Vec<usize>,
}

fn finish_doc(
    doc: Option<(SourceDocument, BTreeMap<String, ChainState>)>,
    path: &str,
    lineno: usize,
) -> Result<Option<SourceDocument>, CoreError> {
    match doc {
        None => Ok(None),
        Some((mut d, chains)) => {
            for (id, st) in chains {
                if !st.open.is_empty() {
                    return Err(parse_err(
                        path,
                        lineno,
                        format!("chain {id} left open at end of document"),
                    ));
                }
                d.chains.push(EntityChain {
                    chain_id: id,
                    entity_type: st.entity_type,
                    mentions: st.mentions,
                });
            }
            d.chains.sort_by(|a, b| a.chain_id.cmp(&b.chain_id));
            Ok(Some(d))
        }
    }
}

pub fn parse(text: &str, path: &str) -> Result<Vec<SourceDocument>, CoreError> {
    let mut docs = Vec::new();
    let mut current: Option<(SourceDocument, BTreeMap<String, ChainState>)> = None;
    let mut sentence: isize = -1;
    let mut last_line = 0;

    for (lineno, raw) in text.lines().enumerate() {
        let lineno = lineno + 1;
        last_line = lineno;
        let line = raw.trim_end_matches(['\r']);
        if line.trim().is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('#') {
            let rest = rest.trim();
            if let Some(id) = rest.strip_prefix("newdoc id") {
                if let Some(done) = finish_doc(current.take(), path, lineno)? {
                    docs.push(done);
                }
                let id = id.trim_start_matches(['=', ' ']).trim();
                if id.is_empty() {
                    return Err(parse_err(path, lineno, "missing newdoc id"));
                }
                current = Some((SourceDocument::new(id), BTreeMap::new()));
                sentence = -1;
            } else if rest.starts_with("sent_id") {
                if current.is_none() {
                    return Err(parse_err(path, lineno, "sent_id before newdoc"));
                }
                sentence += 1;
            }
            // other comments ignored
            continue;
        }

        let (doc, chains) = current
            .as_mut()
            .ok_or_else(|| parse_err(path, lineno, "token line before newdoc"))?;
        if sentence < 0 {
            return Err(parse_err(path, lineno, "token line before sent_id"));
        }
        let cols: Vec<&str> = line.split('\t').collect();
        if cols.len() != 5 {
            return Err(parse_err(
                path,
                lineno,
                format!("expected 5 tab-separated columns, found {}", cols.len()),
            ));
        }
        cols[0]
            .parse::<usize>()
            .map_err(|_| parse_err(path, lineno, format!("bad token index '{}'", cols[0])))?;

        let idx = doc.tokens.len();
        let mut token = Token::new(idx, cols[1], sentence as usize);
        if cols[2] != "_" {
            token = token.with_lemma(cols[2]);
        }
        if cols[3] != "_" {
            token = token.with_pos(cols[3]);
        }
        doc.tokens.push(token);

        if cols[4] != "_" {
            for part in cols[4].split('|') {
                let open = part.starts_with('(');
                let close = part.ends_with(')');
                let body = part.trim_start_matches('(').trim_end_matches(')');
                if body.is_empty() {
                    return Err(parse_err(path, lineno, format!("bad coref entry '{part}'")));
                }
                if open {
                    let (id, ty) = body.split_once('-').ok_or_else(|| {
                        parse_err(path, lineno, format!("coref open without type: '{part}'"))
                    })?;
                    let st = chains.entry(id.to_string()).or_default();
                    if st.entity_type.is_empty() {
                        st.entity_type = ty.to_string();
                    }
                    st.open.push(idx);
                    if close {
                        let start = st.open.pop().expect("just pushed");
                        st.mentions.push(TokenSpan::new(start, idx));
                    }
                } else if close {
                    let st = chains.get_mut(body).ok_or_else(|| {
                        parse_err(path, lineno, format!("close of unknown chain '{body}'"))
                    })?;
                    let start = st.open.pop().ok_or_else(|| {
                        parse_err(path, lineno, format!("close without open for chain '{body}'"))
                    })?;
                    st.mentions.push(TokenSpan::new(start, idx));
                } else {
                    return Err(parse_err(path, lineno, format!("bad coref entry '{part}'")));
                }
            }
        }
    }

    if let Some(done) = finish_doc(current.take(), path, last_line)? {
        docs.push(done);
    }
    Ok(docs)
}

#[cfg(test)]
mod tests {
    use super::*;

    const FIXTURE: &str = include_str!("../../../tests/fixtures/sample.gum");

    #[test]
    fn parses_fixture() {
        let docs = parse(FIXTURE, "sample.gum").unwrap();
        assert_eq!(docs.len(), 1);
        let d = &docs[0];
        assert_eq!(d.doc_id, "GUM_bio_ada");
        assert_eq!(d.n_sentences(), 2);
        assert_eq!(d.tokens[0].lemma.as_deref(), Some("Ada"));
        let person = d.dominant_person_chain().unwrap();
        assert_eq!(person.mentions.len(), 2);
        // multi-token span closed on the right line
        assert_eq!(person.mentions[0], TokenSpan::new(0, 1));
    }

    #[test]
    fn unclosed_chain_is_an_error() {
        let text = "# newdoc id = d\n# sent_id = 1\n1\tAda\tAda\tPROPN\t(1-person\n";
        let err = parse(text, "t").unwrap_err();
        assert!(err.to_string().contains("left open"));
    }

    #[test]
    fn wrong_column_count_reports_line() {
        let text = "# newdoc id = d\n# sent_id = 1\n1\tAda\n";
        match parse(text, "t") {
            Err(CoreError::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected parse error, got {other:?}"),
        }
    }
}
