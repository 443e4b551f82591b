//! Inline XML event markup reader (TimeBank/NewsReader style).
//!
//! ```text
//! <doc id="wsj_0006">
//! <s>John <EVENT eid="e1" class="OCCURRENCE">sold</EVENT> the firm .</s>
//! </doc>
//! ```
//!
//! Tokens are whitespace-separated; an `EVENT` element must wrap exactly one
//! token. Other inline elements (`TIMEX3`, `SIGNAL`, ...) are transparent:
//! their text is kept, their markup ignored.

use super::parse_err;
use crate::adapters::source::SourceDocument;
use crate::model::{EventMention, Token};
use crate::CoreError;

struct Scanner<'a> {
    text: &'a str,
    pos: usize,
    line: usize,
}

#[derive(Debug, PartialEq)]
enum Piece {
    Open(String, Vec<(String, String)>),
    Close(String),
    SelfClosing(String),
    Text(String),
}

impl<'a> Scanner<'a> {
    fn new(text: &'a str) -> Self {
        Scanner { text, pos: 0, line: 1 }
    }

    fn bump(&mut self, s: &str) {
        self.line += s.matches('\n').count();
        self.pos += s.len();
    }

    fn next_piece(&mut self, path: &str) -> Result<Option<Piece>, CoreError> {
        let rest = &self.text[self.pos..];
        if rest.is_empty() {
            return Ok(None);
        }
        if let Some(stripped) = rest.strip_prefix('<') {
            let end = stripped
                .find('>')
                .ok_or_else(|| parse_err(path, self.line, "unterminated tag"))?;
            let inner = &stripped[..end];
            if inner.contains('<') {
                return Err(parse_err(path, self.line, "'<' inside tag"));
            }
            let consumed = &rest[..end + 2];
            let piece = if let Some(name) = inner.strip_prefix('/') {
                Piece::Close(name.trim().to_string())
            } else {
                let inner = inner.trim();
                let self_closing = inner.ends_with('/');
                let inner = inner.trim_end_matches('/').trim();
                let mut parts = inner.split_whitespace();
                let name = parts
                    .next()
                    .ok_or_else(|| parse_err(path, self.line, "empty tag"))?
                    .to_string();
                let mut attrs = Vec::new();
                for attr in parts {
                    if let Some((k, v)) = attr.split_once('=') {
                        attrs.push((k.to_string(), v.trim_matches('"').to_string()));
                    }
                }
                if self_closing {
                    Piece::SelfClosing(name)
                } else {
                    Piece::Open(name, attrs)
                }
            };
            self.bump(consumed);
            Ok(Some(piece))
        } else {
            let end = rest.find('<').unwrap_or(rest.len());
            let consumed = &rest[..end];
            self.bump(consumed);
            Ok(Some(Piece::Text(consumed.to_string())))
        }
    }
}

pub fn parse(text: &str, path: &str) -> Result<Vec<SourceDocument>, CoreError> {
    let mut docs: Vec<SourceDocument> = Vec::new();
    let mut doc: Option<SourceDocument> = None;
    let mut sentence: isize = -1;
    let mut in_sentence = false;
    // pending event: set when inside <EVENT>, holds tokens seen so far
    let mut event_depth = 0usize;
    let mut event_token_count = 0usize;
    let mut scanner = Scanner::new(text);

    while let Some(piece) = scanner.next_piece(path)? {
        let line = scanner.line;
        match piece {
            Piece::Open(name, attrs) => match name.as_str() {
                "doc" => {
                    if doc.is_some() {
                        return Err(parse_err(path, line, "nested <doc>"));
                    }
                    let id = attrs
                        .iter()
                        .find(|(k, _)| k == "id")
                        .map(|(_, v)| v.clone())
                        .ok_or_else(|| parse_err(path, line, "<doc> without id"))?;
                    doc = Some(SourceDocument::new(id));
                    sentence = -1;
                }
                "s" => {
                    if doc.is_none() {
                        return Err(parse_err(path, line, "<s> outside <doc>"));
                    }
                    if in_sentence {
                        return Err(parse_err(path, line, "nested <s>"));
                    }
                    in_sentence = true;
                    sentence += 1;
                }
                "EVENT" => {
                    if !in_sentence {
                        return Err(parse_err(path, line, "<EVENT> outside sentence"));
                    }
                    if event_depth > 0 {
                        return Err(parse_err(path, line, "nested <EVENT>"));
                    }
                    event_depth = 1;
                    event_token_count = 0;
                }
                _ => {} // transparent inline markup
            },
            Piece::Close(name) => match name.as_str() {
                "doc" => {
                    let d = doc
                        .take()
                        .ok_or_else(|| parse_err(path, line, "</doc> without <doc>"))?;
                    if in_sentence {
                        return Err(parse_err(path, line, "</doc> inside sentence"));
                    }
                    docs.push(d);
                }
                "s" => {
                    if !in_sentence {
                        return Err(parse_err(path, line, "</s> without <s>"));
                    }
                    if event_depth > 0 {
                        return Err(parse_err(path, line, "unterminated <EVENT>"));
                    }
                    in_sentence = false;
                }
                "EVENT" => {
                    if event_depth == 0 {
                        return Err(parse_err(path, line, "</EVENT> without <EVENT>"));
                    }
                    if event_token_count != 1 {
                        return Err(parse_err(
                            path,
                            line,
                            format!("<EVENT> wraps {event_token_count} tokens, expected 1"),
                        ));
                    }
                    event_depth = 0;
                }
                _ => {}
            },
            Piece::SelfClosing(_) => {}
            Piece::Text(t) => {
                let words: Vec<&str> = t.split_whitespace().collect();
                if words.is_empty() {
                    continue;
                }
                if !in_sentence {
                    return Err(parse_err(path, line, format!("text outside <s>: '{}'", words[0])));
                }
                let d = doc.as_mut().expect("in_sentence implies doc");
                for w in words {
                    let idx = d.tokens.len();
                    d.tokens.push(Token::new(idx, w, sentence as usize));
                    if event_depth > 0 {
                        event_token_count += 1;
                        if event_token_count == 1 {
                            d.events.push(EventMention::factual(idx));
                        }
                    }
                }
            }
        }
    }

    if doc.is_some() {
        return Err(parse_err(path, scanner.line, "missing </doc>"));
    }
    Ok(docs)
}

#[cfg(test)]
mod tests {
    use super::*;

    const FIXTURE: &str = include_str!("../../../tests/fixtures/sample.xml");

    #[test]
    fn parses_fixture() {
        let docs = parse(FIXTURE, "sample.xml").unwrap();
        assert_eq!(docs.len(), 1);
        let d = &docs[0];
        assert_eq!(d.doc_id, "tb_0001");
        assert_eq!(d.n_sentences(), 3);
        assert_eq!(d.events.len(), 4);
        let sold = d.events[0].token_index;
        assert_eq!(d.tokens[sold].text, "sold");
    }

    #[test]
    fn timex_markup_is_transparent() {
        let text = "<doc id=\"d\">\n<s>He left <TIMEX3 tid=\"t1\">Monday</TIMEX3> .</s>\n</doc>\n";
        let docs = parse(text, "t").unwrap();
        assert_eq!(docs[0].tokens.len(), 4);
        assert_eq!(docs[0].tokens[2].text, "Monday");
        assert!(docs[0].events.is_empty());
    }

    #[test]
    fn multi_token_event_is_an_error() {
        let text = "<doc id=\"d\">\n<s><EVENT eid=\"e1\">took off</EVENT></s>\n</doc>\n";
        let err = parse(text, "t").unwrap_err();
        assert!(err.to_string().contains("expected 1"));
    }

    #[test]
    fn unterminated_tag_is_an_error() {
        assert!(parse("<doc id=\"d\"", "t").is_err());
    }
}
