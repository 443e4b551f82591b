//! Bracketed-tree reader with coreference-chain and event directives.
//!
//! Document layout:
//!
//! ```text
//! #begin document doc_id
//! (TOP (S (NP (NNP Ken) (NNP Saro-Wiwa)) (VP (VBD was) (NP (DT a) (NN writer))) (. .)))
//! ...one tree per line...
//! #coref <chain_id> <TYPE> <sent>:<start>-<end> ...
//! #events <sent>:<tok> ...
//! #end document
//! ```
//!
//! Mention and event offsets are sentence-local token positions. The trees
//! double as gold syntax: for every verb leaf the reader records the head of
//! its following nominal/adjectival sibling phrase, which the light-verb
//! rewriting pass consumes as gold predicative complements.

use std::collections::BTreeMap;

use super::parse_err;
use crate::adapters::source::{EntityChain, GoldComplements, SourceDocument};
use crate::model::{EventMention, Token, TokenSpan};
use crate::CoreError;

const MAX_TREE_DEPTH: usize = 256;

#[derive(Debug)]
enum Tree {
    Leaf { pos: String, word: String, index: usize },
    Node { label: String, children: Vec<Tree> },
}

struct TreeParser<'a> {
    toks: Vec<&'a str>,
    pos: usize,
    next_index: usize,
}

impl<'a> TreeParser<'a> {
    fn tokenize(text: &'a str) -> Vec<&'a str> {
        let mut out = Vec::new();
        let mut start = None;
        for (i, c) in text.char_indices() {
            match c {
                '(' | ')' => {
                    if let Some(s) = start.take() {
                        out.push(&text[s..i]);
                    }
                    out.push(&text[i..i + c.len_utf8()]);
                }
                c if c.is_whitespace() => {
                    if let Some(s) = start.take() {
                        out.push(&text[s..i]);
                    }
                }
                _ => {
                    if start.is_none() {
                        start = Some(i);
                    }
                }
            }
        }
        if let Some(s) = start {
            out.push(&text[s..]);
        }
        out
    }

    fn parse(&mut self, depth: usize) -> Result<Tree, String> {
        if depth > MAX_TREE_DEPTH {
            return Err("tree nesting exceeds depth limit".to_string());
        }
        if self.toks.get(self.pos) != Some(&"(") {
            return Err("expected '('".to_string());
        }
        self.pos += 1;
        let label = match self.toks.get(self.pos) {
            Some(&t) if t != "(" && t != ")" => {
                self.pos += 1;
                t.to_string()
            }
            _ => return Err("expected node label".to_string()),
        };

        let mut children = Vec::new();
        let mut leaf_word: Option<String> = None;
        loop {
            match self.toks.get(self.pos) {
                Some(&"(") => {
                    children.push(self.parse(depth + 1)?);
                }
                Some(&")") => {
                    self.pos += 1;
                    break;
                }
                Some(&word) => {
                    if leaf_word.is_some() || !children.is_empty() {
                        return Err(format!("unexpected atom '{word}' inside phrase"));
                    }
                    leaf_word = Some(word.to_string());
                    self.pos += 1;
                }
                None => return Err("unbalanced parentheses".to_string()),
            }
        }

        match leaf_word {
            Some(word) => {
                let index = self.next_index;
                self.next_index += 1;
                Ok(Tree::Leaf {
                    pos: label,
                    word,
                    index,
                })
            }
            None => {
                if children.is_empty() {
                    return Err(format!("empty phrase '({label})'"));
                }
                Ok(Tree::Node { label, children })
            }
        }
    }
}

fn collect_leaves<'t>(tree: &'t Tree, out: &mut Vec<(&'t str, &'t str)>) {
    match tree {
        Tree::Leaf { pos, word, .. } => out.push((pos, word)),
        Tree::Node { children, .. } => {
            for c in children {
                collect_leaves(c, out);
            }
        }
    }
}

fn rightmost_head(tree: &Tree) -> Option<usize> {
    // prefer the rightmost nominal/adjectival leaf, else any rightmost
    // non-punctuation leaf
    fn walk(tree: &Tree, best: &mut Option<usize>, fallback: &mut Option<usize>) {
        match tree {
            Tree::Leaf { pos, index, .. } => {
                if pos.starts_with("NN") || pos.starts_with("JJ") {
                    *best = Some(*index);
                }
                if pos.chars().next().map_or(false, |c| c.is_alphanumeric()) {
                    *fallback = Some(*index);
                }
            }
            Tree::Node { children, .. } => {
                for c in children {
                    walk(c, best, fallback);
                }
            }
        }
    }
    let (mut best, mut fallback) = (None, None);
    walk(tree, &mut best, &mut fallback);
    best.or(fallback)
}

fn collect_complements(tree: &Tree, map: &mut BTreeMap<usize, usize>) {
    if let Tree::Node { label, children } = tree {
        if label.starts_with("VP") {
            let verb = children.iter().position(
                |c| matches!(c, Tree::Leaf { pos, .. } if pos.starts_with("VB") || pos == "AUX"),
            );
            if let Some(vi) = verb {
                let verb_index = match &children[vi] {
                    Tree::Leaf { index, .. } => *index,
                    _ => unreachable!(),
                };
                let comp = children.iter().skip(vi + 1).find_map(|c| match c {
                    Tree::Node { label, .. }
                        if label.starts_with("NP") || label.starts_with("ADJP") =>
                    {
                        rightmost_head(c)
                    }
                    _ => None,
                });
                if let Some(head) = comp {
                    map.insert(verb_index, head);
                }
            }
        }
        for c in children {
            collect_complements(c, map);
        }
    }
}

fn parse_offset(spec: &str) -> Option<(usize, usize)> {
    let (s, t) = spec.split_once(':')?;
    Some((s.parse().ok()?, t.parse().ok()?))
}

fn parse_span(spec: &str) -> Option<(usize, usize, usize)> {
    let (s, range) = spec.split_once(':')?;
    let (a, b) = range.split_once('-')?;
    Some((s.parse().ok()?, a.parse().ok()?, b.parse().ok()?))
}

/// Parse one file of bracketed-tree documents.
pub fn parse(text: &str, path: &str) -> Result<Vec<SourceDocument>, CoreError> {
    let mut docs = Vec::new();
    let mut current: Option<SourceDocument> = None;
    // sentence-local -> global token index maps for the open document
    let mut sentence_starts: Vec<usize> = Vec::new();
    let mut sentence_lens: Vec<usize> = Vec::new();
    let mut complements = BTreeMap::new();

    for (lineno, raw) in text.lines().enumerate() {
        let lineno = lineno + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("#begin document") {
            if current.is_some() {
                return Err(parse_err(path, lineno, "nested #begin document"));
            }
            let doc_id = rest.trim();
            if doc_id.is_empty() {
                return Err(parse_err(path, lineno, "missing document id"));
            }
            current = Some(SourceDocument::new(doc_id));
            sentence_starts.clear();
            sentence_lens.clear();
            complements.clear();
            continue;
        }
        let doc = match current.as_mut() {
            Some(d) => d,
            None => return Err(parse_err(path, lineno, "content outside #begin document")),
        };
        let global = |sent: usize, tok: usize| -> Option<usize> {
            if sent < sentence_starts.len() && tok < sentence_lens[sent] {
                Some(sentence_starts[sent] + tok)
            } else {
                None
            }
        };

        if line == "#end document" {
            let mut d = current.take().expect("checked above");
            if !complements.is_empty() {
                d.complements = Some(GoldComplements {
                    by_verb: std::mem::take(&mut complements),
                });
            }
            docs.push(d);
        } else if let Some(rest) = line.strip_prefix("#coref") {
            let mut parts = rest.split_whitespace();
            let chain_id = parts
                .next()
                .ok_or_else(|| parse_err(path, lineno, "missing chain id"))?;
            let entity_type = parts
                .next()
                .ok_or_else(|| parse_err(path, lineno, "missing entity type"))?;
            let mut mentions = Vec::new();
            for spec in parts {
                let (s, a, b) = parse_span(spec).ok_or_else(|| {
                    parse_err(path, lineno, format!("bad mention spec '{spec}'"))
                })?;
                let (start, end) = match (global(s, a), global(s, b)) {
                    (Some(x), Some(y)) if x <= y => (x, y),
                    _ => {
                        return Err(parse_err(
                            path,
                            lineno,
                            format!("mention '{spec}' out of sentence bounds"),
                        ))
                    }
                };
                mentions.push(TokenSpan::new(start, end));
            }
            doc.chains.push(EntityChain {
                chain_id: chain_id.to_string(),
                entity_type: entity_type.to_string(),
                mentions,
            });
        } else if let Some(rest) = line.strip_prefix("#events") {
            for spec in rest.split_whitespace() {
                let (s, t) = parse_offset(spec).ok_or_else(|| {
                    parse_err(path, lineno, format!("bad event spec '{spec}'"))
                })?;
                let idx = global(s, t).ok_or_else(|| {
                    parse_err(path, lineno, format!("event '{spec}' out of sentence bounds"))
                })?;
                doc.events.push(EventMention::factual(idx));
            }
        } else if line.starts_with('#') {
            return Err(parse_err(path, lineno, format!("unknown directive '{line}'")));
        } else {
            // one bracketed tree per line = one sentence
            let mut parser = TreeParser {
                toks: TreeParser::tokenize(line),
                pos: 0,
                next_index: 0,
            };
            let tree = parser
                .parse(0)
                .map_err(|m| parse_err(path, lineno, m))?;
            if parser.pos != parser.toks.len() {
                return Err(parse_err(path, lineno, "trailing content after tree"));
            }
            let mut leaves = Vec::new();
            collect_leaves(&tree, &mut leaves);
            if leaves.is_empty() {
                return Err(parse_err(path, lineno, "tree has no leaves"));
            }

            let sent = sentence_starts.len();
            let base = doc.tokens.len();
            sentence_starts.push(base);
            sentence_lens.push(leaves.len());
            for (pos, word) in &leaves {
                let idx = doc.tokens.len();
                doc.tokens
                    .push(Token::new(idx, word.to_string(), sent).with_pos(pos.to_string()));
            }

            let mut local = BTreeMap::new();
            collect_complements(&tree, &mut local);
            for (v, c) in local {
                complements.insert(base + v, base + c);
            }
        }
    }

    if current.is_some() {
        return Err(parse_err(
            path,
            text.lines().count(),
            "missing #end document",
        ));
    }
    Ok(docs)
}
