//! Rewrite events on light/copular verbs into nominal or adjectival events.
//!
//! For every event token whose surface or lemma is in the copular/light
//! lexicon and whose predicative complement can be resolved, the event tag
//! moves to the complement head and the verb becomes a LINK source pointing
//! at it. Verbs with no resolvable complement keep their event tag and are
//! logged. Gold complements from source syntax are preferred; a bounded
//! right-window heuristic covers corpora without trees.

use super::source::GoldComplements;
use crate::lexicon::Lexicon;
use crate::model::{AnnotatedDocument, EventMention, LinkRelation};

/// How to find the predicative complement of a verb token.
pub enum ComplementResolver<'a> {
    /// Verb-to-head map extracted from gold trees or dependencies.
    Gold(&'a GoldComplements),
    /// Nearest noun-run head or adjective to the right of the verb, within
    /// `window` tokens, stopping at clause punctuation.
    Heuristic { window: usize },
}

impl<'a> ComplementResolver<'a> {
    pub fn heuristic() -> Self {
        ComplementResolver::Heuristic { window: 5 }
    }

    /// Gold when available, else the default heuristic.
    pub fn for_source(gold: Option<&'a GoldComplements>) -> Self {
        match gold {
            Some(g) => ComplementResolver::Gold(g),
            None => Self::heuristic(),
        }
    }

    fn resolve(&self, doc: &AnnotatedDocument, verb: usize) -> Option<usize> {
        match self {
            ComplementResolver::Gold(g) => g.by_verb.get(&verb).copied(),
            ComplementResolver::Heuristic { window } => heuristic_complement(doc, verb, *window),
        }
    }
}

fn is_noun(pos: &str) -> bool {
    pos == "NOUN" || (pos.starts_with("NN") && !pos.starts_with("NNP"))
}

fn is_adjective(pos: &str) -> bool {
    pos == "ADJ" || pos.starts_with("JJ")
}

fn is_clause_boundary(text: &str) -> bool {
    matches!(text, "," | ";" | ":" | "." | "!" | "?" | "--")
}

/// Head of the first noun run after the verb (rightmost token of the run),
/// else the first adjective; `None` when neither occurs before the window
/// or clause ends.
fn heuristic_complement(doc: &AnnotatedDocument, verb: usize, window: usize) -> Option<usize> {
    let sentence = doc.tokens.get(verb)?.sentence_index;
    let mut first_adj = None;
    let mut i = verb + 1;
    let limit = verb + window;
    while i < doc.tokens.len() && i <= limit {
        let tok = &doc.tokens[i];
        if tok.sentence_index != sentence || is_clause_boundary(&tok.text) {
            break;
        }
        let pos = tok.pos.as_deref().unwrap_or("");
        if is_noun(pos) {
            // extend across the noun run to its head
            let mut head = i;
            while head + 1 < doc.tokens.len() {
                let next = &doc.tokens[head + 1];
                if next.sentence_index == sentence
                    && is_noun(next.pos.as_deref().unwrap_or(""))
                {
                    head += 1;
                } else {
                    break;
                }
            }
            return Some(head);
        }
        if first_adj.is_none() && is_adjective(pos) {
            first_adj = Some(i);
        }
        i += 1;
    }
    first_adj
}

#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct RewriteLog {
    /// (verb token, new event token) for every moved tag.
    pub rewritten: Vec<(usize, usize)>,
    /// (verb token, reason) for lexicon verbs left untouched.
    pub unresolved: Vec<(usize, String)>,
}

pub fn rewrite_light_verbs(
    doc: &AnnotatedDocument,
    resolver: &ComplementResolver,
    lexicon: &Lexicon,
) -> (AnnotatedDocument, RewriteLog) {
    let mut out = doc.clone();
    let mut log = RewriteLog::default();

    let mut candidates: Vec<usize> = doc
        .events
        .iter()
        .map(|e| e.token_index)
        .filter(|&i| doc.tokens.get(i).map_or(false, |t| lexicon.matches_token(t)))
        .collect();
    candidates.sort_unstable();

    for verb in candidates {
        let target = match resolver.resolve(&out, verb) {
            Some(t) => t,
            None => {
                log.unresolved
                    .push((verb, "no nominal or adjectival complement head".to_string()));
                log::debug!(
                    "light-verb rewrite: no complement for '{}' at token {verb} in {}",
                    out.tokens[verb].text,
                    out.doc_id
                );
                continue;
            }
        };
        if target == verb || target >= out.tokens.len() {
            log.unresolved
                .push((verb, format!("resolved complement {target} is invalid")));
            continue;
        }
        if out.event_at(target).is_some() {
            log.unresolved
                .push((verb, format!("complement token {target} already carries an event")));
            continue;
        }

        let uncertainty = out
            .event_at(verb)
            .map(|e| e.uncertainty)
            .expect("candidate came from events");
        out.events.retain(|e| e.token_index != verb);
        out.events.push(EventMention {
            token_index: target,
            uncertainty,
        });
        out.links.push(LinkRelation {
            source_token: verb,
            target_token: target,
        });
        // modality markers follow the event to its new token
        for cm in out.cont_mods.iter_mut() {
            if cm.target_token == verb {
                cm.target_token = target;
            }
        }
        log.rewritten.push((verb, target));
    }

    out.events.sort_by_key(|e| e.token_index);
    (out, log)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Token;

    fn doc(words: &[(&str, &str)]) -> AnnotatedDocument {
        let mut d = AnnotatedDocument::new("d", "X");
        for (i, (w, p)) in words.iter().enumerate() {
            d.tokens
                .push(Token::new(i, *w, 0).with_lemma(w.to_lowercase()).with_pos(*p));
        }
        d
    }

    #[test]
    fn copula_moves_to_nominal_head() {
        // "was a Nigerian writer ." with event on "was"
        let mut d = doc(&[
            ("was", "VBD"),
            ("a", "DT"),
            ("Nigerian", "JJ"),
            ("writer", "NN"),
            (".", "."),
        ]);
        d.events.push(EventMention::factual(0));
        let (out, log) = rewrite_light_verbs(&d, &ComplementResolver::heuristic(), &Lexicon::builtin());
        assert_eq!(out.events.len(), 1);
        assert_eq!(out.events[0].token_index, 3);
        assert_eq!(out.links.len(), 1);
        assert_eq!(out.links[0].source_token, 0);
        assert_eq!(out.links[0].target_token, 3);
        assert_eq!(log.rewritten, vec![(0, 3)]);
    }

    #[test]
    fn non_lexicon_verb_is_untouched() {
        let mut d = doc(&[("arrived", "VBD"), ("in", "IN"), ("Lagos", "NNP")]);
        d.events.push(EventMention::factual(0));
        let (out, log) = rewrite_light_verbs(&d, &ComplementResolver::heuristic(), &Lexicon::builtin());
        assert_eq!(out, d);
        assert!(log.rewritten.is_empty() && log.unresolved.is_empty());
    }

    #[test]
    fn unresolvable_complement_is_logged() {
        // "was there ." has no nominal or adjectival head
        let mut d = doc(&[("was", "VBD"), ("there", "RB"), (".", ".")]);
        d.events.push(EventMention::factual(0));
        let (out, log) = rewrite_light_verbs(&d, &ComplementResolver::heuristic(), &Lexicon::builtin());
        assert_eq!(out.events, d.events);
        assert!(out.links.is_empty());
        assert_eq!(log.unresolved.len(), 1);
        assert_eq!(log.unresolved[0].0, 0);
    }

    #[test]
    fn adjectival_complement_without_noun() {
        let mut d = doc(&[("became", "VBD"), ("famous", "JJ"), (".", ".")]);
        d.events.push(EventMention::factual(0));
        let (out, _) = rewrite_light_verbs(&d, &ComplementResolver::heuristic(), &Lexicon::builtin());
        assert_eq!(out.events[0].token_index, 1);
    }

    #[test]
    fn clause_boundary_stops_the_window() {
        let mut d = doc(&[
            ("was", "VBD"),
            (",", ","),
            ("writer", "NN"),
        ]);
        d.events.push(EventMention::factual(0));
        let (_, log) = rewrite_light_verbs(&d, &ComplementResolver::heuristic(), &Lexicon::builtin());
        assert_eq!(log.unresolved.len(), 1);
    }

    #[test]
    fn gold_complements_win_over_heuristic() {
        let mut d = doc(&[("was", "VBD"), ("a", "DT"), ("poet", "NN"), ("laureate", "NN")]);
        d.events.push(EventMention::factual(0));
        let mut gold = GoldComplements::default();
        gold.by_verb.insert(0, 2); // gold says head is "poet"
        let (out, _) = rewrite_light_verbs(&d, &ComplementResolver::Gold(&gold), &Lexicon::builtin());
        assert_eq!(out.events[0].token_index, 2);
    }

    #[test]
    fn events_plus_links_count_grows_by_one_per_rewrite() {
        let mut d = doc(&[
            ("was", "VBD"),
            ("a", "DT"),
            ("writer", "NN"),
            ("and", "CC"),
            ("wrote", "VBD"),
        ]);
        d.events.push(EventMention::factual(0));
        d.events.push(EventMention::factual(4));
        let before = d.events.len() + d.links.len();
        let (out, log) = rewrite_light_verbs(&d, &ComplementResolver::heuristic(), &Lexicon::builtin());
        assert_eq!(
            out.events.len() + out.links.len(),
            before + log.rewritten.len()
        );
        assert_eq!(log.rewritten.len(), 1);
    }
}
