//! Scheme validation for annotated documents.
//!
//! Violations are data, not failures: `validate_document` always returns a
//! report, and an empty report means the document is well-formed. The checks
//! mirror the annotation scheme invariants: dense token indices, sentence
//! monotonicity, single-sentence non-overlapping mention spans, relation
//! endpoints that exist, LINK sources drawn from the copular/light lexicon
//! and never themselves event-tagged, and CONT_MOD values consistent with
//! the uncertainty of their target events.

use serde::{Deserialize, Serialize};

use crate::lexicon::Lexicon;
use crate::model::{AnnotatedDocument, Corpus, Uncertainty};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ViolationCode {
    TokenIndexNotDense,
    SentenceIndexDecreasing,
    MentionSpanInvalid,
    MentionSpanOutOfBounds,
    MentionCrossesSentence,
    MentionOverlap,
    EventOutOfBounds,
    EventDuplicate,
    UncertainEventWithoutContMod,
    LinkEndpointOutOfBounds,
    LinkSourceNotInLexicon,
    LinkSourceIsEvent,
    LinkTargetNotEvent,
    ContModEndpointOutOfBounds,
    ContModTargetNotEvent,
    ContModValueMismatch,
    DuplicateDocId,
}

/// One invariant breach, with the token indices involved.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub code: ViolationCode,
    pub message: String,
    pub tokens: Vec<usize>,
}

impl Violation {
    fn new(code: ViolationCode, message: impl Into<String>, tokens: Vec<usize>) -> Self {
        Violation {
            code,
            message: message.into(),
            tokens,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub doc_id: String,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, code: ViolationCode) -> bool {
        self.violations.iter().any(|v| v.code == code)
    }
}

/// Check every scheme invariant of one document. Pure and idempotent.
pub fn validate_document(doc: &AnnotatedDocument, lexicon: &Lexicon) -> ValidationReport {
    let mut violations = Vec::new();
    let n = doc.tokens.len();
    let in_bounds = |i: usize| i < n;

    for (i, tok) in doc.tokens.iter().enumerate() {
        if tok.index != i {
            violations.push(Violation::new(
                ViolationCode::TokenIndexNotDense,
                format!("token at position {i} carries index {}", tok.index),
                vec![i],
            ));
        }
        if i > 0 && tok.sentence_index < doc.tokens[i - 1].sentence_index {
            violations.push(Violation::new(
                ViolationCode::SentenceIndexDecreasing,
                format!(
                    "sentence index drops from {} to {} at token {i}",
                    doc.tokens[i - 1].sentence_index,
                    tok.sentence_index
                ),
                vec![i],
            ));
        }
    }

    for (mi, m) in doc.entity_mentions.iter().enumerate() {
        let span = m.token_span;
        if span.start > span.end {
            violations.push(Violation::new(
                ViolationCode::MentionSpanInvalid,
                format!("mention {mi} span [{}, {}] is reversed", span.start, span.end),
                vec![span.start, span.end],
            ));
            continue;
        }
        if !in_bounds(span.end) {
            violations.push(Violation::new(
                ViolationCode::MentionSpanOutOfBounds,
                format!(
                    "mention {mi} span [{}, {}] exceeds token count {n}",
                    span.start, span.end
                ),
                vec![span.start, span.end],
            ));
            continue;
        }
        let s0 = doc.tokens[span.start].sentence_index;
        let s1 = doc.tokens[span.end].sentence_index;
        if s0 != s1 {
            violations.push(Violation::new(
                ViolationCode::MentionCrossesSentence,
                format!("mention {mi} spans sentences {s0} and {s1}"),
                vec![span.start, span.end],
            ));
        }
        for (mj, other) in doc.entity_mentions.iter().enumerate().skip(mi + 1) {
            if in_bounds(other.token_span.end) && span.overlaps(&other.token_span) {
                violations.push(Violation::new(
                    ViolationCode::MentionOverlap,
                    format!("mentions {mi} and {mj} overlap"),
                    vec![span.start, other.token_span.start],
                ));
            }
        }
    }

    let mut seen_event_tokens = std::collections::BTreeSet::new();
    for e in &doc.events {
        if !in_bounds(e.token_index) {
            violations.push(Violation::new(
                ViolationCode::EventOutOfBounds,
                format!("event token {} exceeds token count {n}", e.token_index),
                vec![e.token_index],
            ));
            continue;
        }
        if !seen_event_tokens.insert(e.token_index) {
            violations.push(Violation::new(
                ViolationCode::EventDuplicate,
                format!("token {} carries more than one event", e.token_index),
                vec![e.token_index],
            ));
        }
        if e.uncertainty != Uncertainty::Factual {
            let modified = doc
                .cont_mods
                .iter()
                .any(|c| c.target_token == e.token_index);
            if !modified {
                violations.push(Violation::new(
                    ViolationCode::UncertainEventWithoutContMod,
                    format!(
                        "event at token {} is {} but no CONT_MOD targets it",
                        e.token_index,
                        e.uncertainty.as_str()
                    ),
                    vec![e.token_index],
                ));
            }
        }
    }

    for (li, l) in doc.links.iter().enumerate() {
        if !in_bounds(l.source_token) || !in_bounds(l.target_token) {
            violations.push(Violation::new(
                ViolationCode::LinkEndpointOutOfBounds,
                format!(
                    "LINK {li} endpoints ({} -> {}) exceed token count {n}",
                    l.source_token, l.target_token
                ),
                vec![l.source_token, l.target_token],
            ));
            continue;
        }
        let src = &doc.tokens[l.source_token];
        if !lexicon.matches_token(src) {
            violations.push(Violation::new(
                ViolationCode::LinkSourceNotInLexicon,
                format!(
                    "LINK {li} source '{}' (token {}) is not in the copular/light lexicon",
                    src.text, l.source_token
                ),
                vec![l.source_token],
            ));
        }
        if doc.event_at(l.source_token).is_some() {
            violations.push(Violation::new(
                ViolationCode::LinkSourceIsEvent,
                format!("LINK source tagged as event at token {}", l.source_token),
                vec![l.source_token],
            ));
        }
        if doc.event_at(l.target_token).is_none() {
            violations.push(Violation::new(
                ViolationCode::LinkTargetNotEvent,
                format!("LINK {li} target token {} carries no event", l.target_token),
                vec![l.target_token],
            ));
        }
    }

    for (ci, c) in doc.cont_mods.iter().enumerate() {
        if !in_bounds(c.source_token) || !in_bounds(c.target_token) {
            violations.push(Violation::new(
                ViolationCode::ContModEndpointOutOfBounds,
                format!(
                    "CONT_MOD {ci} endpoints ({} -> {}) exceed token count {n}",
                    c.source_token, c.target_token
                ),
                vec![c.source_token, c.target_token],
            ));
            continue;
        }
        match doc.event_at(c.target_token) {
            None => violations.push(Violation::new(
                ViolationCode::ContModTargetNotEvent,
                format!("CONT_MOD {ci} target token {} carries no event", c.target_token),
                vec![c.target_token],
            )),
            Some(ev) => {
                if ev.uncertainty != c.value.as_uncertainty() {
                    violations.push(Violation::new(
                        ViolationCode::ContModValueMismatch,
                        format!(
                            "CONT_MOD {ci} value {} but target event at token {} is {}",
                            c.value.as_str(),
                            c.target_token,
                            ev.uncertainty.as_str()
                        ),
                        vec![c.target_token],
                    ));
                }
            }
        }
    }

    ValidationReport {
        doc_id: doc.doc_id.clone(),
        violations,
    }
}

/// Validate every document plus corpus-level invariants (unique doc ids).
pub fn validate_corpus(corpus: &Corpus, lexicon: &Lexicon) -> Vec<ValidationReport> {
    let mut reports: Vec<ValidationReport> = corpus
        .documents
        .iter()
        .map(|d| validate_document(d, lexicon))
        .collect();

    let mut seen = std::collections::BTreeMap::new();
    for (i, doc) in corpus.documents.iter().enumerate() {
        if let Some(_first) = seen.insert(doc.doc_id.clone(), i) {
            reports[i].violations.push(Violation::new(
                ViolationCode::DuplicateDocId,
                format!("doc_id '{}' appears more than once", doc.doc_id),
                vec![],
            ));
        }
    }
    reports
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::*;

    fn two_sentence_doc() -> AnnotatedDocument {
        // "Ada was a writer . She wrote books ."
        let words = [
            ("Ada", 0, "PROPN"),
            ("was", 0, "VERB"),
            ("a", 0, "DET"),
            ("writer", 0, "NOUN"),
            (".", 0, "PUNCT"),
            ("She", 1, "PRON"),
            ("wrote", 1, "VERB"),
            ("books", 1, "NOUN"),
            (".", 1, "PUNCT"),
        ];
        let mut doc = AnnotatedDocument::new("t1", "Ada");
        for (i, (w, s, p)) in words.iter().enumerate() {
            doc.tokens.push(
                Token::new(i, *w, *s)
                    .with_lemma(w.to_lowercase())
                    .with_pos(*p),
            );
        }
        doc.entity_mentions.push(EntityMention::direct(0, 0));
        doc.entity_mentions.push(EntityMention::direct(5, 5));
        doc.events.push(EventMention::factual(3));
        doc.events.push(EventMention::factual(6));
        doc.links.push(LinkRelation {
            source_token: 1,
            target_token: 3,
        });
        doc
    }

    #[test]
    fn well_formed_document_is_clean() {
        let report = validate_document(&two_sentence_doc(), &Lexicon::builtin());
        assert!(report.is_clean(), "unexpected: {:?}", report.violations);
    }

    #[test]
    fn link_source_tagged_as_event_is_one_violation() {
        let mut doc = two_sentence_doc();
        doc.events.push(EventMention::factual(1));
        let report = validate_document(&doc, &Lexicon::builtin());
        let hits: Vec<_> = report
            .violations
            .iter()
            .filter(|v| v.code == ViolationCode::LinkSourceIsEvent)
            .collect();
        assert_eq!(hits.len(), 1);
        assert!(hits[0].message.contains("LINK source tagged as event"));
    }

    #[test]
    fn cont_mod_value_mismatch_is_flagged() {
        let mut doc = two_sentence_doc();
        // event 6 stays FACTUAL but a CONT_MOD claims INTENTION
        doc.cont_mods.push(ContModRelation {
            source_token: 5,
            target_token: 6,
            value: ModalityValue::Intention,
        });
        let report = validate_document(&doc, &Lexicon::builtin());
        assert_eq!(report.violations.len(), 1);
        assert_eq!(report.violations[0].code, ViolationCode::ContModValueMismatch);
    }

    #[test]
    fn out_of_bounds_link_names_the_relation() {
        let mut doc = two_sentence_doc();
        doc.links.push(LinkRelation {
            source_token: 99,
            target_token: 3,
        });
        let report = validate_document(&doc, &Lexicon::builtin());
        assert!(report.has(ViolationCode::LinkEndpointOutOfBounds));
    }

    #[test]
    fn overlapping_mentions_flagged() {
        let mut doc = two_sentence_doc();
        doc.entity_mentions.push(EntityMention::indirect(0, 1));
        let report = validate_document(&doc, &Lexicon::builtin());
        assert!(report.has(ViolationCode::MentionOverlap));
    }

    #[test]
    fn uncertain_event_requires_cont_mod() {
        let mut doc = two_sentence_doc();
        doc.events[1].uncertainty = Uncertainty::Intention;
        let report = validate_document(&doc, &Lexicon::builtin());
        assert!(report.has(ViolationCode::UncertainEventWithoutContMod));
        // adding the relation clears it
        doc.cont_mods.push(ContModRelation {
            source_token: 7,
            target_token: 6,
            value: ModalityValue::Intention,
        });
        let report = validate_document(&doc, &Lexicon::builtin());
        assert!(report.is_clean());
    }

    #[test]
    fn validation_is_idempotent() {
        let doc = two_sentence_doc();
        let lex = Lexicon::builtin();
        let a = validate_document(&doc, &lex);
        let b = validate_document(&doc, &lex);
        assert_eq!(a, b);
    }

    #[test]
    fn duplicate_doc_ids_reported_at_corpus_level() {
        let mut corpus = Corpus::new("c", Provenance::Synthetic);
        corpus.documents.push(two_sentence_doc());
        corpus.documents.push(two_sentence_doc());
        let reports = validate_corpus(&corpus, &Lexicon::builtin());
        assert!(reports[1].has(ViolationCode::DuplicateDocId));
    }
}
