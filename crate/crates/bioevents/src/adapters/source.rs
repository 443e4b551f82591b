//! Intermediate representation for external corpora.
//!
//! Reader output is richer than the canonical model: it keeps every typed
//! coreference chain and whatever syntax the source provides, because the
//! harmonization and rewriting passes need them. Only what the two tagging
//! tasks consume is represented — tokens, PERSON chains, event tokens and
//! (when present) predicative-complement links from gold trees.

use std::collections::BTreeMap;

use crate::model::{
    AnnotatedDocument, Corpus, EntityMention, EventMention, MentionKind, Provenance, Token,
    TokenSpan,
};

/// A typed coreference chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntityChain {
    pub chain_id: String,
    /// Entity type as given by the source, e.g. `PERSON`, `ORG`.
    pub entity_type: String,
    pub mentions: Vec<TokenSpan>,
}

impl EntityChain {
    pub fn is_person(&self) -> bool {
        self.entity_type.eq_ignore_ascii_case("person")
            || self.entity_type.eq_ignore_ascii_case("per")
    }

    /// Token index of the chain's first mention, for deterministic
    /// tie-breaking.
    pub fn first_mention_start(&self) -> usize {
        self.mentions.iter().map(|m| m.start).min().unwrap_or(usize::MAX)
    }
}

/// Gold predicative-complement information extracted from source syntax:
/// for a copular/light verb token, the head token of its nominal or
/// adjectival complement.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GoldComplements {
    pub by_verb: BTreeMap<usize, usize>,
}

/// One document as read from an external corpus.
#[derive(Debug, Clone, PartialEq)]
pub struct SourceDocument {
    pub doc_id: String,
    pub tokens: Vec<Token>,
    pub chains: Vec<EntityChain>,
    pub events: Vec<EventMention>,
    /// Present when the format carries trees or dependencies.
    pub complements: Option<GoldComplements>,
}

impl SourceDocument {
    pub fn new(doc_id: impl Into<String>) -> Self {
        SourceDocument {
            doc_id: doc_id.into(),
            tokens: Vec::new(),
            chains: Vec::new(),
            events: Vec::new(),
            complements: None,
        }
    }

    pub fn n_sentences(&self) -> usize {
        self.tokens.last().map(|t| t.sentence_index + 1).unwrap_or(0)
    }

    /// The PERSON chain with the most mentions; ties go to the chain whose
    /// first mention appears earliest in the document.
    pub fn dominant_person_chain(&self) -> Option<&EntityChain> {
        self.chains
            .iter()
            .filter(|c| c.is_person())
            .max_by(|a, b| {
                a.mentions
                    .len()
                    .cmp(&b.mentions.len())
                    // earlier first mention wins ties, so compare reversed
                    .then(b.first_mention_start().cmp(&a.first_mention_start()))
            })
    }

    /// Structural conversion: keep the dominant PERSON chain (if any) as the
    /// target entity, carry events over, drop everything else.
    pub fn to_annotated(&self) -> AnnotatedDocument {
        let mut doc = AnnotatedDocument::new(&self.doc_id, "");
        doc.tokens = self.tokens.clone();
        doc.events = self.events.clone();
        if let Some(chain) = self.dominant_person_chain() {
            doc.target_entity_name = self.mention_text(chain.mentions.first());
            doc.entity_mentions = chain
                .mentions
                .iter()
                .map(|span| EntityMention {
                    token_span: *span,
                    kind: MentionKind::Direct,
                })
                .collect();
            doc.entity_mentions.sort_by_key(|m| m.token_span);
        }
        doc
    }

    fn mention_text(&self, span: Option<&TokenSpan>) -> String {
        match span {
            None => String::new(),
            Some(s) => self.tokens[s.start..=s.end.min(self.tokens.len().saturating_sub(1))]
                .iter()
                .map(|t| t.text.as_str())
                .collect::<Vec<_>>()
                .join(" "),
        }
    }
}

/// Bundle source documents into a named corpus via structural conversion.
pub fn to_corpus(name: &str, provenance: Provenance, sources: &[SourceDocument]) -> Corpus {
    let mut corpus = Corpus::new(name, provenance);
    corpus.documents = sources.iter().map(SourceDocument::to_annotated).collect();
    corpus
}

#[cfg(test)]
mod tests {
    use super::*;

    fn doc_with_chains() -> SourceDocument {
        let mut d = SourceDocument::new("s");
        for i in 0..10 {
            d.tokens.push(Token::new(i, format!("w{i}"), 0));
        }
        d.chains.push(EntityChain {
            chain_id: "0".into(),
            entity_type: "PERSON".into(),
            mentions: vec![TokenSpan::single(4), TokenSpan::single(7)],
        });
        d.chains.push(EntityChain {
            chain_id: "1".into(),
            entity_type: "ORG".into(),
            mentions: vec![TokenSpan::single(0), TokenSpan::single(1), TokenSpan::single(2)],
        });
        d
    }

    #[test]
    fn dominant_chain_ignores_non_person() {
        let d = doc_with_chains();
        assert_eq!(d.dominant_person_chain().unwrap().chain_id, "0");
    }

    #[test]
    fn tie_breaks_on_earliest_first_mention() {
        let mut d = doc_with_chains();
        d.chains.push(EntityChain {
            chain_id: "2".into(),
            entity_type: "PERSON".into(),
            mentions: vec![TokenSpan::single(1), TokenSpan::single(9)],
        });
        // both PERSON chains have 2 mentions; chain 2 starts at token 1 < 4
        assert_eq!(d.dominant_person_chain().unwrap().chain_id, "2");
    }
}
