//! Reduce a fully coreference-annotated document to the single-target
//! scheme: keep only the mentions of the most frequent PERSON chain, drop
//! every other entity annotation, leave tokens and events untouched.

use super::AdapterError;
use crate::adapters::source::SourceDocument;
use crate::model::{AnnotatedDocument, EntityMention, MentionKind};

/// Ties between equally frequent PERSON chains go to the chain whose first
/// mention appears earliest. Documents without any PERSON chain are
/// rejected so the caller can filter them out.
pub fn harmonize_person_entities(source: &SourceDocument) -> Result<AnnotatedDocument, AdapterError> {
    let chain = source
        .dominant_person_chain()
        .ok_or_else(|| AdapterError::NoPersonEntity {
            doc_id: source.doc_id.clone(),
        })?;

    let mut doc = AnnotatedDocument::new(&source.doc_id, "");
    doc.tokens = source.tokens.clone();
    doc.events = source.events.clone();
    let mut mentions: Vec<EntityMention> = chain
        .mentions
        .iter()
        .map(|span| EntityMention {
            token_span: *span,
            kind: MentionKind::Direct,
        })
        .collect();
    mentions.sort_by_key(|m| m.token_span);
    if let Some(first) = mentions.first() {
        let span = first.token_span;
        if span.end < doc.tokens.len() {
            doc.target_entity_name = doc.tokens[span.start..=span.end]
                .iter()
                .map(|t| t.text.as_str())
                .collect::<Vec<_>>()
                .join(" ");
        }
    }
    doc.entity_mentions = mentions;
    Ok(doc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adapters::source::EntityChain;
    use crate::model::{Token, TokenSpan};

    fn source() -> SourceDocument {
        let mut d = SourceDocument::new("x");
        for (i, w) in ["Ada", "met", "Charles", "at", "the", "Society", "."]
            .iter()
            .enumerate()
        {
            d.tokens.push(Token::new(i, *w, 0));
        }
        d
    }

    #[test]
    fn keeps_only_the_person_chain() {
        let mut d = source();
        d.chains.push(EntityChain {
            chain_id: "0".into(),
            entity_type: "PERSON".into(),
            mentions: vec![TokenSpan::single(0), TokenSpan::single(2), TokenSpan::single(5)],
        });
        d.chains.push(EntityChain {
            chain_id: "1".into(),
            entity_type: "ORG".into(),
            mentions: vec![TokenSpan::new(4, 5)],
        });
        let doc = harmonize_person_entities(&d).unwrap();
        assert_eq!(doc.entity_mentions.len(), 3);
        assert_eq!(doc.target_entity_name, "Ada");
    }

    #[test]
    fn no_person_chain_is_rejected() {
        let mut d = source();
        d.chains.push(EntityChain {
            chain_id: "1".into(),
            entity_type: "ORG".into(),
            mentions: vec![TokenSpan::single(5)],
        });
        match harmonize_person_entities(&d) {
            Err(AdapterError::NoPersonEntity { doc_id }) => assert_eq!(doc_id, "x"),
            other => panic!("expected NoPersonEntity, got {other:?}"),
        }
    }

    #[test]
    fn five_five_tie_goes_to_earlier_first_mention() {
        let mut d = SourceDocument::new("tie");
        for i in 0..20 {
            d.tokens.push(Token::new(i, format!("w{i}"), 0));
        }
        d.chains.push(EntityChain {
            chain_id: "late".into(),
            entity_type: "PERSON".into(),
            mentions: (5..10).map(TokenSpan::single).collect(),
        });
        d.chains.push(EntityChain {
            chain_id: "early".into(),
            entity_type: "PERSON".into(),
            mentions: [2, 11, 12, 13, 14].iter().map(|&i| TokenSpan::single(i)).collect(),
        });
        let doc = harmonize_person_entities(&d).unwrap();
        assert_eq!(doc.entity_mentions[0].token_span, TokenSpan::single(2));
        assert_eq!(doc.entity_mentions.len(), 5);
    }

    #[test]
    fn never_increases_mentions_or_alters_tokens() {
        let mut d = source();
        d.chains.push(EntityChain {
            chain_id: "0".into(),
            entity_type: "PERSON".into(),
            mentions: vec![TokenSpan::single(0)],
        });
        let before_tokens = d.tokens.clone();
        let total_mentions: usize = d.chains.iter().map(|c| c.mentions.len()).sum();
        let doc = harmonize_person_entities(&d).unwrap();
        assert!(doc.entity_mentions.len() <= total_mentions);
        assert_eq!(doc.tokens, before_tokens);
    }
}
