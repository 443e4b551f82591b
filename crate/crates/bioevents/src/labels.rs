//! Projection between annotation layers and per-token label sequences.
//!
//! The entity layer uses B-ENT/I-ENT/O; the event layer uses EVENT/O
//! (events are single tokens, so no I- label exists). Projection is
//! loss-free for spans and single-token events: `mentions_from_labels`
//! and `events_from_labels` invert it.

use serde::{Deserialize, Serialize};

use crate::model::{AnnotatedDocument, EntityMention, EventMention, TokenSpan};

pub const LABEL_O: &str = "O";
pub const LABEL_B_ENT: &str = "B-ENT";
pub const LABEL_I_ENT: &str = "I-ENT";
pub const LABEL_EVENT: &str = "EVENT";

/// Which annotation layer to project.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum LabelLayer {
    Entity,
    Event,
}

impl LabelLayer {
    /// The full label alphabet of the layer, O first.
    pub fn alphabet(&self) -> &'static [&'static str] {
        match self {
            LabelLayer::Entity => &[LABEL_O, LABEL_B_ENT, LABEL_I_ENT],
            LabelLayer::Event => &[LABEL_O, LABEL_EVENT],
        }
    }

    /// True for every label that counts as a positive token of this layer.
    pub fn is_positive(&self, label: &str) -> bool {
        label != LABEL_O
    }
}

/// One label per token of the document.
pub fn to_token_labels(doc: &AnnotatedDocument, layer: LabelLayer) -> Vec<String> {
    let mut labels = vec![LABEL_O.to_string(); doc.tokens.len()];
    match layer {
        LabelLayer::Entity => {
            for m in &doc.entity_mentions {
                for i in m.token_span.indices() {
                    if i >= labels.len() {
                        break;
                    }
                    labels[i] = if i == m.token_span.start {
                        LABEL_B_ENT.to_string()
                    } else {
                        LABEL_I_ENT.to_string()
                    };
                }
            }
        }
        LabelLayer::Event => {
            for e in &doc.events {
                if e.token_index < labels.len() {
                    labels[e.token_index] = LABEL_EVENT.to_string();
                }
            }
        }
    }
    labels
}

/// Recover single-token events from an EVENT/O label sequence.
pub fn events_from_labels(labels: &[String]) -> Vec<EventMention> {
    labels
        .iter()
        .enumerate()
        .filter(|(_, l)| l.as_str() == LABEL_EVENT)
        .map(|(i, _)| EventMention::factual(i))
        .collect()
}

/// Recover mention spans from a B/I/O label sequence. A dangling I- at the
/// start of a sequence (as produced by window chunking) opens a new span.
pub fn mentions_from_labels(labels: &[String]) -> Vec<TokenSpan> {
    let mut spans = Vec::new();
    let mut open: Option<usize> = None;
    for (i, l) in labels.iter().enumerate() {
        match l.as_str() {
            LABEL_B_ENT => {
                if let Some(s) = open.take() {
                    spans.push(TokenSpan::new(s, i - 1));
                }
                open = Some(i);
            }
            LABEL_I_ENT => {
                if open.is_none() {
                    open = Some(i);
                }
            }
            _ => {
                if let Some(s) = open.take() {
                    spans.push(TokenSpan::new(s, i - 1));
                }
            }
        }
    }
    if let Some(s) = open {
        spans.push(TokenSpan::new(s, labels.len() - 1));
    }
    spans
}

/// Recover full mentions (kind defaults to DIRECT; labels carry no kind).
pub fn mentions_from_labels_direct(labels: &[String]) -> Vec<EntityMention> {
    mentions_from_labels(labels)
        .into_iter()
        .map(|span| EntityMention {
            token_span: span,
            kind: crate::model::MentionKind::Direct,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Token;

    fn doc_with(n: usize) -> AnnotatedDocument {
        let mut doc = AnnotatedDocument::new("d", "X");
        for i in 0..n {
            doc.tokens.push(Token::new(i, format!("w{i}"), 0));
        }
        doc
    }

    #[test]
    fn span_projects_to_b_then_i() {
        let mut doc = doc_with(6);
        doc.entity_mentions.push(EntityMention::direct(3, 4));
        let labels = to_token_labels(&doc, LabelLayer::Entity);
        assert_eq!(labels, vec!["O", "O", "O", "B-ENT", "I-ENT", "O"]);
    }

    #[test]
    fn empty_annotations_project_to_all_o() {
        let doc = doc_with(4);
        assert!(to_token_labels(&doc, LabelLayer::Entity)
            .iter()
            .all(|l| l == LABEL_O));
        assert!(to_token_labels(&doc, LabelLayer::Event)
            .iter()
            .all(|l| l == LABEL_O));
    }

    #[test]
    fn event_projection_round_trips() {
        let mut doc = doc_with(8);
        doc.events.push(EventMention::factual(2));
        doc.events.push(EventMention::factual(6));
        let labels = to_token_labels(&doc, LabelLayer::Event);
        let back = events_from_labels(&labels);
        assert_eq!(back, doc.events);
    }

    #[test]
    fn mention_projection_round_trips_adjacent_spans() {
        let mut doc = doc_with(6);
        doc.entity_mentions.push(EntityMention::direct(1, 2));
        doc.entity_mentions.push(EntityMention::direct(3, 3));
        let labels = to_token_labels(&doc, LabelLayer::Entity);
        assert_eq!(labels, vec!["O", "B-ENT", "I-ENT", "B-ENT", "O", "O"]);
        let spans = mentions_from_labels(&labels);
        assert_eq!(spans, vec![TokenSpan::new(1, 2), TokenSpan::new(3, 3)]);
    }

    #[test]
    fn dangling_initial_i_opens_a_span() {
        let labels: Vec<String> = ["I-ENT", "I-ENT", "O"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        assert_eq!(mentions_from_labels(&labels), vec![TokenSpan::new(0, 1)]);
    }
}
