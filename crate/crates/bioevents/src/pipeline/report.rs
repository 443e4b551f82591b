//! Run report: per-stage and per-group counts plus the versions that
//! determine them.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::labels::LabelLayer;
use crate::model::{AnnotatedDocument, MentionKind};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageCounts {
    pub documents: usize,
    pub sentences_before: usize,
    pub sentences_after: usize,
    pub events: usize,
}

impl StageCounts {
    pub fn add(&mut self, other: &StageCounts) {
        self.documents += other.documents;
        self.sentences_before += other.sentences_before;
        self.sentences_after += other.sentences_after;
        self.events += other.events;
    }

    /// Fraction of sentences kept by mention filtering.
    pub fn retention(&self) -> f64 {
        if self.sentences_before == 0 {
            0.0
        } else {
            self.sentences_after as f64 / self.sentences_before as f64
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub splitter_version: String,
    pub entity_model: String,
    pub event_model: String,
    pub totals: StageCounts,
    /// Keyed by group code; documents without a group fall under "-".
    pub per_group: BTreeMap<String, StageCounts>,
    pub quarantined: Vec<(String, String)>,
    /// Recall of gold mentions by kind, measured on documents that carried
    /// gold annotations (canonical inputs). A mention counts as recalled
    /// when at least one of its tokens is predicted positive, mention
    /// presence being what sentence filtering consumes.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mention_recall_by_kind: Option<BTreeMap<String, f64>>,
}

/// Accumulator for per-kind mention recall on gold-annotated inputs.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct KindRecallCounts {
    pub direct_total: usize,
    pub direct_hit: usize,
    pub indirect_total: usize,
    pub indirect_hit: usize,
}

impl KindRecallCounts {
    pub fn observe(&mut self, gold: &AnnotatedDocument, predicted_entity_labels: &[String]) {
        for m in &gold.entity_mentions {
            let hit = m
                .token_span
                .indices()
                .any(|i| {
                    predicted_entity_labels
                        .get(i)
                        .map_or(false, |l| LabelLayer::Entity.is_positive(l))
                });
            match m.kind {
                MentionKind::Direct => {
                    self.direct_total += 1;
                    self.direct_hit += usize::from(hit);
                }
                MentionKind::Indirect => {
                    self.indirect_total += 1;
                    self.indirect_hit += usize::from(hit);
                }
            }
        }
    }

    pub fn into_map(self) -> Option<BTreeMap<String, f64>> {
        if self.direct_total + self.indirect_total == 0 {
            return None;
        }
        let mut map = BTreeMap::new();
        if self.direct_total > 0 {
            map.insert(
                "DIRECT".to_string(),
                self.direct_hit as f64 / self.direct_total as f64,
            );
        }
        if self.indirect_total > 0 {
            map.insert(
                "INDIRECT".to_string(),
                self.indirect_hit as f64 / self.indirect_total as f64,
            );
        }
        Some(map)
    }
}
