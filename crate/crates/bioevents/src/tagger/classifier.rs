//! The trainable per-token labeler contract.
//!
//! Implementations receive whole tokens; anything using sub-word encoders
//! must score only the first sub-token per token so that F-scores stay
//! comparable across implementations. `predict` after `train` must be
//! deterministic given a fixed seed and identical input.

use serde::{Deserialize, Serialize};

use super::chunk::ChunkingSpec;
use super::TaggerError;
use crate::labels::LabelLayer;

/// Which tagging task a classifier is being trained for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Task {
    Entity,
    Event,
}

impl Task {
    pub fn layer(&self) -> LabelLayer {
        match self {
            Task::Entity => LabelLayer::Entity,
            Task::Event => LabelLayer::Event,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Task::Entity => "entity",
            Task::Event => "event",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainConfig {
    pub epochs: usize,
    pub seed: u64,
    pub task: Task,
    pub chunking: ChunkingSpec,
}

impl TrainConfig {
    pub fn new(task: Task, epochs: usize, seed: u64) -> Self {
        TrainConfig {
            epochs,
            seed,
            task,
            chunking: ChunkingSpec::default(),
        }
    }
}

/// A window of whole tokens with enough identity to map predictions back
/// onto the document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TokenSequence {
    pub doc_id: String,
    /// Document-level index of the first token in this window.
    pub start: usize,
    pub tokens: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledSequence {
    pub seq: TokenSequence,
    pub labels: Vec<String>,
}

/// Per-token label distributions over a fixed alphabet.
#[derive(Debug, Clone, PartialEq)]
pub struct Prediction {
    pub alphabet: Vec<String>,
    /// One score vector per token, aligned with `alphabet`.
    pub scores: Vec<Vec<f32>>,
}

impl Prediction {
    /// Highest-scoring label per token; ties break toward the earlier
    /// alphabet entry so output is deterministic.
    pub fn argmax_labels(&self) -> Vec<String> {
        self.scores
            .iter()
            .map(|row| {
                let mut best = 0usize;
                for (i, v) in row.iter().enumerate() {
                    if *v > row[best] {
                        best = i;
                    }
                }
                self.alphabet[best].clone()
            })
            .collect()
    }
}

pub trait TokenClassifier {
    /// Fit on labeled windows; mutates internal state.
    fn train(&mut self, data: &[LabeledSequence], config: &TrainConfig) -> Result<(), TaggerError>;

    /// Per-token label distributions for each window.
    fn predict(&self, sequences: &[TokenSequence]) -> Result<Vec<Prediction>, TaggerError>;

    /// Short human-readable identity, recorded in run logs.
    fn describe(&self) -> String;

    /// Whether `predict` may be called from multiple workers at once.
    fn reentrant(&self) -> bool {
        false
    }
}

/// Convenience: argmax labels per sequence.
pub fn predict_labels<C: TokenClassifier + ?Sized>(
    classifier: &C,
    sequences: &[TokenSequence],
) -> Result<Vec<Vec<String>>, TaggerError> {
    Ok(classifier
        .predict(sequences)?
        .iter()
        .map(Prediction::argmax_labels)
        .collect())
}
