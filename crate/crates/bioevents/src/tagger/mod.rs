//! Model-agnostic sequence-labeling harness: chunking, splits, training
//! and evaluation orchestration, significance testing, and in-tree
//! classifier implementations (a gold-replaying mock and a small trainable
//! tagger).

pub mod anova;
pub mod chunk;
pub mod classifier;
pub mod eval;
pub mod experiment;
pub mod mock;
pub mod presets;
pub mod splits;
pub mod window;

pub use anova::{anova_significance, AnovaOutcome};
pub use chunk::{batches, chunk_document, chunk_tokens, join_windows, BatchingMode, ChunkingSpec};
pub use classifier::{
    predict_labels, LabeledSequence, Prediction, Task, TokenClassifier, TokenSequence, TrainConfig,
};
pub use eval::{evaluate_f1, EvalScores, Prf};
pub use experiment::{run_experiment, score_split, EvalReport};
pub use mock::MemorizingClassifier;
pub use presets::{all_presets, find_preset, Preset};
pub use splits::{build_splits, SplitPool, SplitSpec, SplitUnit, Splits};
pub use window::WindowTagger;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum TaggerError {
    #[error("not enough data: need {needed} {unit}(s), have {available}")]
    InsufficientData {
        needed: usize,
        available: usize,
        unit: &'static str,
    },
    #[error("sequence lengths differ ({left} vs {right})")]
    LengthMismatch { left: usize, right: usize },
    #[error("classifier used before training")]
    NotTrained,
    #[error("classifier failed during {context}: {message}")]
    ClassifierFailure { context: String, message: String },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}
