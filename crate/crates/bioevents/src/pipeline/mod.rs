//! Checkpointed two-stage annotation over large biography collections.

pub mod checkpoint;
pub mod manifest;
pub mod report;
pub mod run;
pub mod segment;

pub use checkpoint::{read_checkpoint, CheckpointEntry, CheckpointWriter};
pub use manifest::{read_manifest, write_manifest, ManifestRecord};
pub use report::{KindRecallCounts, RunReport, StageCounts};
pub use run::{
    detect_events, filter_sentences, run_corpus_pipeline, FilterOutcome, PipelineOptions,
    PipelineRun, SegmentedDocument,
};
pub use segment::{segment, split_sentences, tokenize, SPLITTER_VERSION};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("manifest error: {0}")]
    Manifest(String),
    #[error("checkpoint inconsistent, rebuild required: {detail}")]
    RebuildRequired { detail: String },
    #[error("model failed on document '{doc_id}': {message}")]
    Model { doc_id: String, message: String },
    #[error("document '{doc_id}' failed: {message}")]
    Document { doc_id: String, message: String },
}
