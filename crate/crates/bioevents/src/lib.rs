//! Toolkit for detecting biographical events in biographies and measuring
//! how event distributions diverge across intersectional groups.
//!
//! The crate is organized around a two-stage token-classification pipeline
//! (target-entity mentions, then entity-linked events) plus the machinery
//! around it:
//!
//! * [`model`] / [`validate`] / [`labels`] / [`formats`] — the canonical
//!   annotation scheme, its validator and on-disk representations;
//! * [`adapters`] — readers for four external corpus formats and the
//!   harmonization passes that map them onto the scheme;
//! * [`metrics`] — inter-annotator agreement, corpus profiles and
//!   Jensen-Shannon divergence;
//! * [`tagger`] — a model-agnostic sequence-labeling harness with chunking,
//!   splits, scoring, and a deterministic mock classifier;
//! * [`pipeline`] — checkpointed large-scale annotation over biography
//!   collections;
//! * [`ingest`] — knowledge-base acquisition of writer records and their
//!   intersectional grouping;
//! * [`shift`] — per-event-type JSD decomposition between group
//!   distributions, with CSV and SVG reports;
//! * [`synth`] — deterministic synthetic corpora used by tests, benchmarks
//!   and the verification suite.

pub mod adapters;
pub mod formats;
pub mod ingest;
pub mod labels;
pub mod lexicon;
pub mod metrics;
pub mod model;
pub mod pipeline;
pub mod shift;
pub mod synth;
pub mod tagger;
pub mod validate;

use thiserror::Error;

pub use formats::{load_corpus, load_corpus_with, save_corpus, CorpusFormat};
pub use lexicon::Lexicon;
pub use model::{
    AnnotatedDocument, ContModRelation, Corpus, EntityMention, EventMention, Gender, GroupLabel,
    LinkRelation, MentionKind, ModalityValue, Origin, Provenance, Token, TokenSpan, Uncertainty,
};
pub use validate::{validate_corpus, validate_document, ValidationReport};

/// Errors from the data model, serialization and scheme validation.
#[derive(Debug, Error)]
pub enum CoreError {
    #[error("{path}:{line}: {message}")]
    Parse {
        path: String,
        line: usize,
        message: String,
    },
    #[error("validation failed for document '{doc_id}': {summary}")]
    Validation {
        doc_id: String,
        summary: String,
        report: Box<ValidationReport>,
    },
    #[error("unknown or unsupported corpus format: {0}")]
    UnknownFormat(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}
