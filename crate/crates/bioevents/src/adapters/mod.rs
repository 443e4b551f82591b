//! Conversion and harmonization of external corpora into the canonical
//! scheme: person-chain selection, light/copular verb rewriting, and
//! training-set composition.

pub mod compose;
pub mod harmonize;
pub mod light_verbs;
pub mod readers;
pub mod source;

pub use compose::{compose_training_set, Component, SampleUnit, SentencePool, TrainingSetSpec, UnitCount};
pub use harmonize::harmonize_person_entities;
pub use light_verbs::{rewrite_light_verbs, ComplementResolver, RewriteLog};
pub use source::{EntityChain, GoldComplements, SourceDocument};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum AdapterError {
    #[error("document '{doc_id}' has no PERSON coreference chain")]
    NoPersonEntity { doc_id: String },
    #[error("corpus '{corpus}' cannot supply {requested} {unit}(s), only {available} available")]
    InsufficientData {
        corpus: String,
        requested: usize,
        available: usize,
        unit: &'static str,
    },
    #[error("no corpus named '{name}' was provided")]
    UnknownCorpus { name: String },
    #[error("invalid training-set spec: {message}")]
    SpecInvalid { message: String },
}
