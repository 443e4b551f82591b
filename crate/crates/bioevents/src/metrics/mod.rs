//! Agreement, divergence and corpus-profile statistics.

pub mod divergence;
pub mod export;
pub mod iaa;
pub mod jsd;
pub mod kappa;
pub mod profile;

pub use divergence::{
    corpus_distribution, jsd_matrix, DistributionBasis, DivergenceMatrix, DivergenceResult,
};
pub use iaa::{pairwise_iaa, AgreementReport, IaaLayer};
pub use jsd::{entropy_bits, jsd, normalize, Distribution};
pub use kappa::cohen_kappa;
pub use profile::{corpus_profile, CorpusProfile};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum MetricsError {
    #[error("sequences have different lengths ({left} vs {right})")]
    LengthMismatch { left: usize, right: usize },
    #[error("kappa is undefined: chance agreement is 1 (both annotators constant and equal)")]
    UndefinedKappa,
    #[error("distribution is not normalized (sum = {sum}): {detail}")]
    NotNormalized { sum: f64, detail: String },
    #[error("tokenization mismatch in '{doc_id}' at token {index}")]
    TokenizationMismatch { doc_id: String, index: usize },
    #[error("empty input")]
    Empty,
    #[error("export failed: {0}")]
    Export(String),
}
