//! Pairwise corpus divergence over a chosen distribution basis.

use serde::{Deserialize, Serialize};

use super::jsd::{jsd, normalize, Distribution};
use super::MetricsError;
use crate::model::Corpus;

/// What the compared distributions range over. Results carry their basis so
/// values computed on different bases are never conflated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum DistributionBasis {
    /// Lowercased lemma unigrams of the full document text (surface
    /// fallback when lemmas are missing); stopwords retained.
    LemmaUnigram,
    /// Lowercased surface unigrams.
    SurfaceUnigram,
    /// Event-token types only.
    EventType,
}

impl DistributionBasis {
    pub fn id(&self) -> &'static str {
        match self {
            DistributionBasis::LemmaUnigram => "lemma",
            DistributionBasis::SurfaceUnigram => "surface",
            DistributionBasis::EventType => "event-type",
        }
    }
}

impl std::str::FromStr for DistributionBasis {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "lemma" => Ok(DistributionBasis::LemmaUnigram),
            "surface" => Ok(DistributionBasis::SurfaceUnigram),
            "event-type" | "event" => Ok(DistributionBasis::EventType),
            other => Err(format!("unknown distribution basis '{other}'")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DivergenceResult {
    pub corpus_a: String,
    pub corpus_b: String,
    pub jsd: f64,
    pub distribution_basis: DistributionBasis,
}

/// Unigram distribution of a corpus over the chosen basis.
pub fn corpus_distribution(
    corpus: &Corpus,
    basis: DistributionBasis,
) -> Result<Distribution, MetricsError> {
    let mut counts: std::collections::BTreeMap<String, f64> = Default::default();
    for doc in &corpus.documents {
        match basis {
            DistributionBasis::LemmaUnigram => {
                for t in &doc.tokens {
                    *counts.entry(t.lemma_or_surface()).or_default() += 1.0;
                }
            }
            DistributionBasis::SurfaceUnigram => {
                for t in &doc.tokens {
                    *counts.entry(t.text.to_lowercase()).or_default() += 1.0;
                }
            }
            DistributionBasis::EventType => {
                for e in &doc.events {
                    if let Some(t) = doc.tokens.get(e.token_index) {
                        *counts.entry(t.lemma_or_surface()).or_default() += 1.0;
                    }
                }
            }
        }
    }
    normalize(counts)
}

/// Symmetric divergence matrix with a zero diagonal, in corpus order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DivergenceMatrix {
    pub names: Vec<String>,
    pub basis: DistributionBasis,
    pub values: Vec<Vec<f64>>,
}

impl DivergenceMatrix {
    pub fn get(&self, a: &str, b: &str) -> Option<f64> {
        let i = self.names.iter().position(|n| n == a)?;
        let j = self.names.iter().position(|n| n == b)?;
        Some(self.values[i][j])
    }

    pub fn results(&self) -> Vec<DivergenceResult> {
        let mut out = Vec::new();
        for i in 0..self.names.len() {
            for j in (i + 1)..self.names.len() {
                out.push(DivergenceResult {
                    corpus_a: self.names[i].clone(),
                    corpus_b: self.names[j].clone(),
                    jsd: self.values[i][j],
                    distribution_basis: self.basis,
                });
            }
        }
        out
    }
}

/// Pairwise JSD between all corpora over a shared vocabulary (the union of
/// supports, implicit in the keyed distributions).
pub fn jsd_matrix(
    corpora: &[&Corpus],
    basis: DistributionBasis,
) -> Result<DivergenceMatrix, MetricsError> {
    if corpora.len() < 2 {
        return Err(MetricsError::Empty);
    }
    let dists: Vec<Distribution> = corpora
        .iter()
        .map(|c| corpus_distribution(c, basis))
        .collect::<Result<_, _>>()?;

    let n = corpora.len();
    let mut values = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let v = jsd(&dists[i], &dists[j])?;
            values[i][j] = v;
            values[j][i] = v;
        }
    }
    Ok(DivergenceMatrix {
        names: corpora.iter().map(|c| c.name.clone()).collect(),
        basis,
        values,
    })
}
