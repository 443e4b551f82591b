//! Pairwise inter-annotator agreement over aligned annotation versions.
//!
//! Entity and event layers are projected to per-token labels and compared
//! with Cohen's kappa over all tokens. Relation layers (LINK, CONT_MOD)
//! are compared as per-token participation labels — none/source/target —
//! since agreement there is about which tokens take part in a relation.

use serde::{Deserialize, Serialize};

use super::kappa::cohen_kappa;
use super::MetricsError;
use crate::labels::{to_token_labels, LabelLayer};
use crate::model::AnnotatedDocument;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum IaaLayer {
    Event,
    Entity,
    Link,
    ContMod,
}

impl IaaLayer {
    pub const ALL: [IaaLayer; 4] = [
        IaaLayer::Event,
        IaaLayer::Entity,
        IaaLayer::Link,
        IaaLayer::ContMod,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            IaaLayer::Event => "EVENT",
            IaaLayer::Entity => "ENTITY",
            IaaLayer::Link => "LINK",
            IaaLayer::ContMod => "CONT_MOD",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AgreementReport {
    pub layer: IaaLayer,
    pub annotator_pair: (String, String),
    /// `None` when chance agreement is 1 and kappa is undefined.
    pub kappa: Option<f64>,
    pub undefined: bool,
    pub n_items: usize,
}

fn relation_participation(doc: &AnnotatedDocument, layer: IaaLayer) -> Vec<String> {
    let mut labels = vec!["NONE"; doc.tokens.len()];
    let pairs: Vec<(usize, usize)> = match layer {
        IaaLayer::Link => doc.links.iter().map(|l| (l.source_token, l.target_token)).collect(),
        IaaLayer::ContMod => doc
            .cont_mods
            .iter()
            .map(|c| (c.source_token, c.target_token))
            .collect(),
        _ => Vec::new(),
    };
    for (src, tgt) in pairs {
        if src < labels.len() {
            labels[src] = if labels[src] == "TGT" { "SRC+TGT" } else { "SRC" };
        }
        if tgt < labels.len() {
            labels[tgt] = if labels[tgt] == "SRC" { "SRC+TGT" } else { "TGT" };
        }
    }
    labels.into_iter().map(str::to_string).collect()
}

fn layer_labels(doc: &AnnotatedDocument, layer: IaaLayer) -> Vec<String> {
    match layer {
        IaaLayer::Event => to_token_labels(doc, LabelLayer::Event),
        IaaLayer::Entity => to_token_labels(doc, LabelLayer::Entity),
        IaaLayer::Link | IaaLayer::ContMod => relation_participation(doc, layer),
    }
}

/// Compare two annotators' versions of the same documents, aligned by
/// position. Tokenization must be identical; the first divergent token is
/// reported otherwise.
pub fn pairwise_iaa(
    docs_a: &[AnnotatedDocument],
    docs_b: &[AnnotatedDocument],
    layer: IaaLayer,
    annotators: (&str, &str),
) -> Result<AgreementReport, MetricsError> {
    if docs_a.len() != docs_b.len() {
        return Err(MetricsError::LengthMismatch {
            left: docs_a.len(),
            right: docs_b.len(),
        });
    }

    let mut labels_a = Vec::new();
    let mut labels_b = Vec::new();
    let mut offset = 0usize;
    for (da, db) in docs_a.iter().zip(docs_b) {
        if da.tokens.len() != db.tokens.len() {
            let first = da
                .tokens
                .iter()
                .zip(&db.tokens)
                .position(|(x, y)| x.text != y.text)
                .unwrap_or_else(|| da.tokens.len().min(db.tokens.len()));
            return Err(MetricsError::TokenizationMismatch {
                doc_id: da.doc_id.clone(),
                index: offset + first,
            });
        }
        if let Some(first) = da
            .tokens
            .iter()
            .zip(&db.tokens)
            .position(|(x, y)| x.text != y.text)
        {
            return Err(MetricsError::TokenizationMismatch {
                doc_id: da.doc_id.clone(),
                index: offset + first,
            });
        }
        offset += da.tokens.len();
        labels_a.extend(layer_labels(da, layer));
        labels_b.extend(layer_labels(db, layer));
    }

    let n_items = labels_a.len();
    match cohen_kappa(&labels_a, &labels_b) {
        Ok(k) => Ok(AgreementReport {
            layer,
            annotator_pair: (annotators.0.to_string(), annotators.1.to_string()),
            kappa: Some(k),
            undefined: false,
            n_items,
        }),
        Err(MetricsError::UndefinedKappa) => Ok(AgreementReport {
            layer,
            annotator_pair: (annotators.0.to_string(), annotators.1.to_string()),
            kappa: None,
            undefined: true,
            n_items,
        }),
        Err(e) => Err(e),
    }
}
