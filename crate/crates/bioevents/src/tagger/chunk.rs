//! Fixed-width window chunking of documents.
//!
//! Documents are split into consecutive non-overlapping windows of at most
//! `max_sequence_length` tokens, labels sliced in parallel; the last window
//! may be short. Concatenating a document's windows reproduces it exactly,
//! so evaluation joins windows back before scoring.

use serde::{Deserialize, Serialize};

use super::classifier::{LabeledSequence, TokenSequence};
use super::TaggerError;
use crate::labels::{to_token_labels, LabelLayer};
use crate::model::AnnotatedDocument;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum BatchingMode {
    /// One variable-length batch holding all of a document's windows.
    OneBatchPerDocument,
    /// Fixed batch size across documents; not a replication setting.
    Fixed(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChunkingSpec {
    pub max_sequence_length: usize,
    pub batching: BatchingMode,
}

impl Default for ChunkingSpec {
    fn default() -> Self {
        ChunkingSpec {
            max_sequence_length: 128,
            batching: BatchingMode::OneBatchPerDocument,
        }
    }
}

impl ChunkingSpec {
    pub fn with_window(max_sequence_length: usize) -> Result<Self, TaggerError> {
        if max_sequence_length < 2 {
            return Err(TaggerError::InvalidConfig(format!(
                "max_sequence_length must be at least 2, got {max_sequence_length}"
            )));
        }
        Ok(ChunkingSpec {
            max_sequence_length,
            ..Default::default()
        })
    }
}

/// Windows of raw tokens (no labels), for prediction-time chunking.
pub fn chunk_tokens(doc_id: &str, tokens: &[String], spec: &ChunkingSpec) -> Vec<TokenSequence> {
    let width = spec.max_sequence_length.max(1);
    tokens
        .chunks(width)
        .enumerate()
        .map(|(w, chunk)| TokenSequence {
            doc_id: doc_id.to_string(),
            start: w * width,
            tokens: chunk.to_vec(),
        })
        .collect()
}

/// Labeled windows of a document for the given layer.
pub fn chunk_document(
    doc: &AnnotatedDocument,
    spec: &ChunkingSpec,
    layer: LabelLayer,
) -> Vec<LabeledSequence> {
    let labels = to_token_labels(doc, layer);
    let tokens: Vec<String> = doc.tokens.iter().map(|t| t.text.clone()).collect();
    chunk_tokens(&doc.doc_id, &tokens, spec)
        .into_iter()
        .map(|seq| {
            let slice = labels[seq.start..seq.start + seq.tokens.len()].to_vec();
            LabeledSequence { seq, labels: slice }
        })
        .collect()
}

/// Reassemble per-window label vectors into one document-level sequence.
/// Windows must tile the document exactly.
pub fn join_windows(
    windows: &[(TokenSequence, Vec<String>)],
    n_tokens: usize,
) -> Result<Vec<String>, TaggerError> {
    let mut out = vec![String::new(); n_tokens];
    let mut covered = 0usize;
    for (seq, labels) in windows {
        if labels.len() != seq.tokens.len() {
            return Err(TaggerError::LengthMismatch {
                left: labels.len(),
                right: seq.tokens.len(),
            });
        }
        for (i, l) in labels.iter().enumerate() {
            let at = seq.start + i;
            if at >= n_tokens {
                return Err(TaggerError::LengthMismatch {
                    left: at + 1,
                    right: n_tokens,
                });
            }
            out[at] = l.clone();
            covered += 1;
        }
    }
    if covered != n_tokens {
        return Err(TaggerError::LengthMismatch {
            left: covered,
            right: n_tokens,
        });
    }
    Ok(out)
}

/// Group a document's windows into batches per the spec.
pub fn batches<T: Clone>(windows: &[T], spec: &ChunkingSpec) -> Vec<Vec<T>> {
    match spec.batching {
        BatchingMode::OneBatchPerDocument => vec![windows.to_vec()],
        BatchingMode::Fixed(size) => windows
            .chunks(size.max(1))
            .map(|c| c.to_vec())
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{EntityMention, Token};

    fn doc_of(n: usize) -> AnnotatedDocument {
        let mut doc = AnnotatedDocument::new("d", "X");
        for i in 0..n {
            doc.tokens.push(Token::new(i, format!("w{i}"), 0));
        }
        doc
    }

    #[test]
    fn three_hundred_tokens_split_128_128_44() {
        let doc = doc_of(300);
        let chunks = chunk_document(&doc, &ChunkingSpec::default(), LabelLayer::Event);
        let sizes: Vec<usize> = chunks.iter().map(|c| c.seq.tokens.len()).collect();
        assert_eq!(sizes, vec![128, 128, 44]);
        assert_eq!(chunks[2].seq.start, 256);
    }

    #[test]
    fn exact_window_is_one_chunk() {
        let doc = doc_of(128);
        let chunks = chunk_document(&doc, &ChunkingSpec::default(), LabelLayer::Event);
        assert_eq!(chunks.len(), 1);
        assert_eq!(chunks[0].seq.tokens.len(), 128);
    }

    #[test]
    fn span_straddling_boundary_keeps_dangling_i() {
        let mut doc = doc_of(130);
        doc.entity_mentions.push(EntityMention::direct(127, 128));
        let chunks = chunk_document(&doc, &ChunkingSpec::default(), LabelLayer::Entity);
        assert_eq!(chunks[0].labels[127], "B-ENT");
        assert_eq!(chunks[1].labels[0], "I-ENT");

        // joining windows reconstructs the document labels exactly
        let windows: Vec<(TokenSequence, Vec<String>)> = chunks
            .into_iter()
            .map(|c| (c.seq, c.labels))
            .collect();
        let joined = join_windows(&windows, 130).unwrap();
        assert_eq!(joined, to_token_labels(&doc, LabelLayer::Entity));
    }

    #[test]
    fn chunk_join_identity_for_many_sizes() {
        for n in [1usize, 2, 5, 127, 128, 129, 255, 256, 300] {
            for width in [2usize, 7, 128] {
                let mut doc = doc_of(n);
                doc.entity_mentions.push(EntityMention::direct(0, 0));
                let spec = ChunkingSpec::with_window(width).unwrap();
                let chunks = chunk_document(&doc, &spec, LabelLayer::Entity);
                let windows: Vec<(TokenSequence, Vec<String>)> =
                    chunks.into_iter().map(|c| (c.seq, c.labels)).collect();
                let joined = join_windows(&windows, n).unwrap();
                assert_eq!(joined, to_token_labels(&doc, LabelLayer::Entity));
            }
        }
    }

    #[test]
    fn window_below_two_is_rejected() {
        assert!(ChunkingSpec::with_window(1).is_err());
    }

    #[test]
    fn one_batch_per_document_holds_all_windows() {
        let doc = doc_of(300);
        let chunks = chunk_document(&doc, &ChunkingSpec::default(), LabelLayer::Event);
        let b = batches(&chunks, &ChunkingSpec::default());
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].len(), 3);
    }
}
