//! Deterministic mock classifier: memorizes training labels by document
//! position and replays them at prediction time, with an optional seeded
//! noise rate. With zero noise it is a gold-replaying oracle, which makes
//! the whole harness and pipeline testable without any pretrained encoder.

use std::collections::HashMap;

use super::classifier::{
    LabeledSequence, Prediction, TokenClassifier, TokenSequence, TrainConfig,
};
use super::TaggerError;
use crate::labels::LABEL_O;

/// Stable 64-bit FNV-1a, used so noise decisions depend only on
/// (seed, doc_id, token index), never on call order.
pub(crate) fn fnv1a(parts: &[&[u8]]) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for part in parts {
        for &b in *part {
            h ^= b as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
    }
    h
}

#[derive(Debug, Clone)]
pub struct MemorizingClassifier {
    memory: HashMap<(String, usize), String>,
    alphabet: Vec<String>,
    noise_rate: f64,
    seed: u64,
    trained: bool,
}

impl MemorizingClassifier {
    /// Pure gold replay: predictions equal memorized training labels.
    pub fn gold_replay() -> Self {
        Self::with_noise(0.0, 0)
    }

    /// Flip each predicted label to a different alphabet entry with the
    /// given probability, decided by a stable per-token hash.
    pub fn with_noise(noise_rate: f64, seed: u64) -> Self {
        MemorizingClassifier {
            memory: HashMap::new(),
            alphabet: Vec::new(),
            noise_rate: noise_rate.clamp(0.0, 1.0),
            seed,
            trained: false,
        }
    }

    fn noisy(&self, doc_id: &str, index: usize, label: &str) -> String {
        if self.noise_rate == 0.0 || self.alphabet.len() < 2 {
            return label.to_string();
        }
        let h = fnv1a(&[
            &self.seed.to_le_bytes(),
            doc_id.as_bytes(),
            &index.to_le_bytes(),
        ]);
        let draw = (h >> 11) as f64 / (1u64 << 53) as f64;
        if draw >= self.noise_rate {
            return label.to_string();
        }
        let others: Vec<&String> = self.alphabet.iter().filter(|l| l.as_str() != label).collect();
        let pick = (h as usize / 7) % others.len();
        others[pick].clone()
    }
}

impl TokenClassifier for MemorizingClassifier {
    fn train(&mut self, data: &[LabeledSequence], _config: &TrainConfig) -> Result<(), TaggerError> {
        let mut alphabet: Vec<String> = vec![LABEL_O.to_string()];
        for ls in data {
            if ls.labels.len() != ls.seq.tokens.len() {
                return Err(TaggerError::LengthMismatch {
                    left: ls.labels.len(),
                    right: ls.seq.tokens.len(),
                });
            }
            for (i, label) in ls.labels.iter().enumerate() {
                self.memory
                    .insert((ls.seq.doc_id.clone(), ls.seq.start + i), label.clone());
                if !alphabet.contains(label) {
                    alphabet.push(label.clone());
                }
            }
        }
        alphabet.sort();
        self.alphabet = alphabet;
        self.trained = true;
        Ok(())
    }

    fn predict(&self, sequences: &[TokenSequence]) -> Result<Vec<Prediction>, TaggerError> {
        if !self.trained {
            return Err(TaggerError::NotTrained);
        }
        let mut out = Vec::with_capacity(sequences.len());
        for seq in sequences {
            let mut scores = Vec::with_capacity(seq.tokens.len());
            for i in 0..seq.tokens.len() {
                let key = (seq.doc_id.clone(), seq.start + i);
                let label = self
                    .memory
                    .get(&key)
                    .map(String::as_str)
                    .unwrap_or(LABEL_O);
                let label = self.noisy(&seq.doc_id, seq.start + i, label);
                let mut row = vec![0.0f32; self.alphabet.len()];
                if let Some(pos) = self.alphabet.iter().position(|l| *l == label) {
                    row[pos] = 1.0;
                }
                scores.push(row);
            }
            out.push(Prediction {
                alphabet: self.alphabet.clone(),
                scores,
            });
        }
        Ok(out)
    }

    fn describe(&self) -> String {
        format!("memorizing-mock(noise={}, seed={})", self.noise_rate, self.seed)
    }

    fn reentrant(&self) -> bool {
        true
    }
}
