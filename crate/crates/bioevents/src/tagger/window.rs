//! A small trainable tagger: multinomial logistic regression over hashed
//! context-window features, trained with seeded SGD.
//!
//! This is the in-tree trainable implementation of the classifier contract.
//! It runs on CPU in seconds, is bit-for-bit reproducible under a fixed
//! seed, and has enough capacity (token identity features) to overfit small
//! training sets, which is what the harness sanity checks need. Encoder
//! backends plug in through the same trait.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::classifier::{
    LabeledSequence, Prediction, TokenClassifier, TokenSequence, TrainConfig,
};
use super::mock::fnv1a;
use super::TaggerError;
use crate::labels::LABEL_O;

const FEATURE_BITS: usize = 18;
const FEATURE_DIM: usize = 1 << FEATURE_BITS;

#[derive(Debug, Clone)]
pub struct WindowTagger {
    weights: Vec<f32>, // FEATURE_DIM x n_labels, row-major by feature
    alphabet: Vec<String>,
    learning_rate: f32,
    trained: bool,
}

impl Default for WindowTagger {
    fn default() -> Self {
        Self::new()
    }
}

impl WindowTagger {
    pub fn new() -> Self {
        WindowTagger {
            weights: Vec::new(),
            alphabet: Vec::new(),
            learning_rate: 0.2,
            trained: false,
        }
    }

    fn feature_ids(tokens: &[String], i: usize) -> Vec<usize> {
        let word = |j: isize| -> &str {
            if j < 0 || j as usize >= tokens.len() {
                "<pad>"
            } else {
                &tokens[j as usize]
            }
        };
        let cur = tokens[i].to_lowercase();
        let chars: Vec<char> = cur.chars().collect();
        let prefix: String = chars.iter().take(3).collect();
        let suffix: String = chars.iter().rev().take(3).collect();
        let shape = format!(
            "{}{}{}",
            tokens[i].chars().next().map_or(false, |c| c.is_uppercase()) as u8,
            tokens[i].chars().any(|c| c.is_ascii_digit()) as u8,
            tokens[i].chars().all(|c| !c.is_alphanumeric()) as u8
        );
        let i = i as isize;
        let feats = [
            format!("w0={cur}"),
            format!("wm1={}", word(i - 1).to_lowercase()),
            format!("wp1={}", word(i + 1).to_lowercase()),
            format!("wm2={}", word(i - 2).to_lowercase()),
            format!("wp2={}", word(i + 2).to_lowercase()),
            format!("pre={prefix}"),
            format!("suf={suffix}"),
            format!("shape={shape}"),
            "bias".to_string(),
        ];
        feats
            .iter()
            .map(|f| (fnv1a(&[f.as_bytes()]) as usize) & (FEATURE_DIM - 1))
            .collect()
    }

    fn scores_for(&self, feats: &[usize]) -> Vec<f32> {
        let k = self.alphabet.len();
        let mut scores = vec![0.0f32; k];
        for &f in feats {
            let base = f * k;
            for (j, s) in scores.iter_mut().enumerate() {
                *s += self.weights[base + j];
            }
        }
        scores
    }

    fn softmax(scores: &[f32]) -> Vec<f32> {
        let max = scores.iter().cloned().fold(f32::NEG_INFINITY, f32::max);
        let exps: Vec<f32> = scores.iter().map(|s| (s - max).exp()).collect();
        let sum: f32 = exps.iter().sum();
        exps.into_iter().map(|e| e / sum).collect()
    }
}

impl TokenClassifier for WindowTagger {
    fn train(&mut self, data: &[LabeledSequence], config: &TrainConfig) -> Result<(), TaggerError> {
        let mut alphabet: Vec<String> = vec![LABEL_O.to_string()];
        for ls in data {
            if ls.labels.len() != ls.seq.tokens.len() {
                return Err(TaggerError::LengthMismatch {
                    left: ls.labels.len(),
                    right: ls.seq.tokens.len(),
                });
            }
            for l in &ls.labels {
                if !alphabet.contains(l) {
                    alphabet.push(l.clone());
                }
            }
        }
        alphabet.sort();
        let k = alphabet.len();
        self.alphabet = alphabet;
        self.weights = vec![0.0; FEATURE_DIM * k];

        let label_index: std::collections::HashMap<&str, usize> = self
            .alphabet
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), i))
            .collect();

        let mut order: Vec<usize> = (0..data.len()).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        for _epoch in 0..config.epochs {
            order.shuffle(&mut rng);
            for &si in &order {
                let ls = &data[si];
                for (i, gold) in ls.labels.iter().enumerate() {
                    let feats = Self::feature_ids(&ls.seq.tokens, i);
                    let probs = Self::softmax(&self.scores_for(&feats));
                    let gold_j = label_index[gold.as_str()];
                    for &f in &feats {
                        let base = f * k;
                        for j in 0..k {
                            let target = if j == gold_j { 1.0 } else { 0.0 };
                            self.weights[base + j] -= self.learning_rate * (probs[j] - target);
                        }
                    }
                }
            }
        }
        self.trained = true;
        Ok(())
    }

    fn predict(&self, sequences: &[TokenSequence]) -> Result<Vec<Prediction>, TaggerError> {
        if !self.trained {
            return Err(TaggerError::NotTrained);
        }
        Ok(sequences
            .iter()
            .map(|seq| {
                let scores = (0..seq.tokens.len())
                    .map(|i| Self::softmax(&self.scores_for(&Self::feature_ids(&seq.tokens, i))))
                    .collect();
                Prediction {
                    alphabet: self.alphabet.clone(),
                    scores,
                }
            })
            .collect())
    }

    fn describe(&self) -> String {
        format!("window-tagger(dim=2^{FEATURE_BITS}, lr={})", self.learning_rate)
    }

    fn reentrant(&self) -> bool {
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tagger::classifier::{predict_labels, Task};

    fn seq(doc: &str, words: &[&str], labels: &[&str]) -> LabeledSequence {
        LabeledSequence {
            seq: TokenSequence {
                doc_id: doc.into(),
                start: 0,
                tokens: words.iter().map(|w| w.to_string()).collect(),
            },
            labels: labels.iter().map(|l| l.to_string()).collect(),
        }
    }

    fn toy_data() -> Vec<LabeledSequence> {
        vec![
            seq("a", &["Ada", "wrote", "books", "."], &["B-ENT", "O", "O", "O"]),
            seq("b", &["She", "met", "Ada", "."], &["B-ENT", "O", "B-ENT", "O"]),
            seq("c", &["Books", "by", "Ada", "."], &["O", "O", "B-ENT", "O"]),
        ]
    }

    #[test]
    fn overfits_toy_training_data() {
        let mut t = WindowTagger::new();
        let data = toy_data();
        t.train(&data, &TrainConfig::new(Task::Entity, 30, 1)).unwrap();
        let seqs: Vec<TokenSequence> = data.iter().map(|d| d.seq.clone()).collect();
        let pred = predict_labels(&t, &seqs).unwrap();
        for (p, d) in pred.iter().zip(&data) {
            assert_eq!(p, &d.labels);
        }
    }

    #[test]
    fn training_is_reproducible_under_seed() {
        let data = toy_data();
        let run = |seed| {
            let mut t = WindowTagger::new();
            t.train(&data, &TrainConfig::new(Task::Entity, 5, seed)).unwrap();
            t.predict(&[data[0].seq.clone()]).unwrap()[0].scores.clone()
        };
        assert_eq!(run(9), run(9));
    }

    #[test]
    fn distributions_sum_to_one() {
        let mut t = WindowTagger::new();
        t.train(&toy_data(), &TrainConfig::new(Task::Entity, 2, 0)).unwrap();
        let pred = &t.predict(&[toy_data()[0].seq.clone()]).unwrap()[0];
        for row in &pred.scores {
            let sum: f32 = row.iter().sum();
            assert!((sum - 1.0).abs() < 1e-4);
        }
    }
}
