//! Token-level micro F1 over the positive class.
//!
//! O is excluded from averaging. For the entity task B-ENT and I-ENT merge
//! into one positive token class; for the event task the positive class is
//! the EVENT label. Exact per-label precision/recall is reported alongside.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::classifier::Task;
use super::TaggerError;
use crate::labels::LABEL_O;

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct Prf {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    pub tp: usize,
    pub fp: usize,
    pub fn_: usize,
}

impl Prf {
    fn from_counts(tp: usize, fp: usize, fn_: usize) -> Prf {
        let precision = if tp + fp == 0 {
            0.0
        } else {
            tp as f64 / (tp + fp) as f64
        };
        let recall = if tp + fn_ == 0 {
            0.0
        } else {
            tp as f64 / (tp + fn_) as f64
        };
        let f1 = if precision + recall == 0.0 {
            0.0
        } else {
            2.0 * precision * recall / (precision + recall)
        };
        Prf {
            precision,
            recall,
            f1,
            tp,
            fp,
            fn_,
        }
    }

    /// F1 must equal the harmonic mean of the stored precision/recall.
    pub fn is_consistent(&self) -> bool {
        let expect = if self.precision + self.recall == 0.0 {
            0.0
        } else {
            2.0 * self.precision * self.recall / (self.precision + self.recall)
        };
        (self.f1 - expect).abs() < 1e-9
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalScores {
    /// Micro scores over the merged positive class.
    pub micro: Prf,
    /// Exact-label scores for every non-O label.
    pub per_label: BTreeMap<String, Prf>,
    pub n_tokens: usize,
}

/// Score aligned gold/predicted label sequences.
pub fn evaluate_f1(
    gold: &[Vec<String>],
    predicted: &[Vec<String>],
    task: Task,
) -> Result<EvalScores, TaggerError> {
    if gold.len() != predicted.len() {
        return Err(TaggerError::LengthMismatch {
            left: gold.len(),
            right: predicted.len(),
        });
    }
    let positive = |l: &str| task.layer().is_positive(l);

    let (mut tp, mut fp, mut fn_) = (0usize, 0usize, 0usize);
    let mut label_counts: BTreeMap<String, (usize, usize, usize)> = BTreeMap::new();
    let mut n_tokens = 0usize;

    for (g_seq, p_seq) in gold.iter().zip(predicted) {
        if g_seq.len() != p_seq.len() {
            return Err(TaggerError::LengthMismatch {
                left: g_seq.len(),
                right: p_seq.len(),
            });
        }
        for (g, p) in g_seq.iter().zip(p_seq) {
            n_tokens += 1;
            match (positive(g), positive(p)) {
                (true, true) => tp += 1,
                (false, true) => fp += 1,
                (true, false) => fn_ += 1,
                (false, false) => {}
            }
            if g != LABEL_O {
                let e = label_counts.entry(g.clone()).or_default();
                if g == p {
                    e.0 += 1;
                } else {
                    e.2 += 1;
                }
            }
            if p != LABEL_O && p != g {
                label_counts.entry(p.clone()).or_default().1 += 1;
            }
        }
    }

    let per_label = label_counts
        .into_iter()
        .map(|(l, (tp, fp, fn_))| (l, Prf::from_counts(tp, fp, fn_)))
        .collect();

    Ok(EvalScores {
        micro: Prf::from_counts(tp, fp, fn_),
        per_label,
        n_tokens,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seqs(rows: &[&[&str]]) -> Vec<Vec<String>> {
        rows.iter()
            .map(|r| r.iter().map(|s| s.to_string()).collect())
            .collect()
    }

    #[test]
    fn perfect_prediction_is_one() {
        let g = seqs(&[&["O", "EVENT", "O", "EVENT"]]);
        let s = evaluate_f1(&g, &g, Task::Event).unwrap();
        assert_eq!(s.micro.f1, 1.0);
        assert!(s.micro.is_consistent());
    }

    #[test]
    fn half_found_half_spurious_is_point_five() {
        // 4 gold positives; prediction finds 2 plus 2 false positives
        let g = seqs(&[&["EVENT", "EVENT", "EVENT", "EVENT", "O", "O", "O", "O"]]);
        let p = seqs(&[&["EVENT", "EVENT", "O", "O", "EVENT", "EVENT", "O", "O"]]);
        let s = evaluate_f1(&g, &p, Task::Event).unwrap();
        assert!((s.micro.precision - 0.5).abs() < 1e-12);
        assert!((s.micro.recall - 0.5).abs() < 1e-12);
        assert!((s.micro.f1 - 0.5).abs() < 1e-12);
    }

    #[test]
    fn all_o_prediction_scores_zero() {
        let g = seqs(&[&["O", "EVENT", "O"]]);
        let p = seqs(&[&["O", "O", "O"]]);
        let s = evaluate_f1(&g, &p, Task::Event).unwrap();
        assert_eq!(s.micro.f1, 0.0);
    }

    #[test]
    fn entity_task_merges_b_and_i() {
        // B/I confusion still counts as a positive hit at token level
        let g = seqs(&[&["B-ENT", "I-ENT", "O"]]);
        let p = seqs(&[&["I-ENT", "B-ENT", "O"]]);
        let s = evaluate_f1(&g, &p, Task::Entity).unwrap();
        assert_eq!(s.micro.f1, 1.0);
        // but exact-label scores notice
        assert!(s.per_label["B-ENT"].f1 < 1.0);
    }

    #[test]
    fn permutation_invariant_over_sequences() {
        let g = seqs(&[&["EVENT", "O"], &["O", "EVENT"], &["O", "O"]]);
        let p = seqs(&[&["EVENT", "O"], &["EVENT", "O"], &["O", "EVENT"]]);
        let a = evaluate_f1(&g, &p, Task::Event).unwrap();
        let g2 = vec![g[2].clone(), g[0].clone(), g[1].clone()];
        let p2 = vec![p[2].clone(), p[0].clone(), p[1].clone()];
        let b = evaluate_f1(&g2, &p2, Task::Event).unwrap();
        assert_eq!(a.micro, b.micro);
    }

    #[test]
    fn length_mismatch_is_an_error() {
        let g = seqs(&[&["O", "O"]]);
        let p = seqs(&[&["O"]]);
        assert!(matches!(
            evaluate_f1(&g, &p, Task::Event),
            Err(TaggerError::LengthMismatch { .. })
        ));
    }
}
