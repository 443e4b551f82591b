//! Cohen's kappa for two aligned categorical label sequences.

use std::collections::BTreeMap;

use super::MetricsError;

/// κ = (p_o − p_e) / (1 − p_e), with p_e from the per-annotator marginal
/// distributions. Returns `Undefined` when p_e = 1 (both annotators
/// constant and identical), where chance correction cannot be computed.
pub fn cohen_kappa<S: AsRef<str>>(labels_a: &[S], labels_b: &[S]) -> Result<f64, MetricsError> {
    if labels_a.len() != labels_b.len() {
        return Err(MetricsError::LengthMismatch {
            left: labels_a.len(),
            right: labels_b.len(),
        });
    }
    if labels_a.is_empty() {
        return Err(MetricsError::Empty);
    }

    let n = labels_a.len() as f64;
    let mut agree = 0usize;
    let mut marg_a: BTreeMap<&str, usize> = BTreeMap::new();
    let mut marg_b: BTreeMap<&str, usize> = BTreeMap::new();
    for (a, b) in labels_a.iter().zip(labels_b) {
        let (a, b) = (a.as_ref(), b.as_ref());
        if a == b {
            agree += 1;
        }
        *marg_a.entry(a).or_default() += 1;
        *marg_b.entry(b).or_default() += 1;
    }

    let p_o = agree as f64 / n;
    let mut p_e = 0.0;
    for (label, ca) in &marg_a {
        if let Some(cb) = marg_b.get(label) {
            p_e += (*ca as f64 / n) * (*cb as f64 / n);
        }
    }

    if (1.0 - p_e).abs() < 1e-12 {
        return Err(MetricsError::UndefinedKappa);
    }
    Ok((p_o - p_e) / (1.0 - p_e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[&str]) -> Vec<String> {
        v.iter().map(|x| x.to_string()).collect()
    }

    #[test]
    fn perfect_agreement_is_one() {
        let a = s(&["x", "y", "x", "z"]);
        assert!((cohen_kappa(&a, &a).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn hand_computed_binary_case() {
        // p_o = 0.8, p_e = 0.52, kappa = 0.28 / 0.48
        let a = s(&["1", "1", "0", "0", "1", "0", "0", "0", "1", "0"]);
        let b = s(&["1", "0", "0", "0", "1", "0", "0", "1", "1", "0"]);
        let k = cohen_kappa(&a, &b).unwrap();
        assert!((k - 0.28 / 0.48).abs() < 1e-12, "got {k}");
        assert!((k - 0.5833333333333334).abs() < 1e-10);
    }

    #[test]
    fn degenerate_marginals_are_undefined() {
        let a = s(&["O", "O", "O"]);
        assert!(matches!(
            cohen_kappa(&a, &a),
            Err(MetricsError::UndefinedKappa)
        ));
    }

    #[test]
    fn invariant_under_label_renaming() {
        let a = s(&["x", "y", "x", "x", "y", "x"]);
        let b = s(&["x", "x", "x", "y", "y", "x"]);
        let ra = s(&["1", "2", "1", "1", "2", "1"]);
        let rb = s(&["1", "1", "1", "2", "2", "1"]);
        assert!((cohen_kappa(&a, &b).unwrap() - cohen_kappa(&ra, &rb).unwrap()).abs() < 1e-15);
    }

    #[test]
    fn length_mismatch_is_an_error() {
        let a = s(&["x"]);
        let b = s(&["x", "y"]);
        assert!(matches!(
            cohen_kappa(&a, &b),
            Err(MetricsError::LengthMismatch { .. })
        ));
    }
}
