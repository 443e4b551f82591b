//! One-way ANOVA between two groups of scores.
//!
//! Returns the raw F statistic and p-value without interpretation. Zero
//! within-group variance makes the statistic undefined and is reported as
//! an explicit degenerate outcome rather than an error.

use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, FisherSnedecor};

use super::TaggerError;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum AnovaOutcome {
    Computed { f_statistic: f64, p_value: f64 },
    Degenerate,
}

pub fn anova_significance(runs_a: &[f64], runs_b: &[f64]) -> Result<AnovaOutcome, TaggerError> {
    if runs_a.len() < 2 || runs_b.len() < 2 {
        return Err(TaggerError::InvalidConfig(format!(
            "each group needs at least 2 values, got {} and {}",
            runs_a.len(),
            runs_b.len()
        )));
    }

    let mean = |xs: &[f64]| xs.iter().sum::<f64>() / xs.len() as f64;
    let (ma, mb) = (mean(runs_a), mean(runs_b));
    let n = (runs_a.len() + runs_b.len()) as f64;
    let grand = (runs_a.iter().sum::<f64>() + runs_b.iter().sum::<f64>()) / n;

    let ss_between =
        runs_a.len() as f64 * (ma - grand).powi(2) + runs_b.len() as f64 * (mb - grand).powi(2);
    let ss_within: f64 = runs_a.iter().map(|x| (x - ma).powi(2)).sum::<f64>()
        + runs_b.iter().map(|x| (x - mb).powi(2)).sum::<f64>();

    let df_between = 1.0;
    let df_within = n - 2.0;

    let scale = runs_a
        .iter()
        .chain(runs_b)
        .map(|x| x * x)
        .sum::<f64>()
        .max(1.0);
    if ss_within <= f64::EPSILON * scale {
        return Ok(AnovaOutcome::Degenerate);
    }

    let f = (ss_between / df_between) / (ss_within / df_within);
    let dist = FisherSnedecor::new(df_between, df_within)
        .map_err(|e| TaggerError::InvalidConfig(e.to_string()))?;
    let p = 1.0 - dist.cdf(f);
    Ok(AnovaOutcome::Computed {
        f_statistic: f,
        p_value: p,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    // Frozen against an independent statistics oracle (scipy.stats):
    // f_oneway([0.896,0.782,0.808],[0.824,0.766,0.792])
    //   -> F = 0.816918429003023, p = 0.4171946817722042
    const ORACLE_F: f64 = 0.816918429003023;
    const ORACLE_P: f64 = 0.4171946817722042;

    #[test]
    fn matches_statistics_oracle_on_score_triples() {
        let a = [0.896, 0.782, 0.808];
        let b = [0.824, 0.766, 0.792];
        match anova_significance(&a, &b).unwrap() {
            AnovaOutcome::Computed { f_statistic, p_value } => {
                assert!((f_statistic - ORACLE_F).abs() < 1e-12, "F = {f_statistic}");
                assert!((p_value - ORACLE_P).abs() < 1e-9, "p = {p_value}");
            }
            other => panic!("expected computed outcome, got {other:?}"),
        }
    }

    #[test]
    fn identical_groups_give_f_zero_p_one() {
        let g = [0.5, 0.6, 0.7];
        match anova_significance(&g, &g).unwrap() {
            AnovaOutcome::Computed { f_statistic, p_value } => {
                assert_eq!(f_statistic, 0.0);
                assert_eq!(p_value, 1.0);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn zero_within_group_variance_is_degenerate() {
        let a = [1.0, 1.0, 1.0];
        let b = [0.0, 0.0, 0.0];
        assert_eq!(anova_significance(&a, &b).unwrap(), AnovaOutcome::Degenerate);
    }

    #[test]
    fn further_frozen_tail_values() {
        // 1 - F_cdf(2.5; 1, 4) = 0.18900365845517542 per the oracle
        let dist = FisherSnedecor::new(1.0, 4.0).unwrap();
        assert!((1.0 - dist.cdf(2.5) - 0.18900365845517542).abs() < 1e-9);
        // 1 - F_cdf(1.0; 2, 6) = 0.421875
        let dist = FisherSnedecor::new(2.0, 6.0).unwrap();
        assert!((1.0 - dist.cdf(1.0) - 0.421875).abs() < 1e-9);
        // 1 - F_cdf(5.25; 3, 12) = 0.015199673587305673
        let dist = FisherSnedecor::new(3.0, 12.0).unwrap();
        assert!((1.0 - dist.cdf(5.25) - 0.015199673587305673).abs() < 1e-9);
    }

    #[test]
    fn groups_below_two_values_are_rejected() {
        assert!(anova_significance(&[1.0], &[1.0, 2.0]).is_err());
    }
}
