//! Jensen-Shannon divergence between discrete distributions, base 2.
//!
//! JSD(P, Q) = H(M) − ½H(P) − ½H(Q) with M = ½(P + Q). Base-2 entropy
//! bounds the value in [0, 1]; zero-probability terms contribute nothing
//! (0·log 0 = 0). Distributions are keyed maps; the support union is the
//! shared vocabulary.

use std::collections::BTreeMap;

use super::MetricsError;

pub const NORMALIZATION_TOLERANCE: f64 = 1e-9;

/// A probability distribution over string-keyed types.
pub type Distribution = BTreeMap<String, f64>;

/// Build a normalized distribution from raw counts or weights.
pub fn normalize<K: Into<String>, I: IntoIterator<Item = (K, f64)>>(
    weights: I,
) -> Result<Distribution, MetricsError> {
    let mut dist: Distribution = BTreeMap::new();
    for (k, w) in weights {
        if w < 0.0 || !w.is_finite() {
            return Err(MetricsError::NotNormalized {
                sum: w,
                detail: "negative or non-finite weight".to_string(),
            });
        }
        if w > 0.0 {
            *dist.entry(k.into()).or_insert(0.0) += w;
        }
    }
    let total: f64 = dist.values().sum();
    if total <= 0.0 {
        return Err(MetricsError::NotNormalized {
            sum: total,
            detail: "all weights are zero".to_string(),
        });
    }
    for v in dist.values_mut() {
        *v /= total;
    }
    Ok(dist)
}

fn check_normalized(dist: &Distribution) -> Result<(), MetricsError> {
    let sum: f64 = dist.values().sum();
    if (sum - 1.0).abs() > NORMALIZATION_TOLERANCE {
        return Err(MetricsError::NotNormalized {
            sum,
            detail: format!("sum deviates from 1 by {:e}", (sum - 1.0).abs()),
        });
    }
    if dist.values().any(|&v| v < 0.0 || !v.is_finite()) {
        return Err(MetricsError::NotNormalized {
            sum,
            detail: "negative or non-finite probability".to_string(),
        });
    }
    Ok(())
}

#[inline]
fn xlog2x(x: f64) -> f64 {
    if x > 0.0 {
        x * x.log2()
    } else {
        0.0
    }
}

/// Shannon entropy in bits.
pub fn entropy_bits(dist: &Distribution) -> f64 {
    -dist.values().map(|&v| xlog2x(v)).sum::<f64>()
}

/// Jensen-Shannon divergence in bits; symmetric, zero iff P = Q, one iff
/// the supports are disjoint.
pub fn jsd(p: &Distribution, q: &Distribution) -> Result<f64, MetricsError> {
    check_normalized(p)?;
    check_normalized(q)?;

    let mut keys: std::collections::BTreeSet<&String> = p.keys().collect();
    keys.extend(q.keys());
    let mut value = 0.0;
    for key in keys {
        let pi = p.get(key).copied().unwrap_or(0.0);
        let qi = q.get(key).copied().unwrap_or(0.0);
        let mi = 0.5 * (pi + qi);
        value += -xlog2x(mi) + 0.5 * xlog2x(pi) + 0.5 * xlog2x(qi);
    }
    // clamp tiny negative rounding residue
    Ok(value.max(0.0))
}
