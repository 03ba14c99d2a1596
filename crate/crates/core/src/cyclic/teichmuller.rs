//! Lyapunov spectrum of the Teichmüller flow from the non-negative
//! Kontsevich–Zorich exponents.

use crate::error::{Error, Result};

/// Expands `1 = λ₁ ≥ … ≥ λ_g ≥ 0` on a stratum with `sigma` distinct zeros into
/// the full Teichmüller-flow spectrum, sorted descending.
///
/// The positive half is `1 + λ_i` for all `i`, `sigma - 1` ones, and `1 - λ_i`
/// for `i ≥ 2`; a single central zero follows, then the negatives. The result
/// has `2(2g + σ − 2) + 1` entries.
pub fn teichmuller_spectrum(kz: &[f64], sigma: usize) -> Result<Vec<f64>> {
    if kz.is_empty() {
        return Err(Error::InvalidExponents("at least λ₁ is required".into()));
    }
    if sigma == 0 {
        return Err(Error::InvalidExponents("sigma must be at least 1".into()));
    }
    if kz[0] != 1.0 {
        return Err(Error::InvalidExponents(format!("λ₁ must equal 1, got {}", kz[0])));
    }
    if let Some(w) = kz.windows(2).find(|w| w[1] > w[0]) {
        return Err(Error::InvalidExponents(format!(
            "exponents must be non-increasing ({} < {})",
            w[0], w[1]
        )));
    }
    let last = kz[kz.len() - 1];
    if last.is_nan() || last < 0.0 {
        return Err(Error::InvalidExponents(format!("λ_g must be non-negative, got {last}")));
    }

    let mut positive: Vec<f64> = kz.iter().map(|l| 1.0 + l).collect();
    positive.extend(std::iter::repeat_n(1.0, sigma - 1));
    positive.extend(kz[1..].iter().rev().map(|l| 1.0 - l));

    let mut out = positive.clone();
    out.push(0.0);
    out.extend(positive.iter().rev().map(|v| -v));
    out.sort_by(|a, b| b.total_cmp(a));
    Ok(out)
}
