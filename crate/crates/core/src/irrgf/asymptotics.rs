use serde::Serialize;

use crate::error::{Error, Result};
use crate::series::FloatSeries;

/// Fitted `c_n ~ constant · n^subexp · gamma^n`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GrowthEstimate {
    pub gamma: f64,
    pub subexp: f64,
    pub constant: f64,
}

/// Minimum number of positive coefficients for an estimate.
const MIN_POSITIVE: usize = 100;

pub fn growth_estimate(series: &FloatSeries) -> Result<GrowthEstimate> {
    growth_estimate_coeffs(series.coeffs())
}

/// Estimates the growth of a positive coefficient sequence.
///
/// With `r_n = c_n / c_{n−1} = γ(1 + a/n + b/n² + …)`, the second difference
/// of `n²·r_n` is `2γ + O(n⁻³)`, which gives `γ̂` at `n = N`. The
/// subexponential exponent and the constant are the slope and the
/// exponentiated intercept of a least-squares line through
/// `(log n, log c_n − n log γ̂)` for `n ∈ [N/2, N]`.
pub fn growth_estimate_coeffs(c: &[f64]) -> Result<GrowthEstimate> {
    let positive = c.iter().filter(|&&x| x > 0.0 && x.is_finite()).count();
    if positive < MIN_POSITIVE {
        return Err(Error::InsufficientData(format!(
            "{positive} positive coefficients, need at least {MIN_POSITIVE}"
        )));
    }
    let big_n = c.len() - 1;
    let lo = big_n / 2;
    if let Some(n) = (lo - 3..=big_n).find(|&n| !(c[n] > 0.0 && c[n].is_finite())) {
        return Err(Error::InsufficientData(format!(
            "coefficient {n} in the fitting window is not positive and finite"
        )));
    }
    let r = |n: usize| c[n] / c[n - 1];
    let w = |n: usize| (n * n) as f64 * r(n);
    let gamma = (w(big_n) - 2.0 * w(big_n - 1) + w(big_n - 2)) / 2.0;
    if !(gamma > 0.0) {
        return Err(Error::InsufficientData(format!(
            "ratio extrapolation gave a nonpositive growth rate {gamma}"
        )));
    }
    let log_gamma = gamma.ln();
    let points: Vec<(f64, f64)> = (lo..=big_n)
        .map(|n| ((n as f64).ln(), c[n].ln() - n as f64 * log_gamma))
        .collect();
    let (slope, intercept, _) = least_squares(&points);
    Ok(GrowthEstimate {
        gamma,
        subexp: slope,
        constant: intercept.exp(),
    })
}

/// Slope, intercept and RMS residual of the least-squares line.
fn least_squares(points: &[(f64, f64)]) -> (f64, f64, f64) {
    let k = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / k;
    let my = points.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    let slope = if sxx == 0.0 { 0.0 } else { sxy / sxx };
    let intercept = my - slope * mx;
    let rss: f64 = points
        .iter()
        .map(|p| (p.1 - intercept - slope * p.0).powi(2))
        .sum();
    (slope, intercept, (rss / k).sqrt())
}

/// `P(m) ≈ b·m^−c`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PolymerZetaFit {
    pub b: f64,
    pub c: f64,
    /// RMS residual of the log-log fit.
    pub residual: f64,
}

const MIN_ZETA_POINTS: usize = 20;

/// Least-squares fit of `log P(m) = log b − c·log m` over the given
/// `(m, P(m))` points.
pub fn polymer_zeta_fit(points: &[(f64, f64)]) -> Result<PolymerZetaFit> {
    if points.len() < MIN_ZETA_POINTS {
        return Err(Error::InsufficientData(format!(
            "{} probability points, need at least {MIN_ZETA_POINTS}",
            points.len()
        )));
    }
    if let Some(&(m, p)) = points.iter().find(|&&(m, p)| !(p > 0.0 && m > 0.0)) {
        return Err(Error::FitFailed(format!(
            "cannot take logarithms at m = {m}, P = {p}"
        )));
    }
    let logs: Vec<(f64, f64)> = points.iter().map(|&(m, p)| (m.ln(), p.ln())).collect();
    let (slope, intercept, residual) = least_squares(&logs);
    Ok(PolymerZetaFit {
        b: intercept.exp(),
        c: -slope,
        residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genusgf::catalan_gf;

    #[test]
    fn catalan_growth() {
        let c = catalan_gf(400).to_f64();
        let est = growth_estimate(&c).unwrap();
        assert!((est.gamma - 4.0).abs() < 4.0 * 1e-3, "{est:?}");
        assert!((est.subexp + 1.5).abs() < 0.1, "{est:?}");
        // Constant 1/√π.
        assert!((est.constant - 1.0 / std::f64::consts::PI.sqrt()).abs() < 0.05, "{est:?}");
    }

    #[test]
    fn pure_exponential() {
        let c: Vec<f64> = (0..=200).map(|n| 3.0 * 2.5f64.powi(n) * (n as f64 + 1.0).powf(0.0)).collect();
        let est = growth_estimate_coeffs(&c).unwrap();
        assert!((est.gamma - 2.5).abs() < 1e-9);
        assert!(est.subexp.abs() < 1e-6);
        assert!((est.constant - 3.0).abs() < 1e-6);
    }

    #[test]
    fn too_short() {
        let c = vec![1.0; 50];
        assert!(matches!(growth_estimate_coeffs(&c), Err(Error::InsufficientData(_))));
    }

    #[test]
    fn zeta_fits() {
        let flat: Vec<(f64, f64)> = (1..=40).map(|m| (m as f64, 0.08)).collect();
        let fit = polymer_zeta_fit(&flat).unwrap();
        assert!(fit.c.abs() < 1e-12);
        assert!((fit.b - 0.08).abs() < 1e-12);
        let power: Vec<(f64, f64)> = (1..=40).map(|m| (m as f64, (m as f64).powf(-1.5))).collect();
        let fit = polymer_zeta_fit(&power).unwrap();
        assert!((fit.c - 1.5).abs() < 0.01);
        assert!(fit.residual < 1e-12);
    }

    #[test]
    fn zeta_rejects_bad_points() {
        let mut pts: Vec<(f64, f64)> = (1..=30).map(|m| (m as f64, 0.1)).collect();
        pts[5].1 = 0.0;
        assert!(matches!(polymer_zeta_fit(&pts), Err(Error::FitFailed(_))));
        assert!(matches!(polymer_zeta_fit(&pts[..10]), Err(Error::InsufficientData(_))));
    }
}
