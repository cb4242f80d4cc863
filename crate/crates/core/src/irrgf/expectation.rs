use serde::Serialize;

use crate::error::{Error, Result};
use crate::series::FloatSeries;
use crate::table::interval_count;

use super::{eta_pair, LoopModelSeries};

/// `d*(m)/d(m)`, with `0` where `d(m) = 0`.
pub fn probability_irreducible(dstar: &FloatSeries, d: &FloatSeries, m: usize) -> Result<f64> {
    let limit = dstar.order().min(d.order());
    if m > limit {
        return Err(Error::OutOfRange { index: m, limit });
    }
    let denom = d.coeff(m);
    if denom == 0.0 {
        return Ok(0.0);
    }
    let p = dstar.coeff(m) / denom;
    debug_assert!((-1e-12..=1.0 + 1e-12).contains(&p), "P({m}) = {p}");
    Ok(p.clamp(0.0, 1.0))
}

/// `P(1) ..= P(max_m)`, stored at index `m − 1`.
pub fn probability_table(dstar: &FloatSeries, d: &FloatSeries, max_m: usize) -> Result<Vec<f64>> {
    (1..=max_m)
        .map(|m| probability_irreducible(dstar, d, m))
        .collect()
}

/// `P_g(m) = d*_{g,η}(m)/d_{g,η}(m)` for `m = 1..=max_m`.
pub fn genus_probabilities(g: u32, eta: f64, max_m: usize) -> Result<Vec<f64>> {
    let (d, dstar) = eta_pair(g, eta, max_m)?;
    probability_table(&dstar, &d, max_m)
}

/// `f*_0(m)/f_0(m)` for `m = 1..=max_m`.
pub fn loop_probabilities(series: &LoopModelSeries, max_m: usize) -> Result<Vec<f64>> {
    probability_table(&series.fstar, &series.f_full, max_m)
}

#[derive(Clone, Debug, Serialize)]
pub struct CandidateExpectation {
    pub g: u32,
    pub n: usize,
    /// `P(m)` at index `m − 1`.
    pub prob_table: Vec<f64>,
    /// `E(n) = Σ_m (n − m + 1)·P(m)`.
    pub expected: f64,
    pub omega: u64,
    /// `E(n)/Ω(n)`.
    pub normalized: f64,
}

/// Expectation from a probability table covering at least `1..=n`.
pub fn expected_from_probabilities(g: u32, n: usize, probs: &[f64]) -> Result<CandidateExpectation> {
    if n > probs.len() {
        return Err(Error::OutOfRange {
            index: n,
            limit: probs.len(),
        });
    }
    let expected: f64 = (1..=n).map(|m| (n - m + 1) as f64 * probs[m - 1]).sum();
    let omega = interval_count(n);
    Ok(CandidateExpectation {
        g,
        n,
        prob_table: probs[..n].to_vec(),
        expected,
        omega,
        normalized: if omega == 0 { 0.0 } else { expected / omega as f64 },
    })
}

/// Expected number of candidates over a sequence of length `n` for genus
/// `g`, with structures weighted by `η^arcs`.
pub fn expected_candidates(g: u32, n: usize, eta: f64) -> Result<CandidateExpectation> {
    let probs = genus_probabilities(g, eta, n)?;
    expected_from_probabilities(g, n, &probs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genusgf::DEFAULT_ETA;

    #[test]
    fn edge_probabilities() {
        let p = genus_probabilities(0, 1.0, 10).unwrap();
        assert_eq!(p[0], 1.0);
        assert_eq!(p[1], 0.0);
        let p1 = genus_probabilities(1, DEFAULT_ETA, 10).unwrap();
        assert_eq!(p1[0], 0.0);
        assert!(p1.iter().all(|&x| (0.0..=1.0).contains(&x)));
    }

    #[test]
    fn out_of_range() {
        let (d, ds) = eta_pair(0, 1.0, 5).unwrap();
        assert!(matches!(
            probability_irreducible(&ds, &d, 6),
            Err(Error::OutOfRange { index: 6, limit: 5 })
        ));
    }

    #[test]
    fn expectation_bookkeeping() {
        let e = expected_from_probabilities(0, 10, &[1.0; 10]).unwrap();
        assert_eq!(e.omega, 55);
        assert_eq!(e.expected, 55.0);
        assert_eq!(e.normalized, 1.0);
        let e = expected_candidates(0, 50, DEFAULT_ETA).unwrap();
        assert!(e.normalized > 0.0 && e.normalized < 1.0);
    }
}
