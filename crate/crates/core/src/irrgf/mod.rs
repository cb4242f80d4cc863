//! Irreducible structures: series, asymptotics and the expected size of the
//! candidate set.
//!
//! Irreducible `g`-structures follow from the structure series through
//!
//! ```text
//! D*_0 = 1 − 1/D_0
//! D*_g = −((D*_0 − 1)·D_g + Σ_{g1=1}^{g−1} D*_{g1}·D_{g−g1}) / D_0
//! ```
//!
//! which holds over any coefficient ring, so the same code yields exact
//! counts, arc-marked counts and `η`-weighted series.

mod asymptotics;
mod expectation;
mod loops;

use num_bigint::BigInt;

pub use asymptotics::{growth_estimate, growth_estimate_coeffs, polymer_zeta_fit, GrowthEstimate, PolymerZetaFit};
pub use expectation::{
    expected_candidates, expected_from_probabilities, genus_probabilities, loop_probabilities,
    probability_irreducible, probability_table, CandidateExpectation,
};
pub use loops::{
    loop_full_gf, loop_irreducible_gf, LoopModelSeries, LoopWeights, WeightConvention, PAIR_PROBABILITY,
};

use crate::error::{Error, Result};
use crate::genusgf::{check_genus, count_table, ensure_integral, structure_series_at, CountTable};
use crate::series::{Coeff, ExactSeries, FloatSeries, Poly, Rational, TruncatedSeries};

/// `D*_0 ..= D*_G` from `D_0 ..= D_G`.
pub fn irreducible_family<R: Coeff>(ds: &[TruncatedSeries<R>]) -> Result<Vec<TruncatedSeries<R>>> {
    let Some(d0) = ds.first() else {
        return Ok(Vec::new());
    };
    let d0_inv = d0.reciprocal()?;
    let order = d0.order();
    // D*_0 − 1 = −1/D_0
    let shifted = d0_inv.neg();
    let mut out = vec![TruncatedSeries::one(order).sub(&d0_inv)];
    for g in 1..ds.len() {
        let mut acc = shifted.mul(&ds[g]);
        for g1 in 1..g {
            acc = acc.add(&out[g1].mul(&ds[g - g1]));
        }
        out.push(acc.neg().mul(&d0_inv));
    }
    Ok(out)
}

fn structure_family<R: Coeff>(g: u32, t: &R, order: usize) -> Result<Vec<TruncatedSeries<R>>> {
    check_genus(g)?;
    (0..=g).map(|h| structure_series_at(h, t, order)).collect()
}

/// `d*_g(n)`: irreducible genus-`g` structures over `n` vertices.
pub fn irreducible_gf(g: u32, order: usize) -> Result<ExactSeries> {
    let ds = structure_family(g, &Rational::one(), order)?;
    let dstar = irreducible_family(&ds)?.pop().expect("nonempty family");
    ensure_integral(&dstar, "irreducible series")?;
    Ok(dstar)
}

/// Compositions of `total` into `parts` positive summands, in
/// lexicographic order.
pub fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    fn rec(left: usize, parts: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 0 {
            if left == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        for first in 1..=left.saturating_sub(parts - 1) {
            prefix.push(first);
            rec(left - first, parts - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(total, parts, &mut Vec::new(), &mut out);
    out
}

/// `d*_g(n)` through the closed composition formula
///
/// ```text
/// D*_G = Σ_{k=1}^{G} (−1)^(k+1) D_0^−(k+1) Σ_{σ ∈ [G]_k} Π_i D_{σ_i}
/// ```
///
/// with `[G]_k` the compositions of `G` into `k` parts. Genus 0 falls back
/// to `1 − 1/D_0`.
pub fn irreducible_gf_composition(g: u32, order: usize) -> Result<ExactSeries> {
    let ds = structure_family(g, &Rational::one(), order)?;
    let d0_inv = ds[0].reciprocal()?;
    if g == 0 {
        return Ok(ExactSeries::one(order).sub(&d0_inv));
    }
    let big_g = g as usize;
    let mut inv_pow = vec![ExactSeries::one(order), d0_inv.clone()];
    for k in 2..=big_g + 1 {
        inv_pow.push(inv_pow[k - 1].mul(&d0_inv));
    }
    let mut total = ExactSeries::zero(order);
    for k in 1..=big_g {
        let mut inner = ExactSeries::zero(order);
        for sigma in compositions(big_g, k) {
            let prod = sigma
                .iter()
                .fold(ExactSeries::one(order), |acc, &s| acc.mul(&ds[s]));
            inner = inner.add(&prod);
        }
        let term = inner.mul(&inv_pow[k + 1]);
        total = if k % 2 == 1 { total.add(&term) } else { total.sub(&term) };
    }
    Ok(total)
}

/// `e*_g(n, ℓ)`: irreducible genus-`g` structures with `ℓ` arcs.
pub fn irreducible_arc_filtered(g: u32, order: usize) -> Result<CountTable> {
    let ds = structure_family(g, &Poly::var(), order)?;
    let estar = irreducible_family(&ds)?.pop().expect("nonempty family");
    count_table(&estar, "irreducible arc-filtered series")
}

/// `D*_{g,η}(z) = E*_g(z, η)`.
pub fn irreducible_eta(g: u32, eta: f64, order: usize) -> Result<FloatSeries> {
    if !(eta > 0.0) {
        return Err(Error::ContractViolation(format!(
            "arc weight must be positive, got {eta}"
        )));
    }
    let ds = structure_family(g, &eta, order)?;
    Ok(irreducible_family(&ds)?.pop().expect("nonempty family"))
}

/// `D_{g,η}` and `D*_{g,η}` together.
pub fn eta_pair(g: u32, eta: f64, order: usize) -> Result<(FloatSeries, FloatSeries)> {
    if !(eta > 0.0) {
        return Err(Error::ContractViolation(format!(
            "arc weight must be positive, got {eta}"
        )));
    }
    let ds = structure_family(g, &eta, order)?;
    let dstar = irreducible_family(&ds)?.pop().expect("nonempty family");
    Ok((ds[g as usize].clone(), dstar))
}

#[derive(Clone, Debug)]
pub struct IrreducibleSeriesSet {
    pub g: u32,
    pub order: usize,
    pub dstar_series: ExactSeries,
    pub estar_table: CountTable,
    pub eta: Option<f64>,
    pub dstar_eta: Option<FloatSeries>,
}

impl IrreducibleSeriesSet {
    pub fn compute(g: u32, order: usize, eta: Option<f64>) -> Result<Self> {
        Ok(IrreducibleSeriesSet {
            g,
            order,
            dstar_series: irreducible_gf(g, order)?,
            estar_table: irreducible_arc_filtered(g, order)?,
            eta,
            dstar_eta: eta.map(|e| irreducible_eta(g, e, order)).transpose()?,
        })
    }

    /// Marginal of the arc table, as integers.
    pub fn marginal(&self) -> Vec<BigInt> {
        self.estar_table.iter().map(|row| row.iter().sum()).collect()
    }
}
