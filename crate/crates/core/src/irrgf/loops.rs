use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fold::LoopScores;
use crate::series::{Coeff, FloatSeries};

/// Probability that two random bases can pair: 6 of the 16 ordered pairs.
pub const PAIR_PROBABILITY: f64 = 6.0 / 16.0;

/// Multiplicative loop weights.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LoopWeights {
    pub hairpin: f64,
    pub interior: f64,
    pub multi: f64,
}

/// How loop weights are derived.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightConvention {
    /// `e^0.5`, `e^1`, `e^−5`.
    #[default]
    Equation,
    /// `e^score` for the default loop scores, i.e. a hairpin weight of `e^−0.5`.
    Scores,
}

impl LoopWeights {
    pub fn equation() -> Self {
        LoopWeights {
            hairpin: 0.5f64.exp(),
            interior: 1f64.exp(),
            multi: (-5f64).exp(),
        }
    }

    pub fn from_scores(scores: &LoopScores) -> Self {
        LoopWeights {
            hairpin: scores.hairpin.exp(),
            interior: scores.interior.exp(),
            multi: scores.multi.exp(),
        }
    }

    pub fn for_convention(c: WeightConvention) -> Self {
        match c {
            WeightConvention::Equation => Self::equation(),
            WeightConvention::Scores => Self::from_scores(&LoopScores::default()),
        }
    }
}

impl Default for LoopWeights {
    fn default() -> Self {
        Self::equation()
    }
}

/// Weighted arc-covered secondary structures `F*_0`, the solution of
///
/// ```text
/// F* = p·w_h·z³/(1−z) + p·w_i·z²/(1−z)²·F* + p·w_m·z²·(A²/(1−A))/(1−z),   A = F*/(1−z)
/// ```
///
/// Every right-hand term carries a factor `z²`, so `[zⁿ]F*` only needs
/// coefficients up to `n − 2` and is computed directly, in `O(N²)` overall.
pub fn loop_irreducible_gf(weights: &LoopWeights, pair_prob: f64, order: usize) -> Result<FloatSeries> {
    if [weights.hairpin, weights.interior, weights.multi, pair_prob]
        .iter()
        .any(|w| !(*w > 0.0 && w.is_finite()))
    {
        return Err(Error::ContractViolation(format!(
            "loop weights and pair probability must be positive: {weights:?}, p = {pair_prob}"
        )));
    }
    let (ph, pi, pm) = (
        pair_prob * weights.hairpin,
        pair_prob * weights.interior,
        pair_prob * weights.multi,
    );
    let mut f = vec![0.0; order + 1];
    // a = F*/(1−z), h = 1/(1−a), m = h − 1 − a = a²/(1−a)
    let mut a = vec![0.0; order + 1];
    let mut h = vec![0.0; order + 1];
    let mut m = vec![0.0; order + 1];
    h[0] = 1.0;
    // Running sums over k ≤ n−2 of f_k, k·f_k and m_k.
    let (mut sum_f, mut sum_kf, mut sum_m) = (0.0, 0.0, 0.0);
    for n in 0..=order {
        if n >= 2 {
            let k = n - 2;
            sum_f += f[k];
            sum_kf += k as f64 * f[k];
            sum_m += m[k];
            let hairpin = if n >= 3 { ph } else { 0.0 };
            // Σ_{k≤n−2} (n−1−k)·f_k
            let interior = pi * ((n as f64 - 1.0) * sum_f - sum_kf);
            let value = hairpin + interior + pm * sum_m;
            if !value.is_finite() || value < 0.0 {
                return Err(Error::FixedPointFailure { order: n });
            }
            f[n] = value;
        }
        a[n] = if n == 0 { f[0] } else { a[n - 1] + f[n] };
        if n >= 1 {
            h[n] = f64::dot((1..=n).map(|k| (&a[k], &h[n - k])));
        }
        m[n] = h[n] - a[n] - if n == 0 { 1.0 } else { 0.0 };
    }
    Ok(FloatSeries::from_coeffs(f, order))
}

/// All weighted secondary structures, `F_0 = 1/(1−z) · 1/(1 − F*_0/(1−z))`.
pub fn loop_full_gf(fstar: &FloatSeries, order: usize) -> Result<FloatSeries> {
    if fstar.coeff(0) != 0.0 {
        return Err(Error::ContractViolation(
            "F*_0 must have zero constant term".into(),
        ));
    }
    let order = order.min(fstar.order());
    let fstar = fstar.truncate(order);
    let geo = FloatSeries::geometric(order);
    let a = fstar.mul(&geo);
    let h = FloatSeries::one(order).sub(&a).reciprocal()?;
    Ok(h.mul(&geo))
}

#[derive(Clone, Debug, Serialize)]
pub struct LoopModelSeries {
    pub weights: LoopWeights,
    pub pair_prob: f64,
    pub fstar: FloatSeries,
    pub f_full: FloatSeries,
}

impl LoopModelSeries {
    pub fn compute(weights: LoopWeights, pair_prob: f64, order: usize) -> Result<Self> {
        let fstar = loop_irreducible_gf(&weights, pair_prob, order)?;
        let f_full = loop_full_gf(&fstar, order)?;
        Ok(LoopModelSeries {
            weights,
            pair_prob,
            fstar,
            f_full,
        })
    }

    /// `f*_0(n)/f_0(n)`.
    pub fn ratio(&self, n: usize) -> f64 {
        self.fstar.coeff(n) / self.f_full.coeff(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Direct fixed-point iteration of the functional equation with series
    /// arithmetic; independent of the order-by-order solver.
    fn iterate(weights: &LoopWeights, p: f64, order: usize) -> FloatSeries {
        let z2 = FloatSeries::monomial(1.0, 2, order);
        let geo = FloatSeries::geometric(order);
        let hair = FloatSeries::monomial(p * weights.hairpin, 3, order).mul(&geo);
        let int_factor = z2.mul(&geo).mul(&geo).scale(&(p * weights.interior));
        let mut f = FloatSeries::zero(order);
        for _ in 0..=order {
            let a = f.mul(&geo);
            let multi = a
                .mul(&a)
                .mul(&FloatSeries::one(order).sub(&a).reciprocal().unwrap())
                .mul(&geo)
                .mul(&z2)
                .scale(&(p * weights.multi));
            f = hair.add(&int_factor.mul(&f)).add(&multi);
        }
        f
    }

    #[test]
    fn low_order_coefficients() {
        let w = LoopWeights::equation();
        let f = loop_irreducible_gf(&w, PAIR_PROBABILITY, 10).unwrap();
        assert_eq!(f.coeff(0), 0.0);
        assert_eq!(f.coeff(1), 0.0);
        assert_eq!(f.coeff(2), 0.0);
        let h = PAIR_PROBABILITY * 0.5f64.exp();
        assert!((f.coeff(3) - h).abs() < 1e-15);
        assert!((f.coeff(3) - 0.6183).abs() < 1e-4);
        assert!((f.coeff(4) - h).abs() < 1e-15);
        let full = loop_full_gf(&f, 10).unwrap();
        assert_eq!(full.coeff(0), 1.0);
        assert_eq!(full.coeff(1), 1.0);
        assert_eq!(full.coeff(2), 1.0);
        assert!((full.coeff(3) - (1.0 + h)).abs() < 1e-15);
    }

    #[test]
    fn solver_matches_fixed_point_iteration() {
        for c in [WeightConvention::Equation, WeightConvention::Scores] {
            let w = LoopWeights::for_convention(c);
            let fast = loop_irreducible_gf(&w, PAIR_PROBABILITY, 40).unwrap();
            let slow = iterate(&w, PAIR_PROBABILITY, 40);
            for n in 0..=40 {
                let (x, y) = (fast.coeff(n), slow.coeff(n));
                assert!((x - y).abs() <= 1e-12 * y.abs().max(1e-300), "n={n}: {x} vs {y}");
            }
        }
    }

    #[test]
    fn irreducible_part_is_bounded_by_total() {
        let s = LoopModelSeries::compute(LoopWeights::equation(), PAIR_PROBABILITY, 200).unwrap();
        for n in 3..=200 {
            assert!(s.fstar.coeff(n) >= 0.0);
            assert!(s.fstar.coeff(n) <= s.f_full.coeff(n));
        }
    }

    #[test]
    fn rejects_nonpositive_weights() {
        let w = LoopWeights {
            hairpin: 0.0,
            ..LoopWeights::equation()
        };
        assert!(loop_irreducible_gf(&w, PAIR_PROBABILITY, 5).is_err());
        let bad = FloatSeries::from_coeffs(vec![1.0], 3);
        assert!(loop_full_gf(&bad, 3).is_err());
    }
}
