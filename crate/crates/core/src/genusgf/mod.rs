//! Generating functions of genus-`g` matchings and structures.
//!
//! `C_g(z)` counts genus-`g` matchings by arcs, `D_g(z)` genus-`g`
//! structures by vertices and `E_g(z, t)` additionally marks arcs by `t`:
//!
//! ```text
//! E_g(z, t) = 1/(tz² − z + 1) · C_g(tz² / (tz² − z + 1)²),   D_g(z) = E_g(z, 1)
//! C_0(u)    = 2 / (1 + √(1 − 4u))
//! C_g(u)    = P_g(u) / (1 − 4u)^(3g − 1/2)                   (g ≥ 1)
//! ```
//!
//! `P_g` is fitted exactly against brute-force matching counts.
//!
//! Writing `q = tz² − z + 1` and `Δ = q² − 4tz² = q²(1 − 4u)`, the
//! substitution collapses to polynomial arithmetic plus one fractional
//! power, so no series composition is needed on the main path:
//!
//! ```text
//! E_0 = 2 / (q + √Δ)
//! E_g = Σ_k p_k (tz²)^k q^(6g − 2 − 2k) · Δ^−(3g − 1/2)
//! ```

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::Rational64;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::oracle::matching_counts;
use crate::series::{is_integral, Coeff, ExactSeries, FloatSeries, Poly, Rational, TruncatedSeries};

/// Largest supported genus.
pub const MAX_GENUS: u32 = 2;

/// Arc weight modelling a random sequence: `6e/16`.
pub const DEFAULT_ETA: f64 = 6.0 * std::f64::consts::E / 16.0;

/// Counts indexed `[n][ℓ]`: vertex count, then arc count.
pub type CountTable = Vec<Vec<BigInt>>;

/// Exponential growth rate of `d_g(n)`, `(3 + √5)/2`.
pub fn gamma() -> f64 {
    (3.0 + 5f64.sqrt()) / 2.0
}

/// Exponential growth rate of `d_{g,η}(n)`: the reciprocal of the smallest
/// positive root of `ηz²/(ηz² − z + 1)² = 1/4`.
pub fn gamma_eta(eta: f64) -> f64 {
    let s = eta.sqrt();
    let root = ((1.0 + 2.0 * s) - (1.0 + 4.0 * s).sqrt()) / (2.0 * eta);
    1.0 / root
}

pub(crate) fn check_genus(g: u32) -> Result<()> {
    if g > MAX_GENUS {
        Err(Error::NotImplementedGenus(g))
    } else {
        Ok(())
    }
}

/// Catalan numbers, `C_0(z) = (1 − √(1 − 4z))/(2z)`.
pub fn catalan_gf(order: usize) -> ExactSeries {
    let one_minus_4z = ExactSeries::from_i64s(&[1, -4], order);
    let root = one_minus_4z.sqrt().expect("constant term 1");
    ExactSeries::one(order)
        .add(&root)
        .reciprocal()
        .expect("constant term 2")
        .scale(&Rational::from_i64(2))
}

/// `c_g(n)`: genus-`g` matchings with `n` arcs.
pub fn matching_gf(g: u32, order: usize) -> Result<ExactSeries> {
    check_genus(g)?;
    if g == 0 {
        return Ok(catalan_gf(order));
    }
    let p = p_polynomial(g)?;
    let base = ExactSeries::from_i64s(&[1, -4], order).pow_fractional(singular_exponent(g))?;
    let numer = ExactSeries::from_coeffs(p.coeffs().to_vec(), order);
    Ok(numer.mul(&base))
}

/// `−(3g − 1/2)`.
fn singular_exponent(g: u32) -> Rational64 {
    Rational64::new(-(6 * g as i64 - 1), 2)
}

/// Fits `P_g(u)` so that `P_g(u)/(1 − 4u)^(3g−1/2)` reproduces `counts[n] = c_g(n)`.
///
/// The unknowns are the coefficients of `u^2g ..= u^(3g−1)`; they are
/// solved from `c_g(2g ..= 3g−1)` by forward substitution and every other
/// supplied count is then checked exactly.
pub fn derive_p_polynomial(g: u32, counts: &[u64]) -> Result<Poly<Rational>> {
    if g == 0 {
        return Err(Error::FitFailed(
            "genus 0 has no polynomial numerator".into(),
        ));
    }
    let (lo, hi) = (2 * g as usize, 3 * g as usize - 1);
    if counts.len() <= hi {
        return Err(Error::FitFailed(format!(
            "need c_{g}(0..={hi}), got {} counts",
            counts.len()
        )));
    }
    let order = counts.len() - 1;
    let b = ExactSeries::from_i64s(&[1, -4], order).pow_fractional(singular_exponent(g))?;
    let c: Vec<Rational> = counts
        .iter()
        .map(|&v| Rational::from_integer(BigInt::from(v)))
        .collect();
    let predict = |p: &[Rational], n: usize| -> Rational {
        (lo..=hi.min(n)).fold(Rational::zero(), |acc, k| acc + &p[k] * b.coeffs()[n - k].clone())
    };
    let mut p = vec![Rational::zero(); hi + 1];
    for n in lo..=hi {
        p[n] = &c[n] - predict(&p, n);
    }
    for (n, cn) in c.iter().enumerate() {
        let pred = predict(&p, n);
        if pred != *cn {
            return Err(Error::FitFailed(format!(
                "c_{g}({n}) = {cn} but the fitted form gives {pred}"
            )));
        }
    }
    if !p.iter().all(is_integral) {
        return Err(Error::FitFailed(format!(
            "non-integral numerator coefficients {p:?}"
        )));
    }
    let poly = Poly::new(p);
    if poly.eval(&Rational::new(BigInt::from(1), BigInt::from(4))).is_zero() {
        return Err(Error::FitFailed(format!("P_{g}(1/4) vanishes")));
    }
    Ok(poly)
}

/// `P_g`, fitted once per process from oracle counts.
pub fn p_polynomial(g: u32) -> Result<&'static Poly<Rational>> {
    static CACHE: [OnceLock<Result<Poly<Rational>, String>>; MAX_GENUS as usize] =
        [OnceLock::new(), OnceLock::new()];
    check_genus(g)?;
    if g == 0 {
        return Err(Error::ContractViolation(
            "genus 0 has no polynomial numerator".into(),
        ));
    }
    CACHE[g as usize - 1]
        .get_or_init(|| {
            // Fit degrees 2g..3g-1 and keep two further counts as a check.
            let counts = matching_counts(g, 3 * g as usize + 1).map_err(|e| e.to_string())?;
            derive_p_polynomial(g, &counts).map_err(|e| e.to_string())
        })
        .as_ref()
        .map_err(|msg| Error::FitFailed(msg.clone()))
}

fn integer_coeff<R: Coeff>(r: &Rational) -> R {
    let v = r
        .to_integer()
        .to_i64()
        .expect("numerator coefficients fit in i64");
    R::from_i64(v)
}

/// `E_g(z, t)` for a value `t` in the coefficient ring.
pub fn structure_series_at<R: Coeff>(g: u32, t: &R, order: usize) -> Result<TruncatedSeries<R>> {
    check_genus(g)?;
    let q = TruncatedSeries::from_coeffs(vec![R::one(), R::from_i64(-1), t.clone()], order);
    let tz2 = TruncatedSeries::monomial(t.clone(), 2, order);
    let delta = q.mul(&q).sub(&tz2.scale(&R::from_i64(4)));
    if g == 0 {
        let denom = q.add(&delta.sqrt()?);
        return Ok(denom.reciprocal()?.scale(&R::from_i64(2)));
    }
    let p = p_polynomial(g)?;
    let top = 6 * g as usize - 2;
    let mut q_pow = vec![TruncatedSeries::one(order)];
    for k in 1..=top {
        q_pow.push(q_pow[k - 1].mul(&q));
    }
    let mut numer = TruncatedSeries::zero(order);
    let mut tz2_pow = TruncatedSeries::one(order);
    for (k, pk) in p.coeffs().iter().enumerate() {
        if !pk.is_zero() {
            let term = tz2_pow.mul(&q_pow[top - 2 * k]).scale(&integer_coeff(pk));
            numer = numer.add(&term);
        }
        tz2_pow = tz2_pow.mul(&tz2);
    }
    Ok(numer.mul(&delta.pow_fractional(singular_exponent(g))?))
}

pub(crate) fn ensure_integral(s: &ExactSeries, what: &str) -> Result<()> {
    match s.coeffs().iter().position(|c| !is_integral(c)) {
        None => Ok(()),
        Some(n) => Err(Error::ContractViolation(format!(
            "{what}: coefficient {n} is not an integer ({})",
            s.coeffs()[n]
        ))),
    }
}

/// Converts a bivariate series into a count table `[n][ℓ]`, checking that
/// every entry is a nonnegative integer.
pub(crate) fn count_table(s: &TruncatedSeries<Poly<Rational>>, what: &str) -> Result<CountTable> {
    s.coeffs()
        .iter()
        .enumerate()
        .map(|(n, p)| {
            (0..=n / 2)
                .map(|l| {
                    let c = p.coeff(l);
                    if !is_integral(&c) || c < Rational::zero() {
                        return Err(Error::ContractViolation(format!(
                            "{what}: [z^{n} t^{l}] = {c} is not a count"
                        )));
                    }
                    Ok(c.to_integer())
                })
                .collect()
        })
        .collect()
}

/// `d_g(n)`: genus-`g` structures over `n` vertices.
pub fn structure_gf(g: u32, order: usize) -> Result<ExactSeries> {
    let d = structure_series_at(g, &Rational::one(), order)?;
    ensure_integral(&d, "structure series")?;
    Ok(d)
}

/// `D_g` by literal substitution `u = z²/(z² − z + 1)²` into `C_g`.
/// Cubic in the order; used as an independent check of [`structure_gf`].
pub fn structure_gf_by_composition(g: u32, order: usize) -> Result<ExactSeries> {
    let c = matching_gf(g, order)?;
    let q = ExactSeries::from_i64s(&[1, -1, 1], order);
    let q_inv = q.reciprocal()?;
    let u = ExactSeries::monomial(Rational::one(), 2, order).mul(&q_inv.mul(&q_inv));
    TruncatedSeries::compose(&c, &u)?.div(&q)
}

/// `e_g(n, ℓ)`: genus-`g` structures over `n` vertices with `ℓ` arcs.
pub fn arc_filtered_gf(g: u32, order: usize) -> Result<CountTable> {
    let e = structure_series_at(g, &Poly::var(), order)?;
    count_table(&e, "arc-filtered series")
}

/// `D_{g,η}(z) = E_g(z, η)`.
pub fn eta_specialize(g: u32, eta: f64, order: usize) -> Result<EtaSeries> {
    if !(eta > 0.0) {
        return Err(Error::ContractViolation(format!(
            "arc weight must be positive, got {eta}"
        )));
    }
    Ok(EtaSeries {
        g,
        eta,
        series: structure_series_at(g, &eta, order)?,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct EtaSeries {
    pub g: u32,
    pub eta: f64,
    pub series: FloatSeries,
}

/// All genus-`g` series at one order.
#[derive(Clone, Debug)]
pub struct GenusSeriesSet {
    pub g: u32,
    pub order: usize,
    pub c_series: ExactSeries,
    pub d_series: ExactSeries,
    pub e_table: CountTable,
    /// `None` for genus 0.
    pub p_poly: Option<Poly<Rational>>,
}

impl GenusSeriesSet {
    /// The bivariate table costs far more than the univariate series; keep
    /// `order` modest.
    pub fn compute(g: u32, order: usize) -> Result<Self> {
        Ok(GenusSeriesSet {
            g,
            order,
            c_series: matching_gf(g, order)?,
            d_series: structure_gf(g, order)?,
            e_table: arc_filtered_gf(g, order)?,
            p_poly: if g == 0 { None } else { Some(p_polynomial(g)?.clone()) },
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{count_structures, tally_structures};

    fn ints(s: &ExactSeries) -> Vec<i64> {
        s.coeffs().iter().map(|c| c.to_integer().to_i64().unwrap()).collect()
    }

    #[test]
    fn catalan_values() {
        assert_eq!(ints(&catalan_gf(7)), vec![1, 1, 2, 5, 14, 42, 132, 429]);
    }

    #[test]
    fn genus_one_numerator_is_u_squared() {
        let p = p_polynomial(1).unwrap();
        assert_eq!(p, &Poly::new(vec![Rational::zero(), Rational::zero(), Rational::one()]));
        let at_quarter = p.eval(&Rational::new(1.into(), 4.into()));
        assert_eq!(at_quarter, Rational::new(1.into(), 16.into()));
    }

    #[test]
    fn genus_two_numerator_support() {
        let p = p_polynomial(2).unwrap();
        assert_eq!(p.degree(), Some(5));
        for k in 0..4 {
            assert!(p.coeff(k).is_zero());
        }
        assert!(!p.coeff(4).is_zero());
    }

    #[test]
    fn genus_one_matchings() {
        let c1 = matching_gf(1, 6).unwrap();
        assert_eq!(ints(&c1), vec![0, 0, 1, 10, 70, 420, 2310]);
    }

    #[test]
    fn fit_rejects_bad_input() {
        assert!(matches!(derive_p_polynomial(1, &[0, 0]), Err(Error::FitFailed(_))));
        assert!(matches!(
            derive_p_polynomial(1, &[0, 0, 1, 10, 71]),
            Err(Error::FitFailed(_))
        ));
        assert!(matches!(derive_p_polynomial(0, &[1, 1]), Err(Error::FitFailed(_))));
    }

    #[test]
    fn unsupported_genus() {
        assert!(matches!(structure_gf(3, 10), Err(Error::NotImplementedGenus(3))));
        assert!(matches!(matching_gf(5, 10), Err(Error::NotImplementedGenus(5))));
    }

    #[test]
    fn secondary_structure_counts() {
        assert_eq!(ints(&structure_gf(0, 7).unwrap()), vec![1, 1, 1, 2, 4, 8, 17, 37]);
    }

    #[test]
    fn closed_form_matches_composition() {
        for g in 0..=2 {
            assert_eq!(structure_gf(g, 24).unwrap(), structure_gf_by_composition(g, 24).unwrap());
        }
    }

    #[test]
    fn structure_counts_match_oracle() {
        for n in 0..=10 {
            let tally = tally_structures(n).unwrap();
            for g in 0..=2u32 {
                let d = structure_gf(g, 10).unwrap();
                assert_eq!(d.coeffs()[n], Rational::from_integer(tally.total(g as usize).into()));
            }
        }
        assert_eq!(count_structures(5, 1, false, false).unwrap().total, 5);
    }

    #[test]
    fn arc_table_marginalises_and_matches_oracle() {
        for g in 0..=1 {
            let e = arc_filtered_gf(g, 10).unwrap();
            let d = structure_gf(g, 10).unwrap();
            for n in 0..=10 {
                let sum: BigInt = e[n].iter().sum();
                assert_eq!(Rational::from_integer(sum), d.coeffs()[n]);
                let tally = tally_structures(n).unwrap();
                let oracle = tally.by_arcs(g as usize, false);
                let ours: Vec<u64> = e[n].iter().map(|c| c.to_u64().unwrap()).collect();
                assert_eq!(ours, oracle, "g={g} n={n}");
            }
        }
        let e0 = arc_filtered_gf(0, 8).unwrap();
        assert!(e0.iter().all(|row| row[0] == BigInt::from(1)));
        assert_eq!(e0[3][1], BigInt::from(1));
    }

    #[test]
    fn eta_specialisation() {
        let one = eta_specialize(1, 1.0, 12).unwrap();
        let exact = structure_gf(1, 12).unwrap().to_f64();
        for (a, b) in one.series.coeffs().iter().zip(exact.coeffs()) {
            assert!((a - b).abs() <= 1e-9 * b.abs().max(1.0));
        }
        let eta = DEFAULT_ETA;
        let d = eta_specialize(0, eta, 12).unwrap();
        assert!((d.series.coeffs()[3] - (1.0 + eta)).abs() < 1e-12);
        assert!(eta_specialize(0, 0.0, 4).is_err());
    }

    #[test]
    fn gamma_values() {
        assert!((gamma() - 2.618_033_988_749_895).abs() < 1e-15);
        assert!((gamma_eta(1.0) - gamma()).abs() < 1e-12);
        assert!(gamma_eta(DEFAULT_ETA) > gamma());
    }
}
