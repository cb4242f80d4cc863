//! Truncated formal power series over a pluggable coefficient ring.
//!
//! A [`TruncatedSeries`] of order `N` stores exactly the coefficients
//! `c_0..=c_N`. Binary operations truncate to the smaller operand order, so
//! every stored coefficient is exact with respect to the untruncated series.

mod coeff;
mod poly;

use std::ops::{Add, Mul, Neg, Sub};

use num_rational::Rational64;
use num_traits::ToPrimitive;

pub use coeff::{is_integral, Coeff, Rational};
pub use poly::Poly;

use crate::error::{Error, Result};

/// Exact-rational series.
pub type ExactSeries = TruncatedSeries<Rational>;
/// Floating-point series.
pub type FloatSeries = TruncatedSeries<f64>;

/// Default truncation order for asymptotic work.
pub const ASYMPTOTIC_ORDER: usize = 400;

#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries<R> {
    coeffs: Vec<R>,
}

impl<R: Coeff> TruncatedSeries<R> {
    /// Builds a series of the given order, zero-padding or truncating `coeffs`.
    pub fn from_coeffs(mut coeffs: Vec<R>, order: usize) -> Self {
        coeffs.resize(order + 1, R::zero());
        TruncatedSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::from_coeffs(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        Self::constant(R::one(), order)
    }

    pub fn constant(c: R, order: usize) -> Self {
        Self::from_coeffs(vec![c], order)
    }

    /// `c · z^k`, or zero when `k` exceeds the order.
    pub fn monomial(c: R, k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    /// The indeterminate `z`.
    pub fn var(order: usize) -> Self {
        Self::monomial(R::one(), 1, order)
    }

    /// Geometric series `1/(1 - z)`.
    pub fn geometric(order: usize) -> Self {
        Self::from_coeffs(vec![R::one(); order + 1], order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    /// `[z^n]`, zero beyond the order.
    pub fn coeff(&self, n: usize) -> R {
        self.coeffs.get(n).cloned().unwrap_or_else(R::zero)
    }

    /// Index of the first nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order());
        TruncatedSeries {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    pub fn map<S: Coeff>(&self, f: impl Fn(&R) -> S) -> TruncatedSeries<S> {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn scale(&self, c: &R) -> Self {
        self.map(|x| x.mul_ref(c))
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let order = self.order().min(rhs.order());
        TruncatedSeries {
            coeffs: (0..=order)
                .map(|n| self.coeffs[n].add_ref(&rhs.coeffs[n]))
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let order = self.order().min(rhs.order());
        TruncatedSeries {
            coeffs: (0..=order)
                .map(|n| self.coeffs[n].sub_ref(&rhs.coeffs[n]))
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.map(Coeff::neg_ref)
    }

    /// Truncated Cauchy product. A sparse operand (a polynomial of few
    /// terms) is iterated over its nonzero terms only.
    pub fn mul(&self, rhs: &Self) -> Self {
        let order = self.order().min(rhs.order());
        let nz_a = self.nonzero_indices(order);
        let nz_b = rhs.nonzero_indices(order);
        let (Some(&lo_a), Some(&lo_b)) = (nz_a.first(), nz_b.first()) else {
            return Self::zero(order);
        };
        if nz_a.len().min(nz_b.len()) * 4 <= order + 1 {
            let (sparse, sp, dense) = if nz_a.len() <= nz_b.len() {
                (nz_a, self, rhs)
            } else {
                (nz_b, rhs, self)
            };
            let coeffs = (0..=order)
                .map(|n| {
                    R::dot(
                        sparse
                            .iter()
                            .take_while(|&&k| k <= n)
                            .map(|&k| (&sp.coeffs[k], &dense.coeffs[n - k])),
                    )
                })
                .collect();
            return TruncatedSeries { coeffs };
        }
        let coeffs = (0..=order)
            .map(|n| {
                if n < lo_a + lo_b {
                    return R::zero();
                }
                R::dot((lo_a..=n - lo_b).map(|i| (&self.coeffs[i], &rhs.coeffs[n - i])))
            })
            .collect();
        TruncatedSeries { coeffs }
    }

    fn nonzero_indices(&self, order: usize) -> Vec<usize> {
        (0..=order).filter(|&k| !self.coeffs[k].is_zero()).collect()
    }

    /// Multiplies by `z^k`, keeping the order.
    pub fn shift_up(&self, k: usize) -> Self {
        let order = self.order();
        let mut coeffs = vec![R::zero(); k.min(order + 1)];
        coeffs.extend(self.coeffs.iter().take((order + 1).saturating_sub(k)).cloned());
        TruncatedSeries { coeffs }
    }

    /// Divides by `z^k`. The result has order `N - k`; the low coefficients
    /// must vanish.
    pub fn shift_down(&self, k: usize) -> Result<Self> {
        if k > self.order() {
            return Err(Error::ContractViolation(format!(
                "cannot divide a series of order {} by z^{k}",
                self.order()
            )));
        }
        if self.coeffs[..k].iter().any(|c| !c.is_zero()) {
            return Err(Error::ContractViolation(format!(
                "series is not divisible by z^{k}"
            )));
        }
        Ok(TruncatedSeries {
            coeffs: self.coeffs[k..].to_vec(),
        })
    }

    /// `1/a`, requiring an invertible constant term.
    pub fn reciprocal(&self) -> Result<Self> {
        let inv0 = self.coeffs[0].try_recip().ok_or(Error::NotInvertible)?;
        let order = self.order();
        let mut out: Vec<R> = Vec::with_capacity(order + 1);
        out.push(inv0.clone());
        for n in 1..=order {
            let acc = R::dot((1..=n).map(|k| (&self.coeffs[k], &out[n - k])));
            out.push(acc.mul_ref(&inv0).neg_ref());
        }
        Ok(TruncatedSeries { coeffs: out })
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self.mul(&rhs.reciprocal()?))
    }

    /// Square root with the principal root of the constant term.
    pub fn sqrt(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        let root0 = c0
            .try_sqrt()
            .filter(|r| !r.is_zero())
            .ok_or_else(|| Error::NotASquareRootDomain(format!("{c0:?}")))?;
        let inv_two_root = root0
            .add_ref(&root0)
            .try_recip()
            .ok_or_else(|| Error::NotASquareRootDomain(format!("{c0:?}")))?;
        let order = self.order();
        let mut out: Vec<R> = Vec::with_capacity(order + 1);
        out.push(root0);
        for n in 1..=order {
            let cross = R::dot((1..n).map(|i| (&out[i], &out[n - i])));
            out.push(self.coeffs[n].sub_ref(&cross).mul_ref(&inv_two_root));
        }
        Ok(TruncatedSeries { coeffs: out })
    }

    /// `outer(inner(z))` by Horner evaluation over the truncated ring.
    pub fn compose(outer: &Self, inner: &Self) -> Result<Self> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::CompositionDiverges);
        }
        let order = outer.order().min(inner.order());
        let inner = inner.truncate(order);
        let Some(val) = inner.valuation() else {
            return Ok(Self::constant(outer.coeffs[0].clone(), order));
        };
        // Terms outer_k · inner^k with k·val > order vanish.
        let top = (order / val).min(outer.order());
        let mut acc = Self::constant(outer.coeffs[top].clone(), order);
        for k in (0..top).rev() {
            acc = acc.mul(&inner);
            acc.coeffs[0] = acc.coeffs[0].add_ref(&outer.coeffs[k]);
        }
        Ok(acc)
    }

    /// `a^p` for rational `p`, requiring `a_0 = 1`.
    ///
    /// Uses the recurrence from `a·b' = p·a'·b`:
    /// `n·b_n = Σ_{k=1..n} ((p+1)k − n)·a_k·b_{n−k}`.
    pub fn pow_fractional(&self, p: Rational64) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::ContractViolation(format!(
                "pow_fractional requires constant term 1, found {:?}",
                self.coeffs[0]
            )));
        }
        let (pn, pd) = (*p.numer(), *p.denom());
        let order = self.order();
        let support: Vec<usize> = (1..=order).filter(|&k| !self.coeffs[k].is_zero()).collect();
        let mut out: Vec<R> = Vec::with_capacity(order + 1);
        out.push(R::one());
        for n in 1..=order {
            let terms: Vec<(usize, R)> = support
                .iter()
                .take_while(|&&k| k <= n)
                .map(|&k| {
                    let w = R::from_ratio((pn + pd) * k as i64 - n as i64 * pd, pd);
                    (k, w.mul_ref(&self.coeffs[k]))
                })
                .collect();
            let acc = R::dot(terms.iter().map(|(k, t)| (t, &out[n - k])));
            out.push(acc.mul_ref(&R::from_ratio(1, n as i64)));
        }
        Ok(TruncatedSeries { coeffs: out })
    }

    /// Evaluates the truncated polynomial at a point.
    pub fn eval(&self, at: &R) -> R {
        self.coeffs
            .iter()
            .rev()
            .fold(R::zero(), |acc, c| acc.mul_ref(at).add_ref(c))
    }
}

impl ExactSeries {
    pub fn from_i64s(values: &[i64], order: usize) -> Self {
        Self::from_coeffs(values.iter().map(|&v| Rational::from_i64(v)).collect(), order)
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(is_integral)
    }

    pub fn to_f64(&self) -> FloatSeries {
        self.map(|c| c.to_f64().unwrap_or(f64::NAN))
    }
}

impl<R: Coeff> TruncatedSeries<Poly<R>> {
    /// Substitutes a value for the polynomial indeterminate in every coefficient.
    pub fn eval_inner(&self, at: &R) -> TruncatedSeries<R> {
        self.map(|p| p.eval(at))
    }
}

impl serde::Serialize for FloatSeries {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.coeffs.serialize(serializer)
    }
}

impl<R: Coeff> Add for &TruncatedSeries<R> {
    type Output = TruncatedSeries<R>;
    fn add(self, rhs: Self) -> Self::Output {
        TruncatedSeries::add(self, rhs)
    }
}

impl<R: Coeff> Sub for &TruncatedSeries<R> {
    type Output = TruncatedSeries<R>;
    fn sub(self, rhs: Self) -> Self::Output {
        TruncatedSeries::sub(self, rhs)
    }
}

impl<R: Coeff> Mul for &TruncatedSeries<R> {
    type Output = TruncatedSeries<R>;
    fn mul(self, rhs: Self) -> Self::Output {
        TruncatedSeries::mul(self, rhs)
    }
}

impl<R: Coeff> Neg for &TruncatedSeries<R> {
    type Output = TruncatedSeries<R>;
    fn neg(self) -> Self::Output {
        TruncatedSeries::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ex(values: &[i64], order: usize) -> ExactSeries {
        ExactSeries::from_i64s(values, order)
    }

    fn ints(s: &ExactSeries) -> Vec<i64> {
        s.coeffs().iter().map(|c| c.to_i64().unwrap()).collect()
    }

    #[test]
    fn square_of_one_plus_z() {
        let a = ex(&[1, 1], 4);
        assert_eq!(ints(&(&a * &a)), vec![1, 2, 1, 0, 0]);
    }

    #[test]
    fn geometric_times_one_minus_z() {
        let g = ExactSeries::geometric(10);
        assert_eq!(&g * &ex(&[1, -1], 10), ExactSeries::one(10));
    }

    #[test]
    fn orders_truncate_to_minimum() {
        let a = ex(&[1, 2, 3], 5);
        let b = ex(&[1], 3);
        assert_eq!((&a + &b).order(), 3);
        assert_eq!((&a * &b).order(), 3);
    }

    #[test]
    fn catalan_square_identity() {
        // Catalan numbers from the convolution recurrence c_{n+1} = Σ c_i c_{n-i}.
        let mut cat = vec![1i64];
        for n in 0..15 {
            let next: i64 = (0..=n).map(|i| cat[i] * cat[n - i]).sum();
            cat.push(next);
        }
        let c = ex(&cat, 15);
        let lhs = (&c * &c).shift_up(1);
        let rhs = &c - &ExactSeries::one(15);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn reciprocal_geometric() {
        let r = ex(&[1, -1], 8).reciprocal().unwrap();
        assert_eq!(ints(&r), vec![1; 9]);
    }

    #[test]
    fn reciprocal_period_six() {
        let r = ex(&[1, -1, 1], 13).reciprocal().unwrap();
        assert_eq!(
            ints(&r),
            vec![1, 1, 0, -1, -1, 0, 1, 1, 0, -1, -1, 0, 1, 1]
        );
    }

    #[test]
    fn reciprocal_requires_unit() {
        assert!(matches!(
            ex(&[0, 1], 4).reciprocal(),
            Err(Error::NotInvertible)
        ));
    }

    #[test]
    fn sqrt_of_one_minus_four_z() {
        let s = ex(&[1, -4], 8).sqrt().unwrap();
        assert_eq!(ints(&s), vec![1, -2, -2, -4, -10, -28, -84, -264, -858]);
        assert_eq!(&s * &s, ex(&[1, -4], 8));
        assert_eq!(ExactSeries::one(5).sqrt().unwrap(), ExactSeries::one(5));
    }

    #[test]
    fn sqrt_rejects_bad_constant() {
        assert!(matches!(
            ex(&[0, 1], 4).sqrt(),
            Err(Error::NotASquareRootDomain(_))
        ));
        assert!(matches!(
            ex(&[2, 1], 4).sqrt(),
            Err(Error::NotASquareRootDomain(_))
        ));
        assert!(FloatSeries::from_coeffs(vec![2.0, 1.0], 4).sqrt().is_ok());
    }

    #[test]
    fn catalan_from_sqrt() {
        let order = 8;
        let root = ex(&[1, -4], order).sqrt().unwrap();
        let cat = (&ExactSeries::one(order) - &root)
            .scale(&Rational::from_ratio(1, 2))
            .shift_down(1)
            .unwrap();
        assert_eq!(ints(&cat)[..6], [1, 1, 2, 5, 14, 42]);
    }

    #[test]
    fn compose_examples() {
        let order = 10;
        let z = ExactSeries::var(order);
        let geo = ExactSeries::geometric(order);
        assert_eq!(ExactSeries::compose(&geo, &z).unwrap(), geo);

        let x2 = ex(&[0, 0, 1], order);
        let inner = ex(&[0, 1, 1], order);
        assert_eq!(
            ints(&ExactSeries::compose(&x2, &inner).unwrap()),
            vec![0, 0, 1, 2, 1, 0, 0, 0, 0, 0, 0]
        );
    }

    #[test]
    fn compose_rejects_nonzero_constant() {
        let a = ex(&[1, 1], 4);
        assert!(matches!(
            ExactSeries::compose(&a, &a),
            Err(Error::CompositionDiverges)
        ));
    }

    #[test]
    fn pow_fractional_examples() {
        let base = ex(&[1, -4], 6);
        let m52 = base.pow_fractional(Rational64::new(-5, 2)).unwrap();
        // 4^n Γ(n+5/2) / (Γ(5/2) n!) computed as the rising product.
        let mut expected = vec![Rational::from_i64(1)];
        for n in 1..=6i64 {
            let prev = expected.last().unwrap().clone();
            expected.push(prev * Rational::from_ratio(4 * (2 * n + 3), 2 * n));
        }
        assert_eq!(m52.coeffs(), &expected[..]);
        assert_eq!(ints(&m52)[..4], [1, 10, 70, 420]);

        let m12 = base.pow_fractional(Rational64::new(-1, 2)).unwrap();
        assert_eq!(ints(&m12)[..5], [1, 2, 6, 20, 70]);

        let half = base.pow_fractional(Rational64::new(1, 2)).unwrap();
        assert_eq!(half, base.sqrt().unwrap());
    }

    #[test]
    fn pow_fractional_requires_unit_constant() {
        assert!(matches!(
            ex(&[2, 1], 4).pow_fractional(Rational64::new(1, 2)),
            Err(Error::ContractViolation(_))
        ));
    }

    #[test]
    fn float_reciprocal_matches_exact() {
        let exact = ex(&[1, -1, 3, 5, -2], 30);
        let float = exact.to_f64();
        let prod = &float * &float.reciprocal().unwrap();
        for (n, c) in prod.coeffs().iter().enumerate() {
            let want = if n == 0 { 1.0 } else { 0.0 };
            let scale = float
                .reciprocal()
                .unwrap()
                .coeffs()
                .iter()
                .take(n + 1)
                .fold(1.0f64, |m, x| m.max(x.abs()));
            assert!((c - want).abs() <= 1e-12 * scale, "n={n}: {c}");
        }
    }

    fn small_poly() -> impl Strategy<Value = Vec<i64>> {
        prop::collection::vec(-5i64..=5, 1..=9)
    }

    proptest! {
        #[test]
        fn reciprocal_is_exact_inverse(mut tail in small_poly(), c0 in prop::sample::select(vec![-3i64, -1, 1, 2, 7])) {
            tail[0] = c0;
            let a = ex(&tail, 16);
            let inv = a.reciprocal().unwrap();
            prop_assert_eq!(&a * &inv, ExactSeries::one(16));
        }

        #[test]
        fn mul_commutes_and_distributes(a in small_poly(), b in small_poly(), c in small_poly()) {
            let (a, b, c) = (ex(&a, 12), ex(&b, 12), ex(&c, 12));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }

        #[test]
        fn compose_matches_polynomial_substitution(outer in small_poly(), mut inner in small_poly()) {
            inner[0] = 0;
            let order = 20;
            let composed = ExactSeries::compose(&ex(&outer, order), &ex(&inner, order)).unwrap();
            // Brute force: expand Σ outer_k · inner^k as full polynomials.
            let mut expanded = vec![0i64; outer.len() * inner.len() + 1];
            let mut power = vec![1i64];
            for &ok in &outer {
                for (i, &p) in power.iter().enumerate() {
                    expanded[i] += ok * p;
                }
                let mut next = vec![0i64; power.len() + inner.len()];
                for (i, &p) in power.iter().enumerate() {
                    for (j, &q) in inner.iter().enumerate() {
                        next[i + j] += p * q;
                    }
                }
                power = next;
            }
            prop_assert_eq!(composed, ex(&expanded, order));
        }

        #[test]
        fn sqrt_agrees_with_half_power(mut tail in small_poly()) {
            tail[0] = 1;
            let a = ex(&tail, 14);
            let root = a.sqrt().unwrap();
            prop_assert_eq!(&root * &root, a.clone());
            prop_assert_eq!(root, a.pow_fractional(Rational64::new(1, 2)).unwrap());
        }
    }
}
