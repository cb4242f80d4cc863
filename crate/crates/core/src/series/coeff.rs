//! Coefficient rings for [`TruncatedSeries`](super::TruncatedSeries).
//!
//! Two rings are used throughout the crate: exact rationals over
//! arbitrary-precision integers ([`Rational`]) for combinatorial counts, and
//! `f64` for weighted series whose constants are transcendental.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational coefficients.
pub type Rational = BigRational;

/// Arithmetic needed by truncated series. Methods take references so big
/// coefficients are never cloned implicitly.
pub trait Coeff: Clone + PartialEq + Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(value: i64) -> Self;
    fn from_ratio(numer: i64, denom: i64) -> Self;

    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn neg_ref(&self) -> Self;

    /// Multiplicative inverse, if it exists in the ring.
    fn try_recip(&self) -> Option<Self>;

    /// Principal square root, if it exists in the ring.
    fn try_sqrt(&self) -> Option<Self>;

    /// `Σ a_k · b_k`. Rings with expensive normalisation override this.
    fn dot<'a, I>(pairs: I) -> Self
    where
        Self: 'a,
        I: Iterator<Item = (&'a Self, &'a Self)>,
    {
        pairs.fold(Self::zero(), |acc, (a, b)| acc.add_ref(&a.mul_ref(b)))
    }
}

impl Coeff for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_i64(value: i64) -> Self {
        value as f64
    }
    fn from_ratio(numer: i64, denom: i64) -> Self {
        numer as f64 / denom as f64
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn try_recip(&self) -> Option<Self> {
        (*self != 0.0 && self.is_finite()).then(|| 1.0 / self)
    }
    fn try_sqrt(&self) -> Option<Self> {
        (*self > 0.0).then(|| self.sqrt())
    }
}

impl Coeff for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(value: i64) -> Self {
        BigRational::from_integer(BigInt::from(value))
    }
    fn from_ratio(numer: i64, denom: i64) -> Self {
        BigRational::new(BigInt::from(numer), BigInt::from(denom))
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn try_recip(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }
    fn try_sqrt(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let n = self.numer().sqrt();
        let d = self.denom().sqrt();
        (&n * &n == *self.numer() && &d * &d == *self.denom()).then(|| BigRational::new(n, d))
    }

    fn dot<'a, I>(pairs: I) -> Self
    where
        I: Iterator<Item = (&'a Self, &'a Self)>,
    {
        // Counting series stay integral almost everywhere; summing the
        // numerators directly skips a gcd per term.
        let mut int_acc = BigInt::zero();
        let mut frac_acc: Option<BigRational> = None;
        for (a, b) in pairs {
            if a.is_integer() && b.is_integer() {
                int_acc += a.numer() * b.numer();
            } else {
                let term = a * b;
                frac_acc = Some(match frac_acc {
                    Some(acc) => acc + term,
                    None => term,
                });
            }
        }
        let int_part = BigRational::from_integer(int_acc);
        match frac_acc {
            Some(f) => int_part + f,
            None => int_part,
        }
    }
}

/// Returns true when the rational has denominator 1.
pub fn is_integral(value: &Rational) -> bool {
    value.is_integer()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_sqrt_only_for_perfect_squares() {
        assert_eq!(
            Rational::from_ratio(9, 4).try_sqrt(),
            Some(Rational::from_ratio(3, 2))
        );
        assert_eq!(Rational::from_i64(2).try_sqrt(), None);
        assert_eq!(Rational::from_i64(-1).try_sqrt(), None);
    }

    #[test]
    fn rational_dot_mixes_integer_and_fractional_terms() {
        let a = [Rational::from_i64(3), Rational::from_ratio(1, 2)];
        let b = [Rational::from_i64(4), Rational::from_ratio(2, 3)];
        let got = Rational::dot(a.iter().zip(b.iter()));
        assert_eq!(got, Rational::from_ratio(37, 3));
    }

    #[test]
    fn float_recip_rejects_zero() {
        assert_eq!(0.0f64.try_recip(), None);
        assert_eq!(4.0f64.try_recip(), Some(0.25));
    }
}
