//! Polynomials in a second indeterminate, used as the coefficient ring of
//! bivariate series `Σ_n p_n(t) z^n`.

use super::coeff::Coeff;

/// Dense polynomial `Σ_k c_k t^k` with trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<R> {
    coeffs: Vec<R>,
}

impl<R: Coeff> Poly<R> {
    pub fn new(mut coeffs: Vec<R>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn constant(c: R) -> Self {
        Self::new(vec![c])
    }

    /// The indeterminate `t`.
    pub fn var() -> Self {
        Self::new(vec![R::zero(), R::one()])
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> R {
        self.coeffs.get(k).cloned().unwrap_or_else(R::zero)
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, at: &R) -> R {
        self.coeffs
            .iter()
            .rev()
            .fold(R::zero(), |acc, c| acc.mul_ref(at).add_ref(c))
    }

    fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }
}

impl<R: Coeff> Coeff for Poly<R> {
    fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }
    fn one() -> Self {
        Self::constant(R::one())
    }
    fn from_i64(value: i64) -> Self {
        Self::constant(R::from_i64(value))
    }
    fn from_ratio(numer: i64, denom: i64) -> Self {
        Self::constant(R::from_ratio(numer, denom))
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn add_ref(&self, rhs: &Self) -> Self {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..len)
            .map(|k| match (self.coeffs.get(k), rhs.coeffs.get(k)) {
                (Some(a), Some(b)) => a.add_ref(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Self::new(coeffs)
    }

    fn sub_ref(&self, rhs: &Self) -> Self {
        self.add_ref(&rhs.neg_ref())
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let len = self.coeffs.len() + rhs.coeffs.len() - 1;
        let coeffs = (0..len)
            .map(|k| {
                let lo = k.saturating_sub(rhs.coeffs.len() - 1);
                let hi = k.min(self.coeffs.len() - 1);
                R::dot((lo..=hi).map(|i| (&self.coeffs[i], &rhs.coeffs[k - i])))
            })
            .collect();
        Self::new(coeffs)
    }

    fn neg_ref(&self) -> Self {
        Poly {
            coeffs: self.coeffs.iter().map(Coeff::neg_ref).collect(),
        }
    }

    fn try_recip(&self) -> Option<Self> {
        if !self.is_constant() {
            return None;
        }
        self.coeffs.first()?.try_recip().map(Self::constant)
    }

    fn try_sqrt(&self) -> Option<Self> {
        if !self.is_constant() {
            return None;
        }
        match self.coeffs.first() {
            None => Some(Self::zero()),
            Some(c) => c.try_sqrt().map(Self::constant),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::Rational;

    #[test]
    fn multiply_and_evaluate() {
        let p = Poly::new(vec![Rational::from_i64(1), Rational::from_i64(1)]);
        let sq = p.mul_ref(&p);
        assert_eq!(
            sq.coeffs(),
            &[
                Rational::from_i64(1),
                Rational::from_i64(2),
                Rational::from_i64(1)
            ]
        );
        assert_eq!(sq.eval(&Rational::from_i64(2)), Rational::from_i64(9));
    }

    #[test]
    fn only_constants_are_invertible() {
        assert!(Poly::<f64>::var().try_recip().is_none());
        assert_eq!(Poly::constant(4.0).try_recip(), Some(Poly::constant(0.25)));
    }
}
