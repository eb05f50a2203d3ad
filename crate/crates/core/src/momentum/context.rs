use std::fmt::{Debug, Display};

use num_traits::{Num, ToPrimitive};

use crate::error::{Error, Result};
use crate::scalar::Rational;

/// Scalars the exact momentum functions run on.
pub trait Field: Clone + PartialOrd + Debug + Display + Num + std::ops::Neg<Output = Self> {
    fn from_rational(r: &Rational) -> Self;
    fn as_f64(&self) -> f64;

    /// A denominator that cannot be divided by.
    fn is_singular(&self) -> bool {
        self.is_zero()
    }
}

impl Field for Rational {
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn as_f64(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Field for f64 {
    fn from_rational(r: &Rational) -> Self {
        r.to_f64().unwrap_or(f64::NAN)
    }

    fn as_f64(&self) -> f64 {
        *self
    }

    fn is_singular(&self) -> bool {
        *self == 0.0 || !self.is_finite()
    }
}

/// The twist parameter `u` and the deformation vector `a` (with `1/κ` folded in).
#[derive(Clone, Debug, PartialEq)]
pub struct DeformationContext<T> {
    pub u: T,
    pub a: Vec<T>,
}

fn positive<T: Field>(value: T, name: &str) -> Result<()> {
    if value > T::zero() {
        Ok(())
    } else {
        Err(Error::Singular(format!("{name} = {value} is not positive")))
    }
}

fn nonzero<T: Field>(value: &T, name: &str) -> Result<()> {
    if value.is_singular() {
        Err(Error::Singular(format!("{name} vanishes")))
    } else {
        Ok(())
    }
}

impl<T: Field> DeformationContext<T> {
    pub fn new(u: T, a: Vec<T>) -> Result<Self> {
        if a.is_empty() {
            return Err(Error::Precondition("deformation vector must have at least one component".into()));
        }
        Ok(DeformationContext { u, a })
    }

    pub fn from_rational(u: &Rational, a: &[Rational]) -> Result<Self> {
        Self::new(T::from_rational(u), a.iter().map(T::from_rational).collect())
    }

    pub fn dim(&self) -> usize {
        self.a.len()
    }

    pub fn check_dim(&self, k: &[T]) -> Result<()> {
        if k.len() != self.dim() {
            return Err(Error::DimensionMismatch { left: self.dim(), right: k.len() });
        }
        Ok(())
    }

    /// `a·k`, a plain bilinear contraction.
    pub fn dot(&self, k: &[T]) -> T {
        self.a.iter().zip(k).fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
    }

    pub(crate) fn one_minus_u(&self) -> T {
        T::one() - self.u.clone()
    }

    /// `1 + u(1-u)(a·k)(a·q)`.
    pub fn sum_denominator(&self, k: &[T], q: &[T]) -> T {
        T::one() + self.u.clone() * self.one_minus_u() * self.dot(k) * self.dot(q)
    }

    /// `D_μ(k,q) = [k_μ(1+u a·q) + (1-(1-u)a·k) q_μ] / [1 + u(1-u)(a·k)(a·q)]`.
    pub fn deformed_sum(&self, k: &[T], q: &[T]) -> Result<Vec<T>> {
        self.check_dim(k)?;
        self.check_dim(q)?;
        let den = self.sum_denominator(k, q);
        nonzero(&den, "1 + u(1-u)(a·k)(a·q)")?;
        let left = T::one() + self.u.clone() * self.dot(q);
        let right = T::one() - self.one_minus_u() * self.dot(k);
        Ok(k.iter()
            .zip(q)
            .map(|(kk, qq)| (kk.clone() * left.clone() + right.clone() * qq.clone()) / den.clone())
            .collect())
    }

    /// `S(k)_μ = -k_μ / (1 - (1-2u)(a·k))`.
    pub fn antipode(&self, k: &[T]) -> Result<Vec<T>> {
        self.check_dim(k)?;
        let two = T::one() + T::one();
        let den = T::one() - (T::one() - two * self.u.clone()) * self.dot(k);
        nonzero(&den, "1 - (1-2u)(a·k)")?;
        Ok(k.iter().map(|kk| -kk.clone() / den.clone()).collect())
    }

    /// Positivity of every factor entering `D(k,q)`.
    pub fn check_sum_domain(&self, k: &[T], q: &[T]) -> Result<()> {
        positive(T::one() + self.u.clone() * self.dot(q), "1 + u(a·q)")?;
        positive(T::one() - self.one_minus_u() * self.dot(k), "1 - (1-u)(a·k)")?;
        positive(self.sum_denominator(k, q), "1 + u(1-u)(a·k)(a·q)")
    }

    pub fn check_antipode_domain(&self, k: &[T]) -> Result<()> {
        let two = T::one() + T::one();
        positive(T::one() - (T::one() - two * self.u.clone()) * self.dot(k), "1 - (1-2u)(a·k)")
    }

    /// Both factors of the `K⁻¹` log argument positive.
    pub fn check_log_domain(&self, k: &[T]) -> Result<()> {
        positive(T::one() + self.u.clone() * self.dot(k), "1 + u(a·k)")?;
        positive(T::one() - self.one_minus_u() * self.dot(k), "1 - (1-u)(a·k)")
    }

    /// The full admissibility region for a pair `(k, q)`.
    pub fn check_admissible(&self, k: &[T], q: &[T]) -> Result<()> {
        self.check_dim(k)?;
        self.check_dim(q)?;
        self.check_sum_domain(k, q)?;
        self.check_antipode_domain(k)?;
        self.check_log_domain(k)
    }

    pub fn to_f64(&self) -> DeformationContext<f64> {
        DeformationContext { u: self.u.as_f64(), a: self.a.iter().map(Field::as_f64).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn v(xs: &[(i64, i64)]) -> Vec<Rational> {
        xs.iter().map(|&(p, q)| rat(p, q)).collect()
    }

    fn ctx(u: Rational) -> DeformationContext<Rational> {
        DeformationContext::new(u, v(&[(1, 10), (0, 1)])).unwrap()
    }

    #[test]
    fn sum_examples() {
        let (k, q) = (v(&[(1, 1), (2, 1)]), v(&[(3, 1), (-1, 1)]));
        assert_eq!(ctx(rat(0, 1)).deformed_sum(&k, &q).unwrap(), v(&[(37, 10), (11, 10)]));
        // u = 1: k(1 + a·q) + q
        assert_eq!(ctx(rat(1, 1)).deformed_sum(&k, &q).unwrap(), v(&[(43, 10), (8, 5)]));
        let zero = v(&[(0, 1), (0, 1)]);
        for u in [rat(1, 2), rat(2, 1), rat(-1, 3)] {
            assert_eq!(ctx(u.clone()).deformed_sum(&k, &zero).unwrap(), k);
            assert_eq!(ctx(u).deformed_sum(&zero, &q).unwrap(), q);
        }
    }

    #[test]
    fn antipode_examples() {
        let k = v(&[(1, 1), (2, 1)]);
        let c = ctx(rat(0, 1));
        let s = c.antipode(&k).unwrap();
        assert_eq!(s, v(&[(-10, 9), (-20, 9)]));
        assert_eq!(c.deformed_sum(&k, &s).unwrap(), v(&[(0, 1), (0, 1)]));
        let half = ctx(rat(1, 2));
        assert_eq!(half.antipode(&k).unwrap(), v(&[(-1, 1), (-2, 1)]));
    }

    #[test]
    fn singular_denominators_are_named() {
        // u = 2: 1 - 2(a·k)(a·q) vanishes at a·k = 1, a·q = 1/2
        let c = DeformationContext::new(rat(2, 1), v(&[(1, 1), (0, 1)])).unwrap();
        let err = c.deformed_sum(&v(&[(1, 1), (0, 1)]), &v(&[(1, 2), (0, 1)])).unwrap_err();
        assert!(err.to_string().contains("1 + u(1-u)(a·k)(a·q)"), "{err}");
        let c = DeformationContext::new(rat(0, 1), v(&[(1, 1), (0, 1)])).unwrap();
        assert!(c.antipode(&v(&[(1, 1), (5, 1)])).is_err());
        assert!(c.check_log_domain(&v(&[(1, 1), (0, 1)])).is_err());
    }

    #[test]
    fn dimension_checked() {
        let c = ctx(rat(0, 1));
        assert!(matches!(c.deformed_sum(&v(&[(1, 1)]), &v(&[(1, 1), (0, 1)])), Err(Error::DimensionMismatch { .. })));
    }
}
