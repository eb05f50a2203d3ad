use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::GaussianRational;
use crate::trunc_poly::TruncPoly;

use super::element::{key_mul, WeylElement, WeylKey};

/// Two-leg element of `H ⊗ H`, truncated on the total power of `h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylTensor {
    dim: usize,
    order: usize,
    terms: BTreeMap<(WeylKey, WeylKey), TruncPoly>,
}

impl WeylTensor {
    pub fn zero(dim: usize, order: usize) -> Self {
        WeylTensor { dim, order, terms: BTreeMap::new() }
    }

    pub fn one(dim: usize, order: usize) -> Self {
        Self::pair(&WeylElement::one(dim, order), &WeylElement::one(dim, order)).expect("same shape")
    }

    /// `l ⊗ r`.
    pub fn pair(l: &WeylElement, r: &WeylElement) -> Result<Self> {
        if l.dim() != r.dim() {
            return Err(Error::DimensionMismatch { left: l.dim(), right: r.dim() });
        }
        if l.order() != r.order() {
            return Err(Error::OrderMismatch { left: l.order(), right: r.order() });
        }
        let mut out = Self::zero(l.dim(), l.order());
        for (kl, cl) in l.terms() {
            for (kr, cr) in r.terms() {
                out.add_term((kl.clone(), kr.clone()), &cl.mul_unchecked(cr));
            }
        }
        Ok(out)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(WeylKey, WeylKey), &TruncPoly)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, key: (WeylKey, WeylKey), c: &TruncPoly) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(existing) => {
                existing.add_assign_unchecked(c);
                if existing.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c.clone());
            }
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: other.dim });
        }
        if self.order != other.order {
            return Err(Error::OrderMismatch { left: self.order, right: other.order });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.scale(&-GaussianRational::one()))
    }

    /// Leg-wise Weyl product.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(self.dim, self.order);
        for ((l1, r1), c1) in &self.terms {
            for ((l2, r2), c2) in &other.terms {
                let c = c1.mul_unchecked(c2);
                if c.is_zero() {
                    continue;
                }
                let left = key_mul(l1, l2);
                let right = key_mul(r1, r2);
                for (kl, fl) in &left {
                    for (kr, fr) in &right {
                        out.add_term((kl.clone(), kr.clone()), &c.scale(&(fl * fr)));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Leg-wise product with `x` and `p` commuting (normal ordering).
    pub fn try_normal_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let add = |a: &WeylKey, b: &WeylKey| WeylKey {
            x: a.x.iter().zip(&b.x).map(|(s, t)| s + t).collect(),
            p: a.p.iter().zip(&b.p).map(|(s, t)| s + t).collect(),
        };
        let mut out = Self::zero(self.dim, self.order);
        for ((l1, r1), c1) in &self.terms {
            for ((l2, r2), c2) in &other.terms {
                out.add_term((add(l1, l2), add(r1, r2)), &c1.mul_unchecked(c2));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        let mut out = Self::zero(self.dim, self.order);
        for (k, v) in &self.terms {
            out.add_term(k.clone(), &v.scale(c));
        }
        out
    }
}

impl fmt::Display for WeylTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((l, r), c)| if c.is_one() { format!("{l}⊗{r}") } else { format!("({c}) {l}⊗{r}") })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
