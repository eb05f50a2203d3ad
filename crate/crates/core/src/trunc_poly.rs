//! Polynomials in the deformation parameter `h`, truncated at a fixed order.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::GaussianRational;

/// `c_0 + c_1 h + ... + c_N h^N` with every product truncated at `h^N`.
///
/// `coeffs` never has trailing zeros, so equality is structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncPoly {
    coeffs: Vec<GaussianRational>,
    order: usize,
}

impl TruncPoly {
    pub fn zero(order: usize) -> Self {
        TruncPoly { coeffs: Vec::new(), order }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(GaussianRational::one(), order)
    }

    pub fn constant(c: GaussianRational, order: usize) -> Self {
        Self::from_coeffs(vec![c], order)
    }

    /// `c·h^degree`, or zero when `degree > order`.
    pub fn monomial(c: GaussianRational, degree: usize, order: usize) -> Self {
        if degree > order {
            return Self::zero(order);
        }
        let mut coeffs = vec![GaussianRational::zero(); degree + 1];
        coeffs[degree] = c;
        Self::from_coeffs(coeffs, order)
    }

    /// Builds a polynomial from ascending coefficients, discarding degrees above `order`.
    pub fn from_coeffs(mut coeffs: Vec<GaussianRational>, order: usize) -> Self {
        coeffs.truncate(order + 1);
        let mut p = TruncPoly { coeffs, order };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[GaussianRational] {
        &self.coeffs
    }

    pub fn coeff(&self, degree: usize) -> GaussianRational {
        self.coeffs.get(degree).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Lowest degree with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::from_coeffs(self.coeffs.clone(), order)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.order != other.order {
            return Err(Error::OrderMismatch { left: self.order, right: other.order });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn add_unchecked(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len).map(|k| &self.coeff(k) + &other.coeff(k)).collect();
        Self::from_coeffs(coeffs, self.order)
    }

    pub(crate) fn add_assign_unchecked(&mut self, other: &Self) {
        if self.coeffs.len() < other.coeffs.len() {
            self.coeffs.resize(other.coeffs.len(), GaussianRational::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b;
        }
        self.trim();
    }

    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.order);
        }
        let len = (self.coeffs.len() + other.coeffs.len() - 1).min(self.order + 1);
        let mut coeffs = vec![GaussianRational::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                coeffs[i + j] += &(a * b);
            }
        }
        Self::from_coeffs(coeffs, self.order)
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect(), self.order)
    }

    pub fn neg(&self) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| -a).collect(), self.order)
    }

    /// Multiplies by `h^k`, dropping what falls beyond the order.
    pub fn shift(&self, k: usize) -> Self {
        let mut coeffs = vec![GaussianRational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self::from_coeffs(coeffs, self.order)
    }
}

impl fmt::Display for TruncPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let power = match k {
                0 => String::new(),
                1 => "h".to_string(),
                _ => format!("h^{k}"),
            };
            let mut coef = if c.is_simple() { c.to_string() } else { format!("({c})") };
            if k > 0 && c.is_one() {
                coef.clear();
            } else if k > 0 && (-c).is_one() {
                coef = "-".to_string();
            }
            let mut term = match (coef.as_str(), power.as_str()) {
                (c, "") => c.to_string(),
                ("", p) | ("-", p) => format!("{coef}{p}"),
                (c, p) => format!("{c} {p}"),
            };
            if !first {
                term = match term.strip_prefix('-') {
                    Some(rest) => format!(" - {rest}"),
                    None => format!(" + {term}"),
                };
            }
            first = false;
            write!(f, "{term}")?;
        }
        Ok(())
    }
}
