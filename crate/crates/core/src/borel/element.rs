use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::monomial::{mono_mul, Mono};
use super::render::render_terms;
use crate::error::{Error, Result};
use crate::scalar::GaussianRational;

/// Element of `U({A, E, D})` in PBW normal order, truncated above A-degree `order`.
///
/// Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BorelElement {
    terms: BTreeMap<Mono, GaussianRational>,
    order: usize,
}

impl BorelElement {
    pub fn zero(order: usize) -> Self {
        BorelElement { terms: BTreeMap::new(), order }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(Mono::ONE, GaussianRational::one(), order)
    }

    pub fn scalar(c: GaussianRational, order: usize) -> Self {
        Self::monomial(Mono::ONE, c, order)
    }

    pub fn monomial(m: Mono, c: GaussianRational, order: usize) -> Self {
        let mut x = Self::zero(order);
        x.add_term(m, c);
        x
    }

    pub fn gen_a(order: usize) -> Self {
        Self::monomial(Mono::A, GaussianRational::one(), order)
    }

    pub fn gen_e(order: usize) -> Self {
        Self::monomial(Mono::E, GaussianRational::one(), order)
    }

    pub fn gen_d(order: usize) -> Self {
        Self::monomial(Mono::D, GaussianRational::one(), order)
    }

    pub fn from_terms<I>(terms: I, order: usize) -> Self
    where
        I: IntoIterator<Item = (Mono, GaussianRational)>,
    {
        let mut x = Self::zero(order);
        for (m, c) in terms {
            x.add_term(m, c);
        }
        x
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Mono) -> GaussianRational {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Adds `c·m`, dropping it when the A-degree exceeds the order.
    pub fn add_term(&mut self, m: Mono, c: GaussianRational) {
        if m.grade() > self.order || c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Re-truncates at a different order.
    pub fn with_order(&self, order: usize) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| (*m, c.clone())), order)
    }

    /// Terms of A-degree exactly `g`.
    pub fn grade_part(&self, g: usize) -> Self {
        Self::from_terms(self.terms.iter().filter(|(m, _)| m.grade() == g).map(|(m, c)| (*m, c.clone())), self.order)
    }

    pub fn min_grade(&self) -> Option<usize> {
        self.terms.keys().map(Mono::grade).min()
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.order != other.order {
            return Err(Error::OrderMismatch { left: self.order, right: other.order });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg_ref())
    }

    /// PBW normal-ordered product.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(self.order);
        for (mx, cx) in &self.terms {
            for (my, cy) in &other.terms {
                if mx.grade() + my.grade() > self.order {
                    continue;
                }
                let c = cx * cy;
                for (m, k) in mono_mul(*mx, *my) {
                    out.add_term(m, c.scale(&crate::borel::int_rat(k)));
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, x)| (*m, x * c)), self.order)
    }

    fn neg_ref(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, x)| (*m, -x)), self.order)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.order);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }
}

impl fmt::Display for BorelElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by_key(|(m, _)| (m.total_degree(), m.render_key()));
        f.write_str(&render_terms(terms.into_iter().map(|(m, c)| (m.to_string(), c))))
    }
}

impl<'a> Add<&'a BorelElement> for &'a BorelElement {
    type Output = BorelElement;
    /// Panics on mismatched truncation orders; use [`BorelElement::try_add`] otherwise.
    fn add(self, o: &BorelElement) -> BorelElement {
        self.try_add(o).expect("BorelElement addition")
    }
}

impl<'a> Sub<&'a BorelElement> for &'a BorelElement {
    type Output = BorelElement;
    fn sub(self, o: &BorelElement) -> BorelElement {
        self.try_sub(o).expect("BorelElement subtraction")
    }
}

impl<'a> Mul<&'a BorelElement> for &'a BorelElement {
    type Output = BorelElement;
    fn mul(self, o: &BorelElement) -> BorelElement {
        self.try_mul(o).expect("BorelElement multiplication")
    }
}

impl Neg for &BorelElement {
    type Output = BorelElement;
    fn neg(self) -> BorelElement {
        self.neg_ref()
    }
}
