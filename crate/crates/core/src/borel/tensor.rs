use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::element::BorelElement;
use super::monomial::{mono_mul, Mono};
use super::render::render_terms;
use crate::error::{Error, Result};
use crate::scalar::GaussianRational;

pub const MAX_LEGS: usize = 3;

/// Key of a tensor term. Slots beyond `legs` are always `Mono::ONE`.
pub type TensorKey = [Mono; MAX_LEGS];

/// Element of `U⊗U` (or `U⊗U⊗U`), each leg in PBW order, truncated above total
/// A-degree `order`.
///
/// Legs multiply independently. A one-leg tensor is permitted internally so
/// that leg contractions compose; it is interchangeable with [`BorelElement`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorElement {
    legs: usize,
    terms: BTreeMap<TensorKey, GaussianRational>,
    order: usize,
}

fn key_grade(k: &TensorKey) -> usize {
    k.iter().map(Mono::grade).sum()
}

impl TensorElement {
    pub fn zero(legs: usize, order: usize) -> Self {
        assert!((1..=MAX_LEGS).contains(&legs), "tensor legs must be 1..=3");
        TensorElement { legs, terms: BTreeMap::new(), order }
    }

    pub fn one(legs: usize, order: usize) -> Self {
        let mut t = Self::zero(legs, order);
        t.add_term([Mono::ONE; MAX_LEGS], GaussianRational::one());
        t
    }

    /// `c·(m_0 ⊗ m_1 ⊗ ...)`.
    pub fn monomial(monos: &[Mono], c: GaussianRational, order: usize) -> Self {
        let mut t = Self::zero(monos.len(), order);
        let mut key = [Mono::ONE; MAX_LEGS];
        key[..monos.len()].copy_from_slice(monos);
        t.add_term(key, c);
        t
    }

    pub fn from_terms<I>(legs: usize, terms: I, order: usize) -> Self
    where
        I: IntoIterator<Item = (TensorKey, GaussianRational)>,
    {
        let mut t = Self::zero(legs, order);
        for (k, c) in terms {
            t.add_term(k, c);
        }
        t
    }

    /// Outer product `x_0 ⊗ x_1 ⊗ ...`, truncated in total grade.
    pub fn from_legs(factors: &[&BorelElement]) -> Result<Self> {
        let order = factors.first().map(|x| x.order()).unwrap_or(0);
        if let Some(bad) = factors.iter().find(|x| x.order() != order) {
            return Err(Error::OrderMismatch { left: order, right: bad.order() });
        }
        let mut out = Self::one(factors.len(), order);
        for (leg, x) in factors.iter().enumerate() {
            let mut next = Self::zero(factors.len(), order);
            for (k, c) in &out.terms {
                for (m, cx) in x.terms() {
                    let mut key = *k;
                    key[leg] = *m;
                    next.add_term(key, c * cx);
                }
            }
            out = next;
        }
        Ok(out)
    }

    /// `x` placed in slot `leg` with units elsewhere.
    pub fn embed(x: &BorelElement, leg: usize, legs: usize) -> Self {
        let mut t = Self::zero(legs, x.order());
        for (m, c) in x.terms() {
            let mut key = [Mono::ONE; MAX_LEGS];
            key[leg] = *m;
            t.add_term(key, c.clone());
        }
        t
    }

    pub fn from_borel(x: &BorelElement) -> Self {
        Self::embed(x, 0, 1)
    }

    /// Converts a one-leg tensor back to a Borel element.
    pub fn to_borel(&self) -> Result<BorelElement> {
        if self.legs != 1 {
            return Err(Error::WrongLegCount { expected: 1, got: self.legs });
        }
        Ok(BorelElement::from_terms(self.terms.iter().map(|(k, c)| (k[0], c.clone())), self.order))
    }

    pub fn legs(&self) -> usize {
        self.legs
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

    pub fn terms(&self) -> impl Iterator<Item = (&TensorKey, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, monos: &[Mono]) -> GaussianRational {
        let mut key = [Mono::ONE; MAX_LEGS];
        key[..monos.len()].copy_from_slice(monos);
        self.terms.get(&key).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, key: TensorKey, c: GaussianRational) {
        if key_grade(&key) > self.order || c.is_zero() {
            return;
        }
        debug_assert!(key[self.legs..].iter().all(Mono::is_one));
        match self.terms.entry(key) {
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

    /// Removes one term. Used to build corrupted elements for negative controls.
    pub fn remove_term(&mut self, key: &TensorKey) -> Option<GaussianRational> {
        self.terms.remove(key)
    }

    pub fn with_order(&self, order: usize) -> Self {
        Self::from_terms(self.legs, self.terms.iter().map(|(k, c)| (*k, c.clone())), order)
    }

    /// Terms of total A-degree exactly `g`.
    pub fn grade_part(&self, g: usize) -> Self {
        Self::from_terms(
            self.legs,
            self.terms.iter().filter(|(k, _)| key_grade(k) == g).map(|(k, c)| (*k, c.clone())),
            self.order,
        )
    }

    pub fn min_grade(&self) -> Option<usize> {
        self.terms.keys().map(key_grade).min()
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.order != other.order {
            return Err(Error::OrderMismatch { left: self.order, right: other.order });
        }
        if self.legs != other.legs {
            return Err(Error::LegMismatch { left: self.legs, right: other.legs });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(*k, c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg_ref())
    }

    /// Leg-wise product.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut by_grade: Vec<Vec<(&TensorKey, &GaussianRational)>> = vec![Vec::new(); self.order + 1];
        for (k, c) in &other.terms {
            by_grade[key_grade(k)].push((k, c));
        }
        let mut out = Self::zero(self.legs, self.order);
        for (kx, cx) in &self.terms {
            let gx = key_grade(kx);
            for bucket in &by_grade[..=self.order - gx] {
                for (ky, cy) in bucket {
                    let c = cx * cy;
                    let factors: Vec<Vec<(Mono, i128)>> = (0..self.legs).map(|l| mono_mul(kx[l], ky[l])).collect();
                    let mut partial: Vec<(TensorKey, i128)> = vec![([Mono::ONE; MAX_LEGS], 1)];
                    for (l, leg_terms) in factors.iter().enumerate() {
                        let mut next = Vec::with_capacity(partial.len() * leg_terms.len());
                        for (key, k) in &partial {
                            for (m, km) in leg_terms {
                                let mut key = *key;
                                key[l] = *m;
                                next.push((key, k * km));
                            }
                        }
                        partial = next;
                    }
                    for (key, k) in partial {
                        if k == 1 {
                            out.add_term(key, c.clone());
                        } else {
                            out.add_term(key, c.scale(&crate::borel::int_rat(k)));
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        Self::from_terms(self.legs, self.terms.iter().map(|(k, x)| (*k, x * c)), self.order)
    }

    fn neg_ref(&self) -> Self {
        Self::from_terms(self.legs, self.terms.iter().map(|(k, x)| (*k, -x)), self.order)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.legs, self.order);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Exchanges the legs of a two-leg tensor.
    pub fn flip(&self) -> Result<Self> {
        if self.legs != 2 {
            return Err(Error::WrongLegCount { expected: 2, got: self.legs });
        }
        Ok(Self::from_terms(2, self.terms.iter().map(|(k, c)| ([k[1], k[0], Mono::ONE], c.clone())), self.order))
    }

    /// Applies a linear map `Mono -> BorelElement` to one leg.
    pub fn map_leg<F>(&self, leg: usize, mut f: F) -> Self
    where
        F: FnMut(Mono) -> BorelElement,
    {
        let mut cache: BTreeMap<Mono, BorelElement> = BTreeMap::new();
        let mut out = Self::zero(self.legs, self.order);
        for (k, c) in &self.terms {
            let image = cache.entry(k[leg]).or_insert_with(|| f(k[leg]));
            for (m, cm) in image.terms() {
                let mut key = *k;
                key[leg] = *m;
                out.add_term(key, c * cm);
            }
        }
        out
    }

    /// Replaces leg `leg` by the two legs of `f(mono)`, giving `legs + 1` legs.
    pub fn split_leg<F>(&self, leg: usize, mut f: F) -> Result<Self>
    where
        F: FnMut(Mono) -> TensorElement,
    {
        if self.legs + 1 > MAX_LEGS {
            return Err(Error::WrongLegCount { expected: MAX_LEGS - 1, got: self.legs });
        }
        let mut cache: BTreeMap<Mono, TensorElement> = BTreeMap::new();
        let mut out = Self::zero(self.legs + 1, self.order);
        for (k, c) in &self.terms {
            let image = cache.entry(k[leg]).or_insert_with(|| f(k[leg]));
            for (ki, ci) in image.terms() {
                let mut key = [Mono::ONE; MAX_LEGS];
                key[..leg].copy_from_slice(&k[..leg]);
                key[leg] = ki[0];
                key[leg + 1] = ki[1];
                key[leg + 2..self.legs + 1].copy_from_slice(&k[leg + 1..self.legs]);
                out.add_term(key, c * ci);
            }
        }
        Ok(out)
    }

    /// Applies a linear functional to one leg, dropping it.
    pub fn contract_leg<F>(&self, leg: usize, mut f: F) -> Result<Self>
    where
        F: FnMut(Mono) -> GaussianRational,
    {
        if self.legs < 2 {
            return Err(Error::WrongLegCount { expected: 2, got: self.legs });
        }
        let mut out = Self::zero(self.legs - 1, self.order);
        for (k, c) in &self.terms {
            let w = f(k[leg]);
            if w.is_zero() {
                continue;
            }
            let mut key = [Mono::ONE; MAX_LEGS];
            let rest: Vec<Mono> =
                k[..self.legs].iter().enumerate().filter(|&(l, _)| l != leg).map(|(_, m)| *m).collect();
            key[..rest.len()].copy_from_slice(&rest);
            out.add_term(key, c * &w);
        }
        Ok(out)
    }

    /// Inserts a unit factor at slot `pos`, e.g. `F ↦ F⊗1` for `pos = legs`.
    pub fn insert_unit_leg(&self, pos: usize) -> Result<Self> {
        if self.legs + 1 > MAX_LEGS || pos > self.legs {
            return Err(Error::WrongLegCount { expected: MAX_LEGS - 1, got: self.legs });
        }
        let mut out = Self::zero(self.legs + 1, self.order);
        for (k, c) in &self.terms {
            let mut key = [Mono::ONE; MAX_LEGS];
            key[..pos].copy_from_slice(&k[..pos]);
            key[pos + 1..self.legs + 1].copy_from_slice(&k[pos..self.legs]);
            out.add_term(key, c.clone());
        }
        Ok(out)
    }

    /// `μ(x ⊗ y) = x·y` for a two-leg tensor.
    pub fn multiply_legs(&self) -> Result<BorelElement> {
        if self.legs != 2 {
            return Err(Error::WrongLegCount { expected: 2, got: self.legs });
        }
        let mut out = BorelElement::zero(self.order);
        for (k, c) in &self.terms {
            for (m, km) in mono_mul(k[0], k[1]) {
                out.add_term(m, c.scale(&crate::borel::int_rat(km)));
            }
        }
        Ok(out)
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by_key(|(k, _)| {
            let deg: u32 = k.iter().map(Mono::total_degree).sum();
            let lex: Vec<u32> = k[..self.legs].iter().flat_map(|m| m.render_key()).collect();
            (deg, lex)
        });
        let legs = self.legs;
        let rendered = terms.into_iter().map(|(k, c)| {
            let mono = if k.iter().all(Mono::is_one) {
                "1".to_string()
            } else {
                k[..legs].iter().map(Mono::to_string).collect::<Vec<_>>().join("⊗")
            };
            (mono, c)
        });
        f.write_str(&render_terms(rendered))
    }
}

impl<'a> Add<&'a TensorElement> for &'a TensorElement {
    type Output = TensorElement;
    /// Panics on mismatched legs or orders; use [`TensorElement::try_add`] otherwise.
    fn add(self, o: &TensorElement) -> TensorElement {
        self.try_add(o).expect("TensorElement addition")
    }
}

impl<'a> Sub<&'a TensorElement> for &'a TensorElement {
    type Output = TensorElement;
    fn sub(self, o: &TensorElement) -> TensorElement {
        self.try_sub(o).expect("TensorElement subtraction")
    }
}

impl<'a> Mul<&'a TensorElement> for &'a TensorElement {
    type Output = TensorElement;
    fn mul(self, o: &TensorElement) -> TensorElement {
        self.try_mul(o).expect("TensorElement multiplication")
    }
}

impl Neg for &TensorElement {
    type Output = TensorElement;
    fn neg(self) -> TensorElement {
        self.neg_ref()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one() -> GaussianRational {
        GaussianRational::one()
    }

    #[test]
    fn flip_definition() {
        let t = TensorElement::monomial(&[Mono::A, Mono::D], one(), 3);
        assert_eq!(t.flip().unwrap(), TensorElement::monomial(&[Mono::D, Mono::A], one(), 3));
        let unit = TensorElement::one(2, 3);
        assert_eq!(unit.flip().unwrap(), unit);
        assert_eq!(TensorElement::one(3, 3).flip(), Err(Error::WrongLegCount { expected: 2, got: 3 }));
    }

    #[test]
    fn no_cross_leg_reordering() {
        let n = 3;
        let x = TensorElement::monomial(&[Mono::D, Mono::ONE], one(), n);
        let y = TensorElement::monomial(&[Mono::ONE, Mono::A], one(), n);
        // (D⊗1)(1⊗A) = D⊗A, and (1⊗A)(D⊗1) = D⊗A as well
        assert_eq!(&x * &y, TensorElement::monomial(&[Mono::D, Mono::A], one(), n));
        assert_eq!(&y * &x, &x * &y);
    }

    #[test]
    fn total_grade_truncation() {
        let n = 1;
        let x = TensorElement::monomial(&[Mono::A, Mono::ONE], one(), n);
        let y = TensorElement::monomial(&[Mono::ONE, Mono::A], one(), n);
        assert!((&x * &y).is_zero());
    }

    #[test]
    fn rendering() {
        let n = 2;
        let t = &TensorElement::monomial(&[Mono::D, Mono::A], GaussianRational::ratio(1, 2), n)
            - &TensorElement::monomial(&[Mono::A, Mono::D], GaussianRational::ratio(1, 2), n);
        assert_eq!(t.to_string(), "1/2 D⊗A - 1/2 A⊗D");
        assert_eq!((&TensorElement::one(2, n) + &t).to_string(), "1 + 1/2 D⊗A - 1/2 A⊗D");
    }

    #[test]
    fn multiply_legs_reorders() {
        let t = TensorElement::monomial(&[Mono::D, Mono::A], one(), 2);
        let expected = &BorelElement::monomial(Mono::new(1, 0, 1), one(), 2) - &BorelElement::gen_a(2);
        assert_eq!(t.multiply_legs().unwrap(), expected);
    }
}
