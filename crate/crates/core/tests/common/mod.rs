//! Reference arithmetic for the Borel algebra by literal word rewriting:
//! `DA → AD - A`, `DE → ED - E`, `EA → AE` until the word is `A…E…D…`.
#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};

use jtwist_core::borel::{BorelElement, Mono, TensorElement};
use jtwist_core::Rational;
use num_traits::{One, Zero};

pub type Key = Vec<(u32, u32, u32)>;

fn rank(c: u8) -> u8 {
    match c {
        b'A' => 0,
        b'E' => 1,
        _ => 2,
    }
}

fn word(m: (u32, u32, u32)) -> Vec<u8> {
    let mut w = vec![b'A'; m.0 as usize];
    w.extend(std::iter::repeat_n(b'E', m.1 as usize));
    w.extend(std::iter::repeat_n(b'D', m.2 as usize));
    w
}

fn counts(w: &[u8]) -> (u32, u32, u32) {
    let n = |c| w.iter().filter(|&&x| x == c).count() as u32;
    (n(b'A'), n(b'E'), n(b'D'))
}

/// PBW exponents `(a, e, d)` to integer coefficients.
pub type NormalForm = BTreeMap<(u32, u32, u32), i64>;

#[derive(Default)]
pub struct Rewriter {
    memo: HashMap<Vec<u8>, NormalForm>,
}

impl Rewriter {
    pub fn normal_form(&mut self, w: &[u8]) -> BTreeMap<(u32, u32, u32), i64> {
        if let Some(r) = self.memo.get(w) {
            return r.clone();
        }
        let mut out = BTreeMap::new();
        match (0..w.len().saturating_sub(1)).find(|&i| rank(w[i]) > rank(w[i + 1])) {
            None => {
                out.insert(counts(w), 1);
            }
            Some(i) => {
                let mut swapped = w.to_vec();
                swapped.swap(i, i + 1);
                let mut add = |rw: &mut Self, src: &[u8], sign: i64| {
                    for (k, c) in rw.normal_form(src) {
                        *out.entry(k).or_insert(0) += sign * c;
                    }
                };
                add(self, &swapped, 1);
                // DA and DE pick up a correction term; EA commutes.
                if w[i] == b'D' {
                    let mut shorter = w.to_vec();
                    shorter.remove(i);
                    add(self, &shorter, -1);
                }
                out.retain(|_, c| *c != 0);
            }
        }
        self.memo.insert(w.to_vec(), out.clone());
        out
    }

    pub fn mono_product(&mut self, x: (u32, u32, u32), y: (u32, u32, u32)) -> BTreeMap<(u32, u32, u32), i64> {
        let mut w = word(x);
        w.extend(word(y));
        self.normal_form(&w)
    }
}

/// A tensor element with rational coefficients, truncated on total `A`-degree.
#[derive(Clone, Debug, PartialEq)]
pub struct Oracle {
    pub terms: BTreeMap<Key, Rational>,
    pub order: usize,
}

impl Oracle {
    pub fn zero(order: usize) -> Self {
        Oracle { terms: BTreeMap::new(), order }
    }

    pub fn one(legs: usize, order: usize) -> Self {
        Self::term(vec![(0, 0, 0); legs], Rational::one(), order)
    }

    pub fn term(key: Key, c: Rational, order: usize) -> Self {
        let mut o = Self::zero(order);
        o.add(key, c);
        o
    }

    pub fn add(&mut self, key: Key, c: Rational) {
        if key.iter().map(|m| m.0 as usize).sum::<usize>() > self.order {
            return;
        }
        let entry = self.terms.entry(key.clone()).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn plus(&self, other: &Self) -> Self {
        self.combine(other, Rational::one())
    }

    pub fn minus(&self, other: &Self) -> Self {
        self.combine(other, -Rational::one())
    }

    fn combine(&self, other: &Self, sign: Rational) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add(k.clone(), c * &sign);
        }
        out
    }

    pub fn scale(&self, s: &Rational) -> Self {
        let mut out = Self::zero(self.order);
        for (k, c) in &self.terms {
            out.add(k.clone(), c * s);
        }
        out
    }

    pub fn times(&self, other: &Self, rw: &mut Rewriter) -> Self {
        let mut out = Self::zero(self.order);
        for (kx, cx) in &self.terms {
            for (ky, cy) in &other.terms {
                let mut partial: Vec<(Key, i64)> = vec![(Vec::new(), 1)];
                for (mx, my) in kx.iter().zip(ky) {
                    let leg = rw.mono_product(*mx, *my);
                    let mut next = Vec::new();
                    for (k, c) in &partial {
                        for (m, cm) in &leg {
                            let mut kk = k.clone();
                            kk.push(*m);
                            next.push((kk, c * cm));
                        }
                    }
                    partial = next;
                }
                for (k, c) in partial {
                    out.add(k, cx * cy * Rational::from_integer(c.into()));
                }
            }
        }
        out
    }

    pub fn exp(&self, legs: usize, rw: &mut Rewriter) -> Self {
        let mut sum = Self::one(legs, self.order);
        let mut power = Self::one(legs, self.order);
        for k in 1..=self.order {
            power = power.times(self, rw).scale(&Rational::new(1.into(), (k as i64).into()));
            sum = sum.plus(&power);
        }
        sum
    }

    /// `Δ0` applied to leg `leg`, letter by letter: each generator is primitive.
    pub fn coproduct_leg(&self, leg: usize, rw: &mut Rewriter) -> Self {
        let legs = self.terms.keys().next().map_or(1, |k| k.len());
        let mut out = Self::zero(self.order);
        for (k, c) in &self.terms {
            let letters = word(k[leg]);
            let mut acc = Self::one(legs + 1, self.order);
            for ch in letters {
                let m = match ch {
                    b'A' => (1, 0, 0),
                    b'E' => (0, 1, 0),
                    _ => (0, 0, 1),
                };
                let mut prim = Self::zero(self.order);
                for slot in [leg, leg + 1] {
                    let mut key = vec![(0, 0, 0); legs + 1];
                    key[slot] = m;
                    prim.add(key, Rational::one());
                }
                acc = acc.times(&prim, rw);
            }
            let mut rest = Self::zero(self.order);
            let mut key: Key = k.clone();
            key[leg] = (0, 0, 0);
            key.insert(leg + 1, (0, 0, 0));
            rest.add(key, c.clone());
            out = out.plus(&acc.times(&rest, rw));
        }
        out
    }

    pub fn insert_unit_leg(&self, pos: usize) -> Self {
        let mut out = Self::zero(self.order);
        for (k, c) in &self.terms {
            let mut kk = k.clone();
            kk.insert(pos, (0, 0, 0));
            out.add(kk, c.clone());
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn from_tensor(t: &TensorElement) -> Self {
        let mut out = Self::zero(t.order());
        for (k, c) in t.terms() {
            assert!(c.is_real(), "oracle handles real coefficients only");
            out.add(k[..t.legs()].iter().map(|m| (m.a, m.e, m.d)).collect(), c.re.clone());
        }
        out
    }

    pub fn from_borel(x: &BorelElement) -> Self {
        Self::from_tensor(&TensorElement::from_borel(x))
    }
}

pub fn mono(m: (u32, u32, u32)) -> Mono {
    Mono::new(m.0, m.1, m.2)
}

/// `F_u` built from scratch with oracle arithmetic.
pub fn oracle_twist(u: &Rational, order: usize, rw: &mut Rewriter) -> Oracle {
    let da = Oracle::term(vec![(0, 0, 1)], Rational::one(), order)
        .times(&Oracle::term(vec![(1, 0, 0)], Rational::one(), order), rw);
    let da_left = da.insert_unit_leg(1);
    let da_right = da.insert_unit_leg(0);
    let outer = da_left.plus(&da_right).scale(&-u.clone()).exp(2, rw);
    let mut log = Oracle::zero(order);
    for k in 1..=order as u32 {
        let sign = if k % 2 == 1 { -1 } else { 1 };
        log.add(vec![(k, 0, 0), (0, 0, 1)], Rational::new(sign.into(), (k as i64).into()));
    }
    let jordan = log.exp(2, rw);
    let inner = da.coproduct_leg(0, rw).scale(u).exp(2, rw);
    outer.times(&jordan, rw).times(&inner, rw)
}

pub fn cocycle_residual(f: &Oracle, rw: &mut Rewriter) -> Oracle {
    let lhs = f.insert_unit_leg(2).times(&f.coproduct_leg(0, rw), rw);
    let rhs = f.insert_unit_leg(0).times(&f.coproduct_leg(1, rw), rw);
    lhs.minus(&rhs)
}
