use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::scalar::GaussianRational;
use crate::trunc_poly::TruncPoly;

/// `x^α p^β` with all coordinates to the left of all momenta.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylKey {
    pub x: Vec<u32>,
    pub p: Vec<u32>,
}

impl WeylKey {
    pub fn unit(dim: usize) -> Self {
        WeylKey { x: vec![0; dim], p: vec![0; dim] }
    }

    pub fn degree(&self) -> u32 {
        self.x.iter().sum::<u32>() + self.p.iter().sum::<u32>()
    }

    pub fn is_unit(&self) -> bool {
        self.degree() == 0
    }

    pub fn x_degree(&self) -> u32 {
        self.x.iter().sum()
    }
}

impl Ord for WeylKey {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.degree(), &self.x, &self.p).cmp(&(other.degree(), &other.x, &other.p))
    }
}

impl PartialOrd for WeylKey {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for WeylKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (sym, exps) in [("x", &self.x), ("p", &self.p)] {
            for (mu, &k) in exps.iter().enumerate() {
                match k {
                    0 => {}
                    1 => parts.push(format!("{sym}{mu}")),
                    _ => parts.push(format!("{sym}{mu}^{k}")),
                }
            }
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}

fn falling(n: u32, k: u32) -> i128 {
    (0..k).fold(1i128, |acc, j| acc.checked_mul((n - j) as i128).expect("Weyl coefficient overflow"))
}

fn binomial(n: u32, k: u32) -> i128 {
    falling(n, k) / falling(k, k)
}

fn minus_i_pow(k: u32) -> GaussianRational {
    GaussianRational::i().pow(k).scale(&crate::borel::int_rat(if k.is_multiple_of(2) { 1 } else { -1 }))
}

/// Normal-ordered product of two basis monomials: `p^β x^γ` is reordered using
/// `p_μ^b x^μ^c = Σ_k C(b,k) c!/(c-k)! (-i)^k x^{c-k} p^{b-k}` in each coordinate.
pub(crate) fn key_mul(l: &WeylKey, r: &WeylKey) -> Vec<(WeylKey, GaussianRational)> {
    let dim = l.x.len();
    let mut partial: Vec<(Vec<u32>, i128)> = vec![(Vec::with_capacity(dim), 1)];
    for mu in 0..dim {
        let (b, c) = (l.p[mu], r.x[mu]);
        let mut next = Vec::with_capacity(partial.len() * (b.min(c) as usize + 1));
        for (ks, coef) in &partial {
            for k in 0..=b.min(c) {
                let mut kk = ks.clone();
                kk.push(k);
                let f = binomial(b, k).checked_mul(falling(c, k)).expect("Weyl coefficient overflow");
                next.push((kk, coef.checked_mul(f).expect("Weyl coefficient overflow")));
            }
        }
        partial = next;
    }
    partial
        .into_iter()
        .map(|(ks, coef)| {
            let total: u32 = ks.iter().sum();
            let key = WeylKey {
                x: (0..dim).map(|mu| l.x[mu] + r.x[mu] - ks[mu]).collect(),
                p: (0..dim).map(|mu| l.p[mu] - ks[mu] + r.p[mu]).collect(),
            };
            (key, &minus_i_pow(total) * &crate::borel::int_gauss(coef))
        })
        .collect()
}

/// Element of the `n`-dimensional Heisenberg algebra `[p_μ, x^ν] = -iδ_μ^ν`
/// with coefficients polynomial in `h`, truncated at `h^order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylElement {
    dim: usize,
    order: usize,
    terms: BTreeMap<WeylKey, TruncPoly>,
}

impl WeylElement {
    pub fn zero(dim: usize, order: usize) -> Self {
        WeylElement { dim, order, terms: BTreeMap::new() }
    }

    pub fn one(dim: usize, order: usize) -> Self {
        Self::constant(GaussianRational::one(), dim, order)
    }

    pub fn constant(c: GaussianRational, dim: usize, order: usize) -> Self {
        Self::term(WeylKey::unit(dim), TruncPoly::constant(c, order), dim, order)
    }

    /// `c·h^k` as a central element.
    pub fn h_power(c: GaussianRational, k: usize, dim: usize, order: usize) -> Self {
        Self::term(WeylKey::unit(dim), TruncPoly::monomial(c, k, order), dim, order)
    }

    pub fn term(key: WeylKey, coeff: TruncPoly, dim: usize, order: usize) -> Self {
        let mut w = Self::zero(dim, order);
        w.add_term(key, &coeff);
        w
    }

    pub fn x(mu: usize, dim: usize, order: usize) -> Self {
        let mut key = WeylKey::unit(dim);
        key.x[mu] = 1;
        Self::term(key, TruncPoly::one(order), dim, order)
    }

    pub fn p(mu: usize, dim: usize, order: usize) -> Self {
        let mut key = WeylKey::unit(dim);
        key.p[mu] = 1;
        Self::term(key, TruncPoly::one(order), dim, order)
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

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&WeylKey, &TruncPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, key: &WeylKey) -> TruncPoly {
        self.terms.get(key).cloned().unwrap_or_else(|| TruncPoly::zero(self.order))
    }

    /// True when no coordinate `x` appears, i.e. the element is a function of momenta.
    pub fn is_momentum_only(&self) -> bool {
        self.terms.keys().all(|k| k.x_degree() == 0)
    }

    pub fn add_term(&mut self, key: WeylKey, c: &TruncPoly) {
        if c.is_zero() {
            return;
        }
        let c = if c.order() == self.order { c.clone() } else { c.truncate(self.order) };
        match self.terms.get_mut(&key) {
            Some(existing) => {
                existing.add_assign_unchecked(&c);
                if existing.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                if !c.is_zero() {
                    self.terms.insert(key, c);
                }
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
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(self.dim, self.order);
        for (kl, cl) in &self.terms {
            for (kr, cr) in &other.terms {
                let c = cl.mul_unchecked(cr);
                if c.is_zero() {
                    continue;
                }
                for (key, f) in key_mul(kl, kr) {
                    out.add_term(key, &c.scale(&f));
                }
            }
        }
        Ok(out)
    }

    /// Product with `x` and `p` treated as commuting symbols (normal ordering `:…:`).
    pub fn try_normal_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(self.dim, self.order);
        for (kl, cl) in &self.terms {
            for (kr, cr) in &other.terms {
                let key = WeylKey {
                    x: kl.x.iter().zip(&kr.x).map(|(a, b)| a + b).collect(),
                    p: kl.p.iter().zip(&kr.p).map(|(a, b)| a + b).collect(),
                };
                out.add_term(key, &cl.mul_unchecked(cr));
            }
        }
        Ok(out)
    }

    /// `[self, other]`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.try_mul(other)?.try_sub(&other.try_mul(self)?)
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        self.scale_poly(&TruncPoly::constant(c.clone(), self.order))
    }

    pub fn scale_poly(&self, c: &TruncPoly) -> Self {
        let mut out = Self::zero(self.dim, self.order);
        for (k, v) in &self.terms {
            out.add_term(k.clone(), &v.mul_unchecked(c));
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(self.dim, self.order), |acc, _| &acc * self)
    }

    /// Terms ordered by `(degree, x-exponents, p-exponents)` as a JSON array.
    pub fn to_json(&self) -> Value {
        Value::Array(self.terms.iter().map(|(k, c)| json!({ "x": k.x, "p": k.p, "coeff": c.to_string() })).collect())
    }
}

fn poly_is_single_term(c: &TruncPoly) -> bool {
    c.coeffs().iter().filter(|a| !a.is_zero()).count() == 1
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (k, c) in &self.terms {
            let poly = c.to_string();
            let (negative, body) = match poly.strip_prefix('-') {
                Some(rest) if poly_is_single_term(c) => (true, rest.to_string()),
                _ => (false, poly),
            };
            let body = if !poly_is_single_term(c) { format!("({body})") } else { body };
            let term = match (k.is_unit(), body.as_str()) {
                (true, _) => body.clone(),
                (false, "1") => k.to_string(),
                (false, _) => format!("{body} {k}"),
            };
            if out.is_empty() {
                out = if negative { format!("-{term}") } else { term };
            } else {
                out.push_str(if negative { " - " } else { " + " });
                out.push_str(&term);
            }
        }
        write!(f, "{out}")
    }
}

impl Add for &WeylElement {
    type Output = WeylElement;
    fn add(self, o: &WeylElement) -> WeylElement {
        self.try_add(o).expect("Weyl addition")
    }
}

impl Sub for &WeylElement {
    type Output = WeylElement;
    fn sub(self, o: &WeylElement) -> WeylElement {
        self.try_sub(o).expect("Weyl subtraction")
    }
}

impl Mul for &WeylElement {
    type Output = WeylElement;
    fn mul(self, o: &WeylElement) -> WeylElement {
        self.try_mul(o).expect("Weyl product")
    }
}

impl Neg for &WeylElement {
    type Output = WeylElement;
    fn neg(self) -> WeylElement {
        self.scale(&-GaussianRational::one())
    }
}
