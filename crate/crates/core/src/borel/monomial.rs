use std::fmt;

use serde::{Deserialize, Serialize};

/// PBW monomial `A^a E^e D^d`.
///
/// `A` carries deformation grade 1, `E` and `D` grade 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct Mono {
    pub a: u32,
    pub e: u32,
    pub d: u32,
}

impl Mono {
    pub const ONE: Mono = Mono { a: 0, e: 0, d: 0 };
    pub const A: Mono = Mono { a: 1, e: 0, d: 0 };
    pub const E: Mono = Mono { a: 0, e: 1, d: 0 };
    pub const D: Mono = Mono { a: 0, e: 0, d: 1 };

    pub const fn new(a: u32, e: u32, d: u32) -> Self {
        Mono { a, e, d }
    }

    pub fn grade(&self) -> usize {
        self.a as usize
    }

    pub fn total_degree(&self) -> u32 {
        self.a + self.e + self.d
    }

    pub fn is_one(&self) -> bool {
        *self == Mono::ONE
    }

    /// Graded-lex key used for deterministic rendering.
    pub(crate) fn render_key(&self) -> [u32; 3] {
        [self.a, self.e, self.d]
    }
}

impl fmt::Display for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut parts = Vec::with_capacity(3);
        for (sym, p) in [("A", self.a), ("E", self.e), ("D", self.d)] {
            match p {
                0 => {}
                1 => parts.push(sym.to_string()),
                _ => parts.push(format!("{sym}^{p}")),
            }
        }
        write!(f, "{}", parts.join(" "))
    }
}

pub(crate) fn binomial(n: u32, k: u32) -> i128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: i128 = 1;
    for j in 0..k {
        acc = acc * (n - j) as i128 / (j + 1) as i128;
    }
    acc
}

/// Normal-ordered product of two monomials.
///
/// Uses `D^b A^c E^f = A^c E^f (D - c - f)^b`, so
/// `(A^a1 E^e1 D^d1)(A^a2 E^e2 D^d2) = A^(a1+a2) E^(e1+e2) (D - a2 - e2)^d1 D^d2`.
/// Coefficients are integers.
pub fn mono_mul(x: Mono, y: Mono) -> Vec<(Mono, i128)> {
    let a = x.a + y.a;
    let e = x.e + y.e;
    let shift = -((y.a + y.e) as i128);
    if shift == 0 || x.d == 0 {
        return vec![(Mono { a, e, d: x.d + y.d }, 1)];
    }
    (0..=x.d)
        .map(|j| {
            let c = binomial(x.d, j)
                .checked_mul(shift.checked_pow(x.d - j).expect("PBW reordering coefficient overflow"))
                .expect("PBW reordering coefficient overflow");
            (Mono { a, e, d: j + y.d }, c)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display() {
        assert_eq!(Mono::new(2, 1, 3).to_string(), "A^2 E D^3");
        assert_eq!(Mono::ONE.to_string(), "1");
        assert_eq!(Mono::D.to_string(), "D");
    }

    #[test]
    fn d_times_a() {
        // DA = AD - A
        assert_eq!(mono_mul(Mono::D, Mono::A), vec![(Mono::new(1, 0, 0), -1), (Mono::new(1, 0, 1), 1)]);
        assert_eq!(mono_mul(Mono::A, Mono::D), vec![(Mono::new(1, 0, 1), 1)]);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(4, 0), 1);
        assert_eq!(binomial(3, 4), 0);
    }
}
