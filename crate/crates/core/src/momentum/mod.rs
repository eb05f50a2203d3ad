//! Momentum-space calculus of the star product: deformed addition `D(k,q)`,
//! the momentum antipode, `K`, `K⁻¹` and `P(k,q)`.
//!
//! `D` and `S` are rational and evaluate exactly on [`Rational`]
//! inputs; `K`, `K⁻¹` and `P` involve `exp`/`ln` and run on `f64`.

mod context;
mod float;
mod verify;

pub use context::{DeformationContext, Field};
pub use float::{rel_dev, OdeCheck, StarMethod};
pub use verify::{
    random_rational_momentum, verify_algebroid, verify_kinverse, verify_ode, verify_star_associativity,
    AssociativityStats, MomentumSetup,
};

use num_traits::{One, Zero};

use crate::scalar::Rational;

/// Coefficients `c_1, …, c_n` of `K⁻¹_μ(k) = k_μ Σ c_n (a·k)^{n-1}`,
/// `c_n = ((-1)^{n+1} u^n + (1-u)^n) / n`.
pub fn k_inverse_series(u: &Rational, n: usize) -> Vec<Rational> {
    let w = Rational::one() - u;
    let mut up = Rational::one();
    let mut wp = Rational::one();
    (1..=n)
        .map(|k| {
            up *= u;
            wp *= &w;
            let sign = if k % 2 == 1 { Rational::one() } else { -Rational::one() };
            (sign * &up + &wp) / Rational::from_integer((k as i64).into())
        })
        .map(|c| if c.is_zero() { Rational::zero() } else { c })
        .collect()
}
