//! Exact computer algebra for the one-parameter family of Jordanian twists
//!
//! `F_u = exp(-u(DA⊗1 + 1⊗DA)) · exp(-ln(1+A)⊗D) · exp(Δ0(u·DA))`
//!
//! and for the κ-Minkowski star-product calculus they induce.
//!
//! - [`scalar`], [`trunc_poly`]: exact coefficients.
//! - [`borel`]: PBW algebra of `{A, E, D}` and its tensor powers.
//! - [`twist`]: the twist family and its symbolic identity checks.
//! - [`weyl`]: Heisenberg-algebra realizations of the noncommutative coordinates.
//! - [`momentum`]: momentum-space functions (deformed addition, `K`, `K⁻¹`, `P`).
//! - [`expand`]: rendered expansions for the `expand` command.
//! - [`suite`]: the verification matrix driven by the CLI and the acceptance tests.

pub mod borel;
pub mod error;
pub mod expand;
pub mod momentum;
pub mod scalar;
pub mod suite;
pub mod trunc_poly;
pub mod twist;
pub mod weyl;

pub use error::{Error, Result};
pub use scalar::{GaussianRational, Rational};
pub use trunc_poly::TruncPoly;
