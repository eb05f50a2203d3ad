//! PBW computer algebra for the solvable Lie algebra
//! `{A, E, D | [A,D] = A, [E,D] = E, [A,E] = 0}` and its tensor powers.
//!
//! `A` stands for `-a·p` (it carries one power of the deformation parameter),
//! `E` for a single momentum component and `D` for the dilatation.

mod element;
mod hopf;
mod monomial;
mod render;
mod series;
mod tensor;

pub use element::BorelElement;
pub use hopf::{
    antipode0, antipode0_mono, antipode0_on_leg, coproduct0, coproduct0_mono, coproduct0_on_leg, counit0, counit0_mono,
    counit0_on_leg,
};
pub use monomial::{mono_mul, Mono};
pub use series::{exp_series, inverse_series, log_series, GradedAlgebra};
pub use tensor::{TensorElement, TensorKey, MAX_LEGS};

use num_bigint::BigInt;

use crate::scalar::{GaussianRational, Rational};

pub(crate) fn int_rat(k: i128) -> Rational {
    Rational::from_integer(BigInt::from(k))
}

pub(crate) fn int_gauss(k: i128) -> GaussianRational {
    GaussianRational::real(int_rat(k))
}
