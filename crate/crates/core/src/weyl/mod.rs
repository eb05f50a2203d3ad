//! Heisenberg-algebra realizations of the κ-Minkowski coordinates.
//!
//! The deformation vector is `a^μ = h v^μ` with `v` exact and rational; all
//! coefficients are polynomials in `h`.

mod element;
mod realization;
mod tensor;

pub use element::{WeylElement, WeylKey};
pub use realization::{
    coproduct_from_adx, extract_xhat_from_coproduct, extract_xhat_from_twist, extract_yhat_from_coproduct,
    extract_yhat_from_twist, normal_ordered_exp, normal_ordered_inverse_twist_action, realization_table, realize_xhat,
    realize_yhat, verify_adx, verify_kappa_minkowski, verify_normal_ordered_twist, verify_realizations, Generators,
    RealizationSpec,
};
pub use tensor::WeylTensor;
