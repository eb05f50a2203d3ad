//! The twist family `F_u`, its deformed Hopf structure and the symbolic
//! identity checks.

pub mod closed_form;
mod deformed;
mod family;
mod report;
mod verify;

pub use deformed::{counit, Generator};
pub use family::{da, da_sum, jordan_exponent, log_one_plus_a, scalar, TwistAssembly, TwistFamily};
pub(crate) use report::Residuals;
pub use report::VerificationReport;
pub use verify::{
    verify_antipode, verify_at, verify_coboundary, verify_cocycle, verify_coproduct, verify_log_expansion,
    verify_normalization, verify_r_matrix,
};

/// The default parameter set `{0, 1/2, 1, 2, -1/3}`.
pub fn default_u_values() -> Vec<crate::scalar::Rational> {
    use crate::scalar::rat;
    vec![rat(0, 1), rat(1, 2), rat(1, 1), rat(2, 1), rat(-1, 3)]
}
