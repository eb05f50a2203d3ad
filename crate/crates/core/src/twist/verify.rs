//! Symbolic identity checks on a [`TwistFamily`]. Each check is a zero test on
//! an exact difference element.

use std::time::Instant;

use crate::borel::{
    coproduct0, coproduct0_on_leg, counit0_on_leg, exp_series, log_series, BorelElement, TensorElement,
};
use crate::error::{Error, Result};
use crate::scalar::Rational;

use super::closed_form::{self, special_case};
use super::deformed::Generator;
use super::family::{da, jordan_exponent, scalar, TwistFamily};
use super::report::{Residuals, VerificationReport};

impl Residuals {
    fn tensor(&mut self, name: &str, lhs: &TensorElement, rhs: &TensorElement) {
        let diff = lhs - rhs;
        self.push(name, &diff, diff.is_zero());
    }

    fn borel(&mut self, name: &str, lhs: &BorelElement, rhs: &BorelElement) {
        let diff = lhs - rhs;
        self.push(name, &diff, diff.is_zero());
    }

    fn report(self, identity: &str, fam: &TwistFamily, started: Instant) -> VerificationReport {
        self.finish(identity, &fam.u, fam.order, started)
    }
}

fn require_order(fam: &TwistFamily, min: usize, identity: &str) -> Result<()> {
    if fam.order < min {
        return Err(Error::Precondition(format!("{identity} requires order N ≥ {min}, got {}", fam.order)));
    }
    Ok(())
}

/// `(F⊗1)(Δ0⊗id)F = (1⊗F)(id⊗Δ0)F` in the three-leg algebra.
pub fn verify_cocycle(fam: &TwistFamily) -> Result<VerificationReport> {
    require_order(fam, 2, "cocycle")?;
    let started = Instant::now();
    let lhs = &fam.twist.insert_unit_leg(2)? * &coproduct0_on_leg(&fam.twist, 0)?;
    let rhs = &fam.twist.insert_unit_leg(0)? * &coproduct0_on_leg(&fam.twist, 1)?;
    let mut r = Residuals::new();
    r.tensor("(F⊗1)(Δ0⊗id)F - (1⊗F)(id⊗Δ0)F", &lhs, &rhs);
    Ok(r.report("cocycle", fam, started))
}

/// `(ε⊗id)F = 1 = (id⊗ε)F`, plus `F·F⁻¹ = 1⊗1 = F⁻¹·F`.
pub fn verify_normalization(fam: &TwistFamily) -> Result<VerificationReport> {
    let started = Instant::now();
    let one = BorelElement::one(fam.order);
    let unit = TensorElement::one(2, fam.order);
    let mut r = Residuals::new();
    r.borel("(ε⊗id)F - 1", &counit0_on_leg(&fam.twist, 0)?.to_borel()?, &one);
    r.borel("(id⊗ε)F - 1", &counit0_on_leg(&fam.twist, 1)?.to_borel()?, &one);
    r.tensor("F·F⁻¹ - 1⊗1", &(&fam.twist * &fam.inverse), &unit);
    r.tensor("F⁻¹·F - 1⊗1", &(&fam.inverse * &fam.twist), &unit);
    Ok(r.report("normalization", fam, started))
}

/// Conjugated coproducts against the closed forms, coassociativity, the counit
/// axiom and, at `u ∈ {0, 1}`, the displayed special cases.
pub fn verify_coproduct(fam: &TwistFamily) -> Result<VerificationReport> {
    let started = Instant::now();
    let n = fam.order;
    let mut r = Residuals::new();
    let de = fam.deformed_coproduct(Generator::E);
    let dd = fam.deformed_coproduct(Generator::D);
    r.tensor("Δp - closed form", &de, &closed_form::coproduct_e(&fam.u, n)?);
    r.tensor("ΔD - closed form", &dd, &closed_form::coproduct_d(&fam.u, n));
    for (g, delta) in [(Generator::E, &de), (Generator::D, &dd)] {
        let name = g.name();
        let left = fam.coproduct_on_leg(delta, 0)?;
        let right = fam.coproduct_on_leg(delta, 1)?;
        r.tensor(&format!("(Δ⊗id)Δ{name} - (id⊗Δ)Δ{name}"), &left, &right);
        let x = g.element(n);
        r.borel(&format!("(ε⊗id)Δ{name} - {name}"), &counit0_on_leg(delta, 0)?.to_borel()?, &x);
        r.borel(&format!("(id⊗ε)Δ{name} - {name}"), &counit0_on_leg(delta, 1)?.to_borel()?, &x);
    }
    if let Some(sc) = special_case(&fam.u, n) {
        r.tensor("Δp - displayed special case", &de, &sc.coproduct_e);
        r.tensor("ΔD - displayed special case", &dd, &sc.coproduct_d);
    }
    Ok(r.report("coproduct", fam, started))
}

/// Conjugated antipodes against the closed forms, `χ⁻¹ = μ((S0⊗1)F⁻¹)`, the
/// antipode axioms and, at `u ∈ {0, 1}`, the displayed special cases.
pub fn verify_antipode(fam: &TwistFamily) -> Result<VerificationReport> {
    let started = Instant::now();
    let n = fam.order;
    let mut r = Residuals::new();
    let (_, chi_inv) = fam.chi_pair()?;
    r.borel("χ⁻¹ - μ((S0⊗1)F⁻¹)", &chi_inv, &fam.chi_inverse_from_twist());
    let se = fam.deformed_antipode(Generator::E)?;
    let sd = fam.deformed_antipode(Generator::D)?;
    r.borel("S(p) - closed form", &se, &closed_form::antipode_e(&fam.u, n));
    r.borel("S(D) - closed form", &sd, &closed_form::antipode_d(&fam.u, n));
    r.borel("S(D) - corrected closed form", &sd, &closed_form::antipode_d_corrected(&fam.u, n));
    let zero = BorelElement::zero(n);
    for g in [Generator::E, Generator::D] {
        let name = g.name();
        let delta = fam.deformed_coproduct(g);
        let left = fam.antipode_on_leg(&delta, 0)?.multiply_legs()?;
        let right = fam.antipode_on_leg(&delta, 1)?.multiply_legs()?;
        r.borel(&format!("μ(S⊗id)Δ{name}"), &left, &zero);
        r.borel(&format!("μ(id⊗S)Δ{name}"), &right, &zero);
    }
    if let Some(sc) = special_case(&fam.u, n) {
        r.borel("S(p) - displayed special case", &se, &sc.antipode_e);
        r.borel("S(D) - displayed special case", &sd, &sc.antipode_d);
    }
    Ok(r.report("antipode", fam, started))
}

/// Grade-1 part of `R = F̃F⁻¹` is `A⊗D - D⊗A`, and `τ(R)·R = 1⊗1`.
pub fn verify_r_matrix(fam: &TwistFamily) -> Result<VerificationReport> {
    require_order(fam, 2, "rmatrix")?;
    let started = Instant::now();
    let n = fam.order;
    let rm = fam.r_matrix();
    let mut r = Residuals::new();
    r.tensor("R_0 - 1⊗1", &rm.grade_part(0), &TensorElement::one(2, n));
    r.tensor("R_1 - (A⊗D - D⊗A)", &rm.grade_part(1), &closed_form::classical_r(n));
    r.tensor("τ(R)·R - 1⊗1", &(&rm.flip()? * &rm), &TensorElement::one(2, n));
    Ok(r.report("rmatrix", fam, started))
}

/// `F_u = (ω⁻¹⊗ω⁻¹)·F_0·Δ0(ω)` with `ω = exp(u·DA)` and an independently built `F_0`.
pub fn verify_coboundary(fam: &TwistFamily) -> Result<VerificationReport> {
    let started = Instant::now();
    let n = fam.order;
    let uc = scalar(&fam.u);
    let omega = exp_series(&da(n).scale(&uc))?;
    let omega_inv = exp_series(&da(n).scale(&-&uc))?;
    let f0 = exp_series(&jordan_exponent(1, n)?.scale(&-crate::scalar::GaussianRational::one()))?;
    let rhs = &(&TensorElement::from_legs(&[&omega_inv, &omega_inv])? * &f0) * &coproduct0(&omega);
    let mut r = Residuals::new();
    r.borel("ω·ω⁻¹ - 1", &(&omega * &omega_inv), &BorelElement::one(n));
    r.tensor("F_u - (ω⁻¹⊗ω⁻¹)F_0Δ0(ω)", &fam.twist, &rhs);
    Ok(r.report("coboundary", fam, started))
}

/// `ln F_u` grades 1 to 3 against the closed expansion; at `u ∈ {0, 1}` the
/// full logarithm must also reduce to `-ln(1+A)⊗D` resp. `-D⊗ln(1-A)`.
pub fn verify_log_expansion(fam: &TwistFamily) -> Result<VerificationReport> {
    require_order(fam, 3, "logexp")?;
    let started = Instant::now();
    let log = log_series(&fam.twist)?;
    let expected = closed_form::log_grades(&fam.u, fam.order);
    let mut r = Residuals::new();
    r.tensor("(ln F)_0", &log.grade_part(0), &TensorElement::zero(2, fam.order));
    for (g, e) in expected.iter().enumerate() {
        r.tensor(&format!("(ln F)_{} - closed form", g + 1), &log.grade_part(g + 1), e);
    }
    if let Some(full) = closed_form::log_special(&fam.u, fam.order) {
        r.tensor("ln F - degenerate closed form", &log, &full);
    }
    Ok(r.report("logexp", fam, started))
}

/// Builds `F_u` at `(u, N)` and runs a check on it.
pub fn verify_at(
    check: fn(&TwistFamily) -> Result<VerificationReport>,
    u: &Rational,
    order: usize,
) -> Result<VerificationReport> {
    check(&TwistFamily::build(u, order)?)
}
