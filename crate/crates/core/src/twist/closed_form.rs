//! Closed-form expressions for the deformed Hopf structure and `ln F_u`,
//! expanded as truncated series with factor order exactly as written.

use crate::borel::{inverse_series, BorelElement, Mono, TensorElement};
use crate::error::Result;
use crate::scalar::{GaussianRational, Rational};

use super::family::scalar;

fn one() -> GaussianRational {
    GaussianRational::one()
}

/// `1 + c·A`.
pub fn one_plus_ca(c: &GaussianRational, order: usize) -> BorelElement {
    &BorelElement::one(order) + &BorelElement::gen_a(order).scale(c)
}

/// `(1 + c·A)^{-1} = Σ (-c·A)^k`.
pub fn inv_one_plus_ca(c: &GaussianRational, order: usize) -> BorelElement {
    inverse_series(&one_plus_ca(c, order)).expect("1 + cA is invertible")
}

fn tensor(x: &BorelElement, y: &BorelElement) -> TensorElement {
    TensorElement::from_legs(&[x, y]).expect("matching orders")
}

/// `1⊗1 + u(1-u) A⊗A`.
fn cross_factor(u: &Rational, order: usize) -> TensorElement {
    let uc = scalar(u);
    let c = &uc * &(&one() - &uc);
    let a = BorelElement::gen_a(order);
    &TensorElement::one(2, order) + &tensor(&a, &a).scale(&c)
}

/// `(E⊗(1-uA) + (1+(1-u)A)⊗E) · (1⊗1 + u(1-u)A⊗A)^{-1}`.
pub fn coproduct_e(u: &Rational, order: usize) -> Result<TensorElement> {
    let uc = scalar(u);
    let e = BorelElement::gen_e(order);
    let numerator = &tensor(&e, &one_plus_ca(&-&uc, order)) + &tensor(&one_plus_ca(&(&one() - &uc), order), &e);
    Ok(&numerator * &inverse_series(&cross_factor(u, order))?)
}

/// `(D⊗(1-uA)^{-1} + (1+(1-u)A)^{-1}⊗D) · (1⊗1 + u(1-u)A⊗A)`.
pub fn coproduct_d(u: &Rational, order: usize) -> TensorElement {
    let uc = scalar(u);
    let d = BorelElement::gen_d(order);
    let left = &tensor(&d, &inv_one_plus_ca(&-&uc, order)) + &tensor(&inv_one_plus_ca(&(&one() - &uc), order), &d);
    &left * &cross_factor(u, order)
}

/// `S(E) = -E · (1 + (1-2u)A)^{-1}`.
pub fn antipode_e(u: &Rational, order: usize) -> BorelElement {
    let uc = scalar(u);
    let c = &one() - &(&uc + &uc);
    -&(&BorelElement::gen_e(order) * &inv_one_plus_ca(&c, order))
}

/// `S(D) = -D - (1-u)AD + uDA - u(1-u)² A² / ((1+(1-u)A)(1-uA))`.
pub fn antipode_d(u: &Rational, order: usize) -> BorelElement {
    let uc = scalar(u);
    let one_minus_u = &one() - &uc;
    let d = BorelElement::gen_d(order);
    let a = BorelElement::gen_a(order);
    let ad = &a * &d;
    let da = &d * &a;
    let a2 = &a * &a;
    let denominator = &inv_one_plus_ca(&one_minus_u, order) * &inv_one_plus_ca(&-&uc, order);
    let last = (&a2 * &denominator).scale(&(&uc * &(&one_minus_u * &one_minus_u)));
    let mut s = -&d;
    s = &s - &ad.scale(&one_minus_u);
    s = &s + &da.scale(&uc);
    &s - &last
}

/// `S(D) = -D - (1-u)AD + uDA - u(1-u) A² / (1-uA)`, the form the conjugation
/// `χ S0(D) χ⁻¹` actually produces. It agrees with [`antipode_d`] only at `u ∈ {0, 1}`.
pub fn antipode_d_corrected(u: &Rational, order: usize) -> BorelElement {
    let uc = scalar(u);
    let one_minus_u = &one() - &uc;
    let d = BorelElement::gen_d(order);
    let a = BorelElement::gen_a(order);
    let a2 = &a * &a;
    let last = (&a2 * &inv_one_plus_ca(&-&uc, order)).scale(&(&uc * &one_minus_u));
    let mut s = -&d;
    s = &s - &(&a * &d).scale(&one_minus_u);
    s = &s + &(&d * &a).scale(&uc);
    &s - &last
}

/// The displayed `u = 0` and `u = 1` forms of `(ΔE, ΔD, S(E), S(D))`.
pub struct SpecialCase {
    pub coproduct_e: TensorElement,
    pub coproduct_d: TensorElement,
    pub antipode_e: BorelElement,
    pub antipode_d: BorelElement,
}

pub fn special_case(u: &Rational, order: usize) -> Option<SpecialCase> {
    use num_traits::{One, Zero};
    let unit = BorelElement::one(order);
    let e = BorelElement::gen_e(order);
    let d = BorelElement::gen_d(order);
    let m1 = -one();
    if u.is_zero() {
        // Δp = p⊗1 + (1+A)⊗p, ΔD = D⊗1 + (1+A)^{-1}⊗D, S(p) = -p/(1+A), S(D) = -(1+A)D
        let one_plus_a = one_plus_ca(&one(), order);
        Some(SpecialCase {
            coproduct_e: &tensor(&e, &unit) + &tensor(&one_plus_a, &e),
            coproduct_d: &tensor(&d, &unit) + &tensor(&inv_one_plus_ca(&one(), order), &d),
            antipode_e: -&(&e * &inv_one_plus_ca(&one(), order)),
            antipode_d: -&(&one_plus_a * &d),
        })
    } else if u.is_one() {
        // Δp = p⊗(1-A) + 1⊗p, ΔD = D⊗(1-A)^{-1} + 1⊗D, S(p) = -p/(1-A), S(D) = -D(1-A)
        let one_minus_a = one_plus_ca(&m1, order);
        Some(SpecialCase {
            coproduct_e: &tensor(&e, &one_minus_a) + &tensor(&unit, &e),
            coproduct_d: &tensor(&d, &inv_one_plus_ca(&m1, order)) + &tensor(&unit, &d),
            antipode_e: -&(&e * &inv_one_plus_ca(&m1, order)),
            antipode_d: -&(&d * &one_minus_a),
        })
    } else {
        None
    }
}

/// The closed grade-1, 2 and 3 parts of `ln F_u`, products taken in the
/// order written.
pub fn log_grades(u: &Rational, order: usize) -> [TensorElement; 3] {
    let uc = scalar(u);
    let w = &one() - &uc; // 1 - u
    let a = BorelElement::gen_a(order);
    let d = BorelElement::gen_d(order);
    let unit = BorelElement::one(order);
    let a2 = &a * &a;
    let d_ua = tensor(&d, &a).scale(&uc); // D⊗uA
    let wa_d = tensor(&a, &d).scale(&w); // (1-u)A⊗D
    let r = GaussianRational::ratio;

    let g1 = &d_ua - &wa_d;

    let g2 = (&(&d_ua + &wa_d) * &(&tensor(&unit, &a).scale(&uc) + &tensor(&a, &unit).scale(&w))).scale(&r(1, 2));

    let one_u2a2 = tensor(&unit, &a2).scale(&(&uc * &uc)); // 1⊗u²A²
    let wa_ua = tensor(&a, &a).scale(&(&w * &uc)); // (1-u)A⊗uA
    let w2a2_one = tensor(&a2, &unit).scale(&(&w * &w)); // (1-u)²A²⊗1
    let first = &(&one_u2a2.scale(&r(1, 3)) + &wa_ua.scale(&r(1, 6))) - &w2a2_one.scale(&r(1, 6));
    let second = &(&w2a2_one.scale(&r(1, 3)) + &wa_ua.scale(&r(1, 6))) - &one_u2a2.scale(&r(1, 6));
    let g3 = &(&d_ua * &first) - &(&wa_d * &second);

    [g1, g2, g3]
}

/// `-ln(1+A)⊗D` (u = 0) or `-D⊗ln(1-A)` (u = 1): the full logarithm in the
/// two degenerate cases.
pub fn log_special(u: &Rational, order: usize) -> Option<TensorElement> {
    use num_traits::{One, Zero};
    let d = BorelElement::gen_d(order);
    if u.is_zero() {
        Some(-&tensor(&super::family::log_one_plus_a(1, order), &d))
    } else if u.is_one() {
        Some(-&tensor(&d, &super::family::log_one_plus_a(-1, order)))
    } else {
        None
    }
}

/// Classical r-matrix `A⊗D - D⊗A`.
pub fn classical_r(order: usize) -> TensorElement {
    &TensorElement::monomial(&[Mono::A, Mono::D], one(), order)
        - &TensorElement::monomial(&[Mono::D, Mono::A], one(), order)
}
