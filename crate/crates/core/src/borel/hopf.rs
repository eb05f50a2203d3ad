//! Undeformed Hopf structure `(Δ0, ε, S0)` of `U({A, E, D})`.

use super::element::BorelElement;
use super::monomial::{binomial, Mono};
use super::tensor::TensorElement;
use crate::error::Result;
use crate::scalar::GaussianRational;

/// Δ0 of a monomial. Since `A⊗1` and `1⊗A` commute (likewise for `E`, `D`),
/// `Δ0(A^a E^e D^d)` is a sum of already normal-ordered binomial terms.
pub fn coproduct0_mono(m: Mono, order: usize) -> TensorElement {
    let mut t = TensorElement::zero(2, order);
    for i in 0..=m.a {
        for j in 0..=m.e {
            for k in 0..=m.d {
                let c = binomial(m.a, i) * binomial(m.e, j) * binomial(m.d, k);
                t.add_term(
                    [Mono::new(i, j, k), Mono::new(m.a - i, m.e - j, m.d - k), Mono::ONE],
                    crate::borel::int_gauss(c),
                );
            }
        }
    }
    t
}

/// The algebra homomorphism with `Δ0(g) = g⊗1 + 1⊗g` on generators.
pub fn coproduct0(x: &BorelElement) -> TensorElement {
    let mut out = TensorElement::zero(2, x.order());
    for (m, c) in x.terms() {
        for (k, cm) in coproduct0_mono(*m, x.order()).terms() {
            out.add_term(*k, c * cm);
        }
    }
    out
}

/// Applies Δ0 to one leg, producing a tensor with one more leg.
pub fn coproduct0_on_leg(t: &TensorElement, leg: usize) -> Result<TensorElement> {
    let order = t.order();
    t.split_leg(leg, |m| coproduct0_mono(m, order))
}

pub fn counit0_mono(m: Mono) -> GaussianRational {
    if m.is_one() {
        GaussianRational::one()
    } else {
        GaussianRational::zero()
    }
}

pub fn counit0(x: &BorelElement) -> GaussianRational {
    x.coeff(&Mono::ONE)
}

/// `(ε ⊗ id)` or `(id ⊗ ε)` depending on `leg`.
pub fn counit0_on_leg(t: &TensorElement, leg: usize) -> Result<TensorElement> {
    t.contract_leg(leg, counit0_mono)
}

/// `S0(A^a E^e D^d) = (-D)^d (-E)^e (-A)^a = (-1)^(a+e+d) A^a E^e (D - a - e)^d`.
pub fn antipode0_mono(m: Mono, order: usize) -> BorelElement {
    let sign: i128 = if (m.a + m.e + m.d).is_multiple_of(2) { 1 } else { -1 };
    let shift = -((m.a + m.e) as i128);
    let mut out = BorelElement::zero(order);
    for j in 0..=m.d {
        let c = sign * binomial(m.d, j) * shift.pow(m.d - j);
        out.add_term(Mono::new(m.a, m.e, j), crate::borel::int_gauss(c));
    }
    out
}

/// Antihomomorphism with `S0(g) = -g` on generators.
pub fn antipode0(x: &BorelElement) -> BorelElement {
    let mut out = BorelElement::zero(x.order());
    for (m, c) in x.terms() {
        for (mm, cm) in antipode0_mono(*m, x.order()).terms() {
            out.add_term(*mm, c * cm);
        }
    }
    out
}

pub fn antipode0_on_leg(t: &TensorElement, leg: usize) -> TensorElement {
    let order = t.order();
    t.map_leg(leg, |m| antipode0_mono(m, order))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: i64) -> GaussianRational {
        GaussianRational::from_int(n)
    }

    #[test]
    fn primitive_d() {
        let n = 3;
        let expected = &TensorElement::monomial(&[Mono::D, Mono::ONE], g(1), n)
            + &TensorElement::monomial(&[Mono::ONE, Mono::D], g(1), n);
        assert_eq!(coproduct0(&BorelElement::gen_d(n)), expected);
    }

    #[test]
    fn coproduct_of_da() {
        let n = 3;
        let d = BorelElement::gen_d(n);
        let a = BorelElement::gen_a(n);
        let da = &d * &a;
        let direct = &coproduct0(&d) * &coproduct0(&a);
        assert_eq!(coproduct0(&da), direct);
        // DA⊗1 + D⊗A + A⊗D + 1⊗DA
        let one = BorelElement::one(n);
        let expected = [
            TensorElement::from_legs(&[&da, &one]).unwrap(),
            TensorElement::from_legs(&[&d, &a]).unwrap(),
            TensorElement::from_legs(&[&a, &d]).unwrap(),
            TensorElement::from_legs(&[&one, &da]).unwrap(),
        ]
        .iter()
        .fold(TensorElement::zero(2, n), |acc, t| &acc + t);
        assert_eq!(coproduct0(&da), expected);
    }

    #[test]
    fn counit_and_antipode() {
        let n = 3;
        let ad = BorelElement::monomial(Mono::new(1, 0, 1), g(1), n);
        assert_eq!(counit0(&(&BorelElement::one(n) + &ad)), g(1));
        let expected = &ad - &BorelElement::gen_a(n);
        assert_eq!(antipode0(&ad), expected);
        let d = BorelElement::gen_d(n);
        let hopf = antipode0_on_leg(&coproduct0(&d), 0).multiply_legs().unwrap();
        assert!(hopf.is_zero());
    }
}
