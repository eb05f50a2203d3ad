//! The twisted Hopf structure: `Δ(h) = F Δ0(h) F⁻¹` and
//! `S(h) = χ S0(h) χ⁻¹` with `χ = μ((1⊗S0)F)`.

use crate::borel::{
    antipode0, antipode0_mono, antipode0_on_leg, coproduct0, coproduct0_mono, inverse_series, BorelElement, Mono,
    TensorElement,
};
use crate::error::{Error, Result};

use super::family::TwistFamily;

/// Generators with a deformed coproduct and antipode.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    /// A single momentum component `p_μ`.
    E,
    /// Dilatation.
    D,
}

impl Generator {
    pub fn element(self, order: usize) -> BorelElement {
        match self {
            Generator::E => BorelElement::gen_e(order),
            Generator::D => BorelElement::gen_d(order),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Generator::E => "p",
            Generator::D => "D",
        }
    }
}

impl TwistFamily {
    /// `F Δ0(x) F⁻¹` for an arbitrary element.
    pub fn coproduct(&self, x: &BorelElement) -> TensorElement {
        &(&self.twist * &coproduct0(x)) * &self.inverse
    }

    pub fn deformed_coproduct(&self, g: Generator) -> TensorElement {
        self.coproduct(&g.element(self.order))
    }

    /// `(Δ⊗id)(t)` or `(id⊗Δ)(t)` for a two-leg tensor, computed as conjugation
    /// of `(Δ0⊗id)(t)` by `F⊗1` (resp. `1⊗F`).
    pub fn coproduct_on_leg(&self, t: &TensorElement, leg: usize) -> Result<TensorElement> {
        let order = self.order;
        let split = t.split_leg(leg, |m| coproduct0_mono(m, order))?;
        let pos = if leg == 0 { 2 } else { 0 };
        let f = self.twist.insert_unit_leg(pos)?;
        let f_inv = self.inverse.insert_unit_leg(pos)?;
        Ok(&(&f * &split) * &f_inv)
    }

    /// `χ = μ((1⊗S0)F)`.
    pub fn chi(&self) -> BorelElement {
        antipode0_on_leg(&self.twist, 1).multiply_legs().expect("two-leg twist")
    }

    /// `μ((S0⊗1)F⁻¹)`, which equals `χ⁻¹`.
    pub fn chi_inverse_from_twist(&self) -> BorelElement {
        antipode0_on_leg(&self.inverse, 0).multiply_legs().expect("two-leg twist")
    }

    /// `χ` and its Neumann-series inverse.
    pub fn chi_pair(&self) -> Result<(BorelElement, BorelElement)> {
        let chi = self.chi();
        let grade0 = chi.grade_part(0);
        if grade0 != BorelElement::one(self.order) {
            return Err(Error::NotInvertible(grade0.to_string()));
        }
        let inv = inverse_series(&chi)?;
        Ok((chi, inv))
    }

    /// Deformed antipode `χ S0(x) χ⁻¹`.
    pub fn antipode(&self, x: &BorelElement) -> Result<BorelElement> {
        let (chi, chi_inv) = self.chi_pair()?;
        Ok(&(&chi * &antipode0(x)) * &chi_inv)
    }

    pub fn deformed_antipode(&self, g: Generator) -> Result<BorelElement> {
        self.antipode(&g.element(self.order))
    }

    /// Applies the deformed antipode to one leg of a two-leg tensor.
    pub fn antipode_on_leg(&self, t: &TensorElement, leg: usize) -> Result<TensorElement> {
        let (chi, chi_inv) = self.chi_pair()?;
        let order = self.order;
        Ok(t.map_leg(leg, |m| &(&chi * &antipode0_mono(m, order)) * &chi_inv))
    }

    /// `R = F̃ F⁻¹`.
    pub fn r_matrix(&self) -> TensorElement {
        &self.flipped() * &self.inverse
    }
}

/// Counit of a monomial; unchanged by the twist.
pub fn counit(m: Mono) -> crate::scalar::GaussianRational {
    crate::borel::counit0_mono(m)
}
