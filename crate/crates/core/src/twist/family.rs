use crate::borel::{coproduct0, exp_series, BorelElement, Mono, TensorElement};
use crate::error::{Error, Result};
use crate::scalar::{GaussianRational, Rational};

/// Signs entering the assembly of `F_u`.
///
/// The correct twist uses [`TwistAssembly::STANDARD`]. Flipped variants exist
/// so that mutation tests can check that each sign is pinned by some identity.
/// The inverse is always assembled with the same signs, so `F·F⁻¹ = 1` holds
/// even for a mutated twist.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TwistAssembly {
    /// Sign of the exponent `u(DA⊗1 + 1⊗DA)` in the left factor.
    pub outer: i8,
    /// Sign of the exponent `ln(1+A)⊗D` in the middle factor.
    pub jordan: i8,
    /// Sign of `A` inside `ln(1 ± A)`.
    pub log_arg: i8,
    /// Sign of the exponent `Δ0(u·DA)` in the right factor.
    pub inner: i8,
}

impl TwistAssembly {
    pub const STANDARD: TwistAssembly = TwistAssembly { outer: -1, jordan: -1, log_arg: 1, inner: 1 };

    /// The four single-sign mutants of the standard assembly.
    pub fn single_flips() -> Vec<(&'static str, TwistAssembly)> {
        let s = Self::STANDARD;
        vec![
            ("outer", TwistAssembly { outer: -s.outer, ..s }),
            ("jordan", TwistAssembly { jordan: -s.jordan, ..s }),
            ("log_arg", TwistAssembly { log_arg: -s.log_arg, ..s }),
            ("inner", TwistAssembly { inner: -s.inner, ..s }),
        ]
    }
}

/// `F_u` together with its inverse, truncated at order `N`.
#[derive(Clone, Debug)]
pub struct TwistFamily {
    pub u: Rational,
    pub order: usize,
    pub twist: TensorElement,
    pub inverse: TensorElement,
}

pub fn scalar(u: &Rational) -> GaussianRational {
    GaussianRational::real(u.clone())
}

/// `D·A = AD - A` in normal order.
pub fn da(order: usize) -> BorelElement {
    &BorelElement::gen_d(order) * &BorelElement::gen_a(order)
}

/// `ln(1 + s·A)` as a series in `A`.
pub fn log_one_plus_a(sign: i8, order: usize) -> BorelElement {
    let mut out = BorelElement::zero(order);
    for k in 1..=order as i64 {
        let parity = if k % 2 == 1 { 1 } else { -1 };
        let s = if sign < 0 && k % 2 == 1 { -1 } else { 1 };
        out.add_term(Mono::new(k as u32, 0, 0), GaussianRational::ratio(parity * s, k));
    }
    out
}

/// `DA⊗1 + 1⊗DA`.
pub fn da_sum(order: usize) -> TensorElement {
    let x = da(order);
    &TensorElement::embed(&x, 0, 2) + &TensorElement::embed(&x, 1, 2)
}

/// `ln(1 + s·A) ⊗ D`.
pub fn jordan_exponent(sign: i8, order: usize) -> Result<TensorElement> {
    TensorElement::from_legs(&[&log_one_plus_a(sign, order), &BorelElement::gen_d(order)])
}

fn signed(c: &GaussianRational, s: i8) -> GaussianRational {
    if s < 0 {
        -c
    } else {
        c.clone()
    }
}

impl TwistFamily {
    pub fn build(u: &Rational, order: usize) -> Result<Self> {
        Self::build_with(u, order, TwistAssembly::STANDARD)
    }

    /// Assembles `exp(o·u·(DA⊗1+1⊗DA)) · exp(j·ln(1+l·A)⊗D) · exp(i·Δ0(u·DA))` and the
    /// inverse `exp(-i·Δ0(u·DA)) · exp(-j·ln(1+l·A)⊗D) · exp(-o·u·(DA⊗1+1⊗DA))`,
    /// then checks that they multiply to `1⊗1` on both sides.
    pub fn build_with(u: &Rational, order: usize, signs: TwistAssembly) -> Result<Self> {
        if order < 1 {
            return Err(Error::Precondition("twist construction requires order N ≥ 1".into()));
        }
        let uc = scalar(u);
        let outer = da_sum(order).scale(&uc);
        let jordan = jordan_exponent(signs.log_arg, order)?;
        let inner = coproduct0(&da(order)).scale(&uc);

        let one = GaussianRational::one();
        let factor = |x: &TensorElement, s: i8| exp_series(&x.scale(&signed(&one, s)));
        let twist = &(&factor(&outer, signs.outer)? * &factor(&jordan, signs.jordan)?) * &factor(&inner, signs.inner)?;
        let inverse =
            &(&factor(&inner, -signs.inner)? * &factor(&jordan, -signs.jordan)?) * &factor(&outer, -signs.outer)?;

        let unit = TensorElement::one(2, order);
        if &twist * &inverse != unit || &inverse * &twist != unit {
            return Err(Error::Precondition("assembled inverse does not invert the twist".into()));
        }
        Ok(TwistFamily { u: u.clone(), order, twist, inverse })
    }

    /// `F̃ = τ∘F`.
    pub fn flipped(&self) -> TensorElement {
        self.twist.flip().expect("two-leg twist")
    }

    pub fn flipped_inverse(&self) -> TensorElement {
        self.inverse.flip().expect("two-leg twist")
    }

    /// Replaces the twist by `twist` and `inverse` without any consistency check.
    /// Only for negative controls.
    pub fn corrupted(&self, twist: TensorElement, inverse: TensorElement) -> Self {
        TwistFamily { u: self.u.clone(), order: self.order, twist, inverse }
    }
}
