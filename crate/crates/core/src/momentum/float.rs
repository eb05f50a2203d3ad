use std::str::FromStr;

use num_traits::FromPrimitive;

use crate::error::{Error, Result};
use crate::scalar::{rational_to_f64, Rational};
use crate::weyl::normal_ordered_inverse_twist_action;

use super::context::DeformationContext;

/// Below this `|a·k|` the removable singularities of `K` and `K⁻¹` are
/// evaluated by their Taylor series.
const SERIES_THRESHOLD: f64 = 1e-8;

/// `‖x - y‖_∞ / max(‖y‖_∞, 1)`.
pub fn rel_dev(x: &[f64], y: &[f64]) -> f64 {
    if x.len() != y.len() {
        return f64::INFINITY;
    }
    let diff = x.iter().zip(y).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    let scale = y.iter().map(|b| b.abs()).fold(1.0, f64::max);
    diff / scale
}

/// Ways of computing the plane-wave exponent of `e^{ik·x} ⋆ e^{iq·x}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StarMethod {
    /// `D(k, q)` directly.
    ClosedForm,
    /// `P(K⁻¹(k), q)`.
    ViaP,
    /// Normal-ordered exponential twist, available at `u = 0` and `u = 1`.
    ViaTwist,
    /// Hopf-algebroid twist `e^{-ip⊗x} e^{iK⁻¹(p)⊗x̂}`.
    ViaAlgebroid,
}

impl StarMethod {
    pub const ALL: [StarMethod; 4] =
        [StarMethod::ClosedForm, StarMethod::ViaP, StarMethod::ViaTwist, StarMethod::ViaAlgebroid];

    pub fn name(self) -> &'static str {
        match self {
            StarMethod::ClosedForm => "closed-form",
            StarMethod::ViaP => "via-p",
            StarMethod::ViaTwist => "via-f0f1",
            StarMethod::ViaAlgebroid => "via-algebroid",
        }
    }
}

impl FromStr for StarMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL.into_iter().find(|m| m.name() == s).ok_or_else(|| Error::Parse(format!("unknown star method `{s}`")))
    }
}

/// Outcome of [`DeformationContext::verify_ode`].
#[derive(Clone, Debug, PartialEq)]
pub struct OdeCheck {
    /// Max residual of the central-difference derivative against `φ(P)k`.
    pub max_residual: f64,
    /// Residual of the slope at `λ = 0` against `φ(q)k`.
    pub slope_at_zero: f64,
}

fn to_exact(x: f64) -> Result<Rational> {
    Rational::from_f64(x).ok_or_else(|| Error::Singular(format!("{x} is not finite")))
}

impl DeformationContext<f64> {
    /// `(e^s - 1)/s`.
    fn expm1_ratio(s: f64) -> f64 {
        if s.abs() < SERIES_THRESHOLD {
            1.0 + s / 2.0 + s * s / 6.0
        } else {
            s.exp_m1() / s
        }
    }

    /// `K_μ(k) = k_μ (e^{a·k} - 1)/(a·k) / ((1-u)e^{a·k} + u)`.
    pub fn k_map(&self, k: &[f64]) -> Result<Vec<f64>> {
        self.check_dim(k)?;
        let s = self.dot(k);
        let den = 1.0 + self.one_minus_u() * s.exp_m1();
        if den <= 0.0 || !den.is_finite() {
            return Err(Error::Singular(format!("(1-u)e^(a·k) + u = {den} is not positive")));
        }
        let f = Self::expm1_ratio(s) / den;
        Ok(k.iter().map(|x| x * f).collect())
    }

    /// `K⁻¹_μ(k) = k_μ/(a·k) · ln[(1 + u a·k) / (1 - (1-u) a·k)]`.
    pub fn k_inverse(&self, k: &[f64]) -> Result<Vec<f64>> {
        self.check_dim(k)?;
        self.check_log_domain(k)?;
        let s = self.dot(k);
        let u = self.u;
        let f = if s.abs() < SERIES_THRESHOLD {
            let c2 = (1.0 - 2.0 * u) / 2.0;
            let c3 = (u.powi(3) + (1.0 - u).powi(3)) / 3.0;
            1.0 + c2 * s + c3 * s * s
        } else {
            ((u * s).ln_1p() - (-(1.0 - u) * s).ln_1p()) / s
        };
        Ok(k.iter().map(|x| x * f).collect())
    }

    /// `P_μ(k,q)`: `D` with `K(k)` in place of `k`.
    pub fn p_map(&self, k: &[f64], q: &[f64]) -> Result<Vec<f64>> {
        self.check_dim(q)?;
        let big_k = self.k_map(k)?;
        self.deformed_sum(&big_k, q)
    }

    /// `φ_μ^α(p) k_α = (k_μ - (1-u)(a·k) p_μ)(1 + u a·p)`.
    pub fn phi_contract(&self, p: &[f64], k: &[f64]) -> Vec<f64> {
        let ak = self.dot(k);
        let f = 1.0 + self.u * self.dot(p);
        k.iter().zip(p).map(|(kk, pp)| (kk - self.one_minus_u() * ak * pp) * f).collect()
    }

    fn check_p_path(&self, k: &[f64], q: &[f64]) -> Result<()> {
        let big_k = self.k_map(k)?;
        self.check_sum_domain(&big_k, q)
    }

    /// Compares a central-difference derivative of `λ ↦ P(λk, q)` with
    /// `φ(P(λk,q))k` at `samples + 1` points of `[0, 1]`.
    pub fn verify_ode(&self, k: &[f64], q: &[f64], step: f64, samples: usize) -> Result<OdeCheck> {
        if step <= 0.0 || samples == 0 {
            return Err(Error::Precondition("ODE check needs a positive step and at least one sample".into()));
        }
        let scaled = |l: f64| k.iter().map(|x| x * l).collect::<Vec<_>>();
        let mut max_residual: f64 = 0.0;
        for j in 0..=samples {
            let lambda = j as f64 / samples as f64;
            for l in [lambda - step, lambda, lambda + step] {
                self.check_p_path(&scaled(l), q)
                    .map_err(|e| Error::Singular(format!("path leaves the admissible region at λ = {l}: {e}")))?;
            }
            let plus = self.p_map(&scaled(lambda + step), q)?;
            let minus = self.p_map(&scaled(lambda - step), q)?;
            let here = self.p_map(&scaled(lambda), q)?;
            let rhs = self.phi_contract(&here, k);
            for mu in 0..k.len() {
                let derivative = (plus[mu] - minus[mu]) / (2.0 * step);
                max_residual = max_residual.max((derivative - rhs[mu]).abs());
            }
        }
        let p0 = self.p_map(&scaled(0.0), q)?;
        let s1 = self.p_map(&scaled(step), q)?;
        let s_1 = self.p_map(&scaled(-step), q)?;
        let expected = self.phi_contract(q, k);
        let slope_at_zero = (0..k.len())
            .map(|mu| ((s1[mu] - s_1[mu]) / (2.0 * step) - expected[mu]).abs())
            .fold((0..k.len()).map(|mu| (p0[mu] - q[mu]).abs()).fold(0.0, f64::max), f64::max);
        Ok(OdeCheck { max_residual, slope_at_zero })
    }

    /// `k - k + P(K⁻¹(k), q)`: the left leg keeps `e^{ik·x}`, the `x̂`-exponential
    /// acts on the right through `P`, and `e^{-ip⊗x}` contributes `-k`.
    pub fn algebroid_exponent(&self, k: &[f64], q: &[f64]) -> Result<Vec<f64>> {
        let right = self.p_map(&self.k_inverse(k)?, q)?;
        let phase = k.iter().map(|kk| -kk);
        Ok(k.iter().zip(phase).zip(&right).map(|((kk, ph), r)| kk + ph + r).collect())
    }

    /// Plane-wave exponent of `e^{ik·x} ⋆ e^{iq·x}` by the requested route.
    pub fn star_plane_waves(&self, k: &[f64], q: &[f64], method: StarMethod) -> Result<Vec<f64>> {
        match method {
            StarMethod::ClosedForm => self.deformed_sum(k, q),
            StarMethod::ViaP => self.p_map(&self.k_inverse(k)?, q),
            StarMethod::ViaAlgebroid => self.algebroid_exponent(k, q),
            StarMethod::ViaTwist => {
                let exact = |xs: &[f64]| xs.iter().map(|&x| to_exact(x)).collect::<Result<Vec<_>>>();
                let c = normal_ordered_inverse_twist_action(
                    &to_exact(self.u)?,
                    &exact(&self.a)?,
                    &exact(k)?,
                    &exact(q)?,
                    &Rational::from_integer(0.into()),
                )?;
                Ok(c.iter().map(rational_to_f64).collect())
            }
        }
    }
}
