use std::collections::HashMap;
use std::time::Instant;

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::borel::{coproduct0, BorelElement, Mono, TensorElement};
use crate::error::{Error, Result};
use crate::momentum::k_inverse_series;
use crate::scalar::{format_rational, GaussianRational, Rational};
use crate::twist::{Generator, Residuals, TwistFamily, VerificationReport};

use super::element::WeylElement;
use super::tensor::WeylTensor;

/// Parameters of a realization: the twist parameter `u` and the direction `v`
/// of the deformation vector `a = h·v`.
#[derive(Clone, Debug, PartialEq)]
pub struct RealizationSpec {
    pub u: Rational,
    pub v: Vec<Rational>,
}

impl RealizationSpec {
    pub fn new(u: Rational, v: Vec<Rational>) -> Result<Self> {
        if v.len() < 2 {
            return Err(Error::Precondition(format!("realizations need dim ≥ 2, got {}", v.len())));
        }
        Ok(RealizationSpec { u, v })
    }

    pub fn dim(&self) -> usize {
        self.v.len()
    }
}

fn gauss(r: &Rational) -> GaussianRational {
    GaussianRational::real(r.clone())
}

fn i() -> GaussianRational {
    GaussianRational::i()
}

/// Images of the Borel generators in the Heisenberg algebra:
/// `A ↦ -h v·p`, `D ↦ i x·p`, `E ↦ p_α`.
pub struct Generators {
    dim: usize,
    order: usize,
    v: Vec<Rational>,
    a: WeylElement,
    d: WeylElement,
    cache: HashMap<(Mono, Option<usize>), WeylElement>,
}

impl Generators {
    pub fn new(v: &[Rational], order: usize) -> Self {
        let dim = v.len();
        let mut a = WeylElement::zero(dim, order);
        let mut d = WeylElement::zero(dim, order);
        for (mu, vm) in v.iter().enumerate() {
            let p = WeylElement::p(mu, dim, order);
            a = &a - &(&WeylElement::h_power(gauss(vm), 1, dim, order) * &p);
            d = &d + &(&WeylElement::x(mu, dim, order) * &p).scale(&i());
        }
        Generators { dim, order, v: v.to_vec(), a, d, cache: HashMap::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// `-h v·p`.
    pub fn a(&self) -> &WeylElement {
        &self.a
    }

    /// `i x·p`.
    pub fn d(&self) -> &WeylElement {
        &self.d
    }

    /// `a^μ = h v^μ` as a central element.
    pub fn a_component(&self, mu: usize) -> WeylElement {
        WeylElement::h_power(gauss(&self.v[mu]), 1, self.dim, self.order)
    }

    pub fn x(&self, mu: usize) -> WeylElement {
        WeylElement::x(mu, self.dim, self.order)
    }

    pub fn p(&self, mu: usize) -> WeylElement {
        WeylElement::p(mu, self.dim, self.order)
    }

    pub fn scalar(&self, c: GaussianRational) -> WeylElement {
        WeylElement::constant(c, self.dim, self.order)
    }

    /// Image of `A^a E^e D^d` with `E ↦ p_index`.
    pub fn mono(&mut self, m: Mono, index: Option<usize>) -> Result<WeylElement> {
        if m.e > 0 && index.is_none() {
            return Err(Error::Precondition("element contains E but no momentum index was given".into()));
        }
        let key = (m, if m.e > 0 { index } else { None });
        if let Some(w) = self.cache.get(&key) {
            return Ok(w.clone());
        }
        let e = index.map(|k| self.p(k)).unwrap_or_else(|| self.scalar(GaussianRational::one()));
        let w = &(&self.a.pow(m.a) * &e.pow(m.e)) * &self.d.pow(m.d);
        self.cache.insert(key, w.clone());
        Ok(w)
    }

    pub fn borel(&mut self, x: &BorelElement, index: Option<usize>) -> Result<WeylElement> {
        let mut out = WeylElement::zero(self.dim, self.order);
        for (m, c) in x.terms() {
            out = &out + &self.mono(*m, index)?.scale(c);
        }
        Ok(out)
    }

    pub fn tensor(&mut self, t: &TensorElement, index: Option<usize>) -> Result<WeylTensor> {
        if t.legs() != 2 {
            return Err(Error::WrongLegCount { expected: 2, got: t.legs() });
        }
        let mut out = WeylTensor::zero(self.dim, self.order);
        for (k, c) in t.terms() {
            let pair = WeylTensor::pair(&self.mono(k[0], index)?, &self.mono(k[1], index)?)?;
            out = out.try_add(&pair.scale(c))?;
        }
        Ok(out)
    }
}

/// `x̂^μ = (x^μ + i a^μ (1-u) D)(1 - uA)`.
pub fn realize_xhat(spec: &RealizationSpec, order: usize) -> Vec<WeylElement> {
    let g = Generators::new(&spec.v, order);
    let u = gauss(&spec.u);
    let w = &GaussianRational::one() - &u;
    let right = &g.scalar(GaussianRational::one()) - &g.a().scale(&u);
    (0..spec.dim())
        .map(|mu| {
            let left = &g.x(mu) + &(&g.a_component(mu) * g.d()).scale(&(&i() * &w));
            &left * &right
        })
        .collect()
}

/// `ŷ^μ = (x^μ - i a^μ u D)(1 + (1-u)A)`.
pub fn realize_yhat(spec: &RealizationSpec, order: usize) -> Vec<WeylElement> {
    let g = Generators::new(&spec.v, order);
    let u = gauss(&spec.u);
    let w = &GaussianRational::one() - &u;
    let right = &g.scalar(GaussianRational::one()) + &g.a().scale(&w);
    (0..spec.dim())
        .map(|mu| {
            let left = &g.x(mu) - &(&g.a_component(mu) * g.d()).scale(&(&i() * &u));
            &left * &right
        })
        .collect()
}

/// The commutation relations of `x̂` and `ŷ` as exact Weyl-algebra identities.
pub fn verify_kappa_minkowski(spec: &RealizationSpec, order: usize) -> Result<VerificationReport> {
    let started = Instant::now();
    let g = Generators::new(&spec.v, order);
    let xh = realize_xhat(spec, order);
    let yh = realize_yhat(spec, order);
    let u = gauss(&spec.u);
    let w = &GaussianRational::one() - &u;
    let one_minus_ua = &g.scalar(GaussianRational::one()) - &g.a().scale(&u);
    let n = spec.dim();
    let mut r = Residuals::new();
    let mut check = |name: String, lhs: WeylElement, rhs: WeylElement| {
        let diff = &lhs - &rhs;
        let zero = diff.is_zero();
        r.push(&name, &diff, zero);
    };
    for mu in 0..n {
        for nu in 0..n {
            let kappa = |c: &[WeylElement], sign: GaussianRational| {
                (&(&g.a_component(mu) * &c[nu]) - &(&g.a_component(nu) * &c[mu])).scale(&(&sign * &i()))
            };
            check(format!("[x̂^{mu}, x̂^{nu}]"), xh[mu].commutator(&xh[nu])?, kappa(&xh, GaussianRational::one()));
            check(format!("[ŷ^{mu}, ŷ^{nu}]"), yh[mu].commutator(&yh[nu])?, kappa(&yh, -GaussianRational::one()));
            check(format!("[x̂^{mu}, ŷ^{nu}]"), xh[mu].commutator(&yh[nu])?, WeylElement::zero(n, order));
            let delta = if mu == nu { -i() } else { GaussianRational::zero() };
            let rhs = &(&g.scalar(delta) + &(&g.a_component(nu) * &g.p(mu)).scale(&(&i() * &w))) * &one_minus_ua;
            check(format!("[p_{mu}, x̂^{nu}]"), g.p(mu).commutator(&xh[nu])?, rhs);
        }
    }
    Ok(r.finish("kappa-minkowski", &spec.u, order, started))
}

/// `f ▷ x^μ` for a left-leg monomial `f`: `D ▷ x = x`, `A ▷ x^μ = i a^μ`,
/// `p_α ▷ x^μ = -i δ_α^μ`; anything of higher degree annihilates `x^μ`.
fn act_on_coordinate(g: &Generators, m: Mono, mu: usize, alpha: Option<usize>) -> Option<WeylElement> {
    match (m.a, m.e) {
        (0, 0) => Some(g.x(mu)),
        (1, 0) => Some(g.a_component(mu).scale(&i())),
        (0, 1) if alpha == Some(mu) => Some(g.scalar(-i())),
        _ => None,
    }
}

/// `m[F⁻¹(▷⊗1)(x^μ⊗1)]` for the given two-leg inverse twist.
fn coordinates_from_inverse_twist(g: &mut Generators, inverse: &TensorElement) -> Result<Vec<WeylElement>> {
    let mut out = Vec::with_capacity(g.dim());
    for mu in 0..g.dim() {
        let mut acc = WeylElement::zero(g.dim(), g.order());
        for (k, c) in inverse.terms() {
            if let Some(acted) = act_on_coordinate(g, k[0], mu, None) {
                acc = &acc + &(&acted * &g.mono(k[1], None)?).scale(c);
            }
        }
        out.push(acc);
    }
    Ok(out)
}

fn build_family(spec: &RealizationSpec, order: usize) -> Result<TwistFamily> {
    if order < 2 {
        return Err(Error::Precondition(format!("realization extraction requires order N ≥ 2, got {order}")));
    }
    TwistFamily::build(&spec.u, order)
}

/// `x̂^μ = m[F_u⁻¹(▷⊗1)(x^μ⊗1)]`.
pub fn extract_xhat_from_twist(spec: &RealizationSpec, order: usize) -> Result<Vec<WeylElement>> {
    let fam = build_family(spec, order)?;
    coordinates_from_inverse_twist(&mut Generators::new(&spec.v, order), &fam.inverse)
}

/// `ŷ^μ = m[F̃_u⁻¹(▷⊗1)(x^μ⊗1)]`.
pub fn extract_yhat_from_twist(spec: &RealizationSpec, order: usize) -> Result<Vec<WeylElement>> {
    let fam = build_family(spec, order)?;
    coordinates_from_inverse_twist(&mut Generators::new(&spec.v, order), &fam.flipped_inverse())
}

fn coordinates_from_coproduct(g: &mut Generators, delta_e: &TensorElement) -> Result<Vec<WeylElement>> {
    let order = g.order();
    let shift = delta_e - &coproduct0(&BorelElement::gen_e(order));
    let mut out = Vec::with_capacity(g.dim());
    for mu in 0..g.dim() {
        let mut acc = g.x(mu);
        for alpha in 0..g.dim() {
            let mut inner = WeylElement::zero(g.dim(), order);
            for (k, c) in shift.terms() {
                if let Some(acted) = act_on_coordinate(g, k[0], mu, Some(alpha)) {
                    inner = &inner + &(&acted * &g.mono(k[1], Some(alpha))?).scale(c);
                }
            }
            acc = &acc + &(&g.x(alpha) * &inner).scale(&i());
        }
        out.push(acc);
    }
    Ok(out)
}

/// `x̂^μ = x^μ + i x^α m[(Δ - Δ0)p_α (▷⊗1)(x^μ⊗1)]`.
pub fn extract_xhat_from_coproduct(spec: &RealizationSpec, order: usize) -> Result<Vec<WeylElement>> {
    let fam = build_family(spec, order)?;
    coordinates_from_coproduct(&mut Generators::new(&spec.v, order), &fam.deformed_coproduct(Generator::E))
}

/// The same construction with the flipped coproduct `Δ̃ = τΔ`, giving `ŷ`.
pub fn extract_yhat_from_coproduct(spec: &RealizationSpec, order: usize) -> Result<Vec<WeylElement>> {
    let fam = build_family(spec, order)?;
    let flipped = fam.deformed_coproduct(Generator::E).flip()?;
    coordinates_from_coproduct(&mut Generators::new(&spec.v, order), &flipped)
}

/// The displayed `u = 0` / `u = 1` forms of `(x̂, ŷ)`.
fn special_realizations(spec: &RealizationSpec, order: usize) -> Option<(Vec<WeylElement>, Vec<WeylElement>)> {
    let g = Generators::new(&spec.v, order);
    let one = g.scalar(GaussianRational::one());
    let n = spec.dim();
    let plus_iad = |mu: usize, s: GaussianRational| &g.x(mu) + &(&g.a_component(mu) * g.d()).scale(&(&s * &i()));
    if spec.u.is_zero() {
        // x̂ = x + i a D, ŷ = x(1 + A)
        let xs = (0..n).map(|mu| plus_iad(mu, GaussianRational::one())).collect();
        let ys = (0..n).map(|mu| &g.x(mu) * &(&one + g.a())).collect();
        Some((xs, ys))
    } else if spec.u.is_one() {
        // x̂ = x(1 - A), ŷ = x - i a D
        let xs = (0..n).map(|mu| &g.x(mu) * &(&one - g.a())).collect();
        let ys = (0..n).map(|mu| plus_iad(mu, -GaussianRational::one())).collect();
        Some((xs, ys))
    } else {
        None
    }
}

/// Twist extraction, coproduct extraction and the closed-form realization coincide.
pub fn verify_realizations(spec: &RealizationSpec, order: usize) -> Result<VerificationReport> {
    let started = Instant::now();
    let xh = realize_xhat(spec, order);
    let yh = realize_yhat(spec, order);
    let routes = [
        ("x̂", "twist", extract_xhat_from_twist(spec, order)?, &xh),
        ("x̂", "coproduct", extract_xhat_from_coproduct(spec, order)?, &xh),
        ("ŷ", "flipped twist", extract_yhat_from_twist(spec, order)?, &yh),
        ("ŷ", "flipped coproduct", extract_yhat_from_coproduct(spec, order)?, &yh),
    ];
    let mut r = Residuals::new();
    for (sym, route, got, closed) in &routes {
        for mu in 0..spec.dim() {
            let diff = &got[mu] - &closed[mu];
            r.push(&format!("{sym}^{mu} from {route} - closed form"), &diff, diff.is_zero());
        }
    }
    if let Some((xs, ys)) = special_realizations(spec, order) {
        for mu in 0..spec.dim() {
            let dx = &xh[mu] - &xs[mu];
            r.push(&format!("x̂^{mu} - displayed special case"), &dx, dx.is_zero());
            let dy = &yh[mu] - &ys[mu];
            r.push(&format!("ŷ^{mu} - displayed special case"), &dy, dy.is_zero());
        }
    }
    Ok(r.finish("realization", &spec.u, order, started))
}

/// `K⁻¹_α(p) = p_α Σ_{n≥1} c_n (h v·p)^{n-1}` as a Weyl element.
fn k_inverse_element(g: &Generators, u: &Rational, alpha: usize) -> WeylElement {
    let s = -g.a();
    let coeffs = k_inverse_series(u, g.order() + 1);
    let mut series = WeylElement::zero(g.dim(), g.order());
    let mut power = g.scalar(GaussianRational::one());
    for c in &coeffs {
        series = &series + &power.scale(&gauss(c));
        power = &power * &s;
    }
    &g.p(alpha) * &series
}

/// `Δp_μ = exp(i K⁻¹_α(p) ⊗ ad_{x̂^α}) (1⊗p_μ)`, summed until the series terminates.
///
/// With `[p_μ, x^ν] = -iδ_μ^ν` the adjoint action is taken as `ad_{x̂}(f) = [f, x̂]`,
/// so that the first-order term is `+p_μ⊗1`.
pub fn coproduct_from_adx(spec: &RealizationSpec, order: usize, mu: usize) -> Result<WeylTensor> {
    if order < 2 {
        return Err(Error::Precondition(format!("adx requires order N ≥ 2, got {order}")));
    }
    let g = Generators::new(&spec.v, order);
    let xh = realize_xhat(spec, order);
    let kinv: Vec<WeylElement> = (0..spec.dim()).map(|a| k_inverse_element(&g, &spec.u, a)).collect();
    let one = g.scalar(GaussianRational::one());
    let mut term = WeylTensor::pair(&one, &g.p(mu))?;
    let mut sum = term.clone();
    // Each application of ad lowers (p-degree - h-degree) on the right leg by
    // one, so the n-th term starts at h^{n-1}.
    for n in 1..=order + 1 {
        let mut next = WeylTensor::zero(spec.dim(), order);
        for ((kl, kr), c) in term.terms() {
            let left = WeylElement::term(kl.clone(), c.clone(), spec.dim(), order);
            let right = WeylElement::term(kr.clone(), crate::TruncPoly::one(order), spec.dim(), order);
            for alpha in 0..spec.dim() {
                let ad = right.commutator(&xh[alpha])?;
                if !ad.is_momentum_only() {
                    return Err(Error::Precondition(format!("ad_x̂ left the momentum subalgebra: {ad}")));
                }
                next = next.try_add(&WeylTensor::pair(&(&kinv[alpha] * &left), &ad)?)?;
            }
        }
        term = next.scale(&(&i() * &GaussianRational::ratio(1, n as i64)));
        if term.is_zero() {
            break;
        }
        sum = sum.try_add(&term)?;
    }
    Ok(sum)
}

/// The adjoint-action coproduct agrees with `F Δ0(p) F⁻¹` for every component.
pub fn verify_adx(spec: &RealizationSpec, order: usize) -> Result<VerificationReport> {
    let started = Instant::now();
    let fam = build_family(spec, order)?;
    let delta = fam.deformed_coproduct(Generator::E);
    let mut g = Generators::new(&spec.v, order);
    let mut r = Residuals::new();
    for mu in 0..spec.dim() {
        let expected = g.tensor(&delta, Some(mu))?;
        let got = coproduct_from_adx(spec, order, mu)?;
        let diff = got.try_sub(&expected)?;
        r.push(&format!("Δp_{mu} from ad_x̂ - FΔ0(p)F⁻¹"), &diff, diff.is_zero());
    }
    Ok(r.finish("adx", &spec.u, order, started))
}

/// `:X:` exponential `Σ :X^n:/n!` under normal ordering in each leg.
pub fn normal_ordered_exp(x: &WeylTensor) -> Result<WeylTensor> {
    let mut sum = WeylTensor::one(x.dim(), x.order());
    let mut power = sum.clone();
    for n in 1..=x.order() {
        power = power.try_normal_mul(x)?.scale(&GaussianRational::ratio(1, n as i64));
        sum = sum.try_add(&power)?;
    }
    Ok(sum)
}

/// For `u = 0` and `u = 1`, `F_u⁻¹` equals `:e^{A⊗D}:` resp. `:e^{-D⊗A}:` in `H⊗H`.
pub fn verify_normal_ordered_twist(spec: &RealizationSpec, order: usize) -> Result<VerificationReport> {
    let started = Instant::now();
    let fam = build_family(spec, order)?;
    let mut g = Generators::new(&spec.v, order);
    let exponent = if spec.u.is_zero() {
        WeylTensor::pair(g.a(), g.d())?
    } else if spec.u.is_one() {
        WeylTensor::pair(g.d(), g.a())?.scale(&-GaussianRational::one())
    } else {
        return Err(Error::Unsupported(format!(
            "normal-ordered closed form is only available at u = 0 and u = 1, got u = {}",
            format_rational(&spec.u)
        )));
    };
    let diff = g.tensor(&fam.inverse, None)?.try_sub(&normal_ordered_exp(&exponent)?)?;
    let mut r = Residuals::new();
    r.push("F⁻¹ - :exp:", &diff, diff.is_zero());
    Ok(r.finish("normal-ordered", &spec.u, order, started))
}

fn dot(a: &[Rational], k: &[Rational]) -> Rational {
    a.iter().zip(k).map(|(x, y)| x * y).sum()
}

/// Exponent `c` of `m[:exp(i((1-t)⊗x^α + t x^α⊗1)(Δ-Δ0)p_α):(▷⊗▷)(e^{ik·x}⊗e^{iq·x})] = e^{ic·x}`.
///
/// Momenta act by eigenvalue (`p ↦ k` on the left leg, `q` on the right, so
/// `A ↦ -a·k`), the normal-ordered coordinates multiply afterwards, and the
/// weights `t` and `1-t` of the two legs combine under `m`. Only `u ∈ {0, 1}`
/// is supported: there `(Δ-Δ0)p` is a polynomial and the exponential is exact.
pub fn normal_ordered_inverse_twist_action(
    u: &Rational,
    a: &[Rational],
    k: &[Rational],
    q: &[Rational],
    t: &Rational,
) -> Result<Vec<Rational>> {
    if !(u.is_zero() || u.is_one()) {
        return Err(Error::Unsupported(format!(
            "normal-ordered twist action is only available at u = 0 and u = 1, got u = {}",
            format_rational(u)
        )));
    }
    if a.len() != k.len() || a.len() != q.len() {
        return Err(Error::DimensionMismatch { left: a.len(), right: k.len().max(q.len()) });
    }
    let order = 3;
    let fam = TwistFamily::build(u, order)?;
    let shift = &fam.deformed_coproduct(Generator::E) - &coproduct0(&BorelElement::gen_e(order));
    if shift.terms().any(|(key, _)| key[0].a + key[1].a > 1) {
        return Err(Error::Unsupported("(Δ-Δ0)p does not terminate".into()));
    }
    let (ak, aq) = (dot(a, k), dot(a, q));
    let eigen = |m: Mono, p: &Rational, ap: &Rational| -> Result<Rational> {
        if m.d > 0 {
            return Err(Error::Unsupported("D in the momentum coproduct".into()));
        }
        let mut v = (-ap.clone()).pow(m.a as i32);
        if m.e > 0 {
            v *= p.pow(m.e as i32);
        }
        Ok(v)
    };
    let mut out = Vec::with_capacity(k.len());
    for alpha in 0..k.len() {
        // eigenvalue of (Δ-Δ0)p_α on e^{ik·x}⊗e^{iq·x}
        let mut shift_value = Rational::zero();
        for (key, c) in shift.terms() {
            if !c.is_real() {
                return Err(Error::Unsupported("complex coefficient in (Δ-Δ0)p".into()));
            }
            shift_value += &c.re * eigen(key[0], &k[alpha], &ak)? * eigen(key[1], &q[alpha], &aq)?;
        }
        let from_left = t * &shift_value;
        let from_right = (Rational::one() - t) * &shift_value;
        out.push(&k[alpha] + &q[alpha] + from_left + from_right);
    }
    Ok(out)
}

/// Realization tables for `(u, dim, v)` as JSON.
pub fn realization_table(spec: &RealizationSpec, order: usize) -> Value {
    let render = |ws: Vec<WeylElement>| -> Vec<Value> {
        ws.iter().map(|w| json!({ "text": w.to_string(), "terms": w.to_json() })).collect()
    };
    json!({
        "u": format_rational(&spec.u),
        "dim": spec.dim(),
        "v": spec.v.iter().map(format_rational).collect::<Vec<_>>(),
        "order": order,
        "xhat": render(realize_xhat(spec, order)),
        "yhat": render(realize_yhat(spec, order)),
    })
}
