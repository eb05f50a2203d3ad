use std::time::Instant;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::scalar::{format_rational, Rational};
use crate::twist::VerificationReport;

use super::context::DeformationContext;
use super::float::{rel_dev, StarMethod};

/// Exact `u` and `a` shared by the rational and floating-point evaluations.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentumSetup {
    pub u: Rational,
    pub a: Vec<Rational>,
}

impl MomentumSetup {
    pub fn new(u: Rational, a: Vec<Rational>) -> Result<Self> {
        DeformationContext::<Rational>::new(u.clone(), a.clone())?;
        Ok(MomentumSetup { u, a })
    }

    pub fn exact(&self) -> DeformationContext<Rational> {
        DeformationContext { u: self.u.clone(), a: self.a.clone() }
    }

    pub fn float(&self) -> DeformationContext<f64> {
        self.exact().to_f64()
    }

    pub fn dim(&self) -> usize {
        self.a.len()
    }
}

/// Components `n/d` with `|n| ≤ 20`, `1 ≤ d ≤ 10`.
pub fn random_rational_momentum(rng: &mut impl Rng, dim: usize) -> Vec<Rational> {
    (0..dim).map(|_| Rational::new(rng.gen_range(-20i64..=20).into(), rng.gen_range(1i64..=10).into())).collect()
}

/// Components `n/10` with `|n| ≤ 20`.
fn small_rational_momentum(rng: &mut impl Rng, dim: usize) -> Vec<Rational> {
    (0..dim).map(|_| Rational::new(rng.gen_range(-20i64..=20).into(), 10.into())).collect()
}

fn to_f64(k: &[Rational]) -> Vec<f64> {
    k.iter().map(crate::scalar::rational_to_f64).collect()
}

fn show(k: &[Rational]) -> String {
    format!("({})", k.iter().map(format_rational).collect::<Vec<_>>().join(", "))
}

/// Sample counts of an exact associativity scan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssociativityStats {
    pub checked: usize,
    pub skipped: usize,
    pub failures: usize,
}

/// Unit, antipode and associativity of `⊕`, exactly, on `samples` admissible
/// random rational triples; at `u ∈ {0, 1}` both sides are also compared with
/// the special-case closed forms.
pub fn verify_star_associativity(
    setup: &MomentumSetup,
    samples: usize,
    seed: u64,
) -> Result<(VerificationReport, AssociativityStats)> {
    let started = Instant::now();
    let ctx = setup.exact();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stats = AssociativityStats { checked: 0, skipped: 0, failures: 0 };
    let mut first_failure = None;
    let zero = vec![Rational::zero(); setup.dim()];
    let ak = |k: &[Rational]| ctx.dot(k);
    let special = |k: &[Rational], q: &[Rational]| -> Option<Vec<Rational>> {
        if setup.u.is_zero() {
            let f = Rational::one() - ak(k);
            Some(k.iter().zip(q).map(|(a, b)| a + &f * b).collect())
        } else if setup.u.is_one() {
            let f = Rational::one() + ak(q);
            Some(k.iter().zip(q).map(|(a, b)| a * &f + b).collect())
        } else {
            None
        }
    };
    let attempts = samples.saturating_mul(100).max(100);
    for _ in 0..attempts {
        if stats.checked == samples {
            break;
        }
        let k = random_rational_momentum(&mut rng, setup.dim());
        let q = random_rational_momentum(&mut rng, setup.dim());
        let r = random_rational_momentum(&mut rng, setup.dim());
        let admissible = (|| -> Result<_> {
            ctx.check_sum_domain(&k, &q)?;
            ctx.check_sum_domain(&q, &r)?;
            ctx.check_antipode_domain(&k)?;
            let kq = ctx.deformed_sum(&k, &q)?;
            let qr = ctx.deformed_sum(&q, &r)?;
            ctx.check_sum_domain(&kq, &r)?;
            ctx.check_sum_domain(&k, &qr)?;
            let s = ctx.antipode(&k)?;
            ctx.check_sum_domain(&k, &s)?;
            ctx.check_sum_domain(&s, &k)?;
            Ok((kq, qr, s))
        })();
        let Ok((kq, qr, s)) = admissible else {
            stats.skipped += 1;
            continue;
        };
        stats.checked += 1;
        let left = ctx.deformed_sum(&kq, &r)?;
        let right = ctx.deformed_sum(&k, &qr)?;
        let mut problems = Vec::new();
        if left != right {
            problems.push(format!("D(D(k,q),r) - D(k,D(q,r)) = {}", show(&diff(&left, &right))));
        }
        if ctx.deformed_sum(&k, &zero)? != k || ctx.deformed_sum(&zero, &k)? != k {
            problems.push("D(k,0) or D(0,k) differs from k".to_string());
        }
        let ks = ctx.deformed_sum(&k, &s)?;
        let sk = ctx.deformed_sum(&s, &k)?;
        if ks != zero || sk != zero {
            problems.push(format!("D(k,S(k)) = {}, D(S(k),k) = {}", show(&ks), show(&sk)));
        }
        if let Some(expected) = special(&k, &q) {
            if ctx.deformed_sum(&k, &q)? != expected {
                problems.push("D(k,q) differs from the special-case closed form".to_string());
            }
        }
        if !problems.is_empty() {
            stats.failures += 1;
            first_failure.get_or_insert_with(|| {
                format!("{} at k = {}, q = {}, r = {}", problems.join("; "), show(&k), show(&q), show(&r))
            });
        }
    }
    let mut report = VerificationReport::exact::<String>("star-assoc", &setup.u, 0, &[], started);
    if let Some(f) = first_failure {
        report.pass = false;
        report.residual = f;
    } else if stats.checked < samples {
        report.pass = false;
        report.residual = format!("only {} of {samples} triples were admissible", stats.checked);
    }
    Ok((report, stats))
}

fn diff(x: &[Rational], y: &[Rational]) -> Vec<Rational> {
    x.iter().zip(y).map(|(a, b)| a - b).collect()
}

fn numeric_report(
    identity: &str,
    setup: &MomentumSetup,
    max_dev: f64,
    tol: f64,
    started: Instant,
) -> VerificationReport {
    VerificationReport::numeric(identity, &setup.u, 0, max_dev, tol, started)
}

/// Random admissible floating-point pairs, drawn from rational samples.
fn float_pairs(setup: &MomentumSetup, samples: usize, seed: u64) -> Vec<(Vec<f64>, Vec<f64>)> {
    float_pairs_with(setup, samples, seed, random_rational_momentum)
}

fn float_pairs_with(
    setup: &MomentumSetup,
    samples: usize,
    seed: u64,
    draw: fn(&mut ChaCha8Rng, usize) -> Vec<Rational>,
) -> Vec<(Vec<f64>, Vec<f64>)> {
    let ctx = setup.float();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(samples);
    for _ in 0..samples.saturating_mul(100).max(100) {
        if out.len() == samples {
            break;
        }
        let k = to_f64(&draw(&mut rng, setup.dim()));
        let q = to_f64(&draw(&mut rng, setup.dim()));
        let ok = ctx.check_admissible(&k, &q).is_ok() && ctx.k_inverse(&k).and_then(|kinv| ctx.k_map(&kinv)).is_ok();
        if ok {
            out.push((k, q));
        }
    }
    out
}

/// `K∘K⁻¹ = K⁻¹∘K = id` on a grid and `D = P∘K⁻¹` on random pairs.
pub fn verify_kinverse(setup: &MomentumSetup, samples: usize, seed: u64, tol: f64) -> Result<VerificationReport> {
    let started = Instant::now();
    let ctx = setup.float();
    let mut max_dev: f64 = 0.0;
    let steps = 24;
    for i in 0..=steps {
        for j in 0..=steps {
            let mut k = vec![0.0; setup.dim()];
            k[0] = -3.0 + 6.0 * i as f64 / steps as f64;
            k[1] = -3.0 + 6.0 * j as f64 / steps as f64;
            if let Ok(back) = ctx.k_inverse(&k).and_then(|x| ctx.k_map(&x)) {
                max_dev = max_dev.max(rel_dev(&back, &k));
            }
            if let Ok(back) = ctx.k_map(&k).and_then(|x| ctx.k_inverse(&x)) {
                max_dev = max_dev.max(rel_dev(&back, &k));
            }
        }
    }
    let pairs = float_pairs(setup, samples, seed);
    for (k, q) in &pairs {
        let d = ctx.star_plane_waves(k, q, StarMethod::ClosedForm)?;
        let p = ctx.star_plane_waves(k, q, StarMethod::ViaP)?;
        max_dev = max_dev.max(rel_dev(&p, &d));
    }
    if pairs.is_empty() {
        return Ok(VerificationReport::failed("kinverse", &setup.u, 0, "no admissible samples".into(), started));
    }
    Ok(numeric_report("kinverse", setup, max_dev, tol, started))
}

/// ODE residual of `P(λk, q)` at step `1e-4` on random pairs with components
/// in `[-2, 2]`, plus the
/// observed order of the central-difference scheme on a fixed pair.
pub fn verify_ode(setup: &MomentumSetup, samples: usize, seed: u64, tol: f64) -> Result<VerificationReport> {
    let started = Instant::now();
    let ctx = setup.float();
    let mut max_dev: f64 = 0.0;
    let pairs = float_pairs_with(setup, samples.min(64), seed, small_rational_momentum);
    for (k, q) in &pairs {
        match ctx.verify_ode(k, q, 1e-4, 16) {
            Ok(r) => max_dev = max_dev.max(r.max_residual).max(r.slope_at_zero),
            Err(Error::Singular(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    let ratio = convergence_ratio(&ctx)?;
    let mut report = numeric_report("ode", setup, max_dev, tol, started);
    report.residual = format!("{max_dev:e} (convergence ratio {ratio:.3})");
    report.pass &= (3.5..=4.5).contains(&ratio);
    Ok(report)
}

/// `residual(h) / residual(h/2)` for `h = 1e-2`; close to 4 for a second-order scheme.
fn convergence_ratio(ctx: &DeformationContext<f64>) -> Result<f64> {
    let dim = ctx.dim();
    let mut k: Vec<f64> = (0..dim).map(|mu| 1.0 + mu as f64).collect();
    let ak = ctx.dot(&k);
    // keep a·k comfortably inside the admissible region while nonzero
    let target = 0.5;
    if ak.abs() > 1e-12 {
        k.iter_mut().for_each(|x| *x *= target / ak.abs());
    } else {
        let norm: f64 = ctx.a.iter().map(|x| x * x).sum();
        if norm == 0.0 {
            return Err(Error::Precondition("deformation vector a is zero".into()));
        }
        k = ctx.a.iter().map(|x| x * target / norm).collect();
    }
    let q: Vec<f64> = (0..dim).map(|mu| if mu % 2 == 0 { 0.5 } else { -0.25 }).collect();
    let coarse = ctx.verify_ode(&k, &q, 1e-2, 8)?.max_residual;
    let fine = ctx.verify_ode(&k, &q, 5e-3, 8)?.max_residual;
    Ok(coarse / fine)
}

/// The Hopf-algebroid twist action (and, at `u ∈ {0, 1}`, the normal-ordered
/// exponential twist) reproduce `D(k, q)` on random pairs.
pub fn verify_algebroid(setup: &MomentumSetup, samples: usize, seed: u64, tol: f64) -> Result<VerificationReport> {
    let started = Instant::now();
    let ctx = setup.float();
    let pairs = float_pairs(setup, samples, seed);
    if pairs.is_empty() {
        return Ok(VerificationReport::failed("algebroid", &setup.u, 0, "no admissible samples".into(), started));
    }
    let twist_route = setup.u.is_zero() || setup.u.is_one();
    let mut max_dev: f64 = 0.0;
    for (k, q) in &pairs {
        let d = ctx.star_plane_waves(k, q, StarMethod::ClosedForm)?;
        max_dev = max_dev.max(rel_dev(&ctx.star_plane_waves(k, q, StarMethod::ViaAlgebroid)?, &d));
        if twist_route {
            max_dev = max_dev.max(rel_dev(&ctx.star_plane_waves(k, q, StarMethod::ViaTwist)?, &d));
        }
    }
    Ok(numeric_report("algebroid", setup, max_dev, tol, started))
}
