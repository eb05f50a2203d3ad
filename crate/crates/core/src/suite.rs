//! The verification matrix: named suites run over a list of `u` values.

use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::momentum::{verify_algebroid, verify_kinverse, verify_ode, verify_star_associativity, MomentumSetup};
use crate::scalar::{format_rational, rat, Rational};
use crate::twist::{
    default_u_values, verify_antipode, verify_coboundary, verify_cocycle, verify_coproduct, verify_log_expansion,
    verify_normalization, verify_r_matrix, TwistFamily, VerificationReport,
};
use crate::weyl::{
    verify_adx, verify_kappa_minkowski, verify_normal_ordered_twist, verify_realizations, RealizationSpec,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Cocycle,
    Normalization,
    Coproduct,
    Antipode,
    RMatrix,
    Coboundary,
    LogExp,
    KappaMinkowski,
    Realization,
    Adx,
    StarAssoc,
    Ode,
    KInverse,
    Algebroid,
    All,
}

impl Suite {
    /// Every concrete suite, in reporting order.
    pub const MATRIX: [Suite; 14] = [
        Suite::Cocycle,
        Suite::Normalization,
        Suite::Coproduct,
        Suite::Antipode,
        Suite::RMatrix,
        Suite::Coboundary,
        Suite::LogExp,
        Suite::KappaMinkowski,
        Suite::Realization,
        Suite::Adx,
        Suite::StarAssoc,
        Suite::Ode,
        Suite::KInverse,
        Suite::Algebroid,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Cocycle => "cocycle",
            Suite::Normalization => "normalization",
            Suite::Coproduct => "coproduct",
            Suite::Antipode => "antipode",
            Suite::RMatrix => "rmatrix",
            Suite::Coboundary => "coboundary",
            Suite::LogExp => "logexp",
            Suite::KappaMinkowski => "kappa-minkowski",
            Suite::Realization => "realization",
            Suite::Adx => "adx",
            Suite::StarAssoc => "star-assoc",
            Suite::Ode => "ode",
            Suite::KInverse => "kinverse",
            Suite::Algebroid => "algebroid",
            Suite::All => "all",
        }
    }

    pub fn names() -> Vec<&'static str> {
        Self::MATRIX.iter().map(|s| s.name()).chain(["all"]).collect()
    }

    /// Smallest truncation order the suite is meaningful at.
    pub fn min_order(self) -> usize {
        match self {
            Suite::LogExp | Suite::All => 3,
            Suite::Cocycle | Suite::RMatrix | Suite::Realization | Suite::Adx => 2,
            Suite::Normalization | Suite::Coproduct | Suite::Antipode | Suite::Coboundary | Suite::KappaMinkowski => 1,
            Suite::StarAssoc | Suite::Ode | Suite::KInverse | Suite::Algebroid => 0,
        }
    }

    fn expand(self) -> Vec<Suite> {
        match self {
            Suite::All => Self::MATRIX.to_vec(),
            s => vec![s],
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::MATRIX
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite `{s}`; expected one of {}", Suite::names().join(", "))))
    }
}

/// Parameters shared by every suite.
#[derive(Clone, Debug, PartialEq)]
pub struct SuiteConfig {
    pub u_values: Vec<Rational>,
    pub order: usize,
    /// Directions `v` of `a = h·v` for the Weyl-algebra suites.
    pub v_list: Vec<Vec<Rational>>,
    /// Numeric deformation vector for the momentum suites.
    pub a: Vec<Rational>,
    pub seed: u64,
    pub samples: usize,
    pub tol: f64,
}

pub const DEFAULT_ORDER: usize = 4;
pub const DEFAULT_DIM: usize = 2;
pub const DEFAULT_SEED: u64 = 0x6a74_7769_7374;
pub const DEFAULT_SAMPLES: usize = 1000;
pub const DEFAULT_TOL: f64 = 1e-12;
pub const ODE_TOL: f64 = 1e-6;

/// `(1, 0, …, 0)` and `(1/2, -1/3, 1/5, -1/7, …)`: two non-parallel directions.
pub fn default_v_list(dim: usize) -> Vec<Vec<Rational>> {
    let e1 = (0..dim).map(|mu| if mu == 0 { Rational::one() } else { Rational::zero() }).collect();
    const PRIMES: [i64; 8] = [2, 3, 5, 7, 11, 13, 17, 19];
    let w = (0..dim)
        .map(|mu| {
            let sign = if mu % 2 == 0 { 1 } else { -1 };
            rat(sign, PRIMES[mu % PRIMES.len()] * (1 + (mu / PRIMES.len()) as i64))
        })
        .collect();
    vec![e1, w]
}

/// `(1/10, 0, …, 0)`.
pub fn default_a(dim: usize) -> Vec<Rational> {
    (0..dim).map(|mu| if mu == 0 { rat(1, 10) } else { Rational::zero() }).collect()
}

impl SuiteConfig {
    pub fn with_dim(dim: usize) -> Self {
        SuiteConfig {
            u_values: default_u_values(),
            order: DEFAULT_ORDER,
            v_list: default_v_list(dim),
            a: default_a(dim),
            seed: DEFAULT_SEED,
            samples: DEFAULT_SAMPLES,
            tol: DEFAULT_TOL,
        }
    }

    fn validate(&self, suite: Suite) -> Result<()> {
        if self.order < suite.min_order() {
            return Err(Error::Precondition(format!(
                "suite `{suite}` requires order N ≥ {}, got {}",
                suite.min_order(),
                self.order
            )));
        }
        if self.u_values.is_empty() {
            return Err(Error::Precondition("the u-list is empty".into()));
        }
        for v in &self.v_list {
            if v.len() < 2 {
                return Err(Error::Precondition(format!("v must have dim ≥ 2, got {}", v.len())));
            }
        }
        if self.a.is_empty() {
            return Err(Error::Precondition("the deformation vector a is empty".into()));
        }
        Ok(())
    }
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self::with_dim(DEFAULT_DIM)
    }
}

fn show_vec(v: &[Rational]) -> String {
    format!("({})", v.iter().map(format_rational).collect::<Vec<_>>().join(", "))
}

enum Job {
    Twist(Suite, Rational),
    Weyl(Suite, Rational, Vec<Rational>),
    NormalOrdered(Rational, Vec<Rational>),
    Momentum(Suite, Rational),
}

fn jobs(suite: Suite, cfg: &SuiteConfig) -> Vec<Job> {
    let mut out = Vec::new();
    for s in suite.expand() {
        for u in &cfg.u_values {
            match s {
                Suite::KappaMinkowski | Suite::Realization | Suite::Adx => {
                    for v in &cfg.v_list {
                        out.push(Job::Weyl(s, u.clone(), v.clone()));
                        if s == Suite::Realization && (u.is_zero() || u.is_one()) {
                            out.push(Job::NormalOrdered(u.clone(), v.clone()));
                        }
                    }
                }
                Suite::StarAssoc | Suite::Ode | Suite::KInverse | Suite::Algebroid => {
                    out.push(Job::Momentum(s, u.clone()))
                }
                _ => out.push(Job::Twist(s, u.clone())),
            }
        }
    }
    out
}

fn tag(mut r: VerificationReport, v: &[Rational]) -> VerificationReport {
    r.identity = format!("{} v={}", r.identity, show_vec(v));
    r
}

fn run_job(job: &Job, cfg: &SuiteConfig) -> VerificationReport {
    let started = Instant::now();
    let (identity, u) = match job {
        Job::Twist(s, u) | Job::Weyl(s, u, _) | Job::Momentum(s, u) => (s.name().to_string(), u),
        Job::NormalOrdered(u, _) => ("normal-ordered".to_string(), u),
    };
    let result = (|| -> Result<VerificationReport> {
        match job {
            Job::Twist(s, u) => {
                let fam = TwistFamily::build(u, cfg.order)?;
                match s {
                    Suite::Cocycle => verify_cocycle(&fam),
                    Suite::Normalization => verify_normalization(&fam),
                    Suite::Coproduct => verify_coproduct(&fam),
                    Suite::Antipode => verify_antipode(&fam),
                    Suite::RMatrix => verify_r_matrix(&fam),
                    Suite::Coboundary => verify_coboundary(&fam),
                    Suite::LogExp => verify_log_expansion(&fam),
                    _ => unreachable!("not a twist suite"),
                }
            }
            Job::Weyl(s, u, v) => {
                let spec = RealizationSpec::new(u.clone(), v.clone())?;
                let r = match s {
                    Suite::KappaMinkowski => verify_kappa_minkowski(&spec, cfg.order)?,
                    Suite::Realization => verify_realizations(&spec, cfg.order)?,
                    Suite::Adx => verify_adx(&spec, cfg.order)?,
                    _ => unreachable!("not a Weyl suite"),
                };
                Ok(tag(r, v))
            }
            Job::NormalOrdered(u, v) => {
                let spec = RealizationSpec::new(u.clone(), v.clone())?;
                Ok(tag(verify_normal_ordered_twist(&spec, cfg.order)?, v))
            }
            Job::Momentum(s, u) => {
                let setup = MomentumSetup::new(u.clone(), cfg.a.clone())?;
                match s {
                    Suite::StarAssoc => Ok(verify_star_associativity(&setup, cfg.samples, cfg.seed)?.0),
                    Suite::Ode => verify_ode(&setup, cfg.samples, cfg.seed, ODE_TOL.max(cfg.tol)),
                    Suite::KInverse => verify_kinverse(&setup, cfg.samples, cfg.seed, cfg.tol),
                    Suite::Algebroid => verify_algebroid(&setup, cfg.samples, cfg.seed, cfg.tol),
                    _ => unreachable!("not a momentum suite"),
                }
            }
        }
    })();
    result.unwrap_or_else(|e| VerificationReport::failed(&identity, u, cfg.order, e.to_string(), started))
}

/// Runs a suite over the configured `u` values.
///
/// Jobs run on a small thread pool; reports come back in the fixed order
/// (suite, u, v) regardless of scheduling.
pub fn run_suite(suite: Suite, cfg: &SuiteConfig) -> Result<Vec<VerificationReport>> {
    for s in suite.expand() {
        cfg.validate(s)?;
    }
    let jobs = jobs(suite, cfg);
    let slots: Vec<Mutex<Option<VerificationReport>>> = jobs.iter().map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(jobs.len()).max(1);
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(job) = jobs.get(i) else { break };
                let report = run_job(job, cfg);
                *slots[i].lock().expect("report slot") = Some(report);
            });
        }
    });
    Ok(slots.into_iter().map(|s| s.into_inner().expect("report slot").expect("every job ran")).collect())
}
