//! Acceptance matrix: one PASS/FAIL line per criterion.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use jtwist_core::momentum::{verify_star_associativity, MomentumSetup};
use jtwist_core::suite::{default_a, run_suite, Suite, SuiteConfig};
use jtwist_core::twist::{
    default_u_values, verify_antipode, verify_coboundary, verify_cocycle, verify_coproduct, verify_log_expansion,
    verify_normalization, verify_r_matrix, TwistAssembly, TwistFamily, VerificationReport,
};
use jtwist_core::Result;

const ORDER: usize = 4;
const TOL: f64 = 1e-12;
const SAMPLES: usize = 1000;
const SEED: u64 = 20_190_917;
const CRITERION_1_BUDGET: Duration = Duration::from_secs(10);
const VERIFY_ALL_BUDGET: Duration = Duration::from_secs(120);

type Check = fn(&TwistFamily) -> Result<VerificationReport>;

const TWIST_CHECKS: [(&str, Check); 7] = [
    ("cocycle", verify_cocycle),
    ("normalization", verify_normalization),
    ("coproduct", verify_coproduct),
    ("antipode", verify_antipode),
    ("rmatrix", verify_r_matrix),
    ("coboundary", verify_coboundary),
    ("logexp", verify_log_expansion),
];

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn config(dim: usize) -> SuiteConfig {
    SuiteConfig {
        u_values: default_u_values(),
        order: ORDER,
        seed: SEED,
        samples: SAMPLES,
        tol: TOL,
        ..SuiteConfig::with_dim(dim)
    }
}

fn run(suite: Suite, cfg: &SuiteConfig) -> Vec<VerificationReport> {
    run_suite(suite, cfg).expect("valid acceptance configuration")
}

fn summarize(reports: &[VerificationReport]) -> Outcome {
    let failed: Vec<String> = reports
        .iter()
        .filter(|r| !r.pass)
        .map(|r| format!("{} u={}: {}", r.identity, r.u, shorten(&r.residual)))
        .collect();
    let passed = reports.len() - failed.len();
    let mut detail = format!("{passed}/{} records pass", reports.len());
    if !failed.is_empty() {
        detail.push_str(&format!(" [{}]", failed.join(" | ")));
    }
    Outcome { pass: failed.is_empty() && !reports.is_empty(), detail }
}

fn shorten(s: &str) -> String {
    match s.char_indices().nth(120) {
        Some((i, _)) => format!("{}…", &s[..i]),
        None => s.to_string(),
    }
}

fn criterion_1() -> Outcome {
    let started = Instant::now();
    let cfg = config(2);
    let mut reports = run(Suite::Cocycle, &cfg);
    reports.extend(run(Suite::Normalization, &cfg));
    let elapsed = started.elapsed();
    let mut out = summarize(&reports);
    out.pass &= elapsed < CRITERION_1_BUDGET;
    out.detail.push_str(&format!(", {:.2}s (budget {}s)", elapsed.as_secs_f64(), CRITERION_1_BUDGET.as_secs()));
    out
}

fn suite_criterion(suite: Suite) -> Outcome {
    summarize(&run(suite, &config(2)))
}

fn criterion_7() -> Outcome {
    let mut reports = Vec::new();
    let mut directions = 0;
    for dim in 2..=4 {
        let cfg = config(dim);
        directions += cfg.v_list.len();
        reports.extend(run(Suite::KappaMinkowski, &cfg));
        reports.extend(run(Suite::Realization, &cfg));
    }
    let mut out = summarize(&reports);
    out.detail.push_str(&format!(", dims 2-4, {directions} (dim, v) pairs"));
    out
}

fn criterion_8() -> Outcome {
    let cfg = config(2);
    let mut reports = Vec::new();
    let mut min_checked = usize::MAX;
    for u in &cfg.u_values {
        let setup = MomentumSetup::new(u.clone(), default_a(2)).unwrap();
        let (report, stats) = verify_star_associativity(&setup, SAMPLES, SEED).unwrap();
        min_checked = min_checked.min(stats.checked);
        reports.push(report);
    }
    for suite in [Suite::KInverse, Suite::Ode, Suite::Algebroid] {
        reports.extend(run(suite, &cfg));
    }
    let mut out = summarize(&reports);
    out.pass &= min_checked >= SAMPLES;
    out.detail.push_str(&format!(", ≥{min_checked} exact triples per u"));
    out
}

/// Failing `(check, u)` pairs for a given assembly; construction failure counts as one.
fn failing_pairs(signs: TwistAssembly) -> BTreeSet<(String, String)> {
    let mut out = BTreeSet::new();
    for u in default_u_values() {
        match TwistFamily::build_with(&u, ORDER, signs) {
            Ok(fam) => {
                for (name, check) in TWIST_CHECKS {
                    if !check(&fam).map(|r| r.pass).unwrap_or(false) {
                        out.insert((name.to_string(), u.to_string()));
                    }
                }
            }
            Err(_) => {
                out.insert(("construction".to_string(), u.to_string()));
            }
        }
    }
    out
}

fn criterion_9() -> Outcome {
    let baseline = failing_pairs(TwistAssembly::STANDARD);
    let mut undetected = Vec::new();
    let mut counts = Vec::new();
    for (name, signs) in TwistAssembly::single_flips() {
        let new_failures = failing_pairs(signs).difference(&baseline).count();
        counts.push(format!("{name}: {new_failures}"));
        if new_failures == 0 {
            undetected.push(name);
        }
    }
    let mut detail = format!("new failing (suite, u) pairs per flip [{}]", counts.join(", "));
    if !undetected.is_empty() {
        detail.push_str(&format!("; undetected: {}", undetected.join(", ")));
    }
    Outcome { pass: undetected.is_empty(), detail }
}

fn verify_all_wall_time() -> Outcome {
    let started = Instant::now();
    let reports = run(Suite::All, &config(2));
    let elapsed = started.elapsed();
    let passed = reports.iter().filter(|r| r.pass).count();
    Outcome {
        pass: elapsed < VERIFY_ALL_BUDGET,
        detail: format!(
            "{:.2}s (budget {}s), {passed}/{} records pass",
            elapsed.as_secs_f64(),
            VERIFY_ALL_BUDGET.as_secs(),
            reports.len()
        ),
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("1 cocycle and normalization", criterion_1),
        ("2 coproduct closure", || suite_criterion(Suite::Coproduct)),
        ("3 antipode closure", || suite_criterion(Suite::Antipode)),
        ("4 R-matrix", || suite_criterion(Suite::RMatrix)),
        ("5 coboundary", || suite_criterion(Suite::Coboundary)),
        ("6 one-exponent formula", || suite_criterion(Suite::LogExp)),
        ("7 kappa-Minkowski realizations", criterion_7),
        ("8 momentum calculus", criterion_8),
        ("9 mutation sensitivity", criterion_9),
        ("verify-all wall time", verify_all_wall_time),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        let outcome = f();
        if !outcome.pass {
            failed += 1;
        }
        println!("{} criterion {name}: {}", if outcome.pass { "PASS" } else { "FAIL" }, outcome.detail);
    }
    println!("acceptance: {}/{} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
