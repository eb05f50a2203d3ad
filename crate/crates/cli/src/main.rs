use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use jtwist_core::expand::{expand, Expansion};
use jtwist_core::momentum::{rel_dev, DeformationContext, StarMethod};
use jtwist_core::scalar::{format_rational, parse_rational_list, rational_to_f64, Rational};
use jtwist_core::suite::{default_a, default_v_list, run_suite, Suite, SuiteConfig, DEFAULT_DIM};
use jtwist_core::twist::{default_u_values, VerificationReport};
use jtwist_core::Error;

const OUT_DIR_VAR: &str = "JTWIST_OUT_DIR";

#[derive(Parser)]
#[command(name = "jtwist", version, about = "Jordanian twist family: expansions, identity checks and star products")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print F, F⁻¹, log F, R, Δp, ΔD, S(p), S(D), x̂ and ŷ to grade N.
    Expand(Common),
    /// Run one verification suite (or `all`) over the u-list.
    Verify {
        /// cocycle, normalization, coproduct, antipode, rmatrix, coboundary, logexp,
        /// kappa-minkowski, realization, adx, star-assoc, ode, kinverse, algebroid or all
        suite: String,
        #[command(flatten)]
        common: Common,
    },
    /// Exponent D(k,q) of e^{ik·x} ⋆ e^{iq·x}.
    Star {
        #[arg(long, allow_hyphen_values = true)]
        k: String,
        #[arg(long, allow_hyphen_values = true)]
        q: String,
        /// Also evaluate every other route and report the largest deviation.
        #[arg(long)]
        cross_check: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Run the full matrix and write the JSON report to a file.
    Report(Common),
}

#[derive(Args)]
struct Common {
    /// Comma-separated rationals, e.g. 0,1/2,-1/3.
    #[arg(long, allow_hyphen_values = true)]
    u: Option<String>,
    /// Truncation order N.
    #[arg(long, default_value_t = jtwist_core::suite::DEFAULT_ORDER)]
    order: usize,
    /// Spacetime dimension; inferred from the given vectors when omitted.
    #[arg(long)]
    dim: Option<usize>,
    /// Direction v of the Weyl-algebra deformation vector a = h·v.
    #[arg(long, allow_hyphen_values = true)]
    v: Option<String>,
    /// Numeric deformation vector for the momentum calculus.
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    #[arg(long, default_value_t = jtwist_core::suite::DEFAULT_SEED)]
    seed: u64,
    #[arg(long, default_value_t = jtwist_core::suite::DEFAULT_SAMPLES)]
    samples: usize,
    #[arg(long, default_value_t = jtwist_core::suite::DEFAULT_TOL)]
    tol: f64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write output to this file; relative paths resolve against $JTWIST_OUT_DIR.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

enum Failure {
    Usage(String),
    Runtime(anyhow::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) | Error::Precondition(_) | Error::DimensionMismatch { .. } => Failure::Usage(e.to_string()),
            e => Failure::Runtime(e.into()),
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Runtime(e)
    }
}

type Outcome = std::result::Result<bool, Failure>;

fn parse_list(flag: &str, s: &str) -> Result<Vec<Rational>, Failure> {
    parse_rational_list(s).map_err(|e| Failure::Usage(format!("--{flag}: {e}")))
}

impl Common {
    fn u_values(&self) -> Result<Vec<Rational>, Failure> {
        self.u.as_deref().map_or_else(|| Ok(default_u_values()), |s| parse_list("u", s))
    }

    /// Explicit `--dim`, else the length of the first given vector, else the default.
    fn dim(&self, extra: &[&Vec<Rational>]) -> Result<usize, Failure> {
        let v = self.v.as_deref().map(|s| parse_list("v", s)).transpose()?;
        let a = self.a.as_deref().map(|s| parse_list("a", s)).transpose()?;
        let lens: Vec<usize> = v.iter().chain(a.iter()).chain(extra.iter().copied()).map(Vec::len).collect();
        let dim = self.dim.or(lens.first().copied()).unwrap_or(DEFAULT_DIM);
        if let Some(bad) = lens.iter().find(|&&n| n != dim) {
            return Err(Failure::Usage(format!("vector of length {bad} does not match dim {dim}")));
        }
        Ok(dim)
    }

    fn config(&self) -> Result<SuiteConfig, Failure> {
        let dim = self.dim(&[])?;
        let mut cfg = SuiteConfig::with_dim(dim);
        cfg.u_values = self.u_values()?;
        cfg.order = self.order;
        if let Some(v) = &self.v {
            cfg.v_list = vec![parse_list("v", v)?];
        } else {
            cfg.v_list = default_v_list(dim);
        }
        if let Some(a) = &self.a {
            cfg.a = parse_list("a", a)?;
        }
        cfg.seed = self.seed;
        cfg.samples = self.samples;
        cfg.tol = self.tol;
        Ok(cfg)
    }

    fn emit(&self, text: String, json: serde_json::Value) -> anyhow::Result<()> {
        let body = match self.format {
            Format::Text => text,
            Format::Json => serde_json::to_string_pretty(&json)? + "\n",
        };
        match &self.output {
            Some(path) => write_file(&resolve(path), &body),
            None => {
                print!("{body}");
                Ok(())
            }
        }
    }
}

fn resolve(path: &PathBuf) -> PathBuf {
    match std::env::var_os(OUT_DIR_VAR) {
        Some(dir) if path.is_relative() => PathBuf::from(dir).join(path),
        _ => path.clone(),
    }
}

fn write_file(path: &PathBuf, body: &str) -> anyhow::Result<()> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent).with_context(|| format!("creating {}", parent.display()))?;
    }
    fs::write(path, body).with_context(|| format!("writing {}", path.display()))
}

fn render_line(r: &VerificationReport) -> String {
    let status = if r.pass { "PASS" } else { "FAIL" };
    format!("{status} {:<44} u={:<5} N={} {:>9.1}ms  {}", r.identity, r.u, r.order, r.ms, r.residual)
}

fn render_reports(reports: &[VerificationReport]) -> String {
    let mut out: String = reports.iter().map(|r| render_line(r) + "\n").collect();
    let passed = reports.iter().filter(|r| r.pass).count();
    out.push_str(&format!("{passed}/{} passed\n", reports.len()));
    out
}

fn cmd_expand(common: &Common) -> Outcome {
    let cfg = common.config()?;
    let v = &cfg.v_list[0];
    let expansions = cfg.u_values.iter().map(|u| expand(u, cfg.order, v)).collect::<Result<Vec<Expansion>, _>>()?;
    let mut text = String::new();
    for e in &expansions {
        text.push_str(&format!("u = {}, N = {}\n", e.u, e.order));
        for s in &e.sections {
            text.push_str(&format!("  {} = {}\n", s.name, s.value));
        }
    }
    common.emit(text, serde_json::to_value(&expansions).map_err(anyhow::Error::from)?)?;
    Ok(true)
}

fn cmd_verify(suite: &str, common: &Common) -> Outcome {
    let suite: Suite = suite.parse()?;
    let reports = run_suite(suite, &common.config()?)?;
    common.emit(render_reports(&reports), serde_json::to_value(&reports).map_err(anyhow::Error::from)?)?;
    Ok(reports.iter().all(|r| r.pass))
}

fn cmd_report(common: &Common) -> Outcome {
    let reports = run_suite(Suite::All, &common.config()?)?;
    let path = resolve(common.output.as_ref().unwrap_or(&PathBuf::from("report.json")));
    write_file(&path, &(serde_json::to_string_pretty(&reports).map_err(anyhow::Error::from)? + "\n"))?;
    let failed: Vec<&VerificationReport> = reports.iter().filter(|r| !r.pass).collect();
    println!("{}/{} passed; report written to {}", reports.len() - failed.len(), reports.len(), path.display());
    for r in &failed {
        println!("{}", render_line(r));
    }
    Ok(failed.is_empty())
}

fn join(xs: &[Rational]) -> String {
    xs.iter().map(format_rational).collect::<Vec<_>>().join(", ")
}

fn cmd_star(k: &str, q: &str, cross_check: bool, common: &Common) -> Outcome {
    let k = parse_list("k", k)?;
    let q = parse_list("q", q)?;
    let dim = common.dim(&[&k, &q])?;
    let a = match &common.a {
        Some(s) => parse_list("a", s)?,
        None => default_a(dim),
    };
    let us = common.u_values().map(|us| if common.u.is_none() { vec![us[0].clone()] } else { us })?;
    let mut text = String::new();
    let mut rows = Vec::new();
    let mut all_ok = true;
    for u in &us {
        let exact = DeformationContext::from_rational(u, &a)?;
        let d = exact.deformed_sum(&k, &q).map_err(|e| anyhow!("u = {}: {e}", format_rational(u)))?;
        let prefix = if us.len() > 1 { format!("u = {}: ", format_rational(u)) } else { String::new() };
        text.push_str(&format!("{prefix}{}\n", join(&d)));
        let mut row =
            serde_json::json!({ "u": format_rational(u), "d": d.iter().map(format_rational).collect::<Vec<_>>() });
        if cross_check {
            let float = exact.to_f64();
            let (kf, qf, df) = (to_f64(&k), to_f64(&q), to_f64(&d));
            let mut methods = serde_json::Map::new();
            let mut max_dev = 0f64;
            for m in StarMethod::ALL {
                match float.star_plane_waves(&kf, &qf, m) {
                    Ok(x) => {
                        let dev = rel_dev(&x, &df);
                        max_dev = max_dev.max(dev);
                        text.push_str(&format!("  {:<14} {}  (deviation {dev:e})\n", m.name(), floats(&x)));
                        methods.insert(m.name().into(), serde_json::json!({ "value": x, "deviation": dev }));
                    }
                    Err(Error::Unsupported(why)) => {
                        text.push_str(&format!("  {:<14} unavailable: {why}\n", m.name()));
                        methods.insert(m.name().into(), serde_json::json!({ "unavailable": why }));
                    }
                    Err(e) => return Err(anyhow!("{}: {e}", m.name()).into()),
                }
            }
            let ok = max_dev <= common.tol;
            all_ok &= ok;
            text.push_str(&format!("  max deviation {max_dev:e} ({})\n", if ok { "PASS" } else { "FAIL" }));
            row["methods"] = methods.into();
            row["max_deviation"] = max_dev.into();
            row["pass"] = ok.into();
        }
        rows.push(row);
    }
    common.emit(text, serde_json::Value::Array(rows))?;
    Ok(all_ok)
}

fn to_f64(xs: &[Rational]) -> Vec<f64> {
    xs.iter().map(rational_to_f64).collect()
}

fn floats(xs: &[f64]) -> String {
    xs.iter().map(|x| format!("{x:.17}")).collect::<Vec<_>>().join(", ")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Expand(c) => cmd_expand(c),
        Command::Verify { suite, common } => cmd_verify(suite, common),
        Command::Star { k, q, cross_check, common } => cmd_star(k, q, *cross_check, common),
        Command::Report(c) => cmd_report(c),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
