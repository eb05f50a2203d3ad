use std::collections::HashSet;
use std::process::{Command, Output};

use jtwist_core::borel::{Mono, TensorElement};
use jtwist_core::twist::VerificationReport;
use jtwist_core::GaussianRational;
use serde_json::Value;

fn jtwist(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jtwist")).args(args).env_remove("JTWIST_OUT_DIR").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn section(out: &str, name: &str) -> String {
    let prefix = format!("  {name} = ");
    out.lines().find_map(|l| l.strip_prefix(&prefix)).unwrap_or_else(|| panic!("no `{name}` in\n{out}")).to_string()
}

/// `((a, d) of the left leg, (a, d) of the right leg, numerator, denominator)`.
type Term = ((u32, u32), (u32, u32), i64, i64);

/// `Σ c·(left ⊗ right)` built term by term.
fn tensor_sum(terms: &[Term], order: usize) -> TensorElement {
    terms.iter().fold(TensorElement::zero(2, order), |acc, &((la, ld), (ra, rd), n, d)| {
        let t = TensorElement::monomial(
            &[Mono::new(la, 0, ld), Mono::new(ra, 0, rd)],
            GaussianRational::ratio(n, d),
            order,
        );
        &acc + &t
    })
}

#[test]
fn expand_u0_matches_series_of_minus_log_one_plus_a() {
    let out = jtwist(&["expand", "--u", "0", "--order", "2"]);
    assert!(out.status.success());
    // exp(-ln(1+A)⊗D) with -ln(1+A) = -A + A²/2
    let expected = tensor_sum(
        &[((0, 0), (0, 0), 1, 1), ((1, 0), (0, 1), -1, 1), ((2, 0), (0, 1), 1, 2), ((2, 0), (0, 2), 1, 2)],
        2,
    );
    assert_eq!(section(&stdout(&out), "F"), expected.to_string());
}

#[test]
fn expand_u1_matches_series_of_minus_d_log_one_minus_a() {
    let out = jtwist(&["expand", "--u", "1", "--order", "3"]);
    assert!(out.status.success());
    // exp(D⊗L), L = A + A²/2 + A³/3
    let expected = tensor_sum(
        &[
            ((0, 0), (0, 0), 1, 1),
            ((0, 1), (1, 0), 1, 1),
            ((0, 1), (2, 0), 1, 2),
            ((0, 1), (3, 0), 1, 3),
            ((0, 2), (2, 0), 1, 2),
            ((0, 2), (3, 0), 1, 2),
            ((0, 3), (3, 0), 1, 6),
        ],
        3,
    );
    assert_eq!(section(&stdout(&out), "F"), expected.to_string());
}

#[test]
fn expand_first_order_log_is_half_r() {
    let out = jtwist(&["expand", "--u", "1/2", "--order", "1"]);
    assert_eq!(section(&stdout(&out), "log F"), "1/2 D⊗A - 1/2 A⊗D");
}

#[test]
fn expand_lists_every_section() {
    let out = jtwist(&["expand", "--u", "-1/3", "--order", "2", "--dim", "3", "--format", "json"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let names: Vec<&str> = v[0]["sections"].as_array().unwrap().iter().map(|s| s["name"].as_str().unwrap()).collect();
    assert_eq!(
        names,
        ["F", "F^-1", "log F", "R", "Δp", "ΔD", "S(p)", "S(D)", "x̂^0", "x̂^1", "x̂^2", "ŷ^0", "ŷ^1", "ŷ^2"]
    );
    assert_eq!(v[0]["u"], "-1/3");
}

#[test]
fn verify_cocycle_passes_for_all_default_u() {
    let out = jtwist(&["verify", "cocycle", "--order", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS cocycle")).count(), 5);
    assert!(text.ends_with("5/5 passed\n"));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["verify", "cocycle", "--order", "0"][..],
        &["verify", "logexp", "--order", "2"],
        &["verify", "nonsense"],
        &["verify", "cocycle", "--u", "1/0"],
        &["verify", "cocycle", "--frobnicate"],
        &["star", "--k", "1,2", "--q", "3"],
        &["expand", "--v", "1"],
    ] {
        let out = jtwist(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", stderr(&out));
        assert!(!stderr(&out).is_empty());
    }
}

#[test]
fn verify_json_schema_and_determinism() {
    let args = ["verify", "all", "--u", "0,1/2", "--format", "json", "--samples", "50"];
    let first = jtwist(&args);
    let v: Value = serde_json::from_str(&stdout(&first)).unwrap();
    let records = v.as_array().unwrap();
    let mut seen = HashSet::new();
    for r in records {
        let obj = r.as_object().unwrap();
        let mut keys: Vec<&str> = obj.keys().map(String::as_str).collect();
        keys.sort_unstable();
        assert_eq!(keys, ["identity", "ms", "order", "pass", "residual", "u"]);
        assert!(seen.insert((obj["identity"].as_str().unwrap().to_string(), obj["u"].as_str().unwrap().to_string())));
        let typed: VerificationReport = serde_json::from_value(r.clone()).unwrap();
        assert_eq!(serde_json::to_value(&typed).unwrap(), *r);
    }
    // the commonly quoted S(D) closed form only holds at u ∈ {0, 1}
    let failing: Vec<(&str, &str)> = records
        .iter()
        .filter(|r| r["pass"] == false)
        .map(|r| (r["identity"].as_str().unwrap(), r["u"].as_str().unwrap()))
        .collect();
    assert_eq!(failing, [("antipode", "1/2")]);
    assert_eq!(first.status.code(), Some(1));

    let strip = |v: &Value| -> Vec<Value> {
        v.as_array()
            .unwrap()
            .iter()
            .map(|r| {
                let mut r = r.clone();
                r.as_object_mut().unwrap().remove("ms");
                r
            })
            .collect()
    };
    let second: Value = serde_json::from_str(&stdout(&jtwist(&args))).unwrap();
    assert_eq!(strip(&v), strip(&second));
}

#[test]
fn star_closed_form_examples() {
    let out = jtwist(&["star", "--u", "0", "--a", "1/10,0", "--k", "1,2", "--q", "3,-1"]);
    assert_eq!(stdout(&out), "37/10, 11/10\n");
    let out = jtwist(&["star", "--u", "1", "--a", "1/10,0", "--k", "1,2", "--q", "3,-1"]);
    assert_eq!(stdout(&out), "43/10, 8/5\n");
    let out = jtwist(&["star", "--u", "1/2", "--a", "0.1,0", "--k", "1,0", "--q", "0,0"]);
    assert_eq!(stdout(&out), "1, 0\n");
}

#[test]
fn star_cross_check_agrees() {
    for u in ["0", "1/2", "1", "2", "-1/3"] {
        let out = jtwist(&[
            "star",
            "--u",
            u,
            "--a",
            "1/10,0",
            "--k",
            "1,2",
            "--q",
            "3,-1",
            "--cross-check",
            "--format",
            "json",
        ]);
        assert_eq!(out.status.code(), Some(0), "u = {u}: {}", stderr(&out));
        let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
        assert!(v[0]["max_deviation"].as_f64().unwrap() < 1e-12);
        let available = v[0]["methods"].as_object().unwrap().values().filter(|m| m.get("value").is_some()).count();
        assert_eq!(available, if u == "0" || u == "1" { 4 } else { 3 });
    }
}

#[test]
fn star_singular_input_names_denominator() {
    let out = jtwist(&["star", "--u", "1/2", "--a", "1,0", "--k", "2,0", "--q", "-2,0"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("1 + u(1-u)(a·k)(a·q)"), "{}", stderr(&out));
}

#[test]
fn report_writes_into_output_directory() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_jtwist"))
        .args(["report", "--u", "0", "--order", "3", "--samples", "20"])
        .env("JTWIST_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}{}", stdout(&out), stderr(&out));
    let body = std::fs::read_to_string(dir.path().join("report.json")).unwrap();
    let reports: Vec<VerificationReport> = serde_json::from_str(&body).unwrap();
    assert!(!reports.is_empty() && reports.iter().all(|r| r.pass && r.u == "0"));
}

#[test]
fn verify_output_file_holds_rendered_reports() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("nested/cocycle.json");
    let out = jtwist(&["verify", "cocycle", "--u", "2", "--format", "json", "--output", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).is_empty());
    let reports: Vec<VerificationReport> = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(reports.len(), 1);
    assert_eq!(reports[0].u, "2");
}
