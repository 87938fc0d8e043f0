use std::process::{Command, Output};

use proptest::prelude::*;
use sinpow_cli::EvalRecord;

fn sinpow(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sinpow"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn eval_exact() {
    let o = sinpow(&["eval", "5", "2", "--format", "exact"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "15/16*ln(3) - 5/16*ln(5)\n");
}

#[test]
fn eval_latex() {
    let o = sinpow(&["eval", "3", "3", "--format", "latex"]);
    assert_eq!(stdout(&o), "\\frac{3\\pi}{8}\n");
}

#[test]
fn eval_decimal_digits() {
    let o = sinpow(&["eval", "1", "1", "--format", "decimal", "--digits", "10"]);
    assert_eq!(stdout(&o), "1.5707963268\n");
    let o = sinpow(&["eval", "1", "1", "--format", "decimal"]);
    assert_eq!(stdout(&o), "1.570796326795\n");
}

#[test]
fn eval_divergence_statuses() {
    let o = sinpow(&["eval", "2", "1"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("diverges at infinity (q=1, p even)"));
    let o = sinpow(&["eval", "1", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("diverges at zero"));
    let o = sinpow(&["eval", "4", "1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains(r#""divergence":"at_infinity""#));
}

#[test]
fn usage_errors_exit_one() {
    for args in [
        vec!["verify", "--pmax", "0"],
        vec!["eval", "x", "2"],
        vec!["eval", "0", "2"],
        vec!["eval", "1"],
        vec!["table", "--qmax", "51"],
        vec!["eval", "1", "1", "--format", "roman"],
        vec!["verify", "--tol", "1e-12"],
        vec![],
    ] {
        let o = sinpow(&args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
    }
    assert!(sinpow(&["--help"]).status.success());
}

#[test]
fn table_single_cell() {
    let o = sinpow(&["table", "--pmax", "1", "--qmax", "1"]);
    assert_eq!(stdout(&o), "q\\p | 1\n1   | 1/2*pi\n");
}

#[test]
fn table_six_includes_six_four() {
    let o = sinpow(&["table", "--pmax", "6", "--qmax", "6", "--format", "json"]);
    assert!(o.status.success());
    let rows: Vec<EvalRecord> = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(rows.len(), 36);
    let cell = rows.iter().find(|r| r.p == 6 && r.q == 4).unwrap();
    assert!(cell.convergent);
    assert_eq!(cell.pi_coeff.num, "1");
    assert_eq!(cell.pi_coeff.den, "8");
}

#[test]
fn table_latex_has_dashes() {
    let o = sinpow(&["table", "--pmax", "2", "--qmax", "2", "--format", "latex"]);
    let text = stdout(&o);
    assert!(text.starts_with("\\begin{tabular}"));
    assert!(text.contains("q=1 & $\\frac{\\pi}{2}$ & - \\\\"));
}

#[test]
fn verify_five_by_five() {
    let o = sinpow(&["verify", "--pmax", "5", "--qmax", "5"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let text = stdout(&o);
    assert_eq!(text.lines().filter(|l| l.ends_with("PASS") && l.starts_with("I(")).count(), 13);
    assert!(text.ends_with("13/13 PASS\n"));
}

#[test]
fn exact_and_decimal_agree() {
    for (p, q) in [(3u32, 2u32), (5, 4), (7, 3), (8, 5)] {
        let exact = stdout(&sinpow(&["eval", &p.to_string(), &q.to_string(), "--format", "json", "--digits", "15"]));
        let rec = EvalRecord::from_json(exact.trim()).unwrap();
        let dec = stdout(&sinpow(&["eval", &p.to_string(), &q.to_string(), "--format", "decimal", "--digits", "15"]));
        assert_eq!(rec.decimal, dec.trim());
        let approx = rec.value().unwrap().to_f64();
        let printed: f64 = dec.trim().parse().unwrap();
        assert!((approx - printed).abs() < 1e-14);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn json_round_trips(p in 1u32..40, q in 1u32..40, digits in 1u32..=50) {
        let text = EvalRecord::new(p, q, digits).to_json();
        let back = EvalRecord::from_json(&text).unwrap();
        prop_assert_eq!(back.to_json(), text);
        if back.convergent {
            prop_assert_eq!(back.value().unwrap(), sinpow_core::evaluate(p, q).unwrap());
        }
    }
}
