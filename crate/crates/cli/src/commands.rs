//! The `eval`, `table` and `verify` subcommands, as pure functions returning
//! the text to print and the exit status.

use std::fmt::Write;

use sinpow_core::closedform::{classify, evaluate, sym_to_decimal, ConvergenceClass};
use sinpow_core::oracle::{integrate_sinpow, MIN_TOLERANCE};

use crate::render::{render_cell, EvalRecord, OutputFormat};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DIVERGES_AT_ZERO: i32 = 2;
pub const EXIT_DIVERGES_AT_INFINITY: i32 = 3;
pub const EXIT_VERIFY_FAILED: i32 = 4;

pub const MAX_GRID: u32 = 50;
pub const MAX_DIGITS: u32 = 50;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub status: i32,
}

impl Outcome {
    fn usage(msg: impl Into<String>) -> Self {
        Outcome {
            stdout: String::new(),
            stderr: format!("error: {}\n", msg.into()),
            status: EXIT_USAGE,
        }
    }
}

fn check_digits(digits: u32) -> Result<(), Outcome> {
    if digits == 0 || digits > MAX_DIGITS {
        return Err(Outcome::usage(format!("--digits must be in 1..={MAX_DIGITS}")));
    }
    Ok(())
}

fn check_grid(pmax: u32, qmax: u32) -> Result<(), Outcome> {
    for (name, v) in [("--pmax", pmax), ("--qmax", qmax)] {
        if v == 0 || v > MAX_GRID {
            return Err(Outcome::usage(format!("{name} must be in 1..={MAX_GRID}")));
        }
    }
    Ok(())
}

/// Diagnostic for a divergent cell.
pub fn divergence_message(p: u32, q: u32, class: ConvergenceClass) -> String {
    match class {
        ConvergenceClass::DivergentAtZero => format!("diverges at zero (q > p) for p={p}, q={q}"),
        ConvergenceClass::DivergentAtInfinity => "diverges at infinity (q=1, p even)".to_string(),
        ConvergenceClass::Convergent => String::new(),
    }
}

pub fn cmd_eval(p: u32, q: u32, format: OutputFormat, digits: u32) -> Outcome {
    if p == 0 || q == 0 {
        return Outcome::usage("p and q must be positive integers");
    }
    if let Err(o) = check_digits(digits) {
        return o;
    }
    let class = classify(p, q);
    let mut out = Outcome::default();
    if let Some(text) = render_cell(p, q, format, digits) {
        out.stdout = format!("{text}\n");
    }
    match class {
        ConvergenceClass::Convergent => {}
        ConvergenceClass::DivergentAtZero => {
            out.stderr = format!("{}\n", divergence_message(p, q, class));
            out.status = EXIT_DIVERGES_AT_ZERO;
        }
        ConvergenceClass::DivergentAtInfinity => {
            out.stderr = format!("{}\n", divergence_message(p, q, class));
            out.status = EXIT_DIVERGES_AT_INFINITY;
        }
    }
    out
}

/// Grid with rows `q = 1..=qmax` and columns `p = 1..=pmax`; divergent cells
/// are `-`. The JSON format emits one array of records in row order.
pub fn cmd_table(pmax: u32, qmax: u32, format: OutputFormat, digits: u32) -> Outcome {
    if let Err(o) = check_grid(pmax, qmax).and_then(|_| check_digits(digits)) {
        return o;
    }
    let mut text = String::new();
    match format {
        OutputFormat::Json => {
            let rows: Vec<EvalRecord> = (1..=qmax)
                .flat_map(|q| (1..=pmax).map(move |p| EvalRecord::new(p, q, digits)))
                .collect();
            text = serde_json::to_string(&rows).expect("records serialize");
            text.push('\n');
        }
        OutputFormat::Latex => {
            let _ = writeln!(text, "\\begin{{tabular}}{{c|{}}}", "c".repeat(pmax as usize));
            let header: Vec<String> = (1..=pmax).map(|p| format!("p={p}")).collect();
            let _ = writeln!(text, " & {} \\\\", header.join(" & "));
            text.push_str("\\hline\n");
            for q in 1..=qmax {
                let cells: Vec<String> = (1..=pmax)
                    .map(|p| match render_cell(p, q, format, digits) {
                        Some(s) => format!("${s}$"),
                        None => "-".to_string(),
                    })
                    .collect();
                let _ = writeln!(text, "q={q} & {} \\\\", cells.join(" & "));
            }
            text.push_str("\\end{tabular}\n");
        }
        OutputFormat::Exact | OutputFormat::Decimal => {
            let mut grid: Vec<Vec<String>> = Vec::new();
            let mut header = vec!["q\\p".to_string()];
            header.extend((1..=pmax).map(|p| p.to_string()));
            grid.push(header);
            for q in 1..=qmax {
                let mut row = vec![q.to_string()];
                row.extend(
                    (1..=pmax).map(|p| render_cell(p, q, format, digits).unwrap_or_else(|| "-".to_string())),
                );
                grid.push(row);
            }
            let widths: Vec<usize> = (0..=pmax as usize)
                .map(|c| grid.iter().map(|r| r[c].chars().count()).max().unwrap_or(0))
                .collect();
            for row in &grid {
                let cells: Vec<String> = row
                    .iter()
                    .zip(&widths)
                    .map(|(s, &w)| format!("{s:<w$}"))
                    .collect();
                let _ = writeln!(text, "{}", cells.join(" | ").trim_end());
            }
        }
    }
    Outcome {
        stdout: text,
        stderr: String::new(),
        status: EXIT_OK,
    }
}

/// One verified cell.
#[derive(Debug, Clone, PartialEq)]
pub struct VerifyLine {
    pub p: u32,
    pub q: u32,
    pub closed: String,
    pub estimate: Option<f64>,
    pub diff: Option<f64>,
    pub bound: Option<f64>,
    pub pass: bool,
    pub reason: Option<String>,
}

/// Checks one convergent cell: the oracle must be within `tol` of the
/// closed form and the closed form inside the oracle's error interval.
pub fn verify_cell(p: u32, q: u32, tol: f64) -> VerifyLine {
    let v = evaluate(p, q).expect("verify_cell needs a convergent cell");
    let closed = sym_to_decimal(&v, 20);
    let exact: f64 = closed.parse().expect("decimal parses");
    match integrate_sinpow(p, q, tol) {
        Ok(r) => {
            let diff = (r.estimate - exact).abs();
            // the closed form itself is rounded once on conversion to f64
            let slack = f64::EPSILON * exact.abs();
            let pass = diff < tol && diff <= r.error_bound + slack;
            VerifyLine {
                p,
                q,
                closed,
                estimate: Some(r.estimate),
                diff: Some(diff),
                bound: Some(r.error_bound),
                pass,
                reason: (!pass).then(|| "closed form outside the oracle interval".to_string()),
            }
        }
        Err(e) => VerifyLine {
            p,
            q,
            closed,
            estimate: None,
            diff: None,
            bound: None,
            pass: false,
            reason: Some(e.to_string()),
        },
    }
}

pub fn verify_lines(pmax: u32, qmax: u32, tol: f64) -> Vec<VerifyLine> {
    let mut lines = Vec::new();
    for p in 1..=pmax {
        for q in 1..=qmax {
            if classify(p, q) == ConvergenceClass::Convergent {
                lines.push(verify_cell(p, q, tol));
            }
        }
    }
    lines
}

pub fn cmd_verify(pmax: u32, qmax: u32, tol: f64) -> Outcome {
    if let Err(o) = check_grid(pmax, qmax) {
        return o;
    }
    if !(tol >= MIN_TOLERANCE) || !tol.is_finite() {
        return Outcome::usage(format!("--tol must be a number >= {MIN_TOLERANCE:e}"));
    }
    let lines = verify_lines(pmax, qmax, tol);
    let mut text = String::new();
    for l in &lines {
        let verdict = if l.pass { "PASS" } else { "FAIL" };
        match (l.estimate, l.diff, l.bound) {
            (Some(est), Some(diff), Some(bound)) => {
                let _ = write!(
                    text,
                    "I({},{}) closed={} oracle={est:.15} diff={diff:.3e} bound={bound:.3e} {verdict}",
                    l.p, l.q, l.closed
                );
            }
            _ => {
                let _ = write!(text, "I({},{}) closed={} {verdict}", l.p, l.q, l.closed);
            }
        }
        if let Some(r) = &l.reason {
            let _ = write!(text, " ({r})");
        }
        text.push('\n');
    }
    let passed = lines.iter().filter(|l| l.pass).count();
    let _ = writeln!(text, "{passed}/{} PASS", lines.len());
    Outcome {
        stdout: text,
        stderr: String::new(),
        status: if passed == lines.len() { EXIT_OK } else { EXIT_VERIFY_FAILED },
    }
}
