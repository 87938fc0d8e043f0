//! Text renderings of a [`SymValue`]: ASCII, LaTeX, decimal and JSON.

use std::fmt::Write;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use sinpow_core::closedform::{classify, evaluate, sym_to_decimal, ConvergenceClass, SymValue};
use sinpow_core::exact::ExactRational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Exact,
    Decimal,
    Latex,
    Json,
}

/// ASCII form: `3/8*pi`, `15/16*ln(3) - 5/16*ln(5)`.
pub fn render_exact(v: &SymValue) -> String {
    v.to_string()
}

fn signed_terms(v: &SymValue) -> Vec<(ExactRational, Option<u64>)> {
    let mut terms = Vec::new();
    if !v.pi_coeff().is_zero() {
        terms.push((v.pi_coeff().clone(), None));
    }
    for t in v.log_terms() {
        terms.push((t.coeff.clone(), Some(t.prime)));
    }
    terms
}

/// LaTeX form in the usual fraction style: `\frac{3\pi}{8}`,
/// `\frac{15}{16}\ln 3 - \frac{5}{16}\ln 5`.
pub fn render_latex(v: &SymValue) -> String {
    let terms = signed_terms(v);
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (c, log)) in terms.iter().enumerate() {
        let neg = c.is_negative();
        out.push_str(match (i, neg) {
            (0, true) => "-",
            (0, false) => "",
            (_, true) => " - ",
            (_, false) => " + ",
        });
        let mag = c.abs();
        let (num, den) = (mag.numer(), mag.denom());
        match log {
            None => {
                let top = if num.is_one() {
                    "\\pi".to_string()
                } else {
                    format!("{num}\\pi")
                };
                if den.is_one() {
                    out.push_str(&top);
                } else {
                    let _ = write!(out, "\\frac{{{top}}}{{{den}}}");
                }
            }
            Some(prime) => {
                if !den.is_one() {
                    let _ = write!(out, "\\frac{{{num}}}{{{den}}}");
                } else if !num.is_one() {
                    let _ = write!(out, "{num}");
                }
                let _ = write!(out, "\\ln {prime}");
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonRational {
    pub num: String,
    pub den: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonLogTerm {
    pub num: String,
    pub den: String,
    pub arg: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DivergenceSide {
    #[serde(rename = "at_zero")]
    AtZero,
    #[serde(rename = "at_infinity")]
    AtInfinity,
}

/// The machine-readable record for one `(p, q)`. Field order is the wire
/// order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvalRecord {
    pub p: u32,
    pub q: u32,
    pub convergent: bool,
    pub pi_coeff: JsonRational,
    pub log_terms: Vec<JsonLogTerm>,
    /// Decimal expansion; `"inf"` for a divergent integral.
    pub decimal: String,
    pub divergence: Option<DivergenceSide>,
}

fn json_rational(r: &ExactRational) -> JsonRational {
    JsonRational {
        num: r.numer().to_string(),
        den: r.denom().to_string(),
    }
}

fn parse_rational(num: &str, den: &str) -> Result<ExactRational, String> {
    let n: BigInt = num.parse().map_err(|e| format!("bad numerator {num:?}: {e}"))?;
    let d: BigInt = den.parse().map_err(|e| format!("bad denominator {den:?}: {e}"))?;
    if d.is_zero() {
        return Err("zero denominator".to_string());
    }
    Ok(ExactRational::new(n, d))
}

impl EvalRecord {
    pub fn new(p: u32, q: u32, digits: u32) -> Self {
        match evaluate(p, q) {
            Ok(v) => EvalRecord {
                p,
                q,
                convergent: true,
                pi_coeff: json_rational(v.pi_coeff()),
                log_terms: v
                    .log_terms()
                    .iter()
                    .map(|t| JsonLogTerm {
                        num: t.coeff.numer().to_string(),
                        den: t.coeff.denom().to_string(),
                        arg: t.prime,
                    })
                    .collect(),
                decimal: sym_to_decimal(&v, digits),
                divergence: None,
            },
            Err(e) => EvalRecord {
                p,
                q,
                convergent: false,
                pi_coeff: JsonRational {
                    num: "0".to_string(),
                    den: "1".to_string(),
                },
                log_terms: Vec::new(),
                decimal: "inf".to_string(),
                divergence: Some(match e.class {
                    ConvergenceClass::DivergentAtZero => DivergenceSide::AtZero,
                    _ => DivergenceSide::AtInfinity,
                }),
            },
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("record serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }

    /// The exact value carried by the record.
    pub fn value(&self) -> Result<SymValue, String> {
        let pi = parse_rational(&self.pi_coeff.num, &self.pi_coeff.den)?;
        let logs = self
            .log_terms
            .iter()
            .map(|t| parse_rational(&t.num, &t.den).map(|c| (c, t.arg)))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(SymValue::from_parts(pi, logs))
    }
}

/// Renders the value of `I(p, q)` in `format`, or `None` when it diverges
/// and the format has no representation for that.
pub fn render_cell(p: u32, q: u32, format: OutputFormat, digits: u32) -> Option<String> {
    if format == OutputFormat::Json {
        return Some(EvalRecord::new(p, q, digits).to_json());
    }
    if classify(p, q) != ConvergenceClass::Convergent {
        return None;
    }
    let v = evaluate(p, q).ok()?;
    Some(match format {
        OutputFormat::Exact => render_exact(&v),
        OutputFormat::Decimal => sym_to_decimal(&v, digits),
        OutputFormat::Latex => render_latex(&v),
        OutputFormat::Json => unreachable!(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn val(p: u32, q: u32) -> SymValue {
        evaluate(p, q).unwrap()
    }

    #[test]
    fn latex_shapes() {
        assert_eq!(render_latex(&val(3, 3)), "\\frac{3\\pi}{8}");
        assert_eq!(render_latex(&val(1, 1)), "\\frac{\\pi}{2}");
        assert_eq!(render_latex(&val(4, 3)), "\\ln 2");
        assert_eq!(render_latex(&val(3, 2)), "\\frac{3}{4}\\ln 3");
        assert_eq!(
            render_latex(&val(5, 2)),
            "\\frac{15}{16}\\ln 3 - \\frac{5}{16}\\ln 5"
        );
        assert_eq!(render_latex(&SymValue::zero()), "0");
    }

    #[test]
    fn exact_shapes() {
        assert_eq!(render_exact(&val(5, 2)), "15/16*ln(3) - 5/16*ln(5)");
        assert_eq!(render_exact(&val(5, 5)), "115/384*pi");
        assert_eq!(render_exact(&val(4, 3)), "ln(2)");
    }

    #[test]
    fn json_layout() {
        assert_eq!(
            EvalRecord::new(5, 2, 12).to_json(),
            r#"{"p":5,"q":2,"convergent":true,"pi_coeff":{"num":"0","den":"1"},"log_terms":[{"num":"15","den":"16","arg":3},{"num":"-5","den":"16","arg":5}],"decimal":"0.526999672991","divergence":null}"#
        );
        assert_eq!(
            EvalRecord::new(2, 1, 12).to_json(),
            r#"{"p":2,"q":1,"convergent":false,"pi_coeff":{"num":"0","den":"1"},"log_terms":[],"decimal":"inf","divergence":"at_infinity"}"#
        );
        assert!(EvalRecord::new(1, 2, 12).to_json().ends_with(r#""divergence":"at_zero"}"#));
    }

    #[test]
    fn record_value_round_trip() {
        let r = EvalRecord::new(5, 4, 12);
        assert_eq!(r.value().unwrap(), val(5, 4));
        let bad = r#"{"p":1,"q":1,"convergent":true,"pi_coeff":{"num":"1","den":"0"},"log_terms":[],"decimal":"x","divergence":null}"#;
        assert!(EvalRecord::from_json(bad).unwrap().value().is_err());
    }

    #[test]
    fn divergent_cell_has_no_text() {
        assert_eq!(render_cell(2, 1, OutputFormat::Exact, 12), None);
        assert_eq!(render_cell(1, 1, OutputFormat::Exact, 12).as_deref(), Some("1/2*pi"));
    }
}
