//! Convergence classification and exact closed forms for
//! `I(p, q) = ∫₀^∞ sinᵖ(t)/tᵠ dt`.
//!
//! Every convergent `(p, q)` falls in exactly one of four parity cases. Writing
//! `p = 2m` or `p = 2m+1`:
//!
//! | p    | q        | value                                                                  |
//! |------|----------|------------------------------------------------------------------------|
//! | 2m   | 2s       | `π/2^{2m} Σ_{k=1}^{m} (-1)^{k+s} C(2m,m-k) (2k)^{2s-1}/(2s-1)!`         |
//! | 2m+1 | 2s+1     | `π/2^{2m+1} Σ_{k=0}^{m} (-1)^{k+s} C(2m+1,m-k) (2k+1)^{2s}/(2s)!`       |
//! | 2m   | 2s-1     | `2^{1-2m} Σ_{k=1}^{m} (-1)^{k+s} C(2m,m-k) (2k)^{2s-2}/(2s-2)! ln k`    |
//! | 2m+1 | 2s       | `2^{-2m} Σ_{k=0}^{m} (-1)^{k+s} C(2m+1,m-k) (2k+1)^{2s-1}/(2s-1)! ln(2k+1)` |

mod decimal;
mod sym;

use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::exact::{binomial, factorial, pow2, pow_u64, rat_int};

pub use decimal::{pi_digits, sym_to_decimal};
pub use sym::{LogTerm, SymValue};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConvergenceClass {
    Convergent,
    /// `q > p`: the integrand behaves like `t^{p-q}` with `p - q ≤ -1` at zero.
    DivergentAtZero,
    /// `q = 1` with `p` even: the mean of `sinᵖ` is positive, so the tail grows
    /// like a logarithm.
    DivergentAtInfinity,
}

impl fmt::Display for ConvergenceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConvergenceClass::Convergent => "convergent",
            ConvergenceClass::DivergentAtZero => "diverges at zero",
            ConvergenceClass::DivergentAtInfinity => "diverges at infinity",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("I({p},{q}) {class}")]
pub struct DivergenceError {
    pub p: u32,
    pub q: u32,
    pub class: ConvergenceClass,
}

pub fn classify(p: u32, q: u32) -> ConvergenceClass {
    assert!(p >= 1 && q >= 1, "p and q must be positive");
    if q > p {
        ConvergenceClass::DivergentAtZero
    } else if q == 1 && p % 2 == 0 {
        ConvergenceClass::DivergentAtInfinity
    } else {
        ConvergenceClass::Convergent
    }
}

/// One of the four parity cases, carrying `m` (from `p = 2m` or `2m+1`) and
/// the case's own `s` parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Case {
    /// `p = 2m`, `q = 2s`, `1 ≤ s ≤ m`
    EvenEven { m: u32, s: u32 },
    /// `p = 2m+1`, `q = 2s+1`, `0 ≤ s ≤ m`
    OddOdd { m: u32, s: u32 },
    /// `p = 2m`, `q = 2s-1`, `2 ≤ s ≤ m`
    EvenOdd { m: u32, s: u32 },
    /// `p = 2m+1`, `q = 2s`, `1 ≤ s ≤ m`
    OddEven { m: u32, s: u32 },
}

impl Case {
    /// Maps `(p, q)` to its case, or `None` when the integral diverges.
    pub fn of(p: u32, q: u32) -> Option<Case> {
        if classify(p, q) != ConvergenceClass::Convergent {
            return None;
        }
        let m = p / 2;
        let case = match (p % 2, q % 2) {
            (0, 0) => Case::EvenEven { m, s: q / 2 },
            (1, 1) => Case::OddOdd { m, s: (q - 1) / 2 },
            (0, 1) => Case::EvenOdd { m, s: (q + 1) / 2 },
            _ => Case::OddEven { m, s: q / 2 },
        };
        case.check();
        Some(case)
    }

    fn check(&self) {
        match *self {
            Case::EvenEven { m, s } => assert!(1 <= s && s <= m),
            Case::OddOdd { m, s } => assert!(s <= m),
            Case::EvenOdd { m, s } => assert!(2 <= s && s <= m),
            Case::OddEven { m, s } => assert!(1 <= s && s <= m),
        }
    }

    /// `(p, q)` back from the case parameters.
    pub fn pq(&self) -> (u32, u32) {
        match *self {
            Case::EvenEven { m, s } => (2 * m, 2 * s),
            Case::OddOdd { m, s } => (2 * m + 1, 2 * s + 1),
            Case::EvenOdd { m, s } => (2 * m, 2 * s - 1),
            Case::OddEven { m, s } => (2 * m + 1, 2 * s),
        }
    }

    /// `true` for the cases whose value is a rational multiple of `π`.
    pub fn is_pi_case(&self) -> bool {
        matches!(self, Case::EvenEven { .. } | Case::OddOdd { .. })
    }
}

fn signed(x: BigInt, e: u32) -> BigInt {
    if e % 2 == 0 {
        x
    } else {
        -x
    }
}

/// Exact value of `I(p, q)`.
pub fn evaluate(p: u32, q: u32) -> Result<SymValue, DivergenceError> {
    let case = Case::of(p, q).ok_or(DivergenceError {
        p,
        q,
        class: classify(p, q),
    })?;
    Ok(evaluate_case(case))
}

pub fn evaluate_case(case: Case) -> SymValue {
    case.check();
    match case {
        Case::EvenEven { m, s } => {
            let n = 2 * m as u64;
            let sum: BigInt = (1..=m)
                .map(|k| signed(binomial(n, (m - k) as i64) * pow_u64(2 * k as u64, 2 * s - 1), k + s))
                .sum();
            let c = rat_int(sum) / (pow2(2 * m) * rat_int(factorial(2 * s as u64 - 1)));
            SymValue::pi(c)
        }
        Case::OddOdd { m, s } => {
            let n = 2 * m as u64 + 1;
            let sum: BigInt = (0..=m)
                .map(|k| signed(binomial(n, (m - k) as i64) * pow_u64(2 * k as u64 + 1, 2 * s), k + s))
                .sum();
            let c = rat_int(sum) / (pow2(2 * m + 1) * rat_int(factorial(2 * s as u64)));
            SymValue::pi(c)
        }
        Case::EvenOdd { m, s } => {
            let n = 2 * m as u64;
            let pre = pow2(2 * m - 1) * rat_int(factorial(2 * s as u64 - 2));
            let mut v = SymValue::zero();
            // k = 1 contributes ln 1 = 0
            for k in 2..=m {
                let c = signed(binomial(n, (m - k) as i64) * pow_u64(2 * k as u64, 2 * s - 2), k + s);
                v.add_ln(&(rat_int(c) / &pre), k as u64);
            }
            v
        }
        Case::OddEven { m, s } => {
            let n = 2 * m as u64 + 1;
            let pre = pow2(2 * m) * rat_int(factorial(2 * s as u64 - 1));
            let mut v = SymValue::zero();
            for k in 1..=m {
                let c = signed(
                    binomial(n, (m - k) as i64) * pow_u64(2 * k as u64 + 1, 2 * s - 1),
                    k + s,
                );
                v.add_ln(&(rat_int(c) / &pre), 2 * k as u64 + 1);
            }
            v
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::linearize::linearize;
    use crate::taylor::j_value;
    use num_traits::Zero;

    fn pi(n: i64, d: i64) -> SymValue {
        SymValue::pi(rat(n, d))
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(2, 1), ConvergenceClass::DivergentAtInfinity);
        assert_eq!(classify(1, 2), ConvergenceClass::DivergentAtZero);
        assert_eq!(classify(5, 3), ConvergenceClass::Convergent);
        assert_eq!(classify(1, 1), ConvergenceClass::Convergent);
        assert_eq!(classify(4, 5), ConvergenceClass::DivergentAtZero);
    }

    #[test]
    fn table_entries() {
        let cases = [
            ((1, 1), pi(1, 2)),
            ((3, 1), pi(1, 4)),
            ((5, 1), pi(3, 16)),
            ((2, 2), pi(1, 2)),
            ((3, 2), SymValue::ln(rat(3, 4), 3)),
            ((4, 2), pi(1, 4)),
            ((5, 2), SymValue::from_parts(rat(0, 1), [(rat(15, 16), 3), (rat(-5, 16), 5)])),
            ((3, 3), pi(3, 8)),
            ((4, 3), SymValue::ln(rat(1, 1), 2)),
            ((5, 3), pi(5, 32)),
            ((4, 4), pi(1, 3)),
            ((5, 4), SymValue::from_parts(rat(0, 1), [(rat(125, 96), 5), (rat(-45, 32), 3)])),
            ((5, 5), pi(115, 384)),
        ];
        for ((p, q), expect) in cases {
            assert_eq!(evaluate(p, q).unwrap(), expect, "I({p},{q})");
        }
    }

    #[test]
    fn six_four() {
        assert_eq!(evaluate(6, 4).unwrap(), pi(1, 8));
    }

    #[test]
    fn divergent_is_error() {
        let err = evaluate(2, 1).unwrap_err();
        assert_eq!(err.class, ConvergenceClass::DivergentAtInfinity);
        assert_eq!(evaluate(1, 3).unwrap_err().class, ConvergenceClass::DivergentAtZero);
    }

    #[test]
    fn translation_round_trips() {
        for p in 1..=60u32 {
            for q in 1..=60u32 {
                match Case::of(p, q) {
                    Some(case) => {
                        assert_eq!(case.pq(), (p, q));
                        assert_eq!(classify(p, q), ConvergenceClass::Convergent);
                    }
                    None => assert_ne!(classify(p, q), ConvergenceClass::Convergent),
                }
            }
        }
        assert_eq!(Case::of(4, 3), Some(Case::EvenOdd { m: 2, s: 2 }));
        assert_eq!(Case::of(5, 4), Some(Case::OddEven { m: 2, s: 2 }));
        assert_eq!(Case::of(1, 1), Some(Case::OddOdd { m: 0, s: 0 }));
        assert_eq!(Case::of(6, 6), Some(Case::EvenEven { m: 3, s: 3 }));
    }

    #[test]
    fn value_shape_and_positivity() {
        for p in 1..=30u32 {
            for q in 1..=p {
                let Some(case) = Case::of(p, q) else { continue };
                let v = evaluate(p, q).unwrap();
                if case.is_pi_case() {
                    assert!(v.log_terms().is_empty());
                } else {
                    assert!(v.pi_coeff().is_zero());
                }
                let d: f64 = sym_to_decimal(&v, 15).parse().unwrap();
                assert!(d > 0.0, "I({p},{q}) = {v}");
            }
        }
    }

    #[test]
    fn pi_cases_match_linearization_path() {
        for p in 1..=20u32 {
            for q in 1..=p {
                let Some(case) = Case::of(p, q) else { continue };
                if !case.is_pi_case() {
                    continue;
                }
                // ∫ f_q(ωt)/t^q dt = ω^{q-1} J_q
                let q_param = if p % 2 == 0 { q / 2 } else { (q - 1) / 2 };
                let lin = linearize(p, q_param).unwrap();
                let j = j_value(q);
                let total = lin.terms().iter().fold(SymValue::zero(), |acc, t| {
                    let w = rat_int(pow_u64(t.frequency, q - 1)) * &t.coeff;
                    &acc + &j.scale(&w)
                });
                assert_eq!(total, evaluate(p, q).unwrap(), "I({p},{q})");
            }
        }
    }

    #[test]
    fn decimal_close_to_f64() {
        let v = evaluate(5, 4).unwrap();
        let d: f64 = sym_to_decimal(&v, 20).parse().unwrap();
        assert!((d - v.to_f64()).abs() < 1e-14);
    }
}
