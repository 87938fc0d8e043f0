//! Truncated Maclaurin polynomials of `sin`/`cos` and the remainder functions
//! built from them.
//!
//! `P_{2n}` is the degree-`2n` cosine polynomial, `P_{2n+1}` the degree-`2n+1`
//! sine polynomial and `P_{-1} = 0`. The remainder functions are
//!
//! ```text
//! f_{2n+1}(t) = (-1)^n     (sin t - P_{2n-1}(t))
//! f_{2n+2}(t) = (-1)^(n+1) (cos t - P_{2n}(t))
//! ```
//!
//! so that `f_1 = sin`, `f_{n+1}' = f_n` and `f_n(t) ~ tⁿ/n!` near zero.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::closedform::SymValue;
use crate::exact::{factorial, rat_int, ExactRational};

/// Dense univariate polynomial with exact rational coefficients, indexed by
/// degree. Trailing zero coefficients are trimmed, so the zero polynomial has
/// no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct RatPoly {
    coeffs: Vec<ExactRational>,
}

impl RatPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: ExactRational) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn from_coeffs(coeffs: Vec<ExactRational>) -> Self {
        let mut p = RatPoly { coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[ExactRational] {
        &self.coeffs
    }

    /// Coefficient of `X^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> ExactRational {
        self.coeffs.get(k).cloned().unwrap_or_else(ExactRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// `P(c·X)`
    pub fn scale_arg(&self, c: &ExactRational) -> Self {
        let mut pow = ExactRational::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a * &pow);
            pow *= c;
        }
        Self::from_coeffs(out)
    }

    pub fn scale(&self, c: &ExactRational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Exact value at a rational point.
    pub fn eval_exact(&self, x: &ExactRational) -> ExactRational {
        self.coeffs
            .iter()
            .rev()
            .fold(ExactRational::zero(), |acc, a| acc * x + a)
    }

    /// Horner evaluation in double precision.
    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, a| acc * x + a.to_f64().unwrap_or(0.0))
    }
}

impl Add for &RatPoly {
    type Output = RatPoly;

    fn add(self, rhs: &RatPoly) -> RatPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        RatPoly::from_coeffs((0..len).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &RatPoly {
    type Output = RatPoly;

    fn sub(self, rhs: &RatPoly) -> RatPoly {
        self + &(-rhs)
    }
}

impl Neg for &RatPoly {
    type Output = RatPoly;

    fn neg(self) -> RatPoly {
        RatPoly::from_coeffs(self.coeffs.iter().map(|a| -a).collect())
    }
}

impl Mul for &RatPoly {
    type Output = RatPoly;

    fn mul(self, rhs: &RatPoly) -> RatPoly {
        if self.is_zero() || rhs.is_zero() {
            return RatPoly::zero();
        }
        let mut out = vec![ExactRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPoly::from_coeffs(out)
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*X")?,
                _ => write!(f, "{c}*X^{k}")?,
            }
        }
        Ok(())
    }
}

/// The Maclaurin polynomial `P_n`, with `n = -1` giving the zero polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TaylorPoly {
    n: i64,
    poly: RatPoly,
}

impl TaylorPoly {
    pub fn new(n: i64) -> Self {
        assert!(n >= -1, "P_n is defined for n >= -1");
        let mut coeffs = vec![ExactRational::zero(); (n + 1) as usize];
        // degrees 2k (n even) or 2k+1 (n odd), k = 0..=n/2
        let mut degree = n.rem_euclid(2);
        let mut k = 0u32;
        while degree <= n {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            coeffs[degree as usize] =
                ExactRational::new(BigInt::from(sign), factorial(degree as u64));
            degree += 2;
            k += 1;
        }
        TaylorPoly {
            n,
            poly: RatPoly::from_coeffs(coeffs),
        }
    }

    pub fn index(&self) -> i64 {
        self.n
    }

    pub fn poly(&self) -> &RatPoly {
        &self.poly
    }

    pub fn coefficients(&self) -> &[ExactRational] {
        self.poly.coeffs()
    }
}

/// Horner evaluation of `P_n` at `t`.
pub fn poly_eval(p: &TaylorPoly, t: f64) -> f64 {
    p.poly.eval_f64(t)
}

/// The remainder function `f_n`, `n ≥ 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RemainderFn {
    n: u32,
}

impl RemainderFn {
    pub fn new(n: u32) -> Self {
        assert!(n >= 1, "f_n is defined for n >= 1");
        RemainderFn { n }
    }

    pub fn index(&self) -> u32 {
        self.n
    }

    pub fn eval(&self, t: f64) -> f64 {
        f_eval(self.n, t)
    }

    /// The polynomial part of `f_n`: `f_n(t) = ±trig(t) ∓ P_{n-2}(t)`.
    ///
    /// Returns `(trig_sign, poly)` such that
    /// `f_n(t) = trig_sign · (sin t or cos t) + poly(t)`, where `sin` is used
    /// for odd `n` and `cos` for even `n`.
    pub fn split(&self) -> (f64, RatPoly) {
        let n = self.n as i64;
        // f_n = s (trig - P_{n-2}) with s = (-1)^((n-1)/2) for odd n and
        // (-1)^(n/2) for even n
        let half = if n % 2 == 1 { (n - 1) / 2 } else { n / 2 };
        let s = if half % 2 == 0 { 1 } else { -1 };
        let poly = TaylorPoly::new(n - 2).poly.scale(&rat_int(-s));
        (s as f64, poly)
    }
}

/// Evaluates `f_n(t)` in double precision.
///
/// For `|t| < n` the alternating tail series `Σ_k (-1)^k t^(n+2k)/(n+2k)!` is
/// summed, avoiding the cancellation between the trig function and its
/// Maclaurin polynomial. Otherwise the defining difference is used, with
/// `f_2(t) = 2 sin²(t/2)` to keep relative accuracy near the zeros of
/// `1 - cos t`.
pub fn f_eval(n: u32, t: f64) -> f64 {
    assert!(n >= 1, "f_n is defined for n >= 1");
    let odd = n % 2 == 1;
    let sign = if odd && t < 0.0 { -1.0 } else { 1.0 };
    let x = t.abs();
    let v = if x < n as f64 {
        tail_series(n, x)
    } else {
        direct(n, x)
    };
    sign * v
}

fn tail_series(n: u32, x: f64) -> f64 {
    let mut term = 1.0;
    for i in 1..=n {
        term *= x / i as f64;
    }
    let mut sum = term;
    let x2 = x * x;
    let mut j = n as f64;
    loop {
        term *= -x2 / ((j + 1.0) * (j + 2.0));
        j += 2.0;
        if term == 0.0 || term.abs() < 1e-18 * sum.abs() {
            break;
        }
        sum += term;
    }
    sum
}

fn direct(n: u32, x: f64) -> f64 {
    match n {
        1 => x.sin(),
        2 => {
            let s = (0.5 * x).sin();
            2.0 * s * s
        }
        _ => {
            let (trig_sign, poly) = RemainderFn::new(n).split();
            let trig = if n % 2 == 1 { x.sin() } else { x.cos() };
            trig_sign * trig + poly.eval_f64(x)
        }
    }
}

/// `lim_{t→0} f_n(t)/tⁿ = 1/n!`
pub fn f_limit_ratio(n: u32) -> ExactRational {
    assert!(n >= 1);
    ExactRational::new(BigInt::one(), factorial(n as u64))
}

/// `J_n = ∫₀^∞ f_n(t)/tⁿ dt = π / (2·(n-1)!)`.
pub fn j_value(n: u32) -> SymValue {
    assert!(n >= 1);
    SymValue::pi(ExactRational::new(
        BigInt::one(),
        BigInt::from(2) * factorial(n as u64 - 1),
    ))
}
