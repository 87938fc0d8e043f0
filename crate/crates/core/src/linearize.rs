//! Exact decomposition of `sinᵖ t` into scaled remainder functions.
//!
//! For `p = 2m` and `1 ≤ q ≤ m`:
//!
//! ```text
//! sin^{2m} t = 2^{1-2m} Σ_{k=1}^{m} C(2m, m-k) (-1)^{k+q} f_{2q}(2k t)
//! ```
//!
//! and for `p = 2m+1` and `0 ≤ q ≤ m`:
//!
//! ```text
//! sin^{2m+1} t = 2^{-2m} Σ_{k=0}^{m} C(2m+1, m-k) (-1)^{k+q} f_{2q+1}((2k+1) t)
//! ```
//!
//! The identities hold because the correction polynomials `Q⁰_{m,q}` and
//! `Q¹_{m,q}` vanish; [`q_correction_poly`] builds them exactly so that this
//! is checked rather than assumed. [`c_sum`] gives the alternating binomial
//! power sums whose vanishing removes the logarithmic divergences in the
//! odd-denominator closed forms.

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::exact::{binomial, pow2, pow_u64, rat_int, ExactRational};
use crate::taylor::{f_eval, RatPoly, TaylorPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("q = {q_param} is outside the valid range {lo}..={hi} for p = {p}")]
pub struct RangeError {
    pub p: u32,
    pub q_param: u32,
    pub lo: u32,
    pub hi: u32,
}

/// One term `coeff · f_{f_index}(frequency · t)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinTerm {
    pub coeff: ExactRational,
    pub frequency: u64,
    pub f_index: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Linearization {
    p: u32,
    q_param: u32,
    terms: Vec<LinTerm>,
}

impl Linearization {
    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn q_param(&self) -> u32 {
        self.q_param
    }

    pub fn terms(&self) -> &[LinTerm] {
        &self.terms
    }

    /// Evaluates the right-hand side `Σ coeff · f_n(freq · t)` in double precision.
    pub fn eval(&self, t: f64) -> f64 {
        self.terms
            .iter()
            .map(|term| {
                num_traits::ToPrimitive::to_f64(&term.coeff).unwrap()
                    * f_eval(term.f_index, term.frequency as f64 * t)
            })
            .sum()
    }
}

/// Valid `q_param` range for a given `p`.
pub fn q_range(p: u32) -> (u32, u32) {
    let m = p / 2;
    if p % 2 == 0 {
        (1, m)
    } else {
        (0, m)
    }
}

fn check_range(p: u32, q_param: u32) -> Result<(), RangeError> {
    let (lo, hi) = q_range(p);
    if p == 0 || q_param < lo || q_param > hi {
        return Err(RangeError { p, q_param, lo, hi });
    }
    Ok(())
}

fn sign(e: u32) -> i32 {
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

/// The term list of the linearization of `sinᵖ t` with remainder index
/// `2q` (even `p`) or `2q+1` (odd `p`).
pub fn linearize(p: u32, q_param: u32) -> Result<Linearization, RangeError> {
    check_range(p, q_param)?;
    let m = p / 2;
    let n = p as u64;
    let terms = if p % 2 == 0 {
        let pre = pow2(2 * m - 1);
        (1..=m)
            .map(|k| LinTerm {
                coeff: rat_int(binomial(n, (m - k) as i64) * sign(k + q_param)) / &pre,
                frequency: 2 * k as u64,
                f_index: 2 * q_param,
            })
            .collect()
    } else {
        let pre = pow2(2 * m);
        (0..=m)
            .map(|k| LinTerm {
                coeff: rat_int(binomial(n, (m - k) as i64) * sign(k + q_param)) / &pre,
                frequency: 2 * k as u64 + 1,
                f_index: 2 * q_param + 1,
            })
            .collect()
    };
    Ok(Linearization { p, q_param, terms })
}

/// The signed, prefactored sum `C⁰_{m,q}` (for `p = 2m`) or `C¹_{m,q}` (for
/// `p = 2m+1`). Requires `p ≥ 2` and `q ≥ 1`.
pub fn c_sum(p: u32, q: u32) -> ExactRational {
    assert!(p >= 2 && q >= 1, "c_sum requires p >= 2 and q >= 1");
    let m = p / 2;
    let n = p as u64;
    if p % 2 == 0 {
        let sum: BigInt = (1..=m)
            .map(|k| binomial(n, (m - k) as i64) * pow_u64(2 * k as u64, 2 * q - 2) * sign(k + q))
            .sum();
        rat_int(sum) / pow2(2 * m - 1)
    } else {
        let sum: BigInt = (0..=m)
            .map(|k| binomial(n, (m - k) as i64) * pow_u64(2 * k as u64 + 1, 2 * q - 1) * sign(k + q))
            .sum();
        rat_int(sum) / pow2(2 * m)
    }
}

/// `c_sum(p, q)` for every `q` in `1..=q_max`, sharing the binomials and
/// building the powers incrementally.
pub fn c_sums(p: u32, q_max: u32) -> Vec<ExactRational> {
    assert!(p >= 2);
    let m = p / 2;
    let n = p as u64;
    let even = p % 2 == 0;
    let ks: Vec<u32> = if even { (1..=m).collect() } else { (0..=m).collect() };
    let bases: Vec<u64> = ks
        .iter()
        .map(|&k| if even { 2 * k as u64 } else { 2 * k as u64 + 1 })
        .collect();
    let binoms: Vec<BigInt> = ks.iter().map(|&k| binomial(n, (m - k) as i64)).collect();
    // powers start at base^0 (even) or base^1 (odd) for q = 1
    let mut powers: Vec<BigInt> = bases
        .iter()
        .map(|&b| if even { BigInt::from(1) } else { BigInt::from(b) })
        .collect();
    let pre = if even { pow2(2 * m - 1) } else { pow2(2 * m) };
    let mut out = Vec::with_capacity(q_max as usize);
    for q in 1..=q_max {
        let mut sum = BigInt::zero();
        for ((&k, b), pw) in ks.iter().zip(&binoms).zip(&powers) {
            let t = b * pw;
            if (k + q) % 2 == 0 {
                sum += t;
            } else {
                sum -= t;
            }
        }
        out.push(rat_int(sum) / &pre);
        for (pw, &b) in powers.iter_mut().zip(&bases) {
            *pw *= b * b;
        }
    }
    out
}

/// Builds `Q⁰_{m,q}` (even `p`) or `Q¹_{m,q}` (odd `p`) exactly.
pub fn q_correction_poly(p: u32, q_param: u32) -> Result<RatPoly, RangeError> {
    check_range(p, q_param)?;
    let m = p / 2;
    let n = p as u64;
    let q = q_param as i64;
    if p % 2 == 0 {
        let base = TaylorPoly::new(2 * q - 2);
        let mut acc = RatPoly::constant(rat_int(binomial(n, m as i64)) / pow2(2 * m));
        let pre = pow2(2 * m - 1);
        for k in 1..=m {
            let c = rat_int(binomial(n, (m - k) as i64) * sign(k)) / &pre;
            let term = base.poly().scale_arg(&rat_int(2 * k)).scale(&c);
            acc = &acc + &term;
        }
        Ok(acc)
    } else {
        let base = TaylorPoly::new(2 * q - 1);
        let mut acc = RatPoly::zero();
        let pre = pow2(2 * m);
        for k in 0..=m {
            let c = rat_int(binomial(n, (m - k) as i64) * sign(k)) / &pre;
            let term = base.poly().scale_arg(&rat_int(2 * k + 1)).scale(&c);
            acc = &acc + &term;
        }
        Ok(acc)
    }
}
