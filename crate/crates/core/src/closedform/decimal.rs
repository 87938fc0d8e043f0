//! Correctly rounded decimal expansion of a [`SymValue`].
//!
//! `π` and `ln p` are computed in fixed point (integers scaled by `10^prec`)
//! with an explicit bound on the accumulated truncation error. If the rounded
//! result is not determined by the interval, precision is doubled.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::SymValue;

/// A fixed-point approximation `value · 10^prec ≈ approx` with
/// `|value · 10^prec - approx| ≤ err`.
struct Fixed {
    approx: BigInt,
    err: BigInt,
}

fn ten_pow(e: u32) -> BigInt {
    num_traits::pow(BigInt::from(10), e as usize)
}

/// `atanh(a/b) · scale`, for `0 < a/b ≤ 1/3`, returning the approximation and
/// its error in units.
fn atanh_fixed(a: u64, b: u64, scale: &BigInt) -> Fixed {
    let a2 = BigInt::from(a) * a;
    let b2 = BigInt::from(b) * b;
    let mut power = scale * a / b;
    let mut sum = BigInt::zero();
    let mut k = 0u64;
    while !power.is_zero() {
        sum += &power / (2 * k + 1);
        power = power * &a2 / &b2;
        k += 1;
    }
    // each truncated power carries at most ~1.2 units of error and each
    // division adds one more; the dropped tail is below one unit
    Fixed {
        approx: sum,
        err: BigInt::from(3 * k + 3),
    }
}

/// `atan(1/x) · scale`
fn atan_inv_fixed(x: u64, scale: &BigInt) -> Fixed {
    let x2 = BigInt::from(x) * x;
    let mut power = scale / x;
    let mut sum = BigInt::zero();
    let mut k = 0u64;
    while !power.is_zero() {
        let term = &power / (2 * k + 1);
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        power /= &x2;
        k += 1;
    }
    Fixed {
        approx: sum,
        err: BigInt::from(2 * k + 2),
    }
}

/// `π · 10^prec` by Machin's formula `π = 16 atan(1/5) - 4 atan(1/239)`.
fn pi_fixed(prec: u32) -> Fixed {
    let scale = ten_pow(prec);
    let a = atan_inv_fixed(5, &scale);
    let b = atan_inv_fixed(239, &scale);
    Fixed {
        approx: a.approx * 16 - b.approx * 4,
        err: a.err * 16 + b.err * 4,
    }
}

/// `ln(p) · 10^prec` via `ln p = e·ln 2 + 2·atanh((p - 2^e)/(p + 2^e))` with
/// `2^e ≤ p < 2^(e+1)`, so the atanh argument is at most `1/3`.
fn ln_fixed(p: u64, prec: u32) -> Fixed {
    assert!(p >= 2);
    let scale = ten_pow(prec);
    let ln2 = atanh_fixed(1, 3, &scale);
    let e = 63 - p.leading_zeros() as u64;
    let base = 1u64 << e;
    let mut approx = &ln2.approx * (2 * e);
    let mut err = &ln2.err * (2 * e);
    if p != base {
        let r = atanh_fixed(p - base, p + base, &scale);
        approx += r.approx * 2;
        err += r.err * 2;
    }
    Fixed { approx, err }
}

/// `⌊x + 1/2⌋`
fn round_half_up(x: &BigRational) -> BigInt {
    (x + BigRational::new(BigInt::one(), BigInt::from(2))).floor().to_integer()
}

fn render(n: &BigInt, digits: u32) -> String {
    let neg = n.is_negative();
    let mut s = n.abs().to_string();
    let d = digits as usize;
    if s.len() <= d {
        s = format!("{}{}", "0".repeat(d + 1 - s.len()), s);
    }
    let (int, frac) = s.split_at(s.len() - d);
    let sign = if neg { "-" } else { "" };
    if d == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{frac}")
    }
}

/// Decimal expansion of `v` correctly rounded to `digits` places after the
/// point.
pub fn sym_to_decimal(v: &SymValue, digits: u32) -> String {
    if v.is_zero() {
        return render(&BigInt::zero(), digits);
    }
    let mut guard = 12u32;
    loop {
        let prec = digits + guard;
        let mut approx = BigRational::zero();
        let mut err = BigRational::one();
        if !v.pi_coeff().is_zero() {
            let pi = pi_fixed(prec);
            approx += v.pi_coeff() * BigRational::from_integer(pi.approx);
            err += v.pi_coeff().abs() * BigRational::from_integer(pi.err);
        }
        for t in v.log_terms() {
            let ln = ln_fixed(t.prime, prec);
            approx += &t.coeff * BigRational::from_integer(ln.approx);
            err += t.coeff.abs() * BigRational::from_integer(ln.err);
        }
        let shift = BigRational::from_integer(ten_pow(guard));
        let lo = round_half_up(&((&approx - &err) / &shift));
        let hi = round_half_up(&((&approx + &err) / &shift));
        if lo == hi {
            let out = if lo.is_zero() { BigInt::zero() } else { lo };
            return render(&out, digits);
        }
        if guard > 4096 {
            // only reachable for an exact half-way value, which a nonzero
            // canonical value cannot be
            return render(&lo.max(hi), digits);
        }
        guard *= 2;
    }
}

/// High-precision decimal expansion of `π` truncated to `digits` places.
pub fn pi_digits(digits: u32) -> String {
    let f = pi_fixed(digits + 10);
    render(&f.approx.div_floor(&ten_pow(10)), digits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn known_constants() {
        assert_eq!(sym_to_decimal(&SymValue::pi(rat(1, 2)), 10), "1.5707963268");
        assert_eq!(sym_to_decimal(&SymValue::zero(), 10), "0.0000000000");
        assert_eq!(
            pi_digits(50),
            "3.14159265358979323846264338327950288419716939937510"
        );
        assert_eq!(
            sym_to_decimal(&SymValue::ln(rat(1, 1), 2), 50),
            "0.69314718055994530941723212145817656807550013436026"
        );
        assert_eq!(
            sym_to_decimal(&SymValue::ln(rat(1, 1), 3), 40),
            "1.0986122886681096913952452369225257046475"
        );
        assert_eq!(
            sym_to_decimal(&SymValue::ln(rat(1, 1), 97), 30),
            "4.574710978503382822116721621704"
        );
    }

    #[test]
    fn three_quarters_ln3() {
        // 0.75 · 1.09861228866810969139524523692252570464749055782274945...
        assert_eq!(
            sym_to_decimal(&SymValue::ln(rat(3, 4), 3), 10),
            "0.8239592165"
        );
        assert_eq!(
            sym_to_decimal(&SymValue::ln(rat(3, 4), 3), 40),
            "0.8239592165010822685464339276918942784856"
        );
    }

    #[test]
    fn negative_and_rounding() {
        assert_eq!(sym_to_decimal(&SymValue::pi(rat(-1, 1)), 4), "-3.1416");
        assert_eq!(sym_to_decimal(&SymValue::pi(rat(1, 1000)), 2), "0.00");
        assert_eq!(sym_to_decimal(&SymValue::pi(rat(1, 1)), 0), "3");
    }
}
