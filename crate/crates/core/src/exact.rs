//! Arbitrary-precision integer and rational arithmetic, plus the combinatorial
//! primitives used throughout the crate.
//!
//! Integers and rationals are backed by `num-bigint` / `num-rational`. A
//! [`ExactRational`] is always kept in lowest terms with a positive
//! denominator, so structural equality is value equality and zero is `0/1`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision signed integer.
pub type ExactInt = BigInt;

/// Arbitrary-precision rational in lowest terms with a positive denominator.
pub type ExactRational = BigRational;

/// Builds the rational `num / den`.
///
/// Panics if `den` is zero.
pub fn rat(num: i64, den: i64) -> ExactRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// The integer `n` as a rational.
pub fn rat_int(n: impl Into<BigInt>) -> ExactRational {
    BigRational::from_integer(n.into())
}

pub fn rat_add(a: &ExactRational, b: &ExactRational) -> ExactRational {
    a + b
}

pub fn rat_mul(a: &ExactRational, b: &ExactRational) -> ExactRational {
    a * b
}

pub fn rat_neg(a: &ExactRational) -> ExactRational {
    -a
}

/// Binomial coefficient `C(n, k)`, zero when `k < 0` or `k > n`.
///
/// Multiplicative formula; every intermediate `C(n, i)` is an integer, so the
/// division at each step is exact and no factorial-sized value is formed.
pub fn binomial(n: u64, k: i64) -> ExactInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `n!`
pub fn factorial(n: u64) -> ExactInt {
    (2..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// `2^e` as a rational.
pub fn pow2(e: u32) -> ExactRational {
    rat_int(BigInt::one() << e)
}

/// `base^exp` for a small base, exactly.
pub fn pow_u64(base: u64, exp: u32) -> ExactInt {
    num_traits::pow(BigInt::from(base), exp as usize)
}

/// Prime factorization as `(prime, exponent)` pairs with strictly increasing
/// primes. The factorization of `1` is empty.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PrimeFactorization {
    factors: Vec<(u64, u32)>,
}

impl PrimeFactorization {
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Multiplies the factors back together.
    pub fn product(&self) -> ExactInt {
        self.factors
            .iter()
            .fold(BigInt::one(), |acc, &(p, e)| acc * pow_u64(p, e))
    }
}

/// Factorizes `n` by trial division. `n` must be at least 1.
pub fn factorize(n: u64) -> PrimeFactorization {
    assert!(n >= 1, "factorize requires n >= 1");
    let mut factors = Vec::new();
    let mut rest = n;
    let mut d = 2u64;
    while d.saturating_mul(d) <= rest {
        if rest % d == 0 {
            let mut e = 0;
            while rest % d == 0 {
                rest /= d;
                e += 1;
            }
            factors.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        factors.push((rest, 1));
    }
    PrimeFactorization { factors }
}

/// Renders `r` as `a/b`, or `a` when the denominator is one.
pub fn rat_to_string(r: &ExactRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Absolute value of a rational.
pub fn rat_abs(r: &ExactRational) -> ExactRational {
    r.abs()
}

/// `gcd(|a|, |b|)`
pub fn gcd(a: &ExactInt, b: &ExactInt) -> ExactInt {
    a.gcd(b)
}
