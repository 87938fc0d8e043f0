use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{Signed, Zero};

use crate::exact::{factorize, rat_int, rat_to_string, ExactRational};

/// `coeff · ln(prime)`
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LogTerm {
    pub coeff: ExactRational,
    pub prime: u64,
}

/// An exact value `r_π·π + Σ rᵢ·ln(pᵢ)` over distinct primes `pᵢ`.
///
/// The log terms are kept sorted by prime with no zero coefficients, so two
/// values are equal exactly when their fields are.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct SymValue {
    pi_coeff: ExactRational,
    log_terms: Vec<LogTerm>,
}

impl SymValue {
    pub fn zero() -> Self {
        SymValue {
            pi_coeff: ExactRational::zero(),
            log_terms: Vec::new(),
        }
    }

    /// `c·π`
    pub fn pi(c: ExactRational) -> Self {
        SymValue {
            pi_coeff: c,
            log_terms: Vec::new(),
        }
    }

    /// `c·ln(arg)` for any `arg ≥ 1`, expanded over the primes of `arg`.
    pub fn ln(c: ExactRational, arg: u64) -> Self {
        let mut v = SymValue::zero();
        v.add_ln(&c, arg);
        v
    }

    /// Builds a value from a π coefficient and `(coeff, arg)` pairs, where the
    /// arguments need not be prime or distinct.
    pub fn from_parts<I>(pi_coeff: ExactRational, logs: I) -> Self
    where
        I: IntoIterator<Item = (ExactRational, u64)>,
    {
        let mut v = SymValue::pi(pi_coeff);
        for (c, arg) in logs {
            v.add_ln(&c, arg);
        }
        v
    }

    pub fn pi_coeff(&self) -> &ExactRational {
        &self.pi_coeff
    }

    pub fn log_terms(&self) -> &[LogTerm] {
        &self.log_terms
    }

    pub fn is_zero(&self) -> bool {
        self.pi_coeff.is_zero() && self.log_terms.is_empty()
    }

    pub fn add_pi(&mut self, c: &ExactRational) {
        self.pi_coeff += c;
    }

    /// Adds `c·ln(arg)`. `arg = 1` contributes nothing.
    pub fn add_ln(&mut self, c: &ExactRational, arg: u64) {
        for &(prime, e) in factorize(arg).factors() {
            self.add_prime_log(&(c * rat_int(e)), prime);
        }
    }

    fn add_prime_log(&mut self, c: &ExactRational, prime: u64) {
        if c.is_zero() {
            return;
        }
        match self.log_terms.binary_search_by_key(&prime, |t| t.prime) {
            Ok(i) => {
                self.log_terms[i].coeff += c;
                if self.log_terms[i].coeff.is_zero() {
                    self.log_terms.remove(i);
                }
            }
            Err(i) => self.log_terms.insert(
                i,
                LogTerm {
                    coeff: c.clone(),
                    prime,
                },
            ),
        }
    }

    pub fn scale(&self, c: &ExactRational) -> SymValue {
        if c.is_zero() {
            return SymValue::zero();
        }
        SymValue {
            pi_coeff: &self.pi_coeff * c,
            log_terms: self
                .log_terms
                .iter()
                .map(|t| LogTerm {
                    coeff: &t.coeff * c,
                    prime: t.prime,
                })
                .collect(),
        }
    }

    /// Double-precision approximation.
    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        let mut v = self.pi_coeff.to_f64().unwrap() * std::f64::consts::PI;
        for t in &self.log_terms {
            v += t.coeff.to_f64().unwrap() * (t.prime as f64).ln();
        }
        v
    }
}

impl Add for &SymValue {
    type Output = SymValue;

    fn add(self, rhs: &SymValue) -> SymValue {
        let mut out = self.clone();
        out.pi_coeff += &rhs.pi_coeff;
        for t in &rhs.log_terms {
            out.add_prime_log(&t.coeff, t.prime);
        }
        out
    }
}

impl Neg for &SymValue {
    type Output = SymValue;

    fn neg(self) -> SymValue {
        self.scale(&rat_int(-1))
    }
}

impl Sub for &SymValue {
    type Output = SymValue;

    fn sub(self, rhs: &SymValue) -> SymValue {
        self + &(-rhs)
    }
}

/// Renders the ASCII form, e.g. `3/8*pi` or `15/16*ln(3) - 5/16*ln(5)`.
impl fmt::Display for SymValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<(ExactRational, String)> = Vec::new();
        if !self.pi_coeff.is_zero() {
            parts.push((self.pi_coeff.clone(), "pi".to_string()));
        }
        for t in &self.log_terms {
            parts.push((t.coeff.clone(), format!("ln({})", t.prime)));
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        for (i, (c, sym)) in parts.iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mag = c.abs();
            if mag == rat_int(1) {
                write!(f, "{sym}")?;
            } else {
                write!(f, "{}*{sym}", rat_to_string(&mag))?;
            }
        }
        Ok(())
    }
}
