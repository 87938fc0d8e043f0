//! Exact evaluation of `I(p, q) = ∫₀^∞ sinᵖ(t) / tᵠ dt` for positive integers
//! `p` and `q`, together with an independent quadrature oracle.
//!
//! The pipeline is:
//!
//! * [`exact`]: big-integer and rational primitives (binomials, factorials,
//!   prime factorizations).
//! * [`taylor`]: the truncated Maclaurin polynomials of `sin`/`cos` and the
//!   remainder functions `f_n` built from them.
//! * [`linearize`]: exact decomposition of `sinᵖ t` into scaled `f_n` terms,
//!   and the vanishing sums and polynomials that make it work.
//! * [`closedform`]: convergence classification and exact closed forms as
//!   rational combinations of `π` and logarithms of primes.
//! * [`oracle`]: numerical quadrature with error bounds, used to referee every
//!   closed form.

pub mod closedform;
pub mod exact;
pub mod linearize;
pub mod oracle;
pub mod taylor;

pub use closedform::{classify, evaluate, sym_to_decimal, ConvergenceClass, SymValue};
pub use exact::{ExactInt, ExactRational};
pub use linearize::{linearize, Linearization};
pub use oracle::{integrate_remainder, integrate_sinpow, QuadratureResult};
