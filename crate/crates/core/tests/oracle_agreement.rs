use sinpow_core::closedform::{classify, evaluate, sym_to_decimal, ConvergenceClass};
use sinpow_core::oracle::{integrate_remainder, integrate_sinpow};
use sinpow_core::taylor::j_value;

fn closed_decimal(p: u32, q: u32) -> f64 {
    sym_to_decimal(&evaluate(p, q).unwrap(), 20).parse().unwrap()
}

#[test]
fn closed_forms_inside_oracle_interval() {
    for p in 1..=12u32 {
        for q in 1..=12u32 {
            if classify(p, q) != ConvergenceClass::Convergent {
                continue;
            }
            let exact = closed_decimal(p, q);
            let r = integrate_sinpow(p, q, 1e-6).unwrap();
            let diff = (r.estimate - exact).abs();
            assert!(diff < 1e-6, "I({p},{q}) diff={diff:e}");
            assert!(diff <= r.error_bound, "I({p},{q}) diff={diff:e} bound={:e}", r.error_bound);
        }
    }
}

#[test]
fn tighter_tolerance_never_moves_away() {
    for &(p, q) in &[(2u32, 2u32), (3, 2), (4, 3), (5, 5), (7, 1), (6, 4)] {
        let exact = closed_decimal(p, q);
        let mut last = f64::INFINITY;
        let mut tol = 1e-4;
        while tol >= 1e-9 {
            let r = integrate_sinpow(p, q, tol).unwrap();
            let diff = (r.estimate - exact).abs();
            assert!(diff <= last + 1e-15, "I({p},{q}) tol={tol:e}: {diff:e} > {last:e}");
            last = diff;
            tol *= 0.5;
        }
    }
}

#[test]
fn remainder_integrals_match_j_values() {
    for n in 1..=8u32 {
        let j = j_value(n).to_f64();
        let r = integrate_remainder(n, 1e-6).unwrap();
        assert!((r.estimate - j).abs() < 1e-6, "J_{n}");
        assert!((r.estimate - j).abs() <= r.error_bound + 1e-15, "J_{n}");
    }
}
