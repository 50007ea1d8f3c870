//! Shared inputs for the benchmarks.

use umbra_core::rational::ratio;
use umbra_core::{FunctionExpr, Rational};

/// `g_k = (-1)^k k/(k + 1)` for `k = 1..=n`.
pub fn bell_inputs(n: usize) -> Vec<Rational> {
    (1..=n as i64)
        .map(|k| ratio(if k % 2 == 0 { k } else { -k }, k + 1))
        .collect()
}

pub fn damped_oscillation() -> FunctionExpr {
    FunctionExpr::parse("exp(-t)*sin(3*t)").expect("valid expression")
}
