//! Exact-arithmetic identity suite run by `umbra selftest`.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::bell::{bell_partition_oracle, partial_bell, stirling2, PartialBellTable};
use crate::expr::parse_function;
use crate::iso::{apply_iso, convention_gap, iso_reciprocal_convention};
use crate::rational::{factorial, rat, ratio, Rational};
use crate::sequence::UmbralSequence;
use crate::series::FormalPowerSeries;
use crate::umbral::{bernoulli, blissard_reciprocal, coeff_c, egf_reciprocal_oracle, sign_pow};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SelfTestReport {
    pub checks: Vec<Check>,
    pub passed: usize,
    pub failed: usize,
}

fn sample_sequences() -> Vec<UmbralSequence> {
    vec![
        UmbralSequence::ones(),
        UmbralSequence::laguerre(1),
        UmbralSequence::laguerre(2),
        UmbralSequence::factorial(),
        UmbralSequence::inv_succ(),
        UmbralSequence::from_tail(&[ratio(1, 2), ratio(-2, 3), rat(3), ratio(5, 7)]),
    ]
}

fn oracle_agreement() -> bool {
    let g = [ratio(1, 2), rat(-2), ratio(3, 5), rat(1), ratio(-7, 4), rat(2), ratio(1, 9), rat(-1)];
    (1..=8).all(|n| {
        (1..=n).all(|k| partial_bell(n, k, &g).ok() == bell_partition_oracle(n, k, &g).ok())
    })
}

fn stirling_identity() -> bool {
    (1..=15).all(|k| {
        let sum: Rational = (1..=k)
            .map(|h| {
                let s = Rational::from_integer(stirling2(k, h).expect("h <= k"));
                sign_pow(k - h) * Rational::from_integer(factorial(h)) * s
            })
            .sum();
        sum.is_one()
    })
}

fn bell_numbers() -> bool {
    let ones = vec![Rational::one(); 10];
    let table = PartialBellTable::new(10, &ones);
    let bell: Vec<Rational> = (1..=10).map(|n| table.complete(n, &ones).expect("row exists")).collect();
    let expected = [1, 2, 5, 15, 52, 203, 877, 4140, 21147, 115975];
    bell.iter().zip(expected).all(|(b, e)| *b == rat(e))
}

fn homothety_coefficients() -> bool {
    let x = ratio(3, 2);
    sample_sequences().iter().all(|a| {
        let scaled = a.scaled(x.clone());
        (0..=25).all(|k| scaled.term(k) == a.term(k) * crate::rational::pow(&x, k))
    })
}

fn parser_round_trip() -> bool {
    ["exp(-t)", "2*1 + 3*exp(-t)", "1 - (2 - t)", "t^-2*sin(t)/(1 + t)", "-(t + 0.5)^3", "sqrt(ln(1 + t))"]
        .iter()
        .all(|text| {
            parse_function(text)
                .ok()
                .and_then(|e| parse_function(&e.to_string()).ok().map(|r| r == e))
                .unwrap_or(false)
        })
}

/// Runs every identity and counts the outcomes.
pub fn run_selftest() -> SelfTestReport {
    let seqs = sample_sequences();
    let checks: Vec<(&str, bool)> = vec![
        ("partial Bell recursion matches partition oracle (n <= 8)", oracle_agreement()),
        ("B_{n,k}(1,...,1) are Stirling numbers S(10,5) = 42525", stirling2(10, 5).ok() == Some(42525.into())),
        ("complete Bell numbers Y_n(1; 1) for n <= 10", bell_numbers()),
        (
            "Blissard reciprocal matches series division (order 15)",
            seqs.iter().all(|a| blissard_reciprocal(a, 15) == egf_reciprocal_oracle(a, 15)),
        ),
        (
            "reciprocal of ones is (-1)^n (n <= 20)",
            blissard_reciprocal(&UmbralSequence::ones(), 20)
                .iter()
                .enumerate()
                .all(|(n, b)| *b == sign_pow(n)),
        ),
        (
            "inv-succ reciprocal gives Bernoulli numbers",
            bernoulli(8) == [rat(1), ratio(-1, 2), ratio(1, 6), rat(0), ratio(-1, 30), rat(0), ratio(1, 42), rat(0), ratio(-1, 30)],
        ),
        (
            "C_k(a) equals the Blissard reciprocal (order 12)",
            seqs.iter().all(|a| coeff_c(a, 12) == blissard_reciprocal(a, 12)),
        ),
        (
            "C_k(ones) = (-1)^k (k <= 15)",
            coeff_c(&UmbralSequence::ones(), 15).iter().enumerate().all(|(k, c)| *c == sign_pow(k)),
        ),
        ("sum_h (-1)^(k-h) h! S(k,h) = 1 (k <= 15)", stirling_identity()),
        (
            "iso composition T^1 T^1 = T^2 (order 30)",
            {
                let e = FormalPowerSeries::exp(30);
                apply_iso(&apply_iso(&e, 1), 1) == apply_iso(&e, 2)
            },
        ),
        (
            "T^m(exp) = e_m coefficients 1/(k!)^(m+1) (m <= 3, k <= 30)",
            (1..=3).all(|m| {
                apply_iso(&FormalPowerSeries::exp(30), m)
                    .coeffs()
                    .iter()
                    .enumerate()
                    .all(|(k, c)| *c == UmbralSequence::laguerre(m + 1).term(k))
            }),
        ),
        (
            "multiplicative convention reproduces 1/e_m (order 20)",
            (1..=3).all(|m| {
                let lhs = iso_reciprocal_convention(&FormalPowerSeries::exp(20), m, 20);
                let rhs = FormalPowerSeries::egf(blissard_reciprocal(&UmbralSequence::laguerre(m), 20)).to_plain();
                lhs.ok() == Some(rhs)
            }),
        ),
        (
            "coefficient-wise and multiplicative readings split at order 2",
            (1..=3).all(|m| convention_gap(m, 10).map(|g| g.order == Some(2)).unwrap_or(false))
                && convention_gap(1, 10)
                    .ok()
                    .and_then(|g| g.values().map(|(a, b)| (a.clone(), b.clone())))
                    == Some((ratio(1, 4), ratio(3, 4))),
        ),
        ("homothetic sequence x a has terms x^k a_k (k <= 25)", homothety_coefficients()),
        ("expression printer round-trips", parser_round_trip()),
        (
            "e^t e^(bt) = 1 for the reciprocal of laguerre:1 (order 12)",
            {
                let a = UmbralSequence::laguerre(1);
                let prod = crate::umbral::egf_product(&a.terms(12), &blissard_reciprocal(&a, 12));
                prod[0].is_one() && prod[1..].iter().all(Zero::is_zero)
            },
        ),
    ];
    let checks: Vec<Check> = checks
        .into_iter()
        .map(|(name, passed)| Check {
            name: name.to_string(),
            passed,
        })
        .collect();
    let passed = checks.iter().filter(|c| c.passed).count();
    SelfTestReport {
        failed: checks.len() - passed,
        passed,
        checks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_identity_holds() {
        let report = run_selftest();
        let failing: Vec<_> = report.checks.iter().filter(|c| !c.passed).map(|c| &c.name).collect();
        assert!(failing.is_empty(), "{failing:?}");
        assert_eq!(report.passed, report.checks.len());
    }
}
