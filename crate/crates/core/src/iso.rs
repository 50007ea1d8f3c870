//! Coefficient maps `s^n -> s^n/(n!)^m` and `s^n -> a_n s^n` on formal power
//! series, and the two competing ways of extending them to reciprocals.

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{factorial, pow, serialize_rationals, Rational};
use crate::sequence::UmbralSequence;
use crate::series::{Convention, FormalPowerSeries};
use crate::umbral::blissard_reciprocal;

#[derive(Debug, Clone, PartialEq)]
pub enum SeriesMapKind {
    /// `s^n -> s^n/(n!)^m`.
    LaguerreIterate(u32),
    /// `s^n -> a_n s^n`.
    General(UmbralSequence),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SeriesMap {
    pub kind: SeriesMapKind,
    pub description: String,
}

impl SeriesMap {
    pub fn laguerre_iterate(m: u32) -> Self {
        SeriesMap {
            kind: SeriesMapKind::LaguerreIterate(m),
            description: format!("s^n -> s^n/(n!)^{m}"),
        }
    }

    pub fn general(a: UmbralSequence) -> Self {
        SeriesMap {
            description: format!("s^n -> a_n s^n, a = {a}"),
            kind: SeriesMapKind::General(a),
        }
    }

    pub fn apply(&self, p: &FormalPowerSeries) -> FormalPowerSeries {
        match &self.kind {
            SeriesMapKind::LaguerreIterate(m) => apply_iso(p, *m),
            SeriesMapKind::General(a) => apply_iso_general(p, a),
        }
    }
}

fn fact_pow(n: usize, m: u32) -> Rational {
    pow(&Rational::from_integer(factorial(n)), m as usize)
}

/// Divides the coefficient of `s^n` by `(n!)^m`. The result is in plain convention.
pub fn apply_iso(p: &FormalPowerSeries, m: u32) -> FormalPowerSeries {
    let plain = p.to_plain();
    let coeffs = plain
        .coeffs()
        .iter()
        .enumerate()
        .map(|(n, c)| c / fact_pow(n, m))
        .collect();
    FormalPowerSeries::plain(coeffs)
}

/// Multiplies the coefficient of `s^n` by `a_n`. The result is in plain convention.
pub fn apply_iso_general(p: &FormalPowerSeries, a: &UmbralSequence) -> FormalPowerSeries {
    let plain = p.to_plain();
    let coeffs = plain
        .coeffs()
        .iter()
        .enumerate()
        .map(|(n, c)| c * a.term(n))
        .collect();
    FormalPowerSeries::plain(coeffs)
}

/// `1 / apply_iso(denominator, m)` through `order`: the image of a reciprocal
/// is taken to be the reciprocal of the image.
pub fn iso_reciprocal_convention(denominator: &FormalPowerSeries, m: u32, order: usize) -> Result<FormalPowerSeries> {
    let den = FormalPowerSeries::new(denominator.to_plain().coeffs().to_vec(), order, Convention::Plain);
    apply_iso(&den, m).reciprocal()
}

/// Where the coefficient-wise image of `e^{-x}` first departs from the
/// reciprocal of `e_m(x)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConventionGap {
    pub m: u32,
    /// First order at which the readings differ, if any through the compared order.
    pub order: Option<usize>,
    /// `apply_iso(e^{-x}, m)`.
    #[serde(serialize_with = "serialize_rationals")]
    pub coefficient_wise: Vec<Rational>,
    /// `1/e_m(x)`.
    #[serde(serialize_with = "serialize_rationals")]
    pub multiplicative: Vec<Rational>,
}

impl ConventionGap {
    /// Both coefficients at the first disagreement.
    pub fn values(&self) -> Option<(&Rational, &Rational)> {
        self.order
            .map(|n| (&self.coefficient_wise[n], &self.multiplicative[n]))
    }
}

pub fn convention_gap(m: u32, order: usize) -> Result<ConventionGap> {
    if order < 2 || m == 0 {
        return Err(Error::ArgumentDomain(format!("need m >= 1 and order >= 2, got m = {m}, order = {order}")));
    }
    let exp_neg = FormalPowerSeries::exp(order).map_plain(crate::umbral::sign_pow);
    let literal = apply_iso(&exp_neg, m).coeffs().to_vec();
    let b = blissard_reciprocal(&UmbralSequence::laguerre(m), order);
    let multiplicative: Vec<Rational> = FormalPowerSeries::egf(b).to_plain().coeffs().to_vec();
    let first = (0..=order).find(|&n| !(&literal[n] - &multiplicative[n]).is_zero());
    Ok(ConventionGap {
        m,
        order: first,
        coefficient_wise: literal,
        multiplicative,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, ratio};

    #[test]
    fn examples() {
        let e1 = apply_iso(&FormalPowerSeries::exp(4), 1);
        assert_eq!(e1.coeffs(), &[rat(1), rat(1), ratio(1, 4), ratio(1, 36), ratio(1, 576)]);
        let one = FormalPowerSeries::plain(vec![rat(1)]);
        assert_eq!(apply_iso(&one, 3), one);
        let cube = FormalPowerSeries::plain(vec![rat(0), rat(0), rat(0), rat(1)]);
        assert_eq!(apply_iso(&cube, 2).coeffs()[3], ratio(1, 36));
    }

    #[test]
    fn general_map() {
        let p = FormalPowerSeries::plain(vec![rat(1), rat(1), rat(1)]);
        let a = UmbralSequence::explicit(vec![rat(1), rat(2), rat(3)]).unwrap();
        assert_eq!(apply_iso_general(&p, &a).coeffs(), &[rat(1), rat(2), rat(3)]);
        assert_eq!(apply_iso_general(&p, &UmbralSequence::ones()), p);
        let e = FormalPowerSeries::exp(10);
        assert_eq!(apply_iso_general(&e, &UmbralSequence::laguerre(1)), apply_iso(&e, 1));
        assert_eq!(SeriesMap::laguerre_iterate(1).apply(&e), apply_iso(&e, 1));
    }

    #[test]
    fn reciprocal_convention() {
        let p = FormalPowerSeries::plain(vec![rat(1), rat(1)]);
        let r = iso_reciprocal_convention(&p, 1, 2).unwrap();
        assert_eq!(r.coeffs(), &[rat(1), rat(-1), rat(1)]);
        let r = iso_reciprocal_convention(&FormalPowerSeries::exp(4), 1, 4).unwrap();
        let b = FormalPowerSeries::egf(blissard_reciprocal(&UmbralSequence::laguerre(1), 4)).to_plain();
        assert_eq!(r, b);
        let zero = FormalPowerSeries::plain(vec![rat(0), rat(1)]);
        assert_eq!(iso_reciprocal_convention(&zero, 1, 3), Err(Error::ZeroConstantTerm));
    }

    #[test]
    fn gaps() {
        let g = convention_gap(1, 10).unwrap();
        assert_eq!(g.order, Some(2));
        assert_eq!(g.values(), Some((&ratio(1, 4), &ratio(3, 4))));
        let g = convention_gap(2, 10).unwrap();
        assert_eq!(g.values(), Some((&ratio(1, 8), &ratio(7, 8))));
        for m in 1..=3 {
            let g = convention_gap(m, 6).unwrap();
            assert_eq!(g.coefficient_wise[..2], g.multiplicative[..2]);
            assert_eq!(g.multiplicative[1], rat(-1));
        }
        assert!(convention_gap(1, 1).is_err());
    }
}
