//! The Blissard problem: given `a` with `a_0 = 1`, find `b` with `e^{at} e^{bt} = 1`.
//!
//! The canonical route goes through Bell polynomials,
//! `b_n = Y_n(-1!, a_1; 2!, a_2; ...; (-1)^n n!, a_n)`; long division of the
//! exponential generating function is kept as an independent check.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::bell::PartialBellTable;
use crate::rational::{factorial, Rational};
use crate::sequence::UmbralSequence;
use crate::series::FormalPowerSeries;

fn signed_factorial(k: usize) -> Rational {
    let f = Rational::from_integer(factorial(k));
    if k % 2 == 1 {
        -f
    } else {
        f
    }
}

/// `b_0..=b_order` through the Bell-polynomial solution.
pub fn blissard_reciprocal(a: &UmbralSequence, order: usize) -> Vec<Rational> {
    let g: Vec<Rational> = (1..=order).map(|k| a.term(k)).collect();
    let f: Vec<Rational> = (1..=order).map(signed_factorial).collect();
    let table = PartialBellTable::new(order, &g);
    let mut b = Vec::with_capacity(order + 1);
    b.push(Rational::one());
    for n in 1..=order {
        b.push(table.complete(n, &f[..n]).expect("table covers every row"));
    }
    b
}

/// EGF coefficients of `1 / sum a_k t^k/k!` by truncated long division.
pub fn egf_reciprocal_oracle(a: &UmbralSequence, order: usize) -> Vec<Rational> {
    let series = FormalPowerSeries::egf(a.terms(order));
    series
        .reciprocal()
        .expect("a_0 = 1 is invertible")
        .to_egf()
        .coeffs()
        .to_vec()
}

/// `C_k(a) = sum_{h=1}^k (-1)^h h! B_{k,h}(a_1, ..., a_{k-h+1})`, `C_0 = 1`.
pub fn coeff_c(a: &UmbralSequence, order: usize) -> Vec<Rational> {
    let g: Vec<Rational> = (1..=order).map(|k| a.term(k)).collect();
    let table = PartialBellTable::new(order, &g);
    let mut out = vec![Rational::one()];
    for k in 1..=order {
        let mut acc = Rational::zero();
        for h in 1..=k {
            let b = table.get(k, h).expect("table covers every row");
            if !b.is_zero() {
                acc += signed_factorial(h) * b;
            }
        }
        out.push(acc);
    }
    out
}

/// `(sum a_k t^k/k!) (sum b_k t^k/k!)` as EGF coefficients through `order`.
pub fn egf_product(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().min(b.len());
    (0..n)
        .map(|m| {
            (0..=m)
                .map(|k| Rational::from_integer(crate::rational::binomial(m, k)) * &a[k] * &b[m - k])
                .sum()
        })
        .collect()
}

/// Bernoulli numbers `B_0..=B_n` (with `B_1 = -1/2`) from the reciprocal of
/// `(e^t - 1)/t`.
pub fn bernoulli(n: usize) -> Vec<Rational> {
    blissard_reciprocal(&UmbralSequence::inv_succ(), n)
}

pub(crate) fn sign_pow(k: usize) -> Rational {
    Rational::from_integer(BigInt::from(if k % 2 == 0 { 1 } else { -1 }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, ratio};

    #[test]
    fn order_zero_is_unit() {
        for seq in [UmbralSequence::ones(), UmbralSequence::laguerre(2)] {
            assert_eq!(blissard_reciprocal(&seq, 0), vec![rat(1)]);
            assert_eq!(egf_reciprocal_oracle(&seq, 0), vec![rat(1)]);
            assert_eq!(coeff_c(&seq, 0), vec![rat(1)]);
        }
    }

    #[test]
    fn ones_gives_alternating_signs() {
        let b = blissard_reciprocal(&UmbralSequence::ones(), 20);
        for (n, bn) in b.iter().enumerate() {
            assert_eq!(bn, &sign_pow(n));
        }
        assert_eq!(
            egf_reciprocal_oracle(&UmbralSequence::ones(), 3),
            vec![rat(1), rat(-1), rat(1), rat(-1)]
        );
    }

    #[test]
    fn single_linear_term_oracle() {
        // 1/(1+2t) = sum (-2)^k t^k, so b_k = k! (-2)^k
        let a = UmbralSequence::from_tail(&[rat(2)]);
        assert_eq!(egf_reciprocal_oracle(&a, 2), vec![rat(1), rat(-2), rat(8)]);
        assert_eq!(blissard_reciprocal(&a, 2), vec![rat(1), rat(-2), rat(8)]);
    }

    #[test]
    fn bernoulli_numbers() {
        let b = bernoulli(8);
        let expected = [
            rat(1),
            ratio(-1, 2),
            ratio(1, 6),
            rat(0),
            ratio(-1, 30),
            rat(0),
            ratio(1, 42),
            rat(0),
            ratio(-1, 30),
        ];
        assert_eq!(b, expected);
        assert_eq!(egf_reciprocal_oracle(&UmbralSequence::inv_succ(), 8), expected);
    }

    #[test]
    fn c_coefficients() {
        let c = coeff_c(&UmbralSequence::ones(), 15);
        for (k, ck) in c.iter().enumerate() {
            assert_eq!(ck, &sign_pow(k));
        }
        for seq in [UmbralSequence::laguerre(1), UmbralSequence::inv_succ(), UmbralSequence::factorial()] {
            assert_eq!(coeff_c(&seq, 1)[1], -seq.term(1));
        }
    }

    #[test]
    fn product_with_reciprocal_is_one() {
        let a = UmbralSequence::laguerre(1);
        let b = blissard_reciprocal(&a, 12);
        let prod = egf_product(&a.terms(12), &b);
        assert_eq!(prod[0], rat(1));
        assert!(prod[1..].iter().all(Zero::is_zero));
    }
}
