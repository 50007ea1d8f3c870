//! Formal term tables for `f(t) / E_a(st)` from a Taylor or Laurent expansion
//! of `f`. Nothing here is integrated.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{binomial, to_f64, Rational};
use crate::sequence::UmbralSequence;
use crate::umbral::coeff_c;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExpansionKind {
    /// `f(t) = sum c_j t^j/j!`.
    Taylor,
    /// `f(t) = sum c_j t^-j/j!`.
    Laurent,
}

/// `coefficient * s^s_power * t^t_power / n!`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FormalTerm {
    pub n: usize,
    pub k: usize,
    #[serde(serialize_with = "crate::rational::serialize_rational")]
    pub coefficient: Rational,
    pub s_power: usize,
    pub t_power: i64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FormalSeries {
    pub kind: ExpansionKind,
    /// `rows[n]` holds the terms with `1/n!`, ordered by `k`.
    pub rows: Vec<Vec<FormalTerm>>,
}

impl FormalSeries {
    /// Floating-point value of the truncated double sum.
    pub fn evaluate(&self, s: f64, t: f64) -> f64 {
        let mut total = 0.0;
        let mut ln_fact = 0.0f64;
        for (n, row) in self.rows.iter().enumerate() {
            if n > 0 {
                ln_fact += (n as f64).ln();
            }
            let inv_fact = (-ln_fact).exp();
            for term in row {
                total += to_f64(&term.coefficient)
                    * s.powi(term.s_power as i32)
                    * t.powi(term.t_power as i32)
                    * inv_fact;
            }
        }
        total
    }
}

/// Rows `n = 0..=order` of the Cauchy product of the expansion `c` of `f`
/// with the kernel series `sum C_k(a) (st)^k/k!`: the term `(n, k)` has
/// coefficient `binom(n, k) c_{n-k} C_k(a)` and carries `s^k t^n` (Taylor)
/// or `s^k t^{2k-n}` (Laurent).
pub fn formal_integrand_series(
    c: &[Rational],
    kind: ExpansionKind,
    a: &UmbralSequence,
    order: usize,
) -> Result<FormalSeries> {
    if c.len() <= order {
        return Err(Error::ArgumentDomain(format!(
            "need c_0..c_{order}, got {} coefficients",
            c.len()
        )));
    }
    let cc = coeff_c(a, order);
    let rows = (0..=order)
        .map(|n| {
            (0..=n)
                .map(|k| FormalTerm {
                    n,
                    k,
                    coefficient: Rational::from_integer(binomial(n, k)) * &c[n - k] * &cc[k],
                    s_power: k,
                    t_power: match kind {
                        ExpansionKind::Taylor => n as i64,
                        ExpansionKind::Laurent => 2 * k as i64 - n as i64,
                    },
                })
                .collect()
        })
        .collect();
    Ok(FormalSeries { kind, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn delta(n: usize) -> Vec<Rational> {
        let mut c = vec![rat(0); n + 1];
        c[0] = rat(1);
        c
    }

    #[test]
    fn constant_function_keeps_kernel_rows() {
        let f = formal_integrand_series(&delta(6), ExpansionKind::Taylor, &UmbralSequence::ones(), 6).unwrap();
        for (n, row) in f.rows.iter().enumerate() {
            for term in row {
                let expected = if term.k == n { crate::umbral::sign_pow(n) } else { rat(0) };
                assert_eq!(term.coefficient, expected);
            }
        }
    }

    #[test]
    fn exponential_row_two() {
        let ones = vec![rat(1); 3];
        let f = formal_integrand_series(&ones, ExpansionKind::Taylor, &UmbralSequence::ones(), 2).unwrap();
        let row: Vec<_> = f.rows[2].iter().map(|t| t.coefficient.clone()).collect();
        assert_eq!(row, vec![rat(1), rat(-2), rat(1)]);
    }

    #[test]
    fn laurent_delta_is_kernel_series() {
        let f = formal_integrand_series(&delta(5), ExpansionKind::Laurent, &UmbralSequence::laguerre(1), 5).unwrap();
        let cc = coeff_c(&UmbralSequence::laguerre(1), 5);
        for (n, row) in f.rows.iter().enumerate() {
            let last = &row[n];
            assert_eq!((last.s_power, last.t_power), (n, n as i64));
            assert_eq!(last.coefficient, cc[n]);
            assert!(row[..n].iter().all(|t| t.coefficient == rat(0)));
        }
    }

    #[test]
    fn short_input_is_rejected() {
        assert!(formal_integrand_series(&delta(2), ExpansionKind::Taylor, &UmbralSequence::ones(), 3).is_err());
    }
}
