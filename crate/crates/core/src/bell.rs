//! Partial and complete Bell polynomials in exact arithmetic.
//!
//! `B_{n,k}(g_1, ..., g_{n-k+1})` is built from the recursion
//!
//! ```text
//! B_{n,k} = sum_{h=0}^{n-k} C(n-1, h) B_{n-h-1,k-1} g_{h+1}
//! ```
//!
//! seeded with `B_{0,0} = 1`, `B_{n,0} = 0` for `n >= 1` and `B_{0,k} = 0` for `k >= 1`.
//! The set-partition expansion is kept as an independent oracle.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{binomial, Rational};

/// Default largest `n` accepted by [`bell_partition_oracle`].
pub const ORACLE_LIMIT: usize = 12;

/// Triangular table of `B_{n,k}` for `0 <= k <= n <= n_max`.
///
/// Only entries whose inputs are available are filled: `B_{n,k}` needs
/// `g_1..g_{n-k+1}`, so a table built from `g` of length `L` holds every entry
/// with `n - k + 1 <= L`.
#[derive(Debug, Clone, PartialEq)]
pub struct PartialBellTable {
    n_max: usize,
    g: Vec<Rational>,
    // rows[n][k]; None where g is too short
    rows: Vec<Vec<Option<Rational>>>,
}

impl PartialBellTable {
    /// Builds the table up to `n_max` from `g = [g_1, g_2, ...]`.
    pub fn new(n_max: usize, g: &[Rational]) -> Self {
        let mut rows: Vec<Vec<Option<Rational>>> = Vec::with_capacity(n_max + 1);
        rows.push(vec![Some(Rational::one())]);
        for n in 1..=n_max {
            let mut row = vec![None; n + 1];
            row[0] = Some(Rational::zero());
            for k in 1..=n {
                if n - k + 1 > g.len() {
                    continue;
                }
                let mut acc = Rational::zero();
                for h in 0..=(n - k) {
                    let prev = rows[n - h - 1]
                        .get(k - 1)
                        .and_then(|v| v.as_ref())
                        .expect("lower entry needs fewer inputs");
                    if prev.is_zero() || g[h].is_zero() {
                        continue;
                    }
                    let c = Rational::from_integer(binomial(n - 1, h));
                    acc += c * prev * &g[h];
                }
                row[k] = Some(acc);
            }
            rows.push(row);
        }
        PartialBellTable {
            n_max,
            g: g.to_vec(),
            rows,
        }
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn inputs(&self) -> &[Rational] {
        &self.g
    }

    /// `B_{n,k}`, or `None` when out of range or the inputs are too short.
    pub fn get(&self, n: usize, k: usize) -> Option<&Rational> {
        self.rows.get(n)?.get(k)?.as_ref()
    }

    /// Iterates over the filled entries with `1 <= k <= n`, row by row.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Rational)> + '_ {
        self.rows.iter().enumerate().skip(1).flat_map(|(n, row)| {
            row.iter()
                .enumerate()
                .skip(1)
                .filter_map(move |(k, v)| v.as_ref().map(|v| (n, k, v)))
        })
    }

    /// `Y_n = sum_k B_{n,k} f_k` using the table rows; `f = [f_1, ..., f_n]`.
    pub fn complete(&self, n: usize, f: &[Rational]) -> Result<Rational> {
        if n == 0 || n > self.n_max || f.len() < n || self.g.len() < n {
            return Err(Error::ArgumentDomain(format!(
                "Y_{n} needs n <= {} and at least n values of f and g",
                self.n_max
            )));
        }
        Ok((1..=n)
            .map(|k| self.get(n, k).expect("g covers row n") * &f[k - 1])
            .sum())
    }
}

fn check_partial_args(n: usize, k: usize, g_len: usize) -> Result<()> {
    if n < 1 || k < 1 || k > n {
        return Err(Error::ArgumentDomain(format!(
            "B_{{n,k}} needs 1 <= k <= n, got n = {n}, k = {k}"
        )));
    }
    if g_len < n - k + 1 {
        return Err(Error::ArgumentDomain(format!(
            "B_{{{n},{k}}} needs {} values of g, got {g_len}",
            n - k + 1
        )));
    }
    Ok(())
}

/// Partial Bell polynomial `B_{n,k}(g_1, ..., g_{n-k+1})` through the recursion.
pub fn partial_bell(n: usize, k: usize, g: &[Rational]) -> Result<Rational> {
    check_partial_args(n, k, g.len())?;
    let table = PartialBellTable::new(n, &g[..n - k + 1]);
    Ok(table.get(n, k).cloned().expect("entry is computable"))
}

/// Complete Bell polynomial `Y_n(f_1, g_1; ...; f_n, g_n)`.
pub fn complete_bell(n: usize, f: &[Rational], g: &[Rational]) -> Result<Rational> {
    if n < 1 || f.len() != n || g.len() != n {
        return Err(Error::ArgumentDomain(format!(
            "Y_{n} needs exactly n values of f and g, got {} and {}",
            f.len(),
            g.len()
        )));
    }
    PartialBellTable::new(n, g).complete(n, f)
}

/// Stirling number of the second kind `S(n, k) = B_{n,k}(1, 1, ..., 1)`.
pub fn stirling2(n: usize, k: usize) -> Result<BigInt> {
    if k > n {
        return Err(Error::ArgumentDomain(format!(
            "S(n, k) needs k <= n, got n = {n}, k = {k}"
        )));
    }
    if n == 0 {
        return Ok(BigInt::one());
    }
    if k == 0 {
        return Ok(BigInt::zero());
    }
    let ones = vec![Rational::one(); n - k + 1];
    let value = partial_bell(n, k, &ones)?;
    Ok(value.to_integer())
}

/// `B_{n,k}` by enumerating every partition of `{1..n}` into `k` blocks and
/// multiplying `g_{|block|}` over the blocks. Limited to `n <= ORACLE_LIMIT`.
pub fn bell_partition_oracle(n: usize, k: usize, g: &[Rational]) -> Result<Rational> {
    bell_partition_oracle_with_limit(n, k, g, ORACLE_LIMIT)
}

pub fn bell_partition_oracle_with_limit(
    n: usize,
    k: usize,
    g: &[Rational],
    limit: usize,
) -> Result<Rational> {
    check_partial_args(n, k, g.len())?;
    if n > limit {
        return Err(Error::PracticalSize { n, limit });
    }
    let mut total = Rational::zero();
    // restricted growth strings: labels[0] = 0, labels[i] <= 1 + max(labels[..i])
    let mut labels = vec![0usize; n];
    let mut block_sizes = vec![0usize; n];
    block_sizes[0] = 1;
    enumerate_partitions(1, 1, n, k, &mut labels, &mut block_sizes, g, &mut total);
    Ok(total)
}

#[allow(clippy::too_many_arguments)]
fn enumerate_partitions(
    pos: usize,
    blocks: usize,
    n: usize,
    k: usize,
    labels: &mut [usize],
    sizes: &mut [usize],
    g: &[Rational],
    total: &mut Rational,
) {
    if pos == n {
        if blocks == k {
            let mut term = Rational::one();
            for size in &sizes[..k] {
                term *= &g[size - 1];
            }
            *total += term;
        }
        return;
    }
    // the remaining elements cannot open enough new blocks
    if blocks + (n - pos) < k {
        return;
    }
    for label in 0..blocks.min(k) {
        labels[pos] = label;
        sizes[label] += 1;
        enumerate_partitions(pos + 1, blocks, n, k, labels, sizes, g, total);
        sizes[label] -= 1;
    }
    if blocks < k {
        labels[pos] = blocks;
        sizes[blocks] = 1;
        enumerate_partitions(pos + 1, blocks + 1, n, k, labels, sizes, g, total);
        sizes[blocks] = 0;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, ratio};

    fn ones(n: usize) -> Vec<Rational> {
        vec![Rational::one(); n]
    }

    #[test]
    fn base_cases() {
        let g1 = ratio(3, 7);
        assert_eq!(partial_bell(1, 1, &[g1.clone()]).unwrap(), g1);
        let table = PartialBellTable::new(0, &[]);
        assert_eq!(table.get(0, 0), Some(&Rational::one()));
    }

    #[test]
    fn b32_matches_third_bell_polynomial_term() {
        let (g1, g2) = (ratio(2, 3), ratio(-5, 4));
        let expected = rat(3) * &g2 * &g1;
        assert_eq!(partial_bell(3, 2, &[g1, g2]).unwrap(), expected);
    }

    #[test]
    fn b42_of_ones_is_seven() {
        assert_eq!(partial_bell(4, 2, &ones(3)).unwrap(), rat(7));
    }

    #[test]
    fn complete_bell_first_rows() {
        let f = [ratio(1, 2), ratio(-3, 5), rat(7)];
        let g = [ratio(2, 9), rat(-4), ratio(11, 3)];
        assert_eq!(
            complete_bell(1, &f[..1], &g[..1]).unwrap(),
            &f[0] * &g[0]
        );
        assert_eq!(
            complete_bell(2, &f[..2], &g[..2]).unwrap(),
            &f[0] * &g[1] + &f[1] * &g[0] * &g[0]
        );
        let y3 = &f[0] * &g[2] + rat(3) * &f[1] * &g[1] * &g[0] + &f[2] * pow3(&g[0]);
        assert_eq!(complete_bell(3, &f, &g).unwrap(), y3);
    }

    fn pow3(x: &Rational) -> Rational {
        x * x * x
    }

    #[test]
    fn argument_errors() {
        assert!(matches!(partial_bell(2, 3, &ones(3)), Err(Error::ArgumentDomain(_))));
        assert!(matches!(partial_bell(3, 0, &ones(3)), Err(Error::ArgumentDomain(_))));
        assert!(matches!(partial_bell(5, 2, &ones(3)), Err(Error::ArgumentDomain(_))));
        assert!(matches!(complete_bell(2, &ones(1), &ones(2)), Err(Error::ArgumentDomain(_))));
        assert!(matches!(stirling2(2, 3), Err(Error::ArgumentDomain(_))));
    }

    #[test]
    fn stirling_values() {
        assert_eq!(stirling2(0, 0).unwrap(), BigInt::one());
        for n in 1..12 {
            assert_eq!(stirling2(n, n).unwrap(), BigInt::one());
            assert_eq!(stirling2(n, 0).unwrap(), BigInt::zero());
        }
        assert_eq!(stirling2(4, 2).unwrap(), BigInt::from(7));
        assert_eq!(stirling2(6, 2).unwrap(), BigInt::from(31));
        assert_eq!(stirling2(10, 5).unwrap(), BigInt::from(42_525));
    }

    #[test]
    fn oracle_small_cases() {
        let (g1, g2) = (ratio(5, 2), ratio(-1, 3));
        assert_eq!(
            bell_partition_oracle(2, 1, &[g1.clone(), g2.clone()]).unwrap(),
            g2
        );
        assert_eq!(
            bell_partition_oracle(3, 2, &[g1.clone(), g2.clone()]).unwrap(),
            rat(3) * &g1 * &g2
        );
        assert_eq!(bell_partition_oracle(5, 3, &ones(3)).unwrap(), rat(25));
    }

    #[test]
    fn oracle_size_limit() {
        assert_eq!(
            bell_partition_oracle(13, 2, &ones(12)),
            Err(Error::PracticalSize { n: 13, limit: 12 })
        );
        assert!(bell_partition_oracle_with_limit(13, 12, &ones(2), 13).is_ok());
    }

    #[test]
    fn boundary_rows() {
        let g: Vec<Rational> = (1..=9).map(|i| ratio(i, i + 2)).collect();
        let table = PartialBellTable::new(9, &g);
        for n in 1..=9 {
            assert_eq!(table.get(n, 1).unwrap(), &g[n - 1]);
            let mut p = Rational::one();
            for _ in 0..n {
                p *= &g[0];
            }
            assert_eq!(table.get(n, n).unwrap(), &p);
        }
        assert_eq!(table.entries().count(), 45);
    }

    #[test]
    fn short_inputs_leave_gaps() {
        let table = PartialBellTable::new(4, &ones(2));
        assert!(table.get(4, 1).is_none());
        assert_eq!(table.get(4, 3).unwrap(), &rat(6));
        assert_eq!(table.get(4, 4).unwrap(), &rat(1));
    }
}
