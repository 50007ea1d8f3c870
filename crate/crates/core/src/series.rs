//! Truncated formal power series with exact rational coefficients.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{factorial, Rational};

/// How the stored coefficients multiply the powers of the variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Convention {
    /// `c_k` multiplies `s^k`.
    Plain,
    /// `c_k` multiplies `s^k / k!`.
    Egf,
}

/// `sum_{k<=order} c_k s^k` (or `c_k s^k/k!`), exact through `order`.
#[derive(Debug, Clone, PartialEq)]
pub struct FormalPowerSeries {
    coeffs: Vec<Rational>,
    convention: Convention,
}

impl FormalPowerSeries {
    /// Takes `coeffs[0..=order]`; missing coefficients are zero.
    pub fn new(mut coeffs: Vec<Rational>, order: usize, convention: Convention) -> Self {
        coeffs.resize(order + 1, Rational::zero());
        FormalPowerSeries { coeffs, convention }
    }

    pub fn plain(coeffs: Vec<Rational>) -> Self {
        let order = coeffs.len().saturating_sub(1);
        Self::new(coeffs, order, Convention::Plain)
    }

    pub fn egf(coeffs: Vec<Rational>) -> Self {
        let order = coeffs.len().saturating_sub(1);
        Self::new(coeffs, order, Convention::Egf)
    }

    /// `e^s = sum s^k/k!` in plain convention.
    pub fn exp(order: usize) -> Self {
        let coeffs = (0..=order)
            .map(|k| Rational::new(1.into(), factorial(k)))
            .collect();
        Self::new(coeffs, order, Convention::Plain)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Option<&Rational> {
        self.coeffs.get(k)
    }

    pub fn to_plain(&self) -> Self {
        match self.convention {
            Convention::Plain => self.clone(),
            Convention::Egf => {
                let coeffs = self
                    .coeffs
                    .iter()
                    .enumerate()
                    .map(|(k, c)| c / Rational::from_integer(factorial(k)))
                    .collect();
                FormalPowerSeries {
                    coeffs,
                    convention: Convention::Plain,
                }
            }
        }
    }

    pub fn to_egf(&self) -> Self {
        match self.convention {
            Convention::Egf => self.clone(),
            Convention::Plain => {
                let coeffs = self
                    .coeffs
                    .iter()
                    .enumerate()
                    .map(|(k, c)| c * Rational::from_integer(factorial(k)))
                    .collect();
                FormalPowerSeries {
                    coeffs,
                    convention: Convention::Egf,
                }
            }
        }
    }

    /// Same series, truncated or zero-extended to `order`.
    pub fn with_order(&self, order: usize) -> Self {
        Self::new(self.coeffs.clone(), order, self.convention)
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b) = self.aligned(other);
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect();
        FormalPowerSeries {
            coeffs,
            convention: Convention::Plain,
        }
        .into_convention(self.convention)
    }

    /// Cauchy product truncated to the smaller order.
    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = self.aligned(other);
        let n = a.order();
        let mut coeffs = vec![Rational::zero(); n + 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs[..=n - i].iter().enumerate() {
                coeffs[i + j] += x * y;
            }
        }
        FormalPowerSeries {
            coeffs,
            convention: Convention::Plain,
        }
        .into_convention(self.convention)
    }

    /// Multiplicative inverse through the same order by long division.
    pub fn reciprocal(&self) -> Result<Self> {
        let p = self.to_plain();
        let c0 = &p.coeffs[0];
        if c0.is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let n = p.order();
        let inv0 = Rational::one() / c0;
        let mut out: Vec<Rational> = Vec::with_capacity(n + 1);
        out.push(inv0.clone());
        for k in 1..=n {
            let mut acc = Rational::zero();
            for j in 1..=k {
                if !p.coeffs[j].is_zero() {
                    acc += &p.coeffs[j] * &out[k - j];
                }
            }
            out.push(-acc * &inv0);
        }
        Ok(FormalPowerSeries {
            coeffs: out,
            convention: Convention::Plain,
        }
        .into_convention(self.convention))
    }

    /// Multiplies the `k`-th plain coefficient by `factor(k)`.
    pub fn map_plain(&self, factor: impl Fn(usize) -> Rational) -> Self {
        let p = self.to_plain();
        let coeffs = p
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c * factor(k))
            .collect();
        FormalPowerSeries {
            coeffs,
            convention: Convention::Plain,
        }
        .into_convention(self.convention)
    }

    fn into_convention(self, convention: Convention) -> Self {
        match convention {
            Convention::Plain => self.to_plain(),
            Convention::Egf => self.to_egf(),
        }
    }

    fn aligned(&self, other: &Self) -> (Self, Self) {
        let n = self.order().min(other.order());
        (self.to_plain().with_order(n), other.to_plain().with_order(n))
    }
}
