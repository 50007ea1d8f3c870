//! Umbral number sequences `a = (a_0 = 1, a_1, a_2, ...)`.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{factorial, format_rational, ln_abs, pow, to_f64, Rational};

/// Generation rule of an [`UmbralSequence`].
#[derive(Debug, Clone, PartialEq)]
pub enum SequenceRule {
    /// `a_k = 1`; the ordinary exponential.
    Ones,
    /// `a_k = 1/(k!)^r`, whose EGF is the Laguerre-type exponential `e_r`.
    Laguerre(u32),
    /// `a_k = k!`; the EGF is the geometric series.
    Factorial,
    /// `a_k = 1/(k+1)`; the EGF is `(e^x - 1)/x`.
    InvSucc,
    /// Finite list `a_0 = 1, a_1, ..., a_m`, zero beyond.
    Explicit(Arc<[Rational]>),
    /// `x·a := (x a_1, x^2 a_2, ...)`.
    Scaled(Rational, Arc<UmbralSequence>),
}

/// A sequence with `a_0 = 1`; every term is a pure function of its index.
#[derive(Debug, Clone, PartialEq)]
pub struct UmbralSequence {
    rule: SequenceRule,
    label: String,
}

impl UmbralSequence {
    pub fn ones() -> Self {
        Self::from_rule(SequenceRule::Ones)
    }

    pub fn laguerre(r: u32) -> Self {
        Self::from_rule(SequenceRule::Laguerre(r))
    }

    pub fn factorial() -> Self {
        Self::from_rule(SequenceRule::Factorial)
    }

    pub fn inv_succ() -> Self {
        Self::from_rule(SequenceRule::InvSucc)
    }

    /// Finite sequence from explicit terms; `terms[0]` must be 1.
    pub fn explicit(terms: Vec<Rational>) -> Result<Self> {
        match terms.first() {
            Some(a0) if a0.is_one() => Ok(Self::from_rule(SequenceRule::Explicit(terms.into()))),
            Some(a0) => Err(Error::ArgumentDomain(format!(
                "a_0 must be 1, got {}",
                format_rational(a0)
            ))),
            None => Err(Error::ArgumentDomain("empty sequence".into())),
        }
    }

    /// Explicit sequence from `a_1, a_2, ...`, prepending `a_0 = 1`.
    pub fn from_tail(tail: &[Rational]) -> Self {
        let mut terms = Vec::with_capacity(tail.len() + 1);
        terms.push(Rational::one());
        terms.extend_from_slice(tail);
        Self::from_rule(SequenceRule::Explicit(terms.into()))
    }

    /// The homothetic image `x·a`.
    pub fn scaled(&self, x: Rational) -> Self {
        Self::from_rule(SequenceRule::Scaled(x, Arc::new(self.clone())))
    }

    fn from_rule(rule: SequenceRule) -> Self {
        let label = match &rule {
            SequenceRule::Ones => "ones".to_string(),
            SequenceRule::Laguerre(r) => format!("laguerre:{r}"),
            SequenceRule::Factorial => "factorial".to_string(),
            SequenceRule::InvSucc => "inv-succ".to_string(),
            SequenceRule::Explicit(terms) => terms
                .iter()
                .map(format_rational)
                .collect::<Vec<_>>()
                .join(","),
            SequenceRule::Scaled(x, base) => format!("{}*({})", format_rational(x), base.label),
        };
        UmbralSequence { rule, label }
    }

    pub fn rule(&self) -> &SequenceRule {
        &self.rule
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Exact term `a_k`.
    pub fn term(&self, k: usize) -> Rational {
        match &self.rule {
            SequenceRule::Ones => Rational::one(),
            SequenceRule::Laguerre(r) => {
                let f = factorial(k);
                Rational::new(BigInt::one(), num_traits::pow(f, *r as usize))
            }
            SequenceRule::Factorial => Rational::from_integer(factorial(k)),
            SequenceRule::InvSucc => Rational::new(BigInt::one(), BigInt::from(k + 1)),
            SequenceRule::Explicit(terms) => terms.get(k).cloned().unwrap_or_else(Rational::zero),
            SequenceRule::Scaled(x, base) => pow(x, k) * base.term(k),
        }
    }

    /// `a_0..=a_n`.
    pub fn terms(&self, n: usize) -> Vec<Rational> {
        (0..=n).map(|k| self.term(k)).collect()
    }

    /// Index of the last nonzero term for finite sequences.
    pub fn degree(&self) -> Option<usize> {
        match &self.rule {
            SequenceRule::Explicit(terms) => {
                Some(terms.iter().rposition(|t| !t.is_zero()).unwrap_or(0))
            }
            SequenceRule::Scaled(x, _) if x.is_zero() => Some(0),
            SequenceRule::Scaled(_, base) => base.degree(),
            _ => None,
        }
    }

    /// True when every term is nonnegative.
    pub fn is_nonnegative(&self) -> bool {
        match &self.rule {
            SequenceRule::Explicit(terms) => terms.iter().all(|t| !t.is_negative()),
            SequenceRule::Scaled(x, base) => !x.is_negative() && base.is_nonnegative(),
            _ => true,
        }
    }

    /// `(ln |a_k / k!|, sign)` for floating-point series evaluation without
    /// overflowing factorials; `ln_fact` is `ln k!`.
    pub(crate) fn ln_egf_coeff(&self, k: usize, ln_fact: f64) -> (f64, f64) {
        match &self.rule {
            SequenceRule::Ones => (-ln_fact, 1.0),
            SequenceRule::Laguerre(r) => (-(f64::from(*r) + 1.0) * ln_fact, 1.0),
            SequenceRule::Factorial => (0.0, 1.0),
            SequenceRule::InvSucc => (-ln_fact - ((k + 1) as f64).ln(), 1.0),
            SequenceRule::Explicit(terms) => match terms.get(k) {
                Some(t) => {
                    let (ln, sign) = ln_abs(t);
                    (ln - ln_fact, sign)
                }
                None => (f64::NEG_INFINITY, 0.0),
            },
            SequenceRule::Scaled(x, base) => {
                let (ln_base, sign_base) = base.ln_egf_coeff(k, ln_fact);
                if k == 0 {
                    return (ln_base, sign_base);
                }
                let (ln_x, sign_x) = ln_abs(x);
                let sign = sign_base * sign_x.powi(k as i32);
                (ln_base + k as f64 * ln_x, sign)
            }
        }
    }

    /// `(mult, div)` with `(a_k/k!) / (a_{k-1}/(k-1)!) = mult/div`, for rules
    /// whose terms never vanish. `None` for explicit lists.
    pub(crate) fn egf_step(&self, k: usize) -> Option<(f64, f64)> {
        let kf = k as f64;
        match &self.rule {
            SequenceRule::Ones => Some((1.0, kf)),
            SequenceRule::Laguerre(r) => Some((1.0, kf.powi(*r as i32 + 1))),
            SequenceRule::Factorial => Some((1.0, 1.0)),
            SequenceRule::InvSucc => Some((1.0, kf + 1.0)),
            SequenceRule::Explicit(_) => None,
            SequenceRule::Scaled(x, base) => {
                let x = to_f64(x);
                if x == 0.0 {
                    return None;
                }
                base.egf_step(k).map(|(m, d)| (m * x, d))
            }
        }
    }

    /// Floating-point value of `a_k`.
    pub fn term_f64(&self, k: usize) -> f64 {
        to_f64(&self.term(k))
    }
}

/// Parses `ones`, `laguerre:r`, `factorial`, `inv-succ` or an explicit list
/// `a_0,a_1,...` of integers and `p/q` fractions with `a_0 = 1`.
impl std::str::FromStr for UmbralSequence {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let text = text.trim();
        match text {
            "ones" => return Ok(Self::ones()),
            "factorial" => return Ok(Self::factorial()),
            "inv-succ" => return Ok(Self::inv_succ()),
            _ => {}
        }
        if let Some(r) = text.strip_prefix("laguerre:") {
            let r: u32 = r
                .trim()
                .parse()
                .map_err(|_| Error::ArgumentDomain(format!("bad laguerre order in {text:?}")))?;
            return Ok(Self::laguerre(r));
        }
        let terms = text
            .split(',')
            .map(|item| {
                let item = item.trim();
                if item.contains('.') {
                    return Err(Error::ArgumentDomain(format!(
                        "sequence terms must be exact integers or p/q fractions, got {item:?}"
                    )));
                }
                crate::rational::parse_rational(item)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::explicit(terms)
    }
}

impl fmt::Display for UmbralSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}
