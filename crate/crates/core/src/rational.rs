//! Exact rational helpers shared by the combinatorial layers.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with a positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn pow(base: &Rational, exp: usize) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..exp {
        acc *= base;
    }
    acc
}

/// Nearest f64, also for numerators and denominators beyond the f64 range.
pub fn to_f64(q: &Rational) -> f64 {
    if let Some(v) = q.to_f64() {
        if v.is_finite() && (v != 0.0 || q.is_zero()) {
            return v;
        }
    }
    let (ln, sign) = ln_abs(q);
    sign * ln.exp()
}

/// `(ln |q|, sign q)`; `ln |0|` is `-inf`.
pub fn ln_abs(q: &Rational) -> (f64, f64) {
    if q.is_zero() {
        return (f64::NEG_INFINITY, 0.0);
    }
    let sign = if q.is_negative() { -1.0 } else { 1.0 };
    (ln_bigint(&q.numer().abs()) - ln_bigint(q.denom()), sign)
}

fn ln_bigint(n: &BigInt) -> f64 {
    let bits = n.bits();
    if bits < 1000 {
        return n.to_f64().unwrap_or(f64::INFINITY).ln();
    }
    let shift = bits - 64;
    let top: BigInt = n >> shift;
    top.to_f64().unwrap_or(f64::INFINITY).ln() + shift as f64 * std::f64::consts::LN_2
}

/// Parses `p`, `-p`, `p/q` or a plain decimal such as `0.25` into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::ArgumentDomain(format!("not a rational number: {text:?}"));
    if let Some((p, q)) = text.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(Error::ArgumentDomain(format!("zero denominator in {text:?}")));
        }
        return Ok(Rational::new(p, q));
    }
    parse_decimal(text).ok_or_else(bad)
}

/// Exact value of a decimal literal (`12`, `-0.5`, `3.`), no exponent syntax.
pub fn parse_decimal(text: &str) -> Option<Rational> {
    let (neg, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text.strip_prefix('+').unwrap_or(text)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let numer: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().ok()? };
    let denom = num_traits::pow(BigInt::from(10), frac_part.len());
    let value = Rational::new(numer, denom);
    Some(if neg { -value } else { value })
}

/// `p/q` text, or `p` for integers.
pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Serializes as the [`format_rational`] string.
pub fn serialize_rational<S: serde::Serializer>(q: &Rational, ser: S) -> std::result::Result<S::Ok, S::Error> {
    ser.serialize_str(&format_rational(q))
}

/// Serializes a list with [`format_rational`] strings.
pub fn serialize_rationals<S: serde::Serializer>(qs: &[Rational], ser: S) -> std::result::Result<S::Ok, S::Error> {
    ser.collect_seq(qs.iter().map(format_rational))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials_and_factorials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(3, 5), BigInt::zero());
        assert_eq!(factorial(0), BigInt::one());
        assert_eq!(factorial(10), BigInt::from(3_628_800));
    }

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(parse_rational("3/6").unwrap(), ratio(1, 2));
        assert_eq!(parse_rational("-0.25").unwrap(), ratio(-1, 4));
        assert_eq!(parse_rational("7").unwrap(), rat(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational(".").is_err());
    }

    #[test]
    fn huge_rationals_convert_through_logs() {
        let tiny = Rational::new(BigInt::one(), factorial(300));
        let v = to_f64(&tiny);
        assert_eq!(v, 0.0);
        let (ln, sign) = ln_abs(&tiny);
        assert_eq!(sign, 1.0);
        // ln 300! from Stirling with correction terms
        let n = 300.0f64;
        let stirling = n * n.ln() - n + 0.5 * (2.0 * std::f64::consts::PI * n).ln() + 1.0 / (12.0 * n);
        assert!((ln + stirling).abs() < 1e-9);
        assert_eq!(format_rational(&ratio(-6, 4)), "-3/2");
    }
}
