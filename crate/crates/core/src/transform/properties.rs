//! Numerical checks of linearity, homothety, scaling and the action on
//! derivatives, each side computed by its own quadrature.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::expr::FunctionExpr;
use crate::kernels::{kernel_derivative_eval, KernelFamily, KernelSpec};
use crate::rational::{to_f64, Rational};

use super::{check_s, integrate_half_line, probe, transform, weighted, QuadratureConfig};

#[derive(Debug, Clone, PartialEq)]
pub enum Property {
    /// `L(A f + B g) = A L(f) + B L(g)`.
    Linearity { a: Rational, b: Rational, g: FunctionExpr },
    /// `L_{x a}(f)(s) = F_a(x s)`, with `x a = (x a_1, x^2 a_2, ...)`.
    Homothety { x: Rational },
    /// `L(f(d t))(s) = F(s/d)/d`.
    Scaling { d: Rational },
    /// `L(f')(s) = -s ∫ f(t) sum C_{k+1}(a) (st)^k/k! dt - f(0)`.
    DerivativeAction,
}

impl Property {
    pub fn name(&self) -> &'static str {
        match self {
            Property::Linearity { .. } => "linearity",
            Property::Homothety { .. } => "homothety",
            Property::Scaling { .. } => "scaling",
            Property::DerivativeAction => "derivative-action",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PropertyCheck {
    pub property: String,
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
    /// Sum of the quadrature error estimates behind both sides.
    pub error_estimate: f64,
}

fn positive(name: &str, v: &Rational) -> Result<f64> {
    let x = to_f64(v);
    if x > 0.0 {
        Ok(x)
    } else {
        Err(Error::ArgumentDomain(format!("{name} must be positive, got {x}")))
    }
}

/// Evaluates both sides of `property` at `s`.
pub fn verify_property(
    property: &Property,
    f: &FunctionExpr,
    spec: &KernelSpec,
    s: f64,
    q: &QuadratureConfig,
) -> Result<PropertyCheck> {
    check_s(s)?;
    let (lhs, rhs, error) = match property {
        Property::Linearity { a, b, g } => {
            let combined = FunctionExpr::combine(a.clone(), f, b.clone(), g);
            let left = transform(&combined, spec, s, q)?;
            let (l1, l2) = (transform(f, spec, s, q)?, transform(g, spec, s, q)?);
            let (a, b) = (to_f64(a), to_f64(b));
            let rhs = a * l1.value + b * l2.value;
            let error = left.error_estimate + a.abs() * l1.error_estimate + b.abs() * l2.error_estimate;
            (left.value, rhs, error)
        }
        Property::Homothety { x } => {
            let xf = positive("x", x)?;
            let a = match &spec.family {
                KernelFamily::ReciprocalEgf(_) | KernelFamily::Laguerre(_) => spec.sequence(),
                _ => {
                    return Err(Error::ArgumentDomain(format!(
                        "homothety needs an untruncated sequence kernel, got {}",
                        spec.label()
                    )))
                }
            };
            let scaled = KernelSpec {
                family: KernelFamily::ReciprocalEgf(a.scaled(x.clone())),
                ..spec.clone()
            };
            let left = transform(f, &scaled, s, q)?;
            let right = transform(f, spec, xf * s, q)?;
            (left.value, right.value, left.error_estimate + right.error_estimate)
        }
        Property::Scaling { d } => {
            let df = positive("d", d)?;
            let left = transform(&f.rescaled(d.clone()), spec, s, q)?;
            let right = transform(f, spec, s / df, q)?;
            (left.value, right.value / df, left.error_estimate + right.error_estimate / df)
        }
        Property::DerivativeAction => {
            let decay = probe(spec, s)?;
            if decay.verdict.violates_hp() {
                return Err(Error::ArgumentDomain(format!(
                    "derivative action needs a kernel passing the decay probe; {} is {}",
                    spec.label(),
                    decay.verdict.as_str()
                )));
            }
            let left = transform(&f.derivative(), spec, s, q)?;
            let g = |t: f64| weighted(kernel_derivative_eval(spec, s, t)?, f, t);
            let shifted = integrate_half_line(&g, 1.0 / s, q)?;
            let rhs = -s * shifted.value - f.eval(0.0)?;
            (left.value, rhs, left.error_estimate + s * shifted.error)
        }
    };
    Ok(PropertyCheck {
        property: property.name().to_string(),
        lhs,
        rhs,
        residual: (lhs - rhs).abs(),
        error_estimate: error,
    })
}
