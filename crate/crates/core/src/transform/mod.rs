//! Numerical evaluation of `F(s) = ∫_0^∞ f(t) / E(st) dt` for the kernels in
//! [`crate::kernels`], plus property checks, formal series and an
//! experimental inversion.

mod formal;
mod inversion;
mod properties;

use std::collections::BTreeSet;

use num_complex::Complex64;
use serde::Serialize;

pub use formal::{formal_integrand_series, ExpansionKind, FormalSeries, FormalTerm};
pub use inversion::{bromwich_invert, InversionReport};
pub use properties::{verify_property, Property, PropertyCheck};

use crate::error::{Error, Result};
use crate::expr::FunctionExpr;
use crate::kernels::{
    hp_decay_probe, kernel_eval, kernel_eval_complex, truncation_gap_eval, DecayReport, DecayVerdict,
    KernelSpec,
};
use crate::quadrature::{integrate, QuadOptions, QuadValue};

/// The decay probe samples the kernel out to `st = PROBE_X`.
const PROBE_X: f64 = 64.0;
const PROBE_POINTS: usize = 24;
/// Tails decaying no faster than `t^-(1 + MIN_TAIL_EXCESS)` are rejected.
const MIN_TAIL_EXCESS: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadratureConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// The integrand envelope, relative to its peak, below which the tail is dropped.
    pub tail_epsilon: f64,
    /// Hard cap on the upper limit of direct quadrature.
    pub max_interval: f64,
    pub max_subdivisions: usize,
    /// Integrate over `[0, L]` only.
    pub finite_interval: Option<f64>,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            abs_tol: 1e-13,
            rel_tol: 1e-12,
            tail_epsilon: 1e-16,
            max_interval: 1e6,
            max_subdivisions: 2000,
            finite_interval: None,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        let positive = |name: &str, v: f64| {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(Error::ArgumentDomain(format!("{name} must be positive and finite, got {v}")))
            }
        };
        positive("abs_tol", self.abs_tol)?;
        positive("rel_tol", self.rel_tol)?;
        positive("tail_epsilon", self.tail_epsilon)?;
        positive("max_interval", self.max_interval)?;
        if let Some(l) = self.finite_interval {
            positive("finite_interval", l)?;
        }
        if self.max_subdivisions == 0 {
            return Err(Error::ArgumentDomain("max_subdivisions must be >= 1".into()));
        }
        Ok(())
    }

    fn options(&self) -> QuadOptions {
        QuadOptions {
            abs_tol: self.abs_tol,
            rel_tol: self.rel_tol,
            max_subdivisions: self.max_subdivisions,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TransformFlag {
    TailTruncated,
    FiniteIntervalMode,
    HpViolated,
    /// The tail beyond `cutoff_t` was integrated through `t = cutoff_t/u`.
    TailMapped,
}

impl TransformFlag {
    pub fn as_str(&self) -> &'static str {
        match self {
            TransformFlag::TailTruncated => "tail-truncated",
            TransformFlag::FiniteIntervalMode => "finite-interval-mode",
            TransformFlag::HpViolated => "hp-violated",
            TransformFlag::TailMapped => "tail-mapped",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TransformResult {
    pub value: f64,
    pub error_estimate: f64,
    pub cutoff_t: f64,
    pub decay: DecayReport,
    pub flags: BTreeSet<TransformFlag>,
}

impl TransformResult {
    pub fn has(&self, flag: TransformFlag) -> bool {
        self.flags.contains(&flag)
    }

    /// Flags joined by `|`, empty when none are set.
    pub fn flags_label(&self) -> String {
        self.flags.iter().map(|f| f.as_str()).collect::<Vec<_>>().join("|")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComplexTransformResult {
    pub value: Complex64,
    pub error_estimate: f64,
    pub cutoff_t: f64,
    pub flags: BTreeSet<TransformFlag>,
}

pub(crate) struct Integral<T> {
    pub value: T,
    pub error: f64,
    pub cutoff: f64,
    pub tail_truncated: bool,
    pub tail_mapped: bool,
}

impl<T> Integral<T> {
    fn record(&self, flags: &mut BTreeSet<TransformFlag>) {
        if self.tail_truncated {
            flags.insert(TransformFlag::TailTruncated);
        }
        if self.tail_mapped {
            flags.insert(TransformFlag::TailMapped);
        }
    }
}

fn envelope<T: QuadValue, G: Fn(f64) -> Result<T>>(g: &G, t: f64) -> Result<f64> {
    let mut m = 0.0f64;
    for i in 0..8 {
        m = m.max(g(t * (1.0 + i as f64 / 28.0))?.magnitude());
    }
    Ok(m)
}

/// `∫_0^∞ g`, with the upper limit found by doubling from `t0` until the
/// envelope of `|g|` drops below `tail_epsilon` times its peak. Tails still
/// alive at `max_interval` are integrated through `t = T/u` when they decay
/// faster than `1/t`.
pub(crate) fn integrate_half_line<T, G>(g: &G, t0: f64, q: &QuadratureConfig) -> Result<Integral<T>>
where
    T: QuadValue,
    G: Fn(f64) -> Result<T>,
{
    let opts = q.options();
    let mut breaks = Vec::new();
    let mut peak = 0.0f64;
    for j in (1..=12).rev() {
        let t = t0 * 0.5f64.powi(j);
        peak = peak.max(envelope(g, t)?);
        breaks.push(t);
    }
    let mut t = t0.min(q.max_interval);
    let mut prev = f64::NAN;
    loop {
        let e = envelope(g, t)?;
        peak = peak.max(e);
        if e <= q.tail_epsilon * peak {
            let head = integrate(|x| g(x), 0.0, t, &breaks, opts)?;
            return Ok(Integral {
                value: head.value,
                error: head.error + e * t,
                cutoff: t,
                tail_truncated: true,
                tail_mapped: false,
            });
        }
        if 2.0 * t > q.max_interval {
            let power = (prev / e).log2();
            if !(power > 1.0 + MIN_TAIL_EXCESS) {
                return Err(Error::NonIntegrable(format!(
                    "integrand envelope decays like t^-{power:.3} near t = {t:e}"
                )));
            }
            let head = integrate(|x| g(x), 0.0, t, &breaks, opts)?;
            let cut = t;
            let u_breaks: Vec<f64> = (1..=40).map(|j| 0.5f64.powi(j)).collect();
            let tail = integrate(
                |u: f64| Ok(g(cut / u)? * (cut / (u * u))),
                0.0,
                1.0,
                &u_breaks,
                QuadOptions {
                    abs_tol: opts.abs_tol * 0.5,
                    ..opts
                },
            )?;
            return Ok(Integral {
                value: head.value + tail.value,
                error: head.error + tail.error,
                cutoff: cut,
                tail_truncated: false,
                tail_mapped: true,
            });
        }
        breaks.push(t);
        prev = e;
        t *= 2.0;
    }
}

fn integrate_finite<T, G>(g: &G, l: f64, t0: f64, q: &QuadratureConfig) -> Result<Integral<T>>
where
    T: QuadValue,
    G: Fn(f64) -> Result<T>,
{
    let l = l.min(q.max_interval);
    let breaks: Vec<f64> = (-12..=40)
        .map(|j| t0 * 2f64.powi(j))
        .take_while(|&b| b < l)
        .collect();
    let out = integrate(|x| g(x), 0.0, l, &breaks, q.options())?;
    Ok(Integral {
        value: out.value,
        error: out.error,
        cutoff: l,
        tail_truncated: false,
        tail_mapped: false,
    })
}

fn check_s(s: f64) -> Result<()> {
    if s > 0.0 && s.is_finite() {
        Ok(())
    } else {
        Err(Error::ArgumentDomain(format!("s must be positive and finite, got {s}")))
    }
}

/// `kernel * f`; an underflowed kernel zeroes any finite `f`.
fn weighted(k: f64, f: &FunctionExpr, t: f64) -> Result<f64> {
    let v = f.eval(t)?;
    if !v.is_finite() {
        return Err(Error::NonIntegrable(format!("f({t}) = {v} overflows")));
    }
    let out = k * v;
    if !out.is_finite() {
        return Err(Error::NonIntegrable(format!("integrand is {out} at t = {t}")));
    }
    Ok(out)
}

fn f_decays(f: &FunctionExpr, t0: f64) -> Result<bool> {
    let first = f.eval(t0)?.abs();
    let last = f.eval(t0 * 1024.0)?.abs();
    Ok(last < first)
}

fn probe(spec: &KernelSpec, s: f64) -> Result<DecayReport> {
    hp_decay_probe(spec, s, PROBE_X / s, PROBE_POINTS)
}

/// Runs `g` under the decay verdict of `decay`.
fn run<G: Fn(f64) -> Result<f64>>(
    g: &G,
    f: &FunctionExpr,
    s: f64,
    decay: DecayReport,
    q: &QuadratureConfig,
) -> Result<TransformResult> {
    q.validate()?;
    let t0 = 1.0 / s;
    let mut flags = BTreeSet::new();
    let hp_violated = decay.verdict.violates_hp();
    if hp_violated {
        flags.insert(TransformFlag::HpViolated);
        flags.insert(TransformFlag::FiniteIntervalMode);
    }
    let integral = if let Some(l) = q.finite_interval {
        flags.insert(TransformFlag::FiniteIntervalMode);
        integrate_finite(g, l, t0, q)?
    } else if hp_violated {
        if decay.verdict == DecayVerdict::DivergentDenominator || !f_decays(f, t0)? {
            return Err(Error::Divergence {
                x: s * decay.grid.last().copied().unwrap_or(PROBE_X / s),
                terms: 0,
                reason: format!(
                    "kernel {} is {} and f does not decay; a finite interval is required",
                    decay.kernel,
                    decay.verdict.as_str()
                ),
            });
        }
        integrate_half_line(g, t0, q)?
    } else {
        integrate_half_line(g, t0, q)?
    };
    integral.record(&mut flags);
    Ok(TransformResult {
        value: integral.value,
        error_estimate: integral.error,
        cutoff_t: integral.cutoff,
        decay,
        flags,
    })
}

/// `∫_0^∞ f(t) K(s, t) dt` for the kernel `spec`.
pub fn transform(f: &FunctionExpr, spec: &KernelSpec, s: f64, q: &QuadratureConfig) -> Result<TransformResult> {
    check_s(s)?;
    let decay = probe(spec, s)?;
    let g = |t: f64| weighted(kernel_eval(spec, s, t)?, f, t);
    run(&g, f, s, decay, q)
}

/// The transform under the degree-`n` truncation of `e_r`. Slowly decaying
/// integrands are additionally flagged as finite-interval runs.
pub fn transform_truncated(
    f: &FunctionExpr,
    r: u32,
    n: usize,
    s: f64,
    q: &QuadratureConfig,
) -> Result<TransformResult> {
    if n == 0 {
        return Err(Error::ArgumentDomain("truncation order must be >= 1".into()));
    }
    let mut out = transform(f, &KernelSpec::truncated_laguerre(r, n), s, q)?;
    if out.has(TransformFlag::TailMapped) {
        out.flags.insert(TransformFlag::FiniteIntervalMode);
    }
    Ok(out)
}

/// `∫ f(t) [1/T_n(st) - 1/E(st)] dt`, the gap between the degree-`n`
/// truncated transform and the full one, integrated directly so that it stays
/// resolved after it drops below the precision of either transform. Only
/// `rel_tol` applies.
pub fn truncation_defect(
    f: &FunctionExpr,
    spec: &KernelSpec,
    n: usize,
    s: f64,
    q: &QuadratureConfig,
) -> Result<TransformResult> {
    check_s(s)?;
    let decay = probe(spec, s)?;
    let g = |t: f64| weighted(truncation_gap_eval(spec, n, s, t)?, f, t);
    let q = QuadratureConfig {
        abs_tol: f64::MIN_POSITIVE,
        ..*q
    };
    run(&g, f, s, decay, &q)
}

/// The transform at complex `s`, without a decay probe.
pub fn transform_complex(
    f: &FunctionExpr,
    spec: &KernelSpec,
    s: Complex64,
    q: &QuadratureConfig,
) -> Result<ComplexTransformResult> {
    q.validate()?;
    if !(s.norm() > 0.0) || !s.re.is_finite() || !s.im.is_finite() {
        return Err(Error::ArgumentDomain(format!("s must be finite and nonzero, got {s}")));
    }
    let g = |t: f64| -> Result<Complex64> {
        let k = kernel_eval_complex(spec, s, t)?;
        if k.norm() == 0.0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        Ok(k * f.eval(t)?)
    };
    let t0 = 1.0 / s.norm();
    let integral = match q.finite_interval {
        Some(l) => integrate_finite(&g, l, t0, q)?,
        None => integrate_half_line(&g, t0, q)?,
    };
    let mut flags = BTreeSet::new();
    if q.finite_interval.is_some() {
        flags.insert(TransformFlag::FiniteIntervalMode);
    }
    integral.record(&mut flags);
    Ok(ComplexTransformResult {
        value: integral.value,
        error_estimate: integral.error,
        cutoff_t: integral.cutoff,
        flags,
    })
}
