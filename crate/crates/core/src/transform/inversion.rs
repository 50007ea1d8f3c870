//! Experimental Bromwich-type inversion with the kernel `e_r(st)` in place of
//! `e^{st}`. For `r = 0` this is the classical inverse Laplace transform.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::kernels::{egf_eval_complex, KernelSpec};
use crate::quadrature::{integrate, wynn_epsilon, QuadOptions};

use super::QuadratureConfig;

const MAX_PANELS: usize = 4000;
const MIN_PANELS: usize = 12;
const WYNN_WINDOW: usize = 40;
/// Panels whose magnitude grows this much over the first ones, or that grow
/// steadily over the last eight, signal divergence.
const GROWTH_LIMIT: f64 = 1e3;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InversionReport {
    pub r: u32,
    pub t: f64,
    pub gamma: f64,
    pub value: f64,
    pub error_estimate: f64,
    /// Upper limit of the contour half-line actually integrated.
    pub tau: f64,
    pub panels: usize,
    pub converged: bool,
    /// Set for `r >= 1`, where the formula is unproven.
    pub experimental: bool,
    pub panel_magnitudes: Vec<f64>,
}

/// `(1/π) ∫_0^∞ Re[e_r((γ + iu) t) F(γ + iu)] du`, which equals the contour
/// integral `(1/2πi) ∫ e_r(st) F(s) ds` along `Re s = γ` when `F` is real on
/// the real axis.
///
/// The half-line is cut into panels of width `π/t`; their partial sums are
/// accelerated with Wynn's epsilon algorithm.
pub fn bromwich_invert<F>(image: F, r: u32, t: f64, gamma: f64, q: &QuadratureConfig) -> Result<InversionReport>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    q.validate()?;
    if !(t > 0.0 && t.is_finite() && gamma.is_finite()) {
        return Err(Error::ArgumentDomain(format!("need t > 0 and finite gamma, got t = {t}, gamma = {gamma}")));
    }
    let spec = KernelSpec::laguerre(r);
    let integrand = |u: f64| -> Result<f64> {
        let s = Complex64::new(gamma, u);
        let kernel = if r == 0 {
            (s * t).exp()
        } else {
            egf_eval_complex(&spec, s * t)?
        };
        let v = (kernel * image(s)?).re / std::f64::consts::PI;
        if !v.is_finite() {
            return Err(Error::ContourDivergence(format!("integrand is {v} at u = {u}")));
        }
        Ok(v)
    };
    let width = std::f64::consts::PI / t;
    let opts = QuadOptions {
        abs_tol: q.abs_tol,
        rel_tol: q.rel_tol,
        max_subdivisions: q.max_subdivisions,
    };
    let target = q.abs_tol.max(1e-10);
    let mut partial = Vec::new();
    let mut magnitudes = Vec::new();
    let mut total = 0.0;
    let mut estimate = 0.0;
    let mut last_change = f64::INFINITY;
    let mut settled = 0;
    for k in 0..MAX_PANELS {
        let (a, b) = (k as f64 * width, (k + 1) as f64 * width);
        let panel = integrate(integrand, a, b, &[], opts)
            .map_err(|e| match e {
                Error::ContourDivergence(_) => e,
                other => Error::ContourDivergence(format!("panel [{a:.3}, {b:.3}]: {other}")),
            })?;
        total += panel.value;
        partial.push(total);
        magnitudes.push(panel.value.abs());
        if k + 1 >= MIN_PANELS {
            let early = magnitudes[..4].iter().cloned().fold(0.0, f64::max);
            let recent = &magnitudes[magnitudes.len() - 4..];
            let floor = recent.iter().cloned().fold(f64::INFINITY, f64::min);
            let rising = magnitudes[magnitudes.len() - 8..].windows(2).all(|w| w[1] > w[0]);
            if rising || (early > 0.0 && floor > GROWTH_LIMIT * early) {
                return Err(Error::ContourDivergence(format!(
                    "panel magnitudes grew from {early:e} to {floor:e} by u = {b:.3}"
                )));
            }
            let window = &partial[partial.len().saturating_sub(WYNN_WINDOW)..];
            let (est, _) = wynn_epsilon(window);
            last_change = (est - estimate).abs();
            estimate = est;
            if last_change <= target.max(q.rel_tol * est.abs()) {
                settled += 1;
                if settled >= 3 {
                    return Ok(report(r, t, gamma, estimate, last_change, b, k + 1, true, magnitudes));
                }
            } else {
                settled = 0;
            }
        }
    }
    let tau = MAX_PANELS as f64 * width;
    Ok(report(r, t, gamma, estimate, last_change, tau, MAX_PANELS, false, magnitudes))
}

#[allow(clippy::too_many_arguments)]
fn report(
    r: u32,
    t: f64,
    gamma: f64,
    value: f64,
    error_estimate: f64,
    tau: f64,
    panels: usize,
    converged: bool,
    panel_magnitudes: Vec<f64>,
) -> InversionReport {
    InversionReport {
        r,
        t,
        gamma,
        value,
        error_estimate,
        tau,
        panels,
        converged,
        experimental: r >= 1,
        panel_magnitudes,
    }
}
