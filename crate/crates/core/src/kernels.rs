//! Floating-point evaluation of exponential generating functions
//! `E_a(x) = sum a_k x^k/k!` and of the transform kernels `1/E_a(st)`.
//!
//! Sums are accumulated as `mantissa * e^scale` so that `E_a(x)` may exceed
//! the f64 range while the kernel `1/E_a` stays representable. Kernels are
//! always evaluated from the denominator, never from the alternating
//! `C_k(a)` series.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::sequence::{SequenceRule, UmbralSequence};

pub const DEFAULT_EVAL_TOL: f64 = 1e-17;
pub const DEFAULT_MAX_TERMS: usize = 10_000;

/// Once `ln E(x)` exceeds this for a nonnegative series, `1/E(x)` is zero in f64.
const KERNEL_LN_CUTOFF: f64 = 760.0;

/// Which denominator the kernel inverts.
#[derive(Debug, Clone, PartialEq)]
pub enum KernelFamily {
    /// `1 / sum a_k x^k/k!`.
    ReciprocalEgf(UmbralSequence),
    /// `1 / e_r(x)`, `e_r(x) = sum x^k/(k!)^{r+1}`.
    Laguerre(u32),
    /// `1 / sum_{k<=n} x^k/(k!)^{r+1}`.
    TruncatedLaguerre { r: u32, n: usize },
    /// `1 / (1 + x + ... + x^n)`.
    TruncatedGeometric(usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct KernelSpec {
    pub family: KernelFamily,
    pub eval_tol: f64,
    pub max_terms: usize,
}

impl KernelSpec {
    pub fn new(family: KernelFamily) -> Self {
        KernelSpec {
            family,
            eval_tol: DEFAULT_EVAL_TOL,
            max_terms: DEFAULT_MAX_TERMS,
        }
    }

    pub fn reciprocal_egf(a: UmbralSequence) -> Self {
        Self::new(KernelFamily::ReciprocalEgf(a))
    }

    pub fn laguerre(r: u32) -> Self {
        Self::new(KernelFamily::Laguerre(r))
    }

    pub fn truncated_laguerre(r: u32, n: usize) -> Self {
        Self::new(KernelFamily::TruncatedLaguerre { r, n })
    }

    pub fn truncated_geometric(n: usize) -> Self {
        Self::new(KernelFamily::TruncatedGeometric(n))
    }

    pub fn label(&self) -> String {
        match &self.family {
            KernelFamily::ReciprocalEgf(a) => format!("reciprocal-egf({a})"),
            KernelFamily::Laguerre(r) => format!("laguerre({r})"),
            KernelFamily::TruncatedLaguerre { r, n } => format!("truncated-laguerre({r},{n})"),
            KernelFamily::TruncatedGeometric(n) => format!("truncated-geometric({n})"),
        }
    }

    /// The umbral sequence whose (possibly truncated) EGF is the denominator.
    pub fn sequence(&self) -> UmbralSequence {
        match &self.family {
            KernelFamily::ReciprocalEgf(a) => a.clone(),
            KernelFamily::Laguerre(r) | KernelFamily::TruncatedLaguerre { r, .. } => {
                UmbralSequence::laguerre(*r)
            }
            KernelFamily::TruncatedGeometric(_) => UmbralSequence::factorial(),
        }
    }

    /// Degree of the denominator polynomial, if finite.
    pub fn truncation(&self) -> Option<usize> {
        match &self.family {
            KernelFamily::TruncatedLaguerre { n, .. } | KernelFamily::TruncatedGeometric(n) => {
                Some(*n)
            }
            KernelFamily::ReciprocalEgf(a) => a.degree(),
            KernelFamily::Laguerre(_) => None,
        }
    }

    fn coefficients(&self) -> Coefficients {
        Coefficients {
            seq: self.sequence(),
            degree: self.truncation(),
            shift: 0,
            skip: 0,
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.eval_tol > 0.0) {
            return Err(Error::ArgumentDomain(format!(
                "eval_tol must be positive, got {}",
                self.eval_tol
            )));
        }
        if let KernelFamily::TruncatedLaguerre { n: 0, .. } | KernelFamily::TruncatedGeometric(0) =
            self.family
        {
            return Err(Error::ArgumentDomain("truncation order must be >= 1".into()));
        }
        Ok(())
    }
}

/// Coefficients of `d^shift/dx^shift E(x)` as an EGF-type series.
#[derive(Debug, Clone)]
struct Coefficients {
    seq: UmbralSequence,
    degree: Option<usize>,
    shift: usize,
    /// Terms below this index are left out of the sum.
    skip: usize,
}

impl Coefficients {
    /// `(ln |c_k|, sign)` for the plain coefficient `c_k` of `x^k`.
    ///
    /// The `shift`-th derivative has plain coefficient `a_{k+shift}/k!`.
    fn ln_coeff(&self, k: usize, ln_fact: f64) -> (f64, f64) {
        let j = k + self.shift;
        if self.degree.is_some_and(|d| j > d) {
            return (f64::NEG_INFINITY, 0.0);
        }
        // a_j/j! * j!/k!
        let ln_fall: f64 = (k + 1..=j).map(|i| (i as f64).ln()).sum();
        let (ln, sign) = self.seq.ln_egf_coeff(j, ln_fact + ln_fall);
        (ln + ln_fall, sign)
    }

    fn has_steps(&self) -> bool {
        self.seq.egf_step(1).is_some()
    }

    /// `c_k / c_{k-1} = mult/div`.
    fn step(&self, k: usize) -> Option<(f64, f64)> {
        let j = k + self.shift;
        let (mult, div) = self.seq.egf_step(j)?;
        if self.shift == 0 {
            return Some((mult, div));
        }
        Some((mult * j as f64, div * k as f64))
    }

    fn last_index(&self) -> Option<usize> {
        self.degree.map(|d| d.saturating_sub(self.shift))
    }

    fn derivative(&self) -> Self {
        Coefficients {
            shift: self.shift + 1,
            ..self.clone()
        }
    }
}

/// `mantissa * e^ln_scale`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct ScaledSum {
    pub mantissa: f64,
    pub ln_scale: f64,
    pub terms: usize,
    /// Stopped early because the nonnegative sum passed [`KERNEL_LN_CUTOFF`].
    pub saturated: bool,
}

impl ScaledSum {
    fn value(&self) -> f64 {
        self.mantissa * self.ln_scale.exp()
    }

    fn ln_value(&self) -> f64 {
        self.mantissa.ln() + self.ln_scale
    }
}

/// Scalar the series can be summed over.
trait SeriesScalar:
    Copy
    + std::ops::Add<Output = Self>
    + std::ops::Mul<f64, Output = Self>
    + std::ops::Div<f64, Output = Self>
    + std::ops::Mul<Output = Self>
{
    fn zero() -> Self;
    fn from_f64(v: f64) -> Self;
    fn modulus(self) -> f64;
    fn is_finite(self) -> bool;
    /// `magnitude e^{i k arg(x)} * sign` for the log path.
    fn from_log(ln_mag: f64, sign: f64, x: Self, k: usize) -> Self;
    /// Neumaier-compensated `sum + term`; returns the new sum and compensation.
    fn add_compensated(sum: Self, comp: Self, term: Self) -> (Self, Self);
    fn ln_modulus(self) -> f64 {
        self.modulus().ln()
    }
}

fn neumaier(sum: f64, comp: f64, term: f64) -> (f64, f64) {
    let t = sum + term;
    let c = if sum.abs() >= term.abs() {
        (sum - t) + term
    } else {
        (term - t) + sum
    };
    (t, comp + c)
}

impl SeriesScalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn from_f64(v: f64) -> Self {
        v
    }
    fn modulus(self) -> f64 {
        self.abs()
    }
    fn is_finite(self) -> bool {
        f64::is_finite(self)
    }
    fn from_log(ln_mag: f64, sign: f64, x: Self, k: usize) -> Self {
        let sign = if k % 2 == 1 { sign * x.signum() } else { sign };
        sign * ln_mag.exp()
    }
    fn add_compensated(sum: Self, comp: Self, term: Self) -> (Self, Self) {
        neumaier(sum, comp, term)
    }
}

impl SeriesScalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn from_f64(v: f64) -> Self {
        Complex64::new(v, 0.0)
    }
    fn modulus(self) -> f64 {
        self.norm()
    }
    fn is_finite(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
    fn from_log(ln_mag: f64, sign: f64, x: Self, k: usize) -> Self {
        Complex64::from_polar(sign * ln_mag.exp(), k as f64 * x.arg())
    }
    fn add_compensated(sum: Self, comp: Self, term: Self) -> (Self, Self) {
        let (re, cre) = neumaier(sum.re, comp.re, term.re);
        let (im, cim) = neumaier(sum.im, comp.im, term.im);
        (Complex64::new(re, im), Complex64::new(cre, cim))
    }
}

// rescaling by exact powers of two keeps the mantissa free of rounding
const RESCALE_BITS: i32 = 830;
const RESCALE_AT: f64 = 1e250;

struct RawSum<T> {
    sum: T,
    scale_steps: i32,
    terms: usize,
    saturated: bool,
    /// Largest term modulus, on the final scale.
    peak: f64,
}

impl<T> RawSum<T> {
    fn ln_scale(&self) -> f64 {
        f64::from(self.scale_steps) * f64::from(RESCALE_BITS) * std::f64::consts::LN_2
    }
}

fn sum_generic<T: SeriesScalar>(
    c: &Coefficients,
    x: T,
    tol: f64,
    max_terms: usize,
    saturate: bool,
) -> Result<RawSum<T>> {
    let x_abs = x.modulus();
    let ln_x = x_abs.ln();
    let limit = c.last_index().map_or(max_terms, |d| d + 1);
    let down = 2f64.powi(-RESCALE_BITS);
    let mut sum = T::zero();
    let mut comp = T::zero();
    let mut term = T::zero();
    let mut scale_steps = 0i32;
    let mut ln_fact = 0.0f64;
    let mut small_streak = 0;
    let mut peak = 0.0f64;
    let mut use_steps = c.has_steps();
    for k in 0..limit {
        if k > 0 {
            ln_fact += (k as f64).ln();
        }
        term = if k == 0 {
            let (lc, sc) = c.ln_coeff(0, 0.0);
            if sc == 0.0 {
                use_steps = false;
            }
            T::from_f64(sc * lc.exp())
        } else if x_abs == 0.0 {
            T::zero()
        } else if use_steps {
            let (mult, div) = c.step(k).expect("rule sequences have steps");
            term * x * mult / div
        } else {
            let (lc, sc) = c.ln_coeff(k, ln_fact);
            if sc == 0.0 {
                T::zero()
            } else {
                let ln_scale = f64::from(scale_steps) * f64::from(RESCALE_BITS) * std::f64::consts::LN_2;
                T::from_log(lc + k as f64 * ln_x - ln_scale, sc, x, k)
            }
        };
        if k < c.skip {
            if term.modulus() > RESCALE_AT {
                term = term * down;
                scale_steps += 1;
            }
            continue;
        }
        (sum, comp) = T::add_compensated(sum, comp, term);
        peak = peak.max(term.modulus());
        if sum.modulus() == 0.0 && term.modulus() == 0.0 && c.degree.is_none() {
            return Ok(RawSum { sum, scale_steps, terms: k + 1, saturated: false, peak });
        }
        if sum.modulus() > RESCALE_AT || term.modulus() > RESCALE_AT {
            sum = sum * down;
            comp = comp * down;
            term = term * down;
            peak *= down;
            scale_steps += 1;
        }
        if !sum.is_finite() || !term.is_finite() {
            return Err(Error::Divergence {
                x: x_abs,
                terms: k + 1,
                reason: "partial sum left the f64 range".into(),
            });
        }
        if c.degree.is_some() {
            continue;
        }
        if x_abs == 0.0 {
            break;
        }
        if term.modulus() < tol * sum.modulus() {
            small_streak += 1;
            if small_streak >= 2 {
                return Ok(RawSum { sum: sum + comp, scale_steps, terms: k + 1, saturated: false, peak });
            }
        } else {
            small_streak = 0;
        }
        if saturate {
            let ln_sum = sum.ln_modulus() + f64::from(scale_steps) * f64::from(RESCALE_BITS) * std::f64::consts::LN_2;
            if ln_sum > KERNEL_LN_CUTOFF {
                return Ok(RawSum { sum, scale_steps, terms: k + 1, saturated: true, peak });
            }
        }
    }
    if c.degree.is_some() || x_abs == 0.0 {
        return Ok(RawSum { sum: sum + comp, scale_steps, terms: limit, saturated: false, peak });
    }
    Err(Error::Divergence {
        x: x_abs,
        terms: max_terms,
        reason: "stopping rule not met within max_terms".into(),
    })
}

fn sum_series(
    c: &Coefficients,
    x: f64,
    tol: f64,
    max_terms: usize,
    saturate: bool,
) -> Result<ScaledSum> {
    let raw = sum_generic(c, x, tol, max_terms, saturate)?;
    Ok(ScaledSum {
        mantissa: raw.sum,
        ln_scale: raw.ln_scale(),
        terms: raw.terms,
        saturated: raw.saturated,
    })
}

/// `E_a(x) = sum a_k x^k/k!`, summed until two consecutive terms fall below
/// `tol` relative to the partial sum.
pub fn egf_eval(a: &UmbralSequence, x: f64, tol: f64) -> Result<f64> {
    egf_eval_with_limit(a, x, tol, DEFAULT_MAX_TERMS)
}

pub fn egf_eval_with_limit(a: &UmbralSequence, x: f64, tol: f64, max_terms: usize) -> Result<f64> {
    if !(tol > 0.0) || !x.is_finite() {
        return Err(Error::ArgumentDomain(format!("need tol > 0 and finite x, got tol = {tol}, x = {x}")));
    }
    let c = Coefficients {
        seq: a.clone(),
        degree: a.degree(),
        shift: 0,
        skip: 0,
    };
    let sum = sum_series(&c, x, tol, max_terms, false)?;
    let value = sum.value();
    if !value.is_finite() {
        return Err(Error::Divergence {
            x,
            terms: sum.terms,
            reason: format!("E(x) = e^{:.1} overflows f64", sum.ln_value()),
        });
    }
    Ok(value)
}

/// Laguerre-type exponential `e_r(x) = sum x^k/(k!)^{r+1}`.
pub fn laguerre_exp(r: u32, x: f64, tol: f64) -> Result<f64> {
    egf_eval(&UmbralSequence::laguerre(r), x, tol)
}

fn check_point(s: f64, t: f64) -> Result<()> {
    if !(s > 0.0) || !(t >= 0.0) || !s.is_finite() || !t.is_finite() {
        return Err(Error::ArgumentDomain(format!(
            "kernel needs s > 0 and t >= 0, got s = {s}, t = {t}"
        )));
    }
    Ok(())
}

fn denominator(spec: &KernelSpec, x: f64, saturate: bool) -> Result<ScaledSum> {
    spec.validate()?;
    let sum = sum_series(&spec.coefficients(), x, spec.eval_tol, spec.max_terms, saturate)?;
    if !(sum.mantissa > 0.0) {
        return Err(Error::NonPositiveDenominator {
            x,
            value: sum.mantissa * sum.ln_scale.exp(),
        });
    }
    Ok(sum)
}

/// The kernel `1/E(st)` of the given family.
pub fn kernel_eval(spec: &KernelSpec, s: f64, t: f64) -> Result<f64> {
    check_point(s, t)?;
    let nonneg = spec.sequence().is_nonnegative();
    let den = denominator(spec, s * t, nonneg)?;
    if den.saturated {
        return Ok(0.0);
    }
    Ok((-den.ln_scale).exp() / den.mantissa)
}

/// `ln(1/E(st))`, finite even where the kernel underflows.
pub fn kernel_ln(spec: &KernelSpec, s: f64, t: f64) -> Result<f64> {
    check_point(s, t)?;
    Ok(-denominator(spec, s * t, false)?.ln_value())
}

/// `d/dx [1/E(x)] = -E'(x)/E(x)^2` at `x = st`; equals `sum C_{k+1}(a) x^k/k!`.
pub fn kernel_derivative_eval(spec: &KernelSpec, s: f64, t: f64) -> Result<f64> {
    check_point(s, t)?;
    let x = s * t;
    let nonneg = spec.sequence().is_nonnegative();
    let den = denominator(spec, x, nonneg)?;
    if den.saturated {
        return Ok(0.0);
    }
    let c = spec.coefficients().derivative();
    let num = sum_series(&c, x, spec.eval_tol, spec.max_terms, false)?;
    // -(E'/E) (1/E), each factor kept in range
    let ratio = num.mantissa / den.mantissa * (num.ln_scale - den.ln_scale).exp();
    Ok(-ratio * (-den.ln_scale).exp() / den.mantissa)
}

/// `1/T_n(st) - 1/E(st)`, where `T_n` is the degree-`n` truncation of the
/// denominator of `spec`, computed as `R_n/(T_n E)` with `R_n = E - T_n`.
pub fn truncation_gap_eval(spec: &KernelSpec, n: usize, s: f64, t: f64) -> Result<f64> {
    check_point(s, t)?;
    if spec.truncation().is_some() {
        return Err(Error::ArgumentDomain(format!("{} is already truncated", spec.label())));
    }
    let x = s * t;
    let nonneg = spec.sequence().is_nonnegative();
    let full = denominator(spec, x, nonneg)?;
    if full.saturated {
        return Ok(0.0);
    }
    let base = spec.coefficients();
    let head = sum_series(
        &Coefficients { degree: Some(n), ..base.clone() },
        x,
        spec.eval_tol,
        spec.max_terms,
        false,
    )?;
    if !(head.mantissa > 0.0) {
        return Err(Error::NonPositiveDenominator { x, value: head.value() });
    }
    let rest = sum_series(&Coefficients { skip: n + 1, ..base }, x, spec.eval_tol, spec.max_terms, false)?;
    if rest.mantissa == 0.0 {
        return Ok(0.0);
    }
    let ln_scale = rest.ln_scale - head.ln_scale - full.ln_scale;
    Ok(rest.mantissa / (head.mantissa * full.mantissa) * ln_scale.exp())
}

/// Digits the complex series may lose to cancellation before it is rejected.
const MAX_CANCELLATION: f64 = 1e8;

/// `E(z)` for complex `z`, summed with the same stopping rule applied to
/// moduli. The untruncated `ones` series is evaluated as `exp(z)`.
pub fn egf_eval_complex(spec: &KernelSpec, z: Complex64) -> Result<Complex64> {
    spec.validate()?;
    let c = spec.coefficients();
    if c.degree.is_none() && matches!(c.seq.rule(), SequenceRule::Ones | SequenceRule::Laguerre(0)) {
        return Ok(z.exp());
    }
    let raw = sum_generic(&c, z, spec.eval_tol, spec.max_terms, false)?;
    if raw.peak > MAX_CANCELLATION * raw.sum.norm() {
        return Err(Error::Divergence {
            x: z.norm(),
            terms: raw.terms,
            reason: format!(
                "cancellation: largest term exceeds |E(z)| by a factor {:.1e}",
                raw.peak / raw.sum.norm()
            ),
        });
    }
    let value = raw.sum * raw.ln_scale().exp();
    if !SeriesScalar::is_finite(value) {
        return Err(Error::Divergence {
            x: z.norm(),
            terms: raw.terms,
            reason: "E(z) overflows f64".into(),
        });
    }
    Ok(value)
}

/// `1/E(st)` for complex `s`.
pub fn kernel_eval_complex(spec: &KernelSpec, s: Complex64, t: f64) -> Result<Complex64> {
    let den = egf_eval_complex(spec, s * t)?;
    if den.norm() == 0.0 {
        return Err(Error::Eval(format!("kernel denominator vanishes at s = {s}, t = {t}")));
    }
    Ok(den.inv())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DecayVerdict {
    ExponentialDecay,
    SubExponential,
    NonDecaying,
    DivergentDenominator,
}

impl DecayVerdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            DecayVerdict::ExponentialDecay => "exponential-decay",
            DecayVerdict::SubExponential => "sub-exponential",
            DecayVerdict::NonDecaying => "non-decaying",
            DecayVerdict::DivergentDenominator => "divergent-denominator",
        }
    }

    /// The kernel cannot carry an integral over `[0, inf)`.
    pub fn violates_hp(&self) -> bool {
        matches!(self, DecayVerdict::NonDecaying | DecayVerdict::DivergentDenominator)
    }
}

/// Thresholds deciding the [`DecayVerdict`] of a tail fit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecayThresholds {
    /// Minimum `-rate/s` for exponential decay.
    pub min_rate: f64,
    /// Late-tail slope over early-tail slope must be at least this.
    pub min_rate_ratio: f64,
    /// RMS residual of the log-linear fit, relative to the tail's span of `ln K`.
    pub max_relative_residual: f64,
}

impl Default for DecayThresholds {
    fn default() -> Self {
        DecayThresholds {
            min_rate: 1e-2,
            min_rate_ratio: 0.8,
            max_relative_residual: 0.05,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecayReport {
    pub kernel: String,
    pub s: f64,
    pub grid: Vec<f64>,
    pub kernel_values: Vec<f64>,
    /// Slope of `ln K` against `t` over the tail.
    pub fitted_rate: f64,
    pub relative_residual: f64,
    /// Late-tail slope over early-tail slope; about 1 for a pure exponential.
    pub rate_ratio: f64,
    pub verdict: DecayVerdict,
}

/// Samples the kernel on a geometric grid in `(0, t_max]` and classifies its tail.
pub fn hp_decay_probe(spec: &KernelSpec, s: f64, t_max: f64, n_points: usize) -> Result<DecayReport> {
    hp_decay_probe_with(spec, s, t_max, n_points, DecayThresholds::default())
}

pub fn hp_decay_probe_with(
    spec: &KernelSpec,
    s: f64,
    t_max: f64,
    n_points: usize,
    th: DecayThresholds,
) -> Result<DecayReport> {
    if !(s > 0.0) || !(t_max > 0.0) || n_points < 8 {
        return Err(Error::ArgumentDomain(format!(
            "probe needs s > 0, t_max > 0, n_points >= 8; got s = {s}, t_max = {t_max}, n_points = {n_points}"
        )));
    }
    let grid: Vec<f64> = (0..n_points)
        .map(|i| t_max * 10f64.powf(-3.0 * (n_points - 1 - i) as f64 / (n_points - 1) as f64))
        .collect();
    let mut report = DecayReport {
        kernel: spec.label(),
        s,
        grid: Vec::with_capacity(n_points),
        kernel_values: Vec::with_capacity(n_points),
        fitted_rate: f64::NAN,
        relative_residual: f64::NAN,
        rate_ratio: f64::NAN,
        verdict: DecayVerdict::DivergentDenominator,
    };
    let mut logs = Vec::with_capacity(n_points);
    for &t in &grid {
        match kernel_ln(spec, s, t) {
            Ok(ln) => {
                report.grid.push(t);
                report.kernel_values.push(ln.exp());
                logs.push(ln);
            }
            Err(Error::Divergence { .. }) | Err(Error::NonPositiveDenominator { .. }) => {
                return Ok(report);
            }
            Err(e) => return Err(e),
        }
    }

    let tail_start = grid
        .iter()
        .position(|&t| t >= t_max / 8.0)
        .unwrap_or(0)
        .min(n_points - 4);
    let (tt, ll) = (&grid[tail_start..], &logs[tail_start..]);
    let (slope, residual) = linear_fit(tt, ll);
    let span = (ll[0] - ll[ll.len() - 1]).abs();
    let mid = tt.len() / 2;
    let (early, _) = linear_fit(&tt[..=mid], &ll[..=mid]);
    let (late, _) = linear_fit(&tt[mid..], &ll[mid..]);

    report.fitted_rate = slope;
    report.relative_residual = if span > 0.0 { residual / span } else { 0.0 };
    report.rate_ratio = late / early;
    report.verdict = if !(ll[ll.len() - 1] < ll[0] - 1e-12 * ll[0].abs().max(1.0)) {
        DecayVerdict::NonDecaying
    } else if -slope / s >= th.min_rate
        && report.rate_ratio >= th.min_rate_ratio
        && report.relative_residual <= th.max_relative_residual
    {
        DecayVerdict::ExponentialDecay
    } else {
        DecayVerdict::SubExponential
    };
    Ok(report)
}

/// Least-squares slope and RMS residual.
fn linear_fit(x: &[f64], y: &[f64]) -> (f64, f64) {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxx: f64 = x.iter().map(|v| (v - mx).powi(2)).sum();
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let slope = sxy / sxx;
    let rss: f64 = x
        .iter()
        .zip(y)
        .map(|(a, b)| (b - my - slope * (a - mx)).powi(2))
        .sum();
    (slope, (rss / n).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    const E: f64 = std::f64::consts::E;

    #[test]
    fn truncation_gap() {
        let spec = KernelSpec::laguerre(0);
        let g = truncation_gap_eval(&spec, 2, 1.0, 1.0).unwrap();
        assert!((g - (0.4 - (-1f64).exp())).abs() < 1e-15);
        // leading term x^31/31! e^{-2x} for small x
        let x = 1e-2f64;
        let g = truncation_gap_eval(&spec, 30, 1.0, x).unwrap();
        let lead = (31.0 * x.ln() - (1..=31).map(|i| (i as f64).ln()).sum::<f64>()).exp();
        assert!((g / lead - 1.0).abs() < 0.03, "{g} vs {lead}");
        assert_eq!(truncation_gap_eval(&spec, 5, 1.0, 2000.0).unwrap(), 0.0);
        let direct = 1.0 / egf_eval(&UmbralSequence::laguerre(1), 3.0, 1e-17).unwrap();
        let head: f64 = (0..=3).map(|k| 3f64.powi(k) / [1.0, 1.0, 4.0, 36.0][k as usize]).sum();
        let g = truncation_gap_eval(&KernelSpec::laguerre(1), 3, 3.0, 1.0).unwrap();
        assert!((g - (1.0 / head - direct)).abs() < 1e-15);
        assert!(truncation_gap_eval(&KernelSpec::truncated_geometric(3), 2, 1.0, 1.0).is_err());
    }

    #[test]
    fn exponential_series() {
        let v = egf_eval(&UmbralSequence::ones(), 1.0, DEFAULT_EVAL_TOL).unwrap();
        assert!((v - E).abs() < 4e-16);
        for seq in [UmbralSequence::ones(), UmbralSequence::laguerre(3), UmbralSequence::factorial()] {
            assert_eq!(egf_eval(&seq, 0.0, 1e-12).unwrap(), 1.0);
        }
    }

    #[test]
    fn laguerre_values() {
        // partial sums of sum 1/(k!)^2 and sum 4^k/(k!)^2 at 40 digits (exact rationals)
        let e1_1 = laguerre_exp(1, 1.0, DEFAULT_EVAL_TOL).unwrap();
        assert!((e1_1 - 2.279_585_302_336_067_3).abs() < 1e-15);
        let e1_4 = laguerre_exp(1, 4.0, DEFAULT_EVAL_TOL).unwrap();
        assert!((e1_4 - 11.301_921_952_136_33).abs() < 1e-13);
        assert!((laguerre_exp(0, 1.0, DEFAULT_EVAL_TOL).unwrap() - E).abs() < 4e-16);
    }

    #[test]
    fn divergence_for_geometric_series_outside_disc() {
        let err = egf_eval(&UmbralSequence::factorial(), 2.0, 1e-15).unwrap_err();
        assert!(matches!(err, Error::Divergence { .. }));
        let err = egf_eval_with_limit(&UmbralSequence::factorial(), 0.999, 1e-15, 100).unwrap_err();
        assert!(matches!(err, Error::Divergence { .. }));
        let v = egf_eval(&UmbralSequence::factorial(), 0.5, 1e-17).unwrap();
        assert!((v - 2.0).abs() < 1e-15);
    }

    #[test]
    fn overflow_is_reported() {
        let err = egf_eval(&UmbralSequence::ones(), 800.0, 1e-17).unwrap_err();
        assert!(matches!(err, Error::Divergence { .. }));
        // the kernel itself is fine there
        assert_eq!(kernel_eval(&KernelSpec::laguerre(0), 1.0, 800.0).unwrap(), 0.0);
        let ln = kernel_ln(&KernelSpec::laguerre(0), 1.0, 800.0).unwrap();
        assert!((ln + 800.0).abs() < 1e-9);
    }

    #[test]
    fn kernel_examples() {
        let k = kernel_eval(&KernelSpec::laguerre(0), 1.0, 1.0).unwrap();
        assert!((k - (-1f64).exp()).abs() < 1e-16);
        let k = kernel_eval(&KernelSpec::laguerre(12), 1.0, 1.0).unwrap();
        assert!((k - 0.5).abs() < 2e-3);
        let k = kernel_eval(&KernelSpec::truncated_geometric(1), 2.0, 3.0).unwrap();
        assert!((k - 1.0 / 7.0).abs() < 1e-16);
    }

    #[test]
    fn kernel_rejects_bad_points_and_signs() {
        assert!(kernel_eval(&KernelSpec::laguerre(0), 0.0, 1.0).is_err());
        assert!(kernel_eval(&KernelSpec::laguerre(0), 1.0, -1.0).is_err());
        // 1 - 2x + ... changes sign
        let a = UmbralSequence::from_tail(&[ratio(-2, 1)]);
        let err = kernel_eval(&KernelSpec::reciprocal_egf(a), 1.0, 1.0).unwrap_err();
        assert!(matches!(err, Error::NonPositiveDenominator { .. }));
        assert!(kernel_eval(&KernelSpec::truncated_geometric(0), 1.0, 1.0).is_err());
    }

    #[test]
    fn truncated_families_are_polynomials() {
        let spec = KernelSpec::truncated_laguerre(0, 2);
        let k = kernel_eval(&spec, 1.0, 2.0).unwrap();
        assert!((k - 1.0 / 5.0).abs() < 1e-16);
        let a = UmbralSequence::from_tail(&[ratio(1, 1), ratio(2, 1)]);
        let k = kernel_eval(&KernelSpec::reciprocal_egf(a), 1.0, 2.0).unwrap();
        assert!((k - 1.0 / 7.0).abs() < 1e-16);
    }

    #[test]
    fn derivative_kernel_for_ones_is_minus_exp() {
        for x in [0.0, 0.3, 2.0, 10.0] {
            let d = kernel_derivative_eval(&KernelSpec::laguerre(0), 1.0, x).unwrap();
            assert!((d + (-x).exp()).abs() < 1e-15 * (1.0 + (-x).exp()), "x={x}");
        }
        // d/dx 1/(1+x+x^2) = -(1+2x)/(1+x+x^2)^2
        let d = kernel_derivative_eval(&KernelSpec::truncated_geometric(2), 1.0, 1.5).unwrap();
        let p: f64 = 1.0 + 1.5 + 2.25;
        assert!((d + 4.0 / (p * p)).abs() < 1e-15);
    }

    #[test]
    fn complex_exponential() {
        let z = Complex64::new(0.3, 2.0);
        let v = egf_eval_complex(&KernelSpec::laguerre(0), z).unwrap();
        assert!((v - z.exp()).norm() < 1e-14);
        let k = kernel_eval_complex(&KernelSpec::laguerre(0), Complex64::new(1.0, 1.0), 2.0).unwrap();
        assert!((k - Complex64::new(-2.0, -2.0).exp()).norm() < 1e-15);
    }

    #[test]
    fn probe_verdicts() {
        let r = hp_decay_probe(&KernelSpec::laguerre(0), 1.0, 50.0, 48).unwrap();
        assert_eq!(r.verdict, DecayVerdict::ExponentialDecay);
        assert!((r.fitted_rate + 1.0).abs() < 1e-6);

        let r = hp_decay_probe(&KernelSpec::truncated_geometric(2), 1.0, 50.0, 48).unwrap();
        assert_eq!(r.verdict, DecayVerdict::SubExponential);

        let r = hp_decay_probe(&KernelSpec::reciprocal_egf(UmbralSequence::factorial()), 1.0, 50.0, 48)
            .unwrap();
        assert_eq!(r.verdict, DecayVerdict::DivergentDenominator);

        let r = hp_decay_probe(&KernelSpec::reciprocal_egf(UmbralSequence::inv_succ()), 1.0, 50.0, 48)
            .unwrap();
        assert_eq!(r.verdict, DecayVerdict::ExponentialDecay);

        assert!(hp_decay_probe(&KernelSpec::laguerre(0), 1.0, 50.0, 7).is_err());
    }

    #[test]
    fn probe_flags_non_decaying_kernel() {
        // denominator is the constant 1
        let a = UmbralSequence::explicit(vec![ratio(1, 1), ratio(0, 1)]).unwrap();
        let r = hp_decay_probe(&KernelSpec::reciprocal_egf(a), 1.0, 50.0, 16).unwrap();
        assert_eq!(r.verdict, DecayVerdict::NonDecaying);
        assert!(r.verdict.violates_hp());
    }
}
