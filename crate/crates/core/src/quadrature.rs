//! Globally adaptive 21-point Gauss-Kronrod quadrature and Wynn's epsilon
//! algorithm for accelerating partial sums.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Values the integrator can accumulate.
pub trait QuadValue: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> {
    fn zero() -> Self;
    fn magnitude(self) -> f64;
}

impl QuadValue for f64 {
    fn zero() -> Self {
        0.0
    }
    fn magnitude(self) -> f64 {
        self.abs()
    }
}

impl QuadValue for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn magnitude(self) -> f64 {
        self.norm()
    }
}

// Kronrod abscissae on [0, 1]; odd indices are the 10-point Gauss nodes.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

#[derive(Debug, Clone, Copy)]
struct Panel<T> {
    a: f64,
    b: f64,
    value: T,
    error: f64,
}

impl<T> PartialEq for Panel<T> {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}

impl<T> Eq for Panel<T> {}

impl<T> PartialOrd for Panel<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<T> Ord for Panel<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gauss_kronrod<T, F>(f: &mut F, a: f64, b: f64) -> Result<Panel<T>>
where
    T: QuadValue,
    F: FnMut(f64) -> Result<T>,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center)?;
    let mut kronrod = fc * WGK[10];
    let mut gauss = T::zero();
    let mut res_abs = fc.magnitude() * WGK[10];
    let mut f1 = [T::zero(); 10];
    let mut f2 = [T::zero(); 10];
    for j in 0..10 {
        let dx = half * XGK[j];
        let (v1, v2) = (f(center - dx)?, f(center + dx)?);
        f1[j] = v1;
        f2[j] = v2;
        let pair = v1 + v2;
        kronrod = kronrod + pair * WGK[j];
        res_abs += WGK[j] * (v1.magnitude() + v2.magnitude());
        if j % 2 == 1 {
            gauss = gauss + pair * WG[j / 2];
        }
    }
    let mean = kronrod * 0.5;
    let mut res_asc = WGK[10] * (fc - mean).magnitude();
    for j in 0..10 {
        res_asc += WGK[j] * ((f1[j] - mean).magnitude() + (f2[j] - mean).magnitude());
    }
    let scale = half.abs();
    let (res_abs, res_asc) = (res_abs * scale, res_asc * scale);
    let mut error = ((kronrod - gauss) * half).magnitude();
    if res_asc != 0.0 && error != 0.0 {
        error = res_asc * (200.0 * error / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * res_abs);
    }
    Ok(Panel {
        a,
        b,
        value: kronrod * half,
        error,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadOutcome<T> {
    pub value: T,
    pub error: f64,
    pub subdivisions: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
}

/// Integrates `f` over `[a, b]`, starting from the panels split at `breaks`.
///
/// The panel with the largest error estimate is bisected until the total
/// error estimate meets `max(abs_tol, rel_tol |I|)`.
pub fn integrate<T, F>(mut f: F, a: f64, b: f64, breaks: &[f64], opts: QuadOptions) -> Result<QuadOutcome<T>>
where
    T: QuadValue,
    F: FnMut(f64) -> Result<T>,
{
    if !(a.is_finite() && b.is_finite()) || b < a {
        return Err(Error::ArgumentDomain(format!("bad interval [{a}, {b}]")));
    }
    if a == b {
        return Ok(QuadOutcome {
            value: T::zero(),
            error: 0.0,
            subdivisions: 0,
        });
    }
    let mut points: Vec<f64> = std::iter::once(a)
        .chain(breaks.iter().copied().filter(|&x| x > a && x < b))
        .chain(std::iter::once(b))
        .collect();
    points.sort_by(f64::total_cmp);
    points.dedup();

    let mut heap = BinaryHeap::new();
    let mut frozen: Vec<Panel<T>> = Vec::new();
    for w in points.windows(2) {
        heap.push(gauss_kronrod(&mut f, w[0], w[1])?);
    }
    let mut subdivisions = heap.len();
    loop {
        let (value, error) = heap
            .iter()
            .chain(frozen.iter())
            .fold((T::zero(), 0.0), |(v, e), p| (v + p.value, e + p.error));
        let target = opts.abs_tol.max(opts.rel_tol * value.magnitude());
        if error <= target {
            return Ok(QuadOutcome {
                value,
                error,
                subdivisions,
            });
        }
        let worst = match heap.pop() {
            Some(p) => p,
            None => {
                return Err(Error::ToleranceNotMet {
                    subdivisions,
                    estimate: error,
                    target,
                })
            }
        };
        if subdivisions >= opts.max_subdivisions {
            return Err(Error::ToleranceNotMet {
                subdivisions,
                estimate: error,
                target,
            });
        }
        let mid = 0.5 * (worst.a + worst.b);
        // too narrow to split further in f64
        if mid <= worst.a || mid >= worst.b || (worst.b - worst.a) < 1e3 * f64::EPSILON * mid.abs() {
            frozen.push(worst);
            continue;
        }
        heap.push(gauss_kronrod(&mut f, worst.a, mid)?);
        heap.push(gauss_kronrod(&mut f, mid, worst.b)?);
        subdivisions += 1;
    }
}

/// Wynn's epsilon algorithm over partial sums; returns the last even-column
/// estimate and the change from the previous one.
pub fn wynn_epsilon(sums: &[f64]) -> (f64, f64) {
    let n = sums.len();
    if n < 3 {
        let last = sums.last().copied().unwrap_or(0.0);
        let prev = if n >= 2 { sums[n - 2] } else { last };
        return (last, (last - prev).abs());
    }
    // table[k] holds column k; eps_{-1} = 0
    let mut prev_col = vec![0.0; n + 1];
    let mut col: Vec<f64> = sums.to_vec();
    let mut best = sums[n - 1];
    let mut best_prev = sums[n - 2];
    let mut k = 0;
    while col.len() > 1 {
        let mut next = Vec::with_capacity(col.len() - 1);
        for i in 0..col.len() - 1 {
            let diff = col[i + 1] - col[i];
            let v = if diff == 0.0 { f64::INFINITY } else { prev_col[i + 1] + 1.0 / diff };
            next.push(v);
        }
        prev_col = col;
        col = next;
        k += 1;
        if k % 2 == 0 && !col.is_empty() {
            let last = col[col.len() - 1];
            if !last.is_finite() {
                break;
            }
            best_prev = if col.len() >= 2 { col[col.len() - 2] } else { best };
            best = last;
        }
    }
    (best, (best - best_prev).abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts() -> QuadOptions {
        QuadOptions {
            abs_tol: 1e-13,
            rel_tol: 1e-12,
            max_subdivisions: 500,
        }
    }

    #[test]
    fn weights_integrate_constants() {
        let k: f64 = 2.0 * WGK[..10].iter().sum::<f64>() + WGK[10];
        let g: f64 = 2.0 * WG.iter().sum::<f64>();
        assert!((k - 2.0).abs() < 1e-15);
        assert!((g - 2.0).abs() < 1e-15);
    }

    #[test]
    fn polynomials_and_exponentials() {
        let out = integrate(|x: f64| Ok(x.powi(5)), 0.0, 2.0, &[], opts()).unwrap();
        assert!((out.value - 64.0 / 6.0).abs() < 1e-12);
        let out = integrate(|x: f64| Ok((-x).exp()), 0.0, 40.0, &[1.0, 10.0], opts()).unwrap();
        assert!((out.value - (1.0 - (-40f64).exp())).abs() < 1e-13);
        assert!(out.error >= 0.0);
    }

    #[test]
    fn endpoint_singularity_needs_subdivision() {
        let out = integrate(|x: f64| Ok(x.sqrt()), 0.0, 1.0, &[], opts()).unwrap();
        assert!((out.value - 2.0 / 3.0).abs() < 1e-12);
        assert!(out.subdivisions > 1);
    }

    #[test]
    fn complex_integrand() {
        let out = integrate(
            |u: f64| Ok(Complex64::new(0.0, u).exp()),
            0.0,
            std::f64::consts::PI,
            &[],
            opts(),
        )
        .unwrap();
        assert!((out.value - Complex64::new(0.0, 2.0)).norm() < 1e-13);
    }

    #[test]
    fn subdivision_budget() {
        let strict = QuadOptions {
            abs_tol: 1e-30,
            rel_tol: 1e-30,
            max_subdivisions: 10,
        };
        let err = integrate(|x: f64| Ok(x.sqrt()), 0.0, 1.0, &[], strict).unwrap_err();
        assert!(matches!(err, Error::ToleranceNotMet { .. }));
    }

    #[test]
    fn errors_propagate() {
        let err = integrate(|_x: f64| -> Result<f64> { Err(Error::Eval("boom".into())) }, 0.0, 1.0, &[], opts())
            .unwrap_err();
        assert_eq!(err, Error::Eval("boom".into()));
    }

    #[test]
    fn wynn_accelerates_alternating_series() {
        // ln 2 = 1 - 1/2 + 1/3 - ...
        let mut sums = Vec::new();
        let mut s = 0.0;
        for k in 1..=20 {
            s += if k % 2 == 1 { 1.0 } else { -1.0 } / k as f64;
            sums.push(s);
        }
        let (est, _) = wynn_epsilon(&sums);
        assert!((est - std::f64::consts::LN_2).abs() < 1e-12, "{est}");
        assert!((sums[19] - std::f64::consts::LN_2).abs() > 1e-2);
    }
}
