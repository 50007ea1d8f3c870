use std::io::Write;

use num_complex::Complex64;
use serde::Serialize;
use umbra_core::bell::PartialBellTable;
use umbra_core::expr::parse_in;
use umbra_core::iso::{apply_iso, apply_iso_general, convention_gap, iso_reciprocal_convention};
use umbra_core::kernels::{hp_decay_probe, kernel_eval, KernelSpec};
use umbra_core::rational::{factorial, format_rational, parse_rational, pow};
use umbra_core::selftest::run_selftest;
use umbra_core::transform::{
    bromwich_invert, transform, transform_complex, transform_truncated, QuadratureConfig,
};
use umbra_core::umbral::{blissard_reciprocal, coeff_c};
use umbra_core::{Error, FormalPowerSeries, FunctionExpr, Rational, UmbralSequence};

use crate::args::*;
use crate::grid::parse_grid;
use crate::output::{emit, json};
use crate::{CliError, EXIT_DOMAIN, EXIT_OK};

type Outcome = Result<i32, CliError>;

pub fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    match command {
        Command::Bell(a) => bell(a, out),
        Command::Blissard(a) => blissard(a, out),
        Command::Kernel(a) => kernel(a, out),
        Command::Transform(a) => transform_cmd(a, out),
        Command::Invert(a) => invert(a, out, err),
        Command::Iso(a) => iso(a, out),
        Command::Selftest(a) => selftest(a, out, err),
    }
}

fn grid(flag: &str, text: &str) -> Result<Vec<f64>, CliError> {
    parse_grid(text).map_err(|e| CliError::Usage(format!("--{flag}: {e}")))
}

fn rationals(flag: &str, text: &str) -> Result<Vec<Rational>, CliError> {
    text.split(',')
        .map(|item| parse_rational(item).map_err(|e| CliError::Usage(format!("--{flag}: {e}"))))
        .collect()
}

/// Malformed text is a usage error; a well-formed list with `a_0 != 1` is a domain error.
fn sequence(text: &str) -> Result<UmbralSequence, CliError> {
    text.parse::<UmbralSequence>().map_err(|e| {
        let well_formed = text
            .split(',')
            .all(|item| !item.contains('.') && parse_rational(item).is_ok());
        if well_formed {
            CliError::Domain(e)
        } else {
            CliError::Usage(format!("--sequence: {e}"))
        }
    })
}

fn function(flag: &str, text: &str) -> Result<FunctionExpr, CliError> {
    FunctionExpr::parse(text).map_err(|e| CliError::Usage(format!("--{flag}: {e}")))
}

fn kernel_spec(k: &KernelChoice) -> Result<KernelSpec, CliError> {
    if let Some(n) = k.geometric {
        return Ok(KernelSpec::truncated_geometric(n));
    }
    if let Some(r) = k.laguerre {
        return Ok(match k.truncate {
            Some(n) => KernelSpec::truncated_laguerre(r, n),
            None => KernelSpec::laguerre(r),
        });
    }
    let text = k.sequence.as_deref().expect("clap requires one kernel family");
    let a = sequence(text)?;
    Ok(match k.truncate {
        Some(n) => KernelSpec::reciprocal_egf(UmbralSequence::explicit(a.terms(n))?),
        None => KernelSpec::reciprocal_egf(a),
    })
}

fn quadrature(q: &QuadArgs) -> Result<QuadratureConfig, CliError> {
    let d = QuadratureConfig::default();
    let config = QuadratureConfig {
        abs_tol: q.abs_tol.unwrap_or(d.abs_tol),
        rel_tol: q.rel_tol.unwrap_or(d.rel_tol),
        tail_epsilon: q.tail_eps.unwrap_or(d.tail_epsilon),
        max_interval: q.max_interval.unwrap_or(d.max_interval),
        max_subdivisions: q.max_subdivisions.unwrap_or(d.max_subdivisions),
        finite_interval: q.finite_interval,
    };
    config.validate()?;
    Ok(config)
}

fn bell(a: BellArgs, out: &mut dyn Write) -> Outcome {
    let g = rationals("g", &a.g)?;
    if g.len() < a.n {
        return Err(CliError::Usage(format!("--g needs at least {} values, got {}", a.n, g.len())));
    }
    let table = PartialBellTable::new(a.n, &g[..a.n]);
    match a.f {
        Some(f) => {
            let f = rationals("f", &f)?;
            if f.len() < a.n {
                return Err(CliError::Usage(format!("--f needs at least {} values, got {}", a.n, f.len())));
            }
            #[derive(Serialize)]
            struct Row {
                n: usize,
                value: String,
            }
            let rows = (1..=a.n)
                .map(|n| Ok(Row { n, value: format_rational(&table.complete(n, &f[..n])?) }))
                .collect::<Result<Vec<_>, Error>>()?;
            emit(a.output, &["n", "value"], &rows, out)?;
        }
        None => {
            #[derive(Serialize)]
            struct Row {
                n: usize,
                k: usize,
                value: String,
            }
            let rows: Vec<Row> = table
                .entries()
                .map(|(n, k, v)| Row { n, k, value: format_rational(v) })
                .collect();
            emit(a.output, &["n", "k", "value"], &rows, out)?;
        }
    }
    Ok(EXIT_OK)
}

fn blissard(a: BlissardArgs, out: &mut dyn Write) -> Outcome {
    let seq = sequence(&a.sequence)?;
    let b = blissard_reciprocal(&seq, a.order);
    let c = coeff_c(&seq, a.order);
    #[derive(Serialize)]
    struct Row {
        n: usize,
        b: String,
        c: String,
    }
    let rows: Vec<Row> = b
        .iter()
        .zip(&c)
        .enumerate()
        .map(|(n, (b, c))| Row { n, b: format_rational(b), c: format_rational(c) })
        .collect();
    emit(a.output, &["n", "b", "c"], &rows, out)?;
    Ok(EXIT_OK)
}

fn kernel(a: KernelArgs, out: &mut dyn Write) -> Outcome {
    let spec = kernel_spec(&a.kernel)?;
    let s_values = grid("s", &a.s)?;
    if let Some(t_max) = a.probe {
        let reports = s_values
            .iter()
            .map(|&s| hp_decay_probe(&spec, s, t_max, a.points))
            .collect::<Result<Vec<_>, Error>>()?;
        match a.output {
            Format::Json => json(&reports, out)?,
            Format::Csv => {
                #[derive(Serialize)]
                struct Row<'a> {
                    s: f64,
                    fitted_rate: f64,
                    relative_residual: f64,
                    rate_ratio: f64,
                    verdict: &'a str,
                }
                let rows: Vec<Row> = reports
                    .iter()
                    .map(|r| Row {
                        s: r.s,
                        fitted_rate: r.fitted_rate,
                        relative_residual: r.relative_residual,
                        rate_ratio: r.rate_ratio,
                        verdict: r.verdict.as_str(),
                    })
                    .collect();
                emit(
                    Format::Csv,
                    &["s", "fitted_rate", "relative_residual", "rate_ratio", "verdict"],
                    &rows,
                    out,
                )?;
            }
        }
        return Ok(EXIT_OK);
    }
    let t_values = grid("t", a.t.as_deref().expect("clap requires --t without --probe"))?;
    #[derive(Serialize)]
    struct Row {
        s: f64,
        t: f64,
        value: f64,
    }
    let mut rows = Vec::with_capacity(s_values.len() * t_values.len());
    for &s in &s_values {
        for &t in &t_values {
            rows.push(Row { s, t, value: kernel_eval(&spec, s, t)? });
        }
    }
    emit(a.output, &["s", "t", "value"], &rows, out)?;
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct TransformRow {
    s: f64,
    value: f64,
    error_estimate: f64,
    cutoff_t: f64,
    flags: String,
}

fn transform_cmd(a: TransformArgs, out: &mut dyn Write) -> Outcome {
    let f = function("function", &a.function)?;
    let spec = kernel_spec(&a.kernel)?;
    let q = quadrature(&a.quad)?;
    let s_values = grid("s", &a.s)?;
    let mut rows = Vec::with_capacity(s_values.len());
    for s in s_values {
        let result = match (a.kernel.laguerre, a.kernel.truncate) {
            (Some(r), Some(n)) => transform_truncated(&f, r, n, s, &q)?,
            _ => transform(&f, &spec, s, &q)?,
        };
        rows.push(TransformRow {
            s,
            value: result.value,
            error_estimate: result.error_estimate,
            cutoff_t: result.cutoff_t,
            flags: result.flags_label(),
        });
    }
    emit(a.output, &["s", "value", "error_estimate", "cutoff_T", "flags"], &rows, out)?;
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct InvertRow {
    t: f64,
    value: Option<f64>,
    error_estimate: Option<f64>,
    tau: Option<f64>,
    panels: Option<usize>,
    converged: bool,
    experimental: bool,
    reference: Option<f64>,
    residual: Option<f64>,
    status: &'static str,
}

fn invert(a: InvertArgs, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let q = quadrature(&a.quad)?;
    let t_values = grid("t", &a.t)?;
    let source: Option<FunctionExpr> = a.function.as_deref().map(|f| function("function", f)).transpose()?;
    let image_expr = match &a.image {
        Some(text) => Some(parse_in(text, "s").map_err(|e| CliError::Usage(format!("--image: {e}")))?),
        None => None,
    };
    let spec = KernelSpec::laguerre(a.laguerre);
    let image = |s: Complex64| -> Result<Complex64, Error> {
        match (&image_expr, &source) {
            (Some(expr), _) => expr.eval(s),
            (None, Some(f)) => Ok(transform_complex(f, &spec, s, &q)?.value),
            (None, None) => unreachable!("clap requires --image or --function"),
        }
    };
    let mut rows = Vec::with_capacity(t_values.len());
    for t in t_values {
        let reference = source.as_ref().map(|f| f.eval(t)).transpose()?;
        let row = match bromwich_invert(&image, a.laguerre, t, a.gamma, &q) {
            Ok(rep) => InvertRow {
                t,
                value: Some(rep.value),
                error_estimate: Some(rep.error_estimate),
                tau: Some(rep.tau),
                panels: Some(rep.panels),
                converged: rep.converged,
                experimental: rep.experimental,
                reference,
                residual: reference.map(|r| (rep.value - r).abs()),
                status: if rep.converged { "converged" } else { "not-converged" },
            },
            Err(e @ Error::ContourDivergence(_)) => {
                writeln!(err, "warning: t = {t}: {e}")?;
                InvertRow {
                    t,
                    value: None,
                    error_estimate: None,
                    tau: None,
                    panels: None,
                    converged: false,
                    experimental: a.laguerre >= 1,
                    reference,
                    residual: None,
                    status: "contour-divergence",
                }
            }
            Err(e) => return Err(e.into()),
        };
        rows.push(row);
    }
    emit(
        a.output,
        &[
            "t",
            "value",
            "error_estimate",
            "tau",
            "panels",
            "converged",
            "experimental",
            "reference",
            "residual",
            "status",
        ],
        &rows,
        out,
    )?;
    Ok(EXIT_OK)
}

/// `exp`, `e_r:R` (plain coefficients `1/(k!)^(R+1)`) or plain coefficients `c_0,c_1,...`.
fn series(text: &str, order: usize) -> Result<FormalPowerSeries, CliError> {
    let text = text.trim();
    if text == "exp" {
        return Ok(FormalPowerSeries::exp(order));
    }
    if let Some(r) = text.strip_prefix("e_r:") {
        let r: usize = r
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("--series: bad order in {text:?}")))?;
        let coeffs = (0..=order)
            .map(|k| pow(&Rational::from_integer(factorial(k)), r + 1).recip())
            .collect();
        return Ok(FormalPowerSeries::plain(coeffs));
    }
    let coeffs = rationals("series", text)?;
    Ok(FormalPowerSeries::plain(coeffs).with_order(order))
}

fn iso(a: IsoArgs, out: &mut dyn Write) -> Outcome {
    if a.gap {
        let gap = convention_gap(a.m, a.order)?;
        match a.output {
            Format::Json => json(&gap, out)?,
            Format::Csv => {
                #[derive(Serialize)]
                struct Row {
                    n: usize,
                    coefficient_wise: String,
                    multiplicative: String,
                    agree: bool,
                }
                let rows: Vec<Row> = gap
                    .coefficient_wise
                    .iter()
                    .zip(&gap.multiplicative)
                    .enumerate()
                    .map(|(n, (c, m))| Row {
                        n,
                        coefficient_wise: format_rational(c),
                        multiplicative: format_rational(m),
                        agree: c == m,
                    })
                    .collect();
                emit(Format::Csv, &["n", "coefficient_wise", "multiplicative", "agree"], &rows, out)?;
            }
        }
        return Ok(EXIT_OK);
    }
    let p = series(a.series.as_deref().expect("clap requires --series without --gap"), a.order)?;
    let image = match (&a.general, a.reciprocal) {
        (Some(seq), _) => apply_iso_general(&p, &sequence(seq)?),
        (None, true) => iso_reciprocal_convention(&p, a.m, a.order)?,
        (None, false) => apply_iso(&p, a.m),
    };
    #[derive(Serialize)]
    struct Row {
        n: usize,
        coefficient: String,
    }
    let rows: Vec<Row> = image
        .coeffs()
        .iter()
        .enumerate()
        .map(|(n, c)| Row { n, coefficient: format_rational(c) })
        .collect();
    emit(a.output, &["n", "coefficient"], &rows, out)?;
    Ok(EXIT_OK)
}

fn selftest(a: SelftestArgs, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let report = run_selftest();
    match a.output {
        Format::Json => json(&report, out)?,
        Format::Csv => emit(Format::Csv, &["check", "passed"], &report.checks, out)?,
    }
    writeln!(err, "{} passed, {} failed", report.passed, report.failed)?;
    Ok(if report.failed == 0 { EXIT_OK } else { EXIT_DOMAIN })
}
