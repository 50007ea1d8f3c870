#![allow(dead_code)]

use std::path::PathBuf;
use std::process::{Command, Output};

/// `(golden file, arguments)`; every subcommand appears at least once in each format.
pub const GOLDEN: &[(&str, &[&str])] = &[
    ("bell_stirling.csv", &["bell", "--n", "6", "--g", "1,1,1,1,1,1"]),
    ("bell_complete.csv", &["bell", "--n", "4", "--g", "1,1,1,1", "--f", "1,1,1,1"]),
    ("blissard_bernoulli.csv", &["blissard", "--sequence", "inv-succ", "--order", "10"]),
    ("blissard_ones.json", &["blissard", "--sequence", "ones", "--order", "3", "--output", "json"]),
    ("kernel_laguerre1.csv", &["kernel", "--laguerre", "1", "--s", "1,2", "--t", "0,1,4"]),
    ("kernel_inv_succ.json", &["kernel", "--sequence", "inv-succ", "--s", "0.5", "--t", "0:4:3", "--output", "json"]),
    ("kernel_probe.csv", &["kernel", "--laguerre", "0", "--s", "1", "--probe", "50", "--points", "32"]),
    ("transform_classical.csv", &["transform", "--function", "exp(-t)*sin(t)", "--laguerre", "0", "--s", "0.5,1,2"]),
    ("transform_laguerre1.json", &["transform", "--function", "1", "--laguerre", "1", "--s", "1", "--output", "json"]),
    ("transform_truncated.csv", &["transform", "--function", "exp(-t)", "--laguerre", "0", "--truncate", "8", "--s", "1"]),
    ("invert_classical.csv", &["invert", "--image", "1/(s+1)", "--t", "0.5,1,2", "--gamma", "1"]),
    ("invert_experimental.json", &["invert", "--image", "1/(s+1)", "--laguerre", "1", "--t", "1", "--gamma", "1", "--output", "json"]),
    ("iso_gap_m1.csv", &["iso", "--gap", "--m", "1", "--order", "4"]),
    ("iso_gap_m2.json", &["iso", "--gap", "--m", "2", "--order", "3", "--output", "json"]),
    ("iso_reciprocal_exp.csv", &["iso", "--series", "exp", "--m", "1", "--order", "5", "--reciprocal"]),
    ("iso_general.json", &["iso", "--series", "1,2,3", "--general", "inv-succ", "--order", "3", "--output", "json"]),
    ("selftest.csv", &["selftest"]),
];

/// `(expected exit code, arguments)`.
pub const EXIT_CODES: &[(i32, &[&str])] = &[
    (0, &["--help"]),
    (0, &["blissard", "--sequence", "laguerre:2", "--order", "4"]),
    (2, &[]),
    (2, &["frobnicate"]),
    (2, &["bell", "--n", "3"]),
    (2, &["bell", "--n", "3", "--g", "1,x,2"]),
    (2, &["transform", "--function", "exp(-t", "--laguerre", "0", "--s", "1"]),
    (2, &["transform", "--function", "t", "--s", "1"]),
    (2, &["transform", "--function", "t", "--laguerre", "0", "--s", "1:2"]),
    (2, &["kernel", "--laguerre", "0", "--geometric", "2", "--s", "1", "--t", "1"]),
    (2, &["blissard", "--sequence", "laguerre:x", "--order", "3"]),
    (1, &["blissard", "--sequence", "2,1", "--order", "3"]),
    (1, &["transform", "--function", "exp(t)", "--laguerre", "0", "--s", "1"]),
    (1, &["transform", "--function", "1", "--laguerre", "0", "--truncate", "1", "--s", "1"]),
    (1, &["transform", "--function", "1", "--laguerre", "0", "--s", "-1"]),
    (1, &["transform", "--function", "1", "--sequence", "factorial", "--s", "1"]),
    (1, &["kernel", "--laguerre", "0", "--s", "1", "--probe", "10", "--points", "3"]),
    (1, &["iso", "--gap", "--m", "0", "--order", "4"]),
];

pub fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

pub fn umbra(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_umbra"))
        .args(args)
        .env_remove("UMBRA_ABS_TOL")
        .env_remove("UMBRA_REL_TOL")
        .output()
        .expect("spawn umbra")
}

fn same_field(a: &str, b: &str) -> bool {
    match (a.parse::<f64>(), b.parse::<f64>()) {
        (Ok(x), Ok(y)) => x == y || (x - y).abs() <= 1e-10 + 1e-9 * x.abs().max(y.abs()),
        _ => a == b,
    }
}

fn tokens(text: &str) -> Vec<&str> {
    text.split(|c: char| c == ',' || c.is_whitespace() || c == ':')
        .filter(|t| !t.is_empty())
        .collect()
}

/// Compares outputs token by token; numbers may differ in the last few digits.
pub fn matches_golden(actual: &str, expected: &str) -> Result<(), String> {
    let (a, e) = (tokens(actual), tokens(expected));
    if a.len() != e.len() {
        return Err(format!("{} tokens, golden has {}", a.len(), e.len()));
    }
    match a.iter().zip(&e).position(|(x, y)| !same_field(x, y)) {
        Some(i) => Err(format!("token {i}: got {:?}, golden has {:?}", a[i], e[i])),
        None => Ok(()),
    }
}

/// Runs one golden case and returns a failure description, if any.
pub fn check_golden(name: &str, args: &[&str]) -> Result<(), String> {
    let out = umbra(args);
    if !out.status.success() {
        return Err(format!("{name}: exit {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr)));
    }
    let expected = std::fs::read_to_string(golden_path(name)).map_err(|e| format!("{name}: {e}"))?;
    let actual = String::from_utf8(out.stdout).map_err(|e| format!("{name}: {e}"))?;
    matches_golden(&actual, &expected).map_err(|e| format!("{name}: {e}"))
}

pub fn check_exit_code(code: i32, args: &[&str]) -> Result<(), String> {
    let out = umbra(args);
    match out.status.code() {
        Some(c) if c == code => Ok(()),
        other => Err(format!("{args:?}: expected exit {code}, got {other:?}")),
    }
}
