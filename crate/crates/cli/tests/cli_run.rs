use umbra_cli::run_command;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("umbra").chain(args.iter().copied());
    let code = run_command(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn csv_header_and_rows() {
    let (code, out, _) = call(&["transform", "--function", "t", "--laguerre", "0", "--s", "1:2:3"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "s,value,error_estimate,cutoff_T,flags");
    assert_eq!(lines.len(), 4);
    let value: f64 = lines[2].split(',').nth(1).unwrap().parse().unwrap();
    assert!((value - 1.0 / 2.25).abs() < 1e-12);
}

#[test]
fn json_keys_are_snake_case() {
    let (code, out, _) = call(&["transform", "--function", "t", "--laguerre", "0", "--s", "2", "--output", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let row = v[0].as_object().unwrap();
    for key in ["s", "value", "error_estimate", "cutoff_t", "flags"] {
        assert!(row.contains_key(key), "{key}");
    }
}

#[test]
fn finite_interval_is_flagged() {
    let (code, out, _) = call(&[
        "transform", "--function", "1", "--laguerre", "0", "--s", "1", "--finite-interval", "2",
    ]);
    assert_eq!(code, 0);
    let row = out.lines().nth(1).unwrap();
    assert!(row.ends_with("finite-interval-mode"), "{row}");
    let value: f64 = row.split(',').nth(1).unwrap().parse().unwrap();
    assert!((value - (1.0 - (-2f64).exp())).abs() < 1e-12);
}

#[test]
fn inversion_reports_residuals() {
    let (code, out, _) = call(&["invert", "--function", "exp(-t)", "--t", "1", "--gamma", "1", "--abs-tol", "1e-10", "--rel-tol", "1e-10"]);
    assert_eq!(code, 0);
    let row: Vec<&str> = out.lines().nth(1).unwrap().split(',').collect();
    let residual: f64 = row[8].parse().unwrap();
    assert!(residual < 1e-6);
    assert_eq!(row[9], "converged");
}

#[test]
fn domain_errors_go_to_stderr() {
    let (code, out, err) = call(&["blissard", "--sequence", "3,1", "--order", "2"]);
    assert_eq!(code, 1);
    assert!(out.is_empty());
    assert!(err.contains("a_0 must be 1"), "{err}");
    let (code, _, err) = call(&["transform", "--function", "sin(", "--laguerre", "0", "--s", "1"]);
    assert_eq!(code, 2);
    assert!(err.contains("offset 4"), "{err}");
}

#[test]
fn help_goes_to_stdout() {
    let (code, out, err) = call(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("transform") && err.is_empty());
}
