use umbra_core::expr::{parse_function, parse_in};
use umbra_core::FunctionExpr;

fn corpus() -> impl Iterator<Item = &'static str> {
    include_str!("data/expressions.txt").lines().filter(|l| !l.trim().is_empty())
}

#[test]
fn printer_round_trips_the_corpus() {
    assert!(corpus().count() >= 50);
    for text in corpus() {
        let tree = parse_function(text).unwrap_or_else(|e| panic!("{text}: {e}"));
        let printed = tree.to_string();
        let again = parse_function(&printed).unwrap_or_else(|e| panic!("{printed}: {e}"));
        assert_eq!(again, tree, "{text} printed as {printed}");
        assert_eq!(again.to_string(), printed, "printing is not idempotent for {text}");
    }
}

#[test]
fn printed_form_evaluates_identically() {
    for text in corpus() {
        let tree = parse_function(text).unwrap();
        let again = parse_function(&tree.to_string()).unwrap();
        for t in [0.3f64, 1.7, 4.0] {
            match (tree.eval(t), again.eval(t)) {
                (Ok(a), Ok(b)) => assert!(a == b || (a.is_nan() && b.is_nan()), "{text} at {t}"),
                (Err(_), Err(_)) => {}
                other => panic!("{text} at {t}: {other:?}"),
            }
        }
    }
}

#[test]
fn syntax_errors_carry_offsets() {
    let cases = [("t^", 2), ("", 0), ("t +", 3), ("(t", 2), ("exp t", 4), ("2 * * t", 4), ("t)", 1), ("t^x", 2), ("log(t)", 0)];
    for (text, offset) in cases {
        let err = parse_function(text).unwrap_err();
        assert_eq!(err.offset, offset, "{text}: {err}");
        assert!(!err.expected.is_empty());
    }
}

#[test]
fn alternate_variable() {
    let e = parse_in("1/(s + 1)", "s").unwrap();
    assert_eq!(e.to_string_in("s"), "1/(s + 1)");
    assert!(parse_in("1/(t + 1)", "s").is_err());
}

#[test]
fn taylor_coefficients_match_finite_differences() {
    for text in ["exp(-t)", "sin(2*t) + cos(t)", "1/(1 + t)", "sqrt(1 + t)", "ln(1 + t/2)", "t^3 - t"] {
        let f = FunctionExpr::parse(text).unwrap();
        let c = f.taylor_coefficients(2).unwrap();
        let h = 1e-4;
        let (fm, f0, fp) = (f.eval(-h).unwrap(), f.eval(0.0).unwrap(), f.eval(h).unwrap());
        let c0 = umbra_core::rational::to_f64(&c[0]);
        let c1 = umbra_core::rational::to_f64(&c[1]);
        let c2 = umbra_core::rational::to_f64(&c[2]);
        assert!((c0 - f0).abs() < 1e-14, "{text}");
        assert!((c1 - (fp - fm) / (2.0 * h)).abs() < 1e-7, "{text}");
        assert!((c2 - (fp - 2.0 * f0 + fm) / (h * h)).abs() < 1e-5, "{text}");
    }
}
