mod common;

use common::{check_exit_code, check_golden, matches_golden, EXIT_CODES, GOLDEN};

#[test]
fn outputs_match_golden_files() {
    let failures: Vec<String> = GOLDEN
        .iter()
        .filter_map(|(name, args)| check_golden(name, args).err())
        .collect();
    assert!(failures.is_empty(), "{failures:#?}");
}

#[test]
fn exit_code_contract() {
    let failures: Vec<String> = EXIT_CODES
        .iter()
        .filter_map(|(code, args)| check_exit_code(*code, args).err())
        .collect();
    assert!(failures.is_empty(), "{failures:#?}");
}

#[test]
fn comparison_tolerates_only_rounding() {
    assert!(matches_golden("s,value\n1.0,0.19999999999999998\n", "s,value\n1.0,0.2\n").is_ok());
    assert!(matches_golden("s,value\n1.0,0.2001\n", "s,value\n1.0,0.2\n").is_err());
    assert!(matches_golden("n,b\n1,-1/2\n", "n,b\n1,1/2\n").is_err());
    assert!(matches_golden("a,b\n", "a,b,c\n").is_err());
}
