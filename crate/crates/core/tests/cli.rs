mod common;

use common::{args, check_exit_codes, check_fixture_determinism, wmod};

#[test]
fn fixtures_are_deterministic() {
    let bad = check_fixture_determinism();
    assert!(bad.is_empty(), "{bad:#?}");
}

#[test]
fn exit_code_contract() {
    let bad = check_exit_codes();
    assert!(bad.is_empty(), "{bad:#?}");
}

#[test]
fn level_report() {
    let r = wmod(&args(&["level", "-p", "2", "-n", "2", "--field", "F2((t))", "W(t^-3; 0)", "--json"]));
    assert_eq!(r.code, 0);
    assert!(r.stdout.starts_with(r#"{"naive":6,"filF":6,"flat_min":7,"#), "{}", r.stdout);
}

#[test]
fn modulus_report() {
    let r = wmod(&args(&["modulus", "--field", "F2(x)", "--group", "Ga", "--phi", "1/x", "--json"]));
    assert_eq!(r.stdout.trim(), r#"{"divisor":[{"place":"x","mult":2}],"degree":2}"#);
    let r = wmod(&args(&["modulus", "--field", "F2(x)", "--group", "Gm^1 x W2", "--phi", "x ; W(1/x,0)", "--json"]));
    assert!(r.stdout.contains(r#"{"place":"x","mult":3}"#), "{}", r.stdout);
}

#[test]
fn swan_report() {
    let r = wmod(&args(&["swan", "--field", "F2((t))", "-n", "1", "t^-3", "--json"]));
    assert_eq!(r.stdout.trim(), r#"{"swan":3,"rsw":{"dlogt":"t^-3 * 1"}}"#);
}

#[test]
fn symbol_report() {
    let r = wmod(&args(&["symbol", "--field", "F2((t))", "-n", "2", "W(t^-1; 0)", "t", "--json"]));
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains(r#""group":"W2""#), "{}", r.stdout);
}

#[test]
fn witt_arithmetic_over_integers_mod_8() {
    let r = wmod(&args(&["witt", "--field", "Z/8", "-n", "2", "W(1; 0)", "+", "W(1; 0)", "--json"]));
    assert_eq!(r.stdout.trim(), r#"{"result":"W(2; 7)"}"#);
    let teich = wmod(&args(&["witt", "--field", "Z/8", "-n", "2", "W(1; 0)", "*", "2", "--json"]));
    assert_eq!(teich.stdout.trim(), r#"{"result":"W(2; 0)"}"#);
}

#[test]
fn verify_report() {
    let r = wmod(&args(&["verify", "prop6.4", "--trials", "200", "--seed", "1", "--json"]));
    assert_eq!(r.stdout.trim(), r#"{"passed":true,"instances":200}"#);
}

#[test]
fn config_file_stands_in_for_flags() {
    let path = std::env::temp_dir().join(format!("wmod-config-{}.json", std::process::id()));
    std::fs::write(&path, r#"{"field":"F2((t))","n":2}"#).unwrap();
    let r = wmod(&args(&["level", "--config", path.to_str().unwrap(), "W(t^-3; 0)", "--json"]));
    std::fs::remove_file(&path).ok();
    assert!(r.stdout.starts_with(r#"{"naive":6,"filF":6"#), "{}", r.stdout);
}
