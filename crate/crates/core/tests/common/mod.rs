use std::process::Command;

use witt_modulus::verify::fixtures::{Fixture, FixtureKind, FIXTURES};

pub struct Run {
    pub code: i32,
    pub stdout: String,
}

pub fn wmod(args: &[String]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_wmod")).args(args).output().expect("wmod runs");
    Run { code: out.status.code().unwrap_or(-1), stdout: String::from_utf8_lossy(&out.stdout).into_owned() }
}

pub fn args(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

fn single_laurent(field: &str) -> bool {
    field.matches("((").count() == 1
}

fn point_group(src: &str) -> &'static str {
    match src {
        "x; W(1/x; 0)" => "Gm x W2",
        "1/x" => "Ga",
        "x^2 + 1; W(x^-1; 1); 1/(x^2 + 1)" => "Gm x W2 x Ga",
        _ => panic!("no group for point fixture '{src}'"),
    }
}

/// Invocations exercising a fixture, with whether exit code 0 is required.
pub fn fixture_commands(f: &Fixture) -> Vec<(Vec<String>, bool)> {
    let mut out = Vec::new();
    match f.kind {
        FixtureKind::Elem | FixtureKind::Witt => {
            out.push((args(&["witt", "--field", f.field, f.src]), true));
            if single_laurent(f.field) {
                out.push((args(&["level", "--field", f.field, f.src]), true));
            }
            if f.field == "F2(x)" && f.kind == FixtureKind::Elem {
                out.push((args(&["modulus", "--field", f.field, "--phi", f.src]), true));
            }
        }
        FixtureKind::Symbol => {
            let finite_residue = !f.field.split("((").next().unwrap().contains('(');
            let pole = if f.field.contains("t2") { "t2^-1" } else { "t^-1" };
            out.push((args(&["symbol", "--field", f.field, pole, f.src]), finite_residue));
        }
        FixtureKind::Point => {
            out.push((args(&["modulus", "--field", f.field, "--group", point_group(f.src), "--phi", f.src]), true));
        }
    }
    out
}

/// Every fixture command run twice with JSON output: identical bytes and the
/// required exit code.
pub fn check_fixture_determinism() -> Vec<String> {
    let mut bad = Vec::new();
    for f in FIXTURES {
        for (mut a, must_succeed) in fixture_commands(f) {
            a.push("--json".into());
            let r1 = wmod(&a);
            let r2 = wmod(&a);
            if r1.code != r2.code || r1.stdout != r2.stdout {
                bad.push(format!("nondeterministic: {a:?}"));
            }
            if must_succeed && r1.code != 0 {
                bad.push(format!("exit {} for {a:?}", r1.code));
            }
            if r1.code == 2 {
                bad.push(format!("fixture failed to parse: {a:?}"));
            }
        }
    }
    bad
}

/// `(invocation, expected exit code)` for each branch of the exit-code contract.
pub fn exit_code_cases() -> Vec<(Vec<String>, i32)> {
    vec![
        (args(&["level", "--field", "F2((t))", "-n", "2", "W(t^-3; 0)"]), 0),
        (args(&["level", "--field", "F2((t", "t"]), 2),
        (args(&["witt", "--field", "F2((t))", "t^-3 +* 1"]), 2),
        (args(&["swan", "--field", "F2((t))", "W(t^-1;"]), 2),
        (args(&["level", "--field", "F2((t))", "O(t^-2)"]), 3),
        (args(&["verify", "roundtrip"]), 0),
        (args(&["verify", "exit-code-canary"]), 4),
    ]
}

pub fn check_exit_codes() -> Vec<String> {
    exit_code_cases()
        .into_iter()
        .filter_map(|(a, want)| {
            let got = wmod(&a).code;
            (got != want).then(|| format!("{a:?}: exit {got}, expected {want}"))
        })
        .collect()
}
