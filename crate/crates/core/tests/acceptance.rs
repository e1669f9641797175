mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use witt_modulus::verify::{unit_symbol_vanishing, run_suite, Counterexample, SURFACE_MAPS};

struct Outcome {
    instances: usize,
    problems: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome { instances: 0, problems: Vec::new() }
    }

    fn absorb(&mut self, label: &str, r: witt_modulus::Result<(usize, Vec<Counterexample>)>) {
        match r {
            Ok((n, bad)) => {
                self.instances += n;
                self.problems.extend(bad.iter().take(5).map(|c| format!("{label}: {} ({})", c.command, c.detail)));
                if bad.len() > 5 {
                    self.problems.push(format!("{label}: {} more counterexamples", bad.len() - 5));
                }
            }
            Err(e) => self.problems.push(format!("{label}: error {e}")),
        }
    }

    fn suite(&mut self, name: &str, trials: Option<usize>) {
        self.absorb(name, run_suite(name, 1, trials).map(|r| (r.instances, r.counterexamples)));
    }

    fn cli(&mut self, label: &str, bad: Vec<String>, count: usize) {
        self.instances += count;
        self.problems.extend(bad.into_iter().map(|b| format!("{label}: {b}")));
    }
}

fn criterion_1() -> Outcome {
    let mut o = Outcome::new();
    o.suite("witt-ring-axioms", Some(1000));
    o.suite("ghost-equivalence", None);
    o
}

fn criterion_2() -> Outcome {
    let mut o = Outcome::new();
    o.suite("filF-oracle", Some(10_000));
    o
}

fn criterion_3() -> Outcome {
    let mut o = Outcome::new();
    o.suite("prop4.1", Some(200));
    o.suite("prop4.6", Some(100));
    o
}

fn criterion_4() -> Outcome {
    let mut o = Outcome::new();
    o.suite("thm5.3", None);
    o
}

fn criterion_5() -> Outcome {
    let mut o = Outcome::new();
    o.absorb("vanishing on U^(m+1)", unit_symbol_vanishing());
    o.suite("prop6.4", Some(200));
    o
}

fn criterion_6() -> Outcome {
    let mut o = Outcome::new();
    o.suite("prop6.3", None);
    let mut bad = Vec::new();
    for (l, mult) in [(1, 2), (2, 2), (3, 4)] {
        let phi = format!("x^-{l}");
        let a = common::args(&["modulus", "--field", "F2(x)", "--group", "Ga", "--phi", &phi, "--json"]);
        let want = format!(r#"{{"divisor":[{{"place":"x","mult":{mult}}}],"degree":{mult}}}"#);
        let got = common::wmod(&a).stdout;
        if got.trim() != want {
            bad.push(format!("phi = {phi}: {}", got.trim()));
        }
    }
    o.cli("global divisors", bad, 3);
    o
}

fn criterion_7() -> Outcome {
    let mut o = Outcome::new();
    o.suite("prop7.3", Some(100));
    o.suite("prop7.5-surface", Some(SURFACE_MAPS.len()));
    o
}

fn criterion_8() -> Outcome {
    let mut o = Outcome::new();
    o.suite("sec8", Some(200));
    o
}

fn criterion_9() -> Outcome {
    let mut o = Outcome::new();
    o.suite("swan", Some(100));
    o
}

fn criterion_10() -> Outcome {
    let mut o = Outcome::new();
    o.suite("roundtrip", None);
    let n = witt_modulus::verify::fixtures::FIXTURES.len();
    o.cli("determinism", common::check_fixture_determinism(), n);
    o.cli("exit codes", common::check_exit_codes(), common::exit_code_cases().len());
    o
}

type Criterion = (&'static str, fn() -> Outcome, Option<Duration>);

const CRITERIA: &[Criterion] = &[
    ("Witt ring correctness", criterion_1, Some(Duration::from_secs(60))),
    ("filtration oracle equivalence", criterion_2, Some(Duration::from_secs(180))),
    ("decomposition and graded-class suite", criterion_3, None),
    ("level preservation under Witt homomorphisms", criterion_4, None),
    ("symbol vanishing and unit-symbol formula", criterion_5, None),
    ("modulus equals symbol threshold", criterion_6, None),
    ("rank-two pairings and surface moduli", criterion_7, None),
    ("levels along extensions", criterion_8, None),
    ("Swan conductors", criterion_9, None),
    ("CLI determinism, exit codes, round trips", criterion_10, None),
];

fn main() -> ExitCode {
    let start = Instant::now();
    let mut all_ok = true;
    for (i, (name, run, limit)) in CRITERIA.iter().enumerate() {
        let t = Instant::now();
        let mut o = run();
        let dt = t.elapsed();
        if let Some(l) = limit {
            if dt > *l {
                o.problems.push(format!("runtime {:.1}s exceeds {}s", dt.as_secs_f64(), l.as_secs()));
            }
        }
        let ok = o.problems.is_empty();
        all_ok &= ok;
        let verdict = if ok { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {verdict}  {name}: {} instances, {:.1}s", i + 1, o.instances, dt.as_secs_f64());
        for p in &o.problems {
            println!("    {p}");
        }
    }
    let total = start.elapsed();
    if total > Duration::from_secs(600) {
        println!("total runtime {:.1}s exceeds 600s", total.as_secs_f64());
        all_ok = false;
    }
    println!("acceptance: {} in {:.1}s", if all_ok { "PASS" } else { "FAIL" }, total.as_secs_f64());
    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
