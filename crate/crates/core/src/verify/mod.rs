//! Verification suites: randomized and exhaustive property checks with
//! counterexamples printed as re-runnable `wmod` invocations.

mod algebra;
mod extensions;
pub mod fixtures;
mod gen;
mod levels;
mod pairings;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fields::ring::{Elem, Ring};
use crate::fields::series::Series;
use crate::witt::{WittRing, WittVector};

pub use extensions::embedding_by_name;
pub use gen::{random_elem_src, random_polar_src, random_witt_src, ElemShape};
pub use levels::{closed_form_level_n1, closed_form_swan_n1, oracle_agreement, ACCEPTANCE_FAMILIES};
pub use pairings::{unit_symbol_vanishing, SURFACE_MAPS};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub instance: usize,
    pub command: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub seed: u64,
    pub passed: bool,
    pub instances: usize,
    pub counterexamples: Vec<Counterexample>,
}

/// Registered suites with their default trial counts.
pub const SUITES: &[(&str, usize)] = &[
    ("witt-ring-axioms", 1000),
    ("ghost-equivalence", 0),
    ("filF-oracle", 10_000),
    ("prop4.1", 200),
    ("prop4.6", 100),
    ("thm5.3", 0),
    ("prop6.3", 0),
    ("prop6.4", 200),
    ("prop7.3", 100),
    ("prop7.5-surface", 6),
    ("sec8", 200),
    ("swan", 100),
    ("roundtrip", 0),
    ("exit-code-canary", 0),
];

pub fn suite_names() -> Vec<&'static str> {
    SUITES.iter().map(|s| s.0).collect()
}

/// Run a registered suite. `trials = None` uses the suite default; exhaustive
/// suites ignore it.
pub fn run_suite(name: &str, seed: u64, trials: Option<usize>) -> Result<SuiteReport> {
    let default = SUITES.iter().find(|s| s.0 == name).ok_or_else(|| Error::UnknownSuite(name.to_string()))?.1;
    let t = trials.unwrap_or(default);
    let (instances, counterexamples) = match name {
        "witt-ring-axioms" => algebra::witt_ring_axioms(seed, t),
        "ghost-equivalence" => algebra::ghost_equivalence(),
        "roundtrip" => algebra::roundtrip(),
        "filF-oracle" => levels::filf_oracle(seed, t),
        "prop4.1" => levels::kernel_exactness(seed, t),
        "prop4.6" => levels::graded_injectivity(seed, t),
        "thm5.3" => levels::hom_level_preservation(),
        "swan" => levels::swan(seed, t),
        "prop6.3" => pairings::modulus_thresholds(),
        "prop6.4" => pairings::unit_symbol_formula(seed, t),
        "prop7.3" => pairings::rank_two_formulas(seed, t),
        "prop7.5-surface" => pairings::surface_moduli(t),
        "sec8" => extensions::extension_levels(seed, t),
        "exit-code-canary" => Ok(canary()),
        _ => unreachable!(),
    }?;
    Ok(SuiteReport { name: name.to_string(), seed, passed: counterexamples.is_empty(), instances, counterexamples })
}

/// Always fails once, so the verification-failure exit path has a fixture.
fn canary() -> (usize, Vec<Counterexample>) {
    let detail = "deliberate counterexample".to_string();
    (1, vec![Counterexample { instance: 0, command: "wmod verify exit-code-canary".into(), detail }])
}

/// Failures of one instance as `(command, detail)`.
pub(crate) type Failures = Vec<(String, String)>;

/// Independent stream per instance, so results do not depend on scheduling.
pub(crate) fn instance_rng(seed: u64, i: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(i as u64);
    rng
}

/// Evaluate instances in parallel and collect failures in instance order. An
/// error inside an instance counts as a failure of that instance.
pub(crate) fn run_instances<T, F>(items: &[T], check: F) -> (usize, Vec<Counterexample>)
where
    T: Sync,
    F: Fn(usize, &T) -> Result<Failures> + Sync,
{
    let out: Vec<Vec<Counterexample>> = items
        .par_iter()
        .enumerate()
        .map(|(i, item)| {
            let fails = check(i, item).unwrap_or_else(|e| vec![(String::new(), format!("error: {e}"))]);
            fails.into_iter().map(|(command, detail)| Counterexample { instance: i, command, detail }).collect()
        })
        .collect();
    (items.len(), out.into_iter().flatten().collect())
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('"', "\\\""))
}

/// `wmod <sub> --field "<k>" -p <p> -n <n> "<arg>"...`.
pub(crate) fn cli_command(sub: &str, k: &Ring, p: u32, n: usize, args: &[String]) -> String {
    let mut s = format!("wmod {sub} --field {} -p {p} -n {n}", quote(&k.describe()));
    for a in args {
        s.push(' ');
        s.push_str(&quote(a));
    }
    s
}

fn drop_one_term(k: &Ring, a: &Elem) -> Vec<Elem> {
    match (k, a) {
        (Ring::Laurent(l), Elem::Ser(s)) if s.is_exact() => {
            let terms: Vec<(i64, Elem)> = s.terms(&l.base).map(|(e, c)| (e, c.clone())).collect();
            (0..terms.len())
                .map(|skip| {
                    let rest: Vec<(i64, Elem)> =
                        terms.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, t)| t.clone()).collect();
                    Elem::Ser(Series::from_terms(&l.base, &rest, None))
                })
                .collect()
        }
        _ if k.is_exact_zero(a) => vec![],
        _ => vec![k.zero()],
    }
}

/// Drop monomials greedily while `fails` keeps holding.
pub fn shrink_witt(w: &WittRing, x: &WittVector, fails: &dyn Fn(&WittVector) -> bool) -> WittVector {
    let mut cur = x.clone();
    loop {
        let mut changed = false;
        'outer: for idx in 0..cur.len() {
            for cand in drop_one_term(&w.base, &cur.comps[idx]) {
                let mut y = cur.clone();
                y.comps[idx] = cand;
                if fails(&y) {
                    cur = y;
                    changed = true;
                    break 'outer;
                }
            }
        }
        if !changed {
            return cur;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::parse::parse_witt;

    #[test]
    fn unknown_suite() {
        assert!(matches!(run_suite("nope", 1, None), Err(Error::UnknownSuite(_))));
    }

    #[test]
    fn shrinking_keeps_failure() {
        let k = Ring::laurent(Ring::fq(2, 1).unwrap(), "t");
        let w = WittRing::new(k.clone(), 2, 2).unwrap();
        let x = w.from_comps(parse_witt(&k, "W(t^-3 + t^-1 + 1; t^-2 + t)").unwrap()).unwrap();
        let fails = |y: &WittVector| k.max_pole(&y.comps[0]) >= 3;
        assert_eq!(w.render(&shrink_witt(&w, &x, &fails)), "W(t^-3; 0)");
    }
}
