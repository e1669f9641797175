//! Random expression strings. Generating sources rather than values keeps every
//! instance printable as a CLI argument.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::fields::ring::Ring;

/// Exponent range and term count for random Laurent expressions.
#[derive(Clone, Copy, Debug)]
pub struct ElemShape {
    pub max_pole: i64,
    pub max_pos: i64,
    pub terms: usize,
}

impl Default for ElemShape {
    fn default() -> Self {
        ElemShape { max_pole: 4, max_pos: 2, terms: 3 }
    }
}

fn paren(s: String) -> String {
    if s.contains(['+', '-', ' ']) {
        format!("({s})")
    } else {
        s
    }
}

fn power(var: &str, e: i64) -> String {
    match e {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{var}^{e}"),
    }
}

fn term(c: &str, mono: &str) -> String {
    match (c, mono.is_empty()) {
        (_, true) => c.to_string(),
        ("1", false) => mono.to_string(),
        _ => format!("{}*{mono}", paren(c.to_string())),
    }
}

fn join(terms: Vec<String>) -> String {
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

/// A random element of `k` as an expression string.
pub fn random_elem_src(rng: &mut ChaCha8Rng, k: &Ring, shape: ElemShape) -> String {
    match k {
        Ring::Int => rng.gen_range(-2i64..=2).to_string(),
        Ring::Zmod(m) => rng.gen_range(0..*m).to_string(),
        Ring::Fq(f) => f.render(rng.gen_range(0..f.size())),
        Ring::Galois(_) => "1".into(),
        Ring::Rat(r) => {
            let nterms = rng.gen_range(1..=3);
            let mut terms = Vec::new();
            for _ in 0..nterms {
                let c = r.fq.render(rng.gen_range(1..r.fq.size()));
                let v = &r.vars[rng.gen_range(0..r.vars.len())];
                terms.push(term(&c, &power(v, rng.gen_range(0..=2))));
            }
            let num = join(terms);
            match rng.gen_range(0..3) {
                0 => format!("({num})/(1 + {})", r.vars[0]),
                1 => format!("({num})/{}", r.vars[0]),
                _ => num,
            }
        }
        Ring::Laurent(l) => {
            let inner = ElemShape { max_pole: 2, max_pos: 2, terms: 2 };
            let nterms = rng.gen_range(0..=shape.terms);
            let mut terms = Vec::new();
            for _ in 0..nterms {
                let e = rng.gen_range(-shape.max_pole..=shape.max_pos);
                let c = random_elem_src(rng, &l.base, inner);
                if c != "0" {
                    terms.push(term(&c, &power(&l.var, e)));
                }
            }
            join(terms)
        }
    }
}

/// A random purely polar element of a Laurent field with poles of order at
/// most `max_pole`.
pub fn random_polar_src(rng: &mut ChaCha8Rng, k: &Ring, max_pole: i64, terms: usize) -> String {
    let shape = ElemShape { max_pole, max_pos: -1, terms };
    random_elem_src(rng, k, shape)
}

/// A random Witt literal of length `n` whose subscript-`j` component has pole
/// order at most `max_level / p^j`, so the naive level stays below `max_level`.
pub fn random_witt_src(rng: &mut ChaCha8Rng, k: &Ring, p: u32, n: usize, max_level: i64, terms: usize) -> String {
    let comps: Vec<String> = (0..n)
        .map(|idx| {
            let j = (n - 1 - idx) as u32;
            let pole = max_level / (p as i64).pow(j);
            if pole == 0 {
                "0".into()
            } else {
                match k {
                    Ring::Laurent(_) => random_polar_src(rng, k, pole, terms),
                    _ => random_elem_src(rng, k, ElemShape::default()),
                }
            }
        })
        .collect();
    if n == 1 {
        comps.into_iter().next().unwrap()
    } else {
        format!("W({})", comps.join("; "))
    }
}
