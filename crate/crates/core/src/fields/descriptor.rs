//! Field descriptors: a layered description of a tower field that can be
//! read from a compact string such as `F2(u)((t))` or from JSON.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::fq::FqCtx;
use super::ring::{Ring, DEFAULT_WINDOW};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Layer {
    Prime,
    Galois { e: u32 },
    Rational { vars: Vec<String> },
    Perfection { vars: Vec<String> },
    Laurent { var: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub p: u32,
    pub layers: Vec<Layer>,
}

fn perr(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse { pos, msg: msg.into() }
}

fn valid_ident(s: &str) -> bool {
    let mut ch = s.chars();
    matches!(ch.next(), Some(c) if c.is_ascii_alphabetic()) && ch.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl FieldDescriptor {
    /// Parse `F<q>`, optionally followed by `(vars)` or `(vars)^perf`, then any
    /// number of `((var))` layers. A JSON object is accepted as well.
    pub fn parse(src: &str) -> Result<FieldDescriptor> {
        let s = src.trim();
        if s.starts_with('{') {
            let d: FieldDescriptor =
                serde_json::from_str(s).map_err(|e| perr(e.column().saturating_sub(1), e.to_string()))?;
            d.validate()?;
            return Ok(d);
        }
        let b = s.as_bytes();
        if b.first() != Some(&b'F') {
            return Err(perr(0, "expected 'F<q>'"));
        }
        let mut i = 1;
        while i < b.len() && b[i].is_ascii_digit() {
            i += 1;
        }
        let q: u64 = s[1..i].parse().map_err(|_| perr(1, "expected field size after 'F'"))?;
        let (p, e) = prime_power(q).ok_or_else(|| perr(1, format!("{q} is not a prime power")))?;
        let mut layers = vec![if e == 1 { Layer::Prime } else { Layer::Galois { e } }];
        while i < b.len() {
            if s[i..].starts_with("((") {
                let end = s[i..].find("))").ok_or_else(|| perr(i, "expected '))'"))? + i;
                let var = s[i + 2..end].trim().to_string();
                if !valid_ident(&var) {
                    return Err(perr(i + 2, "expected a variable name"));
                }
                layers.push(Layer::Laurent { var });
                i = end + 2;
            } else if b[i] == b'(' {
                let end = s[i..].find(')').ok_or_else(|| perr(i, "expected ')'"))? + i;
                let vars: Vec<String> = s[i + 1..end].split(',').map(|v| v.trim().to_string()).collect();
                if let Some(bad) = vars.iter().find(|v| !valid_ident(v)) {
                    return Err(perr(i + 1, format!("invalid variable name '{bad}'")));
                }
                i = end + 1;
                if s[i..].starts_with("^perf") {
                    layers.push(Layer::Perfection { vars });
                    i += 5;
                } else {
                    layers.push(Layer::Rational { vars });
                }
            } else {
                return Err(perr(i, "expected '(' or '(('"));
            }
        }
        let d = FieldDescriptor { p, layers };
        d.validate()?;
        Ok(d)
    }

    pub fn validate(&self) -> Result<()> {
        if !super::fq::is_prime(self.p as u64) {
            return Err(Error::UnsupportedRing(format!("{} is not prime", self.p)));
        }
        match self.layers.first() {
            Some(Layer::Prime) | Some(Layer::Galois { .. }) => {}
            _ => return Err(Error::UnsupportedRing("bottom layer must be a finite field".into())),
        }
        let mut seen_laurent = false;
        let mut seen_function = false;
        let mut names: Vec<&str> = Vec::new();
        for layer in &self.layers[1..] {
            match layer {
                Layer::Prime | Layer::Galois { .. } => {
                    return Err(Error::UnsupportedRing("finite field above the bottom layer".into()))
                }
                Layer::Rational { vars } | Layer::Perfection { vars } => {
                    if seen_laurent || seen_function {
                        return Err(Error::UnsupportedRing(
                            "function-field layer must sit directly over the finite field".into(),
                        ));
                    }
                    seen_function = true;
                    names.extend(vars.iter().map(|v| v.as_str()));
                }
                Layer::Laurent { var } => {
                    seen_laurent = true;
                    names.push(var);
                }
            }
        }
        let mut sorted = names.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != names.len() {
            return Err(Error::UnsupportedRing("repeated variable name".into()));
        }
        if names.contains(&"g") || names.contains(&"O") {
            return Err(Error::UnsupportedRing("'g' and 'O' are reserved names".into()));
        }
        Ok(())
    }

    pub fn q(&self) -> u32 {
        match self.layers[0] {
            Layer::Galois { e } => self.p.pow(e),
            _ => self.p,
        }
    }

    pub fn to_ring(&self) -> Result<Ring> {
        self.to_ring_with_window(DEFAULT_WINDOW)
    }

    pub fn to_ring_with_window(&self, window: i64) -> Result<Ring> {
        self.validate()?;
        let e = match self.layers[0] {
            Layer::Galois { e } => e,
            _ => 1,
        };
        let fq = FqCtx::new(self.p, e)?;
        let mut ring = Ring::Fq(fq.clone());
        for layer in &self.layers[1..] {
            ring = match layer {
                Layer::Rational { vars } => {
                    Ring::rational(fq.clone(), &vars.iter().map(|s| s.as_str()).collect::<Vec<_>>())
                }
                Layer::Perfection { vars } => {
                    Ring::perfection(fq.clone(), &vars.iter().map(|s| s.as_str()).collect::<Vec<_>>())
                }
                Layer::Laurent { var } => Ring::laurent_with_window(ring, var, window),
                _ => unreachable!(),
            };
        }
        Ok(ring)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("descriptor serializes")
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}", self.q())?;
        for layer in &self.layers[1..] {
            match layer {
                Layer::Rational { vars } => write!(f, "({})", vars.join(","))?,
                Layer::Perfection { vars } => write!(f, "({})^perf", vars.join(","))?,
                Layer::Laurent { var } => write!(f, "(({var}))")?,
                _ => {}
            }
        }
        Ok(())
    }
}

fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut e = 0;
    let mut r = q;
    while r.is_multiple_of(p) {
        r /= p;
        e += 1;
    }
    (r == 1).then_some((p as u32, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn string_forms() {
        let d = FieldDescriptor::parse("F2(u)((t))").unwrap();
        assert_eq!(d.p, 2);
        assert_eq!(d.to_string(), "F2(u)((t))");
        let r = d.to_ring().unwrap();
        assert_eq!(r.laurent_depth(), 1);
        let d4 = FieldDescriptor::parse("F4((t1))((t2))").unwrap();
        assert_eq!(d4.layers[0], Layer::Galois { e: 2 });
        assert!(FieldDescriptor::parse("F6((t))").is_err());
        assert!(FieldDescriptor::parse("F2((t))(u)").is_err());
    }

    #[test]
    fn json_form() {
        let src = r#"{"p":2,"layers":[{"kind":"galois","e":1},{"kind":"rational","vars":["u"]},{"kind":"laurent","var":"t"}]}"#;
        let d = FieldDescriptor::parse(src).unwrap();
        assert_eq!(d.to_string(), "F2(u)((t))");
        let back = FieldDescriptor::parse(&d.to_json()).unwrap();
        assert_eq!(back.to_ring().unwrap().describe(), d.to_ring().unwrap().describe());
    }
}
