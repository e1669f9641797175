//! Homomorphisms `⊕_i W_{n_i} -> ⊕_j W_{n'_j}` written as matrices of sums of
//! words in `F`, `V`, restriction `R` and Teichmüller-type scalars `[c]`.

use std::fmt;

use crate::error::{Error, Result};
use crate::fields::ring::Ring;

use super::vector::{WittRing, WittVector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Letter {
    F,
    V,
    /// Restriction `W_m -> W_{m-1}`.
    R,
    /// Multiplication by the Witt vector over the bottom finite field with
    /// these components (display order), padded with zeros if short.
    Scalar(Vec<u32>),
}

/// A composite, applied right to left like function composition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn id() -> Word {
        Word(Vec::new())
    }

    pub fn then(mut self, outer: Letter) -> Word {
        self.0.insert(0, outer);
        self
    }

    /// Length of the natural target for a source of length `n`.
    pub fn target_len(&self, n: usize) -> usize {
        self.0.iter().rev().fold(n, |m, l| match l {
            Letter::V => m + 1,
            Letter::R => m.saturating_sub(1),
            _ => m,
        })
    }

    pub fn apply(&self, w: &WittRing, x: &WittVector) -> Result<WittVector> {
        let mut cur = x.clone();
        for l in self.0.iter().rev() {
            let ring = w.with_len(cur.len())?;
            cur = match l {
                Letter::F => ring.frobenius(&cur)?,
                Letter::V => ring.verschiebung(&cur),
                Letter::R => {
                    if cur.len() <= 1 {
                        return Err(Error::ShapeMismatch("restriction below length 1".into()));
                    }
                    ring.restrict(&cur, cur.len() - 1)
                }
                Letter::Scalar(c) => {
                    let comps = (0..cur.len()).map(|i| w.base.from_fq(c.get(i).copied().unwrap_or(0))).collect();
                    ring.mul(&WittVector::new(comps), &cur)
                }
            };
        }
        Ok(cur)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "id");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|l| match l {
                Letter::F => "F".to_string(),
                Letter::V => "V".to_string(),
                Letter::R => "R".to_string(),
                Letter::Scalar(c) => {
                    format!("[{}]", c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
                }
            })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// Matrix of word sums; `entries[j][i]` maps source `i` to target `j`.
#[derive(Clone, Debug)]
pub struct HomWord {
    pub sources: Vec<usize>,
    pub targets: Vec<usize>,
    pub entries: Vec<Vec<Vec<Word>>>,
}

impl HomWord {
    /// A single word `W_n -> W_m`.
    pub fn single(n: usize, m: usize, w: Word) -> HomWord {
        HomWord { sources: vec![n], targets: vec![m], entries: vec![vec![vec![w]]] }
    }

    /// `x -> (w_1(x), ..., w_k(x))`.
    pub fn column(n: usize, words: Vec<(usize, Word)>) -> HomWord {
        HomWord {
            sources: vec![n],
            targets: words.iter().map(|(m, _)| *m).collect(),
            entries: words.into_iter().map(|(_, w)| vec![vec![w]]).collect(),
        }
    }

    /// Parse a `+`-separated sum of `*`-separated letters (`F`, `V`, `R`,
    /// `id`, `[c0,c1,...]`) as a map `W_n -> W_m`.
    pub fn parse(src: &str, n: usize, m: usize) -> Result<HomWord> {
        let mut words = Vec::new();
        for (wi, ws) in src.split('+').enumerate() {
            let mut letters = Vec::new();
            for tok in ws.split('*').map(|s| s.trim()) {
                letters.push(match tok {
                    "F" => Letter::F,
                    "V" => Letter::V,
                    "R" => Letter::R,
                    "id" => continue,
                    t if t.starts_with('[') && t.ends_with(']') => Letter::Scalar(
                        t[1..t.len() - 1]
                            .split(',')
                            .map(|c| c.trim().parse::<u32>())
                            .collect::<std::result::Result<_, _>>()
                            .map_err(|_| Error::Parse { pos: wi, msg: format!("bad scalar '{t}'") })?,
                    ),
                    t => return Err(Error::Parse { pos: wi, msg: format!("unknown letter '{t}'") }),
                });
            }
            words.push(Word(letters));
        }
        Ok(HomWord { sources: vec![n], targets: vec![m], entries: vec![vec![words]] })
    }

    pub fn apply(&self, base: &Ring, p: u32, xs: &[WittVector]) -> Result<Vec<WittVector>> {
        if xs.len() != self.sources.len() || xs.iter().zip(&self.sources).any(|(x, &n)| x.len() != n) {
            return Err(Error::ShapeMismatch("input shapes do not match the source".into()));
        }
        let mut out = Vec::with_capacity(self.targets.len());
        for (j, &m) in self.targets.iter().enumerate() {
            let wm = WittRing::new(base.clone(), p, m)?;
            let mut acc = wm.zero();
            for (i, x) in xs.iter().enumerate() {
                let wn = WittRing::new(base.clone(), p, x.len())?;
                for word in &self.entries[j][i] {
                    let mut y = word.apply(&wn, x)?;
                    if y.len() > m {
                        y = WittVector::new(y.comps[..m].to_vec());
                    } else if y.len() < m {
                        return Err(Error::ShapeMismatch(format!(
                            "word {word} lands in W_{} but the target is W_{m}",
                            y.len()
                        )));
                    }
                    acc = wm.add(&acc, &y);
                }
            }
            out.push(acc);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::parse::parse_elem;

    #[test]
    fn v_and_fv() {
        let k = Ring::laurent(Ring::fq(2, 1).unwrap(), "t");
        let x = WittVector::new(vec![parse_elem(&k, "t^-1").unwrap()]);
        let h = HomWord::parse("V", 1, 2).unwrap();
        let y = h.apply(&k, 2, std::slice::from_ref(&x)).unwrap();
        assert_eq!(WittRing::new(k.clone(), 2, 2).unwrap().render(&y[0]), "W(0; t^-1)");
        let fv = HomWord::parse("F*V", 1, 1).unwrap();
        let z = fv.apply(&k, 2, &[x]).unwrap();
        assert!(WittRing::new(k, 2, 1).unwrap().is_zero(&z[0]));
    }

    #[test]
    fn teichmuller_scalars_multiply() {
        let f4 = Ring::fq(2, 2).unwrap();
        let g = f4.variable("g").unwrap().as_fq();
        let w = WittRing::new(f4.clone(), 2, 2).unwrap();
        let h = HomWord::single(2, 2, Word(vec![Letter::Scalar(vec![g])]));
        let b = f4.mul(&f4.variable("g").unwrap(), &f4.variable("g").unwrap());
        let out = h.apply(&f4, 2, &[w.teichmuller(b.clone())]).unwrap();
        assert!(w.eq(&out[0], &w.teichmuller(f4.mul(&b, &f4.variable("g").unwrap()))));
    }
}
