//! Exhaustive search for `fil^F` levels on tiny instances: `p = 2`, `n <= 2`,
//! `K = F_q((t))` with `q` in `{2, 4}`.
//!
//! This deliberately shares nothing with the Witt-vector machinery: the
//! length-2 group law is hard-coded in characteristic 2 and polar parts are
//! dense coefficient arrays indexed by pole order.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fields::ring::{Elem, Ring};
use crate::fields::series::Series;
use crate::witt::{WittRing, WittVector};

#[derive(Clone, Copy, Debug)]
pub struct OracleBounds {
    /// Largest pole order allowed in any input component.
    pub max_pole: i64,
    /// Largest power of `F` in a decomposition.
    pub f_degree: u32,
    /// Cap on the number of enumerated decompositions.
    pub max_search: usize,
}

impl Default for OracleBounds {
    fn default() -> Self {
        OracleBounds { max_pole: 8, f_degree: 3, max_search: 1 << 22 }
    }
}

/// `F_2` or `F_4 = F_2[g]/(g^2 + g + 1)`, elements as 2-bit masks.
fn gf_mul(a: u8, b: u8) -> u8 {
    const T: [[u8; 4]; 4] = [[0, 0, 0, 0], [0, 1, 2, 3], [0, 2, 3, 1], [0, 3, 1, 2]];
    T[a as usize][b as usize]
}

/// Purely polar Laurent polynomial: `c[k]` is the coefficient of `t^-k`.
type Polar = Vec<u8>;

fn pole(a: &Polar) -> usize {
    a.iter().rposition(|&c| c != 0).unwrap_or(0)
}

fn padd(a: &Polar, b: &Polar) -> Polar {
    a.iter().zip(b).map(|(x, y)| x ^ y).collect()
}

fn pmul(a: &Polar, b: &Polar) -> Polar {
    let mut c = vec![0u8; a.len()];
    for (i, &x) in a.iter().enumerate().skip(1) {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate().skip(1) {
            if y != 0 && i + j < c.len() {
                c[i + j] ^= gf_mul(x, y);
            }
        }
    }
    c
}

fn psq(a: &Polar) -> Polar {
    let mut c = vec![0u8; a.len()];
    for (i, &x) in a.iter().enumerate() {
        if x != 0 && 2 * i < c.len() {
            c[2 * i] = gf_mul(x, x);
        }
    }
    c
}

/// Length-1 or length-2 Witt vector of polar parts, standard order.
#[derive(Clone, PartialEq, Eq, Hash)]
struct Tiny(Vec<Polar>);

impl Tiny {
    fn naive(&self) -> usize {
        match self.0.len() {
            1 => pole(&self.0[0]),
            _ => (2 * pole(&self.0[0])).max(pole(&self.0[1])),
        }
    }

    fn add(&self, o: &Tiny) -> Tiny {
        match self.0.len() {
            1 => Tiny(vec![padd(&self.0[0], &o.0[0])]),
            _ => Tiny(vec![padd(&self.0[0], &o.0[0]), padd(&padd(&self.0[1], &o.0[1]), &pmul(&self.0[0], &o.0[0]))]),
        }
    }

    fn neg(&self) -> Tiny {
        match self.0.len() {
            1 => self.clone(),
            _ => Tiny(vec![self.0[0].clone(), padd(&self.0[1], &psq(&self.0[0]))]),
        }
    }

    fn frob(&self) -> Tiny {
        Tiny(self.0.iter().map(psq).collect())
    }
}

/// All polar vectors over `F_q` whose standard component `k` has pole order
/// at most `bounds[k]`.
fn enumerate(q: u8, bounds: &[usize], len: usize) -> Vec<Tiny> {
    let mut out = vec![Tiny(vec![vec![0u8; len]; bounds.len()])];
    for (k, &b) in bounds.iter().enumerate() {
        for e in 1..=b {
            let mut next = Vec::with_capacity(out.len() * q as usize);
            for v in &out {
                for c in 0..q {
                    let mut w = v.clone();
                    w.0[k][e] = c;
                    next.push(w);
                }
            }
            out = next;
        }
    }
    out
}

type Key = (u8, usize, usize, u32);

/// `(-S, cost)` for every `S = sum_{j>=1} F^j(x_j)` with `F^j(x_j) ∈ fil_b`,
/// keeping the cheapest `max_j naive(x_j)` per distinct `S`.
fn shifts(q: u8, n: usize, b: usize, fdeg: u32, cap: usize) -> Result<Arc<Vec<(Tiny, usize)>>> {
    static CACHE: OnceLock<Mutex<HashMap<Key, Arc<Vec<(Tiny, usize)>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let key = (q, n, b, fdeg);
    if let Some(v) = cache.lock().unwrap().get(&key) {
        return Ok(v.clone());
    }
    let len = 2 * b + 2;
    let mut per_j: Vec<Vec<(Tiny, usize)>> = Vec::new();
    let mut total: usize = 1;
    for j in 1..=fdeg {
        let bounds: Vec<usize> = (0..n).map(|k| b >> (j as usize + n - 1 - k)).collect();
        let count: u32 = bounds.iter().map(|&x| x as u32).sum();
        total = total.saturating_mul((q as usize).saturating_pow(count));
        if total > cap {
            return Err(Error::SearchSpaceExceeded(format!("{total} decompositions exceed cap {cap}")));
        }
        per_j.push(
            enumerate(q, &bounds, len)
                .into_iter()
                .map(|x| {
                    let mut y = x.clone();
                    for _ in 0..j {
                        y = y.frob();
                    }
                    (y, x.naive())
                })
                .collect(),
        );
    }
    let mut best: HashMap<Tiny, usize> = HashMap::new();
    best.insert(Tiny(vec![vec![0u8; len]; n]), 0);
    for layer in &per_j {
        let mut next: HashMap<Tiny, usize> = HashMap::with_capacity(best.len() * layer.len());
        for (s, c) in &best {
            for (fy, cy) in layer {
                let v = s.add(fy);
                let cost = (*c).max(*cy);
                next.entry(v).and_modify(|e| *e = (*e).min(cost)).or_insert(cost);
            }
        }
        best = next;
    }
    let mut list: Vec<(Tiny, usize)> = best.into_iter().map(|(s, c)| (s.neg(), c)).collect();
    list.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0 .0.cmp(&b.0 .0)));
    let list = Arc::new(list);
    cache.lock().unwrap().insert(key, list.clone());
    Ok(list)
}

fn domain(w: &WittRing) -> Result<u8> {
    let bad = || Error::SearchSpaceExceeded(format!("oracle domain excludes W_{} over {}", w.n, w.base.describe()));
    if w.p != 2 || w.n > 2 || w.base.laurent_depth() != 1 {
        return Err(bad());
    }
    match w.base.base() {
        Some(Ring::Fq(f)) if f.degree() <= 2 => Ok(f.size() as u8),
        _ => Err(bad()),
    }
}

fn terms(w: &WittRing, e: &Elem) -> Result<Vec<(i64, u8)>> {
    let s: &Series = e.as_series();
    if !s.is_exact() {
        return Err(Error::PrecisionExhausted("oracle needs exact components".into()));
    }
    let base = w.base.base().unwrap();
    Ok(s.terms(base).map(|(k, c)| (k, c.as_fq() as u8)).collect())
}

fn to_polar(ts: &[(i64, u8)], len: usize) -> Polar {
    let mut out = vec![0u8; len];
    for &(k, c) in ts {
        if k < 0 {
            out[(-k) as usize] ^= c;
        }
    }
    out
}

/// Representative of `x mod W_n(O_K)` with purely polar components.
fn reduce_input(w: &WittRing, x: &WittVector, bounds: &OracleBounds) -> Result<Tiny> {
    let comps: Vec<Vec<(i64, u8)>> = x.comps.iter().map(|c| terms(w, c)).collect::<Result<_>>()?;
    for c in &comps {
        if c.iter().any(|&(k, _)| k < -bounds.max_pole) {
            return Err(Error::SearchSpaceExceeded(format!("pole order above {}", bounds.max_pole)));
        }
    }
    let len = 4 * bounds.max_pole as usize + 2;
    if comps.len() == 1 {
        return Ok(Tiny(vec![to_polar(&comps[0], len)]));
    }
    // (P + I, a) = [I] + (P, a + P*I) in characteristic 2
    let (pol, int): (Vec<_>, Vec<_>) = comps[0].iter().partition(|&&(k, _)| k < 0);
    let mut second = comps[1].clone();
    for &(i, a) in &pol {
        for &(j, b) in &int {
            second.push((i + j, gf_mul(a, b)));
        }
    }
    Ok(Tiny(vec![to_polar(&pol, len), to_polar(&second, len)]))
}

fn resize(x: &Tiny, len: usize) -> Tiny {
    Tiny(
        x.0.iter()
            .map(|c| {
                let mut v = c.clone();
                v.resize(len, 0);
                v
            })
            .collect(),
    )
}

/// Minimal `m` such that `x = sum_{j<=f_degree} F^j(x_j)` with every
/// `x_j ∈ fil_m`, searching decompositions whose Frobenius images stay in
/// `fil_{naive(x)}`.
pub fn brute_force_filf_level(w: &WittRing, x: &WittVector, bounds: &OracleBounds) -> Result<i64> {
    let q = domain(w)?;
    let tiny = reduce_input(w, x, bounds)?;
    let b = tiny.naive();
    if b == 0 {
        return Ok(0);
    }
    let list = shifts(q, w.n, b, bounds.f_degree, bounds.max_search)?;
    let x = resize(&tiny, 2 * b + 2);
    let eval = |(neg_s, cost): &(Tiny, usize)| x.add(neg_s).naive().max(*cost);
    let best =
        if list.len() > 4096 { list.par_iter().map(eval).min().unwrap() } else { list.iter().map(eval).min().unwrap() };
    Ok(best as i64)
}

/// Every purely polar `x ∈ W_n(F_q((t)))` with `naive(x) <= b`.
pub fn family(w: &WittRing, b: i64) -> Result<Vec<WittVector>> {
    let q = domain(w)?;
    let kappa = w.base.base().unwrap().clone();
    let bounds: Vec<usize> = (0..w.n).map(|k| (b as usize) >> (w.n - 1 - k)).collect();
    Ok(enumerate(q, &bounds, b as usize + 1)
        .into_iter()
        .map(|t| {
            WittVector::new(
                t.0.iter()
                    .map(|c| {
                        let ts: Vec<(i64, Elem)> = c
                            .iter()
                            .enumerate()
                            .filter(|(_, &v)| v != 0)
                            .map(|(k, &v)| (-(k as i64), kappa.from_fq(v as u32)))
                            .collect();
                        Elem::Ser(Series::from_terms(&kappa, &ts, None))
                    })
                    .collect(),
            )
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::parse::parse_witt;

    fn run(n: usize, src: &str) -> i64 {
        let k = Ring::laurent(Ring::fq(2, 1).unwrap(), "t");
        let w = WittRing::new(k.clone(), 2, n).unwrap();
        let x = w.from_comps(parse_witt(&k, src).unwrap()).unwrap();
        brute_force_filf_level(&w, &x, &OracleBounds::default()).unwrap()
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(run(2, "W(t^-2; 0)"), 2);
        assert_eq!(run(2, "W(t^-3; 0)"), 6);
        assert_eq!(run(1, "t^-5"), 5);
        assert_eq!(run(2, "W(0; t^-4)"), 1);
        assert_eq!(run(1, "t^-2 + t^-3 + 1 + t"), 3);
    }

    #[test]
    fn integral_part_of_first_component_is_absorbed() {
        // (t^-1 + 1, 0) = [1] + (t^-1, t^-1)
        assert_eq!(run(2, "W(t^-1 + 1; 0)"), run(2, "W(t^-1; t^-1)"));
    }

    #[test]
    fn outside_domain() {
        let k = Ring::laurent(Ring::fq(3, 1).unwrap(), "t");
        let w = WittRing::new(k.clone(), 3, 1).unwrap();
        assert!(matches!(
            brute_force_filf_level(&w, &w.zero(), &OracleBounds::default()),
            Err(Error::SearchSpaceExceeded(_))
        ));
    }
}
