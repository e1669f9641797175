//! Universal Witt structure polynomials over Z, solved from ghost identities
//! and cached per `(p, n, operation)`.
//!
//! Variables are `X_0..X_{n-1}, Y_0..Y_{n-1}` in standard indexing, where
//! ghost component `w_k = sum_{i<=k} p^i X_i^(p^(k-i))`.

use std::collections::{BTreeMap, HashMap};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::fields::ring::{Elem, Ring};

/// Integer polynomial: exponent vector to coefficient.
pub type ZPoly = BTreeMap<Vec<u32>, BigInt>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Op {
    Add,
    Neg,
    Mul,
}

static CAP_N: AtomicUsize = AtomicUsize::new(4);

/// Largest Witt length for which structure polynomials are derived.
pub fn cap_n() -> usize {
    CAP_N.load(Ordering::Relaxed)
}

pub fn set_cap_n(n: usize) {
    CAP_N.store(n.max(1), Ordering::Relaxed);
}

fn padd(a: &mut ZPoly, b: &ZPoly, scale: &BigInt) {
    for (k, c) in b {
        let e = a.entry(k.clone()).or_insert_with(BigInt::zero);
        *e += c * scale;
        if e.is_zero() {
            a.remove(k);
        }
    }
}

fn pmul(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let mut out = ZPoly::new();
    for (ka, ca) in a {
        for (kb, cb) in b {
            let k: Vec<u32> = ka.iter().zip(kb).map(|(x, y)| x + y).collect();
            let e = out.entry(k.clone()).or_insert_with(BigInt::zero);
            *e += ca * cb;
            if e.is_zero() {
                out.remove(&k);
            }
        }
    }
    out
}

fn ppow(a: &ZPoly, mut k: u64, nvars: usize) -> ZPoly {
    let mut acc = ZPoly::new();
    acc.insert(vec![0; nvars], BigInt::one());
    let mut base = a.clone();
    while k > 0 {
        if k & 1 == 1 {
            acc = pmul(&acc, &base);
        }
        k >>= 1;
        if k > 0 {
            base = pmul(&base, &base);
        }
    }
    acc
}

fn var(i: usize, nvars: usize) -> ZPoly {
    let mut e = vec![0; nvars];
    e[i] = 1;
    let mut m = ZPoly::new();
    m.insert(e, BigInt::one());
    m
}

/// Ghost component `w_k` of the variable block starting at `offset`.
fn ghost_poly(p: u64, k: usize, offset: usize, nvars: usize) -> ZPoly {
    let mut out = ZPoly::new();
    for i in 0..=k {
        let term = ppow(&var(offset + i, nvars), p.pow((k - i) as u32), nvars);
        padd(&mut out, &term, &BigInt::from(p).pow(i as u32));
    }
    out
}

/// Solve `w_k(S) = target_k` for `k < n`.
fn solve(p: u64, n: usize, targets: &[ZPoly], nvars: usize) -> Result<Vec<ZPoly>> {
    let mut sols: Vec<ZPoly> = Vec::with_capacity(n);
    for k in 0..n {
        let mut rest = targets[k].clone();
        for (i, s) in sols.iter().enumerate() {
            let pw = ppow(s, p.pow((k - i) as u32), nvars);
            padd(&mut rest, &pw, &-BigInt::from(p).pow(i as u32));
        }
        let d = BigInt::from(p).pow(k as u32);
        let mut out = ZPoly::new();
        for (e, c) in rest {
            let (q, r) = c.div_rem(&d);
            if !r.is_zero() {
                return Err(Error::UnsupportedRing("ghost identity not integral".into()));
            }
            out.insert(e, q);
        }
        sols.push(out);
    }
    Ok(sols)
}

fn derive(p: u64, n: usize, op: Op) -> Result<Vec<ZPoly>> {
    let nvars = 2 * n;
    let targets: Vec<ZPoly> = (0..n)
        .map(|k| {
            let gx = ghost_poly(p, k, 0, nvars);
            match op {
                Op::Add => {
                    let mut g = gx;
                    padd(&mut g, &ghost_poly(p, k, n, nvars), &BigInt::one());
                    g
                }
                Op::Neg => {
                    let mut g = ZPoly::new();
                    padd(&mut g, &gx, &-BigInt::one());
                    g
                }
                Op::Mul => pmul(&gx, &ghost_poly(p, k, n, nvars)),
            }
        })
        .collect();
    solve(p, n, &targets, nvars)
}

type Key = (u64, usize, Op);
type Reduced = Vec<Vec<(Vec<u32>, i64)>>;

fn int_cache() -> &'static Mutex<HashMap<Key, Arc<Vec<ZPoly>>>> {
    static C: OnceLock<Mutex<HashMap<Key, Arc<Vec<ZPoly>>>>> = OnceLock::new();
    C.get_or_init(|| Mutex::new(HashMap::new()))
}

fn reduced_cache() -> &'static Mutex<HashMap<(Key, u64), Arc<Reduced>>> {
    static C: OnceLock<Mutex<HashMap<(Key, u64), Arc<Reduced>>>> = OnceLock::new();
    C.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Integer structure polynomials for `(p, n, op)`.
pub fn structure_polys(p: u64, n: usize, op: Op) -> Result<Arc<Vec<ZPoly>>> {
    if n > cap_n() {
        return Err(Error::CapExceeded(format!("Witt length {n} above cap {}", cap_n())));
    }
    let key = (p, n, op);
    if let Some(v) = int_cache().lock().unwrap().get(&key) {
        return Ok(v.clone());
    }
    let polys = Arc::new(derive(p, n, op)?);
    int_cache().lock().unwrap().insert(key, polys.clone());
    Ok(polys)
}

/// Structure polynomials with coefficients reduced modulo `m > 0`.
pub fn reduced_polys(p: u64, n: usize, op: Op, m: u64) -> Result<Arc<Reduced>> {
    let key = ((p, n, op), m);
    if let Some(v) = reduced_cache().lock().unwrap().get(&key) {
        return Ok(v.clone());
    }
    let ints = structure_polys(p, n, op)?;
    let bm = BigInt::from(m);
    let red: Reduced = ints
        .iter()
        .map(|poly| {
            poly.iter()
                .filter_map(|(e, c)| {
                    let r = c.mod_floor(&bm).to_i64().unwrap();
                    (r != 0).then(|| (e.clone(), r))
                })
                .collect()
        })
        .collect();
    let red = Arc::new(red);
    reduced_cache().lock().unwrap().insert(key, red.clone());
    Ok(red)
}

/// Evaluate a list of monomials `c * prod vals[v]^e[v]` in `ring`.
fn eval_terms<C>(ring: &Ring, terms: &[(Vec<u32>, C)], vals: &[Elem], coef: impl Fn(&C) -> Elem) -> Elem {
    let zero: Vec<bool> = vals.iter().map(|v| ring.is_exact_zero(v)).collect();
    let mut maxe = vec![0u32; vals.len()];
    for (e, _) in terms {
        for (m, &x) in maxe.iter_mut().zip(e) {
            *m = (*m).max(x);
        }
    }
    let powers: Vec<Vec<Elem>> = vals
        .iter()
        .enumerate()
        .map(|(v, x)| {
            let mut pw = vec![ring.one()];
            if !zero[v] {
                for _ in 0..maxe[v] {
                    let next = ring.mul(pw.last().unwrap(), x);
                    pw.push(next);
                }
            }
            pw
        })
        .collect();
    let mut acc = ring.zero();
    for (e, c) in terms {
        if e.iter().enumerate().any(|(v, &x)| x > 0 && zero[v]) {
            continue;
        }
        let mut term = coef(c);
        for (v, &x) in e.iter().enumerate() {
            if x > 0 {
                term = ring.mul(&powers[v][x as usize], &term);
            }
        }
        acc = ring.add(&acc, &term);
    }
    acc
}

/// Evaluate the `(p, n, op)` structure polynomials at `vals` in `ring`.
pub fn evaluate(ring: &Ring, p: u64, n: usize, op: Op, vals: &[Elem]) -> Result<Vec<Elem>> {
    let m = ring.characteristic();
    if m == 0 {
        let polys = structure_polys(p, n, op)?;
        Ok(polys
            .iter()
            .map(|poly| {
                let terms: Vec<(Vec<u32>, BigInt)> = poly.iter().map(|(e, c)| (e.clone(), c.clone())).collect();
                eval_terms(ring, &terms, vals, |c| ring.from_bigint(c))
            })
            .collect())
    } else {
        let polys = reduced_polys(p, n, op, m)?;
        Ok(polys.iter().map(|terms| eval_terms(ring, terms, vals, |&c| ring.from_i64(c))).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p2_sum_polys() {
        let s = structure_polys(2, 2, Op::Add).unwrap();
        // S_1 = X_1 + Y_1 - X_0 Y_0
        let mut expect = ZPoly::new();
        expect.insert(vec![0, 1, 0, 0], BigInt::one());
        expect.insert(vec![0, 0, 0, 1], BigInt::one());
        expect.insert(vec![1, 0, 1, 0], -BigInt::one());
        assert_eq!(s[1], expect);
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(structure_polys(2, cap_n() + 1, Op::Add), Err(Error::CapExceeded(_))));
    }
}
