//! Small finite fields `F_q`, `q = p^e`, with table-driven multiplication.
//!
//! An element is stored as the integer `sum_i d_i p^i` where `d_i` is the
//! coefficient of `g^i` and `g` is the class of `X` modulo the defining
//! polynomial. The defining polynomial is the smallest primitive one, so `g`
//! generates the multiplicative group.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

pub const MAX_FIELD_SIZE: u64 = 1 << 16;

pub struct FqCtx {
    p: u32,
    e: u32,
    q: u32,
    /// Monic defining polynomial, low to high, length `e + 1`.
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    add_tab: Option<Vec<u32>>,
}

impl fmt::Debug for FqCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.q)
    }
}

impl PartialEq for FqCtx {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.e == other.e && self.modulus == other.modulus
    }
}

impl Eq for FqCtx {}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn digits(mut x: u32, p: u32, e: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(e as usize);
    for _ in 0..e {
        out.push(x % p);
        x /= p;
    }
    out
}

fn undigits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Multiply two digit vectors modulo a monic polynomial over `F_p`.
fn slow_mul(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let e = modulus.len() - 1;
    let mut prod = vec![0u32; 2 * e];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for k in (e..prod.len()).rev() {
        let c = prod[k];
        if c != 0 {
            prod[k] = 0;
            for (i, &m) in modulus[..e].iter().enumerate() {
                prod[k - e + i] = (prod[k - e + i] + (p - (c * m) % p)) % p;
            }
        }
    }
    prod.truncate(e);
    prod
}

impl FqCtx {
    pub fn new(p: u32, e: u32) -> Result<Arc<Self>> {
        if !is_prime(p as u64) || e == 0 {
            return Err(Error::UnsupportedRing(format!("F_{p}^{e}")));
        }
        let q64 = (p as u64).pow(e);
        if q64 > MAX_FIELD_SIZE {
            return Err(Error::UnsupportedRing(format!("field of size {q64} too large")));
        }
        let q = q64 as u32;
        // search monic polynomials of degree e for one with X primitive
        // (for e = 1 this means X - c with c a primitive root)
        let mut modulus = None;
        for low in 0..q {
            let mut m = digits(low, p, e);
            m.push(1);
            if let Some((exp, log)) = Self::build_tables(p, e, q, &m) {
                modulus = Some((m, exp, log));
                break;
            }
        }
        let (modulus, exp, log) = modulus.ok_or_else(|| Error::UnsupportedRing("no primitive polynomial".into()))?;
        let mut ctx = FqCtx { p, e, q, modulus, exp, log, add_tab: None };
        if q <= 256 {
            let mut tab = vec![0u32; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    tab[(a * q + b) as usize] = ctx.add_slow(a, b);
                }
            }
            ctx.add_tab = Some(tab);
        }
        Ok(Arc::new(ctx))
    }

    fn build_tables(p: u32, e: u32, q: u32, m: &[u32]) -> Option<(Vec<u32>, Vec<u32>)> {
        // generator: X for e > 1, the constant -m0 for e = 1
        let g = if e == 1 { digits((p - m[0]) % p, p, 1) } else { digits(p, p, e) };
        let mut exp = Vec::with_capacity(q as usize);
        let mut log = vec![u32::MAX; q as usize];
        let mut cur = digits(1, p, e);
        for k in 0..(q - 1) {
            let c = undigits(&cur, p);
            if log[c as usize] != u32::MAX {
                return None;
            }
            log[c as usize] = k;
            exp.push(c);
            cur = slow_mul(&cur, &g, m, p);
        }
        if undigits(&cur, p) != 1 || log[0] != u32::MAX {
            return None;
        }
        Some((exp, log))
    }

    fn add_slow(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        let (mut a, mut b) = (a, b);
        let (mut out, mut place) = (0u32, 1u32);
        for _ in 0..self.e {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn degree(&self) -> u32 {
        self.e
    }
    pub fn size(&self) -> u32 {
        self.q
    }
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }
    /// The distinguished generator `g`.
    pub fn generator(&self) -> u32 {
        self.exp[1 % self.exp.len()]
    }
    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.q
    }

    pub fn digits(&self, x: u32) -> Vec<u32> {
        digits(x, self.p, self.e)
    }
    pub fn from_digits(&self, d: &[u32]) -> u32 {
        let mut v = d.to_vec();
        v.resize(self.e as usize, 0);
        undigits(&v, self.p)
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        match &self.add_tab {
            Some(t) => t[(a * self.q + b) as usize],
            None => self.add_slow(a, b),
        }
    }
    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if self.p == 2 {
            return a;
        }
        let d: Vec<u32> = self.digits(a).into_iter().map(|c| (self.p - c) % self.p).collect();
        undigits(&d, self.p)
    }
    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }
    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let s = (self.log[a as usize] as u64 + self.log[b as usize] as u64) % (self.q as u64 - 1);
        self.exp[s as usize]
    }
    pub fn inv(&self, a: u32) -> Result<u32> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        let l = self.log[a as usize];
        Ok(self.exp[((self.q - 1 - l) % (self.q - 1)) as usize])
    }
    pub fn pow(&self, a: u32, k: u64) -> u32 {
        if k == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let s = (self.log[a as usize] as u128 * k as u128) % (self.q as u128 - 1);
        self.exp[s as usize]
    }
    /// `a^(p^k)` for any integer `k` (negative `k` gives iterated p-th roots).
    pub fn frob_pow(&self, a: u32, k: i64) -> u32 {
        let k = k.rem_euclid(self.e as i64) as u32;
        self.pow(a, (self.p as u64).pow(k))
    }
    pub fn frob(&self, a: u32) -> u32 {
        self.pow(a, self.p as u64)
    }
    pub fn frob_inv(&self, a: u32) -> u32 {
        self.frob_pow(a, -1)
    }
    pub fn from_i64(&self, k: i64) -> u32 {
        k.rem_euclid(self.p as i64) as u32
    }
    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: u32) -> u32 {
        let l = self.log[a as usize];
        let n = self.q - 1;
        n / num_integer::gcd(l, n).max(1)
    }
    /// Absolute trace to `F_p`.
    pub fn trace(&self, a: u32) -> u32 {
        let mut acc = 0;
        let mut cur = a;
        for _ in 0..self.e {
            acc = self.add(acc, cur);
            cur = self.frob(cur);
        }
        acc
    }

    pub fn render(&self, a: u32) -> String {
        if self.e == 1 {
            return a.to_string();
        }
        let d = self.digits(a);
        let mut parts = Vec::new();
        for i in (0..d.len()).rev() {
            let c = d[i];
            if c == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "g".to_string(),
                _ => format!("g^{i}"),
            };
            parts.push(match (c, mono.is_empty()) {
                (_, true) => c.to_string(),
                (1, false) => mono,
                (_, false) => format!("{c}*{mono}"),
            });
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

/// A field embedding `F_q -> F_{q'}` given by the image of the source generator.
#[derive(Clone, Debug)]
pub struct FqEmbedding {
    pub src: Arc<FqCtx>,
    pub dst: Arc<FqCtx>,
    table: Vec<u32>,
}

impl FqEmbedding {
    /// Finds an embedding by searching for a root of the source defining polynomial.
    pub fn find(src: &Arc<FqCtx>, dst: &Arc<FqCtx>) -> Result<Self> {
        if src.p != dst.p || !dst.e.is_multiple_of(src.e) {
            return Err(Error::UnsupportedRing(format!("no embedding {:?} -> {:?}", src, dst)));
        }
        let root = dst
            .elements()
            .find(|&r| {
                let mut acc = 0u32;
                for &c in src.modulus.iter().rev() {
                    acc = dst.add(dst.mul(acc, r), dst.from_i64(c as i64));
                }
                acc == 0
            })
            .ok_or_else(|| Error::UnsupportedRing("no root of defining polynomial".into()))?;
        let table = src
            .elements()
            .map(|a| {
                let d = src.digits(a);
                let mut acc = 0u32;
                for &c in d.iter().rev() {
                    acc = dst.add(dst.mul(acc, root), dst.from_i64(c as i64));
                }
                acc
            })
            .collect();
        Ok(FqEmbedding { src: src.clone(), dst: dst.clone(), table })
    }

    pub fn identity(ctx: &Arc<FqCtx>) -> Self {
        FqEmbedding { src: ctx.clone(), dst: ctx.clone(), table: ctx.elements().collect() }
    }

    #[inline]
    pub fn apply(&self, a: u32) -> u32 {
        self.table[a as usize]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f4_generator_and_frobenius() {
        let f4 = FqCtx::new(2, 2).unwrap();
        let g = f4.generator();
        assert_eq!(f4.frob(g), f4.mul(g, g));
        assert_eq!(f4.pow(g, 3), 1);
        assert_eq!(f4.add(f4.mul(g, g), g), 1); // g^2 + g + 1 = 0
    }

    #[test]
    fn field_axioms_small() {
        for (p, e) in [(2, 1), (2, 3), (3, 2), (5, 1)] {
            let f = FqCtx::new(p, e).unwrap();
            for a in f.elements() {
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                }
                assert_eq!(f.frob_inv(f.frob(a)), a);
                for b in f.elements() {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    let c = f.generator();
                    assert_eq!(f.mul(f.add(a, b), c), f.add(f.mul(a, c), f.mul(b, c)));
                }
            }
        }
    }

    #[test]
    fn embedding_is_homomorphism() {
        let f4 = FqCtx::new(2, 2).unwrap();
        let f16 = FqCtx::new(2, 4).unwrap();
        let emb = FqEmbedding::find(&f4, &f16).unwrap();
        for a in f4.elements() {
            for b in f4.elements() {
                assert_eq!(emb.apply(f4.mul(a, b)), f16.mul(emb.apply(a), emb.apply(b)));
                assert_eq!(emb.apply(f4.add(a, b)), f16.add(emb.apply(a), emb.apply(b)));
            }
        }
    }
}
