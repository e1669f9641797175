//! Galois rings `W_n(F_q) = (Z/p^n)[X]/(f)` where `f` is the lift of the
//! defining polynomial of `F_q` whose roots are Teichmüller representatives.
//! With that choice the Frobenius automorphism is `X -> X^p`.

use std::sync::Arc;

use super::fq::FqCtx;
use crate::error::{Error, Result};

#[derive(Debug)]
pub struct GaloisRing {
    fq: Arc<FqCtx>,
    n: u32,
    p: u64,
    pn: u64,
    /// Monic modulus, low to high, length `e + 1`.
    modulus: Vec<u64>,
}

pub type GrElem = Vec<u64>;

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

impl GaloisRing {
    pub fn new(fq: Arc<FqCtx>, n: u32) -> Result<Arc<Self>> {
        let p = fq.p() as u64;
        let pn = p
            .checked_pow(n)
            .filter(|&m| m < (1u64 << 40))
            .ok_or_else(|| Error::UnsupportedRing(format!("W_{n}(F_{})", fq.size())))?;
        let e = fq.degree() as usize;
        let naive: Vec<u64> = fq.modulus().iter().map(|&c| c as u64).collect();
        let tmp = GaloisRing { fq: fq.clone(), n, p, pn, modulus: naive };
        // zeta = X^(q^(n-1)) is the Teichmüller lift of the generator
        let mut x = vec![0u64; e];
        if e == 1 {
            x[0] = (pn + p - tmp.modulus[0] % p) % pn; // constant root of X + m0
        } else {
            x[1] = 1;
        }
        let zeta = tmp.pow(&x, (fq.size() as u128).pow(n - 1));
        // f = prod_k (Y - zeta^(p^k)), computed in R[Y]
        let mut poly: Vec<GrElem> = vec![tmp.one()];
        let mut conj = zeta.clone();
        for _ in 0..e {
            let mut next = vec![tmp.zero(); poly.len() + 1];
            for (i, c) in poly.iter().enumerate() {
                next[i + 1] = tmp.add(&next[i + 1], c);
                next[i] = tmp.sub(&next[i], &tmp.mul(c, &conj));
            }
            poly = next;
            conj = tmp.pow(&conj, p as u128);
        }
        let mut modulus = Vec::with_capacity(e + 1);
        for c in &poly {
            if c[1..].iter().any(|&v| v != 0) {
                return Err(Error::UnsupportedRing("Teichmüller modulus not rational".into()));
            }
            modulus.push(c[0]);
        }
        Ok(Arc::new(GaloisRing { fq, n, p, pn, modulus }))
    }

    pub fn fq(&self) -> &Arc<FqCtx> {
        &self.fq
    }
    pub fn length(&self) -> u32 {
        self.n
    }
    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn char_modulus(&self) -> u64 {
        self.pn
    }
    fn e(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn zero(&self) -> GrElem {
        vec![0; self.e()]
    }
    pub fn one(&self) -> GrElem {
        self.from_i64(1)
    }
    pub fn from_i64(&self, k: i64) -> GrElem {
        let mut v = self.zero();
        v[0] = k.rem_euclid(self.pn as i64) as u64;
        v
    }
    pub fn add(&self, a: &GrElem, b: &GrElem) -> GrElem {
        a.iter().zip(b).map(|(x, y)| (x + y) % self.pn).collect()
    }
    pub fn neg(&self, a: &GrElem) -> GrElem {
        a.iter().map(|x| (self.pn - x) % self.pn).collect()
    }
    pub fn sub(&self, a: &GrElem, b: &GrElem) -> GrElem {
        self.add(a, &self.neg(b))
    }
    pub fn mul(&self, a: &GrElem, b: &GrElem) -> GrElem {
        let e = self.e();
        let m = self.pn;
        let mut prod = vec![0u64; 2 * e];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + mulmod(x, y, m)) % m;
            }
        }
        for k in (e..prod.len()).rev() {
            let c = prod[k];
            if c != 0 {
                prod[k] = 0;
                for i in 0..e {
                    let t = mulmod(c, self.modulus[i], m);
                    prod[k - e + i] = (prod[k - e + i] + m - t) % m;
                }
            }
        }
        prod.truncate(e);
        prod
    }
    pub fn pow(&self, a: &GrElem, mut k: u128) -> GrElem {
        let mut acc = self.one();
        let mut base = a.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            k >>= 1;
        }
        acc
    }
    pub fn is_zero(&self, a: &GrElem) -> bool {
        a.iter().all(|&x| x == 0)
    }
    /// Reduction modulo p.
    pub fn reduce(&self, a: &GrElem) -> u32 {
        let d: Vec<u32> = a.iter().map(|&x| (x % self.p) as u32).collect();
        self.fq.from_digits(&d)
    }
    /// Coefficientwise lift of an `F_q` element (not multiplicative).
    pub fn naive_lift(&self, c: u32) -> GrElem {
        self.fq.digits(c).into_iter().map(|d| d as u64).collect()
    }
    pub fn is_unit(&self, a: &GrElem) -> bool {
        self.reduce(a) != 0
    }
    pub fn inv(&self, a: &GrElem) -> Result<GrElem> {
        let r = self.reduce(a);
        if r == 0 {
            return Err(Error::DivisionByZero);
        }
        let mut y = self.naive_lift(self.fq.inv(r)?);
        let two = self.from_i64(2);
        for _ in 0..=self.n {
            y = self.mul(&y, &self.sub(&two, &self.mul(a, &y)));
        }
        Ok(y)
    }
    pub fn teichmuller(&self, c: u32) -> GrElem {
        let q = self.fq.size() as u128;
        self.pow(&self.naive_lift(c), q.pow(self.n - 1))
    }
    /// Frobenius automorphism, `X -> X^p`.
    pub fn frobenius(&self, a: &GrElem) -> GrElem {
        let e = self.e();
        let mut x = self.zero();
        if e > 1 {
            x[1] = 1;
        } else {
            return a.clone();
        }
        let xp = self.pow(&x, self.p as u128);
        let mut acc = self.zero();
        let mut pw = self.one();
        for &c in a.iter() {
            if c != 0 {
                acc = self.add(&acc, &self.mul(&pw, &self.from_i64(c as i64)));
            }
            pw = self.mul(&pw, &xp);
        }
        acc
    }
    /// `F^k` for any integer `k`.
    pub fn frobenius_pow(&self, a: &GrElem, k: i64) -> GrElem {
        let k = k.rem_euclid(self.e() as i64);
        let mut x = a.clone();
        for _ in 0..k {
            x = self.frobenius(&x);
        }
        x
    }
    pub fn inverse_frobenius(&self, a: &GrElem) -> GrElem {
        self.frobenius_pow(a, -1)
    }
    /// Standard Witt components `(x_0, ..., x_{n-1})` of an element.
    pub fn to_witt(&self, a: &GrElem) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.n as usize);
        let mut cur = a.clone();
        let mut scale = 1u64; // cur is divisible by `scale`
        for k in 0..self.n {
            let digit_vec: Vec<u32> = cur.iter().map(|&x| ((x / scale) % self.p) as u32).collect();
            let c = self.fq.from_digits(&digit_vec);
            out.push(self.fq.frob_pow(c, k as i64));
            let t = self.mul(&self.teichmuller(c), &self.from_i64(scale as i64));
            cur = self.sub(&cur, &t);
            scale *= self.p;
        }
        out
    }
    /// Inverse of [`GaloisRing::to_witt`].
    pub fn from_witt(&self, comps: &[u32]) -> GrElem {
        let mut acc = self.zero();
        let mut scale = 1i64;
        for (k, &x) in comps.iter().enumerate() {
            let c = self.fq.frob_pow(x, -(k as i64));
            acc = self.add(&acc, &self.mul(&self.teichmuller(c), &self.from_i64(scale)));
            scale *= self.p as i64;
        }
        acc
    }
    pub fn render(&self, a: &GrElem) -> String {
        if self.e() == 1 {
            return a[0].to_string();
        }
        let mut parts = Vec::new();
        for (i, &c) in a.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "X".into(),
                _ => format!("X^{i}"),
            };
            parts.push(match (c, mono.is_empty()) {
                (_, true) => c.to_string(),
                (1, false) => mono,
                _ => format!("{c}*{mono}"),
            });
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z_mod_4() {
        let gr = GaloisRing::new(FqCtx::new(2, 1).unwrap(), 2).unwrap();
        let two = gr.from_i64(2);
        let three = gr.from_i64(3);
        assert!(gr.is_zero(&gr.add(&two, &two)));
        assert_eq!(gr.mul(&three, &three), gr.one());
        for k in 0..4 {
            let a = gr.from_i64(k);
            assert_eq!(gr.frobenius(&a), a);
        }
    }

    #[test]
    fn teichmuller_of_generator_has_order_three() {
        let f4 = FqCtx::new(2, 2).unwrap();
        let gr = GaloisRing::new(f4.clone(), 2).unwrap();
        let t = gr.teichmuller(f4.generator());
        assert_ne!(t, gr.one());
        assert_eq!(gr.pow(&t, 3), gr.one());
        assert_eq!(gr.reduce(&t), f4.generator());
    }

    #[test]
    fn frobenius_is_automorphism_and_invertible() {
        let f8 = FqCtx::new(2, 3).unwrap();
        let gr = GaloisRing::new(f8.clone(), 3).unwrap();
        let xs: Vec<GrElem> = (0..20u64).map(|k| (0..3).map(|i| (k * 7 + i * 5 + k * i) % 8).collect()).collect();
        for a in &xs {
            assert_eq!(gr.inverse_frobenius(&gr.frobenius(a)), *a);
            for b in &xs {
                assert_eq!(gr.frobenius(&gr.mul(a, b)), gr.mul(&gr.frobenius(a), &gr.frobenius(b)));
            }
            assert_eq!(gr.reduce(&gr.frobenius(a)), f8.frob(gr.reduce(a)));
        }
    }

    #[test]
    fn witt_round_trip() {
        let f4 = FqCtx::new(2, 2).unwrap();
        let gr = GaloisRing::new(f4, 2).unwrap();
        for a in 0..4u64 {
            for b in 0..4u64 {
                let x = vec![a, b];
                assert_eq!(gr.from_witt(&gr.to_witt(&x)), x);
            }
        }
        // 2 in Z/4 is V(1): components (0, 1)
        let gr2 = GaloisRing::new(FqCtx::new(2, 1).unwrap(), 2).unwrap();
        assert_eq!(gr2.to_witt(&gr2.from_i64(2)), vec![0, 1]);
    }
}
