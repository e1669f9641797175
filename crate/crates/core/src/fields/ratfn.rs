//! Rational function fields `F_q(v_1, ..., v_k)` and their perfections.
//!
//! A perfect element carries a level `r`: it is a rational function in the
//! roots `v_i^(1/p^r)`. Levels are raised lazily when a p-th root is taken
//! and lowered again whenever every exponent is divisible by `p`.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::fq::FqCtx;
use super::upoly;
use crate::error::{Error, Result};

/// Sparse multivariate polynomial: exponent vector -> nonzero coefficient.
pub type MPoly = BTreeMap<Vec<u32>, u32>;

#[derive(Debug)]
pub struct RatCtx {
    pub fq: Arc<FqCtx>,
    pub vars: Vec<String>,
    pub perfect: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFn {
    pub level: u32,
    pub num: MPoly,
    pub den: MPoly,
}

fn mono_one(n: usize) -> Vec<u32> {
    vec![0; n]
}

impl RatCtx {
    pub fn new(fq: Arc<FqCtx>, vars: Vec<String>, perfect: bool) -> Self {
        RatCtx { fq, vars, perfect }
    }

    fn nv(&self) -> usize {
        self.vars.len()
    }

    // ---- polynomial helpers ----

    pub fn poly_const(&self, c: u32) -> MPoly {
        let mut m = MPoly::new();
        if c != 0 {
            m.insert(mono_one(self.nv()), c);
        }
        m
    }

    pub fn poly_add(&self, a: &MPoly, b: &MPoly) -> MPoly {
        let f = &self.fq;
        let mut out = a.clone();
        for (k, &c) in b {
            let e = out.entry(k.clone()).or_insert(0);
            *e = f.add(*e, c);
            if *e == 0 {
                out.remove(k);
            }
        }
        out
    }

    pub fn poly_neg(&self, a: &MPoly) -> MPoly {
        a.iter().map(|(k, &c)| (k.clone(), self.fq.neg(c))).collect()
    }

    pub fn poly_mul(&self, a: &MPoly, b: &MPoly) -> MPoly {
        let f = &self.fq;
        let mut out = MPoly::new();
        for (ka, &ca) in a {
            for (kb, &cb) in b {
                let k: Vec<u32> = ka.iter().zip(kb).map(|(x, y)| x + y).collect();
                let e = out.entry(k).or_insert(0);
                *e = f.add(*e, f.mul(ca, cb));
            }
        }
        out.retain(|_, c| *c != 0);
        out
    }

    fn poly_scale(&self, a: &MPoly, c: u32) -> MPoly {
        if c == 0 {
            return MPoly::new();
        }
        a.iter().map(|(k, &x)| (k.clone(), self.fq.mul(x, c))).collect()
    }

    fn poly_pow(&self, a: &MPoly, k: u64) -> MPoly {
        let mut acc = self.poly_const(1);
        let mut base = a.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.poly_mul(&acc, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.poly_mul(&base, &base);
            }
        }
        acc
    }

    /// Exact division `a / b` if `b` divides `a`.
    pub fn poly_div_exact(&self, a: &MPoly, b: &MPoly) -> Option<MPoly> {
        let f = &self.fq;
        let (lb, &lc) = b.iter().next_back()?;
        let lc_inv = f.inv(lc).ok()?;
        let mut r = a.clone();
        let mut q = MPoly::new();
        while let Some((lr, &cr)) = r.iter().next_back() {
            if lr.iter().zip(lb).any(|(x, y)| x < y) {
                return None;
            }
            let k: Vec<u32> = lr.iter().zip(lb).map(|(x, y)| x - y).collect();
            let c = f.mul(cr, lc_inv);
            let mut t = MPoly::new();
            t.insert(k.clone(), c);
            r = self.poly_add(&r, &self.poly_neg(&self.poly_mul(&t, b)));
            *q.entry(k).or_insert(0) = c;
        }
        Some(q)
    }

    fn poly_lift(&self, a: &MPoly, factor: u32) -> MPoly {
        a.iter().map(|(k, &c)| (k.iter().map(|x| x * factor).collect(), c)).collect()
    }

    pub fn to_upoly(a: &MPoly) -> upoly::UPoly {
        let mut out = Vec::new();
        for (k, &c) in a {
            let d = k[0] as usize;
            if out.len() <= d {
                out.resize(d + 1, 0);
            }
            out[d] = c;
        }
        upoly::trim(out)
    }

    pub fn from_upoly(a: &upoly::UPoly) -> MPoly {
        a.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, &c)| (vec![i as u32], c)).collect()
    }

    // ---- field elements ----

    pub fn zero(&self) -> RatFn {
        RatFn { level: 0, num: MPoly::new(), den: self.poly_const(1) }
    }

    pub fn constant(&self, c: u32) -> RatFn {
        RatFn { level: 0, num: self.poly_const(c), den: self.poly_const(1) }
    }

    pub fn var(&self, i: usize) -> RatFn {
        let mut k = mono_one(self.nv());
        k[i] = 1;
        let mut num = MPoly::new();
        num.insert(k, 1);
        RatFn { level: 0, num, den: self.poly_const(1) }
    }

    pub fn from_poly(&self, num: MPoly) -> RatFn {
        self.normalize(RatFn { level: 0, num, den: self.poly_const(1) })
    }

    pub fn from_parts(&self, num: MPoly, den: MPoly) -> Result<RatFn> {
        if den.is_empty() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.normalize(RatFn { level: 0, num, den }))
    }

    pub fn is_zero(&self, a: &RatFn) -> bool {
        a.num.is_empty()
    }

    fn normalize(&self, mut a: RatFn) -> RatFn {
        if a.num.is_empty() {
            return self.zero();
        }
        let n = self.nv();
        // cancel common monomial content
        if n > 0 {
            let mut m = vec![u32::MAX; n];
            for k in a.num.keys().chain(a.den.keys()) {
                for (i, &x) in k.iter().enumerate() {
                    m[i] = m[i].min(x);
                }
            }
            if m.iter().any(|&x| x > 0) {
                let shift = |p: &MPoly| -> MPoly {
                    p.iter().map(|(k, &c)| (k.iter().zip(&m).map(|(x, y)| x - y).collect(), c)).collect()
                };
                a.num = shift(&a.num);
                a.den = shift(&a.den);
            }
        }
        if n == 1 && a.den.len() > 1 {
            let (un, ud) = (Self::to_upoly(&a.num), Self::to_upoly(&a.den));
            let g = upoly::gcd(&self.fq, &un, &ud);
            if g.len() > 1 {
                a.num = Self::from_upoly(&upoly::divrem(&self.fq, &un, &g).0);
                a.den = Self::from_upoly(&upoly::divrem(&self.fq, &ud, &g).0);
            }
        } else if a.den.len() > 1 {
            if let Some(q) = self.poly_div_exact(&a.num, &a.den) {
                a.num = q;
                a.den = self.poly_const(1);
            }
        }
        // monic denominator
        let lc = *a.den.values().next_back().unwrap();
        if lc != 1 {
            let inv = self.fq.inv(lc).unwrap();
            a.num = self.poly_scale(&a.num, inv);
            a.den = self.poly_scale(&a.den, inv);
        }
        // lower the perfection level when possible
        let p = self.fq.p();
        while a.level > 0 && a.num.keys().chain(a.den.keys()).all(|k| k.iter().all(|x| x % p == 0)) {
            a.num = a.num.iter().map(|(k, &c)| (k.iter().map(|x| x / p).collect(), c)).collect();
            a.den = a.den.iter().map(|(k, &c)| (k.iter().map(|x| x / p).collect(), c)).collect();
            a.level -= 1;
        }
        a
    }

    /// Bring both operands to a common perfection level.
    fn align(&self, a: &RatFn, b: &RatFn) -> (RatFn, RatFn, u32) {
        let l = a.level.max(b.level);
        let p = self.fq.p();
        let lift = |x: &RatFn| -> RatFn {
            let f = p.pow(l - x.level);
            if f == 1 {
                x.clone()
            } else {
                RatFn { level: l, num: self.poly_lift(&x.num, f), den: self.poly_lift(&x.den, f) }
            }
        };
        (lift(a), lift(b), l)
    }

    pub fn add(&self, a: &RatFn, b: &RatFn) -> RatFn {
        if a.num.is_empty() {
            return b.clone();
        }
        if b.num.is_empty() {
            return a.clone();
        }
        let (a, b, level) = self.align(a, b);
        let (num, den) = if a.den == b.den {
            (self.poly_add(&a.num, &b.num), a.den.clone())
        } else if let Some(q) = self.poly_div_exact(&b.den, &a.den) {
            (self.poly_add(&self.poly_mul(&a.num, &q), &b.num), b.den.clone())
        } else if let Some(q) = self.poly_div_exact(&a.den, &b.den) {
            (self.poly_add(&a.num, &self.poly_mul(&b.num, &q)), a.den.clone())
        } else {
            (
                self.poly_add(&self.poly_mul(&a.num, &b.den), &self.poly_mul(&b.num, &a.den)),
                self.poly_mul(&a.den, &b.den),
            )
        };
        self.normalize(RatFn { level, num, den })
    }

    pub fn neg(&self, a: &RatFn) -> RatFn {
        RatFn { level: a.level, num: self.poly_neg(&a.num), den: a.den.clone() }
    }

    pub fn sub(&self, a: &RatFn, b: &RatFn) -> RatFn {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &RatFn, b: &RatFn) -> RatFn {
        if a.num.is_empty() || b.num.is_empty() {
            return self.zero();
        }
        let (a, b, level) = self.align(a, b);
        // cross-cancel before multiplying
        let (mut an, mut ad, mut bn, mut bd) = (a.num, a.den, b.num, b.den);
        if bd.len() > 1 || bd.keys().next().is_some_and(|k| k.iter().any(|&x| x > 0)) {
            if let Some(q) = self.poly_div_exact(&an, &bd) {
                an = q;
                bd = self.poly_const(1);
            }
        }
        if ad.len() > 1 || ad.keys().next().is_some_and(|k| k.iter().any(|&x| x > 0)) {
            if let Some(q) = self.poly_div_exact(&bn, &ad) {
                bn = q;
                ad = self.poly_const(1);
            }
        }
        let num = self.poly_mul(&an, &bn);
        let den = self.poly_mul(&ad, &bd);
        self.normalize(RatFn { level, num, den })
    }

    pub fn inv(&self, a: &RatFn) -> Result<RatFn> {
        if a.num.is_empty() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.normalize(RatFn { level: a.level, num: a.den.clone(), den: a.num.clone() }))
    }

    pub fn eq(&self, a: &RatFn, b: &RatFn) -> bool {
        let (a, b, _) = self.align(a, b);
        self.poly_mul(&a.num, &b.den) == self.poly_mul(&b.num, &a.den)
    }

    pub fn pow(&self, a: &RatFn, k: u64) -> RatFn {
        self.normalize(RatFn { level: a.level, num: self.poly_pow(&a.num, k), den: self.poly_pow(&a.den, k) })
    }

    /// `a^p`: exponents times p, coefficients Frobenius-twisted.
    pub fn frobenius(&self, a: &RatFn) -> RatFn {
        let p = self.fq.p();
        let tw = |m: &MPoly| -> MPoly {
            m.iter().map(|(k, &c)| (k.iter().map(|x| x * p).collect(), self.fq.frob(c))).collect()
        };
        self.normalize(RatFn { level: a.level, num: tw(&a.num), den: tw(&a.den) })
    }

    pub fn is_pth_power(&self, a: &RatFn) -> bool {
        if self.perfect || a.num.is_empty() {
            return true;
        }
        let p = self.fq.p();
        let t = self.poly_mul(&a.num, &self.poly_pow(&a.den, (p - 1) as u64));
        t.keys().all(|k| k.iter().all(|x| x % p == 0))
    }

    pub fn pth_root(&self, a: &RatFn) -> Result<RatFn> {
        if a.num.is_empty() {
            return Ok(self.zero());
        }
        let p = self.fq.p();
        let untw = |m: &MPoly| -> MPoly { m.iter().map(|(k, &c)| (k.clone(), self.fq.frob_inv(c))).collect() };
        if self.perfect {
            return Ok(self.normalize(RatFn { level: a.level + 1, num: untw(&a.num), den: untw(&a.den) }));
        }
        let t = self.poly_mul(&a.num, &self.poly_pow(&a.den, (p - 1) as u64));
        if !t.keys().all(|k| k.iter().all(|x| x % p == 0)) {
            return Err(Error::NotAPthPower(self.render(a)));
        }
        let root: MPoly = t.iter().map(|(k, &c)| (k.iter().map(|x| x / p).collect(), self.fq.frob_inv(c))).collect();
        Ok(self.normalize(RatFn { level: 0, num: root, den: a.den.clone() }))
    }

    fn poly_partial(&self, a: &MPoly, i: usize) -> MPoly {
        let mut out = MPoly::new();
        for (k, &c) in a {
            if k[i] == 0 {
                continue;
            }
            let coeff = self.fq.mul(c, self.fq.from_i64(k[i] as i64));
            if coeff == 0 {
                continue;
            }
            let mut k2 = k.clone();
            k2[i] -= 1;
            out.insert(k2, coeff);
        }
        out
    }

    /// Partial derivative with respect to variable `i` (imperfect fields only).
    pub fn partial(&self, a: &RatFn, i: usize) -> RatFn {
        if self.perfect || a.num.is_empty() {
            return self.zero();
        }
        let num = self.poly_add(
            &self.poly_mul(&self.poly_partial(&a.num, i), &a.den),
            &self.poly_neg(&self.poly_mul(&a.num, &self.poly_partial(&a.den, i))),
        );
        let den = self.poly_mul(&a.den, &a.den);
        self.normalize(RatFn { level: 0, num, den })
    }

    /// Monomial `c * prod v_i^(k_i / p^level)`.
    pub fn monomial(&self, c: u32, exps: &[u32], level: u32) -> RatFn {
        let mut num = MPoly::new();
        if c != 0 {
            num.insert(exps.to_vec(), c);
        }
        self.normalize(RatFn { level, num, den: self.poly_const(1) })
    }

    /// Apply a coefficient map `F_q -> F_q'` into another rational context with
    /// the same variables.
    pub fn map_coeffs(&self, target: &RatCtx, a: &RatFn, f: &dyn Fn(u32) -> u32) -> RatFn {
        let m = |p: &MPoly| -> MPoly { p.iter().map(|(k, &c)| (k.clone(), f(c))).filter(|(_, c)| *c != 0).collect() };
        target.normalize(RatFn { level: a.level, num: m(&a.num), den: m(&a.den) })
    }

    pub fn is_constant(&self, a: &RatFn) -> Option<u32> {
        if a.num.is_empty() {
            return Some(0);
        }
        if a.den.len() == 1 && a.num.len() == 1 {
            let (kn, &cn) = a.num.iter().next().unwrap();
            let (kd, &cd) = a.den.iter().next().unwrap();
            if kn.iter().all(|&x| x == 0) && kd.iter().all(|&x| x == 0) {
                return Some(self.fq.mul(cn, self.fq.inv(cd).unwrap()));
            }
        }
        None
    }

    fn render_poly(&self, m: &MPoly, level: u32) -> String {
        if m.is_empty() {
            return "0".into();
        }
        let pr = self.fq.p().pow(level);
        let mut parts = Vec::new();
        for (k, &c) in m.iter().rev() {
            let mut factors = Vec::new();
            for (i, &x) in k.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                let g = num_integer::gcd(x, pr);
                let (a, b) = (x / g, pr / g);
                let v = &self.vars[i];
                factors.push(match (a, b) {
                    (1, 1) => v.clone(),
                    (_, 1) => format!("{v}^{a}"),
                    _ => format!("{v}^({a}/{b})"),
                });
            }
            let cs = self.fq.render(c);
            let cs = if cs.contains('+') { format!("({cs})") } else { cs };
            if factors.is_empty() {
                parts.push(cs);
            } else if c == 1 {
                parts.push(factors.join("*"));
            } else {
                parts.push(format!("{cs}*{}", factors.join("*")));
            }
        }
        parts.join(" + ")
    }

    pub fn render(&self, a: &RatFn) -> String {
        let n = self.render_poly(&a.num, a.level);
        if a.den.len() == 1 && a.den.keys().next().unwrap().iter().all(|&x| x == 0) {
            return n;
        }
        let d = self.render_poly(&a.den, a.level);
        let n = if a.num.len() > 1 { format!("({n})") } else { n };
        format!("{n}/({d})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(vars: &[&str], perfect: bool) -> RatCtx {
        RatCtx::new(FqCtx::new(2, 1).unwrap(), vars.iter().map(|s| s.to_string()).collect(), perfect)
    }

    #[test]
    fn char_two_cancellation() {
        let c = ctx(&["u"], false);
        let u = c.var(0);
        assert!(c.is_zero(&c.add(&u, &u)));
    }

    #[test]
    fn pth_root_imperfect() {
        let c = ctx(&["u"], false);
        let u = c.var(0);
        let u2 = c.mul(&u, &u);
        assert!(c.eq(&c.pth_root(&u2).unwrap(), &u));
        assert!(matches!(c.pth_root(&u), Err(Error::NotAPthPower(_))));
        // (u^2 + 1) / u^4 is a square
        let x = c.mul(&c.add(&u2, &c.constant(1)), &c.inv(&c.mul(&u2, &u2)).unwrap());
        let r = c.pth_root(&x).unwrap();
        assert!(c.eq(&c.frobenius(&r), &x));
    }

    #[test]
    fn perfection_levels() {
        let c = ctx(&["u", "T"], true);
        let u = c.var(0);
        let r = c.pth_root(&u).unwrap();
        assert_eq!(r.level, 1);
        assert!(c.eq(&c.frobenius(&r), &u));
        assert_eq!(c.render(&r), "u^(1/2)");
        let s = c.add(&r, &c.var(1));
        assert!(c.eq(&c.sub(&s, &c.var(1)), &r));
        assert_eq!(c.sub(&s, &c.var(1)).level, 1);
    }

    #[test]
    fn univariate_reduction() {
        let c = ctx(&["x"], false);
        let x = c.var(0);
        let one = c.constant(1);
        let a = c.add(&x, &one);
        let q = c.mul(&c.mul(&a, &a), &c.inv(&a).unwrap());
        assert_eq!(q, a);
        assert!(c.eq(&c.partial(&c.mul(&x, &x), 0), &c.zero()));
    }
}
