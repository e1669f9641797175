//! Truncated Witt vectors `W_n(R)` over a dynamic coefficient ring.
//!
//! Components are stored left to right as displayed, `(a_{n-1}, ..., a_0)`.
//! The leftmost entry is the standard first coordinate: it is additive and
//! carries weight `p^{n-1}` in pole-order conditions. Storage index `k`
//! corresponds to the subscript `j = n - 1 - k`.

use crate::error::{Error, Result};
use crate::fields::parse::render_witt;
use crate::fields::ring::{Elem, Ring};

use super::polys::{evaluate, Op};

#[derive(Clone, Debug)]
pub struct WittVector {
    pub comps: Vec<Elem>,
}

impl WittVector {
    pub fn new(comps: Vec<Elem>) -> Self {
        WittVector { comps }
    }

    pub fn len(&self) -> usize {
        self.comps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.comps.is_empty()
    }

    /// Component with subscript `j` (so `j = n - 1` is the leftmost).
    pub fn sub(&self, j: usize) -> &Elem {
        &self.comps[self.comps.len() - 1 - j]
    }
}

/// `W_n` over `base`.
#[derive(Clone, Debug)]
pub struct WittRing {
    pub base: Ring,
    pub p: u32,
    pub n: usize,
}

impl WittRing {
    pub fn new(base: Ring, p: u32, n: usize) -> Result<WittRing> {
        if n == 0 {
            return Err(Error::ShapeMismatch("Witt length must be at least 1".into()));
        }
        if let Some(q) = base.char_p() {
            if q != p {
                return Err(Error::CharacteristicMismatch(format!("W over characteristic {q} with p = {p}")));
            }
        }
        if n > 1 {
            super::polys::structure_polys(p as u64, n, Op::Add)?;
        }
        Ok(WittRing { base, p, n })
    }

    /// Same base, different length.
    pub fn with_len(&self, n: usize) -> Result<WittRing> {
        WittRing::new(self.base.clone(), self.p, n)
    }

    pub fn zero(&self) -> WittVector {
        WittVector::new(vec![self.base.zero(); self.n])
    }

    pub fn one(&self) -> WittVector {
        self.teichmuller(self.base.one())
    }

    pub fn from_comps(&self, comps: Vec<Elem>) -> Result<WittVector> {
        if comps.len() != self.n {
            return Err(Error::ShapeMismatch(format!("expected {} components, got {}", self.n, comps.len())));
        }
        Ok(WittVector::new(comps))
    }

    /// `[a] = (a, 0, ..., 0)`.
    pub fn teichmuller(&self, a: Elem) -> WittVector {
        let mut comps = vec![self.base.zero(); self.n];
        comps[0] = a;
        WittVector::new(comps)
    }

    fn check(&self, x: &WittVector) {
        assert_eq!(x.len(), self.n, "Witt vector of length {} used in W_{}", x.len(), self.n);
    }

    fn binop(&self, op: Op, x: &WittVector, y: &WittVector) -> WittVector {
        self.check(x);
        self.check(y);
        let vals: Vec<Elem> = x.comps.iter().chain(y.comps.iter()).cloned().collect();
        let out = evaluate(&self.base, self.p as u64, self.n, op, &vals).expect("length validated at construction");
        WittVector::new(out)
    }

    pub fn add(&self, x: &WittVector, y: &WittVector) -> WittVector {
        if self.n == 1 {
            return WittVector::new(vec![self.base.add(&x.comps[0], &y.comps[0])]);
        }
        self.binop(Op::Add, x, y)
    }

    pub fn mul(&self, x: &WittVector, y: &WittVector) -> WittVector {
        if self.n == 1 {
            return WittVector::new(vec![self.base.mul(&x.comps[0], &y.comps[0])]);
        }
        self.binop(Op::Mul, x, y)
    }

    pub fn neg(&self, x: &WittVector) -> WittVector {
        self.check(x);
        if self.n == 1 || self.p != 2 {
            return WittVector::new(x.comps.iter().map(|c| self.base.neg(c)).collect());
        }
        let mut vals = x.comps.clone();
        vals.extend(vec![self.base.zero(); self.n]);
        WittVector::new(evaluate(&self.base, self.p as u64, self.n, Op::Neg, &vals).unwrap())
    }

    pub fn sub(&self, x: &WittVector, y: &WittVector) -> WittVector {
        self.add(x, &self.neg(y))
    }

    pub fn sum<'a>(&self, xs: impl IntoIterator<Item = &'a WittVector>) -> WittVector {
        xs.into_iter().fold(self.zero(), |acc, x| self.add(&acc, x))
    }

    /// Image of the integer `k`.
    pub fn from_int(&self, k: i64) -> WittVector {
        let mut acc = self.zero();
        let mut base = self.one();
        let mut m = k.unsigned_abs();
        while m > 0 {
            if m & 1 == 1 {
                acc = self.add(&acc, &base);
            }
            m >>= 1;
            if m > 0 {
                base = self.add(&base, &base);
            }
        }
        if k < 0 {
            self.neg(&acc)
        } else {
            acc
        }
    }

    pub fn mul_int(&self, x: &WittVector, k: i64) -> WittVector {
        self.mul(x, &self.from_int(k))
    }

    pub fn is_zero(&self, x: &WittVector) -> bool {
        x.comps.iter().all(|c| self.base.is_zero(c))
    }

    pub fn eq(&self, x: &WittVector, y: &WittVector) -> bool {
        x.len() == y.len() && x.comps.iter().zip(&y.comps).all(|(a, b)| self.base.eq(a, b))
    }

    /// Componentwise p-th power (requires characteristic p).
    pub fn frobenius(&self, x: &WittVector) -> Result<WittVector> {
        if self.base.char_p() != Some(self.p) {
            return Err(Error::CharacteristicMismatch(format!(
                "Frobenius needs characteristic {} but base is {}",
                self.p,
                self.base.describe()
            )));
        }
        Ok(WittVector::new(x.comps.iter().map(|c| self.base.frobenius(c)).collect()))
    }

    pub fn frobenius_pow(&self, x: &WittVector, k: u32) -> Result<WittVector> {
        let mut y = x.clone();
        for _ in 0..k {
            y = self.frobenius(&y)?;
        }
        Ok(y)
    }

    /// Componentwise p-th root (inverse of F on perfect-enough inputs).
    pub fn pth_root(&self, x: &WittVector) -> Result<WittVector> {
        Ok(WittVector::new(x.comps.iter().map(|c| self.base.pth_root(c)).collect::<Result<_>>()?))
    }

    /// `V: W_n -> W_{n+1}`, `(a_{n-1}, ..., a_0) -> (0, a_{n-1}, ..., a_0)`.
    pub fn verschiebung(&self, x: &WittVector) -> WittVector {
        let mut comps = vec![self.base.zero()];
        comps.extend(x.comps.iter().cloned());
        WittVector::new(comps)
    }

    /// Restriction `W_n -> W_m` for `m <= n` (keeps the leftmost `m` entries).
    pub fn restrict(&self, x: &WittVector, m: usize) -> WittVector {
        WittVector::new(x.comps[..m.min(x.len())].to_vec())
    }

    /// Ghost components `(w_0, ..., w_{n-1})`; only over p-torsion-free rings.
    pub fn ghost(&self, x: &WittVector) -> Result<Vec<Elem>> {
        if self.base.characteristic() != 0 {
            return Err(Error::UnsupportedRing(format!("ghost map over {}", self.base.describe())));
        }
        let p = self.base.from_i64(self.p as i64);
        let mut out = Vec::with_capacity(self.n);
        for k in 0..self.n {
            let mut acc = self.base.zero();
            let mut scale = self.base.one();
            for i in 0..=k {
                let e = (self.p as u64).pow((k - i) as u32);
                acc = self.base.add(&acc, &self.base.mul(&scale, &self.base.pow(&x.comps[i], e)));
                scale = self.base.mul(&scale, &p);
            }
            out.push(acc);
        }
        Ok(out)
    }

    /// Top ghost component `sum_k p^k x_k^(p^(n-1-k))`, valid over any ring.
    pub fn top_ghost(&self, x: &WittVector) -> Elem {
        let r = &self.base;
        let mut acc = r.zero();
        let mut scale: i64 = 1;
        for (k, c) in x.comps.iter().enumerate() {
            let e = (self.p as u64).pow((self.n - 1 - k) as u32);
            acc = r.add(&acc, &r.mul_i64(&r.pow(c, e), scale));
            scale *= self.p as i64;
        }
        acc
    }

    pub fn render(&self, x: &WittVector) -> String {
        render_witt(&self.base, &x.comps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::parse::parse_elem;

    #[test]
    fn w2_f2_examples() {
        let w = WittRing::new(Ring::fq(2, 1).unwrap(), 2, 2).unwrap();
        let one = w.teichmuller(w.base.one());
        let s = w.add(&one, &one);
        assert_eq!(w.render(&s), "W(0; 1)");
        assert_eq!(w.render(&w.mul(&one, &one)), "W(1; 0)");
        assert!(w.eq(&w.add(&one, &w.zero()), &one));
    }

    #[test]
    fn ghost_over_z() {
        let w = WittRing::new(Ring::Int, 2, 2).unwrap();
        let x = w.from_comps(vec![w.base.from_i64(3), w.base.from_i64(5)]).unwrap();
        let g: Vec<String> = w.ghost(&x).unwrap().iter().map(|e| w.base.render(e)).collect();
        assert_eq!(g, vec!["3", "19"]);
    }

    #[test]
    fn frobenius_and_v() {
        let k = Ring::laurent(Ring::fq(2, 1).unwrap(), "t");
        let w = WittRing::new(k.clone(), 2, 2).unwrap();
        let x = w.from_comps(vec![parse_elem(&k, "t^-1").unwrap(), k.zero()]).unwrap();
        assert_eq!(w.render(&w.frobenius(&x).unwrap()), "W(t^-2; 0)");
        let w1 = w.with_len(1).unwrap();
        let y = w1.from_comps(vec![parse_elem(&k, "t^-1").unwrap()]).unwrap();
        assert_eq!(w.render(&w1.verschiebung(&y)), "W(0; t^-1)");
        assert!(WittRing::new(Ring::Int, 2, 2)
            .unwrap()
            .frobenius(&WittRing::new(Ring::Int, 2, 2).unwrap().zero())
            .is_err());
    }

    #[test]
    fn p_times_is_vf() {
        let k = Ring::laurent(Ring::fq(3, 1).unwrap(), "t");
        let w = WittRing::new(k.clone(), 3, 2).unwrap();
        let x = w.from_comps(vec![parse_elem(&k, "t^-1 + 2").unwrap(), parse_elem(&k, "t^-2").unwrap()]).unwrap();
        let px = w.mul_int(&x, 3);
        let vf = w.with_len(1).unwrap().verschiebung(&w.restrict(&w.frobenius(&x).unwrap(), 1));
        assert!(w.eq(&px, &vf));
    }
}
