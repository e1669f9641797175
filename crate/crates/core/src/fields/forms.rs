//! Logarithmic differential forms on the canonical basis of a tower layer,
//! with wedge products and iterated residues.

use std::collections::BTreeMap;

use super::ring::{Elem, FormSymbol, Ring};
use crate::error::{Error, Result};

/// A degree-`d` form `sum_S c_S e_S` where `S` runs over sorted `d`-subsets
/// of the basis (indices into `basis`).
#[derive(Clone, Debug)]
pub struct LogForm {
    pub degree: usize,
    pub basis: Vec<FormSymbol>,
    pub coeffs: BTreeMap<Vec<usize>, Elem>,
}

impl LogForm {
    pub fn zero(ring: &Ring, degree: usize) -> LogForm {
        LogForm { degree, basis: ring.form_basis(), coeffs: BTreeMap::new() }
    }

    /// The function `a` viewed as a 0-form.
    pub fn function(ring: &Ring, a: Elem) -> LogForm {
        let mut f = LogForm::zero(ring, 0);
        if !ring.is_zero(&a) {
            f.coeffs.insert(Vec::new(), a);
        }
        f
    }

    /// A 1-form from coordinates on the basis.
    pub fn from_coords(ring: &Ring, coords: Vec<Elem>) -> LogForm {
        let mut f = LogForm::zero(ring, 1);
        for (i, c) in coords.into_iter().enumerate() {
            if !ring.is_zero(&c) {
                f.coeffs.insert(vec![i], c);
            }
        }
        f
    }

    /// `d(a)`.
    pub fn d(ring: &Ring, a: &Elem) -> LogForm {
        LogForm::from_coords(ring, ring.differential(a))
    }

    /// `dlog(a) = a^{-1} d(a)`.
    pub fn dlog(ring: &Ring, a: &Elem) -> Result<LogForm> {
        let inv = ring.inv(a)?;
        Ok(LogForm::d(ring, a).scale(ring, &inv))
    }

    /// The basis element `dlog(var)`.
    pub fn dlog_symbol(ring: &Ring, var: &str) -> Result<LogForm> {
        let basis = ring.form_basis();
        let i = basis
            .iter()
            .position(|s| *s == FormSymbol::Dlog(var.to_string()))
            .ok_or_else(|| Error::ShapeMismatch(format!("no dlog {var} in basis")))?;
        let mut f = LogForm::zero(ring, 1);
        f.coeffs.insert(vec![i], ring.one());
        Ok(f)
    }

    pub fn coeff(&self, ring: &Ring, subset: &[usize]) -> Elem {
        self.coeffs.get(subset).cloned().unwrap_or_else(|| ring.zero())
    }

    /// Coefficient on a named basis symbol (degree 1).
    pub fn coeff_of(&self, ring: &Ring, sym: &FormSymbol) -> Elem {
        match self.basis.iter().position(|s| s == sym) {
            Some(i) => self.coeff(ring, &[i]),
            None => ring.zero(),
        }
    }

    pub fn is_zero(&self, ring: &Ring) -> bool {
        self.coeffs.values().all(|c| ring.is_zero(c))
    }

    pub fn add(&self, ring: &Ring, other: &LogForm) -> LogForm {
        assert_eq!(self.degree, other.degree, "adding forms of different degrees");
        let mut out = self.clone();
        for (k, c) in &other.coeffs {
            let v = match out.coeffs.get(k) {
                Some(x) => ring.add(x, c),
                None => c.clone(),
            };
            if ring.is_zero(&v) {
                out.coeffs.remove(k);
            } else {
                out.coeffs.insert(k.clone(), v);
            }
        }
        out
    }

    pub fn neg(&self, ring: &Ring) -> LogForm {
        let mut out = self.clone();
        for c in out.coeffs.values_mut() {
            *c = ring.neg(c);
        }
        out
    }

    pub fn sub(&self, ring: &Ring, other: &LogForm) -> LogForm {
        self.add(ring, &other.neg(ring))
    }

    pub fn scale(&self, ring: &Ring, a: &Elem) -> LogForm {
        let mut out = LogForm { degree: self.degree, basis: self.basis.clone(), coeffs: BTreeMap::new() };
        for (k, c) in &self.coeffs {
            let v = ring.mul(c, a);
            if !ring.is_zero(&v) {
                out.coeffs.insert(k.clone(), v);
            }
        }
        out
    }

    /// Wedge product; subsets are re-sorted with the permutation sign.
    pub fn wedge(&self, ring: &Ring, other: &LogForm) -> LogForm {
        let mut out = LogForm::zero(ring, self.degree + other.degree);
        for (s, a) in &self.coeffs {
            for (t, b) in &other.coeffs {
                if s.iter().any(|i| t.contains(i)) {
                    continue;
                }
                let mut idx: Vec<usize> = s.iter().chain(t.iter()).copied().collect();
                let mut sign = 1i64;
                // bubble sort tracks the parity of the permutation
                for i in 0..idx.len() {
                    for j in 0..idx.len() - 1 - i {
                        if idx[j] > idx[j + 1] {
                            idx.swap(j, j + 1);
                            sign = -sign;
                        }
                    }
                }
                let mut term = ring.mul(a, b);
                if sign < 0 {
                    term = ring.neg(&term);
                }
                let mut piece = LogForm::zero(ring, out.degree);
                piece.coeffs.insert(idx, term);
                out = out.add(ring, &piece);
            }
        }
        out
    }

    pub fn render(&self, ring: &Ring) -> String {
        if self.coeffs.is_empty() {
            return "0".into();
        }
        self.coeffs
            .iter()
            .map(|(k, c)| {
                let syms: Vec<String> = k.iter().map(|&i| self.basis[i].to_string()).collect();
                format!("({})*{}", ring.render(c), syms.join("^"))
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Residue of a 1-form over `kappa((t))`: the `t^0` coefficient of the
/// `dlog t` coordinate.
pub fn residue1(ring: &Ring, w: &LogForm) -> Result<Elem> {
    let l = ring.laurent_ctx().ok_or_else(|| Error::UnsupportedRing(ring.describe()))?;
    if w.degree != 1 {
        return Err(Error::ShapeMismatch(format!("residue1 of a degree-{} form", w.degree)));
    }
    let c = w.coeff_of(ring, &FormSymbol::Dlog(l.var.clone()));
    c.as_series().coeff(&l.base, 0)
}

/// Iterated residue of a top-degree log form over `A_r`: the coefficient of
/// `dlog t_1 ^ ... ^ dlog t_r`, peeling `t_r` first and `t_1` last.
pub fn higher_residue(ring: &Ring, w: &LogForm) -> Result<Elem> {
    let r = ring.laurent_depth();
    if w.degree != r {
        return Err(Error::ShapeMismatch(format!("degree {} form over {} Laurent layers", w.degree, r)));
    }
    let subset: Vec<usize> =
        w.basis.iter().enumerate().filter(|(_, s)| matches!(s, FormSymbol::Dlog(_))).map(|(i, _)| i).collect();
    let mut c = w.coeff(ring, &subset);
    let mut cur = ring.clone();
    while let Some(l) = cur.laurent_ctx().cloned() {
        c = c.as_series().coeff(&l.base, 0)?;
        cur = l.base.clone();
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::series::Series;

    fn f2t() -> Ring {
        Ring::laurent(Ring::fq(2, 1).unwrap(), "t")
    }

    #[test]
    fn residue_examples() {
        let k = f2t();
        let t = k.gen();
        let tinv = k.inv(&t).unwrap();
        let w = LogForm::dlog_symbol(&k, "t").unwrap().scale(&k, &k.mul(&tinv, &t));
        assert_eq!(k.base().unwrap().render(&residue1(&k, &w).unwrap()), "1");
        let w = LogForm::dlog_symbol(&k, "t").unwrap().scale(&k, &tinv);
        assert_eq!(k.base().unwrap().render(&residue1(&k, &w).unwrap()), "0");
        let one_t = k.add(&k.one(), &t);
        let inv = k.inv(&one_t).unwrap();
        // t/(1 + t) = t + t^2 + ... has no constant term
        let w = LogForm::dlog_symbol(&k, "t").unwrap().scale(&k, &k.mul(&inv, &t));
        assert_eq!(k.base().unwrap().render(&residue1(&k, &w).unwrap()), "0");
        let w = LogForm::dlog_symbol(&k, "t").unwrap().scale(&k, &inv);
        assert_eq!(k.base().unwrap().render(&residue1(&k, &w).unwrap()), "1");
        // dlog(1 + t) = t/(1 + t) dlog t
        let w = LogForm::dlog(&k, &one_t).unwrap();
        assert_eq!(k.base().unwrap().render(&residue1(&k, &w).unwrap()), "0");
    }

    #[test]
    fn exact_forms_have_no_residue() {
        let k = f2t();
        let t = k.gen();
        let f = k.add(&k.pow_i64(&t, -3).unwrap(), &k.add(&t, &k.pow_i64(&t, -1).unwrap()));
        assert!(k.is_zero(&residue1(&k, &LogForm::d(&k, &f)).unwrap()));
    }

    #[test]
    fn wedge_antisymmetry() {
        let f2 = Ring::fq(2, 1).unwrap();
        let k2 = Ring::laurent(Ring::laurent(f2, "t1"), "t2");
        let a = LogForm::dlog_symbol(&k2, "t1").unwrap();
        let b = LogForm::dlog_symbol(&k2, "t2").unwrap();
        assert!(a.wedge(&k2, &a).is_zero(&k2));
        let ab = a.wedge(&k2, &b);
        let ba = b.wedge(&k2, &a);
        assert!(ab.add(&k2, &ba).is_zero(&k2));
        assert_eq!(k2.bottom().render(&higher_residue(&k2, &ab).unwrap()), "1");
    }

    #[test]
    fn higher_residue_second_peel() {
        let f2 = Ring::fq(2, 1).unwrap();
        let k1 = Ring::laurent(f2, "t1");
        let k2 = Ring::laurent(k1.clone(), "t2");
        let t1inv = k1.inv(&k1.gen()).unwrap();
        let c = Elem::Ser(Series::monomial(&k1, t1inv, 0));
        let w = LogForm::dlog_symbol(&k2, "t1")
            .unwrap()
            .wedge(&k2, &LogForm::dlog_symbol(&k2, "t2").unwrap())
            .scale(&k2, &c);
        assert_eq!(k2.bottom().render(&higher_residue(&k2, &w).unwrap()), "0");
    }
}
