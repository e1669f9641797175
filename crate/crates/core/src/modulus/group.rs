//! Split groups `G_m^t × ⊕_i W_{n_i}`, their points, `mod_v` and the modulus divisor.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fields::parse::parse_group_point;
use crate::fields::ring::{Elem, Ring};
use crate::filtration::filf_level;
use crate::filtration::level::pole_order;
use crate::witt::hom::HomWord;
use crate::witt::{WittRing, WittVector};

use super::place::{global_ctx, support_candidates, LocalField, Place};

#[derive(Clone, Debug)]
pub struct SplitGroupDescriptor {
    pub torus: usize,
    pub shape: Vec<usize>,
    pub post: Option<HomWord>,
}

impl SplitGroupDescriptor {
    pub fn new(torus: usize, shape: Vec<usize>) -> Result<Self> {
        if shape.contains(&0) {
            return Err(Error::ShapeMismatch("Witt factors need length at least 1".into()));
        }
        Ok(SplitGroupDescriptor { torus, shape, post: None })
    }

    /// Parse factors like `Gm^2 x Ga x W3^2` separated by `x`.
    pub fn parse(src: &str) -> Result<Self> {
        let mut torus = 0;
        let mut shape = Vec::new();
        for (i, tok) in src.split(" x ").map(str::trim).enumerate() {
            let bad = || Error::Parse { pos: i, msg: format!("unknown group factor '{tok}'") };
            let (base, mult) = match tok.split_once('^') {
                Some((b, m)) => (b.trim(), m.trim().parse::<usize>().map_err(|_| bad())?),
                None => (tok, 1),
            };
            match base {
                "Gm" => torus += mult,
                "Ga" => shape.extend(std::iter::repeat_n(1, mult)),
                b if b.starts_with('W') => {
                    let n = b[1..].parse::<usize>().map_err(|_| bad())?;
                    shape.extend(std::iter::repeat_n(n, mult));
                }
                _ => return Err(bad()),
            }
        }
        SplitGroupDescriptor::new(torus, shape)
    }

    pub fn with_post(mut self, h: HomWord) -> Result<Self> {
        if h.sources != self.shape {
            return Err(Error::ShapeMismatch(format!("post-composition expects {:?}", h.sources)));
        }
        self.post = Some(h);
        Ok(self)
    }
}

#[derive(Clone, Debug)]
pub struct GroupPoint {
    pub torus: Vec<Elem>,
    pub witt: Vec<WittVector>,
}

impl GroupPoint {
    pub fn new(k: &Ring, g: &SplitGroupDescriptor, torus: Vec<Elem>, witt: Vec<WittVector>) -> Result<Self> {
        if torus.len() != g.torus || witt.len() != g.shape.len() {
            return Err(Error::ShapeMismatch("point does not match the group".into()));
        }
        if torus.iter().any(|t| k.is_zero(t)) {
            return Err(Error::DivisionByZero);
        }
        for (x, &n) in witt.iter().zip(&g.shape) {
            if x.len() != n {
                return Err(Error::ShapeMismatch(format!("expected W_{n}, got length {}", x.len())));
            }
        }
        Ok(GroupPoint { torus, witt })
    }

    /// Parse `t_1 ; ... ; W(...) ; ...` (torus coordinates first).
    pub fn parse(k: &Ring, g: &SplitGroupDescriptor, src: &str) -> Result<Self> {
        let items = parse_group_point(k, src)?;
        if items.len() != g.torus + g.shape.len() {
            return Err(Error::ShapeMismatch(format!("expected {} coordinates", g.torus + g.shape.len())));
        }
        let mut it = items.into_iter();
        let mut torus = Vec::new();
        for _ in 0..g.torus {
            let c = it.next().unwrap();
            if c.len() != 1 {
                return Err(Error::ShapeMismatch("torus coordinate must be a field element".into()));
            }
            torus.extend(c);
        }
        let witt = it.map(WittVector::new).collect();
        GroupPoint::new(k, g, torus, witt)
    }

    /// Witt coordinates after the optional post-composition.
    pub fn unipotent(&self, k: &Ring, p: u32, g: &SplitGroupDescriptor) -> Result<Vec<WittVector>> {
        match &g.post {
            Some(h) => h.apply(k, p, &self.witt),
            None => Ok(self.witt.clone()),
        }
    }
}

/// `mod_v` of a point over a complete discrete valuation field.
pub fn mod_v(k: &Ring, p: u32, g: &SplitGroupDescriptor, phi: &GroupPoint) -> Result<i64> {
    let xs = phi.unipotent(k, p, g)?;
    let mut integral = true;
    for t in &phi.torus {
        if k.valuation(t)? != Some(0) {
            integral = false;
        }
    }
    for x in &xs {
        for c in &x.comps {
            if pole_order(c)? > 0 {
                integral = false;
            }
        }
    }
    if integral {
        return Ok(0);
    }
    let mut r = 0;
    for x in &xs {
        let w = WittRing::new(k.clone(), p, x.len())?;
        r = r.max(filf_level(&w, x)?.0);
    }
    Ok(1 + r)
}

/// `Σ_v mod_v(φ) v` with the support listed in place order.
#[derive(Clone, Debug)]
pub struct ModulusDivisor {
    pub entries: Vec<(Place, i64)>,
}

impl ModulusDivisor {
    pub fn mult(&self, v: &Place) -> i64 {
        self.entries.iter().find(|(w, _)| w == v).map_or(0, |e| e.1)
    }

    pub fn degree(&self) -> i64 {
        self.entries.iter().map(|(v, m)| v.degree() as i64 * m).sum()
    }
}

/// Working window for completing `phi`: enough room for the pole orders of
/// the components after Witt arithmetic.
fn working_prec(k: &Ring, p: u32, phi: &GroupPoint, prec: i64) -> Result<i64> {
    global_ctx(k)?;
    let deg = |f: &Elem| {
        let f = f.as_rat();
        f.num.keys().chain(f.den.keys()).map(|e| e[0] as i64).max().unwrap_or(0)
    };
    let mut need = 0;
    for x in &phi.witt {
        let spread = (p as i64).pow(x.len() as u32);
        for c in &x.comps {
            need = need.max(2 * spread * deg(c) + 16);
        }
    }
    Ok(prec.max(need))
}

/// Image of a global point in `K_v`.
pub fn localize(lf: &LocalField, phi: &GroupPoint, prec: i64) -> Result<GroupPoint> {
    let torus = phi.torus.iter().map(|t| lf.complete(t.as_rat(), prec)).collect::<Result<_>>()?;
    let witt = phi
        .witt
        .iter()
        .map(|x| Ok(WittVector::new(x.comps.iter().map(|c| lf.complete(c.as_rat(), prec)).collect::<Result<_>>()?)))
        .collect::<Result<_>>()?;
    Ok(GroupPoint { torus, witt })
}

/// Places where some coordinate may fail to be integral.
pub fn candidate_places(k: &Ring, phi: &GroupPoint) -> Result<Vec<Place>> {
    let r = global_ctx(k)?;
    let mut out = Vec::new();
    for t in &phi.torus {
        out.extend(support_candidates(r, t.as_rat(), true));
    }
    for x in &phi.witt {
        for c in &x.comps {
            out.extend(support_candidates(r, c.as_rat(), false));
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

pub fn mod_at_place(k: &Ring, g: &SplitGroupDescriptor, phi: &GroupPoint, v: &Place, prec: i64) -> Result<i64> {
    let r = global_ctx(k)?;
    let p = r.fq.p();
    let prec = working_prec(k, p, phi, prec)?;
    let lf = LocalField::new(r, v, prec)?;
    let loc = localize(&lf, phi, prec)?;
    mod_v(&lf.ring, p, g, &loc)
}

/// The modulus divisor of a point over `F_q(x)`.
pub fn modulus_divisor(k: &Ring, g: &SplitGroupDescriptor, phi: &GroupPoint, prec: i64) -> Result<ModulusDivisor> {
    let places = candidate_places(k, phi)?;
    let mults = places.par_iter().map(|v| mod_at_place(k, g, phi, v, prec)).collect::<Result<Vec<_>>>()?;
    let entries = places.into_iter().zip(mults).filter(|(_, m)| *m != 0).collect();
    Ok(ModulusDivisor { entries })
}

#[derive(Clone, Debug, Default)]
pub struct EmbeddingReport {
    pub checked: usize,
    /// `(place, mod through h1, mod through h2)` for every disagreement.
    pub mismatches: Vec<(String, i64, i64)>,
}

/// Compare `mod_v` computed through two post-compositions at each place.
pub fn check_embedding_independence(
    k: &Ring,
    shape: &[usize],
    xs: &[WittVector],
    h1: &HomWord,
    h2: &HomWord,
    places: &[Place],
    prec: i64,
) -> Result<EmbeddingReport> {
    let r = global_ctx(k)?;
    let g1 = SplitGroupDescriptor::new(0, shape.to_vec())?.with_post(h1.clone())?;
    let g2 = SplitGroupDescriptor::new(0, shape.to_vec())?.with_post(h2.clone())?;
    let phi = GroupPoint::new(k, &g1, vec![], xs.to_vec())?;
    let mut rep = EmbeddingReport::default();
    for v in places {
        let a = mod_at_place(k, &g1, &phi, v, prec)?;
        let b = mod_at_place(k, &g2, &phi, v, prec)?;
        rep.checked += 1;
        if a != b {
            rep.mismatches.push((v.name(r), a, b));
        }
    }
    Ok(rep)
}

/// Local version: `1 + max r(h(x))` through `h1` and `h2` over one `K_v`.
pub fn check_embedding_independence_local(
    k: &Ring,
    p: u32,
    xs: &[WittVector],
    h1: &HomWord,
    h2: &HomWord,
) -> Result<(i64, i64)> {
    let shape: Vec<usize> = xs.iter().map(|x| x.len()).collect();
    let g1 = SplitGroupDescriptor::new(0, shape.clone())?.with_post(h1.clone())?;
    let g2 = SplitGroupDescriptor::new(0, shape)?.with_post(h2.clone())?;
    let phi = GroupPoint { torus: vec![], witt: xs.to_vec() };
    Ok((mod_v(k, p, &g1, &phi)?, mod_v(k, p, &g2, &phi)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::descriptor::FieldDescriptor;
    use crate::fields::parse::parse_elem;

    fn ring(s: &str) -> Ring {
        FieldDescriptor::parse(s).unwrap().to_ring().unwrap()
    }

    #[test]
    fn local_mod_examples() {
        let k = ring("F2((t))");
        let ga = SplitGroupDescriptor::parse("Ga").unwrap();
        let phi = GroupPoint::parse(&k, &ga, "t^-1").unwrap();
        assert_eq!(mod_v(&k, 2, &ga, &phi).unwrap(), 2);
        let gm = SplitGroupDescriptor::parse("Gm").unwrap();
        let phi = GroupPoint::parse(&k, &gm, "t").unwrap();
        assert_eq!(mod_v(&k, 2, &gm, &phi).unwrap(), 1);
        let w2 = SplitGroupDescriptor::parse("W2").unwrap();
        let phi = GroupPoint::parse(&k, &w2, "W(t^-1; 0)").unwrap();
        assert_eq!(mod_v(&k, 2, &w2, &phi).unwrap(), 3);
        let phi = GroupPoint::parse(&k, &w2, "W(1 + t; t^2)").unwrap();
        assert_eq!(mod_v(&k, 2, &w2, &phi).unwrap(), 0);
    }

    fn divisor(group: &str, phi: &str) -> Vec<(String, i64)> {
        let k = ring("F2(x)");
        let g = SplitGroupDescriptor::parse(group).unwrap();
        let pt = GroupPoint::parse(&k, &g, phi).unwrap();
        let d = modulus_divisor(&k, &g, &pt, 32).unwrap();
        let r = global_ctx(&k).unwrap();
        d.entries.iter().map(|(v, m)| (v.name(r), *m)).collect()
    }

    #[test]
    fn global_divisors() {
        assert_eq!(divisor("Ga", "1/x"), vec![("x".into(), 2)]);
        assert_eq!(divisor("Gm", "x"), vec![("x".into(), 1), ("inf".into(), 1)]);
        assert_eq!(divisor("Ga", "1/x^2"), vec![("x".into(), 2)]);
        assert_eq!(divisor("Ga", "1/x^3"), vec![("x".into(), 4)]);
        assert_eq!(divisor("Ga", "x^3"), vec![("inf".into(), 4)]);
        assert_eq!(divisor("Ga", "1/(x^2 + x + 1)"), vec![("x^2 + x + 1".into(), 2)]);
        assert_eq!(divisor("Gm x W2", "x ; W(1/x; 0)"), vec![("x".into(), 3), ("inf".into(), 1)]);
    }

    #[test]
    fn representative_independence() {
        let k = ring("F2((t))");
        let w2 = SplitGroupDescriptor::parse("W2").unwrap();
        let w = WittRing::new(k.clone(), 2, 2).unwrap();
        let phi = GroupPoint::parse(&k, &w2, "W(t^-3; t^-1)").unwrap();
        let base = mod_v(&k, 2, &w2, &phi).unwrap();
        for u in ["W(1 + t; t)", "W(t^2; 1)", "W(0; 1 + t^3)"] {
            let y = WittVector::new(crate::fields::parse::parse_witt(&k, u).unwrap());
            let moved = GroupPoint { torus: vec![], witt: vec![w.add(&phi.witt[0], &y)] };
            assert_eq!(mod_v(&k, 2, &w2, &moved).unwrap(), base);
        }
    }

    #[test]
    fn embedding_independence() {
        let k = ring("F2(x)");
        let x = WittVector::new(vec![parse_elem(&k, "1/x^3 + 1/(x + 1)^2").unwrap()]);
        let places = candidate_places(&k, &GroupPoint { torus: vec![], witt: vec![x.clone()] }).unwrap();
        let id = HomWord::parse("id", 1, 1).unwrap();
        for h in ["V", "F", "V*V"] {
            let target = if h.contains('V') { h.matches('V').count() + 1 } else { 1 };
            let h2 = HomWord::parse(h, 1, target).unwrap();
            let rep = check_embedding_independence(&k, &[1], std::slice::from_ref(&x), &id, &h2, &places, 32).unwrap();
            assert!(rep.mismatches.is_empty(), "{h}: {:?}", rep.mismatches);
        }
    }
}
