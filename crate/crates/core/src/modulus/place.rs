//! Places of `F_q(x)` and completions `K_v = κ_v((π))`.

use std::cmp::Ordering;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fields::fq::{FqCtx, FqEmbedding};
use crate::fields::ratfn::{RatCtx, RatFn};
use crate::fields::ring::{Elem, Ring};
use crate::fields::series::Series;
use crate::fields::upoly::{self, UPoly};

/// A closed point of `P^1` over `F_q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Place {
    /// Zero locus of a monic irreducible polynomial (coefficients low to high).
    Finite(UPoly),
    Infinity,
}

impl Place {
    pub fn finite(fq: &FqCtx, poly: UPoly) -> Result<Place> {
        let poly = upoly::trim(poly);
        if poly.last() != Some(&1) || !upoly::is_irreducible(fq, &poly) {
            return Err(Error::ShapeMismatch(format!("{poly:?} is not monic irreducible")));
        }
        Ok(Place::Finite(poly))
    }

    /// Residue degree over `F_q`.
    pub fn degree(&self) -> u32 {
        match self {
            Place::Finite(p) => (p.len() - 1) as u32,
            Place::Infinity => 1,
        }
    }

    pub fn name(&self, r: &RatCtx) -> String {
        match self {
            Place::Infinity => "inf".into(),
            Place::Finite(p) => r.render(&r.from_poly(RatCtx::from_upoly(p))),
        }
    }

    /// `κ_v = F_{q^deg}` with the embedding of `F_q`.
    pub fn residue_field(&self, fq: &Arc<FqCtx>) -> Result<(Arc<FqCtx>, FqEmbedding)> {
        let big = FqCtx::new(fq.p(), fq.degree() * self.degree())?;
        let emb = FqEmbedding::find(fq, &big)?;
        Ok((big, emb))
    }

    fn key(&self) -> (u8, usize, &[u32]) {
        match self {
            Place::Finite(p) => (0, p.len(), p.as_slice()),
            Place::Infinity => (1, 0, &[]),
        }
    }
}

impl Ord for Place {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl PartialOrd for Place {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Rational function context of a one-variable global field.
pub fn global_ctx(k: &Ring) -> Result<&Arc<RatCtx>> {
    match k {
        Ring::Rat(r) if r.vars.len() == 1 && !r.perfect => Ok(r),
        other => Err(Error::UnsupportedRing(format!("{} is not F_q(x)", other.describe()))),
    }
}

/// Candidate places where `f` has a zero or pole, plus infinity.
pub fn support_candidates(r: &RatCtx, f: &RatFn, zeros_too: bool) -> Vec<Place> {
    let mut out = vec![Place::Infinity];
    let mut polys = vec![RatCtx::to_upoly(&f.den)];
    if zeros_too {
        polys.push(RatCtx::to_upoly(&f.num));
    }
    for p in polys {
        if p.len() > 1 {
            out.extend(upoly::factor(&r.fq, &p).into_iter().map(|(g, _)| Place::Finite(g)));
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Completion data: `K_v = κ_v((π))` and the expansion of `x` in `π`.
#[derive(Clone, Debug)]
pub struct LocalField {
    pub place: Place,
    pub ring: Ring,
    pub emb: FqEmbedding,
    x: Elem,
}

impl LocalField {
    pub fn new(r: &RatCtx, place: &Place, prec: i64) -> Result<LocalField> {
        let (big, emb) = place.residue_field(&r.fq)?;
        let ring = Ring::laurent_with_window(Ring::Fq(big.clone()), "pi", prec.max(1));
        let kappa = ring.base().unwrap().clone();
        let x = match place {
            Place::Infinity => ring.monomial(kappa.one(), -1),
            Place::Finite(p) if p.len() == 2 => {
                let a = big.neg(emb.apply(p[0]));
                Elem::Ser(Series::from_terms(&kappa, &[(0, Elem::Fq(a)), (1, kappa.one())], None))
            }
            Place::Finite(p) => {
                let mapped: UPoly = p.iter().map(|&c| emb.apply(c)).collect();
                let alpha = big
                    .elements()
                    .find(|&a| upoly::eval(&big, &mapped, a) == 0)
                    .ok_or_else(|| Error::UnsupportedResidueField("no root in residue field".into()))?;
                newton_root(&ring, &mapped, alpha, prec)?
            }
        };
        Ok(LocalField { place: place.clone(), ring, emb, x })
    }

    /// Expansion of `x` in the uniformizer.
    pub fn x(&self) -> &Elem {
        &self.x
    }

    fn eval_poly(&self, p: &UPoly) -> Elem {
        let k = &self.ring;
        let mut acc = k.zero();
        for &c in p.iter().rev() {
            acc = k.add(&k.mul(&acc, &self.x), &k.from_fq(self.emb.apply(c)));
        }
        acc
    }

    /// Image of a global element of `F_q(x)` in `K_v`, truncated at `O(π^prec)`
    /// unless it is exact.
    pub fn complete(&self, f: &RatFn, prec: i64) -> Result<Elem> {
        if f.level != 0 {
            return Err(Error::UnsupportedRing("perfection elements have no completion here".into()));
        }
        let k = &self.ring;
        let num = self.eval_poly(&RatCtx::to_upoly(&f.num));
        let den = self.eval_poly(&RatCtx::to_upoly(&f.den));
        let v = k.div(&num, &den)?;
        Ok(if v.as_series().is_exact() { v } else { k.truncate(&v, prec) })
    }
}

/// Root of `P(X) = π` near `alpha` by Newton iteration to `O(π^prec)`.
fn newton_root(k: &Ring, p: &UPoly, alpha: u32, prec: i64) -> Result<Elem> {
    let kappa = k.base().unwrap();
    let fq = kappa.bottom_fq().unwrap();
    let dp = upoly::derivative(&fq, p);
    let eval = |q: &UPoly, x: &Elem| -> Elem {
        let mut acc = k.zero();
        for &c in q.iter().rev() {
            acc = k.add(&k.mul(&acc, x), &k.from_fq(c));
        }
        acc
    };
    let pi = k.gen();
    let mut x = k.truncate(&k.from_fq(alpha), prec);
    for _ in 0..64 {
        let step = k.div(&k.sub(&eval(p, &x), &pi), &eval(&dp, &x))?;
        let next = k.truncate(&k.sub(&x, &step), prec);
        let done = next.as_series().coeffs.len() == x.as_series().coeffs.len() && k.eq(&next, &x);
        x = next;
        if done {
            return Ok(x);
        }
    }
    Err(Error::PrecisionExhausted("Newton iteration did not settle".into()))
}

/// Expansion of `f ∈ F_q(x)` at `v` and whether it is exact.
pub fn completion_at_place(k: &Ring, f: &Elem, v: &Place, prec: i64) -> Result<(Ring, Elem, bool)> {
    let r = global_ctx(k)?;
    let lf = LocalField::new(r, v, prec)?;
    let e = lf.complete(f.as_rat(), prec)?;
    let exact = e.as_series().is_exact();
    Ok((lf.ring, e, exact))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::descriptor::FieldDescriptor;
    use crate::fields::parse::parse_elem;

    fn f2x() -> Ring {
        FieldDescriptor::parse("F2(x)").unwrap().to_ring().unwrap()
    }

    #[test]
    fn completion_examples() {
        let k = f2x();
        let f = parse_elem(&k, "1/x").unwrap();
        let (ring, e, exact) = completion_at_place(&k, &f, &Place::Finite(vec![0, 1]), 8).unwrap();
        assert!(exact);
        assert_eq!(ring.render(&e), "pi^-1");
        let (ring, e, exact) = completion_at_place(&k, &parse_elem(&k, "x").unwrap(), &Place::Infinity, 8).unwrap();
        assert!(exact);
        assert_eq!(ring.render(&e), "pi^-1");
        let (ring, e, exact) = completion_at_place(&k, &f, &Place::Finite(vec![1, 1]), 4).unwrap();
        assert!(!exact);
        assert_eq!(ring.render(&e), "1 + pi + pi^2 + pi^3 + O(pi^4)");
    }

    #[test]
    fn degree_two_place() {
        let k = f2x();
        let r = global_ctx(&k).unwrap();
        let v = Place::finite(&r.fq, vec![1, 1, 1]).unwrap();
        let lf = LocalField::new(r, &v, 12).unwrap();
        let p = lf.complete(&parse_elem(&k, "x^2 + x + 1").unwrap().as_rat().clone(), 12).unwrap();
        assert_eq!(lf.ring.render(&p), "pi + O(pi^12)");
        let g = lf.complete(&parse_elem(&k, "1/(x^2 + x + 1)^2").unwrap().as_rat().clone(), 12).unwrap();
        assert_eq!(lf.ring.valuation(&g).unwrap(), Some(-2));
    }
}
