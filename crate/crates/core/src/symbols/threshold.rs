//! Least `m` with `(f, U^(m)) = 0`, where `U^(0) = O^×`.
//!
//! Over a small finite residue field the pairing can degenerate (for example
//! `(F - 1)` images pair trivially with everything over `F_p`), so the search
//! runs after an unramified base change to a large enough `F_{q^k}`.

use crate::error::{Error, Result};
use crate::fields::fq::{FqCtx, FqEmbedding, MAX_FIELD_SIZE};
use crate::fields::ring::{Elem, Ring};
use crate::fields::series::Series;
use crate::filtration::naive_level;
use crate::witt::{WittRing, WittVector};

use super::local::{gm_symbol, higher_local_symbol, wn_symbol, MilnorSymbol};

/// `k` with its bottom field `F_q` replaced by `F_{q^deg}`.
pub fn residue_extension(k: &Ring, deg: u32) -> Result<(Ring, FqEmbedding)> {
    let small = k.bottom_fq().ok_or_else(|| Error::UnsupportedResidueField(k.bottom().describe()))?;
    let big = FqCtx::new(small.p(), small.degree() * deg)?;
    let emb = FqEmbedding::find(&small, &big)?;
    Ok((k.with_bottom(Ring::Fq(big)), emb))
}

/// Least `deg` with `q^deg > bound`, failing past the supported field size.
fn degree_above(q: u64, bound: u64) -> Result<u32> {
    let mut deg = 1;
    let mut size = q;
    while size <= bound {
        size *= q;
        deg += 1;
        if size > MAX_FIELD_SIZE {
            return Err(Error::SearchSpaceExceeded(format!("residue field above {MAX_FIELD_SIZE}")));
        }
    }
    Ok(deg)
}

fn unit_gen(k: &Ring, b: u32, j: i64) -> Elem {
    let kappa = k.base().unwrap();
    let s = Series::from_terms(kappa, &[(0, kappa.one()), (j, kappa.from_fq(b))], None);
    Elem::Ser(s)
}

/// Least `m` such that `(f, 1 + b t^j) = 0` for all `j >= m` and all `b`,
/// testing `j <= bound` over an extension of the residue field big enough
/// for the pairing to be nondegenerate.
pub fn symbol_vanishing_threshold(w: &WittRing, f: &WittVector, bound: i64) -> Result<i64> {
    if w.base.laurent_depth() != 1 {
        return Err(Error::UnsupportedRing(w.base.describe()));
    }
    if bound < naive_level(w, f)? + 1 {
        return Err(Error::ShapeMismatch(format!("bound {bound} below naive level + 1")));
    }
    let q = w.base.bottom_fq().ok_or_else(|| Error::UnsupportedResidueField(w.base.describe()))?.size() as u64;
    let p = w.p as u64;
    let mut slots = 0u32;
    while p.pow(slots + 1) <= bound as u64 {
        slots += 1;
    }
    let deg = degree_above(q, p.pow(slots + 1))?;
    let (k2, emb) = residue_extension(&w.base, deg)?;
    let w2 = WittRing::new(k2.clone(), w.p, w.n)?;
    let f2 = WittVector::new(f.comps.iter().map(|c| w.base.map_fq(&k2, c, &emb)).collect::<Result<_>>()?);
    let kw = WittRing::new(k2.bottom().clone(), w.p, w.n)?;
    let size = k2.bottom_fq().unwrap().size();
    for j in (1..=bound).rev() {
        for b in 1..size {
            if !kw.is_zero(&wn_symbol(&w2, &f2, &unit_gen(&k2, b, j))?) {
                return Ok(j + 1);
            }
        }
    }
    Ok(0)
}

/// Threshold over `k_0((t_1))((t_2))` against the generators
/// `{1 + c t_1^i t_2^j, t_1}` and `{1 + c t_1^i t_2^j, t_2}` with `|i| <= a_span`
/// and `c` running over an `F_p`-basis of an extended constant field. At a
/// level where all higher generators pair trivially the pairing is additive in
/// the coefficient, so a basis suffices.
pub fn rank2_vanishing_threshold(w: &WittRing, f: &WittVector, bound: i64, a_span: i64) -> Result<i64> {
    if w.base.laurent_depth() != 2 {
        return Err(Error::UnsupportedRing(w.base.describe()));
    }
    if bound < naive_level(w, f)? + 1 {
        return Err(Error::ShapeMismatch(format!("bound {bound} below naive level + 1")));
    }
    let q = w.base.bottom_fq().ok_or_else(|| Error::UnsupportedResidueField(w.base.describe()))?.size() as u64;
    let p = w.p as u64;
    let mut slots = 0u32;
    while p.pow(slots + 1) <= bound as u64 {
        slots += 1;
    }
    let deg = degree_above(q, p.pow(slots + 1))?;
    let (k2, emb) = residue_extension(&w.base, deg)?;
    let w2 = WittRing::new(k2.clone(), w.p, w.n)?;
    let f2 = WittVector::new(f.comps.iter().map(|c| w.base.map_fq(&k2, c, &emb)).collect::<Result<_>>()?);
    let kw = WittRing::new(k2.bottom().clone(), w.p, w.n)?;
    let big = k2.bottom_fq().unwrap();
    let basis: Vec<u32> = (0..big.degree()).map(|i| big.pow(big.generator(), i as u64)).collect();
    let k1 = k2.base().unwrap().clone();
    let k0 = k1.base().unwrap().clone();
    let t2 = k2.gen();
    let t1 = k2.lift_from(&k1, &k1.gen());
    for j in (1..=bound).rev() {
        for i in -a_span..=a_span {
            for &c in &basis {
                let a = Elem::Ser(Series::monomial(&k0, k0.from_fq(c), i));
                let x = Elem::Ser(Series::from_terms(&k1, &[(0, k1.one()), (j, a)], None));
                for b in [&t1, &t2] {
                    let g = MilnorSymbol::new(&k2, vec![x.clone(), b.clone()])?;
                    if !kw.is_zero(&higher_local_symbol(&w2, &f2, &g)?) {
                        return Ok(j + 1);
                    }
                }
            }
        }
    }
    Ok(0)
}

/// The same threshold for `G_m`: units pair trivially with `O^×`, while a
/// nonzero valuation is detected by constants of a large enough extension.
pub fn gm_vanishing_threshold(k: &Ring, f: &Elem, bound: i64) -> Result<i64> {
    let v = k.valuation(f)?.ok_or(Error::DivisionByZero)?;
    let q = k.bottom_fq().ok_or_else(|| Error::UnsupportedResidueField(k.describe()))?.size() as u64;
    let deg = degree_above(q, v.unsigned_abs() + 1)?;
    let (k2, emb) = residue_extension(k, deg)?;
    let f2 = k.map_fq(&k2, f, &emb)?;
    let kappa = k2.base().unwrap().clone();
    let size = k2.bottom_fq().unwrap().size();
    for j in (1..=bound).rev() {
        for b in 1..size {
            if !kappa.eq(&gm_symbol(&k2, &f2, &unit_gen(&k2, b, j))?, &kappa.one()) {
                return Ok(j + 1);
            }
        }
    }
    for c in 1..size {
        let g = Elem::Ser(Series::monomial(&kappa, kappa.from_fq(c), 0));
        if !kappa.eq(&gm_symbol(&k2, &f2, &g)?, &kappa.one()) {
            return Ok(1);
        }
    }
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::parse::{parse_elem, parse_witt};

    fn thr(src: &str, n: usize, b: i64) -> i64 {
        let k = Ring::laurent(Ring::fq(2, 1).unwrap(), "t");
        let w = WittRing::new(k.clone(), 2, n).unwrap();
        let f = w.from_comps(parse_witt(&k, src).unwrap()).unwrap();
        symbol_vanishing_threshold(&w, &f, b).unwrap()
    }

    #[test]
    fn thresholds() {
        assert_eq!(thr("t^-1", 1, 3), 2);
        assert_eq!(thr("t^-2", 1, 4), 2);
        assert_eq!(thr("1 + t", 1, 1), 0);
        assert_eq!(thr("t^-2 + t^-1", 1, 4), 2);
        assert_eq!(thr("W(t^-3; 0)", 2, 7), 7);
    }

    #[test]
    fn gm_thresholds() {
        let k = Ring::laurent(Ring::fq(2, 1).unwrap(), "t");
        assert_eq!(gm_vanishing_threshold(&k, &parse_elem(&k, "t^3").unwrap(), 3).unwrap(), 1);
        assert_eq!(gm_vanishing_threshold(&k, &parse_elem(&k, "1 + t").unwrap(), 3).unwrap(), 0);
    }

    #[test]
    fn rank_two_thresholds() {
        let k = Ring::laurent(Ring::laurent(Ring::fq(2, 1).unwrap(), "y"), "x");
        let w = WittRing::new(k.clone(), 2, 1).unwrap();
        for (src, m) in [("x^-1", 2), ("y*x^-2", 3), ("x^-2", 2), ("1 + x", 0), ("y^-1*x^-3", 4)] {
            let f = w.from_comps(parse_witt(&k, src).unwrap()).unwrap();
            assert_eq!(rank2_vanishing_threshold(&w, &f, m.max(1) + 1, 3).unwrap(), m, "{src}");
        }
    }
}
