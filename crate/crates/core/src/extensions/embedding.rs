//! Embeddings `K = κ((π)) → K' = κ'((t))` of discrete valuation fields.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::fields::fq::{FqCtx, FqEmbedding};
use crate::fields::parse::parse_elem;
use crate::fields::ratfn::{MPoly, RatCtx};
use crate::fields::ring::{Elem, Ring};
use crate::fields::series::Series;
use crate::witt::WittVector;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ResidueKind {
    Identity,
    Separable,
    PerfectClosure,
}

impl ResidueKind {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "identity" => Ok(ResidueKind::Identity),
            "separable" => Ok(ResidueKind::Separable),
            "perfect-closure" => Ok(ResidueKind::PerfectClosure),
            other => Err(Error::Parse { pos: 0, msg: format!("unknown residue kind '{other}'") }),
        }
    }
}

#[derive(Clone, Debug)]
pub struct DVEmbedding {
    pub name: String,
    pub source: Ring,
    pub target: Ring,
    pub e: i64,
    pub pi_image: Elem,
    /// Images of the residue-field variables (the lifted p-base), in `target`.
    pub var_images: Vec<Elem>,
    /// Change of the constant field, if any.
    pub constants: FqEmbedding,
    pub residue: ResidueKind,
}

fn laurent(k: &Ring) -> Result<(&Ring, &str)> {
    match k.laurent_ctx() {
        Some(l) if k.laurent_depth() == 1 => Ok((&l.base, l.var.as_str())),
        _ => Err(Error::UnsupportedRing(format!("{} is not κ((π))", k.describe()))),
    }
}

fn residue_vars(kappa: &Ring) -> Result<(Arc<FqCtx>, Vec<String>)> {
    match kappa {
        Ring::Fq(f) => Ok((f.clone(), vec![])),
        Ring::Rat(r) if !r.perfect => Ok((r.fq.clone(), r.vars.clone())),
        Ring::Rat(r) => Ok((r.fq.clone(), vec![])),
        other => Err(Error::UnsupportedResidueField(other.describe())),
    }
}

fn constant(target: &Ring, c: Elem) -> Elem {
    target.lift_from(target.base().unwrap(), &c)
}

impl DVEmbedding {
    fn same_residue(k: &Ring, e: i64, name: String) -> Result<DVEmbedding> {
        let (kappa, _) = laurent(k)?;
        let (fq, vars) = residue_vars(kappa)?;
        let target = Ring::laurent_with_window(kappa.clone(), "t", k.laurent_ctx().unwrap().window);
        let pi_image = target.monomial(kappa.one(), e);
        let var_images = vars.iter().map(|v| constant(&target, kappa.variable(v).unwrap())).collect();
        Ok(DVEmbedding {
            name,
            source: k.clone(),
            target,
            e,
            pi_image,
            var_images,
            constants: FqEmbedding::identity(&fq),
            residue: ResidueKind::Identity,
        })
    }

    /// `π ↦ t^e` with `p ∤ e` and the same residue field.
    pub fn tame(k: &Ring, e: i64) -> Result<DVEmbedding> {
        let p = k.char_p().unwrap() as i64;
        if e < 1 || e % p == 0 {
            return Err(Error::ShapeMismatch(format!("tame index {e} must be prime to {p}")));
        }
        Self::same_residue(k, e, format!("tame(e={e})"))
    }

    /// `π ↦ t^e` with `e` a power of `p`.
    pub fn wild(k: &Ring, e: i64) -> Result<DVEmbedding> {
        let p = k.char_p().unwrap() as i64;
        let mut x = e;
        while x > 1 && x % p == 0 {
            x /= p;
        }
        if e < p || x != 1 {
            return Err(Error::ShapeMismatch(format!("wild index {e} must be a power of {p}")));
        }
        Self::same_residue(k, e, format!("wild(e={e})"))
    }

    pub fn identity(k: &Ring) -> Result<DVEmbedding> {
        Self::same_residue(k, 1, "identity".into())
    }

    /// Unramified extension of the constant field to `F_{q^deg}`.
    pub fn unramified(k: &Ring, deg: u32) -> Result<DVEmbedding> {
        let (kappa, _) = laurent(k)?;
        let (fq, vars) = residue_vars(kappa)?;
        let big = FqCtx::new(fq.p(), fq.degree() * deg)?;
        let constants = FqEmbedding::find(&fq, &big)?;
        let kappa2 = match kappa {
            Ring::Fq(_) => Ring::Fq(big),
            Ring::Rat(r) => Ring::Rat(Arc::new(RatCtx::new(big, r.vars.clone(), r.perfect))),
            _ => unreachable!(),
        };
        let target = Ring::laurent_with_window(kappa2.clone(), "t", k.laurent_ctx().unwrap().window);
        let var_images = vars.iter().map(|v| constant(&target, kappa2.variable(v).unwrap())).collect();
        Ok(DVEmbedding {
            name: format!("unramified(deg={deg})"),
            source: k.clone(),
            pi_image: target.gen(),
            target,
            e: 1,
            var_images,
            constants,
            residue: ResidueKind::Separable,
        })
    }

    /// `κ' = (κ(T_i))^perf`, `b_i ↦ b_i + T_i t`, `π ↦ t^e`.
    pub fn perfect_residue(k: &Ring, e: i64) -> Result<DVEmbedding> {
        if e < 1 {
            return Err(Error::ShapeMismatch("ramification index must be positive".into()));
        }
        let (kappa, _) = laurent(k)?;
        let (fq, vars) = residue_vars(kappa)?;
        let ts: Vec<String> = match vars.len() {
            1 => vec!["T".into()],
            n => (1..=n).map(|i| format!("T{i}")).collect(),
        };
        let all: Vec<&str> = vars.iter().chain(&ts).map(|s| s.as_str()).collect();
        let kappa2 = if all.is_empty() { Ring::Fq(fq.clone()) } else { Ring::perfection(fq.clone(), &all) };
        let target = Ring::laurent_with_window(kappa2.clone(), "t", k.laurent_ctx().unwrap().window);
        let var_images = vars
            .iter()
            .zip(&ts)
            .map(|(v, tv)| {
                let s = Series::from_terms(
                    &kappa2,
                    &[(0, kappa2.variable(v).unwrap()), (1, kappa2.variable(tv).unwrap())],
                    None,
                );
                Elem::Ser(s)
            })
            .collect();
        Ok(DVEmbedding {
            name: format!("perfect-residue(e={e})"),
            source: k.clone(),
            pi_image: target.monomial(kappa2.one(), e),
            target,
            e,
            var_images,
            constants: FqEmbedding::identity(&fq),
            residue: ResidueKind::PerfectClosure,
        })
    }

    /// Build from `{"e":1,"pi_image":"t","pbase_images":{"u":"u + T*t"},"residue":"perfect-closure"}`.
    pub fn from_config(k: &Ring, json: &str) -> Result<DVEmbedding> {
        #[derive(Deserialize)]
        struct Config {
            e: i64,
            pi_image: String,
            #[serde(default)]
            pbase_images: BTreeMap<String, String>,
            residue: String,
        }
        let cfg: Config =
            serde_json::from_str(json).map_err(|e| Error::Parse { pos: e.column(), msg: e.to_string() })?;
        let kind = ResidueKind::parse(&cfg.residue)?;
        let mut emb = match kind {
            ResidueKind::PerfectClosure => Self::perfect_residue(k, cfg.e)?,
            ResidueKind::Identity | ResidueKind::Separable => Self::same_residue(k, cfg.e, "config".into())?,
        };
        emb.name = "config".into();
        let (kappa, _) = laurent(k)?;
        let (_, vars) = residue_vars(kappa)?;
        emb.pi_image = parse_elem(&emb.target, &cfg.pi_image)?;
        for (v, src) in &cfg.pbase_images {
            let i = vars
                .iter()
                .position(|x| x == v)
                .ok_or_else(|| Error::Parse { pos: 0, msg: format!("'{v}' is not a residue variable") })?;
            emb.var_images[i] = parse_elem(&emb.target, src)?;
        }
        emb.validate()?;
        Ok(emb)
    }

    /// `v(π image) = e` and residue variables map into `O_{K'}`.
    pub fn validate(&self) -> Result<()> {
        if self.target.valuation(&self.pi_image)? != Some(self.e) {
            return Err(Error::ShapeMismatch(format!("image of π must have valuation {}", self.e)));
        }
        for v in &self.var_images {
            if self.target.valuation(v)? != Some(0) {
                return Err(Error::ShapeMismatch("p-base images must be units".into()));
            }
        }
        Ok(())
    }

    fn eval_poly(&self, m: &MPoly, level: u32) -> Result<Elem> {
        if level != 0 {
            return Err(Error::UnsupportedResidueField("source residue field must be finitely generated".into()));
        }
        let t = &self.target;
        let mut acc = t.zero();
        for (exps, &c) in m {
            let mut term = t.from_fq(self.constants.apply(c));
            for (img, &x) in self.var_images.iter().zip(exps) {
                if x > 0 {
                    term = t.mul(&term, &t.pow(img, x as u64));
                }
            }
            acc = t.add(&acc, &term);
        }
        Ok(acc)
    }

    /// Image of a residue-field element of the source.
    pub fn apply_residue(&self, c: &Elem) -> Result<Elem> {
        let t = &self.target;
        match c {
            Elem::Fq(x) => Ok(t.from_fq(self.constants.apply(*x))),
            Elem::Rat(r) => t.div(&self.eval_poly(&r.num, r.level)?, &self.eval_poly(&r.den, r.level)?),
            _ => Err(Error::UnsupportedResidueField("unexpected residue element".into())),
        }
    }

    /// Image of `x ∈ K` in `K'`; an `O(π^N)` tail becomes `O(t^{eN})`.
    pub fn apply(&self, x: &Elem) -> Result<Elem> {
        let (kappa, _) = laurent(&self.source)?;
        let t = &self.target;
        let s = x.as_series();
        let mut acc = t.zero();
        for (k, c) in s.terms(kappa) {
            let term = t.mul(&self.apply_residue(c)?, &t.pow_i64(&self.pi_image, k)?);
            acc = t.add(&acc, &term);
        }
        if let Some(n) = s.prec {
            acc = t.add(&acc, &Elem::Ser(Series::big_o(self.e * n)));
        }
        Ok(acc)
    }

    pub fn apply_witt(&self, x: &WittVector) -> Result<WittVector> {
        Ok(WittVector::new(x.comps.iter().map(|c| self.apply(c)).collect::<Result<_>>()?))
    }
}

/// Image of `x` under `emb`.
pub fn apply_embedding(emb: &DVEmbedding, x: &Elem) -> Result<Elem> {
    emb.apply(x)
}

pub fn make_tame_extension(k: &Ring, e: i64) -> Result<DVEmbedding> {
    DVEmbedding::tame(k, e)
}

pub fn make_wild_extension(k: &Ring, e: i64) -> Result<DVEmbedding> {
    DVEmbedding::wild(k, e)
}

pub fn make_perfect_residue_extension(k: &Ring, e: i64) -> Result<DVEmbedding> {
    DVEmbedding::perfect_residue(k, e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::descriptor::FieldDescriptor;

    fn ring(s: &str) -> Ring {
        FieldDescriptor::parse(s).unwrap().to_ring().unwrap()
    }

    #[test]
    fn monomial_images() {
        let k = ring("F2((pi))");
        let emb = make_tame_extension(&k, 3).unwrap();
        let x = parse_elem(&k, "pi^-1").unwrap();
        assert_eq!(emb.target.render(&emb.apply(&x).unwrap()), "t^-3");
        let emb = make_wild_extension(&k, 2).unwrap();
        assert_eq!(emb.target.render(&emb.apply(&x).unwrap()), "t^-2");
        assert!(make_tame_extension(&k, 2).is_err());
        assert!(make_wild_extension(&k, 3).is_err());
    }

    #[test]
    fn perfect_residue_image() {
        let k = ring("F2(u)((pi))");
        let emb = make_perfect_residue_extension(&k, 1).unwrap();
        let x = parse_elem(&k, "u*pi^-2").unwrap();
        let y = emb.apply(&x).unwrap();
        assert!(emb.target.eq(&y, &parse_elem(&emb.target, "u*t^-2 + T*t^-1").unwrap()));
        let cfg = r#"{"e":1,"pi_image":"t","pbase_images":{"u":"u + T*t"},"residue":"perfect-closure"}"#;
        let emb2 = DVEmbedding::from_config(&k, cfg).unwrap();
        assert!(emb.target.eq(&emb2.apply(&x).unwrap(), &y));
    }

    #[test]
    fn homomorphism_spot_checks() {
        let k = ring("F2(u)((pi))");
        let emb = make_perfect_residue_extension(&k, 2).unwrap();
        let a = parse_elem(&k, "u*pi^-3 + (1 + u)*pi + pi^2").unwrap();
        let b = parse_elem(&k, "1/(1 + u)*pi^-1 + u^2").unwrap();
        let t = &emb.target;
        let sum = emb.apply(&k.add(&a, &b)).unwrap();
        assert!(t.eq(&sum, &t.add(&emb.apply(&a).unwrap(), &emb.apply(&b).unwrap())));
        let prod = emb.apply(&k.mul(&a, &b)).unwrap();
        assert!(t.eq(&prod, &t.mul(&emb.apply(&a).unwrap(), &emb.apply(&b).unwrap())));
    }
}
