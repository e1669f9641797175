//! Level comparisons along embeddings `K → K'`.

use crate::error::{Error, Result};
use crate::fields::ring::{Elem, Ring};
use crate::filtration::{filf_level, flat_filf_min, theta_bar, DBarElement};
use crate::witt::{WittRing, WittVector};

use super::embedding::{DVEmbedding, ResidueKind};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelComparison {
    pub s_k: i64,
    pub s_kp: i64,
    pub e: i64,
    pub flat_min_k: i64,
    /// `s_{K'} <= e s_K`.
    pub containment_ok: bool,
    /// Whether equality `s_{K'} = e s_K` is expected (tame, separable residue).
    pub equality_expected: bool,
    pub equality_ok: bool,
}

pub fn compare_levels(emb: &DVEmbedding, p: u32, phi: &WittVector) -> Result<LevelComparison> {
    let n = phi.len();
    let w = WittRing::new(emb.source.clone(), p, n)?;
    let w2 = WittRing::new(emb.target.clone(), p, n)?;
    let s_k = filf_level(&w, phi)?.0;
    let flat_min_k = flat_filf_min(&w, phi)?;
    let s_kp = filf_level(&w2, &emb.apply_witt(phi)?)?.0;
    let equality_expected = emb.e % p as i64 != 0 && emb.residue != ResidueKind::PerfectClosure;
    Ok(LevelComparison {
        s_k,
        s_kp,
        e: emb.e,
        flat_min_k,
        containment_ok: s_kp <= emb.e * s_k,
        equality_expected,
        equality_ok: !equality_expected || s_kp == emb.e * s_k,
    })
}

/// The configured family: identity, tame `e ∈ {2, 3}` prime to `p`, and the
/// perfect-residue constructions with `e ∈ {1, 2, 3}`.
pub fn default_family(k: &Ring) -> Result<Vec<DVEmbedding>> {
    let p = k.char_p().ok_or_else(|| Error::UnsupportedRing(k.describe()))? as i64;
    let mut out = vec![DVEmbedding::identity(k)?];
    for e in [2, 3] {
        if e % p != 0 {
            out.push(DVEmbedding::tame(k, e)?);
        }
    }
    for e in [1, 2, 3] {
        out.push(DVEmbedding::perfect_residue(k, e)?);
    }
    Ok(out)
}

fn has_perfect_residue(emb: &DVEmbedding) -> bool {
    emb.target.base().is_some_and(|k| k.is_perfect())
}

#[derive(Clone, Debug)]
pub struct FamilyEntry {
    pub name: String,
    pub e: i64,
    pub s_kp: i64,
}

#[derive(Clone, Debug)]
pub struct ThmBReport {
    pub s_k: i64,
    pub entries: Vec<FamilyEntry>,
    /// Largest `s_{K'} / e` as a reduced fraction.
    pub sup: (i64, i64),
    pub never_exceeds: bool,
    pub attained: bool,
}

/// `sup s_{K'}/e` over members with perfect residue field, against `s_K`.
pub fn thmb_witness(family: &[DVEmbedding], p: u32, phi: &WittVector) -> Result<ThmBReport> {
    let w = WittRing::new(family[0].source.clone(), p, phi.len())?;
    let s_k = filf_level(&w, phi)?.0;
    let mut entries = Vec::new();
    for emb in family.iter().filter(|e| has_perfect_residue(e)) {
        let c = compare_levels(emb, p, phi)?;
        entries.push(FamilyEntry { name: emb.name.clone(), e: emb.e, s_kp: c.s_kp });
    }
    let sup = entries.iter().map(|x| (x.s_kp, x.e)).fold((0, 1), |a, b| if b.0 * a.1 > a.0 * b.1 { b } else { a });
    let g = num_integer::gcd(sup.0, sup.1).max(1);
    Ok(ThmBReport {
        s_k,
        never_exceeds: entries.iter().all(|x| x.s_kp <= x.e * s_k),
        attained: entries.iter().any(|x| x.s_kp == x.e * s_k),
        sup: (sup.0 / g, sup.1 / g),
        entries,
    })
}

#[derive(Clone, Debug)]
pub struct ThmCReport {
    pub flat_min: i64,
    pub entries: Vec<FamilyEntry>,
    pub max_s_kp: i64,
    pub holds: bool,
}

/// `1 + max s_{K'}` over members with perfect residue field and `e = 1`,
/// against the least `m >= 1` with `φ ∈ ♭fil^F_m`.
pub fn thmc_witness(family: &[DVEmbedding], p: u32, phi: &WittVector) -> Result<ThmCReport> {
    let w = WittRing::new(family[0].source.clone(), p, phi.len())?;
    let flat_min = flat_filf_min(&w, phi)?;
    let mut entries = Vec::new();
    for emb in family.iter().filter(|e| e.e == 1 && has_perfect_residue(e)) {
        let c = compare_levels(emb, p, phi)?;
        entries.push(FamilyEntry { name: emb.name.clone(), e: 1, s_kp: c.s_kp });
    }
    let max_s_kp = entries.iter().map(|x| x.s_kp).max().unwrap_or(0);
    Ok(ThmCReport { flat_min, holds: !entries.is_empty() && flat_min == 1 + max_s_kp, entries, max_s_kp })
}

#[derive(Clone, Debug)]
pub struct Lemma88Report {
    pub m: i64,
    pub e: i64,
    pub expected_level: i64,
    pub image_level: i64,
    /// Predicted `dlog t` coordinate of `F^j` at level `em - 1`.
    pub predicted: Vec<(usize, Elem)>,
    pub actual: Option<DBarElement>,
    pub ok: bool,
}

/// `F^j c ∈ κ[F]`, i.e. `c^(p^j)` is free of the new variables.
fn in_base_span(emb: &DVEmbedding, j: usize, c: &Elem) -> bool {
    let kp = emb.target.base().unwrap();
    let x = kp.frobenius_pow(c, j as u32);
    match (kp, &x) {
        (Ring::Rat(r), Elem::Rat(f)) => {
            let nsrc = r.vars.len() - emb.var_images.len();
            x.as_rat().level == 0 && f.num.keys().chain(f.den.keys()).all(|k| k[nsrc..].iter().all(|&e| e == 0))
        }
        _ => true,
    }
}

/// Map the flat graded class of `φ` at level `m` by `F^j a ⊗ db_i ↦ F^j a T_i`
/// and `F^j a ⊗ dπ ↦ F^j a` (`e = 1`) or `0` (`e >= 2`), then compare with the
/// level and `θ̄_{em-1}` of the image, modulo `κ[F]` when `e = 1`.
pub fn verify_lemma88(emb: &DVEmbedding, p: u32, phi: &WittVector, m: i64) -> Result<Lemma88Report> {
    if emb.residue != ResidueKind::PerfectClosure || m < 2 {
        return Err(Error::ShapeMismatch("needs a perfect-residue embedding and m >= 2".into()));
    }
    let n = phi.len();
    let w = WittRing::new(emb.source.clone(), p, n)?;
    let w2 = WittRing::new(emb.target.clone(), p, n)?;
    if flat_filf_min(&w, phi)? > m {
        return Err(Error::InvalidDecomposition(format!("not in the flat filtration at {m}")));
    }
    let (s, mut wit) = filf_level(&w, phi)?;
    let e = emb.e;
    let kp = emb.target.base().unwrap().clone();
    let nv = emb.var_images.len();
    let mut predicted = Vec::new();
    if s == m {
        wit.level = m;
        let th = theta_bar(&w, &wit, m)?;
        for (&j, coords) in &th.coeffs {
            let mut c = kp.zero();
            for (i, a) in coords[..nv].iter().enumerate() {
                let a_img = emb.apply_residue(a)?.as_series().coeff(&kp, 0)?;
                let ti = kp.variable(&kp_var_name(&kp, nv, i)).unwrap();
                c = kp.add(&c, &kp.mul(&a_img, &ti));
            }
            predicted.push((j, c));
        }
    }
    let expected_level = e * m - 1;
    let image = emb.apply_witt(phi)?;
    let (s2, mut wit2) = filf_level(&w2, &image)?;
    let mut actual = None;
    let ok = if s2 > expected_level {
        false
    } else {
        let class_zero_mod_n = |coeff: &dyn Fn(usize) -> Elem, js: &[usize]| {
            js.iter().all(|&j| {
                let c = coeff(j);
                if e == 1 {
                    in_base_span(emb, j, &c)
                } else {
                    kp.is_zero(&c)
                }
            })
        };
        let pred = |j: usize| predicted.iter().find(|x| x.0 == j).map_or(kp.zero(), |x| x.1.clone());
        let pred_js: Vec<usize> = predicted.iter().map(|x| x.0).collect();
        let pred_zero = class_zero_mod_n(&pred, &pred_js);
        if s2 < expected_level {
            pred_zero
        } else {
            wit2.level = expected_level;
            let th2 = theta_bar(&w2, &wit2, expected_level)?;
            let mut js: Vec<usize> = th2.coeffs.keys().copied().chain(pred_js.iter().copied()).collect();
            js.sort();
            js.dedup();
            let diff = |j: usize| kp.sub(&th2.dlog_coeff(j), &pred(j));
            let agree = class_zero_mod_n(&diff, &js);
            actual = Some(th2);
            agree && !pred_zero
        }
    };
    Ok(Lemma88Report { m, e, expected_level, image_level: s2, predicted, actual, ok })
}

fn kp_var_name(kp: &Ring, nv: usize, i: usize) -> String {
    match kp {
        Ring::Rat(r) => r.vars[r.vars.len() - nv + i].clone(),
        _ => unreachable!(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::descriptor::FieldDescriptor;
    use crate::fields::parse::parse_witt;

    fn setup(field: &str, src: &str) -> (Ring, WittVector) {
        let d = FieldDescriptor::parse(field).unwrap();
        let k = d.to_ring().unwrap();
        let x = WittVector::new(parse_witt(&k, src).unwrap());
        (k, x)
    }

    #[test]
    fn level_comparisons() {
        let (k, x) = setup("F2((pi))", "pi^-1");
        let c = compare_levels(&DVEmbedding::tame(&k, 3).unwrap(), 2, &x).unwrap();
        assert_eq!((c.s_k, c.s_kp), (1, 3));
        assert!(c.equality_ok);
        let c = compare_levels(&DVEmbedding::wild(&k, 2).unwrap(), 2, &x).unwrap();
        assert_eq!((c.s_k, c.s_kp), (1, 1));
        assert!(c.containment_ok);
        let c = compare_levels(&DVEmbedding::identity(&k).unwrap(), 2, &x).unwrap();
        assert_eq!(c.s_kp, c.s_k);
    }

    #[test]
    fn flat_level_witnesses() {
        for (src, flat) in [("u*pi^-2", 2), ("pi^-3", 4), ("1 + u*pi", 1)] {
            let (k, x) = setup("F2(u)((pi))", src);
            let fam = default_family(&k).unwrap();
            let r = thmc_witness(&fam, 2, &x).unwrap();
            assert_eq!(r.flat_min, flat, "{src}");
            assert!(r.holds, "{src}: {:?}", r.entries);
            let b = thmb_witness(&fam, 2, &x).unwrap();
            assert!(b.never_exceeds, "{src}");
        }
    }

    #[test]
    fn coefficient_rule_instances() {
        let (k, x) = setup("F2(u)((pi))", "u*pi^-2");
        for e in [1, 2] {
            let emb = DVEmbedding::perfect_residue(&k, e).unwrap();
            let r = verify_lemma88(&emb, 2, &x, 2).unwrap();
            assert!(r.ok, "e={e}: {r:?}");
            assert_eq!(r.image_level, 2 * e - 1);
        }
        let (k, x) = setup("F3(u)((pi))", "u*pi^-3 + pi^-1");
        for e in [1, 2] {
            let emb = DVEmbedding::perfect_residue(&k, e).unwrap();
            let r = verify_lemma88(&emb, 3, &x, 3).unwrap();
            assert!(r.ok, "p=3 e={e}: {r:?}");
        }
        let (k, x) = setup("F2(u)((pi))", "pi^-1");
        let emb = DVEmbedding::perfect_residue(&k, 2).unwrap();
        assert!(verify_lemma88(&emb, 2, &x, 2).unwrap().ok);
    }
}
