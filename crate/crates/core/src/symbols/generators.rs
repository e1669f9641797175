//! Generators of the unit filtrations `U^(m)`, `V^(m)` on Milnor K-groups,
//! the maps `s_m`, `s'_m`, the closed-form symbol values on them, and a
//! randomized pairing probe.

use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::fields::forms::{residue1, LogForm};
use crate::fields::ring::{Elem, Ring};
use crate::fields::series::Series;
use crate::filtration::{filf_level, theta_bar, DBarElement};
use crate::witt::{WittRing, WittVector};

use super::local::{higher_local_symbol, MilnorSymbol};

/// Global sign relating the symbol to the closed-form values for odd `p`.
pub const ODD_P_SIGN: i64 = -1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenKind {
    U,
    V,
}

#[derive(Clone, Debug)]
pub struct UnitFiltrationGen {
    pub kind: GenKind,
    pub m: i64,
    pub symbol: MilnorSymbol,
}

fn top(k: &Ring) -> Result<(&Ring, Elem)> {
    let l = k.laurent_ctx().ok_or_else(|| Error::UnsupportedRing(k.describe()))?;
    Ok((&l.base, k.gen()))
}

/// `1 + a t_r^m` for `a` in the layer below.
fn one_plus(k: &Ring, a: &Elem, m: i64) -> Result<Elem> {
    let (lower, _) = top(k)?;
    let s = Series::from_terms(lower, &[(0, lower.one()), (m, a.clone())], None);
    Ok(Elem::Ser(s))
}

/// `s_m(a dlog b_1 ^ ... ^ dlog b_{r-1}) = {1 + a t_r^m, b_1, ..., b_{r-1}}`.
pub fn s_map(k: &Ring, m: i64, a: &Elem, bs: &[Elem]) -> Result<UnitFiltrationGen> {
    let r = k.laurent_depth();
    if m < 1 || bs.len() + 1 != r {
        return Err(Error::ShapeMismatch(format!("s_{m} over {r} layers with {} entries", bs.len())));
    }
    let (lower, _) = top(k)?;
    let mut entries = vec![one_plus(k, a, m)?];
    entries.extend(bs.iter().map(|b| k.lift_from(lower, b)));
    Ok(UnitFiltrationGen { kind: GenKind::V, m, symbol: MilnorSymbol::new(k, entries)? })
}

/// `s'_m(a dlog b_1 ^ ... ^ dlog b_{r-2}) = {1 + a t_r^m, b_1, ..., b_{r-2}, t_r}`.
pub fn sprime_map(k: &Ring, m: i64, a: &Elem, bs: &[Elem]) -> Result<UnitFiltrationGen> {
    let r = k.laurent_depth();
    if m < 1 || r < 2 || bs.len() + 2 != r {
        return Err(Error::ShapeMismatch(format!("s'_{m} over {r} layers with {} entries", bs.len())));
    }
    let (lower, t) = top(k)?;
    let mut entries = vec![one_plus(k, a, m)?];
    entries.extend(bs.iter().map(|b| k.lift_from(lower, b)));
    entries.push(t);
    Ok(UnitFiltrationGen { kind: GenKind::U, m, symbol: MilnorSymbol::new(k, entries)? })
}

/// `±p^{n-1}[c] = ±V^{n-1}(c^(p^(n-1)))` in `W_n(k_0)`, signed by [`ODD_P_SIGN`] for odd `p`.
fn v_power(k0: &Ring, p: u32, n: usize, c: Elem) -> WittVector {
    let c = if p != 2 && ODD_P_SIGN < 0 { k0.neg(&c) } else { c };
    let mut comps = vec![k0.zero(); n];
    comps[n - 1] = k0.frobenius_pow(&c, n as u32 - 1);
    WittVector::new(comps)
}

/// `θ̄_m(φ)` through the greedy witness; requires `φ ∈ fil^F_m`.
pub fn theta_at(w: &WittRing, phi: &WittVector, m: i64) -> Result<DBarElement> {
    let (s, mut wit) = filf_level(w, phi)?;
    if s > m {
        return Err(Error::InvalidDecomposition(format!("level {s} exceeds {m}")));
    }
    wit.level = m;
    theta_bar(w, &wit, m)
}

/// `sum_i c_i^(p^(i+1-n))` in `k_0`.
fn frobenius_sum(k0: &Ring, n: usize, cs: &[(usize, Elem)]) -> Elem {
    let f = k0.bottom_fq().unwrap();
    let mut acc = k0.zero();
    for (i, c) in cs {
        let e = *i as i64 + 1 - n as i64;
        acc = k0.add(&acc, &Elem::Fq(f.frob_pow(c.as_fq(), e)));
    }
    acc
}

/// Closed form of `(φ, 1 + b t^m)` over `kappa((t))` with `kappa` finite:
/// `p^{n-1}[sum_i (a_i b)^(p^(i+1-n))]` where `a_i` is the `dlog t` coordinate
/// of `F^i` in `θ̄_m(φ)`.
pub fn predicted_unit_symbol(w: &WittRing, phi: &WittVector, m: i64, b: &Elem) -> Result<WittVector> {
    let th = theta_at(w, phi, m)?;
    let k0 = w.base.bottom().clone();
    let cs: Vec<(usize, Elem)> = th.coeffs.keys().map(|&i| (i, k0.mul(&th.dlog_coeff(i), b))).collect();
    Ok(v_power(&k0, w.p, w.n, frobenius_sum(&k0, w.n, &cs)))
}

/// Closed form of `(φ, s_m(a dlog b1))` over `k_1((t_2))`.
pub fn predicted_s_symbol(w: &WittRing, phi: &WittVector, m: i64, a: &Elem, b1: &Elem) -> Result<WittVector> {
    let th = theta_at(w, phi, m)?;
    let (k1, _) = top(&w.base)?;
    let k0 = w.base.bottom().clone();
    let form = LogForm::dlog(k1, b1)?.scale(k1, a);
    let mut cs = Vec::new();
    for &i in th.coeffs.keys() {
        cs.push((i, residue1(k1, &form.scale(k1, &th.dlog_coeff(i)))?));
    }
    Ok(v_power(&k0, w.p, w.n, frobenius_sum(&k0, w.n, &cs)))
}

/// Closed form of `(φ, s'_m(b))` over `k_1((t_2))` for `φ ∈ ♭fil^F_m`.
pub fn predicted_sprime_symbol(w: &WittRing, phi: &WittVector, m: i64, b: &Elem) -> Result<WittVector> {
    let th = theta_at(w, phi, m)?;
    let (k1, _) = top(&w.base)?;
    let k0 = w.base.bottom().clone();
    let nb = th.basis.len() - 1;
    let mut cs = Vec::new();
    for (&i, coords) in &th.coeffs {
        let form = LogForm::from_coords(k1, coords[..nb].to_vec()).scale(k1, b);
        cs.push((i, residue1(k1, &form)?));
    }
    Ok(v_power(&k0, w.p, w.n, frobenius_sum(&k0, w.n, &cs)))
}

fn random_lower(rng: &mut ChaCha8Rng, k: &Ring, nonzero: bool) -> Elem {
    let lower = k.base().unwrap();
    loop {
        let x = match lower {
            Ring::Laurent(l) => {
                let kap = &l.base;
                let size = kap.bottom_fq().unwrap().size();
                let terms: Vec<(i64, Elem)> = (-2..=2).map(|e| (e, kap.from_fq(rng.gen_range(0..size)))).collect();
                Elem::Ser(Series::from_terms(kap, &terms, None))
            }
            other => other.from_fq(rng.gen_range(0..other.bottom_fq().unwrap().size())),
        };
        if !nonzero || !lower.is_zero(&x) {
            return x;
        }
    }
}

/// Random generator of `U^(m)` or `V^(m)`.
pub fn random_generator(rng: &mut ChaCha8Rng, k: &Ring, kind: GenKind, m: i64) -> Result<MilnorSymbol> {
    let r = k.laurent_depth();
    let (lower, t) = top(k)?;
    let j = m.max(1) + rng.gen_range(0..3);
    let a = random_lower(rng, k, true);
    let c = random_lower(rng, k, false);
    let x = Elem::Ser(Series::from_terms(lower, &[(0, lower.one()), (j, a), (j + 1, c)], None));
    let mut entries = vec![x];
    for _ in 1..r {
        let y = match (kind, rng.gen_range(0..3)) {
            (GenKind::U, 0) => t.clone(),
            (_, 1) => {
                let u = random_lower(rng, k, true);
                let d = random_lower(rng, k, false);
                Elem::Ser(Series::from_terms(lower, &[(0, u), (1, d)], None))
            }
            _ => k.lift_from(lower, &random_lower(rng, k, true)),
        };
        entries.push(y);
    }
    MilnorSymbol::new(k, entries)
}

#[derive(Clone, Debug)]
pub struct ProbeReport {
    pub tested: usize,
    pub nonzero: Vec<(String, String)>,
}

/// Pair `f` against random generators of `U^(m)` or `V^(m)` and report every
/// nonzero value.
pub fn probe_filtration_via_pairing(
    w: &WittRing,
    f: &WittVector,
    m: i64,
    kind: GenKind,
    trials: usize,
    seed: u64,
) -> Result<ProbeReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let kw = WittRing::new(w.base.bottom().clone(), w.p, w.n)?;
    let mut nonzero = Vec::new();
    for _ in 0..trials {
        let g = random_generator(&mut rng, &w.base, kind, m)?;
        let v = higher_local_symbol(w, f, &g)?;
        if !kw.is_zero(&v) {
            nonzero.push((g.render(&w.base), kw.render(&v)));
        }
    }
    Ok(ProbeReport { tested: trials, nonzero })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::parse::{parse_elem, parse_witt};

    #[test]
    fn s_maps_shapes() {
        let k1 = Ring::laurent(Ring::fq(2, 1).unwrap(), "t");
        let a = k1.base().unwrap().one();
        let g = s_map(&k1, 3, &a, &[]).unwrap();
        assert_eq!(g.symbol.render(&k1), "{1 + t^3}");
        assert!(sprime_map(&k1, 3, &a, &[]).is_err());
        let k2 = Ring::laurent(k1.clone(), "t2");
        let b = parse_elem(&k1, "t").unwrap();
        let a = parse_elem(&k1, "t^-1").unwrap();
        assert_eq!(s_map(&k2, 2, &a, &[b]).unwrap().symbol.render(&k2), "{1 + t^-1*t2^2; t}");
        assert_eq!(sprime_map(&k2, 2, &a, &[]).unwrap().symbol.render(&k2), "{1 + t^-1*t2^2; t2}");
    }

    #[test]
    fn unit_formula_matches_at_p2() {
        let k = Ring::laurent(Ring::fq(2, 2).unwrap(), "t");
        let w = WittRing::new(k.clone(), 2, 2).unwrap();
        let phi = w.from_comps(parse_witt(&k, "W(t^-3; t^-1)").unwrap()).unwrap();
        let kw = WittRing::new(k.bottom().clone(), 2, 2).unwrap();
        let kap = k.base().unwrap();
        for b in 1..4 {
            let b = kap.from_fq(b);
            let g = s_map(&k, 6, &b, &[]).unwrap();
            let got = higher_local_symbol(&w, &phi, &g.symbol).unwrap();
            let want = predicted_unit_symbol(&w, &phi, 6, &b).unwrap();
            assert!(kw.eq(&got, &want), "{} vs {}", kw.render(&got), kw.render(&want));
        }
    }

    fn check_unit(field: &str, n: usize, src: &str, m: i64) {
        let d = crate::fields::descriptor::FieldDescriptor::parse(field).unwrap();
        let k = d.to_ring().unwrap();
        let w = WittRing::new(k.clone(), d.p, n).unwrap();
        let phi = w.from_comps(parse_witt(&k, src).unwrap()).unwrap();
        let kw = WittRing::new(k.bottom().clone(), d.p, n).unwrap();
        let kap = k.base().unwrap();
        for b in 1..k.bottom_fq().unwrap().size() {
            let b = kap.from_fq(b);
            let g = s_map(&k, m, &b, &[]).unwrap();
            let got = higher_local_symbol(&w, &phi, &g.symbol).unwrap();
            let want = predicted_unit_symbol(&w, &phi, m, &b).unwrap();
            assert!(kw.eq(&got, &want), "{field} {src} m={m}: {} vs {}", kw.render(&got), kw.render(&want));
        }
    }

    #[test]
    fn unit_formula_families() {
        for (field, n, src, m) in [
            ("F4((t))", 1, "t^-3 + t^-2", 3),
            ("F4((t))", 1, "t^-6", 3),
            ("F4((t))", 2, "W(0; t^-3)", 3),
            ("F4((t))", 2, "W(t^-1; t^-1)", 2),
            ("F3((t))", 1, "t^-2", 2),
            ("F3((t))", 1, "t^-3 + t^-1", 1),
            ("F9((t))", 1, "t^-4 + t^-1", 4),
            ("F3((t))", 2, "W(t^-1; t^-2)", 3),
            ("F3((t))", 2, "W(0; t^-2)", 2),
        ] {
            check_unit(field, n, src, m);
        }
    }

    fn rank2() -> (Ring, WittRing) {
        let k = Ring::laurent(Ring::laurent(Ring::fq(2, 1).unwrap(), "t1"), "t2");
        let w = WittRing::new(k.clone(), 2, 1).unwrap();
        (k, w)
    }

    #[test]
    fn s_formula_rank_two() {
        let (k, w) = rank2();
        let k1 = k.base().unwrap().clone();
        let kw = WittRing::new(k.bottom().clone(), 2, 1).unwrap();
        let phi = w.from_comps(vec![parse_elem(&k, "t1^-1*t2^-3 + t2^-1").unwrap()]).unwrap();
        for (a, b1) in [("t1^-1", "t1"), ("1", "1 + t1"), ("t1", "t1^-1 + t1"), ("t1^-2", "1 + t1^3")] {
            let a = parse_elem(&k1, a).unwrap();
            let b1 = parse_elem(&k1, b1).unwrap();
            let g = s_map(&k, 3, &a, std::slice::from_ref(&b1)).unwrap();
            let got = higher_local_symbol(&w, &phi, &g.symbol).unwrap();
            let want = predicted_s_symbol(&w, &phi, 3, &a, &b1).unwrap();
            assert!(kw.eq(&got, &want), "{} vs {}", kw.render(&got), kw.render(&want));
        }
    }

    #[test]
    fn sprime_formula_rank_two() {
        let (k, w) = rank2();
        let k1 = k.base().unwrap().clone();
        let kw = WittRing::new(k.bottom().clone(), 2, 1).unwrap();
        let phi = w.from_comps(vec![parse_elem(&k, "t1^-1*t2^-2").unwrap()]).unwrap();
        assert!(theta_at(&w, &phi, 2).unwrap().is_flat());
        for b in ["1", "t1", "t1^-1", "1 + t1"] {
            let b = parse_elem(&k1, b).unwrap();
            let g = sprime_map(&k, 2, &b, &[]).unwrap();
            let got = higher_local_symbol(&w, &phi, &g.symbol).unwrap();
            let want = predicted_sprime_symbol(&w, &phi, 2, &b).unwrap();
            assert!(kw.eq(&got, &want), "{} vs {}", kw.render(&got), kw.render(&want));
        }
    }
}
