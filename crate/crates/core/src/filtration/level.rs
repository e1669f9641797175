//! Pole-order filtration `fil_m`, its Frobenius saturation `fil^F_m`, and the
//! greedy reduction that computes `fil^F` levels with a witness.

use crate::error::{Error, Result};
use crate::fields::ring::{Elem, Ring};
use crate::fields::series::Series;
use crate::witt::{WittRing, WittVector};

/// Maximum number of Frobenius slots the greedy reduction may open.
pub const MAX_SLOTS: usize = 256;

/// `x = sum_j F^j(parts[j])`, each part in `fil_level`.
#[derive(Clone, Debug)]
pub struct FilDecomposition {
    pub parts: Vec<WittVector>,
    pub level: i64,
}

impl FilDecomposition {
    pub fn reconstruct(&self, w: &WittRing) -> Result<WittVector> {
        let mut acc = w.zero();
        for (j, x) in self.parts.iter().enumerate() {
            acc = w.add(&acc, &w.frobenius_pow(x, j as u32)?);
        }
        Ok(acc)
    }

    pub fn is_valid(&self, w: &WittRing) -> Result<bool> {
        for x in &self.parts {
            if naive_level(w, x)? > self.level {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

pub(crate) fn laurent_parts(w: &WittRing) -> Result<(&Ring, &str)> {
    match w.base.laurent_ctx() {
        Some(l) => Ok((&l.base, l.var.as_str())),
        None => Err(Error::UnsupportedRing(format!("{} is not a Laurent field", w.base.describe()))),
    }
}

/// `p`-adic order of a positive integer.
pub fn ord_p(m: i64, p: u32) -> u32 {
    let mut m = m;
    let mut k = 0;
    while m != 0 && m % p as i64 == 0 {
        m /= p as i64;
        k += 1;
    }
    k
}

/// Weight `p^j` of storage index `k` (subscript `j = n - 1 - k`).
fn weight(w: &WittRing, k: usize) -> i64 {
    (w.p as i64).pow((w.n - 1 - k) as u32)
}

/// Pole order `max(0, -v(c))`; a bare `O(t^N)` with `N >= 0` counts as integral.
pub(crate) fn pole_order(c: &Elem) -> Result<i64> {
    let s = c.as_series();
    match (s.coeffs.is_empty(), s.prec) {
        (true, Some(n)) if n >= 0 => Ok(0),
        _ => Ok(s.valuation()?.map_or(0, |v| (-v).max(0))),
    }
}

/// Least `m >= 0` with `x` in `fil_m`.
pub fn naive_level(w: &WittRing, x: &WittVector) -> Result<i64> {
    let mut m = 0;
    for (k, c) in x.comps.iter().enumerate() {
        m = m.max(pole_order(c)? * weight(w, k));
    }
    Ok(m)
}

/// Membership in the no-log piece `♭fil_m`.
pub fn in_flat_fil(w: &WittRing, x: &WittVector, m: i64) -> Result<bool> {
    if m < 1 {
        return Err(Error::ShapeMismatch("flat filtration needs m >= 1".into()));
    }
    if naive_level(w, x)? > m {
        return Ok(false);
    }
    let i = ord_p(m, w.p) as usize;
    if i < w.n && (w.p as i64).pow(i as u32) * pole_order(x.sub(i))? >= m {
        return Ok(false);
    }
    Ok(true)
}

/// Least `s` with `x` in `fil^F_s`, together with a decomposition witness
/// valid at level `s`.
pub fn filf_level(w: &WittRing, x: &WittVector) -> Result<(i64, FilDecomposition)> {
    let (kappa, _) = laurent_parts(w)?;
    let p = w.p as i64;
    let mut parts = vec![x.clone()];
    let mut prev = i64::MAX;
    loop {
        let levels = parts.iter().map(|y| naive_level(w, y)).collect::<Result<Vec<_>>>()?;
        let big_l = levels.iter().copied().max().unwrap_or(0);
        if big_l == 0 {
            return Ok((0, FilDecomposition { parts, level: 0 }));
        }
        if big_l >= prev {
            return Err(Error::InvalidDecomposition(format!("reduction stalled at level {big_l}")));
        }
        prev = big_l;
        let ord = ord_p(big_l, w.p) as usize;
        let mut strips: Vec<Option<WittVector>> = Vec::with_capacity(parts.len());
        for (j, xj) in parts.iter().enumerate() {
            if levels[j] < big_l {
                strips.push(None);
                continue;
            }
            let mut y = w.zero();
            for (k, comp) in xj.comps.iter().enumerate() {
                let i = w.n - 1 - k;
                let pi = p.pow(i as u32);
                if big_l % pi != 0 {
                    continue;
                }
                let e = -big_l / pi;
                let c = comp.as_series().coeff(kappa, e)?;
                if kappa.is_zero(&c) {
                    continue;
                }
                if i == ord || !kappa.is_pth_power(&c)? {
                    return Ok((big_l, FilDecomposition { parts, level: big_l }));
                }
                let root = kappa.pth_root(&c)?;
                y.comps[k] = Elem::Ser(Series::monomial(kappa, root, e / p));
            }
            strips.push(Some(y));
        }
        for (j, y) in strips.into_iter().enumerate() {
            if let Some(y) = y {
                parts[j] = w.sub(&parts[j], &w.frobenius(&y)?);
                if j + 1 == parts.len() {
                    parts.push(y);
                } else {
                    parts[j + 1] = w.add(&parts[j + 1], &y);
                }
            }
        }
        if parts.len() > MAX_SLOTS {
            return Err(Error::CapExceeded(format!("more than {MAX_SLOTS} Frobenius slots")));
        }
    }
}

/// Membership `x ∈ fil^F_m`.
pub fn in_filf(w: &WittRing, x: &WittVector, m: i64) -> Result<bool> {
    Ok(filf_level(w, x)?.0 <= m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::descriptor::FieldDescriptor;
    use crate::fields::parse::parse_witt;

    fn setup(field: &str, n: usize, src: &str) -> (WittRing, WittVector) {
        let d = FieldDescriptor::parse(field).unwrap();
        let k = d.to_ring().unwrap();
        let w = WittRing::new(k.clone(), d.p, n).unwrap();
        let x = w.from_comps(parse_witt(&k, src).unwrap()).unwrap();
        (w, x)
    }

    #[test]
    fn naive_examples() {
        let (w, x) = setup("F2((t))", 2, "W(t^-3; 0)");
        assert_eq!(naive_level(&w, &x).unwrap(), 6);
        let (w, x) = setup("F2((t))", 2, "W(0; t^-3)");
        assert_eq!(naive_level(&w, &x).unwrap(), 3);
        assert_eq!(naive_level(&w, &w.zero()).unwrap(), 0);
    }

    #[test]
    fn flat_membership_examples() {
        let (w, x) = setup("F2((t))", 1, "t^-3");
        assert!(!in_flat_fil(&w, &x, 3).unwrap());
        let (w, x) = setup("F2((t))", 1, "t^-2");
        assert!(in_flat_fil(&w, &x, 2).unwrap());
        let (w, x) = setup("F2((t))", 2, "W(t^-1; 0)");
        assert!(!in_flat_fil(&w, &x, 2).unwrap());
    }

    #[test]
    fn level_examples() {
        for (n, src, s) in [
            (2, "W(t^-2; 0)", 2),
            (2, "W(t^-3; 0)", 6),
            (1, "t^-2 + t^-3", 3),
            (1, "t^-5", 5),
            (2, "W(0; t^-4)", 1),
            (1, "t^-8 + t^-4", 1),
        ] {
            let (w, x) = setup("F2((t))", n, src);
            let (lvl, wit) = filf_level(&w, &x).unwrap();
            assert_eq!(lvl, s, "{src}");
            assert!(wit.is_valid(&w).unwrap());
            assert!(w.eq(&wit.reconstruct(&w).unwrap(), &x));
        }
    }

    #[test]
    fn witness_for_frobenius_image() {
        let (w, x) = setup("F2((t))", 2, "W(t^-2; 0)");
        let (_, wit) = filf_level(&w, &x).unwrap();
        assert_eq!(wit.parts.len(), 2);
        assert_eq!(w.render(&wit.parts[1]), "W(t^-1; 0)");
        assert!(w.is_zero(&wit.parts[0]));
    }

    #[test]
    fn imperfect_residue_blocks_reduction() {
        let (w, x) = setup("F2(u)((t))", 1, "u*t^-2");
        assert_eq!(filf_level(&w, &x).unwrap().0, 2);
        let (w, x) = setup("F2(u)((t))", 1, "u^2*t^-2");
        assert_eq!(filf_level(&w, &x).unwrap().0, 1);
    }
}
