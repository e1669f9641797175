//! The map `delta`, the graded target `D̄_m` and the refined map `θ̄_m`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::fields::forms::LogForm;
use crate::fields::ring::{Elem, FormSymbol, Ring};
use crate::witt::{WittRing, WittVector};

use super::level::{filf_level, laurent_parts, naive_level, FilDecomposition};

/// `delta(x) = sum_j a_j^(p^j - 1) d(a_j)` for `x = (a_{n-1}, ..., a_0)`.
pub fn delta(w: &WittRing, x: &WittVector) -> LogForm {
    let k = &w.base;
    let mut acc = LogForm::zero(k, 1);
    for (idx, a) in x.comps.iter().enumerate() {
        if k.is_exact_zero(a) {
            continue;
        }
        let j = (w.n - 1 - idx) as u32;
        let e = (w.p as u64).pow(j) - 1;
        let term = LogForm::d(k, a).scale(k, &k.pow(a, e));
        acc = acc.add(k, &term);
    }
    acc
}

/// Element `sum_j F^j ⊗ (sum_b c_{j,b} e_b) ⊗ t^{-m}` of `D̄_m`, stored as
/// residue-field coordinates on the 1-form basis for each power of `F`.
#[derive(Clone, Debug)]
pub struct DBarElement {
    pub m: i64,
    pub kappa: Ring,
    pub var: String,
    pub basis: Vec<FormSymbol>,
    pub coeffs: BTreeMap<usize, Vec<Elem>>,
}

impl DBarElement {
    pub fn zero(kappa: &Ring, var: &str, basis: Vec<FormSymbol>, m: i64) -> Self {
        DBarElement { m, kappa: kappa.clone(), var: var.to_string(), basis, coeffs: BTreeMap::new() }
    }

    fn insert(&mut self, j: usize, coords: Vec<Elem>) {
        if coords.iter().all(|c| self.kappa.is_zero(c)) {
            return;
        }
        let k = self.kappa.clone();
        match self.coeffs.get_mut(&j) {
            Some(old) => {
                for (o, c) in old.iter_mut().zip(coords) {
                    *o = k.add(o, &c);
                }
                if old.iter().all(|c| k.is_zero(c)) {
                    self.coeffs.remove(&j);
                }
            }
            None => {
                self.coeffs.insert(j, coords);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn dlog_index(&self) -> usize {
        self.basis.len() - 1
    }

    /// Coordinate of `F^j ⊗ dlog t ⊗ t^{-m}`.
    pub fn dlog_coeff(&self, j: usize) -> Elem {
        self.coeffs.get(&j).map(|v| v[self.dlog_index()].clone()).unwrap_or_else(|| self.kappa.zero())
    }

    /// Lies in the no-log part `♭D̄_m`.
    pub fn is_flat(&self) -> bool {
        self.coeffs.keys().all(|&j| self.kappa.is_zero(&self.dlog_coeff(j)))
    }

    /// Image under `sum_j F^j a_j -> sum_j a_j`.
    pub fn collapse(&self) -> Vec<Elem> {
        let mut out = vec![self.kappa.zero(); self.basis.len()];
        for v in self.coeffs.values() {
            for (o, c) in out.iter_mut().zip(v) {
                *o = self.kappa.add(o, c);
            }
        }
        out
    }

    pub fn eq(&self, other: &DBarElement) -> bool {
        if self.m != other.m || self.basis != other.basis {
            return false;
        }
        let keys: std::collections::BTreeSet<usize> = self.coeffs.keys().chain(other.coeffs.keys()).copied().collect();
        let z = vec![self.kappa.zero(); self.basis.len()];
        keys.into_iter().all(|j| {
            let a = self.coeffs.get(&j).unwrap_or(&z);
            let b = other.coeffs.get(&j).unwrap_or(&z);
            a.iter().zip(b).all(|(x, y)| self.kappa.eq(x, y))
        })
    }

    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (j, v) in &self.coeffs {
            for (b, c) in self.basis.iter().zip(v) {
                if self.kappa.is_zero(c) {
                    continue;
                }
                let fj = match j {
                    0 => String::new(),
                    1 => "F ⊗ ".to_string(),
                    _ => format!("F^{j} ⊗ "),
                };
                parts.push(format!("{fj}({})*{b} ⊗ {}^-{}", self.kappa.render(c), self.var, self.m));
            }
        }
        parts.join(" + ")
    }
}

/// Residue-field coordinates of the `t^{-m}` part of a 1-form.
pub fn graded_coords(w: &WittRing, form: &LogForm, m: i64) -> Result<Vec<Elem>> {
    let (kappa, _) = laurent_parts(w)?;
    let basis = w.base.form_basis();
    basis.iter().map(|s| form.coeff_of(&w.base, s).as_series().coeff(kappa, -m)).collect()
}

/// `θ̄_m(sum_j F^j x_j) = sum_j F^j ⊗ δ̄_m(x_j)`; every part must lie in `fil_m`.
pub fn theta_bar(w: &WittRing, dec: &FilDecomposition, m: i64) -> Result<DBarElement> {
    let (kappa, var) = laurent_parts(w)?;
    let mut out = DBarElement::zero(kappa, var, w.base.form_basis(), m);
    for (j, x) in dec.parts.iter().enumerate() {
        let lvl = naive_level(w, x)?;
        if lvl > m {
            return Err(Error::InvalidDecomposition(format!("part {j} has level {lvl} > {m}")));
        }
        out.insert(j, graded_coords(w, &delta(w, x), m)?);
    }
    Ok(out)
}

/// Least `m >= 1` with `x` in `♭fil^F_m`.
pub fn flat_filf_min(w: &WittRing, x: &WittVector) -> Result<i64> {
    let (s, wit) = filf_level(w, x)?;
    if s == 0 {
        return Ok(1);
    }
    Ok(if theta_bar(w, &wit, s)?.is_flat() { s } else { s + 1 })
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
    fn delta_top_component() {
        let (w, x) = setup("F2((t))", 2, "W(t^-3; 0)");
        assert_eq!(delta(&w, &x).render(&w.base), "(t^-6)*dlogt");
    }

    #[test]
    fn theta_of_monomial() {
        let (w, x) = setup("F3((t))", 1, "t^-2");
        let th = theta_bar(&w, &FilDecomposition { parts: vec![x], level: 2 }, 2).unwrap();
        assert_eq!(th.render(), "(1)*dlogt ⊗ t^-2");
    }

    #[test]
    fn theta_vanishes_on_lower_frobenius_part() {
        let (w, y) = setup("F2((t))", 1, "t^-1");
        let dec = FilDecomposition { parts: vec![w.zero(), y], level: 2 };
        assert!(theta_bar(&w, &dec, 2).unwrap().is_zero());
    }

    #[test]
    fn flat_examples() {
        for (field, n, src, m) in [
            ("F2((t))", 2, "W(t^-3; 0)", 7),
            ("F2(u)((t))", 1, "u*t^-2", 2),
            ("F2(u)((t))", 1, "u*t^-3", 4),
            ("F2((t))", 1, "0", 1),
            ("F2((t))", 1, "t^-2", 2),
        ] {
            let (w, x) = setup(field, n, src);
            assert_eq!(flat_filf_min(&w, &x).unwrap(), m, "{field} {src}");
        }
    }

    #[test]
    fn theta_independent_of_decomposition() {
        let (w, x) = setup("F2(u)((t))", 1, "u*t^-3 + t^-4");
        let (s, wit) = filf_level(&w, &x).unwrap();
        let z = w.from_comps(vec![parse_witt(&w.base, "u*t^-1").unwrap().remove(0)]).unwrap();
        let mut alt = wit.clone();
        alt.parts[0] = w.add(&alt.parts[0], &w.frobenius(&z).unwrap());
        if alt.parts.len() < 2 {
            alt.parts.push(w.zero());
        }
        alt.parts[1] = w.sub(&alt.parts[1], &z);
        assert!(w.eq(&alt.reconstruct(&w).unwrap(), &wit.reconstruct(&w).unwrap()));
        assert!(theta_bar(&w, &wit, s).unwrap().eq(&theta_bar(&w, &alt, s).unwrap()));
    }
}
