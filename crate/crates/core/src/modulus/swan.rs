//! Swan conductor and refined Swan conductor of Artin-Schreier-Witt classes
//! over `κ((t))` with `κ` perfect.

use crate::error::{Error, Result};
use crate::fields::ring::Elem;
use crate::fields::series::Series;
use crate::filtration::level::{laurent_parts, naive_level};
use crate::filtration::theta::{delta, graded_coords};
use crate::filtration::{filf_level, theta_bar, DBarElement};
use crate::witt::{WittRing, WittVector};

/// Representative of `f + (F - 1)W_n(K)` whose naive level is the Swan
/// conductor, with that conductor.
pub fn asw_reduce(w: &WittRing, f: &WittVector) -> Result<(i64, WittVector)> {
    let (kappa, _) = laurent_parts(w)?;
    if !kappa.is_perfect() {
        return Err(Error::UnsupportedResidueField(format!("{} is not perfect", kappa.describe())));
    }
    let p = w.p as i64;
    let mut x = f.clone();
    loop {
        let l = naive_level(w, &x)?;
        if l == 0 {
            return Ok((0, x));
        }
        let mut y = w.zero();
        for (k, comp) in x.comps.iter().enumerate() {
            let pi = p.pow((w.n - 1 - k) as u32);
            if l % pi != 0 {
                continue;
            }
            let e = l / pi;
            let c = comp.as_series().coeff(kappa, -e)?;
            if kappa.is_zero(&c) {
                continue;
            }
            if e % p != 0 {
                return Ok((l, x));
            }
            y.comps[k] = Elem::Ser(Series::monomial(kappa, kappa.pth_root(&c)?, -e / p));
        }
        x = w.add(&w.sub(&x, &w.frobenius(&y)?), &y);
    }
}

/// Least `m` with `f ∈ fil_m W_n(K) + (F - 1)W_n(K)`.
pub fn swan_conductor(w: &WittRing, f: &WittVector) -> Result<i64> {
    Ok(asw_reduce(w, f)?.0)
}

fn graded_at(w: &WittRing, x: &WittVector, m: i64) -> Result<DBarElement> {
    let (kappa, var) = laurent_parts(w)?;
    let mut out = DBarElement::zero(kappa, var, w.base.form_basis(), m);
    let coords = graded_coords(w, &delta(w, x), m)?;
    if coords.iter().any(|c| !kappa.is_zero(c)) {
        out.coeffs.insert(0, coords);
    }
    Ok(out)
}

/// `δ_m` of the reduced representative at `m = ` the Swan conductor.
pub fn refined_swan(w: &WittRing, f: &WittVector) -> Result<DBarElement> {
    let (m, red) = asw_reduce(w, f)?;
    graded_at(w, &red, m)
}

/// Render a refined Swan class as `basis symbol -> "t^-m * c"`.
pub fn render_rsw(r: &DBarElement) -> Vec<(String, String)> {
    let coords = r.collapse();
    r.basis
        .iter()
        .zip(coords)
        .filter(|(_, c)| !r.kappa.is_zero(c))
        .map(|(b, c)| (b.to_string(), format!("{}^-{} * {}", r.var, r.m, r.kappa.render(&c))))
        .collect()
}

#[derive(Clone, Debug)]
pub struct Prop48Report {
    pub level: i64,
    pub swan: i64,
    pub collapse: Vec<Elem>,
    pub rsw: Vec<Elem>,
    pub agrees: bool,
}

/// Compare the collapsed `θ̄_s` at the `fil^F` level `s` with `δ_s` of the
/// reduced representative of the same class.
pub fn verify_prop48(w: &WittRing, f: &WittVector) -> Result<Prop48Report> {
    let (kappa, _) = laurent_parts(w)?;
    let (s, wit) = filf_level(w, f)?;
    let (swan, red) = asw_reduce(w, f)?;
    if s == 0 {
        return Ok(Prop48Report { level: 0, swan, collapse: vec![], rsw: vec![], agrees: swan == 0 });
    }
    let collapse = theta_bar(w, &wit, s)?.collapse();
    let rsw = graded_coords(w, &delta(w, &red), s)?;
    let agrees = swan <= s && collapse.iter().zip(&rsw).all(|(a, b)| kappa.eq(a, b));
    Ok(Prop48Report { level: s, swan, collapse, rsw, agrees })
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
    fn swan_examples() {
        for (n, src, m) in [
            (1, "t^-2", 1),
            (1, "t^-3", 3),
            (1, "1 + t", 0),
            (1, "t^-4 + t^-2 + t^-1", 1),
            (2, "W(t^-1; 0)", 2),
            (2, "W(t^-2; 0)", 2),
            (2, "W(0; t^-4)", 1),
        ] {
            let (w, x) = setup("F2((t))", n, src);
            assert_eq!(swan_conductor(&w, &x).unwrap(), m, "{src}");
        }
        let (w, x) = setup("F2(u)((t))", 1, "u*t^-2");
        assert!(swan_conductor(&w, &x).is_err());
    }

    #[test]
    fn refined_swan_monomial() {
        let (w, x) = setup("F3((t))", 1, "2*t^-5");
        let r = refined_swan(&w, &x).unwrap();
        assert_eq!(r.m, 5);
        assert_eq!(render_rsw(&r), vec![("dlogt".to_string(), "t^-5 * 2".to_string())]);
    }

    #[test]
    fn refined_swan_class_invariance() {
        let (w, x) = setup("F4((t))", 2, "W(t^-3; g*t^-1)");
        let (_, g) = setup("F4((t))", 2, "W(g*t^-1; t^-2)");
        let shifted = w.add(&x, &w.sub(&w.frobenius(&g).unwrap(), &g));
        assert!(refined_swan(&w, &x).unwrap().eq(&refined_swan(&w, &shifted).unwrap()));
    }

    #[test]
    fn graded_class_matches_refined_swan() {
        for (n, src) in [(1, "t^-2 + t^-3"), (1, "t^-4"), (2, "W(t^-2; t^-1)"), (2, "W(t^-3; t^-6)")] {
            let (w, x) = setup("F2((t))", n, src);
            assert!(verify_prop48(&w, &x).unwrap().agrees, "{src}");
        }
    }
}
