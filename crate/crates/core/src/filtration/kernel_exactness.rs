//! Exactness check for `0 -> ⊕ fil_{[m/p]} --h--> ⊕ fil_m --Σ F^j--> fil^F_m`.

use crate::error::Result;
use crate::witt::{WittRing, WittVector};

use super::level::naive_level;

/// `h(y)_0 = F(y_0)`, `h(y)_j = F(y_j) - y_{j-1}`; the result has one more slot.
pub fn kernel_map(w: &WittRing, ys: &[WittVector]) -> Result<Vec<WittVector>> {
    let mut out = Vec::with_capacity(ys.len() + 1);
    for j in 0..=ys.len() {
        let fy = match ys.get(j) {
            Some(y) => w.frobenius(y)?,
            None => w.zero(),
        };
        out.push(if j == 0 { fy } else { w.sub(&fy, &ys[j - 1]) });
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct Prop41Report {
    pub sum_is_zero: bool,
    pub in_image: bool,
    pub preimage: Option<Vec<WittVector>>,
    pub failures: Vec<String>,
}

/// If `sum_j F^j(xs[j]) = 0` with all `xs[j] ∈ fil_m`, recover `y` with
/// `h(y) = xs` by eliminating the top slot repeatedly.
pub fn verify_prop41(w: &WittRing, xs: &[WittVector], m: i64) -> Result<Prop41Report> {
    let mut failures = Vec::new();
    for (j, x) in xs.iter().enumerate() {
        let l = naive_level(w, x)?;
        if l > m {
            failures.push(format!("x_{j} has level {l} > {m}"));
        }
    }
    let mut total = w.zero();
    for (j, x) in xs.iter().enumerate() {
        total = w.add(&total, &w.frobenius_pow(x, j as u32)?);
    }
    let sum_is_zero = w.is_zero(&total);
    if !sum_is_zero || !failures.is_empty() {
        return Ok(Prop41Report { sum_is_zero, in_image: false, preimage: None, failures });
    }
    if xs.is_empty() {
        return Ok(Prop41Report { sum_is_zero, in_image: true, preimage: Some(Vec::new()), failures });
    }
    let bound = m.div_euclid(w.p as i64);
    let mut cur: Vec<WittVector> = xs.to_vec();
    let mut pre = vec![w.zero(); xs.len() - 1];
    for i in (1..xs.len()).rev() {
        let l = naive_level(w, &cur[i])?;
        if l > bound {
            failures.push(format!("slot {i} has level {l} > [m/p] = {bound}"));
        }
        // adding h(e_{i-1} * cur[i]) clears slot i
        let y = cur[i].clone();
        cur[i - 1] = w.add(&cur[i - 1], &w.frobenius(&y)?);
        cur[i] = w.zero();
        pre[i - 1] = w.neg(&y);
    }
    if !w.is_zero(&cur[0]) {
        failures.push("slot 0 does not vanish after elimination".into());
    }
    if failures.is_empty() {
        let image = kernel_map(w, &pre)?;
        if image.len() != xs.len() || image.iter().zip(xs).any(|(a, b)| !w.eq(a, b)) {
            failures.push("h(preimage) differs from the input".into());
        }
    }
    let in_image = failures.is_empty();
    Ok(Prop41Report { sum_is_zero, in_image, preimage: in_image.then_some(pre), failures })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::parse::parse_witt;
    use crate::fields::ring::Ring;

    #[test]
    fn kernel_recipe_is_recovered() {
        let k = Ring::laurent(Ring::fq(2, 1).unwrap(), "t");
        let w = WittRing::new(k.clone(), 2, 2).unwrap();
        let z = w.from_comps(parse_witt(&k, "W(t^-1; t^-2)").unwrap()).unwrap();
        let xs = kernel_map(&w, std::slice::from_ref(&z)).unwrap();
        let r = verify_prop41(&w, &xs, 4).unwrap();
        assert!(r.in_image, "{:?}", r.failures);
        assert!(w.eq(&r.preimage.unwrap()[0], &z));
    }

    #[test]
    fn single_zero_slot() {
        let k = Ring::laurent(Ring::fq(2, 1).unwrap(), "t");
        let w = WittRing::new(k, 2, 1).unwrap();
        let r = verify_prop41(&w, &[w.zero()], 1).unwrap();
        assert!(r.in_image);
    }
}
