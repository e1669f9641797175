//! The lift `phi_n: W_n(K) -> A` for `K = k_0((t_1))...((t_r))` with `k_0`
//! finite, where `A = W_n(k_0)((t_1))...((t_r))` has Galois-ring coefficients.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::fields::galois::{GaloisRing, GrElem};
use crate::fields::ring::{Elem, Ring};

use super::vector::WittVector;

fn galois_cache() -> &'static Mutex<HashMap<(u32, u32, u32), Arc<GaloisRing>>> {
    static C: OnceLock<Mutex<HashMap<(u32, u32, u32), Arc<GaloisRing>>>> = OnceLock::new();
    C.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Shared `W_n(F_q)` instance for the finite field of `k`.
pub fn galois_ring_for(k: &Ring, n: u32) -> Result<Arc<GaloisRing>> {
    let fq = match k.bottom() {
        Ring::Fq(f) => f.clone(),
        other => return Err(Error::UnsupportedResidueField(other.describe())),
    };
    let key = (fq.p(), fq.degree(), n);
    if let Some(g) = galois_cache().lock().unwrap().get(&key) {
        return Ok(g.clone());
    }
    let g = GaloisRing::new(fq, n)?;
    galois_cache().lock().unwrap().insert(key, g.clone());
    Ok(g)
}

/// The ring `A` mirroring the Laurent layers of `k` over `W_n(k_0)`.
pub fn a_ring(k: &Ring, n: u32) -> Result<Ring> {
    match k {
        Ring::Fq(_) => Ok(Ring::Galois(galois_ring_for(k, n)?)),
        Ring::Laurent(l) => Ok(Ring::laurent_with_window(a_ring(&l.base, n)?, &l.var, l.window)),
        other => Err(Error::UnsupportedResidueField(other.describe())),
    }
}

/// Coefficientwise lift of `x` from `k` to `a` using `lift` on `k_0`.
pub fn lift_with(k: &Ring, a: &Ring, x: &Elem, lift: &dyn Fn(u32) -> GrElem) -> Result<Elem> {
    k.map_bottom(a, x, &|c| Ok(Elem::Gr(lift(c.as_fq()))))
}

/// Teichmüller coefficientwise lift.
pub fn teichmuller_lift(k: &Ring, a: &Ring, x: &Elem) -> Result<Elem> {
    let gr = match a.bottom() {
        Ring::Galois(g) => g.clone(),
        _ => return Err(Error::UnsupportedRing(a.describe())),
    };
    lift_with(k, a, x, &|c| gr.teichmuller(c))
}

/// `phi_n(f) = sum_k p^k f~_k^(p^(n-1-k))` (standard indices), computed with
/// the given coefficient lift.
pub fn phi_n_with(k: &Ring, p: u32, f: &WittVector, lift: &dyn Fn(u32) -> GrElem) -> Result<(Ring, Elem)> {
    let n = f.len();
    let a = a_ring(k, n as u32)?;
    let mut acc = a.zero();
    let mut scale = 1i64;
    for (idx, c) in f.comps.iter().enumerate() {
        if !k.is_exact_zero(c) {
            let lifted = lift_with(k, &a, c, lift)?;
            let e = (p as u64).pow((n - 1 - idx) as u32);
            acc = a.add(&acc, &a.mul_i64(&a.pow(&lifted, e), scale));
        }
        scale *= p as i64;
    }
    Ok((a, acc))
}

pub fn phi_n(k: &Ring, p: u32, f: &WittVector) -> Result<(Ring, Elem)> {
    let gr = galois_ring_for(k, f.len() as u32)?;
    phi_n_with(k, p, f, &|c| gr.teichmuller(c))
}
