//! Local symbols for `G_m` and `W_n` over `k_r = k_0((t_1))...((t_r))`.

use std::sync::atomic::{AtomicUsize, Ordering};

use crate::error::{Error, Result};
use crate::fields::forms::{higher_residue, LogForm};
use crate::fields::ring::{Elem, Ring, DEFAULT_WINDOW};
use crate::witt::phi::{galois_ring_for, phi_n, teichmuller_lift};
use crate::witt::{WittRing, WittVector};

static RANK_CAP: AtomicUsize = AtomicUsize::new(2);

/// Largest number of Laurent layers accepted by [`higher_local_symbol`].
pub fn rank_cap() -> usize {
    RANK_CAP.load(Ordering::Relaxed)
}

pub fn set_rank_cap(r: usize) {
    RANK_CAP.store(r.max(1), Ordering::Relaxed);
}

/// Ordered Milnor symbol `{g_1, ..., g_r}`.
#[derive(Clone, Debug)]
pub struct MilnorSymbol {
    pub entries: Vec<Elem>,
}

impl MilnorSymbol {
    pub fn new(k: &Ring, entries: Vec<Elem>) -> Result<Self> {
        for e in &entries {
            if k.valuation(e)?.is_none() {
                return Err(Error::DivisionByZero);
            }
        }
        Ok(MilnorSymbol { entries })
    }

    pub fn render(&self, k: &Ring) -> String {
        crate::fields::parse::render_symbol(k, &self.entries)
    }
}

/// Tame symbol `(-1)^{v(f)v(g)} (g^{v(f)} / f^{v(g)})(0)` over `kappa((t))`.
pub fn gm_symbol(k: &Ring, f: &Elem, g: &Elem) -> Result<Elem> {
    let l = k.laurent_ctx().ok_or_else(|| Error::UnsupportedRing(k.describe()))?;
    let vf = k.valuation(f)?.ok_or(Error::DivisionByZero)?;
    let vg = k.valuation(g)?.ok_or(Error::DivisionByZero)?;
    let u = k.div(&k.pow_i64(g, vf)?, &k.pow_i64(f, vg)?)?;
    let c = u.as_series().coeff(&l.base, 0)?;
    Ok(if (vf * vg) % 2 != 0 { l.base.neg(&c) } else { c })
}

/// `F^{1-n} Res(phi_n(f) dlog g~_1 ^ ... ^ dlog g~_r)` in `W_n(k_0)`.
pub fn higher_local_symbol(w: &WittRing, f: &WittVector, g: &MilnorSymbol) -> Result<WittVector> {
    let k = &w.base;
    let r = k.laurent_depth();
    if r == 0 {
        return Err(Error::UnsupportedRing(format!("{} has no Laurent layer", k.describe())));
    }
    if r > rank_cap() {
        return Err(Error::RankCapExceeded(r, rank_cap()));
    }
    if g.entries.len() != r {
        return Err(Error::ShapeMismatch(format!("symbol of length {} over {r} layers", g.entries.len())));
    }
    let n = w.n;
    let spread = (w.p as i64).pow(n as u32 - 1);
    let pole = f.comps.iter().map(|c| k.max_pole(c)).max().unwrap_or(0) * spread
        + g.entries.iter().map(|e| k.max_pole(e)).sum::<i64>();
    let (a0, phi) = phi_n(k, w.p, f)?;
    let a = a0.with_window(DEFAULT_WINDOW.max(2 * pole + 16));
    let mut form = LogForm::function(&a, phi);
    for e in &g.entries {
        let lifted = teichmuller_lift(k, &a, e)?;
        form = form.wedge(&a, &LogForm::dlog(&a, &lifted)?);
    }
    let res = higher_residue(&a, &form)?;
    let gr = galois_ring_for(k, n as u32)?;
    let x = gr.frobenius_pow(res.as_gr(), 1 - n as i64);
    let kappa = k.bottom();
    Ok(WittVector::new(gr.to_witt(&x).into_iter().map(|c| kappa.from_fq(c)).collect()))
}

/// `(f, g)` for a single `g ∈ kappa((t))^×`.
pub fn wn_symbol(w: &WittRing, f: &WittVector, g: &Elem) -> Result<WittVector> {
    higher_local_symbol(w, f, &MilnorSymbol::new(&w.base, vec![g.clone()])?)
}
