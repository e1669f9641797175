//! Precision-tracked Laurent series over a coefficient [`Ring`].

use super::ring::{Elem, LaurentCtx, Ring};
use crate::error::{prec_err, Error, Result};

/// `sum_k coeffs[k] t^(start + k) + O(t^prec)`.
///
/// `prec == None` means the tail is known to vanish. The first and last stored
/// coefficients are nonzero, and nothing is stored at or beyond `prec`.
#[derive(Clone, Debug)]
pub struct Series {
    pub start: i64,
    pub coeffs: Vec<Elem>,
    pub prec: Option<i64>,
}

fn min_prec(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl Series {
    pub fn zero() -> Series {
        Series { start: 0, coeffs: Vec::new(), prec: None }
    }

    /// `O(t^n)`.
    pub fn big_o(n: i64) -> Series {
        Series { start: 0, coeffs: Vec::new(), prec: Some(n) }
    }

    pub fn monomial(base: &Ring, c: Elem, k: i64) -> Series {
        Series::from_parts(base, k, vec![c], None)
    }

    pub fn from_parts(base: &Ring, start: i64, coeffs: Vec<Elem>, prec: Option<i64>) -> Series {
        let mut s = Series { start, coeffs, prec };
        s.normalize(base);
        s
    }

    /// Build from `(exponent, coefficient)` pairs; repeated exponents add up.
    pub fn from_terms(base: &Ring, terms: &[(i64, Elem)], prec: Option<i64>) -> Series {
        if terms.is_empty() {
            return Series { start: 0, coeffs: Vec::new(), prec };
        }
        let lo = terms.iter().map(|t| t.0).min().unwrap();
        let hi = terms.iter().map(|t| t.0).max().unwrap();
        let mut coeffs = vec![base.zero(); (hi - lo + 1) as usize];
        for (k, c) in terms {
            let i = (k - lo) as usize;
            coeffs[i] = base.add(&coeffs[i], c);
        }
        Series::from_parts(base, lo, coeffs, prec)
    }

    fn normalize(&mut self, base: &Ring) {
        if let Some(n) = self.prec {
            let keep = (n - self.start).clamp(0, self.coeffs.len() as i64) as usize;
            self.coeffs.truncate(keep);
        }
        while self.coeffs.last().is_some_and(|c| base.is_zero(c)) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| base.is_zero(c)).count();
        if lead == self.coeffs.len() {
            self.coeffs.clear();
            self.start = 0;
        } else if lead > 0 {
            self.coeffs.drain(..lead);
            self.start += lead as i64;
        }
    }

    pub fn is_exact(&self) -> bool {
        self.prec.is_none()
    }

    /// Highest stored exponent plus one (the start if empty).
    pub fn end(&self) -> i64 {
        self.start + self.coeffs.len() as i64
    }

    /// Valuation; errors when no nonzero coefficient is known below the window.
    pub fn valuation(&self) -> Result<Option<i64>> {
        if !self.coeffs.is_empty() {
            Ok(Some(self.start))
        } else if let Some(n) = self.prec {
            Err(prec_err(format!("valuation undetermined below O(t^{n})")))
        } else {
            Ok(None)
        }
    }

    /// Lower bound for the valuation, counting unknown tails.
    fn effective_val(&self) -> Option<i64> {
        if self.coeffs.is_empty() {
            self.prec
        } else {
            Some(self.start)
        }
    }

    /// Coefficient at exponent `k`; errors if `k` is beyond the window.
    pub fn coeff(&self, base: &Ring, k: i64) -> Result<Elem> {
        if let Some(n) = self.prec {
            if k >= n {
                return Err(prec_err(format!("coefficient of t^{k} beyond O(t^{n})")));
            }
        }
        Ok(self.coeff_unchecked(base, k))
    }

    /// Coefficient at exponent `k`, zero when not stored.
    pub fn coeff_unchecked(&self, base: &Ring, k: i64) -> Elem {
        if k < self.start || k >= self.end() {
            base.zero()
        } else {
            self.coeffs[(k - self.start) as usize].clone()
        }
    }

    /// Nonzero `(exponent, coefficient)` terms.
    pub fn terms<'a>(&'a self, base: &'a Ring) -> impl Iterator<Item = (i64, &'a Elem)> + 'a {
        self.coeffs
            .iter()
            .enumerate()
            .filter(move |(_, c)| !base.is_zero(c))
            .map(move |(i, c)| (self.start + i as i64, c))
    }

    pub fn truncated(&self, base: &Ring, prec: i64) -> Series {
        let p = min_prec(self.prec, Some(prec));
        Series::from_parts(base, self.start, self.coeffs.clone(), p)
    }

    pub fn render(&self, l: &LaurentCtx) -> String {
        let mut parts: Vec<String> = Vec::new();
        for (k, c) in self.terms(&l.base) {
            let cs = l.base.render(c);
            let mono = match k {
                0 => String::new(),
                1 => l.var.clone(),
                _ => format!("{}^{}", l.var, k),
            };
            let needs_paren = cs.contains(' ') || cs.contains('+') || cs.starts_with('-');
            let part = if mono.is_empty() {
                if needs_paren && !parts.is_empty() {
                    format!("({cs})")
                } else {
                    cs
                }
            } else if cs == "1" {
                mono
            } else if needs_paren {
                format!("({cs})*{mono}")
            } else {
                format!("{cs}*{mono}")
            };
            parts.push(part);
        }
        if let Some(n) = self.prec {
            parts.push(if n == 1 { format!("O({})", l.var) } else { format!("O({}^{})", l.var, n) });
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

impl LaurentCtx {
    pub fn add(&self, a: &Series, b: &Series) -> Series {
        let base = &self.base;
        let prec = min_prec(a.prec, b.prec);
        if a.coeffs.is_empty() {
            return Series::from_parts(base, b.start, b.coeffs.clone(), prec);
        }
        if b.coeffs.is_empty() {
            return Series::from_parts(base, a.start, a.coeffs.clone(), prec);
        }
        let lo = a.start.min(b.start);
        let mut hi = a.end().max(b.end());
        if let Some(n) = prec {
            hi = hi.min(n);
        }
        let coeffs = (lo..hi.max(lo))
            .map(|k| {
                let x = a.coeff_unchecked(base, k);
                let y = b.coeff_unchecked(base, k);
                base.add(&x, &y)
            })
            .collect();
        Series::from_parts(base, lo, coeffs, prec)
    }

    pub fn neg(&self, a: &Series) -> Series {
        Series { start: a.start, coeffs: a.coeffs.iter().map(|c| self.base.neg(c)).collect(), prec: a.prec }
    }

    pub fn mul(&self, a: &Series, b: &Series) -> Series {
        let base = &self.base;
        if (a.coeffs.is_empty() && a.prec.is_none()) || (b.coeffs.is_empty() && b.prec.is_none()) {
            return Series::zero();
        }
        let prec = match (a.prec, b.prec) {
            (None, None) => None,
            _ => {
                let va = a.effective_val().unwrap();
                let vb = b.effective_val().unwrap();
                let x = a.prec.map(|n| n + vb);
                let y = b.prec.map(|n| n + va);
                min_prec(x, y)
            }
        };
        if a.coeffs.is_empty() || b.coeffs.is_empty() {
            return Series { start: 0, coeffs: Vec::new(), prec };
        }
        let lo = a.start + b.start;
        let mut len = a.coeffs.len() + b.coeffs.len() - 1;
        if let Some(n) = prec {
            len = len.min((n - lo).max(0) as usize);
        }
        let mut out = vec![base.zero(); len];
        for (i, x) in a.coeffs.iter().enumerate() {
            if i >= len || base.is_zero(x) {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                if base.is_zero(y) {
                    continue;
                }
                out[i + j] = base.add(&out[i + j], &base.mul(x, y));
            }
        }
        Series::from_parts(base, lo, out, prec)
    }

    /// Inverse. Exact monomials stay exact; other exact inputs get a relative
    /// window of `self.window`; windowed `t^v u + O(t^N)` gives `O(t^(N - 2v))`.
    pub fn inv(&self, a: &Series) -> Result<Series> {
        let base = &self.base;
        if a.coeffs.is_empty() {
            return Err(match a.prec {
                None => Error::DivisionByZero,
                Some(n) => prec_err(format!("cannot invert O(t^{n})")),
            });
        }
        let v = a.start;
        let c0inv = base.inv(&a.coeffs[0])?;
        if a.prec.is_none() && a.coeffs.len() == 1 {
            return Ok(Series::monomial(base, c0inv, -v));
        }
        let rel = match a.prec {
            None => self.window,
            Some(n) => n - v,
        };
        let rel_len = rel.max(0) as usize;
        let mut b: Vec<Elem> = Vec::with_capacity(rel_len);
        for k in 0..rel_len {
            if k == 0 {
                b.push(c0inv.clone());
                continue;
            }
            let mut acc = base.zero();
            for i in 1..=k.min(a.coeffs.len() - 1) {
                let ci = &a.coeffs[i];
                if base.is_zero(ci) {
                    continue;
                }
                acc = base.add(&acc, &base.mul(ci, &b[k - i]));
            }
            b.push(base.neg(&base.mul(&c0inv, &acc)));
        }
        Ok(Series::from_parts(base, -v, b, Some(-v + rel)))
    }

    pub fn frobenius(&self, a: &Series, p: u32) -> Series {
        let p = p as i64;
        let base = &self.base;
        let terms: Vec<(i64, Elem)> = a.terms(base).map(|(k, c)| (k * p, base.frobenius(c))).collect();
        Series::from_terms(base, &terms, a.prec.map(|n| n * p))
    }

    pub fn is_pth_power(&self, a: &Series) -> Result<bool> {
        let p = self.base.char_p().ok_or_else(|| Error::CharacteristicMismatch(self.var.clone()))? as i64;
        for (k, c) in a.terms(&self.base) {
            if k.rem_euclid(p) != 0 || !self.base.is_pth_power(c)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn pth_root(&self, a: &Series) -> Result<Series> {
        let base = &self.base;
        let p = base.char_p().ok_or_else(|| Error::CharacteristicMismatch(self.var.clone()))? as i64;
        let mut terms = Vec::new();
        for (k, c) in a.terms(base) {
            if k.rem_euclid(p) != 0 {
                return Err(Error::NotAPthPower(format!("exponent {k} of {}", self.var)));
            }
            terms.push((k / p, base.pth_root(c)?));
        }
        Ok(Series::from_terms(base, &terms, a.prec.map(|n| n.div_euclid(p) + (n.rem_euclid(p) != 0) as i64)))
    }

    /// Coordinates of `d(a)`: lower-layer basis first, then `dlog t`.
    pub fn differential(&self, a: &Series) -> Vec<Elem> {
        let base = &self.base;
        let nb = base.form_basis().len();
        let mut lower: Vec<Vec<(i64, Elem)>> = vec![Vec::new(); nb];
        let mut logpart = Vec::new();
        for (k, c) in a.terms(base) {
            for (j, dc) in base.differential(c).into_iter().enumerate() {
                lower[j].push((k, dc));
            }
            logpart.push((k, base.mul_i64(c, k)));
        }
        let mut out: Vec<Elem> = lower.into_iter().map(|t| Elem::Ser(Series::from_terms(base, &t, a.prec))).collect();
        out.push(Elem::Ser(Series::from_terms(base, &logpart, a.prec)));
        out
    }
}
