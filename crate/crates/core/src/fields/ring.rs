//! Dynamic coefficient rings and their elements.
//!
//! A [`Ring`] is a lightweight handle (cheap to clone) that knows how to
//! operate on [`Elem`] values. Laurent layers nest arbitrarily, which gives
//! the field towers `k_r = k_{r-1}((t_r))` and the coefficient rings
//! `A_r = A_{r-1}[[t_r]][t_r^{-1}]` over a Galois ring.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::fq::{FqCtx, FqEmbedding};
use super::galois::{GaloisRing, GrElem};
use super::ratfn::{RatCtx, RatFn};
use super::series::Series;
use crate::error::{Error, Result};

pub const DEFAULT_WINDOW: i64 = 32;

#[derive(Clone)]
pub enum Ring {
    /// The integers.
    Int,
    /// `Z/m`.
    Zmod(u64),
    Fq(Arc<FqCtx>),
    Galois(Arc<GaloisRing>),
    Rat(Arc<RatCtx>),
    Laurent(Arc<LaurentCtx>),
}

#[derive(Debug)]
pub struct LaurentCtx {
    pub base: Ring,
    pub var: String,
    /// Relative precision used when an exact series must be truncated.
    pub window: i64,
}

#[derive(Clone, Debug)]
pub enum Elem {
    Int(BigInt),
    Mod(u64),
    Fq(u32),
    Gr(GrElem),
    Rat(RatFn),
    Ser(Series),
}

/// A basis symbol of the module of (logarithmic) 1-forms.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FormSymbol {
    /// `d(v)` for a p-base variable of a rational layer.
    D(String),
    /// `dlog(t)` for a Laurent variable.
    Dlog(String),
}

impl fmt::Display for FormSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormSymbol::D(v) => write!(f, "d{v}"),
            FormSymbol::Dlog(v) => write!(f, "dlog{v}"),
        }
    }
}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.describe())
    }
}

macro_rules! unwrap_elem {
    ($e:expr, $variant:ident) => {
        match $e {
            Elem::$variant(x) => x,
            other => panic!("element {:?} does not belong to this ring", other),
        }
    };
}

impl Elem {
    pub fn as_series(&self) -> &Series {
        unwrap_elem!(self, Ser)
    }
    pub fn as_fq(&self) -> u32 {
        *unwrap_elem!(self, Fq)
    }
    pub fn as_gr(&self) -> &GrElem {
        unwrap_elem!(self, Gr)
    }
    pub fn as_rat(&self) -> &RatFn {
        unwrap_elem!(self, Rat)
    }
    pub fn as_int(&self) -> &BigInt {
        unwrap_elem!(self, Int)
    }
}

impl Ring {
    pub fn fq(p: u32, e: u32) -> Result<Ring> {
        Ok(Ring::Fq(FqCtx::new(p, e)?))
    }

    pub fn laurent(base: Ring, var: &str) -> Ring {
        Ring::laurent_with_window(base, var, DEFAULT_WINDOW)
    }

    pub fn laurent_with_window(base: Ring, var: &str, window: i64) -> Ring {
        Ring::Laurent(Arc::new(LaurentCtx { base, var: var.to_string(), window }))
    }

    pub fn rational(fq: Arc<FqCtx>, vars: &[&str]) -> Ring {
        Ring::Rat(Arc::new(RatCtx::new(fq, vars.iter().map(|s| s.to_string()).collect(), false)))
    }

    pub fn perfection(fq: Arc<FqCtx>, vars: &[&str]) -> Ring {
        Ring::Rat(Arc::new(RatCtx::new(fq, vars.iter().map(|s| s.to_string()).collect(), true)))
    }

    pub fn describe(&self) -> String {
        match self {
            Ring::Int => "Z".into(),
            Ring::Zmod(m) => format!("Z/{m}"),
            Ring::Fq(f) => format!("F{}", f.size()),
            Ring::Galois(g) => format!("W{}(F{})", g.length(), g.fq().size()),
            Ring::Rat(r) => {
                let base = format!("F{}({})", r.fq.size(), r.vars.join(","));
                if r.perfect {
                    format!("{base}^perf")
                } else {
                    base
                }
            }
            Ring::Laurent(l) => format!("{}(({}))", l.base.describe(), l.var),
        }
    }

    pub fn laurent_ctx(&self) -> Option<&Arc<LaurentCtx>> {
        match self {
            Ring::Laurent(l) => Some(l),
            _ => None,
        }
    }

    /// The ring one layer down (for Laurent layers).
    pub fn base(&self) -> Option<&Ring> {
        self.laurent_ctx().map(|l| &l.base)
    }

    /// The bottom non-Laurent ring.
    pub fn bottom(&self) -> &Ring {
        match self {
            Ring::Laurent(l) => l.base.bottom(),
            other => other,
        }
    }

    /// The finite field underlying the bottom layer, if any.
    pub fn bottom_fq(&self) -> Option<Arc<FqCtx>> {
        match self.bottom() {
            Ring::Fq(f) => Some(f.clone()),
            Ring::Rat(r) => Some(r.fq.clone()),
            Ring::Galois(g) => Some(g.fq().clone()),
            _ => None,
        }
    }

    /// Number of Laurent layers.
    pub fn laurent_depth(&self) -> usize {
        match self {
            Ring::Laurent(l) => 1 + l.base.laurent_depth(),
            _ => 0,
        }
    }

    /// The prime p if the ring has characteristic p.
    pub fn char_p(&self) -> Option<u32> {
        match self {
            Ring::Fq(f) => Some(f.p()),
            Ring::Rat(r) => Some(r.fq.p()),
            Ring::Laurent(l) => l.base.char_p(),
            Ring::Zmod(m) if super::fq::is_prime(*m) => Some(*m as u32),
            Ring::Galois(g) if g.length() == 1 => Some(g.p() as u32),
            _ => None,
        }
    }

    /// Characteristic as an integer (0 for Z).
    pub fn characteristic(&self) -> u64 {
        match self {
            Ring::Int => 0,
            Ring::Zmod(m) => *m,
            Ring::Fq(f) => f.p() as u64,
            Ring::Galois(g) => g.char_modulus(),
            Ring::Rat(r) => r.fq.p() as u64,
            Ring::Laurent(l) => l.base.characteristic(),
        }
    }

    /// Whether every element is a p-th power (finite fields and perfections).
    pub fn is_perfect(&self) -> bool {
        match self {
            Ring::Fq(_) => true,
            Ring::Rat(r) => r.perfect,
            _ => false,
        }
    }

    pub fn is_field(&self) -> bool {
        match self {
            Ring::Fq(_) | Ring::Rat(_) => true,
            Ring::Laurent(l) => l.base.is_field(),
            Ring::Zmod(m) => super::fq::is_prime(*m),
            Ring::Galois(g) => g.length() == 1,
            Ring::Int => false,
        }
    }

    pub fn zero(&self) -> Elem {
        match self {
            Ring::Int => Elem::Int(BigInt::zero()),
            Ring::Zmod(_) => Elem::Mod(0),
            Ring::Fq(_) => Elem::Fq(0),
            Ring::Galois(g) => Elem::Gr(g.zero()),
            Ring::Rat(r) => Elem::Rat(r.zero()),
            Ring::Laurent(_) => Elem::Ser(Series::zero()),
        }
    }

    pub fn one(&self) -> Elem {
        self.from_i64(1)
    }

    pub fn from_i64(&self, k: i64) -> Elem {
        match self {
            Ring::Int => Elem::Int(BigInt::from(k)),
            Ring::Zmod(m) => Elem::Mod(k.rem_euclid(*m as i64) as u64),
            Ring::Fq(f) => Elem::Fq(f.from_i64(k)),
            Ring::Galois(g) => Elem::Gr(g.from_i64(k)),
            Ring::Rat(r) => Elem::Rat(r.constant(r.fq.from_i64(k))),
            Ring::Laurent(l) => {
                let c = l.base.from_i64(k);
                Elem::Ser(Series::monomial(&l.base, c, 0))
            }
        }
    }

    pub fn from_bigint(&self, k: &BigInt) -> Elem {
        match self {
            Ring::Int => Elem::Int(k.clone()),
            _ => {
                let c = self.characteristic();
                let r = if c == 0 {
                    k.to_i64().expect("integer too large")
                } else {
                    let m = BigInt::from(c);
                    (((k % &m) + &m) % &m).to_i64().unwrap()
                };
                self.from_i64(r)
            }
        }
    }

    /// Embed an element of the bottom finite field. For Galois rings this is
    /// the Teichmüller representative.
    pub fn from_fq(&self, c: u32) -> Elem {
        match self {
            Ring::Fq(_) => Elem::Fq(c),
            Ring::Rat(r) => Elem::Rat(r.constant(c)),
            Ring::Galois(g) => Elem::Gr(g.teichmuller(c)),
            Ring::Laurent(l) => Elem::Ser(Series::monomial(&l.base, l.base.from_fq(c), 0)),
            Ring::Int | Ring::Zmod(_) => self.from_i64(c as i64),
        }
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        match self {
            Ring::Int => Elem::Int(a.as_int() + b.as_int()),
            Ring::Zmod(m) => Elem::Mod((unwrap_elem!(a, Mod) + unwrap_elem!(b, Mod)) % m),
            Ring::Fq(f) => Elem::Fq(f.add(a.as_fq(), b.as_fq())),
            Ring::Galois(g) => Elem::Gr(g.add(a.as_gr(), b.as_gr())),
            Ring::Rat(r) => Elem::Rat(r.add(a.as_rat(), b.as_rat())),
            Ring::Laurent(l) => Elem::Ser(l.add(a.as_series(), b.as_series())),
        }
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        match self {
            Ring::Int => Elem::Int(-a.as_int()),
            Ring::Zmod(m) => Elem::Mod((m - unwrap_elem!(a, Mod)) % m),
            Ring::Fq(f) => Elem::Fq(f.neg(a.as_fq())),
            Ring::Galois(g) => Elem::Gr(g.neg(a.as_gr())),
            Ring::Rat(r) => Elem::Rat(r.neg(a.as_rat())),
            Ring::Laurent(l) => Elem::Ser(l.neg(a.as_series())),
        }
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        match self {
            Ring::Int => Elem::Int(a.as_int() * b.as_int()),
            Ring::Zmod(m) => {
                Elem::Mod(((*unwrap_elem!(a, Mod) as u128 * *unwrap_elem!(b, Mod) as u128) % *m as u128) as u64)
            }
            Ring::Fq(f) => Elem::Fq(f.mul(a.as_fq(), b.as_fq())),
            Ring::Galois(g) => Elem::Gr(g.mul(a.as_gr(), b.as_gr())),
            Ring::Rat(r) => Elem::Rat(r.mul(a.as_rat(), b.as_rat())),
            Ring::Laurent(l) => Elem::Ser(l.mul(a.as_series(), b.as_series())),
        }
    }

    pub fn mul_i64(&self, a: &Elem, k: i64) -> Elem {
        if k == 1 {
            return a.clone();
        }
        self.mul(a, &self.from_i64(k))
    }

    pub fn inv(&self, a: &Elem) -> Result<Elem> {
        match self {
            Ring::Int => {
                let v = a.as_int();
                if v.abs().is_one() {
                    Ok(Elem::Int(v.clone()))
                } else {
                    Err(Error::DivisionByZero)
                }
            }
            Ring::Zmod(m) => {
                let x = *unwrap_elem!(a, Mod) as i64;
                let g = num_integer::Integer::extended_gcd(&x, &(*m as i64));
                if g.gcd != 1 {
                    return Err(Error::DivisionByZero);
                }
                Ok(Elem::Mod(g.x.rem_euclid(*m as i64) as u64))
            }
            Ring::Fq(f) => Ok(Elem::Fq(f.inv(a.as_fq())?)),
            Ring::Galois(g) => Ok(Elem::Gr(g.inv(a.as_gr())?)),
            Ring::Rat(r) => Ok(Elem::Rat(r.inv(a.as_rat())?)),
            Ring::Laurent(l) => Ok(Elem::Ser(l.inv(a.as_series())?)),
        }
    }

    pub fn div(&self, a: &Elem, b: &Elem) -> Result<Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &Elem, k: u64) -> Elem {
        let mut acc = self.one();
        let mut base = a.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// `a^k` for a possibly negative exponent.
    pub fn pow_i64(&self, a: &Elem, k: i64) -> Result<Elem> {
        if k >= 0 {
            Ok(self.pow(a, k as u64))
        } else {
            Ok(self.pow(&self.inv(a)?, k.unsigned_abs()))
        }
    }

    /// Zero within the known precision window.
    pub fn is_zero(&self, a: &Elem) -> bool {
        match (self, a) {
            (Ring::Int, Elem::Int(x)) => x.is_zero(),
            (_, Elem::Mod(x)) => *x == 0,
            (_, Elem::Fq(x)) => *x == 0,
            (Ring::Galois(g), Elem::Gr(x)) => g.is_zero(x),
            (Ring::Rat(r), Elem::Rat(x)) => r.is_zero(x),
            (Ring::Laurent(_), Elem::Ser(s)) => s.coeffs.is_empty(),
            _ => panic!("element {:?} does not belong to {:?}", a, self),
        }
    }

    /// Zero with certainty (no unknown tail).
    pub fn is_exact_zero(&self, a: &Elem) -> bool {
        match a {
            Elem::Ser(s) => s.coeffs.is_empty() && s.prec.is_none(),
            _ => self.is_zero(a),
        }
    }

    pub fn eq(&self, a: &Elem, b: &Elem) -> bool {
        match (self, a, b) {
            (Ring::Rat(r), Elem::Rat(x), Elem::Rat(y)) => r.eq(x, y),
            _ => self.is_zero(&self.sub(a, b)),
        }
    }

    /// The p-th power map (the ring must have characteristic p for this to be
    /// a homomorphism).
    pub fn frobenius(&self, a: &Elem) -> Elem {
        match self {
            Ring::Fq(f) => Elem::Fq(f.frob(a.as_fq())),
            Ring::Rat(r) => Elem::Rat(r.frobenius(a.as_rat())),
            Ring::Laurent(l) => {
                let p = self.char_p().expect("Frobenius on a ring without prime characteristic");
                Elem::Ser(l.frobenius(a.as_series(), p))
            }
            _ => {
                let p = self.characteristic();
                self.pow(a, p.max(1))
            }
        }
    }

    pub fn frobenius_pow(&self, a: &Elem, k: u32) -> Elem {
        let mut x = a.clone();
        for _ in 0..k {
            x = self.frobenius(&x);
        }
        x
    }

    pub fn is_pth_power(&self, a: &Elem) -> Result<bool> {
        match self {
            Ring::Fq(_) => Ok(true),
            Ring::Rat(r) => Ok(r.is_pth_power(a.as_rat())),
            Ring::Laurent(l) => l.is_pth_power(a.as_series()),
            _ => Err(Error::CharacteristicMismatch(self.describe())),
        }
    }

    pub fn pth_root(&self, a: &Elem) -> Result<Elem> {
        match self {
            Ring::Fq(f) => Ok(Elem::Fq(f.frob_inv(a.as_fq()))),
            Ring::Rat(r) => Ok(Elem::Rat(r.pth_root(a.as_rat())?)),
            Ring::Laurent(l) => Ok(Elem::Ser(l.pth_root(a.as_series())?)),
            _ => Err(Error::CharacteristicMismatch(self.describe())),
        }
    }

    /// Declared p-base of the layer (empty for perfect layers).
    pub fn p_base(&self) -> Vec<Elem> {
        match self {
            Ring::Rat(r) if !r.perfect => (0..r.vars.len()).map(|i| Elem::Rat(r.var(i))).collect(),
            Ring::Laurent(l) => {
                let mut out: Vec<Elem> =
                    l.base.p_base().into_iter().map(|b| Elem::Ser(Series::monomial(&l.base, b, 0))).collect();
                out.push(Elem::Ser(Series::monomial(&l.base, l.base.one(), 1)));
                out
            }
            _ => Vec::new(),
        }
    }

    /// Basis of the 1-forms: `d(v)` for rational variables and `dlog(t)` for
    /// Laurent variables, lower layers first.
    pub fn form_basis(&self) -> Vec<FormSymbol> {
        match self {
            Ring::Rat(r) if !r.perfect => r.vars.iter().map(|v| FormSymbol::D(v.clone())).collect(),
            Ring::Laurent(l) => {
                let mut b = l.base.form_basis();
                b.push(FormSymbol::Dlog(l.var.clone()));
                b
            }
            _ => Vec::new(),
        }
    }

    /// Coordinates of `d(a)` on [`Ring::form_basis`].
    pub fn differential(&self, a: &Elem) -> Vec<Elem> {
        match self {
            Ring::Rat(r) if !r.perfect => (0..r.vars.len()).map(|i| Elem::Rat(r.partial(a.as_rat(), i))).collect(),
            Ring::Laurent(l) => l.differential(a.as_series()),
            _ => Vec::new(),
        }
    }

    /// Laurent valuation (None for an exact zero).
    pub fn valuation(&self, a: &Elem) -> Result<Option<i64>> {
        match self {
            Ring::Laurent(_) => a.as_series().valuation(),
            _ => Ok(if self.is_zero(a) { None } else { Some(0) }),
        }
    }

    /// Apply `f` to every bottom-level coefficient, producing an element of
    /// `target`, which must have the same Laurent layering.
    pub fn map_bottom(&self, target: &Ring, a: &Elem, f: &dyn Fn(&Elem) -> Result<Elem>) -> Result<Elem> {
        match (self, target) {
            (Ring::Laurent(l), Ring::Laurent(lt)) => {
                let s = a.as_series();
                let coeffs = s.coeffs.iter().map(|c| l.base.map_bottom(&lt.base, c, f)).collect::<Result<Vec<_>>>()?;
                Ok(Elem::Ser(Series::from_parts(&lt.base, s.start, coeffs, s.prec)))
            }
            (Ring::Laurent(_), _) | (_, Ring::Laurent(_)) => {
                Err(Error::ShapeMismatch(format!("{:?} vs {:?}", self, target)))
            }
            _ => f(a),
        }
    }

    /// Same Laurent layering over a different bottom ring.
    pub fn with_bottom(&self, bottom: Ring) -> Ring {
        match self {
            Ring::Laurent(l) => Ring::laurent_with_window(l.base.with_bottom(bottom), &l.var, l.window),
            _ => bottom,
        }
    }

    /// Same ring with every Laurent layer using relative window `window`.
    pub fn with_window(&self, window: i64) -> Ring {
        match self {
            Ring::Laurent(l) => Ring::laurent_with_window(l.base.with_window(window), &l.var, window),
            other => other.clone(),
        }
    }

    /// Largest pole order of `a` in any Laurent variable (0 if none).
    pub fn max_pole(&self, a: &Elem) -> i64 {
        match self {
            Ring::Laurent(l) => {
                let s = a.as_series();
                let own = match s.valuation() {
                    Ok(Some(v)) if v < 0 => -v,
                    _ => 0,
                };
                s.coeffs.iter().map(|c| l.base.max_pole(c)).fold(own, i64::max)
            }
            _ => 0,
        }
    }

    /// Change of bottom finite field along an embedding.
    pub fn map_fq(&self, target: &Ring, a: &Elem, emb: &FqEmbedding) -> Result<Elem> {
        let tb = target.bottom().clone();
        self.map_bottom(target, a, &|c| match (&tb, c) {
            (Ring::Fq(_), Elem::Fq(x)) => Ok(Elem::Fq(emb.apply(*x))),
            (Ring::Rat(rt), Elem::Rat(x)) => {
                let src = match self.bottom() {
                    Ring::Rat(rs) => rs.clone(),
                    _ => unreachable!(),
                };
                Ok(Elem::Rat(src.map_coeffs(rt, x, &|v| emb.apply(v))))
            }
            (Ring::Rat(rt), Elem::Fq(x)) => Ok(Elem::Rat(rt.constant(emb.apply(*x)))),
            _ => Err(Error::ShapeMismatch("incompatible bottom rings".into())),
        })
    }

    /// Truncate to a precision window (no-op on coefficients below it).
    pub fn truncate(&self, a: &Elem, prec: i64) -> Elem {
        match self {
            Ring::Laurent(l) => Elem::Ser(a.as_series().truncated(&l.base, prec)),
            _ => a.clone(),
        }
    }

    pub fn render(&self, a: &Elem) -> String {
        match (self, a) {
            (Ring::Int, Elem::Int(x)) => x.to_string(),
            (Ring::Zmod(_), Elem::Mod(x)) => x.to_string(),
            (Ring::Fq(f), Elem::Fq(x)) => f.render(*x),
            (Ring::Galois(g), Elem::Gr(x)) => g.render(x),
            (Ring::Rat(r), Elem::Rat(x)) => r.render(x),
            (Ring::Laurent(l), Elem::Ser(s)) => s.render(l),
            _ => format!("<{:?}>", a),
        }
    }

    /// The Laurent variable `t` of this layer.
    pub fn gen(&self) -> Elem {
        let l = self.laurent_ctx().expect("not a Laurent ring");
        Elem::Ser(Series::monomial(&l.base, l.base.one(), 1))
    }

    /// `c * t^k` with `c` in the layer below.
    pub fn monomial(&self, c: Elem, k: i64) -> Elem {
        let l = self.laurent_ctx().expect("not a Laurent ring");
        Elem::Ser(Series::monomial(&l.base, c, k))
    }

    /// Look up a named variable anywhere in the tower and lift it here.
    pub fn variable(&self, name: &str) -> Option<Elem> {
        match self {
            Ring::Fq(f) if name == "g" && f.degree() > 1 => Some(Elem::Fq(f.generator())),
            Ring::Galois(g) if name == "g" && g.fq().degree() > 1 => Some(Elem::Gr(g.teichmuller(g.fq().generator()))),
            Ring::Rat(r) => {
                if let Some(i) = r.vars.iter().position(|v| v == name) {
                    Some(Elem::Rat(r.var(i)))
                } else if name == "g" && r.fq.degree() > 1 {
                    Some(Elem::Rat(r.constant(r.fq.generator())))
                } else {
                    None
                }
            }
            Ring::Laurent(l) => {
                if l.var == name {
                    Some(self.gen())
                } else {
                    l.base.variable(name).map(|c| Elem::Ser(Series::monomial(&l.base, c, 0)))
                }
            }
            _ => None,
        }
    }

    /// Lift an element of a lower layer through constant embeddings.
    pub fn lift_from(&self, lower: &Ring, a: &Elem) -> Elem {
        if self.laurent_depth() == lower.laurent_depth() {
            return a.clone();
        }
        let l = self.laurent_ctx().expect("lift target is not above source");
        let c = l.base.lift_from(lower, a);
        Elem::Ser(Series::monomial(&l.base, c, 0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shift_by_monomial() {
        let f2 = Ring::fq(2, 1).unwrap();
        let k = Ring::laurent(f2, "t");
        let t = k.gen();
        let x = k.add(&k.add(&k.pow_i64(&t, -1).unwrap(), &k.one()), &Elem::Ser(Series::big_o(3)));
        let y = k.mul(&x, &t);
        assert_eq!(k.render(&y), "1 + t + O(t^4)");
    }

    #[test]
    fn inverse_in_window() {
        let f2 = Ring::fq(2, 1).unwrap();
        let k = Ring::laurent(f2, "t");
        let t = k.gen();
        let x = k.add(&k.add(&k.one(), &t), &Elem::Ser(Series::big_o(4)));
        let y = k.inv(&x).unwrap();
        assert_eq!(k.render(&y), "1 + t + t^2 + t^3 + O(t^4)");
        assert!(k.eq(&k.mul(&x, &y), &k.one()));
    }

    #[test]
    fn pth_root_series() {
        let f2 = Ring::fq(2, 1).unwrap();
        let k = Ring::laurent(f2, "t");
        let t = k.gen();
        let x = k.add(&k.add(&k.pow(&t, 2), &k.pow(&t, 4)), &Elem::Ser(Series::big_o(8)));
        let r = k.pth_root(&x).unwrap();
        assert_eq!(k.render(&r), "t + t^2 + O(t^4)");
    }

    #[test]
    fn p_bases() {
        let f2 = FqCtx::new(2, 1).unwrap();
        assert!(Ring::Fq(f2.clone()).p_base().is_empty());
        let fu = Ring::rational(f2.clone(), &["u"]);
        assert_eq!(fu.p_base().len(), 1);
        let k1 = Ring::laurent(Ring::Fq(f2), "t1");
        let pb = k1.p_base();
        assert_eq!(pb.len(), 1);
        assert_eq!(k1.render(&pb[0]), "t1");
    }
}
