//! Dense univariate polynomials over `F_q` and their factorization.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::fq::FqCtx;

/// Coefficients low to high, no trailing zeros. The zero polynomial is empty.
pub type UPoly = Vec<u32>;

pub fn trim(mut a: UPoly) -> UPoly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub fn deg(a: &UPoly) -> Option<usize> {
    if a.is_empty() {
        None
    } else {
        Some(a.len() - 1)
    }
}

pub fn add(f: &FqCtx, a: &UPoly, b: &UPoly) -> UPoly {
    let n = a.len().max(b.len());
    let out = (0..n).map(|i| f.add(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0))).collect();
    trim(out)
}

pub fn neg(f: &FqCtx, a: &UPoly) -> UPoly {
    a.iter().map(|&c| f.neg(c)).collect()
}

pub fn sub(f: &FqCtx, a: &UPoly, b: &UPoly) -> UPoly {
    add(f, a, &neg(f, b))
}

pub fn scale(f: &FqCtx, a: &UPoly, c: u32) -> UPoly {
    trim(a.iter().map(|&x| f.mul(x, c)).collect())
}

pub fn mul(f: &FqCtx, a: &UPoly, b: &UPoly) -> UPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    trim(out)
}

/// Euclidean division; panics on a zero divisor.
pub fn divrem(f: &FqCtx, a: &UPoly, b: &UPoly) -> (UPoly, UPoly) {
    assert!(!b.is_empty(), "polynomial division by zero");
    let mut r = a.clone();
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let lead_inv = f.inv(*b.last().unwrap()).unwrap();
    let mut q = vec![0u32; r.len() - b.len() + 1];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = f.mul(*r.last().unwrap(), lead_inv);
        q[shift] = c;
        for (i, &y) in b.iter().enumerate() {
            r[shift + i] = f.sub(r[shift + i], f.mul(c, y));
        }
        r = trim(r);
    }
    (trim(q), r)
}

pub fn rem(f: &FqCtx, a: &UPoly, b: &UPoly) -> UPoly {
    divrem(f, a, b).1
}

pub fn monic(f: &FqCtx, a: &UPoly) -> UPoly {
    match a.last() {
        None => Vec::new(),
        Some(&l) => scale(f, a, f.inv(l).unwrap()),
    }
}

pub fn gcd(f: &FqCtx, a: &UPoly, b: &UPoly) -> UPoly {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_empty() {
        let r = rem(f, &x, &y);
        x = y;
        y = r;
    }
    monic(f, &x)
}

pub fn derivative(f: &FqCtx, a: &UPoly) -> UPoly {
    trim(a.iter().enumerate().skip(1).map(|(i, &c)| f.mul(c, f.from_i64(i as i64))).collect())
}

pub fn eval(f: &FqCtx, a: &UPoly, x: u32) -> u32 {
    a.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
}

pub fn pow_mod(f: &FqCtx, a: &UPoly, mut k: u128, m: &UPoly) -> UPoly {
    let mut base = rem(f, a, m);
    let mut acc = vec![1u32];
    while k > 0 {
        if k & 1 == 1 {
            acc = rem(f, &mul(f, &acc, &base), m);
        }
        base = rem(f, &mul(f, &base, &base), m);
        k >>= 1;
    }
    acc
}

pub fn x_poly() -> UPoly {
    vec![0, 1]
}

/// p-th root of a polynomial whose exponents are all divisible by p.
fn pth_root_poly(f: &FqCtx, a: &UPoly) -> UPoly {
    let p = f.p() as usize;
    trim(a.iter().step_by(p).map(|&c| f.frob_inv(c)).collect())
}

/// Square-free factorization: returns (factor, multiplicity) with monic factors.
pub fn squarefree(f: &FqCtx, a: &UPoly) -> Vec<(UPoly, u32)> {
    let mut out = Vec::new();
    if deg(a).unwrap_or(0) == 0 {
        return out;
    }
    let a = monic(f, a);
    let d = derivative(f, &a);
    if d.is_empty() {
        for (g, m) in squarefree(f, &pth_root_poly(f, &a)) {
            out.push((g, m * f.p()));
        }
        return out;
    }
    let mut c = gcd(f, &a, &d);
    let mut w = divrem(f, &a, &c).0;
    let mut i = 1;
    while deg(&w).unwrap_or(0) > 0 {
        let y = gcd(f, &w, &c);
        let fac = divrem(f, &w, &y).0;
        if deg(&fac).unwrap_or(0) > 0 {
            out.push((monic(f, &fac), i));
        }
        w = y;
        c = divrem(f, &c, &w).0;
        i += 1;
    }
    if deg(&c).unwrap_or(0) > 0 {
        for (g, m) in squarefree(f, &pth_root_poly(f, &c)) {
            out.push((g, m * f.p()));
        }
    }
    out
}

/// Distinct-degree factorization of a monic square-free polynomial.
fn distinct_degree(f: &FqCtx, a: &UPoly) -> Vec<(UPoly, usize)> {
    let q = f.size() as u128;
    let mut out = Vec::new();
    let mut rest = a.clone();
    let mut xq = x_poly();
    let mut d = 1;
    while deg(&rest).unwrap_or(0) >= 2 * d {
        xq = pow_mod(f, &xq, q, &rest);
        let g = gcd(f, &rest, &sub(f, &xq, &x_poly()));
        if deg(&g).unwrap_or(0) > 0 {
            rest = divrem(f, &rest, &g).0;
            xq = rem(f, &xq, &rest);
            out.push((g, d));
        }
        d += 1;
    }
    if deg(&rest).unwrap_or(0) > 0 {
        let dd = deg(&rest).unwrap();
        out.push((monic(f, &rest), dd));
    }
    out
}

/// Equal-degree splitting (Cantor–Zassenhaus; trace map in characteristic 2).
fn equal_degree(f: &FqCtx, a: &UPoly, d: usize, rng: &mut ChaCha8Rng) -> Vec<UPoly> {
    let n = deg(a).unwrap();
    if n == d {
        return vec![monic(f, a)];
    }
    let q = f.size() as u128;
    loop {
        let r: UPoly = trim((0..n).map(|_| rng.gen_range(0..f.size())).collect());
        if deg(&r).unwrap_or(0) == 0 {
            continue;
        }
        let h = if f.p() == 2 {
            // sum_{i < e d} r^(2^i)
            let mut acc = Vec::new();
            let mut cur = r.clone();
            for _ in 0..(f.degree() as usize * d) {
                acc = add(f, &acc, &cur);
                cur = rem(f, &mul(f, &cur, &cur), a);
            }
            acc
        } else {
            let e = (q.pow(d as u32) - 1) / 2;
            sub(f, &pow_mod(f, &r, e, a), &vec![1])
        };
        let g = gcd(f, a, &h);
        let dg = deg(&g).unwrap_or(0);
        if dg > 0 && dg < n {
            let other = divrem(f, a, &g).0;
            let mut out = equal_degree(f, &g, d, rng);
            out.extend(equal_degree(f, &other, d, rng));
            return out;
        }
    }
}

/// Full factorization into monic irreducibles with multiplicities, sorted.
pub fn factor(f: &FqCtx, a: &UPoly) -> Vec<(UPoly, u32)> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut out = Vec::new();
    for (sf, m) in squarefree(f, a) {
        for (g, d) in distinct_degree(f, &sf) {
            for irr in equal_degree(f, &g, d, &mut rng) {
                out.push((irr, m));
            }
        }
    }
    out.sort_by(|x, y| (x.0.len(), &x.0).cmp(&(y.0.len(), &y.0)));
    // merge repeated factors coming from different square-free parts
    let mut merged: Vec<(UPoly, u32)> = Vec::new();
    for (g, m) in out {
        match merged.last_mut() {
            Some(last) if last.0 == g => last.1 += m,
            _ => merged.push((g, m)),
        }
    }
    merged
}

pub fn is_irreducible(f: &FqCtx, a: &UPoly) -> bool {
    let fs = factor(f, a);
    fs.len() == 1 && fs[0].1 == 1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factor_over_f2() {
        let f = FqCtx::new(2, 1).unwrap();
        // x^3 + x = x (x + 1)^2
        let a = vec![0, 1, 0, 1];
        assert_eq!(factor(&f, &a), vec![(vec![0, 1], 1), (vec![1, 1], 2)]);
        // x^4 + x + 1 irreducible
        assert!(is_irreducible(&f, &vec![1, 1, 0, 0, 1]));
        // x^6 + x^5 + x^4 + x^3 + x^2 + x + 1 = (x^3+x+1)(x^3+x^2+1)
        let b = vec![1; 7];
        let fs = factor(&f, &b);
        assert_eq!(fs, vec![(vec![1, 0, 1, 1], 1), (vec![1, 1, 0, 1], 1)]);
    }

    #[test]
    fn factor_reconstructs() {
        let f = FqCtx::new(3, 1).unwrap();
        let a = vec![2, 0, 1, 1, 0, 2, 1, 1, 1];
        let fs = factor(&f, &a);
        let mut prod = vec![1];
        for (g, m) in &fs {
            for _ in 0..*m {
                prod = mul(&f, &prod, g);
            }
        }
        assert_eq!(prod, monic(&f, &a));
        for (g, _) in fs {
            assert!(!g.is_empty());
        }
    }
}
