//! Witt ring axioms, ghost-side equivalence over `Z`, and parse/render round trips.

use crate::error::Result;
use crate::fields::descriptor::FieldDescriptor;
use crate::fields::parse::{parse_elem, parse_group_point, parse_symbol, parse_witt, render_symbol, render_witt};
use crate::fields::ring::{Elem, Ring};
use crate::witt::{WittRing, WittVector};

use super::fixtures::{FixtureKind, FIXTURES};
use super::gen::{random_elem_src, ElemShape};
use super::{cli_command, instance_rng, run_instances, shrink_witt, Counterexample, Failures};

fn axiom_rings() -> Result<Vec<(Ring, u32)>> {
    Ok(vec![
        (Ring::fq(2, 1)?, 2),
        (Ring::fq(2, 2)?, 2),
        (FieldDescriptor::parse("F2(u)")?.to_ring()?, 2),
        (Ring::laurent(Ring::fq(2, 1)?, "t"), 2),
        (Ring::Zmod(8), 2),
    ])
}

fn random_witt(rng: &mut rand_chacha::ChaCha8Rng, w: &WittRing) -> Result<(String, WittVector)> {
    let shape = ElemShape { max_pole: 3, max_pos: 3, terms: 3 };
    let comps: Vec<String> = (0..w.n).map(|_| random_elem_src(rng, &w.base, shape)).collect();
    let src = format!("W({})", comps.join("; "));
    let x = w.from_comps(parse_witt(&w.base, &src)?)?;
    Ok((src, x))
}

type Axiom = fn(&WittRing, &WittVector, &WittVector, &WittVector) -> bool;

const AXIOMS: &[(&str, Axiom)] = &[
    ("additive associativity", |w, x, y, z| w.eq(&w.add(&w.add(x, y), z), &w.add(x, &w.add(y, z)))),
    ("additive commutativity", |w, x, y, _| w.eq(&w.add(x, y), &w.add(y, x))),
    ("additive identity", |w, x, _, _| w.eq(&w.add(x, &w.zero()), x)),
    ("additive inverse", |w, x, _, _| w.is_zero(&w.add(x, &w.neg(x)))),
    ("multiplicative associativity", |w, x, y, z| w.eq(&w.mul(&w.mul(x, y), z), &w.mul(x, &w.mul(y, z)))),
    ("multiplicative commutativity", |w, x, y, _| w.eq(&w.mul(x, y), &w.mul(y, x))),
    ("multiplicative identity", |w, x, _, _| w.eq(&w.mul(x, &w.one()), x)),
    ("distributivity", |w, x, y, z| w.eq(&w.mul(x, &w.add(y, z)), &w.add(&w.mul(x, y), &w.mul(x, z)))),
];

/// Ring axioms on random triples over `F_2, F_4, F_2(u), F_2((t)), Z/8` for `n <= 3`.
pub(super) fn witt_ring_axioms(seed: u64, trials: usize) -> Result<(usize, Vec<Counterexample>)> {
    let mut cases = Vec::new();
    for (ring, p) in axiom_rings()? {
        for n in 1..=3 {
            let w = WittRing::new(ring.clone(), p, n)?;
            for t in 0..trials {
                cases.push((w.clone(), t));
            }
        }
    }
    Ok(run_instances(&cases, |i, (w, _)| {
        let mut rng = instance_rng(seed, i);
        let (_, x) = random_witt(&mut rng, w)?;
        let (ys, y) = random_witt(&mut rng, w)?;
        let (_, z) = random_witt(&mut rng, w)?;
        let mut fails = Failures::new();
        for (name, holds) in AXIOMS {
            if !holds(w, &x, &y, &z) {
                let x = shrink_witt(w, &x, &|x2| !holds(w, x2, &y, &z));
                let detail = format!("{name} fails with z = {}", w.render(&z));
                let args = vec![w.render(&x), "*".into(), ys.clone()];
                fails.push((cli_command("witt", &w.base, w.p, w.n, &args), detail));
            }
        }
        Ok(fails)
    }))
}

fn box_vectors(w: &WittRing) -> Vec<WittVector> {
    let n = w.n as u32;
    (0..5i64.pow(n))
        .map(|mut code| {
            let comps = (0..w.n)
                .map(|_| {
                    let d = code % 5 - 2;
                    code /= 5;
                    w.base.from_i64(d)
                })
                .collect();
            WittVector::new(comps)
        })
        .collect()
}

/// Ghost components turn Witt addition, multiplication and negation into the
/// componentwise operations, exhaustively on `{-2..2}^{2n}` over `Z`.
pub(super) fn ghost_equivalence() -> Result<(usize, Vec<Counterexample>)> {
    let mut total = 0;
    let mut all = Vec::new();
    for p in [2u32, 3] {
        for n in 1..=3 {
            let w = WittRing::new(Ring::Int, p, n)?;
            let vs = box_vectors(&w);
            let z = &w.base;
            let gh: Vec<Vec<Elem>> = vs.iter().map(|v| w.ghost(v)).collect::<Result<_>>()?;
            let (count, bad) = run_instances(&vs, |i, x| {
                let gx = &gh[i];
                let mut fails = Failures::new();
                let gneg = w.ghost(&w.neg(x))?;
                if gneg.iter().zip(gx).any(|(a, b)| !z.eq(a, &z.neg(b))) {
                    fails.push((
                        cli_command("witt", z, p, n, &["neg".into(), w.render(x)]),
                        "ghost(-x) != -ghost(x)".into(),
                    ));
                }
                for (j, y) in vs.iter().enumerate() {
                    let gy = &gh[j];
                    let gs = w.ghost(&w.add(x, y))?;
                    let gp = w.ghost(&w.mul(x, y))?;
                    let sum_ok = gs.iter().zip(gx.iter().zip(gy)).all(|(s, (a, b))| z.eq(s, &z.add(a, b)));
                    let prod_ok = gp.iter().zip(gx.iter().zip(gy)).all(|(s, (a, b))| z.eq(s, &z.mul(a, b)));
                    for (ok, op) in [(sum_ok, "+"), (prod_ok, "*")] {
                        if !ok {
                            let args = vec![w.render(x), op.into(), w.render(y)];
                            fails.push((
                                cli_command("witt", z, p, n, &args),
                                format!("ghost not additive/multiplicative for '{op}'"),
                            ));
                        }
                    }
                }
                Ok(fails)
            });
            total += count * count;
            all.extend(bad);
        }
    }
    Ok((total, all))
}

fn roundtrip_one(k: &Ring, kind: FixtureKind, src: &str) -> Result<Option<String>> {
    let list_eq = |a: &[Elem], b: &[Elem]| a.len() == b.len() && a.iter().zip(b).all(|(x, y)| k.eq(x, y));
    let (first, again, stable) = match kind {
        FixtureKind::Elem => {
            let a = parse_elem(k, src)?;
            let r = k.render(&a);
            let b = parse_elem(k, &r)?;
            (r.clone(), k.eq(&a, &b), k.render(&b) == r)
        }
        FixtureKind::Witt => {
            let a = parse_witt(k, src)?;
            let r = render_witt(k, &a);
            let b = parse_witt(k, &r)?;
            (r.clone(), list_eq(&a, &b), render_witt(k, &b) == r)
        }
        FixtureKind::Symbol => {
            let a = parse_symbol(k, src)?;
            let r = render_symbol(k, &a);
            let b = parse_symbol(k, &r)?;
            (r.clone(), list_eq(&a, &b), render_symbol(k, &b) == r)
        }
        FixtureKind::Point => {
            let a = parse_group_point(k, src)?;
            let render = |v: &[Vec<Elem>]| {
                v.iter()
                    .map(|c| if c.len() == 1 { k.render(&c[0]) } else { render_witt(k, c) })
                    .collect::<Vec<_>>()
                    .join("; ")
            };
            let r = render(&a);
            let b = parse_group_point(k, &r)?;
            let eq = a.len() == b.len() && a.iter().zip(&b).all(|(x, y)| list_eq(x, y));
            (r.clone(), eq, render(&b) == r)
        }
    };
    Ok(if again && stable { None } else { Some(first) })
}

/// `parse(render(parse(src)))` equals `parse(src)` and rendering is stable.
pub(super) fn roundtrip() -> Result<(usize, Vec<Counterexample>)> {
    Ok(run_instances(FIXTURES, |_, f| {
        let k = FieldDescriptor::parse(f.field)?.to_ring()?;
        Ok(match roundtrip_one(&k, f.kind, f.src)? {
            None => vec![],
            Some(r) => vec![(format!("wmod witt --field \"{}\" \"{}\"", f.field, f.src), format!("rendered as {r}"))],
        })
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_runs_pass() {
        let (n, bad) = witt_ring_axioms(3, 5).unwrap();
        assert_eq!(n, 75);
        assert!(bad.is_empty(), "{bad:?}");
        let (_, bad) = roundtrip().unwrap();
        assert!(bad.is_empty(), "{bad:?}");
    }
}
