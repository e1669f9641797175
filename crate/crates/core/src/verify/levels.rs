//! Suites for `fil^F` levels: oracle agreement, the kernel sequence, `θ̄`,
//! injective homomorphisms, and Swan conductors.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::fields::descriptor::FieldDescriptor;
use crate::fields::parse::parse_witt;
use crate::fields::ring::{Elem, Ring};
use crate::filtration::oracle::family;
use crate::filtration::{
    brute_force_filf_level, filf_level, kernel_map, naive_level, ord_p, theta_bar, verify_prop41, OracleBounds,
};
use crate::modulus::{
    asw_reduce, candidate_places, check_embedding_independence, refined_swan, swan_conductor, verify_prop48,
    GroupPoint, SplitGroupDescriptor,
};
use crate::witt::{HomWord, Letter, WittRing, WittVector, Word};

use super::gen::random_witt_src;
use super::{cli_command, instance_rng, run_instances, shrink_witt, Counterexample, Failures};

/// `(log2 q, n, bound on the naive level)` for the exhaustive oracle comparison.
pub const ACCEPTANCE_FAMILIES: &[(u32, usize, i64)] = &[(1, 1, 12), (2, 1, 7), (1, 2, 12), (2, 2, 5)];

fn laurent(p: u32, e: u32) -> Result<Ring> {
    Ok(Ring::laurent(Ring::fq(p, e)?, "t"))
}

fn ring(desc: &str) -> Result<Ring> {
    FieldDescriptor::parse(desc)?.to_ring()
}

fn parse_vec(w: &WittRing, src: &str) -> Result<WittVector> {
    w.from_comps(parse_witt(&w.base, src)?)
}

/// Greedy level against the exhaustive search on every polar
/// `x ∈ W_n(F_{2^e}((t)))` of naive level at most `b`.
pub fn oracle_agreement(e: u32, n: usize, b: i64) -> Result<(usize, Vec<Counterexample>)> {
    let w = WittRing::new(laurent(2, e)?, 2, n)?;
    let xs = family(&w, b)?;
    let bounds = OracleBounds { max_pole: b, ..Default::default() };
    Ok(run_instances(&xs, |_, x| {
        let g = filf_level(&w, x)?.0;
        let o = brute_force_filf_level(&w, x, &bounds)?;
        Ok(if g == o {
            vec![]
        } else {
            vec![(cli_command("level", &w.base, 2, n, &[w.render(x)]), format!("greedy {g}, oracle {o}"))]
        })
    }))
}

/// For `n = 1` over a perfect residue field: the largest prime-to-`p` part of
/// a pole order occurring in `x`.
pub fn closed_form_level_n1(k: &Ring, p: u32, x: &Elem) -> Result<i64> {
    let l = k.laurent_ctx().expect("Laurent field");
    let mut best = 0;
    for (e, c) in x.as_series().terms(&l.base) {
        if e < 0 && !l.base.is_zero(c) {
            best = best.max(-e / (p as i64).pow(ord_p(-e, p)));
        }
    }
    Ok(best)
}

pub(super) fn filf_oracle(seed: u64, trials: usize) -> Result<(usize, Vec<Counterexample>)> {
    let mut total = 0;
    let mut bad = Vec::new();
    for &(e, n, b) in ACCEPTANCE_FAMILIES {
        let (c, f) = oracle_agreement(e, n, b)?;
        total += c;
        bad.extend(f);
    }
    let fields: Vec<(Ring, u32)> =
        vec![(laurent(2, 1)?, 2), (laurent(2, 2)?, 2), (laurent(3, 1)?, 3), (laurent(3, 2)?, 3), (laurent(5, 1)?, 5)];
    let idx: Vec<usize> = (0..trials).collect();
    let (c, f) = run_instances(&idx, |i, _| {
        let mut rng = instance_rng(seed, i);
        let (k, p) = &fields[rng.gen_range(0..fields.len())];
        let w = WittRing::new(k.clone(), *p, 1)?;
        let x = parse_vec(&w, &random_witt_src(&mut rng, k, *p, 1, 40, 6))?;
        let want = closed_form_level_n1(k, *p, &x.comps[0])?;
        let got = filf_level(&w, &x)?.0;
        if got == want {
            return Ok(vec![]);
        }
        let fails =
            |y: &WittVector| filf_level(&w, y).map(|r| r.0).ok() != closed_form_level_n1(k, *p, &y.comps[0]).ok();
        let x = shrink_witt(&w, &x, &fails);
        Ok(vec![(cli_command("level", k, *p, 1, &[w.render(&x)]), format!("closed form {want}, computed {got}"))])
    });
    total += c;
    bad.extend(f);
    Ok((total, bad))
}

fn setting(rng: &mut ChaCha8Rng) -> Result<(WittRing, i64)> {
    let (desc, p) = [("F2(u)((t))", 2), ("F4((t))", 2), ("F3((t))", 3)][rng.gen_range(0..3)];
    let n = rng.gen_range(1..=2);
    let m = rng.gen_range(2..=8);
    Ok((WittRing::new(ring(desc)?, p, n)?, m))
}

/// Kernel sequence: `h(y)` lies in the kernel of `Σ F^j` and is recovered
/// from it, and perturbing one slot leaves the kernel.
pub(super) fn kernel_exactness(seed: u64, trials: usize) -> Result<(usize, Vec<Counterexample>)> {
    let idx: Vec<usize> = (0..trials).collect();
    Ok(run_instances(&idx, |i, _| {
        let mut rng = instance_rng(seed, i);
        let (w, m) = setting(&mut rng)?;
        let r = rng.gen_range(1..=3);
        let low = m / w.p as i64;
        let ys: Vec<WittVector> = (0..r)
            .map(|_| parse_vec(&w, &random_witt_src(&mut rng, &w.base, w.p, w.n, low, 3)))
            .collect::<Result<_>>()?;
        let xs = kernel_map(&w, &ys)?;
        let rendered: Vec<String> = xs.iter().map(|x| w.render(x)).collect();
        let cmd = cli_command("level", &w.base, w.p, w.n, &rendered);
        let mut fails = Failures::new();
        let rep = verify_prop41(&w, &xs, m)?;
        if !(rep.sum_is_zero && rep.in_image && rep.failures.is_empty()) {
            fails.push((cmd.clone(), format!("m = {m}: {:?}", rep.failures)));
        } else if let Some(pre) = &rep.preimage {
            let back = kernel_map(&w, pre)?;
            if back.len() != xs.len() || back.iter().zip(&xs).any(|(a, b)| !w.eq(a, b)) {
                fails.push((cmd.clone(), "preimage does not map back".into()));
            }
        }
        let z = parse_vec(&w, &random_witt_src(&mut rng, &w.base, w.p, w.n, m, 2))?;
        if !w.is_zero(&z) {
            let mut xs2 = xs.clone();
            xs2[0] = w.add(&xs2[0], &z);
            if verify_prop41(&w, &xs2, m)?.sum_is_zero {
                fails.push((cmd, format!("perturbation by {} stays in the kernel", w.render(&z))));
            }
        }
        Ok(fails)
    }))
}

/// `θ̄_s` is independent of the decomposition, nonzero at the exact level and
/// zero above it.
pub(super) fn graded_injectivity(seed: u64, trials: usize) -> Result<(usize, Vec<Counterexample>)> {
    let idx: Vec<usize> = (0..trials).collect();
    let (c, mut bad) = run_instances(&idx, |i, _| {
        let mut rng = instance_rng(seed, i);
        let (w, m) = setting(&mut rng)?;
        let x = parse_vec(&w, &random_witt_src(&mut rng, &w.base, w.p, w.n, m, 4))?;
        let cmd = cli_command("flat", &w.base, w.p, w.n, &[w.render(&x)]);
        let (s, wit) = filf_level(&w, &x)?;
        let mut fails = Failures::new();
        if s == 0 {
            return Ok(fails);
        }
        let th = theta_bar(&w, &wit, s)?;
        if th.is_zero() {
            fails.push((cmd.clone(), format!("θ̄ vanishes at the level {s}")));
        }
        if !theta_bar(&w, &wit, s + 1)?.is_zero() {
            fails.push((cmd.clone(), format!("θ̄ nonzero above the level {s}")));
        }
        let mut alt = wit.clone();
        let j = rng.gen_range(0..alt.parts.len());
        if j + 1 == alt.parts.len() {
            alt.parts.push(w.zero());
        }
        let z = parse_vec(&w, &random_witt_src(&mut rng, &w.base, w.p, w.n, s / w.p as i64, 3))?;
        alt.parts[j] = w.add(&alt.parts[j], &w.frobenius(&z)?);
        alt.parts[j + 1] = w.sub(&alt.parts[j + 1], &z);
        if !w.eq(&alt.reconstruct(&w)?, &x) {
            fails.push((cmd.clone(), "perturbed decomposition changes the sum".into()));
        } else if !theta_bar(&w, &alt, s)?.eq(&th) {
            fails.push((cmd, format!("θ̄ depends on the decomposition (z = {} at slot {j})", w.render(&z))));
        }
        Ok(fails)
    });
    let mut total = c;
    for (e, n, b) in [(1, 1, 8), (1, 2, 6), (2, 1, 5)] {
        let w = WittRing::new(laurent(2, e)?, 2, n)?;
        let xs = family(&w, b)?;
        let bounds = OracleBounds { max_pole: b, ..Default::default() };
        let (c, f) = run_instances(&xs, |_, x| {
            let o = brute_force_filf_level(&w, x, &bounds)?;
            let (s, wit) = filf_level(&w, x)?;
            let cmd = cli_command("flat", &w.base, 2, n, &[w.render(x)]);
            let mut fails = Failures::new();
            if o > 0 && s <= o && theta_bar(&w, &wit, o)?.is_zero() {
                fails.push((cmd.clone(), format!("θ̄ vanishes at the oracle level {o}")));
            }
            if s <= o + 1 && !theta_bar(&w, &wit, o + 1)?.is_zero() {
                fails.push((cmd.clone(), format!("θ̄ nonzero above the oracle level {o}")));
            }
            if s != o {
                fails.push((cmd, format!("greedy {s}, oracle {o}")));
            }
            Ok(fails)
        });
        total += c;
        bad.extend(f);
    }
    Ok((total, bad))
}

fn hom_words(n: usize, q: u32) -> Vec<(String, HomWord)> {
    let mut out = vec![
        ("V".to_string(), HomWord::single(n, n + 1, Word(vec![Letter::V]))),
        ("F".to_string(), HomWord::single(n, n, Word(vec![Letter::F]))),
        ("F*V".to_string(), HomWord::single(n, n + 1, Word(vec![Letter::F, Letter::V]))),
        ("V*F".to_string(), HomWord::single(n, n + 1, Word(vec![Letter::V, Letter::F]))),
        ("(id, F)".to_string(), HomWord::column(n, vec![(n, Word::id()), (n, Word(vec![Letter::F]))])),
        ("(V, id)".to_string(), HomWord::column(n, vec![(n + 1, Word(vec![Letter::V])), (n, Word::id())])),
    ];
    let unit: Vec<u32> = if q > 2 { vec![2; n] } else { vec![1; n] };
    out.push((format!("{unit:?}"), HomWord::single(n, n, Word(vec![Letter::Scalar(unit.clone())]))));
    out.push((format!("{unit:?}*V"), HomWord::single(n, n + 1, Word(vec![Letter::Scalar(unit), Letter::V]))));
    out
}

/// Levels are preserved by injective homomorphism words, and `mod_v` does not
/// depend on the chosen embedding.
pub(super) fn hom_level_preservation() -> Result<(usize, Vec<Counterexample>)> {
    let mut total = 0;
    let mut bad = Vec::new();
    for (e, n, b) in [(1, 1, 8), (2, 1, 5), (1, 2, 6)] {
        let w = WittRing::new(laurent(2, e)?, 2, n)?;
        let xs = family(&w, b)?;
        let words = hom_words(n, 1 << e);
        let cases: Vec<(usize, usize)> = (0..xs.len()).flat_map(|i| (0..words.len()).map(move |j| (i, j))).collect();
        let (c, f) = run_instances(&cases, |_, &(i, j)| {
            let x = &xs[i];
            let (name, h) = &words[j];
            let s = filf_level(&w, x)?.0;
            let mut t = 0;
            for y in h.apply(&w.base, 2, std::slice::from_ref(x))? {
                t = t.max(filf_level(&w.with_len(y.len())?, &y)?.0);
            }
            Ok(if s == t {
                vec![]
            } else {
                vec![(cli_command("level", &w.base, 2, n, &[w.render(x)]), format!("level {s}, through {name}: {t}"))]
            })
        });
        total += c;
        bad.extend(f);
    }
    let k = ring("F2(x)")?;
    let points = [(1, "1/x"), (1, "x^3 + 1/x^2"), (1, "1/(x^2 + x + 1)"), (2, "W(1/x; x)"), (2, "W(x^2; 1/(x + 1))")];
    let cases: Vec<(usize, &str, &str)> =
        points.iter().flat_map(|&(n, src)| ["V", "F", "V*V", "[1]*F"].into_iter().map(move |h| (n, src, h))).collect();
    let (c, f) = run_instances(&cases, |_, &(n, src, h)| {
        let target = n + h.matches('V').count();
        let h1 = HomWord::parse("id", n, n)?;
        let h2 = HomWord::parse(&h.replace("[1]", &format!("[{}]", vec!["1"; n].join(","))), n, target)?;
        let g = SplitGroupDescriptor::new(0, vec![n])?;
        let pt = GroupPoint::parse(&k, &g, src)?;
        let places = candidate_places(&k, &pt)?;
        let rep = check_embedding_independence(&k, &[n], &pt.witt, &h1, &h2, &places, 32)?;
        Ok(rep
            .mismatches
            .into_iter()
            .map(|(v, a, b)| {
                let cmd = format!("wmod modulus --field \"F2(x)\" --group \"W{n}\" --phi \"{src}\"");
                (cmd, format!("at {v}: {a} via id, {b} via {h}"))
            })
            .collect())
    });
    total += c;
    bad.extend(f);
    Ok((total, bad))
}

/// Swan conductor of `x ∈ W_1` over a perfect residue field: fold each
/// monomial `c t^(-p^v e)` with `p ∤ e` onto `c^(p^-v) t^(-e)` and take the
/// largest surviving pole.
pub fn closed_form_swan_n1(k: &Ring, p: u32, x: &Elem) -> Result<i64> {
    let l = k.laurent_ctx().expect("Laurent field");
    let kappa = &l.base;
    let mut folded: std::collections::BTreeMap<i64, Elem> = std::collections::BTreeMap::new();
    for (e, c) in x.as_series().terms(kappa) {
        if e >= 0 {
            continue;
        }
        let v = ord_p(-e, p);
        let mut r = c.clone();
        for _ in 0..v {
            r = kappa.pth_root(&r)?;
        }
        let key = -e / (p as i64).pow(v);
        let acc = folded.remove(&key).unwrap_or_else(|| kappa.zero());
        folded.insert(key, kappa.add(&acc, &r));
    }
    Ok(folded.into_iter().filter(|(_, c)| !kappa.is_zero(c)).map(|(e, _)| e).max().unwrap_or(0))
}

/// Swan conductors: the closed form for `n = 1`, and for all `n` the level of
/// the reduced representative, bounded by the level of the input. The refined
/// conductor matches the collapsed `θ̄` and is an invariant of the
/// Artin-Schreier-Witt class.
pub(super) fn swan(seed: u64, trials: usize) -> Result<(usize, Vec<Counterexample>)> {
    let mut total = 0;
    let mut bad = Vec::new();
    for (e, n, b) in [(1, 1, 12), (2, 1, 6), (1, 2, 8)] {
        let w = WittRing::new(laurent(2, e)?, 2, n)?;
        let xs = family(&w, b)?;
        let (c, f) = run_instances(&xs, |_, x| {
            let (sw, red) = asw_reduce(&w, x)?;
            let s = filf_level(&w, x)?.0;
            let mut ok = sw <= s && filf_level(&w, &red)?.0 == sw;
            if n == 1 {
                ok &= sw == closed_form_swan_n1(&w.base, 2, &x.comps[0])? && (sw % 2 == 1 || sw == 0);
            }
            Ok(if ok {
                vec![]
            } else {
                vec![(cli_command("swan", &w.base, 2, n, &[w.render(x)]), format!("swan {sw}, level {s}"))]
            })
        });
        total += c;
        bad.extend(f);
    }
    let idx: Vec<usize> = (0..trials).collect();
    let (c, f) = run_instances(&idx, |i, _| {
        let mut rng = instance_rng(seed, i);
        let (desc, p) = [("F4((t))", 2), ("F2((t))", 2), ("F3((t))", 3), ("F9((t))", 3)][rng.gen_range(0..4)];
        let w = WittRing::new(ring(desc)?, p, rng.gen_range(1..=2))?;
        let lv = rng.gen_range(1..=9);
        let src = random_witt_src(&mut rng, &w.base, p, w.n, lv, 4);
        let x = parse_vec(&w, &src)?;
        let cmd = cli_command("swan", &w.base, p, w.n, &[w.render(&x)]);
        let mut fails = Failures::new();
        let rep = verify_prop48(&w, &x)?;
        if !rep.agrees {
            fails
                .push((cmd.clone(), format!("collapse of θ̄ differs from the refined conductor (level {})", rep.level)));
        }
        let y = parse_vec(&w, &random_witt_src(&mut rng, &w.base, p, w.n, 6, 3))?;
        let x2 = w.add(&x, &w.sub(&w.frobenius(&y)?, &y));
        if naive_level(&w, &x2)? > 0 || naive_level(&w, &x)? > 0 {
            let (a, b) = (refined_swan(&w, &x)?, refined_swan(&w, &x2)?);
            if swan_conductor(&w, &x)? != swan_conductor(&w, &x2)? || !a.eq(&b) {
                fails.push((cmd, format!("class invariance fails for y = {}", w.render(&y))));
            }
        }
        Ok(fails)
    });
    total += c;
    bad.extend(f);
    Ok((total, bad))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_examples() {
        let k = laurent(2, 1).unwrap();
        let x = crate::fields::parse::parse_elem(&k, "t^-12 + t^-5 + t").unwrap();
        assert_eq!(closed_form_level_n1(&k, 2, &x).unwrap(), 5);
        let x = crate::fields::parse::parse_elem(&k, "t^-12 + t^-6 + t^-1").unwrap();
        assert_eq!(closed_form_swan_n1(&k, 2, &x).unwrap(), 1);
    }

    #[test]
    fn small_suites_pass() {
        for (name, (c, bad)) in
            [("prop4.1", kernel_exactness(1, 30).unwrap()), ("prop4.6", graded_injectivity(1, 30).unwrap()), ("swan", swan(1, 30).unwrap())]
        {
            assert!(c > 0);
            assert!(bad.is_empty(), "{name}: {:?}", &bad[..bad.len().min(3)]);
        }
    }
}
