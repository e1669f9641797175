//! Level comparisons along extensions of discrete valuation fields.

use rand::Rng;

use crate::error::Result;
use crate::extensions::{compare_levels, default_family, thmb_witness, thmc_witness, verify_lemma88, DVEmbedding};
use crate::fields::descriptor::FieldDescriptor;
use crate::fields::parse::parse_witt;
use crate::fields::ring::Ring;
use crate::filtration::{filf_level, flat_filf_min};
use crate::witt::{WittRing, WittVector};

use super::gen::random_witt_src;
use super::{cli_command, instance_rng, run_instances, Counterexample, Failures};

/// Embedding by a short name: `identity`, `tame:e`, `wild:e`, `unramified:d`,
/// `perfect:e`.
pub fn embedding_by_name(k: &Ring, name: &str) -> Result<DVEmbedding> {
    let (kind, arg) = name.split_once(':').unwrap_or((name, "1"));
    let a: i64 =
        arg.trim().parse().map_err(|_| crate::Error::Parse { pos: 0, msg: format!("bad embedding '{name}'") })?;
    match kind.trim() {
        "identity" => DVEmbedding::identity(k),
        "tame" => DVEmbedding::tame(k, a),
        "wild" => DVEmbedding::wild(k, a),
        "unramified" => DVEmbedding::unramified(k, a as u32),
        "perfect" => DVEmbedding::perfect_residue(k, a),
        _ => Err(crate::Error::Parse { pos: 0, msg: format!("unknown embedding '{name}'") }),
    }
}

fn extend_cmd(k: &Ring, p: u32, x: &WittVector, emb: &str) -> String {
    let w = WittRing { base: k.clone(), p, n: x.len() };
    let mut c = cli_command("extend", k, p, x.len(), &[w.render(x)]);
    c.push_str(&format!(" --emb \"{emb}\""));
    c
}

const SOURCES: &[(&str, u32, &[&str])] = &[
    ("F2(u)((pi))", 2, &["identity", "tame:3", "wild:2", "wild:4", "unramified:2", "perfect:1", "perfect:2"]),
    ("F3(u)((pi))", 3, &["identity", "tame:2", "wild:3", "unramified:2", "perfect:1"]),
    ("F4((pi))", 2, &["identity", "tame:3", "wild:2", "unramified:3"]),
];

/// Random `(embedding, φ)` pairs: `s_{K'} <= e s_K` always, equality for tame
/// separable extensions, and a flat class at level `e s_K` when `p | e`;
/// then the curated witnesses for strictness, the flat characterisation and
/// the coefficient rule.
pub(super) fn extension_levels(seed: u64, trials: usize) -> Result<(usize, Vec<Counterexample>)> {
    let idx: Vec<usize> = (0..trials).collect();
    let (mut total, mut bad) = run_instances(&idx, |i, _| {
        let mut rng = instance_rng(seed, i);
        let (desc, p, embs) = SOURCES[rng.gen_range(0..SOURCES.len())];
        let k = FieldDescriptor::parse(desc)?.to_ring()?;
        let name = embs[rng.gen_range(0..embs.len())];
        let emb = embedding_by_name(&k, name)?;
        let n = rng.gen_range(1..=2);
        let max_level = if n == 1 { 6 } else { 4 };
        let lv = rng.gen_range(1..=max_level);
        let src = random_witt_src(&mut rng, &k, p, n, lv, 3);
        let x = WittVector::new(parse_witt(&k, &src)?);
        let c = compare_levels(&emb, p, &x)?;
        let cmd = extend_cmd(&k, p, &x, name);
        let mut fails = Failures::new();
        if !c.containment_ok {
            fails.push((cmd.clone(), format!("s_K' = {} exceeds e s_K = {}", c.s_kp, c.e * c.s_k)));
        }
        if !c.equality_ok {
            fails.push((cmd.clone(), format!("expected s_K' = e s_K = {}, got {}", c.e * c.s_k, c.s_kp)));
        }
        if c.e % p as i64 == 0 && c.s_k > 0 {
            let w2 = WittRing::new(emb.target.clone(), p, n)?;
            let flat = flat_filf_min(&w2, &emb.apply_witt(&x)?)?;
            if flat > c.e * c.s_k {
                fails.push((cmd, format!("image not flat at e s_K = {}: least flat level {flat}", c.e * c.s_k)));
            }
        }
        Ok(fails)
    });

    let strict: Vec<(&str, u32)> = vec![("F2((pi))", 2), ("F3((pi))", 3), ("F2(u)((pi))", 2)];
    let (c, f) = run_instances(&strict, |_, &(desc, p)| {
        let k = FieldDescriptor::parse(desc)?.to_ring()?;
        let x = WittVector::new(parse_witt(&k, "pi^-1")?);
        let c = compare_levels(&DVEmbedding::wild(&k, p as i64)?, p, &x)?;
        Ok(if c.s_kp == 1 && c.s_k == 1 {
            vec![]
        } else {
            vec![(extend_cmd(&k, p, &x, &format!("wild:{p}")), format!("wild image level {} (expected 1)", c.s_kp))]
        })
    });
    total += c;
    bad.extend(f);

    let curated = ["u*pi^-2", "pi^-3", "1 + u*pi", "u*pi^-3 + pi^-1", "u*pi^-1", "W(u*pi^-1; 0)", "W(0; u*pi^-2)"];
    let k = FieldDescriptor::parse("F2(u)((pi))")?.to_ring()?;
    let fam = default_family(&k)?;
    let (c, f) = run_instances(&curated, |_, src| {
        let x = WittVector::new(parse_witt(&k, src)?);
        let w = WittRing::new(k.clone(), 2, x.len())?;
        let cmd = cli_command("flat", &k, 2, x.len(), &[w.render(&x)]);
        let mut fails = Failures::new();
        let c = thmc_witness(&fam, 2, &x)?;
        if !c.holds {
            fails.push((cmd.clone(), format!("least flat level {} but 1 + max s_K' = {}", c.flat_min, 1 + c.max_s_kp)));
        }
        if *src == "u*pi^-2" && (c.flat_min, c.max_s_kp) != (2, 1) {
            fails.push((cmd.clone(), format!("witness gives ({}, {})", c.flat_min, c.max_s_kp)));
        }
        let b = thmb_witness(&fam, 2, &x)?;
        if !b.never_exceeds {
            fails.push((cmd, format!("some s_K'/e exceeds s_K = {}", b.s_k)));
        }
        Ok(fails)
    });
    total += c;
    bad.extend(f);

    let rules: Vec<(&str, u32, &str, i64, i64)> = vec![
        ("F2(u)((pi))", 2, "u*pi^-2", 2, 1),
        ("F2(u)((pi))", 2, "u*pi^-2", 2, 2),
        ("F2(u)((pi))", 2, "pi^-1", 2, 2),
        ("F2(u)((pi))", 2, "u*pi^-4 + u^2*pi^-3", 4, 1),
        ("F3(u)((pi))", 3, "u*pi^-3 + pi^-1", 3, 1),
        ("F3(u)((pi))", 3, "u*pi^-3 + pi^-1", 3, 2),
    ];
    let (c, f) = run_instances(&rules, |_, &(desc, p, src, m, e)| {
        let k = FieldDescriptor::parse(desc)?.to_ring()?;
        let x = WittVector::new(parse_witt(&k, src)?);
        let w = WittRing::new(k.clone(), p, x.len())?;
        if flat_filf_min(&w, &x)? > m || filf_level(&w, &x)?.0 > m {
            return Ok(vec![]);
        }
        let r = verify_lemma88(&DVEmbedding::perfect_residue(&k, e)?, p, &x, m)?;
        Ok(if r.ok {
            vec![]
        } else {
            let detail =
                format!("image level {} (expected at most {}), rule mismatch", r.image_level, r.expected_level);
            vec![(extend_cmd(&k, p, &x, &format!("perfect:{e}")), detail)]
        })
    });
    total += c;
    bad.extend(f);
    Ok((total, bad))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_run_passes() {
        let (c, bad) = extension_levels(4, 30).unwrap();
        assert!(c >= 30);
        assert!(bad.is_empty(), "{:?}", &bad[..bad.len().min(3)]);
    }
}
