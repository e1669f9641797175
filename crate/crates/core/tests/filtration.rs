use rayon::prelude::*;
use witt_modulus::fields::descriptor::FieldDescriptor;
use witt_modulus::fields::parse::parse_witt;
use witt_modulus::fields::ring::Ring;
use witt_modulus::filtration::oracle::family;
use witt_modulus::filtration::{
    brute_force_filf_level, filf_level, flat_filf_min, in_flat_fil, naive_level, OracleBounds,
};
use witt_modulus::witt::{WittRing, WittVector};

fn ring(field: &str, n: usize) -> WittRing {
    let k = FieldDescriptor::parse(field).unwrap().to_ring().unwrap();
    WittRing::new(k, 2, n).unwrap()
}

fn vector(w: &WittRing, src: &str) -> WittVector {
    w.from_comps(parse_witt(&w.base, src).unwrap()).unwrap()
}

#[test]
fn naive_levels() {
    let w = ring("F2((t))", 2);
    for (src, want) in [("W(t^-3; 0)", 6), ("W(0; t^-3)", 3), ("W(0; 0)", 0)] {
        assert_eq!(naive_level(&w, &vector(&w, src)).unwrap(), want, "{src}");
    }
}

#[test]
fn flat_membership() {
    let w1 = ring("F2((t))", 1);
    assert!(!in_flat_fil(&w1, &vector(&w1, "t^-3"), 3).unwrap());
    assert!(in_flat_fil(&w1, &vector(&w1, "t^-2"), 2).unwrap());
    let w2 = ring("F2((t))", 2);
    assert!(!in_flat_fil(&w2, &vector(&w2, "W(t^-1; 0)"), 2).unwrap());
}

#[test]
fn greedy_levels_and_witnesses() {
    let w = ring("F2((t))", 2);
    let (s, dec) = filf_level(&w, &vector(&w, "W(t^-2; 0)")).unwrap();
    assert_eq!(s, 2);
    assert!(dec.reconstruct(&w).is_ok_and(|x| w.eq(&x, &vector(&w, "W(t^-2; 0)"))));
    assert_eq!(filf_level(&w, &vector(&w, "W(t^-3; 0)")).unwrap().0, 6);
    assert_eq!(filf_level(&w, &vector(&w, "W(0; t^-4)")).unwrap().0, 1);
    let w1 = ring("F2((t))", 1);
    assert_eq!(filf_level(&w1, &vector(&w1, "t^-2 + t^-3")).unwrap().0, 3);
    assert_eq!(filf_level(&w1, &vector(&w1, "t^-5")).unwrap().0, 5);
}

#[test]
fn least_flat_levels() {
    let w = ring("F2((t))", 1);
    assert_eq!(flat_filf_min(&w, &vector(&w, "t^-3 + t^-2")).unwrap(), 4);
    let w = ring("F2(u)((t))", 1);
    assert_eq!(flat_filf_min(&w, &vector(&w, "u*t^-2")).unwrap(), 2);
    assert_eq!(flat_filf_min(&w, &vector(&w, "u*t^-3")).unwrap(), 4);
    assert_eq!(flat_filf_min(&w, &vector(&w, "1 + u*t")).unwrap(), 1);
}

#[test]
fn greedy_matches_oracle_on_small_families() {
    for (e, n, b) in [(1, 1, 8), (2, 1, 4), (1, 2, 6), (2, 2, 3)] {
        let w = WittRing::new(Ring::laurent(Ring::fq(2, e).unwrap(), "t"), 2, n).unwrap();
        let bounds = OracleBounds { max_pole: b, ..Default::default() };
        let bad: Vec<String> = family(&w, b)
            .unwrap()
            .par_iter()
            .filter(|x| filf_level(&w, x).unwrap().0 != brute_force_filf_level(&w, x, &bounds).unwrap())
            .map(|x| w.render(x))
            .collect();
        assert!(bad.is_empty(), "F{} n={n}: {:?}", 1 << e, &bad[..bad.len().min(5)]);
    }
}
