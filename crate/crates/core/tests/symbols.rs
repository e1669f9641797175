use witt_modulus::fields::descriptor::FieldDescriptor;
use witt_modulus::fields::parse::{parse_elem, parse_symbol, parse_witt};
use witt_modulus::fields::ring::Ring;
use witt_modulus::symbols::{gm_symbol, higher_local_symbol, symbol_vanishing_threshold, wn_symbol, MilnorSymbol};
use witt_modulus::witt::{WittRing, WittVector};

fn field(src: &str) -> Ring {
    FieldDescriptor::parse(src).unwrap().to_ring().unwrap()
}

fn vector(w: &WittRing, src: &str) -> WittVector {
    w.from_comps(parse_witt(&w.base, src).unwrap()).unwrap()
}

fn rendered(w: &WittRing, v: &WittVector) -> String {
    WittRing::new(w.base.bottom().clone(), w.p, v.len()).unwrap().render(v)
}

#[test]
fn tame_symbol() {
    let k = field("F2((t))");
    let e = |s: &str| parse_elem(&k, s).unwrap();
    let kappa = k.bottom();
    for (f, g) in [("t", "t"), ("t", "1 + t"), ("1 + t^2", "1 + t")] {
        assert!(kappa.eq(&gm_symbol(&k, &e(f), &e(g)).unwrap(), &kappa.one()), "({f}, {g})");
    }
}

#[test]
fn witt_symbols() {
    let k = field("F2((t))");
    let g = parse_elem(&k, "1 + t").unwrap();
    let w1 = WittRing::new(k.clone(), 2, 1).unwrap();
    assert_eq!(rendered(&w1, &wn_symbol(&w1, &vector(&w1, "t^-1"), &g).unwrap()), "W(1)");
    let w2 = WittRing::new(k.clone(), 2, 2).unwrap();
    assert_eq!(rendered(&w2, &wn_symbol(&w2, &vector(&w2, "W(0; t^-1)"), &g).unwrap()), "W(0; 1)");
    assert_eq!(rendered(&w2, &wn_symbol(&w2, &vector(&w2, "W(1 + t; t^2)"), &g).unwrap()), "W(0; 0)");
}

#[test]
fn vanishing_thresholds() {
    let w = WittRing::new(field("F2((t))"), 2, 1).unwrap();
    assert_eq!(symbol_vanishing_threshold(&w, &vector(&w, "t^-1"), 3).unwrap(), 2);
    assert_eq!(symbol_vanishing_threshold(&w, &vector(&w, "t^-2"), 3).unwrap(), 2);
    assert_eq!(symbol_vanishing_threshold(&w, &vector(&w, "1 + t"), 3).unwrap(), 0);
}

#[test]
fn rank_two_symbols() {
    let k = field("F2((t1))((t2))");
    let w = WittRing::new(k.clone(), 2, 1).unwrap();
    let sym = |s: &str| MilnorSymbol::new(&k, parse_symbol(&k, s).unwrap()).unwrap();
    let v = higher_local_symbol(&w, &vector(&w, "t2^-1"), &sym("{1 + t1^-1*t2; t1}")).unwrap();
    assert_eq!(rendered(&w, &v), "W(0)");
    let v = higher_local_symbol(&w, &vector(&w, "t2^-1"), &sym("{1 + t2; t1}")).unwrap();
    assert_eq!(rendered(&w, &v), "W(1)");
    let v = higher_local_symbol(&w, &vector(&w, "t1^-3 + t2"), &sym("{1 + t2; t1}")).unwrap();
    assert_eq!(rendered(&w, &v), "W(0)");
}
