use witt_modulus::fields::descriptor::FieldDescriptor;
use witt_modulus::fields::parse::{parse_elem, parse_witt};
use witt_modulus::fields::ring::Ring;
use witt_modulus::fields::upoly;
use witt_modulus::modulus::{
    completion_at_place, global_ctx, mod_v, modulus_divisor, refined_swan, render_rsw, swan_conductor, verify_prop48,
    GroupPoint, Place, SplitGroupDescriptor,
};
use witt_modulus::witt::{WittRing, WittVector};

fn field(src: &str) -> Ring {
    FieldDescriptor::parse(src).unwrap().to_ring().unwrap()
}

fn divisor(group: &str, phi: &str) -> Vec<(String, i64)> {
    let k = field("F2(x)");
    let g = SplitGroupDescriptor::parse(group).unwrap();
    let pt = GroupPoint::parse(&k, &g, phi).unwrap();
    let r = global_ctx(&k).unwrap();
    modulus_divisor(&k, &g, &pt, 32).unwrap().entries.iter().map(|(v, m)| (v.name(r), *m)).collect()
}

fn pairs(xs: &[(&str, i64)]) -> Vec<(String, i64)> {
    xs.iter().map(|(s, m)| (s.to_string(), *m)).collect()
}

#[test]
fn completions() {
    let k = field("F2(x)");
    let r = global_ctx(&k).unwrap();
    let x = |s: &str| parse_elem(&k, s).unwrap();
    let (ring, e, exact) =
        completion_at_place(&k, &x("1/x"), &Place::finite(&r.fq, upoly::x_poly()).unwrap(), 8).unwrap();
    assert!(exact);
    assert_eq!(ring.render(&e), "pi^-1");
    let (ring, e, _) = completion_at_place(&k, &x("x"), &Place::Infinity, 8).unwrap();
    assert_eq!(ring.render(&e), "pi^-1");
    let x_plus_1 = Place::finite(&r.fq, vec![1, 1]).unwrap();
    let (ring, e, _) = completion_at_place(&k, &x("1/x"), &x_plus_1, 4).unwrap();
    assert!(ring.render(&e).starts_with("1 + pi + pi^2 + pi^3"), "{}", ring.render(&e));
}

#[test]
fn local_moduli() {
    let k = field("F2((pi))");
    let m = |group: &str, src: &str| {
        let g = SplitGroupDescriptor::parse(group).unwrap();
        mod_v(&k, 2, &g, &GroupPoint::parse(&k, &g, src).unwrap()).unwrap()
    };
    assert_eq!(m("Ga", "pi^-1"), 2);
    assert_eq!(m("Gm", "pi"), 1);
    assert_eq!(m("W2", "W(pi^-1; 0)"), 3);
    assert_eq!(m("Gm x Ga", "1 + pi; pi^3"), 0);
}

#[test]
fn global_divisors() {
    assert_eq!(divisor("Ga", "1/x"), pairs(&[("x", 2)]));
    assert_eq!(divisor("Ga", "1/x^2"), pairs(&[("x", 2)]));
    assert_eq!(divisor("Ga", "1/x^3"), pairs(&[("x", 4)]));
    let mut gm = divisor("Gm", "x");
    gm.sort();
    assert_eq!(gm, pairs(&[("inf", 1), ("x", 1)]));
    assert_eq!(divisor("Ga", "x^2 + x"), pairs(&[("inf", 2)]));
    assert_eq!(divisor("Ga", "x^3"), pairs(&[("inf", 4)]));
}

#[test]
fn swan_conductors() {
    let k = field("F2((t))");
    let sw = |n: usize, src: &str| {
        let w = WittRing::new(k.clone(), 2, n).unwrap();
        let x = WittVector::new(parse_witt(&k, src).unwrap());
        swan_conductor(&w, &x).unwrap()
    };
    assert_eq!(sw(1, "t^-2"), 1);
    assert_eq!(sw(1, "t^-3"), 3);
    assert_eq!(sw(1, "1 + t"), 0);
    assert_eq!(sw(1, "t^-12 + t^-6"), 0);
    assert_eq!(sw(2, "W(t^-1; 0)"), 2);
    let w = WittRing::new(k.clone(), 2, 1).unwrap();
    let x = WittVector::new(parse_witt(&k, "t^-3").unwrap());
    assert_eq!(render_rsw(&refined_swan(&w, &x).unwrap()), vec![("dlogt".to_string(), "t^-3 * 1".to_string())]);
    assert!(verify_prop48(&w, &x).unwrap().agrees);
}
