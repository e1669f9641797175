use witt_modulus::extensions::{compare_levels, default_family, thmc_witness, DVEmbedding};
use witt_modulus::fields::descriptor::FieldDescriptor;
use witt_modulus::fields::parse::{parse_elem, parse_witt};
use witt_modulus::fields::ring::Ring;
use witt_modulus::witt::WittVector;

fn field(src: &str) -> Ring {
    FieldDescriptor::parse(src).unwrap().to_ring().unwrap()
}

fn witt(k: &Ring, src: &str) -> WittVector {
    WittVector::new(parse_witt(k, src).unwrap())
}

#[test]
fn embedding_images() {
    let k = field("F2((pi))");
    let x = parse_elem(&k, "pi^-1").unwrap();
    let tame = DVEmbedding::tame(&k, 3).unwrap();
    assert_eq!(tame.target.render(&tame.apply(&x).unwrap()), "t^-3");
    let wild = DVEmbedding::wild(&k, 2).unwrap();
    assert_eq!(wild.target.render(&wild.apply(&x).unwrap()), "t^-2");
    let k = field("F2(u)((pi))");
    let emb = DVEmbedding::perfect_residue(&k, 1).unwrap();
    let y = emb.apply(&parse_elem(&k, "u*pi^-2").unwrap()).unwrap();
    assert_eq!(emb.target.render(&y), "u*t^-2 + T*t^-1");
}

#[test]
fn level_comparisons() {
    let k = field("F2((pi))");
    let x = witt(&k, "pi^-1");
    let c = compare_levels(&DVEmbedding::tame(&k, 3).unwrap(), 2, &x).unwrap();
    assert_eq!((c.s_k, c.s_kp, c.e), (1, 3, 3));
    assert!(c.equality_ok);
    let c = compare_levels(&DVEmbedding::wild(&k, 2).unwrap(), 2, &x).unwrap();
    assert_eq!((c.s_k, c.s_kp), (1, 1));
    assert!(c.containment_ok);
    let c = compare_levels(&DVEmbedding::identity(&k).unwrap(), 2, &witt(&k, "W(pi^-3; pi^-1)")).unwrap();
    assert_eq!(c.s_k, c.s_kp);
}

#[test]
fn flat_levels_from_extensions() {
    let k = field("F2(u)((pi))");
    let fam = default_family(&k).unwrap();
    let c = thmc_witness(&fam, 2, &witt(&k, "u*pi^-2")).unwrap();
    assert_eq!((c.flat_min, c.max_s_kp), (2, 1));
    assert!(c.holds);
    let c = thmc_witness(&fam, 2, &witt(&k, "pi^-3")).unwrap();
    assert_eq!((c.flat_min, c.max_s_kp), (4, 3));
    let c = thmc_witness(&fam, 2, &witt(&k, "1 + u*pi")).unwrap();
    assert_eq!(c.flat_min, 1);
    assert!(c.holds);
}
