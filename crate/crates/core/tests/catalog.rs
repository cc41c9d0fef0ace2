use signforge::catalog::{checksum, get, isomorphic_pairs, list, names, verify};
use signforge::constructions::ghat;
use signforge::frustration::frustration_index;
use signforge::iso::switching_isomorphic;
use signforge::Error;

#[test]
fn every_entry_verifies() {
    for n in names() {
        let r = verify(&n).unwrap();
        let bad: Vec<_> = r.checks.iter().filter(|c| !c.ok).collect();
        assert!(bad.is_empty(), "{n}: {bad:?}");
    }
}

#[test]
fn class_sizes() {
    let all = list();
    let count = |c: &str| all.iter().filter(|e| e.has_class(c)).count();
    assert_eq!(count("P*(3)"), 10);
    assert_eq!(count("S*(3)"), 2);
    assert_eq!(count("L(2)"), 3);
    assert_eq!(count("L(1)"), 1);
}

#[test]
fn named_lookups() {
    let k4 = get("k4-minus-all").unwrap();
    assert_eq!(frustration_index(&k4.graph).unwrap().ell, 2);
    let moser = get("moser-spindle").unwrap();
    assert_eq!(moser.graph.vertex_count(), 7);
    assert_eq!(frustration_index(&moser.graph).unwrap().ell, 3);
    let left = get("fig13-left").unwrap();
    assert_eq!(left.graph.vertex_count(), 10);
    assert!(matches!(get("petersen"), Err(Error::UnknownCatalogEntry { .. })));
}

#[test]
fn distinct_classes() {
    assert!(isomorphic_pairs("P*(3)").unwrap().is_empty());
    assert!(isomorphic_pairs("S*(3)").unwrap().is_empty());
}

#[test]
fn projective_drawings_agree() {
    let a = get("s3-projective").unwrap().graph;
    let b = get("s3-projective-alt").unwrap().graph;
    assert!(switching_isomorphic(&a, &b).unwrap());
}

#[test]
fn planar_entries_lose_one_per_deleted_edge() {
    for e in list().into_iter().filter(|e| e.has_class("P*(3)")) {
        for d in 0..e.graph.edge_count() {
            let ell = frustration_index(&e.graph.delete_edge(d)).unwrap().ell;
            assert_eq!(ell, 2, "{} minus edge {d}", e.name);
        }
    }
}

#[test]
fn ladder_two_is_frozen() {
    let golden = include_str!("golden/ladder-2.sg");
    assert_eq!(ghat(2).to_sg(), golden);
    let entry = get("ladder-2").unwrap();
    assert_eq!(entry.checksum, format!("{:016x}", checksum(&entry.graph)));
}
