use std::collections::BTreeMap;

use av321::classes::{enumerate_class, ClassSpec, EnumerationConfig};
use av321::lattice::{enumerate_subdirect, lattice_of_21, pi_of, IntervalMap};
use av321::rigidity::is_k_rigid;
use av321::Permutation;

#[test]
fn lattice_map_is_injective() {
    let config = EnumerationConfig::default();
    let e = enumerate_class(&ClassSpec::new(["321".parse::<Permutation>().unwrap()]), 9, &config).unwrap();
    let mut seen = BTreeMap::new();
    for perm in e.members.iter().flatten() {
        if perm.is_empty() || !is_k_rigid(perm, 2).unwrap() {
            continue;
        }
        let k = lattice_of_21(perm).unwrap();
        assert!(k.is_subdirect(), "{perm}");
        if let Some(other) = seen.insert(k, perm.clone()) {
            panic!("{perm} and {other} share a lattice");
        }
    }
    assert!(seen.len() > 1000);
}

#[test]
fn every_subdirect_product_round_trips() {
    for m in 1..=4 {
        for n in 1..=4 {
            for k in enumerate_subdirect(&[m, n]) {
                IntervalMap::of(&k).unwrap();
                let perm = pi_of(&k).unwrap();
                assert_eq!(lattice_of_21(&perm).unwrap(), k);
            }
        }
    }
}
