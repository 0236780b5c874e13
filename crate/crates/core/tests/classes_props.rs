use av321::classes::{enumerate_class, ik_counts, reduce_basis, ClassSpec, EnumerationConfig};
use av321::series::catalan_counts;
use av321::verify::test_matrix;
use av321::Permutation;

fn p(s: &str) -> Permutation {
    s.parse().unwrap()
}

#[test]
fn catalan_roots_increase_towards_four() {
    let e = enumerate_class(&ClassSpec::new([p("321")]), 14, &EnumerationConfig::default()).unwrap();
    let catalan: Vec<String> = catalan_counts(14)[1..].iter().map(|c| c.to_string()).collect();
    let counts: Vec<String> = e.profile.counts.iter().map(|c| c.to_string()).collect();
    assert_eq!(counts, catalan);
    let roots: Vec<f64> = e.profile.roots.iter().map(|r| r.parse().unwrap()).collect();
    assert!(roots.windows(2).all(|w| w[0] < w[1]), "{roots:?}");
    assert!(roots.iter().all(|&r| r < 4.0));
}

#[test]
fn reduced_bases_give_smaller_classes() {
    let config = EnumerationConfig::default();
    for basis in test_matrix() {
        if basis.iter().any(|b| av321::perm::max_decreasing_length(b) > 2) {
            continue;
        }
        let reduced = reduce_basis(&basis).unwrap();
        let larger = enumerate_class(&ClassSpec::new(basis.clone()), 8, &config).unwrap();
        let smaller = enumerate_class(&ClassSpec::new(reduced), 8, &config).unwrap();
        for n in 1..=8 {
            for member in &smaller.members[n] {
                assert!(larger.spec.admits(member), "{member} for {:?}", basis);
            }
        }
    }
}

fn ratios(k: usize, n_max: usize) -> Vec<f64> {
    let c: Vec<f64> = ik_counts(k, n_max)
        .iter()
        .map(|x| x.to_string().parse().unwrap())
        .collect();
    c.windows(2).map(|w| w[1] / w[0]).collect()
}

#[test]
fn growth_of_ik_approaches_k_squared_from_below() {
    for k in [2usize, 3] {
        let r = ratios(k, 30);
        let target = (k * k) as f64;
        assert!(r[1..].windows(2).all(|w| w[0] < w[1]), "I_{k}: {r:?}");
        assert!(r.iter().all(|&x| x < target));
    }
    // c_13 / c_12: within 25% of 4 for I_2; I_3 is 6.739, just outside 25% of
    // 9, and gets inside from c_14 / c_13 on.
    let i2 = ratios(2, 13);
    assert!((i2[12] - 4.0).abs() <= 1.0);
    let i3 = ratios(3, 14);
    assert!((i3[12] - 6.739).abs() < 0.001);
    assert!((i3[13] - 9.0).abs() <= 2.25);
}
