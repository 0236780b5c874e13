use av321::embedding::{contains, embeddings, first_embedding};
use av321::oracle::{all_permutations_up_to, naive_embeddings, naive_max_decreasing_length};
use av321::perm::{max_decreasing_length, plus_decompose, rotate180};
use av321::Permutation;
use proptest::prelude::*;

fn arb_perm(max_len: usize) -> impl Strategy<Value = Permutation> {
    (0..=max_len)
        .prop_flat_map(|n| Just((1..=n as u32).collect::<Vec<_>>()).prop_shuffle())
        .prop_map(|v| Permutation::new(v).unwrap())
}

#[test]
fn embeddings_match_subset_oracle() {
    let patterns = all_permutations_up_to(4);
    let hosts = all_permutations_up_to(7);
    for pattern in &patterns {
        for host in &hosts {
            let fast: Vec<Vec<usize>> = embeddings(pattern, host)
                .iter()
                .map(|e| e.image().to_vec())
                .collect();
            let slow = naive_embeddings(pattern, host);
            assert_eq!(fast, slow, "{pattern} in {host}");
            assert_eq!(contains(pattern, host), !slow.is_empty());
        }
    }
}

#[test]
fn symmetry_and_decomposition() {
    for perm in all_permutations_up_to(8) {
        assert_eq!(rotate180(&rotate180(&perm)), perm);
        assert_eq!(plus_decompose(&perm).reassemble(), perm);
    }
}

#[test]
fn decreasing_length_matches_containment() {
    for perm in all_permutations_up_to(7) {
        let d = max_decreasing_length(&perm);
        assert_eq!(d, naive_max_decreasing_length(&perm));
        for k in 0..=3 {
            assert_eq!(d <= k, !contains(&Permutation::decreasing(k + 1), &perm));
        }
    }
}

proptest! {
    #[test]
    fn text_round_trip(perm in arb_perm(14)) {
        let back: Permutation = perm.to_string().parse().unwrap();
        prop_assert_eq!(back, perm);
    }

    #[test]
    fn embeddings_compose(a in arb_perm(3), b in arb_perm(6), c in arb_perm(9)) {
        if let (Some(f), Some(g)) = (first_embedding(&a, &b), first_embedding(&b, &c)) {
            prop_assert!(f.compose(&g).is_valid(&a, &c));
        }
    }

    #[test]
    fn every_embedding_is_valid(a in arb_perm(4), b in arb_perm(9)) {
        for e in embeddings(&a, &b) {
            prop_assert!(e.is_valid(&a, &b));
        }
    }
}
