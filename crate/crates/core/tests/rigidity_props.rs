use av321::embedding::embeddings;
use av321::oracle::{all_permutations_up_to, naive_embeddings, naive_is_k_rigid, naive_ranks};
use av321::perm::max_decreasing_length;
use av321::rigidity::{articulation_points, is_k_rigid, rank_decomposition, rigid_reduction};
use av321::Permutation;

fn members(k: usize, n: usize) -> Vec<Permutation> {
    all_permutations_up_to(n)
        .into_iter()
        .filter(|p| max_decreasing_length(p) <= k)
        .collect()
}

#[test]
fn greedy_ranks_match_definition() {
    for perm in members(3, 7) {
        assert_eq!(rank_decomposition(&perm).ranks(), naive_ranks(&perm), "{perm}");
        let d = rank_decomposition(&perm);
        for t in 1..=d.k() {
            assert!(perm.pattern_at(&d.layer(t)).is_increasing());
        }
    }
}

#[test]
fn points_of_a_full_decreasing_copy_sit_at_their_rank() {
    for k in 1..=3 {
        for perm in members(k, 7) {
            let ranks = rank_decomposition(&perm);
            for copy in naive_embeddings(&Permutation::decreasing(k), &perm) {
                for (slot, &x) in copy.iter().enumerate() {
                    assert_eq!(ranks.rank(x), k - slot, "{perm}");
                }
            }
        }
    }
}

#[test]
fn rigid_patterns_keep_their_ranks() {
    for k in 1..=3 {
        let rigid: Vec<Permutation> = members(k, 5)
            .into_iter()
            .filter(|r| max_decreasing_length(r) == k && is_k_rigid(r, k).unwrap())
            .collect();
        let hosts = members(k, 7);
        for rho in &rigid {
            let pattern_ranks = rank_decomposition(rho);
            for pi in &hosts {
                let host_ranks = rank_decomposition(pi);
                for e in embeddings(rho, pi) {
                    for (i, &x) in e.image().iter().enumerate() {
                        assert_eq!(host_ranks.rank(x), pattern_ranks.rank(i), "{rho} in {pi}");
                    }
                }
            }
        }
    }
}

#[test]
fn rigidity_matches_definition() {
    for k in 1..=3 {
        for perm in members(k, 7) {
            assert_eq!(is_k_rigid(&perm, k).unwrap(), naive_is_k_rigid(&perm, k), "{perm}");
        }
    }
}

#[test]
fn rigid_means_no_articulation_point() {
    for perm in members(2, 8) {
        let red = rigid_reduction(&perm).unwrap();
        assert_eq!(rigid_reduction(&red).unwrap(), red);
        assert!(red.is_empty() || is_k_rigid(&red, 2).unwrap());
        if !perm.is_empty() {
            assert_eq!(is_k_rigid(&perm, 2).unwrap(), articulation_points(&perm).is_empty(), "{perm}");
        }
    }
}
