use av321::oracle::all_permutations_up_to;
use av321::perm::max_decreasing_length;
use av321::staircase::{
    embed_in_generic, generic_staircase, min_type_change_merge, staircase_decomposition, validate_staircase,
};
use av321::Permutation;

fn i2(n: usize) -> Vec<Permutation> {
    all_permutations_up_to(n)
        .into_iter()
        .filter(|p| max_decreasing_length(p) <= 2)
        .collect()
}

#[test]
fn greedy_decompositions_satisfy_the_axioms() {
    for perm in i2(9) {
        let d = staircase_decomposition(&perm).unwrap();
        validate_staircase(&perm, &d).unwrap_or_else(|e| panic!("{perm}: {e}"));
    }
}

#[test]
fn small_members_embed_in_generic_staircases() {
    for perm in i2(7) {
        let (w, host) = embed_in_generic(&perm).unwrap();
        assert!(w.embedding.is_valid(&perm, &host));
        assert_eq!(host, generic_staircase(w.k, w.b));
    }
}

#[test]
fn deleting_a_point_never_adds_type_changes() {
    let inc = [Permutation::decreasing(2)];
    for perm in i2(8) {
        let n = perm.len();
        let best = |p: &Permutation| {
            min_type_change_merge(p, &inc, &inc, 2 * p.len())
                .unwrap()
                .map(|w| w.total())
        };
        let Some(whole) = best(&perm) else {
            panic!("{perm} is a merge of two increasing sequences");
        };
        for x in 0..n {
            let smaller = best(&perm.remove_point(x)).unwrap();
            assert!(smaller <= whole, "{perm} minus position {x}");
        }
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn bounded_merge_counts_respect_the_growth_estimates() {
    // C = D = Av(21): c_n = d_n = 1, so the estimates read
    // 1 ≤ m_n and, for n > 2B, m_n ≤ C(n, B)².
    let inc = [Permutation::decreasing(2)];
    let members = i2(10);
    for bound in 0..=3u64 {
        for n in 1..=10u64 {
            let m = members
                .iter()
                .filter(|p| p.len() as u64 == n)
                .filter(|p| min_type_change_merge(p, &inc, &inc, bound as usize).unwrap().is_some())
                .count() as u64;
            assert!(m >= 1, "B = {bound}, n = {n}");
            if n > 2 * bound {
                assert!(m <= binomial(n, bound).pow(2), "B = {bound}, n = {n}: {m}");
            }
        }
    }
}
