//! Slow reference implementations straight from the definitions. Used to
//! cross-check the fast code in tests and in the acceptance suite.

use crate::perm::Permutation;

/// All permutations of length `n` in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut current: Vec<u32> = (1..=n as u32).collect();
    let mut out = vec![Permutation::from_vec_unchecked(current.clone())];
    // Standard next-permutation step.
    loop {
        let Some(i) = (1..current.len()).rev().find(|&i| current[i - 1] < current[i]) else {
            return out;
        };
        let j = (i..current.len()).rev().find(|&j| current[j] > current[i - 1]).unwrap();
        current.swap(i - 1, j);
        current[i..].reverse();
        out.push(Permutation::from_vec_unchecked(current.clone()));
    }
}

/// All permutations of length `0..=n`, shortest first.
pub fn all_permutations_up_to(n: usize) -> Vec<Permutation> {
    (0..=n).flat_map(all_permutations).collect()
}

/// Increasing position tuples of size `m` drawn from `0..n`, lexicographic.
pub fn subsets(n: usize, m: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, m: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < m - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, m, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if m <= n {
        go(0, n, m, &mut Vec::new(), &mut out);
    }
    out
}

/// Every position subset of the host whose pattern equals `pattern`.
pub fn naive_embeddings(pattern: &Permutation, host: &Permutation) -> Vec<Vec<usize>> {
    subsets(host.len(), pattern.len())
        .into_iter()
        .filter(|s| host.pattern_at(s) == *pattern)
        .collect()
}

pub fn naive_contains(pattern: &Permutation, host: &Permutation) -> bool {
    subsets(host.len(), pattern.len())
        .iter()
        .any(|s| host.pattern_at(s) == *pattern)
}

pub fn naive_max_decreasing_length(perm: &Permutation) -> usize {
    (0..=perm.len())
        .rev()
        .find(|&m| naive_contains(&Permutation::decreasing(m), perm))
        .unwrap_or(0)
}

/// Rank of each point: the largest `t` such that the point is the maximum
/// (first point) of some copy of `δ_t`.
pub fn naive_ranks(perm: &Permutation) -> Vec<usize> {
    let n = perm.len();
    let mut rank = vec![0; n];
    for t in 1..=n {
        for s in naive_embeddings(&Permutation::decreasing(t), perm) {
            rank[s[0]] = rank[s[0]].max(t);
        }
    }
    rank
}

pub fn naive_is_k_rigid(perm: &Permutation, k: usize) -> bool {
    let mut covered = vec![false; perm.len()];
    for s in naive_embeddings(&Permutation::decreasing(k), perm) {
        for p in s {
            covered[p] = true;
        }
    }
    covered.iter().all(|&c| c)
}

/// Members of `S_n` avoiding every basis element, by filtering all of `S_n`.
pub fn filter_class(n: usize, basis: &[Permutation]) -> Vec<Permutation> {
    all_permutations(n)
        .into_iter()
        .filter(|p| basis.iter().all(|b| !naive_contains(b, p)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorial_counts() {
        let counts: Vec<usize> = (0..=6).map(|n| all_permutations(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 6, 24, 120, 720]);
        let s3: Vec<String> = all_permutations(3).iter().map(|p| p.to_string()).collect();
        assert_eq!(s3, ["123", "132", "213", "231", "312", "321"]);
    }

    #[test]
    fn subsets_are_binomial() {
        assert_eq!(subsets(5, 2).len(), 10);
        assert_eq!(subsets(3, 0), vec![Vec::<usize>::new()]);
        assert!(subsets(2, 3).is_empty());
    }

    #[test]
    fn naive_definitions() {
        let p = |s: &str| s.parse::<Permutation>().unwrap();
        assert_eq!(naive_embeddings(&p("21"), &p("2413")).len(), 3);
        assert_eq!(naive_ranks(&p("2413")), vec![2, 2, 1, 1]);
        assert!(naive_is_k_rigid(&p("2413"), 2));
        assert!(!naive_is_k_rigid(&p("213"), 2));
        assert_eq!(filter_class(6, &[p("321")]).len(), 132);
    }
}
