//! A pair of intertwined staircases covering a member of `I_2`.
//!
//! `λ_1` is everything before the minimum and `μ_1` everything below the
//! first point. After that the blocks grow in bands: `λ_{i+1}` takes the
//! unassigned points below the top of `λ_i` (odd `i`) or left of the last
//! point of `λ_i` (even `i`); `μ_{i+1}` takes the unassigned points left of
//! the last point of `μ_i` (odd `i`) or below the top of `μ_i` (even `i`).
//! So position bands alternate `λ_1 | μ_1 μ_2 | λ_2 λ_3 | μ_3 μ_4 | …` and
//! value bands `μ_1 | λ_1 λ_2 | μ_2 μ_3 | …`. λ is a staircase in the usual
//! orientation, μ a staircase of the inverse permutation.
//!
//! When both chains stop while points remain, the rest lies above and right
//! of everything assigned, and the same construction restarts on it at the
//! next odd index (padding with one empty pair if needed). A restart on
//! points that begin with their own minimum puts that point alone in the λ
//! block, except at the very start, where `λ_1 = μ_1 = ∅` and the point goes
//! to `μ_2`.

use serde::Serialize;

use super::check_staircase_axioms;
use crate::error::Result;
use crate::perm::Permutation;
use crate::rigidity::require_in_class;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntertwinedStaircases {
    /// `λ_1, λ_2, …` as sorted 0-based positions. May contain empty blocks.
    pub lambda: Vec<Vec<usize>>,
    /// `μ_1, μ_2, …`, same number of levels as `lambda`.
    pub mu: Vec<Vec<usize>>,
}

impl IntertwinedStaircases {
    /// Number of λ blocks up to the last non-empty one.
    pub fn lambda_len(&self) -> usize {
        self.lambda.iter().rposition(|b| !b.is_empty()).map_or(0, |i| i + 1)
    }
}

struct Builder {
    assigned: Vec<bool>,
    remaining: usize,
    lambda: Vec<Vec<usize>>,
    mu: Vec<Vec<usize>>,
}

impl Builder {
    fn push(&mut self, l: Vec<usize>, m: Vec<usize>) {
        for &p in l.iter().chain(&m) {
            self.assigned[p] = true;
            self.remaining -= 1;
        }
        self.lambda.push(l);
        self.mu.push(m);
    }
}

pub fn intertwined_decomposition(perm: &Permutation) -> Result<IntertwinedStaircases> {
    require_in_class(perm, 2)?;
    let n = perm.len();
    let mut b = Builder {
        assigned: vec![false; n],
        remaining: n,
        lambda: Vec::new(),
        mu: Vec::new(),
    };
    while b.remaining > 0 {
        let i = b.lambda.len();
        if i > 0 {
            let (l, m) = next_blocks(perm, &b.assigned, &b.lambda[i - 1], &b.mu[i - 1], i % 2 == 1);
            if !l.is_empty() || !m.is_empty() {
                b.push(l, m);
                continue;
            }
            if i % 2 == 1 {
                b.push(Vec::new(), Vec::new());
            }
        }
        // Fresh start on the unassigned points.
        let first = (0..n).find(|&p| !b.assigned[p]).expect("points remain");
        let min = (0..n)
            .filter(|&p| !b.assigned[p])
            .min_by_key(|&p| perm.value(p))
            .expect("points remain");
        if first == min {
            if b.lambda.is_empty() {
                b.push(Vec::new(), Vec::new());
                b.push(Vec::new(), vec![first]);
            } else {
                b.push(vec![first], Vec::new());
            }
            continue;
        }
        let left: Vec<usize> = (first..min).filter(|&p| !b.assigned[p]).collect();
        let below: Vec<usize> = (first..n)
            .filter(|&p| !b.assigned[p] && perm.value(p) < perm.value(first))
            .collect();
        b.push(left, below);
    }
    Ok(IntertwinedStaircases {
        lambda: b.lambda,
        mu: b.mu,
    })
}

/// `λ_{i+1}` and `μ_{i+1}` from `λ_i` and `μ_i`.
fn next_blocks(perm: &Permutation, assigned: &[bool], lam: &[usize], mu: &[usize], odd: bool) -> (Vec<usize>, Vec<usize>) {
    let top = |block: &[usize]| block.iter().map(|&p| perm.value(p)).max();
    let last = |block: &[usize]| block.iter().copied().max();
    let free = (0..perm.len()).filter(|&p| !assigned[p]);
    let lam_next: Vec<usize> = if odd {
        match top(lam) {
            Some(t) => free.clone().filter(|&p| perm.value(p) < t).collect(),
            None => Vec::new(),
        }
    } else {
        match last(lam) {
            Some(l) => free.clone().filter(|&p| p < l).collect(),
            None => Vec::new(),
        }
    };
    let taken = |p: usize| lam_next.binary_search(&p).is_ok();
    let mu_next: Vec<usize> = if odd {
        match last(mu) {
            Some(l) => free.filter(|&p| p < l && !taken(p)).collect(),
            None => Vec::new(),
        }
    } else {
        match top(mu) {
            Some(t) => free.filter(|&p| perm.value(p) < t && !taken(p)).collect(),
            None => Vec::new(),
        }
    };
    (lam_next, mu_next)
}

/// Checks that the two block lists partition `perm`, that λ satisfies the
/// staircase axioms, that μ satisfies them in the inverse permutation, and
/// that `λ_1` / `μ_1` are exactly the points before the minimum / below the
/// first point.
pub fn validate_intertwined(perm: &Permutation, split: &IntertwinedStaircases) -> std::result::Result<(), String> {
    let n = perm.len();
    let mut seen = vec![false; n];
    for &p in split.lambda.iter().chain(&split.mu).flatten() {
        if p >= n || seen[p] {
            return Err(format!("position {} repeated or out of range", p + 1));
        }
        seen[p] = true;
    }
    if seen.iter().any(|s| !s) {
        return Err("blocks do not cover the permutation".into());
    }
    check_staircase_axioms(perm, &split.lambda).map_err(|e| format!("λ: {e}"))?;
    let inverse = perm.inverse();
    let mu_transposed: Vec<Vec<usize>> = split
        .mu
        .iter()
        .map(|block| {
            let mut t: Vec<usize> = block.iter().map(|&p| perm.value(p) as usize - 1).collect();
            t.sort_unstable();
            t
        })
        .collect();
    check_staircase_axioms(&inverse, &mu_transposed).map_err(|e| format!("μ: {e}"))?;
    if n > 0 {
        let min_pos = inverse.value(0) as usize - 1;
        let before_min: Vec<usize> = (0..min_pos).collect();
        let below_first: Vec<usize> = (0..n).filter(|&i| perm.value(i) < perm.value(0)).collect();
        if split.lambda.first() != Some(&before_min) {
            return Err("λ_1 is not the set of points before the minimum".into());
        }
        if split.mu.first() != Some(&below_first) {
            return Err("μ_1 is not the set of points below the first point".into());
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn decomposes_2413() {
        let perm = p("2413");
        let s = intertwined_decomposition(&perm).unwrap();
        assert_eq!(s.lambda[0], vec![0, 1]);
        assert_eq!(s.mu[0], vec![2]);
        validate_intertwined(&perm, &s).unwrap();
    }

    #[test]
    fn starting_with_the_minimum_leaves_lambda_1_empty() {
        let perm = p("1342");
        let s = intertwined_decomposition(&perm).unwrap();
        assert!(s.lambda[0].is_empty());
        assert!(s.mu[0].is_empty());
        validate_intertwined(&perm, &s).unwrap();
    }

    #[test]
    fn decomposes_21() {
        let s = intertwined_decomposition(&p("21")).unwrap();
        assert_eq!(s.lambda[0], vec![0]);
        assert_eq!(s.mu[0], vec![1]);
    }

    #[test]
    fn bands_follow_the_first_block() {
        let perm = p("246813957");
        let s = intertwined_decomposition(&perm).unwrap();
        assert_eq!(s.lambda, vec![vec![0, 1, 2, 3], vec![5, 7, 8], vec![6]]);
        assert_eq!(s.mu[0], vec![4]);
        validate_intertwined(&perm, &s).unwrap();
    }

    #[test]
    fn every_small_member_decomposes() {
        for perm in crate::oracle::all_permutations_up_to(9) {
            if crate::perm::max_decreasing_length(&perm) > 2 {
                continue;
            }
            let s = intertwined_decomposition(&perm).unwrap();
            validate_intertwined(&perm, &s).unwrap_or_else(|e| panic!("{perm}: {e} {s:?}"));
            assert_eq!(s.lambda.len(), s.mu.len());
        }
    }

    #[test]
    fn rejects_321() {
        assert!(intertwined_decomposition(&p("321")).is_err());
    }
}
