//! Exact enumeration of finitely based classes, growth profiles, and the
//! desk-scale checks of basis reduction.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::embedding::{avoids_all, contains, contains_pinned};
use crate::error::{Error, Result};
use crate::perm::{direct_sum_all, max_decreasing_length, Permutation};
use crate::rigidity::rigid_reduction;
use crate::staircase::min_type_change_merge;

/// A class `Av(basis)` with the basis reduced to its minimal elements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassSpec {
    basis: Vec<Permutation>,
}

impl ClassSpec {
    pub fn new<I: IntoIterator<Item = Permutation>>(basis: I) -> Self {
        ClassSpec {
            basis: minimal_elements(basis),
        }
    }

    /// `I_k ∩ Av(extra)`.
    pub fn in_ik<I: IntoIterator<Item = Permutation>>(k: usize, extra: I) -> Self {
        Self::new(std::iter::once(Permutation::decreasing(k + 1)).chain(extra))
    }

    pub fn basis(&self) -> &[Permutation] {
        &self.basis
    }

    pub fn admits(&self, perm: &Permutation) -> bool {
        avoids_all(perm, &self.basis)
    }

    /// A basis holding the empty permutation gives the empty class.
    pub fn is_empty_class(&self) -> bool {
        self.basis.iter().any(|b| b.is_empty())
    }
}

impl fmt::Display for ClassSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.basis.iter().map(|b| b.to_string()).collect();
        write!(f, "Av({})", names.join(", "))
    }
}

/// Keeps the containment-minimal elements, sorted by length then values.
pub fn minimal_elements<I: IntoIterator<Item = Permutation>>(perms: I) -> Vec<Permutation> {
    let sorted: BTreeSet<(usize, Permutation)> = perms.into_iter().map(|p| (p.len(), p)).collect();
    let mut kept: Vec<Permutation> = Vec::new();
    for (_, p) in sorted {
        if !kept.iter().any(|q| contains(q, &p)) {
            kept.push(p);
        }
    }
    kept
}

/// Counts `c_1..c_N` with the derived `n`-th roots and successive ratios.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CountProfile {
    pub counts: Vec<u64>,
    pub roots: Vec<String>,
    pub ratios: Vec<String>,
}

impl CountProfile {
    /// `counts[i]` is the number of members of length `i + 1`.
    pub fn from_counts(counts: Vec<u64>) -> Self {
        let roots = counts
            .iter()
            .enumerate()
            .map(|(i, &c)| format!("{:.6}", (c as f64).powf(1.0 / (i + 1) as f64)))
            .collect();
        let ratios = counts
            .windows(2)
            .map(|w| {
                if w[0] == 0 {
                    "-".to_string()
                } else {
                    format!("{:.6}", w[1] as f64 / w[0] as f64)
                }
            })
            .collect();
        CountProfile {
            counts,
            roots,
            ratios,
        }
    }

    /// `c_n`, or `None` past the end.
    pub fn count(&self, n: usize) -> Option<u64> {
        n.checked_sub(1).and_then(|i| self.counts.get(i)).copied()
    }

    /// Plain-text table: `n  c_n  root  ratio`.
    pub fn table(&self) -> String {
        let mut out = format!("{:>3}  {:>12}  {:>10}  {:>10}\n", "n", "count", "root", "ratio");
        for (i, c) in self.counts.iter().enumerate() {
            let ratio = if i == 0 { "" } else { &self.ratios[i - 1] };
            out.push_str(&format!("{:>3}  {:>12}  {:>10}  {:>10}\n", i + 1, c, self.roots[i], ratio));
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EnumerationConfig {
    /// Largest length that may be requested.
    pub max_length: usize,
    /// Member lists are kept up to this length; longer lengths are counted only.
    pub retain_up_to: usize,
}

impl Default for EnumerationConfig {
    fn default() -> Self {
        EnumerationConfig {
            max_length: 14,
            retain_up_to: 12,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassEnumeration {
    pub spec: ClassSpec,
    pub profile: CountProfile,
    /// `members[n]` lists the members of length `n` for `n ≤ retain_up_to`.
    #[serde(skip)]
    pub members: Vec<Vec<Permutation>>,
}

struct Pins {
    basis: Vec<(Permutation, usize)>,
}

impl Pins {
    fn new(spec: &ClassSpec) -> Self {
        let basis = spec
            .basis
            .iter()
            .map(|b| {
                let top = b.positions_by_value().last().copied().unwrap_or(0);
                (b.clone(), top)
            })
            .collect();
        Pins { basis }
    }

    /// Children of a member: a new maximum in every gap, kept when no basis
    /// element occurs through the new point (any occurrence must use it).
    fn children<'a>(&'a self, parent: &'a Permutation) -> impl Iterator<Item = Permutation> + 'a {
        (0..=parent.len()).filter_map(move |gap| {
            let child = parent.insert_max(gap);
            let ok = self
                .basis
                .iter()
                .all(|(b, top)| !contains_pinned(b, &child, *top, gap));
            ok.then_some(child)
        })
    }
}

/// Length-incremental generation by inserting a new maximum.
pub fn enumerate_class(spec: &ClassSpec, n_max: usize, config: &EnumerationConfig) -> Result<ClassEnumeration> {
    if n_max > config.max_length {
        return Err(Error::InvalidArgument(format!(
            "length {n_max} exceeds the enumeration ceiling {}",
            config.max_length
        )));
    }
    let pins = Pins::new(spec);
    let mut level: Vec<Permutation> = if spec.is_empty_class() {
        Vec::new()
    } else {
        vec![Permutation::empty()]
    };
    let mut members = vec![level.clone()];
    let mut counts = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        if n == n_max && n > config.retain_up_to {
            let c: usize = level.par_iter().map(|p| pins.children(p).count()).sum();
            counts.push(c as u64);
            break;
        }
        level = level
            .par_iter()
            .flat_map_iter(|p| pins.children(p))
            .collect();
        counts.push(level.len() as u64);
        if n <= config.retain_up_to {
            members.push(level.clone());
        }
    }
    Ok(ClassEnumeration {
        spec: spec.clone(),
        profile: CountProfile::from_counts(counts),
        members,
    })
}

/// `|I_k ∩ S_n|` for `n = 0..=n_max`: the sum of `(f^λ)²` over partitions
/// `λ ⊢ n` with at most `k` parts, `f^λ` from the hook-length formula.
pub fn ik_counts(k: usize, n_max: usize) -> Vec<BigUint> {
    fn partitions(n: usize, max_part: usize, parts_left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        if parts_left == 0 {
            return;
        }
        for part in (1..=max_part.min(n)).rev() {
            cur.push(part);
            partitions(n - part, part, parts_left - 1, cur, out);
            cur.pop();
        }
    }
    let factorial = |n: usize| (1..=n).fold(BigUint::one(), |acc, i| acc * i);
    (0..=n_max)
        .map(|n| {
            let mut shapes = Vec::new();
            partitions(n, n, k, &mut Vec::new(), &mut shapes);
            shapes
                .iter()
                .map(|shape| {
                    let mut hooks = BigUint::one();
                    for (i, &row) in shape.iter().enumerate() {
                        for j in 0..row {
                            let below = shape[i + 1..].iter().filter(|&&r| r > j).count();
                            hooks *= row - j + below;
                        }
                    }
                    let f = factorial(n) / hooks;
                    &f * &f
                })
                .fold(BigUint::zero(), |acc, x| acc + x)
        })
        .collect()
}

/// `c_{n+1} / c_n` for `I_k`, used as a finite-n stand-in for `s(I_k) = k²`.
pub fn ik_ratio(k: usize, n: usize) -> f64 {
    let c = ik_counts(k, n + 1);
    c[n + 1].to_f64().unwrap_or(f64::NAN) / c[n].to_f64().unwrap_or(f64::NAN)
}

/// `red(X)`: elementwise rigid reduction followed by antichain minimisation.
pub fn reduce_basis(basis: &[Permutation]) -> Result<Vec<Permutation>> {
    let reduced = basis.iter().map(rigid_reduction).collect::<Result<Vec<_>>>()?;
    Ok(minimal_elements(reduced))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MainTheoremConfig {
    /// Difference members up to this length are decomposed as merges.
    pub merge_max_length: usize,
    /// Largest number of type changes tried.
    pub bound: usize,
}

impl Default for MainTheoremConfig {
    fn default() -> Self {
        MainTheoremConfig {
            merge_max_length: 10,
            bound: 16,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MainTheoremReport {
    pub basis: Vec<Permutation>,
    pub reduced_basis: Vec<Permutation>,
    pub fixed_point: bool,
    /// `I_2 ∩ Av(X)`.
    pub larger: CountProfile,
    /// `I_2 ∩ Av(red X)`.
    pub smaller: CountProfile,
    pub inclusion_holds: bool,
    /// `|larger \ smaller|` at each length `1..=N`.
    pub difference_counts: Vec<u64>,
    pub merges_checked: usize,
    /// Members of the difference with no merge within the bound.
    pub merge_failures: Vec<Permutation>,
    /// Smallest bound that suffices for every checked member.
    pub max_total_observed: usize,
    pub bound: usize,
}

impl MainTheoremReport {
    pub fn passed(&self) -> bool {
        self.inclusion_holds && self.merge_failures.is_empty()
    }
}

/// Compares `I_2 ∩ Av(X)` with `I_2 ∩ Av(red X)` up to length `n_max`, and
/// splits every member of the difference (up to the configured length) into
/// two members of the smaller class with as few type changes as possible.
pub fn main_theorem_report(
    basis: &[Permutation],
    n_max: usize,
    enumeration: &EnumerationConfig,
    config: &MainTheoremConfig,
) -> Result<MainTheoremReport> {
    for tau in basis {
        if max_decreasing_length(tau) > 2 {
            return Err(Error::NotInClass {
                perm: tau.to_string(),
                k: 2,
                found: max_decreasing_length(tau),
            });
        }
    }
    let original = minimal_elements(basis.iter().cloned());
    let reduced = reduce_basis(&original)?;
    let larger_spec = ClassSpec::in_ik(2, original.iter().cloned());
    let smaller_spec = ClassSpec::in_ik(2, reduced.iter().cloned());
    let retain = EnumerationConfig {
        retain_up_to: enumeration.retain_up_to.max(config.merge_max_length.min(n_max)),
        ..*enumeration
    };
    let larger = enumerate_class(&larger_spec, n_max, &retain)?;
    let smaller = enumerate_class(&smaller_spec, n_max, &retain)?;

    let mut inclusion_holds = true;
    let mut difference_counts = Vec::with_capacity(n_max);
    let mut difference: Vec<Permutation> = Vec::new();
    for n in 1..=n_max {
        let (big, small) = (
            larger.profile.count(n).unwrap_or(0),
            smaller.profile.count(n).unwrap_or(0),
        );
        inclusion_holds &= small <= big;
        difference_counts.push(big.saturating_sub(small));
        if let (Some(big_members), Some(small_members)) = (larger.members.get(n), smaller.members.get(n)) {
            let big_set: BTreeSet<&Permutation> = big_members.iter().collect();
            inclusion_holds &= small_members.iter().all(|p| big_set.contains(p));
            if n <= config.merge_max_length {
                difference.extend(big_members.iter().filter(|p| !smaller_spec.admits(p)).cloned());
            }
        }
    }

    let part_basis = smaller_spec.basis().to_vec();
    let outcomes: Vec<(Permutation, Option<usize>)> = difference
        .par_iter()
        .map(|p| {
            let found = min_type_change_merge(p, &part_basis, &part_basis, config.bound)
                .map(|w| w.map(|w| w.total()));
            found.map(|t| (p.clone(), t))
        })
        .collect::<Result<_>>()?;
    let merge_failures = outcomes
        .iter()
        .filter(|(_, t)| t.is_none())
        .map(|(p, _)| p.clone())
        .collect();
    let max_total_observed = outcomes.iter().filter_map(|(_, t)| *t).max().unwrap_or(0);

    Ok(MainTheoremReport {
        fixed_point: original == reduced,
        basis: original,
        reduced_basis: reduced,
        larger: larger.profile,
        smaller: smaller.profile,
        inclusion_holds,
        difference_counts,
        merges_checked: outcomes.len(),
        merge_failures,
        max_total_observed,
        bound: config.bound,
    })
}

/// Points of `π` with a copy of `α` entirely below and left of them and a copy
/// of `β` entirely above and right of them. 0-based positions, ascending.
pub fn pivot_chain(perm: &Permutation, alpha: &Permutation, beta: &Permutation) -> Vec<usize> {
    let n = perm.len();
    (0..n)
        .filter(|&x| {
            let v = perm.value(x);
            let below_left: Vec<u32> = (0..x).map(|i| perm.value(i)).filter(|&w| w < v).collect();
            let above_right: Vec<u32> = (x + 1..n).map(|i| perm.value(i)).filter(|&w| w > v).collect();
            contains(alpha, &Permutation::pattern_of(&below_left))
                && contains(beta, &Permutation::pattern_of(&above_right))
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct PartialReductionReport {
    pub k: usize,
    pub alpha: Permutation,
    pub beta: Permutation,
    pub extra_basis: Vec<Permutation>,
    /// `I_k ∩ Av(X, α ⊕ 1 ⊕ 1 ⊕ β)`.
    pub larger: CountProfile,
    /// `I_k ∩ Av(X, α ⊕ 1 ⊕ β)`.
    pub smaller: CountProfile,
    /// Members of the larger class containing `α ⊕ 1 ⊕ β` that were checked.
    pub checked: usize,
    pub largest_chain: usize,
    /// Members whose pivots are not a decreasing sequence of at most `k` points.
    pub failures: Vec<Permutation>,
}

impl PartialReductionReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn verify_partial_reduction(
    k: usize,
    alpha: &Permutation,
    beta: &Permutation,
    extra: &[Permutation],
    n_max: usize,
    enumeration: &EnumerationConfig,
) -> Result<PartialReductionReport> {
    let one = Permutation::identity(1);
    let long = direct_sum_all([alpha, &one, &one, beta]);
    let short = direct_sum_all([alpha, &one, beta]);
    let larger_spec = ClassSpec::in_ik(k, extra.iter().cloned().chain([long]));
    let smaller_spec = ClassSpec::in_ik(k, extra.iter().cloned().chain([short.clone()]));
    let retain = EnumerationConfig {
        retain_up_to: enumeration.retain_up_to.max(n_max),
        ..*enumeration
    };
    let larger = enumerate_class(&larger_spec, n_max, &retain)?;
    let smaller = enumerate_class(&smaller_spec, n_max, &retain)?;
    let candidates: Vec<&Permutation> = larger
        .members
        .iter()
        .flatten()
        .filter(|p| contains(&short, p))
        .collect();
    let chains: Vec<(usize, bool)> = candidates
        .par_iter()
        .map(|p| {
            let chain = pivot_chain(p, alpha, beta);
            let decreasing = chain.windows(2).all(|w| p.value(w[0]) > p.value(w[1]));
            (chain.len(), decreasing && chain.len() <= k)
        })
        .collect();
    Ok(PartialReductionReport {
        k,
        alpha: alpha.clone(),
        beta: beta.clone(),
        extra_basis: extra.to_vec(),
        larger: larger.profile,
        smaller: smaller.profile,
        checked: candidates.len(),
        largest_chain: chains.iter().map(|c| c.0).max().unwrap_or(0),
        failures: candidates
            .iter()
            .zip(&chains)
            .filter(|(_, c)| !c.1)
            .map(|(p, _)| (*p).clone())
            .collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::filter_class;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn counts(spec: &ClassSpec, n: usize) -> Vec<u64> {
        enumerate_class(spec, n, &EnumerationConfig::default())
            .unwrap()
            .profile
            .counts
    }

    #[test]
    fn catalan_and_trivial_classes() {
        assert_eq!(counts(&ClassSpec::new([p("321")]), 6), vec![1, 2, 5, 14, 42, 132]);
        assert_eq!(counts(&ClassSpec::new([p("21")]), 5), vec![1; 5]);
        assert_eq!(counts(&ClassSpec::new([Permutation::empty()]), 3), vec![0; 3]);
    }

    #[test]
    fn insertion_matches_filter() {
        for basis in [vec![p("321"), p("2143")], vec![p("231")], vec![p("4321"), p("2413")]] {
            let spec = ClassSpec::new(basis.clone());
            let e = enumerate_class(&spec, 7, &EnumerationConfig::default()).unwrap();
            for n in 1..=7 {
                let mut got = e.members[n].clone();
                got.sort();
                assert_eq!(got, filter_class(n, &basis), "{spec} at {n}");
            }
        }
    }

    #[test]
    fn last_level_is_counted_without_storing() {
        let config = EnumerationConfig {
            max_length: 14,
            retain_up_to: 3,
        };
        let e = enumerate_class(&ClassSpec::new([p("321")]), 7, &config).unwrap();
        assert_eq!(e.profile.counts, vec![1, 2, 5, 14, 42, 132, 429]);
        assert_eq!(e.members.len(), 4);
        assert!(enumerate_class(&ClassSpec::new([p("321")]), 15, &config).is_err());
    }

    #[test]
    fn basis_is_antichain_reduced() {
        let spec = ClassSpec::new([p("4321"), p("321"), p("2143"), p("321")]);
        assert_eq!(spec.basis(), &[p("321"), p("2143")]);
        assert_eq!(spec.to_string(), "Av(321, 2143)");
    }

    #[test]
    fn hook_length_counts() {
        let i2: Vec<u64> = ik_counts(2, 8).iter().map(|c| c.to_u64().unwrap()).collect();
        assert_eq!(i2, vec![1, 1, 2, 5, 14, 42, 132, 429, 1430]);
        let i3 = ik_counts(3, 7);
        let enumerated = counts(&ClassSpec::new([p("4321")]), 7);
        for n in 1..=7 {
            assert_eq!(i3[n].to_u64().unwrap(), enumerated[n - 1]);
        }
    }

    #[test]
    fn reductions() {
        assert_eq!(reduce_basis(&[p("2134657")]).unwrap(), vec![p("2143")]);
        assert_eq!(reduce_basis(&[p("241357689")]).unwrap(), vec![p("241365")]);
        assert_eq!(reduce_basis(&[p("2143")]).unwrap(), vec![p("2143")]);
        assert!(reduce_basis(&[p("321")]).is_err());
    }

    #[test]
    fn pivots() {
        let one = p("1");
        assert_eq!(pivot_chain(&p("123"), &one, &one), vec![1]);
        assert!(pivot_chain(&p("321"), &one, &one).is_empty());
        assert!(pivot_chain(&p("2143"), &one, &one).is_empty());
        assert_eq!(pivot_chain(&p("1324"), &one, &one), vec![1, 2]);
    }

    #[test]
    fn small_main_theorem_reports() {
        let r = main_theorem_report(&[p("2143")], 8, &EnumerationConfig::default(), &MainTheoremConfig::default())
            .unwrap();
        assert!(r.fixed_point && r.passed());
        assert_eq!(r.larger, r.smaller);
        let r = main_theorem_report(&[p("21")], 5, &EnumerationConfig::default(), &MainTheoremConfig::default())
            .unwrap();
        assert_eq!(r.larger.counts, vec![1; 5]);
        let r = main_theorem_report(&[p("213")], 7, &EnumerationConfig::default(), &MainTheoremConfig::default())
            .unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn partial_reduction_small() {
        let one = p("1");
        let r = verify_partial_reduction(2, &one, &one, &[], 8, &EnumerationConfig::default()).unwrap();
        assert!(r.passed() && r.checked > 0);
        let r = verify_partial_reduction(2, &Permutation::empty(), &one, &[], 6, &EnumerationConfig::default()).unwrap();
        assert!(r.passed());
    }
}
