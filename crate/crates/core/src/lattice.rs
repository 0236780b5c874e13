//! Lattices of 21-copies in 2-rigid permutations, subdirect products of
//! chains, and k-good permutations.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::classes::{enumerate_class, ClassSpec, EnumerationConfig};
use crate::embedding::contains_through;
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::rigidity::{is_k_rigid, rank_decomposition, require_in_class};

/// A set of 1-based tuples in a product of chains `[d_1] × … × [d_r]`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct SubdirectProduct {
    pub dims: Vec<usize>,
    pub elements: BTreeSet<Vec<usize>>,
}

impl SubdirectProduct {
    pub fn new(dims: Vec<usize>, elements: impl IntoIterator<Item = Vec<usize>>) -> Self {
        SubdirectProduct {
            dims,
            elements: elements.into_iter().collect(),
        }
    }

    pub fn full(dims: &[usize]) -> Self {
        let elements = product_points(dims);
        SubdirectProduct::new(dims.to_vec(), elements)
    }

    pub fn is_subdirect(&self) -> bool {
        is_subdirect(&self.elements, &self.dims)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Text grid for two chains: row `a` lists `[n]`, `x` marks members.
    pub fn grid(&self) -> String {
        let (m, n) = match self.dims[..] {
            [m, n] => (m, n),
            _ => return self.to_string(),
        };
        let mut out = String::new();
        for a in 1..=m {
            let row: Vec<&str> = (1..=n)
                .map(|p| if self.elements.contains(&vec![a, p]) { "x" } else { "." })
                .collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for SubdirectProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tuples: Vec<String> = self
            .elements
            .iter()
            .map(|t| {
                let parts: Vec<String> = t.iter().map(|x| x.to_string()).collect();
                format!("({})", parts.join(","))
            })
            .collect();
        write!(f, "{{{}}}", tuples.join(", "))
    }
}

fn product_points(dims: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &d in dims {
        out = out
            .into_iter()
            .flat_map(|t| {
                (1..=d).map(move |x| {
                    let mut t = t.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
    }
    out
}

fn meet(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().zip(b).map(|(x, y)| *x.min(y)).collect()
}

fn join(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

/// Closed under coordinatewise min and max, inside the product, and every
/// projection onto a chain is surjective.
pub fn is_subdirect(elements: &BTreeSet<Vec<usize>>, dims: &[usize]) -> bool {
    let in_bounds = elements
        .iter()
        .all(|t| t.len() == dims.len() && t.iter().zip(dims).all(|(&x, &d)| (1..=d).contains(&x)));
    if !in_bounds {
        return false;
    }
    for a in elements {
        for b in elements {
            if !elements.contains(&meet(a, b)) || !elements.contains(&join(a, b)) {
                return false;
            }
        }
    }
    dims.iter().enumerate().all(|(c, &d)| {
        let seen: BTreeSet<usize> = elements.iter().map(|t| t[c]).collect();
        seen.len() == d
    })
}

/// `D(a)` for each `a ∈ [m]`, as inclusive `(min, max)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntervalMap {
    pub intervals: Vec<(usize, usize)>,
}

impl IntervalMap {
    /// Checks that each `D(a)` is a non-empty interval and that both ends
    /// weakly increase with `a`.
    pub fn of(k: &SubdirectProduct) -> Result<IntervalMap> {
        let [m, _] = k.dims[..] else {
            return Err(Error::InvalidArgument("interval maps need two chains".into()));
        };
        let mut intervals = Vec::with_capacity(m);
        for a in 1..=m {
            let d: Vec<usize> = k.elements.iter().filter(|t| t[0] == a).map(|t| t[1]).collect();
            let (Some(&lo), Some(&hi)) = (d.first(), d.last()) else {
                return Err(Error::NotSubdirect(format!("D({a}) is empty")));
            };
            if d.len() != hi - lo + 1 {
                return Err(Error::NotSubdirect(format!("D({a}) is not an interval")));
            }
            if let Some(&(plo, phi)) = intervals.last() {
                if lo < plo || hi < phi {
                    return Err(Error::NotSubdirect(format!("D({a}) moves down")));
                }
            }
            intervals.push((lo, hi));
        }
        Ok(IntervalMap { intervals })
    }
}

/// Sorted sublattice enumeration by closure (next-closure in lectic order),
/// keeping the subdirect ones.
pub fn enumerate_subdirect(dims: &[usize]) -> Vec<SubdirectProduct> {
    let points = product_points(dims);
    let n = points.len();
    assert!(n <= 64, "product too large for bitmask enumeration");
    let index: BTreeMap<&Vec<usize>, usize> = points.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut meets = vec![vec![0usize; n]; n];
    let mut joins = vec![vec![0usize; n]; n];
    for i in 0..n {
        for j in 0..n {
            meets[i][j] = index[&meet(&points[i], &points[j])];
            joins[i][j] = index[&join(&points[i], &points[j])];
        }
    }
    let bit = |i: usize| 1u64 << i;
    let closure = |mut set: u64| -> u64 {
        loop {
            let mut next = set;
            for i in (0..n).filter(|&i| set & bit(i) != 0) {
                for j in (i + 1..n).filter(|&j| set & bit(j) != 0) {
                    next |= bit(meets[i][j]) | bit(joins[i][j]);
                }
            }
            if next == set {
                return set;
            }
            set = next;
        }
    };
    let full = if n == 64 { u64::MAX } else { bit(n) - 1 };
    let mut closed = vec![0u64];
    let mut current = 0u64;
    // Element i is the most significant; lectic order on subsets.
    while current != full {
        let mut advanced = false;
        for i in (0..n).rev() {
            if current & bit(i) != 0 {
                continue;
            }
            let lower = current & (bit(i) - 1);
            let candidate = closure(lower | bit(i));
            if candidate & (bit(i) - 1) == lower {
                current = candidate;
                closed.push(current);
                advanced = true;
                break;
            }
        }
        if !advanced {
            break;
        }
    }
    let mut out: Vec<SubdirectProduct> = closed
        .into_par_iter()
        .map(|mask| SubdirectProduct::new(dims.to_vec(), (0..n).filter(|&i| mask & bit(i) != 0).map(|i| points[i].clone())))
        .filter(|k| k.is_subdirect())
        .collect();
    out.sort();
    out
}

/// Layers of rank `k` down to 1, each in value order, checked to be in
/// position order too.
fn rank_layers(perm: &Permutation, k: usize) -> Result<Vec<Vec<usize>>> {
    let ranks = rank_decomposition(perm);
    let mut layers = Vec::with_capacity(k);
    for t in (1..=k).rev() {
        let layer = ranks.layer(t);
        if !perm.pattern_at(&layer).is_increasing() {
            return Err(Error::Internal(format!("rank {t} of {perm} is not increasing")));
        }
        layers.push(layer);
    }
    Ok(layers)
}

/// `L_π`: `(i, j)` when the `i`-th rank-2 point precedes and exceeds the
/// `j`-th rank-1 point.
pub fn lattice_of_21(perm: &Permutation) -> Result<SubdirectProduct> {
    if !is_k_rigid(perm, 2)? {
        return Err(Error::NotRigid {
            perm: perm.to_string(),
            k: 2,
        });
    }
    let layers = rank_layers(perm, 2)?;
    let (upper, lower) = (&layers[0], &layers[1]);
    let mut elements = Vec::new();
    for (i, &x) in upper.iter().enumerate() {
        for (j, &y) in lower.iter().enumerate() {
            if x < y && perm.value(x) > perm.value(y) {
                elements.push(vec![i + 1, j + 1]);
            }
        }
    }
    Ok(SubdirectProduct::new(vec![upper.len(), lower.len()], elements))
}

/// Inverse of [`lattice_of_21`]: start from `1..n` and, for `a = 1..m`, add a
/// point just left of `min D(a)` and just above `max D(a)` and all earlier
/// added points.
pub fn pi_of(k: &SubdirectProduct) -> Result<Permutation> {
    if k.dims.len() != 2 || !k.is_subdirect() {
        return Err(Error::NotSubdirect(format!("{k} over {:?}", k.dims)));
    }
    let map = IntervalMap::of(k)?;
    let n = k.dims[1];
    // (position key, value key); keys compare lexicographically.
    let mut points: Vec<((usize, usize, usize), (usize, usize, usize))> = Vec::new();
    for j in 1..=n {
        points.push(((j, 1, 0), (j, 0, 0)));
    }
    for (a, &(lo, hi)) in map.intervals.iter().enumerate() {
        points.push(((lo, 0, a + 1), (hi, 1, a + 1)));
    }
    points.sort_unstable();
    let mut by_value: Vec<usize> = (0..points.len()).collect();
    by_value.sort_unstable_by_key(|&i| points[i].1);
    let mut values = vec![0u32; points.len()];
    for (rank, &i) in by_value.iter().enumerate() {
        values[i] = rank as u32 + 1;
    }
    Permutation::new(values)
}

/// k-rigid members of `I_k` with `counts[0]` points of rank `k`, `counts[1]`
/// of rank `k - 1`, and so on.
pub fn rigid_with_ranks(counts: &[usize]) -> Result<Vec<Permutation>> {
    let k = counts.len();
    let len: usize = counts.iter().sum();
    let config = EnumerationConfig {
        max_length: len.max(EnumerationConfig::default().max_length),
        retain_up_to: len,
    };
    let members = enumerate_class(&ClassSpec::in_ik(k, []), len, &config)?.members.swap_remove(len);
    let mut out: Vec<Permutation> = members
        .into_par_iter()
        .filter(|p| is_k_rigid(p, k).unwrap_or(false))
        .filter(|p| {
            let ranks = rank_decomposition(p);
            (1..=k).all(|t| ranks.layer(t).len() == counts[k - t])
        })
        .collect();
    out.sort();
    Ok(out)
}

/// For a 3-rigid member of `I_3`: the `(i, j, l)` such that the `i`-th rank-3,
/// `j`-th rank-2 and `l`-th rank-1 points form a 321.
pub fn triple_incidence(perm: &Permutation) -> Result<SubdirectProduct> {
    if !is_k_rigid(perm, 3)? {
        return Err(Error::NotRigid {
            perm: perm.to_string(),
            k: 3,
        });
    }
    let layers = rank_layers(perm, 3)?;
    let mut elements = Vec::new();
    for (i, &x) in layers[0].iter().enumerate() {
        for (j, &y) in layers[1].iter().enumerate() {
            for (l, &z) in layers[2].iter().enumerate() {
                if x < y && y < z && perm.value(x) > perm.value(y) && perm.value(y) > perm.value(z) {
                    elements.push(vec![i + 1, j + 1, l + 1]);
                }
            }
        }
    }
    let dims = layers.iter().map(Vec::len).collect();
    Ok(SubdirectProduct::new(dims, elements))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThreeChainReport {
    /// Subdirect products of three 2-element chains.
    pub subdirect_count: usize,
    /// 3-rigid permutations of length 6 with two points of each rank.
    pub rigid_count: usize,
    /// Distinct triple incidences among them.
    pub distinct_incidences: usize,
    pub injective: bool,
}

pub fn three_chain_report() -> Result<ThreeChainReport> {
    let subdirect_count = enumerate_subdirect(&[2, 2, 2]).len();
    let rigid = rigid_with_ranks(&[2, 2, 2])?;
    let incidences: BTreeSet<SubdirectProduct> =
        rigid.iter().map(triple_incidence).collect::<Result<_>>()?;
    Ok(ThreeChainReport {
        subdirect_count,
        rigid_count: rigid.len(),
        distinct_incidences: incidences.len(),
        injective: incidences.len() == rigid.len(),
    })
}

/// `ι_k ⊖ ι_k`.
pub fn skew_identity(k: usize) -> Permutation {
    let values: Vec<u32> = (k as u32 + 1..=2 * k as u32).chain(1..=k as u32).collect();
    Permutation::new(values).expect("skew sum of identities is a permutation")
}

/// Every point lies in a copy of `ι_k ⊖ ι_k`.
pub fn is_k_good(perm: &Permutation, k: usize) -> Result<bool> {
    require_in_class(perm, 2)?;
    let pattern = skew_identity(k);
    Ok((0..perm.len()).all(|x| contains_through(&pattern, perm, x)))
}

/// Number of k-good permutations of length `2k + ℓ`.
pub fn enumerate_k_good(k: usize, l: usize) -> Result<usize> {
    let len = 2 * k + l;
    let config = EnumerationConfig {
        max_length: len.max(EnumerationConfig::default().max_length),
        retain_up_to: len,
    };
    let members = enumerate_class(&ClassSpec::in_ik(2, []), len, &config)?.members.swap_remove(len);
    Ok(members
        .par_iter()
        .filter(|p| is_k_good(p, k).unwrap_or(false))
        .count())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn set(tuples: &[[usize; 2]]) -> BTreeSet<Vec<usize>> {
        tuples.iter().map(|t| t.to_vec()).collect()
    }

    #[test]
    fn lattice_examples() {
        let k = lattice_of_21(&p("2143")).unwrap();
        assert_eq!(k.elements, set(&[[1, 1], [2, 2]]));
        let k = lattice_of_21(&p("456123")).unwrap();
        assert_eq!(k, SubdirectProduct::full(&[3, 3]));
        let k = lattice_of_21(&p("361729458")).unwrap();
        let d3: Vec<usize> = k.elements.iter().filter(|t| t[0] == 3).map(|t| t[1]).collect();
        assert_eq!(d3, vec![2, 3, 4]);
        assert!(lattice_of_21(&p("213")).is_err());
    }

    #[test]
    fn subdirect_checks() {
        assert!(!is_subdirect(&set(&[[1, 2], [2, 1]]), &[2, 2]));
        assert!(is_subdirect(&set(&[[1, 1], [2, 2]]), &[2, 2]));
        assert!(SubdirectProduct::full(&[3, 2]).is_subdirect());
        assert!(!is_subdirect(&set(&[[1, 1]]), &[2, 2]));
    }

    #[test]
    fn subdirect_counts() {
        assert_eq!(enumerate_subdirect(&[2, 2]).len(), 4);
        assert_eq!(enumerate_subdirect(&[2, 2, 2]).len(), 29);
        assert_eq!(enumerate_subdirect(&[1, 5]).len(), 1);
    }

    #[test]
    fn subdirect_matches_all_subsets() {
        for dims in [vec![2, 2], vec![3, 3], vec![2, 2, 2], vec![2, 4]] {
            let points = product_points(&dims);
            let mut naive = Vec::new();
            for mask in 0u32..1 << points.len() {
                let k = SubdirectProduct::new(
                    dims.clone(),
                    (0..points.len()).filter(|&i| mask >> i & 1 == 1).map(|i| points[i].clone()),
                );
                if k.is_subdirect() {
                    naive.push(k);
                }
            }
            naive.sort();
            assert_eq!(enumerate_subdirect(&dims), naive, "{dims:?}");
        }
    }

    #[test]
    fn pi_of_examples() {
        let k = SubdirectProduct::new(vec![2, 2], set(&[[1, 1], [2, 2]]));
        assert_eq!(pi_of(&k).unwrap(), p("2143"));
        assert_eq!(pi_of(&SubdirectProduct::full(&[2, 2])).unwrap(), p("3412"));
        let fig = p("361729458");
        assert_eq!(pi_of(&lattice_of_21(&fig).unwrap()).unwrap(), fig);
        let bad = SubdirectProduct::new(vec![2, 2], set(&[[1, 2], [2, 1]]));
        assert!(pi_of(&bad).is_err());
    }

    #[test]
    fn interval_maps() {
        for k in enumerate_subdirect(&[3, 4]) {
            IntervalMap::of(&k).unwrap();
        }
    }

    #[test]
    fn grid_render() {
        let k = lattice_of_21(&p("2143")).unwrap();
        assert_eq!(k.grid(), "x .\n. x\n");
    }

    #[test]
    fn k_good() {
        assert!(is_k_good(&p("2413"), 1).unwrap());
        assert!(!is_k_good(&p("213"), 1).unwrap());
        assert_eq!(enumerate_k_good(1, 1).unwrap(), 2);
        assert_eq!(enumerate_k_good(2, 0).unwrap(), 1);
        assert_eq!(skew_identity(2), p("3412"));
    }

    #[test]
    fn three_chains() {
        let r = three_chain_report().unwrap();
        assert_eq!((r.subdirect_count, r.rigid_count), (29, 25));
        assert!(!r.injective);
    }
}
