//! Rank decompositions, rigidity, rigid reduction and the lattice of
//! embeddings of a rigid pattern.

use serde::Serialize;

use crate::embedding::{embeddings, Embedding};
use crate::error::{Error, Result};
use crate::perm::{direct_sum_all, max_decreasing_length, plus_decompose, Permutation};

/// Partition of a member of `I_k` into increasing layers `C_1..C_k`.
///
/// Rank 1 holds the points with nothing smaller to their right; in general a
/// point has rank `t` when it heads a decreasing subsequence of length `t` but
/// none of length `t + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankDecomposition {
    k: usize,
    rank_of: Vec<usize>,
}

impl RankDecomposition {
    pub fn k(&self) -> usize {
        self.k
    }

    /// Rank of each position, in `1..=k`.
    pub fn ranks(&self) -> &[usize] {
        &self.rank_of
    }

    pub fn rank(&self, pos: usize) -> usize {
        self.rank_of[pos]
    }

    /// Positions of rank `t`, left to right.
    pub fn layer(&self, t: usize) -> Vec<usize> {
        (0..self.rank_of.len())
            .filter(|&i| self.rank_of[i] == t)
            .collect()
    }
}

/// Right-to-left greedy: each point joins the first layer whose current
/// minimum exceeds it.
pub fn rank_decomposition(perm: &Permutation) -> RankDecomposition {
    let mut layer_min: Vec<u32> = Vec::new();
    let mut rank_of = vec![0; perm.len()];
    for (i, &v) in perm.values().iter().enumerate().rev() {
        // Layer minima increase with the layer index.
        let j = layer_min.partition_point(|&m| m < v);
        if j == layer_min.len() {
            layer_min.push(v);
        } else {
            layer_min[j] = v;
        }
        rank_of[i] = j + 1;
    }
    RankDecomposition {
        k: layer_min.len(),
        rank_of,
    }
}

pub(crate) fn require_in_class(perm: &Permutation, k: usize) -> Result<()> {
    let found = max_decreasing_length(perm);
    if found > k {
        return Err(Error::NotInClass {
            perm: perm.to_string(),
            k,
            found,
        });
    }
    Ok(())
}

/// For each position, the length of the longest decreasing subsequence
/// through it.
fn longest_decreasing_through(perm: &Permutation) -> Vec<usize> {
    let v = perm.values();
    let n = v.len();
    let mut ending = vec![1usize; n];
    for j in 0..n {
        for i in 0..j {
            if v[i] > v[j] {
                ending[j] = ending[j].max(ending[i] + 1);
            }
        }
    }
    let mut starting = vec![1usize; n];
    for i in (0..n).rev() {
        for j in i + 1..n {
            if v[i] > v[j] {
                starting[i] = starting[i].max(starting[j] + 1);
            }
        }
    }
    (0..n).map(|i| ending[i] + starting[i] - 1).collect()
}

/// Whether every point of `perm ∈ I_k` lies in a copy of `δ_k`.
pub fn is_k_rigid(perm: &Permutation, k: usize) -> Result<bool> {
    require_in_class(perm, k)?;
    Ok(longest_decreasing_through(perm).iter().all(|&l| l >= k))
}

/// Positions with no larger point before and no smaller point after.
pub fn articulation_points(perm: &Permutation) -> Vec<usize> {
    let v = perm.values();
    let n = v.len();
    let mut suffix_min = vec![u32::MAX; n + 1];
    for i in (0..n).rev() {
        suffix_min[i] = suffix_min[i + 1].min(v[i]);
    }
    let mut prefix_max = 0;
    let mut out = Vec::new();
    for i in 0..n {
        if prefix_max < v[i] && v[i] < suffix_min[i + 1] {
            out.push(i);
        }
        prefix_max = prefix_max.max(v[i]);
    }
    out
}

/// `red(π)`: the direct sum of the non-trivial plus components of `π ∈ I_2`.
/// Only defined on `I_2`.
pub fn rigid_reduction(perm: &Permutation) -> Result<Permutation> {
    require_in_class(perm, 2)?;
    Ok(direct_sum_all(plus_decompose(perm).components.iter()))
}

fn check_embedding(e: &Embedding, pattern: &Permutation, host: &Permutation, name: &str) -> Result<()> {
    if e.is_valid(pattern, host) {
        Ok(())
    } else {
        Err(Error::InvalidEmbedding(format!(
            "{name} = {e} is not an embedding of {pattern} in {host}"
        )))
    }
}

fn pointwise(
    f: &Embedding,
    g: &Embedding,
    pattern: &Permutation,
    host: &Permutation,
    take_lower: bool,
) -> Result<Embedding> {
    check_embedding(f, pattern, host, "f")?;
    check_embedding(g, pattern, host, "g")?;
    let mut image = Vec::with_capacity(f.len());
    for (point, (&a, &b)) in f.image().iter().zip(g.image()).enumerate() {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        if host.value(lo) > host.value(hi) {
            return Err(Error::Incomparable { point });
        }
        image.push(if take_lower { lo } else { hi });
    }
    let out = Embedding::new(image);
    if !out.is_valid(pattern, host) {
        return Err(Error::Internal(format!(
            "pointwise {} of {f} and {g} is not an embedding of {pattern} in {host}",
            if take_lower { "infimum" } else { "supremum" }
        )));
    }
    Ok(out)
}

/// Pointwise infimum (earlier and lower image) of two embeddings whose images
/// of each pattern point coincide or form a 12.
pub fn embedding_inf(
    f: &Embedding,
    g: &Embedding,
    pattern: &Permutation,
    host: &Permutation,
) -> Result<Embedding> {
    pointwise(f, g, pattern, host, true)
}

/// Pointwise supremum; see [`embedding_inf`].
pub fn embedding_sup(
    f: &Embedding,
    g: &Embedding,
    pattern: &Permutation,
    host: &Permutation,
) -> Result<Embedding> {
    pointwise(f, g, pattern, host, false)
}

/// The embedding of a `k`-rigid `pattern` into `host ∈ I_k` minimising every
/// image point by position and value at once, where `k` is the pattern's
/// longest decreasing length. `None` when the pattern does not occur.
pub fn leftmost_bottommost(pattern: &Permutation, host: &Permutation) -> Result<Option<Embedding>> {
    let k = max_decreasing_length(pattern);
    if !is_k_rigid(pattern, k)? {
        return Err(Error::NotRigid {
            perm: pattern.to_string(),
            k,
        });
    }
    require_in_class(host, k)?;
    let mut all = embeddings(pattern, host).into_iter();
    let Some(first) = all.next() else {
        return Ok(None);
    };
    all.try_fold(first, |acc, e| embedding_inf(&acc, &e, pattern, host))
        .map(Some)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn ranks() {
        assert_eq!(rank_decomposition(&p("2413")).ranks(), &[2, 2, 1, 1]);
        assert_eq!(rank_decomposition(&p("12345")).ranks(), &[1; 5]);
        let d = rank_decomposition(&p("4321"));
        assert_eq!(d.ranks(), &[4, 3, 2, 1]);
        assert_eq!(d.k(), 4);
        assert_eq!(rank_decomposition(&p("361729458")).layer(2), vec![0, 1, 3, 5]);
    }

    #[test]
    fn rigidity() {
        assert!(is_k_rigid(&p("2413"), 2).unwrap());
        assert!(!is_k_rigid(&p("213"), 2).unwrap());
        assert!(is_k_rigid(&p("123"), 1).unwrap());
        assert!(matches!(
            is_k_rigid(&p("321"), 2),
            Err(Error::NotInClass { found: 3, .. })
        ));
    }

    #[test]
    fn reduction() {
        assert_eq!(rigid_reduction(&p("241357689")).unwrap(), p("241365"));
        assert!(rigid_reduction(&p("12345")).unwrap().is_empty());
        assert_eq!(rigid_reduction(&p("2143")).unwrap(), p("2143"));
        assert!(rigid_reduction(&p("321")).is_err());
    }

    #[test]
    fn articulation() {
        assert_eq!(articulation_points(&p("2134657")), vec![2, 3, 6]);
        assert!(articulation_points(&p("21")).is_empty());
        assert_eq!(articulation_points(&p("123")), vec![0, 1, 2]);
    }

    #[test]
    fn inf_and_sup() {
        let (rho, pi) = (p("21"), p("2413"));
        let a = Embedding::new(vec![0, 2]);
        let b = Embedding::new(vec![1, 3]);
        let c = Embedding::new(vec![1, 2]);
        assert_eq!(embedding_inf(&a, &b, &rho, &pi).unwrap(), a);
        assert_eq!(embedding_sup(&a, &b, &rho, &pi).unwrap(), b);
        assert_eq!(embedding_inf(&b, &b, &rho, &pi).unwrap(), b);
        assert_eq!(embedding_inf(&c, &a, &rho, &pi).unwrap(), a);
    }

    #[test]
    fn inf_rejects_incomparable_images() {
        // 1 in 21: the two images (value 2 and value 1) form a 21.
        let (rho, pi) = (p("1"), p("21"));
        let err = embedding_inf(&Embedding::new(vec![0]), &Embedding::new(vec![1]), &rho, &pi);
        assert_eq!(err, Err(Error::Incomparable { point: 0 }));
        let bogus = Embedding::new(vec![0, 1]);
        assert!(matches!(
            embedding_inf(&bogus, &bogus, &p("21"), &p("12")),
            Err(Error::InvalidEmbedding(_))
        ));
    }

    #[test]
    fn leftmost_bottommost_examples() {
        let e = leftmost_bottommost(&p("21"), &p("2413")).unwrap().unwrap();
        assert_eq!(e.image(), &[0, 2]);
        let e = leftmost_bottommost(&p("2413"), &p("2413")).unwrap().unwrap();
        assert_eq!(e, Embedding::identity(4));
        let e = leftmost_bottommost(&p("21"), &p("361729458")).unwrap().unwrap();
        assert_eq!(e.image(), &[0, 2]);
        assert_eq!(leftmost_bottommost(&p("21"), &p("123")).unwrap(), None);
        assert!(leftmost_bottommost(&p("213"), &p("2413")).is_err());
        assert!(leftmost_bottommost(&p("21"), &p("321")).is_err());
    }
}
