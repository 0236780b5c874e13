//! Embeddings (occurrences) of a pattern in a host permutation.
//!
//! The search fixes pattern points left to right. For each pattern index `j`
//! only the nearest earlier pattern values just below and just above `p[j]`
//! are compared, which is enough because the earlier points already agree
//! with the pattern among themselves.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::perm::Permutation;

/// Image of a pattern in a host, as strictly increasing 0-based host
/// positions, one per pattern position.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Embedding {
    image: Vec<usize>,
}

impl Embedding {
    pub fn new(image: Vec<usize>) -> Self {
        Embedding { image }
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    pub fn identity(n: usize) -> Self {
        Embedding {
            image: (0..n).collect(),
        }
    }

    /// Checks both order conditions against `pattern` and `host`.
    pub fn is_valid(&self, pattern: &Permutation, host: &Permutation) -> bool {
        if self.image.len() != pattern.len() || self.image.iter().any(|&p| p >= host.len()) {
            return false;
        }
        if self.image.windows(2).any(|w| w[0] >= w[1]) {
            return false;
        }
        host.pattern_at(&self.image) == *pattern
    }

    /// Composite of `self: α → β` with `outer: β → γ`.
    pub fn compose(&self, outer: &Embedding) -> Embedding {
        Embedding {
            image: self.image.iter().map(|&i| outer.image[i]).collect(),
        }
    }
}

impl fmt::Display for Embedding {
    /// 1-based positions, e.g. `(1,3)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.image.iter().map(|p| (p + 1).to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

struct Matcher<'a> {
    pattern: &'a [u32],
    host: &'a [u32],
    /// Earlier pattern index holding the largest value below `pattern[j]`.
    below: Vec<Option<usize>>,
    /// Earlier pattern index holding the smallest value above `pattern[j]`.
    above: Vec<Option<usize>>,
    /// Pattern index pinned to a host position, if any.
    pinned: Option<(usize, usize)>,
    image: Vec<usize>,
}

impl<'a> Matcher<'a> {
    fn new(pattern: &'a Permutation, host: &'a Permutation, pinned: Option<(usize, usize)>) -> Self {
        let pv = pattern.values();
        let k = pv.len();
        let mut below = vec![None; k];
        let mut above = vec![None; k];
        for j in 0..k {
            for i in 0..j {
                if pv[i] < pv[j] {
                    if below[j].is_none_or(|b: usize| pv[b] < pv[i]) {
                        below[j] = Some(i);
                    }
                } else if above[j].is_none_or(|a: usize| pv[a] > pv[i]) {
                    above[j] = Some(i);
                }
            }
        }
        Matcher {
            pattern: pv,
            host: host.values(),
            below,
            above,
            pinned,
            image: Vec::with_capacity(k),
        }
    }

    fn fits(&self, j: usize, pos: usize) -> bool {
        let v = self.host[pos];
        if let Some(b) = self.below[j] {
            if self.host[self.image[b]] > v {
                return false;
            }
        }
        if let Some(a) = self.above[j] {
            if self.host[self.image[a]] < v {
                return false;
            }
        }
        true
    }

    /// Visits embeddings in lexicographic order of image; the visitor returns
    /// `false` to stop. Returns `false` if stopped early.
    fn run<F: FnMut(&[usize]) -> bool>(&mut self, visit: &mut F) -> bool {
        self.step(0, 0, visit)
    }

    fn step<F: FnMut(&[usize]) -> bool>(&mut self, j: usize, start: usize, visit: &mut F) -> bool {
        let k = self.pattern.len();
        if j == k {
            return visit(&self.image);
        }
        let n = self.host.len();
        let (lo, hi) = match self.pinned {
            Some((pj, q)) if j < pj => (start, q.min(n)),
            Some((pj, q)) if j == pj => {
                if q < start || q >= n {
                    return true;
                }
                (q, q + 1)
            }
            Some((_, q)) => (start.max(q + 1), n),
            None => (start, n),
        };
        // Leave room for the remaining k - j - 1 points.
        let hi = hi.min(n.saturating_sub(k - j - 1));
        for pos in lo..hi {
            if self.fits(j, pos) {
                self.image.push(pos);
                let go_on = self.step(j + 1, pos + 1, visit);
                self.image.pop();
                if !go_on {
                    return false;
                }
            }
        }
        true
    }
}

/// All embeddings of `pattern` in `host`, lexicographic by image. The empty
/// pattern has exactly one (empty) embedding.
pub fn embeddings(pattern: &Permutation, host: &Permutation) -> Vec<Embedding> {
    let mut out = Vec::new();
    Matcher::new(pattern, host, None).run(&mut |img: &[usize]| {
        out.push(Embedding::new(img.to_vec()));
        true
    });
    out
}

/// Lexicographically first embedding, if any.
pub fn first_embedding(pattern: &Permutation, host: &Permutation) -> Option<Embedding> {
    let mut found = None;
    Matcher::new(pattern, host, None).run(&mut |img: &[usize]| {
        found = Some(Embedding::new(img.to_vec()));
        false
    });
    found
}

/// Whether `host` involves `pattern`. Stops at the first occurrence.
pub fn contains(pattern: &Permutation, host: &Permutation) -> bool {
    if pattern.len() > host.len() {
        return false;
    }
    !Matcher::new(pattern, host, None).run(&mut |_: &[usize]| false)
}

/// Whether some embedding sends pattern position `pattern_pos` to host
/// position `host_pos`.
pub fn contains_pinned(
    pattern: &Permutation,
    host: &Permutation,
    pattern_pos: usize,
    host_pos: usize,
) -> bool {
    if pattern.len() > host.len() || pattern_pos >= pattern.len() {
        return false;
    }
    !Matcher::new(pattern, host, Some((pattern_pos, host_pos))).run(&mut |_: &[usize]| false)
}

/// Whether some occurrence of `pattern` uses the host point at `host_pos`.
pub fn contains_through(pattern: &Permutation, host: &Permutation, host_pos: usize) -> bool {
    (0..pattern.len()).any(|j| contains_pinned(pattern, host, j, host_pos))
}

/// Whether `host` avoids every permutation in `basis`.
pub fn avoids_all(host: &Permutation, basis: &[Permutation]) -> bool {
    basis.iter().all(|b| !contains(b, host))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn images(pattern: &str, host: &str) -> Vec<Vec<usize>> {
        embeddings(&p(pattern), &p(host))
            .into_iter()
            .map(|e| e.image().iter().map(|i| i + 1).collect())
            .collect()
    }

    #[test]
    fn embeddings_of_21_in_2413() {
        assert_eq!(images("21", "2413"), vec![vec![1, 3], vec![2, 3], vec![2, 4]]);
    }

    #[test]
    fn trivial_embeddings() {
        assert_eq!(images("1", "1"), vec![vec![1]]);
        assert!(images("321", "2413").is_empty());
        assert_eq!(embeddings(&Permutation::empty(), &p("312")).len(), 1);
        assert_eq!(embeddings(&Permutation::empty(), &Permutation::empty()).len(), 1);
    }

    #[test]
    fn containment_examples() {
        assert!(!contains(&p("321"), &p("123789456")));
        assert!(contains(&Permutation::empty(), &p("231")));
        assert!(contains(&p("2143"), &p("2134657")));
        assert_eq!(
            first_embedding(&p("2143"), &p("2134657")).unwrap().to_string(),
            "(1,2,5,6)"
        );
        assert!(!contains(&p("12"), &p("1")));
    }

    #[test]
    fn pinned_search_respects_the_pin() {
        // 21 in 2413 through position 4 (value 3): only (2,4).
        assert!(contains_through(&p("21"), &p("2413"), 3));
        // 213 has no 21 through its last point.
        assert!(!contains_through(&p("21"), &p("213"), 2));
        assert!(contains_pinned(&p("21"), &p("2413"), 0, 1));
        assert!(!contains_pinned(&p("21"), &p("2413"), 1, 1));
    }

    #[test]
    fn validity_and_composition() {
        let e = Embedding::new(vec![0, 2]);
        assert!(e.is_valid(&p("21"), &p("2413")));
        assert!(!Embedding::new(vec![0, 1]).is_valid(&p("21"), &p("2413")));
        let outer = Embedding::new(vec![0, 1, 2, 3]);
        assert_eq!(e.compose(&outer), e);
    }
}
