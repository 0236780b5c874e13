//! Permutations in one-line notation and the elementary constructions on them.
//!
//! A permutation of length `n` is stored as its one-line sequence of values
//! `1..=n`. Positions are 0-based throughout the crate; values are 1-based, so
//! the point at position `i` is `(i, values[i])`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Permutation(Vec<u32>);

impl Permutation {
    /// Validates that `values` is a rearrangement of `1..=n`.
    pub fn new(values: Vec<u32>) -> Result<Self> {
        let n = values.len();
        let mut seen = vec![false; n + 1];
        for &v in &values {
            let v = v as usize;
            if v == 0 || v > n {
                continue;
            }
            if seen[v] {
                return Err(Error::Parse {
                    input: join_values(&values),
                    reason: format!("value {v} repeated"),
                });
            }
            seen[v] = true;
        }
        if let Some(missing) = (1..=n).find(|&v| !seen[v]) {
            return Err(Error::Parse {
                input: join_values(&values),
                reason: format!("value {missing} missing"),
            });
        }
        Ok(Permutation(values))
    }

    pub(crate) fn from_vec_unchecked(values: Vec<u32>) -> Self {
        debug_assert!(Permutation::new(values.clone()).is_ok());
        Permutation(values)
    }

    pub fn empty() -> Self {
        Permutation(Vec::new())
    }

    /// The increasing permutation `12…n`.
    pub fn identity(n: usize) -> Self {
        Permutation((1..=n as u32).collect())
    }

    /// The decreasing permutation `n…21`.
    pub fn decreasing(n: usize) -> Self {
        Permutation((1..=n as u32).rev().collect())
    }

    /// The pattern (order-isomorphic standardisation) of a sequence of
    /// distinct values.
    pub fn pattern_of(values: &[u32]) -> Self {
        let mut order: Vec<usize> = (0..values.len()).collect();
        order.sort_unstable_by_key(|&i| values[i]);
        let mut out = vec![0u32; values.len()];
        for (rank, &i) in order.iter().enumerate() {
            out[i] = rank as u32 + 1;
        }
        Permutation(out)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[u32] {
        &self.0
    }

    /// Value at a 0-based position.
    pub fn value(&self, pos: usize) -> u32 {
        self.0[pos]
    }

    /// `inverse()[v - 1]` is the position of value `v`.
    pub fn positions_by_value(&self) -> Vec<usize> {
        let mut pos = vec![0; self.len()];
        for (i, &v) in self.0.iter().enumerate() {
            pos[v as usize - 1] = i;
        }
        pos
    }

    pub fn inverse(&self) -> Self {
        Permutation(
            self.positions_by_value()
                .into_iter()
                .map(|p| p as u32 + 1)
                .collect(),
        )
    }

    /// Pattern formed by the points at the given positions (in the order given,
    /// which should be increasing).
    pub fn pattern_at(&self, positions: &[usize]) -> Self {
        let vals: Vec<u32> = positions.iter().map(|&p| self.0[p]).collect();
        Permutation::pattern_of(&vals)
    }

    /// Deletes the point at `pos` and standardises.
    pub fn remove_point(&self, pos: usize) -> Self {
        let removed = self.0[pos];
        Permutation(
            self.0
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != pos)
                .map(|(_, &v)| if v > removed { v - 1 } else { v })
                .collect(),
        )
    }

    /// Inserts a new maximum `n + 1` before position `gap` (`gap == n` appends).
    pub fn insert_max(&self, gap: usize) -> Self {
        let mut v = Vec::with_capacity(self.len() + 1);
        v.extend_from_slice(&self.0[..gap]);
        v.push(self.len() as u32 + 1);
        v.extend_from_slice(&self.0[gap..]);
        Permutation(v)
    }

    pub fn is_increasing(&self) -> bool {
        self.0.windows(2).all(|w| w[0] < w[1])
    }
}

fn join_values(values: &[u32]) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("ε");
        }
        if self.0.len() <= 9 {
            for v in &self.0 {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            f.write_str(&join_values(&self.0))
        }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨{self}⟩")
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Accepts compact digits (`2413`, length ≤ 9), whitespace- or
    /// comma-separated integers (`10 1 2 3`), or `ε` / an empty string for the
    /// empty permutation.
    fn from_str(s: &str) -> Result<Self> {
        let text = s.trim();
        let bad = |reason: String| Error::Parse {
            input: s.to_string(),
            reason,
        };
        if text.is_empty() || text == "ε" {
            return Ok(Permutation::empty());
        }
        let separated = text.contains(|c: char| c.is_whitespace() || c == ',');
        let values: Vec<u32> = if separated {
            text.split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<u32>()
                        .map_err(|_| bad(format!("`{t}` is not a positive integer")))
                })
                .collect::<Result<_>>()?
        } else {
            if text.len() > 9 {
                return Err(bad(
                    "compact form is limited to 9 digits; separate values with spaces".into(),
                ));
            }
            text.chars()
                .map(|c| match c.to_digit(10) {
                    Some(d) if d > 0 => Ok(d),
                    _ => Err(bad(format!("unexpected character `{c}`"))),
                })
                .collect::<Result<_>>()?
        };
        Permutation::new(values).map_err(|e| match e {
            Error::Parse { reason, .. } => bad(reason),
            other => other,
        })
    }
}

impl TryFrom<Vec<u32>> for Permutation {
    type Error = Error;

    fn try_from(values: Vec<u32>) -> Result<Self> {
        Permutation::new(values)
    }
}

impl From<Permutation> for Vec<u32> {
    fn from(p: Permutation) -> Self {
        p.0
    }
}

/// Length of the longest decreasing subsequence; `π ∈ I_k` iff this is `≤ k`.
pub fn max_decreasing_length(perm: &Permutation) -> usize {
    // Patience sorting on the reversed order: tails[l] is the largest possible
    // last value of a decreasing run of length l + 1.
    let mut tails: Vec<u32> = Vec::new();
    for &v in perm.values() {
        let idx = tails.partition_point(|&t| t > v);
        if idx == tails.len() {
            tails.push(v);
        } else {
            tails[idx] = v;
        }
    }
    tails.len()
}

/// `α ⊕ β`: `α` on the first `|α|` positions and values, `β` shifted above and
/// to the right.
pub fn direct_sum(alpha: &Permutation, beta: &Permutation) -> Permutation {
    let shift = alpha.len() as u32;
    let mut v = alpha.0.clone();
    v.extend(beta.0.iter().map(|&x| x + shift));
    Permutation(v)
}

/// Direct sum of a sequence of permutations.
pub fn direct_sum_all<'a, I>(parts: I) -> Permutation
where
    I: IntoIterator<Item = &'a Permutation>,
{
    parts
        .into_iter()
        .fold(Permutation::empty(), |acc, p| direct_sum(&acc, p))
}

/// Reverse-complement: the graph turned through 180°.
pub fn rotate180(perm: &Permutation) -> Permutation {
    let n = perm.len() as u32;
    Permutation(perm.0.iter().rev().map(|&v| n + 1 - v).collect())
}

/// Splits a permutation into its maximal plus-indecomposable summands.
pub fn sum_components(perm: &Permutation) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut start = 0;
    let mut max = 0u32;
    for (i, &v) in perm.values().iter().enumerate() {
        max = max.max(v);
        if max as usize == i + 1 {
            out.push(Permutation::pattern_of(&perm.values()[start..=i]));
            start = i + 1;
        }
    }
    out
}

/// `π = 1^{m_0} ⊕ ρ_1 ⊕ 1^{m_1} ⊕ … ⊕ ρ_c ⊕ 1^{m_c}` with every `ρ_i`
/// plus-indecomposable of length at least 2.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlusDecomposition {
    pub prefix_runs: Vec<usize>,
    pub components: Vec<Permutation>,
}

impl PlusDecomposition {
    pub fn reassemble(&self) -> Permutation {
        let mut parts = Vec::new();
        for (i, &m) in self.prefix_runs.iter().enumerate() {
            parts.push(Permutation::identity(m));
            if let Some(rho) = self.components.get(i) {
                parts.push(rho.clone());
            }
        }
        direct_sum_all(parts.iter())
    }
}

impl fmt::Display for PlusDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, &m) in self.prefix_runs.iter().enumerate() {
            terms.extend(std::iter::repeat_n("1".to_string(), m));
            if let Some(rho) = self.components.get(i) {
                terms.push(rho.to_string());
            }
        }
        if terms.is_empty() {
            terms.push("ε".into());
        }
        let runs: Vec<String> = self.prefix_runs.iter().map(|m| m.to_string()).collect();
        write!(f, "{} with m=({})", terms.join(" ⊕ "), runs.join(","))
    }
}

pub fn plus_decompose(perm: &Permutation) -> PlusDecomposition {
    let mut prefix_runs = vec![0];
    let mut components = Vec::new();
    for block in sum_components(perm) {
        if block.len() == 1 {
            *prefix_runs.last_mut().unwrap() += 1;
        } else {
            components.push(block);
            prefix_runs.push(0);
        }
    }
    PlusDecomposition {
        prefix_runs,
        components,
    }
}
