//! Two-colourings of a permutation and their type changes.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::embedding::avoids_all;
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Which part of a merge a point belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Side {
    /// The `λ` part, written `L`.
    Lambda,
    /// The `β` part, written `B`.
    Beta,
}

impl Side {
    pub fn symbol(self) -> char {
        match self {
            Side::Lambda => 'L',
            Side::Beta => 'B',
        }
    }
}

pub fn parse_coloring(text: &str) -> Result<Vec<Side>> {
    text.trim()
        .chars()
        .map(|c| match c {
            'L' | 'l' => Ok(Side::Lambda),
            'B' | 'b' => Ok(Side::Beta),
            other => Err(Error::InvalidArgument(format!(
                "colouring symbol `{other}` is neither L nor B"
            ))),
        })
        .collect()
}

/// A 2-colouring of a permutation together with its type-change counts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MergeWitness {
    pub coloring: Vec<Side>,
    pub changes_by_position: usize,
    pub changes_by_value: usize,
}

impl MergeWitness {
    pub fn total(&self) -> usize {
        self.changes_by_position + self.changes_by_value
    }

    pub fn coloring_string(&self) -> String {
        self.coloring.iter().map(|s| s.symbol()).collect()
    }

    /// Positions on the given side, ascending.
    pub fn part(&self, side: Side) -> Vec<usize> {
        (0..self.coloring.len())
            .filter(|&i| self.coloring[i] == side)
            .collect()
    }

    /// Line-oriented text form used by the CLI and golden files.
    pub fn to_text(&self, perm: &Permutation) -> String {
        format!(
            "perm {perm}\ncoloring {}\nchanges_by_position {}\nchanges_by_value {}\ntotal {}\n",
            self.coloring_string(),
            self.changes_by_position,
            self.changes_by_value,
            self.total()
        )
    }

    /// Parses [`MergeWitness::to_text`] output and re-checks the stored counts.
    pub fn from_text(text: &str) -> Result<(Permutation, MergeWitness)> {
        let mut fields = std::collections::HashMap::new();
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
            let (key, value) = line.split_once(' ').unwrap_or((line, ""));
            fields.insert(key, value.trim());
        }
        let get = |k: &str| {
            fields
                .get(k)
                .copied()
                .ok_or_else(|| Error::InvalidArgument(format!("witness is missing `{k}`")))
        };
        let number = |k: &str| -> Result<usize> {
            get(k)?
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("`{k}` is not a number")))
        };
        let perm: Permutation = get("perm")?.parse()?;
        let coloring = parse_coloring(get("coloring")?)?;
        let witness = count_type_changes(&perm, &coloring)?;
        let stored = (
            number("changes_by_position")?,
            number("changes_by_value")?,
            number("total")?,
        );
        if stored != (witness.changes_by_position, witness.changes_by_value, witness.total()) {
            return Err(Error::InvalidArgument(format!(
                "stored change counts {stored:?} disagree with the colouring"
            )));
        }
        Ok((perm, witness))
    }
}

impl fmt::Display for MergeWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} ({} by position, {} by value, {} total)",
            self.coloring_string(),
            self.changes_by_position,
            self.changes_by_value,
            self.total()
        )
    }
}

/// Counts adjacent position pairs and adjacent value pairs whose sides differ.
pub fn count_type_changes(perm: &Permutation, coloring: &[Side]) -> Result<MergeWitness> {
    if coloring.len() != perm.len() {
        return Err(Error::InvalidArgument(format!(
            "colouring has length {} but {perm} has length {}",
            coloring.len(),
            perm.len()
        )));
    }
    let by_position = coloring.windows(2).filter(|w| w[0] != w[1]).count();
    let by_value = perm
        .positions_by_value()
        .windows(2)
        .filter(|w| coloring[w[0]] != coloring[w[1]])
        .count();
    Ok(MergeWitness {
        coloring: coloring.to_vec(),
        changes_by_position: by_position,
        changes_by_value: by_value,
    })
}

const MAX_SEARCH_LENGTH: usize = 22;

/// Brute-force search over all 2-colourings for one whose `λ` part avoids
/// `basis_a`, whose `β` part avoids `basis_b`, and whose total type changes
/// are at most `bound`. Returns a witness of minimum total; among those the
/// lexicographically least colouring (`L < B`, first position most
/// significant).
pub fn min_type_change_merge(
    perm: &Permutation,
    basis_a: &[Permutation],
    basis_b: &[Permutation],
    bound: usize,
) -> Result<Option<MergeWitness>> {
    let n = perm.len();
    if n > MAX_SEARCH_LENGTH {
        return Err(Error::InvalidArgument(format!(
            "merge search is exhaustive and limited to length {MAX_SEARCH_LENGTH}, got {n}"
        )));
    }
    let by_value = perm.positions_by_value();
    // Bit (n - 1 - i) set means position i is on the β side, so numeric order
    // on masks is lexicographic order on colouring strings.
    let bit = |pos: usize| 1u32 << (n - 1 - pos);
    let changes = |mask: u32| -> (usize, usize) {
        let side = |pos: usize| mask & bit(pos) != 0;
        let by_pos = (1..n).filter(|&i| side(i) != side(i - 1)).count();
        let by_val = (1..n)
            .filter(|&r| side(by_value[r]) != side(by_value[r - 1]))
            .count();
        (by_pos, by_val)
    };
    let mut candidates: Vec<(usize, u32)> = (0..1u32 << n)
        .into_par_iter()
        .filter_map(|mask| {
            let (a, b) = changes(mask);
            (a + b <= bound).then_some((a + b, mask))
        })
        .collect();
    candidates.par_sort_unstable();

    let part = |mask: u32, beta: bool| -> Permutation {
        let vals: Vec<u32> = (0..n)
            .filter(|&i| (mask & bit(i) != 0) == beta)
            .map(|i| perm.value(i))
            .collect();
        Permutation::pattern_of(&vals)
    };
    let found = candidates.iter().find(|&&(_, mask)| {
        avoids_all(&part(mask, false), basis_a) && avoids_all(&part(mask, true), basis_b)
    });
    Ok(found.map(|&(_, mask)| {
        let (a, b) = changes(mask);
        MergeWitness {
            coloring: (0..n)
                .map(|i| if mask & bit(i) != 0 { Side::Beta } else { Side::Lambda })
                .collect(),
            changes_by_position: a,
            changes_by_value: b,
        }
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn counts_on_the_worked_example() {
        let coloring = parse_coloring("LLLLLLBBB").unwrap();
        let w = count_type_changes(&p("123789456"), &coloring).unwrap();
        assert_eq!((w.changes_by_position, w.changes_by_value, w.total()), (1, 2, 3));
    }

    #[test]
    fn monochromatic_has_no_changes() {
        let w = count_type_changes(&p("2413"), &[Side::Beta; 4]).unwrap();
        assert_eq!(w.total(), 0);
    }

    #[test]
    fn counts_on_2143() {
        let coloring = parse_coloring("LLBB").unwrap();
        let w = count_type_changes(&p("2143"), &coloring).unwrap();
        assert_eq!((w.changes_by_position, w.changes_by_value), (1, 1));
        assert!(count_type_changes(&p("2143"), &coloring[..3]).is_err());
    }

    #[test]
    fn search_finds_the_three_change_merge_and_nothing_cheaper() {
        let inc = vec![p("21")];
        let w = min_type_change_merge(&p("123789456"), &inc, &inc, 3)
            .unwrap()
            .unwrap();
        assert_eq!(w.total(), 3);
        assert_eq!(w.coloring_string(), "LLLLLLBBB");
        assert_eq!(min_type_change_merge(&p("123789456"), &inc, &inc, 2).unwrap(), None);
    }

    #[test]
    fn search_prefers_all_lambda_for_increasing() {
        let inc = vec![p("21")];
        let w = min_type_change_merge(&Permutation::identity(6), &inc, &inc, 0)
            .unwrap()
            .unwrap();
        assert_eq!(w.coloring_string(), "LLLLLL");
    }

    #[test]
    fn text_form_round_trips_and_rejects_tampering() {
        let perm = p("123789456");
        let w = count_type_changes(&perm, &parse_coloring("LLLLLLBBB").unwrap()).unwrap();
        let text = w.to_text(&perm);
        assert_eq!(
            text,
            "perm 123789456\ncoloring LLLLLLBBB\nchanges_by_position 1\nchanges_by_value 2\ntotal 3\n"
        );
        assert_eq!(MergeWitness::from_text(&text).unwrap(), (perm, w));
        assert!(MergeWitness::from_text(&text.replace("total 3", "total 4")).is_err());
    }
}
