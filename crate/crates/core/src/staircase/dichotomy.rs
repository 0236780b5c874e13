//! Either a `(k, b)`-generic staircase inside `π`, or a bounded merge.
//!
//! Works on the λ staircase of the intertwined pair. With fewer than `k`
//! λ blocks the pair itself is the merge (λ blocks on one side, μ blocks on
//! the other). Otherwise the first `k` λ blocks are labelled: points of
//! `λ_1` carry their own values, a point of an even block carries the
//! largest label among points of the previous block below it, and a point
//! of an odd block the largest label among points of the previous block to
//! its left. If at least `b` labels survive to `λ_k`, the first point
//! carrying each of the `b` least surviving labels in every block is a
//! candidate staircase. Otherwise `λ_1` together with every point whose
//! label does not survive forms the `λ` side of a merge, the rest the `β`
//! side.

use serde::Serialize;

use super::intertwined::intertwined_decomposition;
use super::merge::{count_type_changes, MergeWitness, Side};
use super::{generic_staircase, StaircaseWitness};
use crate::embedding::{first_embedding, Embedding};
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::rigidity::require_in_class;

/// How a staircase witness was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Route {
    /// Read off the labelled λ staircase.
    Labelling,
    /// The labelled points did not realise the generic staircase; found by
    /// direct search instead.
    Search,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Dichotomy {
    Staircase { witness: StaircaseWitness, route: Route },
    Merge(MergeWitness),
}

/// `⌈(k + 2)(b + 1) / 2⌉`.
pub fn merge_bound(k: usize, b: usize) -> usize {
    ((k + 2) * (b + 1)).div_ceil(2)
}

fn labels(perm: &Permutation, blocks: &[Vec<usize>]) -> Vec<Vec<Option<u32>>> {
    let mut out: Vec<Vec<Option<u32>>> = Vec::with_capacity(blocks.len());
    for (i, block) in blocks.iter().enumerate() {
        let labelled: Vec<Option<u32>> = if i == 0 {
            block.iter().map(|&x| Some(perm.value(x))).collect()
        } else {
            let prev = &blocks[i - 1];
            let prev_labels = &out[i - 1];
            let even = (i + 1) % 2 == 0;
            block
                .iter()
                .map(|&x| {
                    prev.iter()
                        .zip(prev_labels)
                        .filter(|&(&y, _)| {
                            if even {
                                perm.value(y) < perm.value(x)
                            } else {
                                y < x
                            }
                        })
                        .filter_map(|(_, &l)| l)
                        .max()
                })
                .collect()
        };
        out.push(labelled);
    }
    out
}

/// Takes, for each chosen label and each of the first `k` blocks, the first
/// point carrying it.
fn extract(
    blocks: &[Vec<usize>],
    block_labels: &[Vec<Option<u32>>],
    chosen: &[u32],
    k: usize,
) -> Option<Vec<usize>> {
    let mut image = Vec::with_capacity(k * chosen.len());
    for (block, labs) in blocks.iter().zip(block_labels).take(k) {
        for &label in chosen {
            let pos = block
                .iter()
                .zip(labs)
                .find(|&(_, &l)| l == Some(label))
                .map(|(&p, _)| p)?;
            image.push(pos);
        }
    }
    image.sort_unstable();
    Some(image)
}

pub fn staircase_or_merge(perm: &Permutation, k: usize, b: usize) -> Result<Dichotomy> {
    require_in_class(perm, 2)?;
    if k == 0 || b == 0 {
        return Err(Error::InvalidArgument("k and b must be positive".into()));
    }
    let generic = generic_staircase(k, b);
    let search = || {
        first_embedding(&generic, perm).map(|embedding| Dichotomy::Staircase {
            witness: StaircaseWitness { k, b, embedding },
            route: Route::Search,
        })
    };

    let split = intertwined_decomposition(perm)?;
    let short = split.lambda_len() < k;
    let blocks: Vec<Vec<usize>> = split.lambda.iter().take(k).cloned().collect();
    let block_labels = labels(perm, &blocks);

    let mut surviving: Vec<u32> = if short {
        Vec::new()
    } else {
        block_labels[k - 1].iter().filter_map(|&l| l).collect()
    };
    surviving.sort_unstable();
    surviving.dedup();

    if surviving.len() >= b {
        let chosen = &surviving[..b];
        if let Some(image) = extract(&blocks, &block_labels, chosen, k) {
            let embedding = Embedding::new(image);
            if embedding.is_valid(&generic, perm) {
                return Ok(Dichotomy::Staircase {
                    witness: StaircaseWitness { k, b, embedding },
                    route: Route::Labelling,
                });
            }
        }
    }
    // Whenever the generic staircase occurs it is reported, so the merge
    // branch below only ever runs on permutations avoiding it.
    if let Some(found) = search() {
        return Ok(found);
    }

    let mut coloring = vec![Side::Beta; perm.len()];
    if short {
        // Fewer than k λ blocks: the two staircases themselves are the merge.
        for &x in split.lambda.iter().flatten() {
            coloring[x] = Side::Lambda;
        }
    } else {
        for &x in &blocks[0] {
            coloring[x] = Side::Lambda;
        }
        for (block, labs) in blocks.iter().zip(&block_labels).skip(1) {
            for (&x, &l) in block.iter().zip(labs) {
                if matches!(l, Some(l) if surviving.binary_search(&l).is_err()) {
                    coloring[x] = Side::Lambda;
                }
            }
        }
    }
    let witness = count_type_changes(perm, &coloring)?;
    if witness.total() <= merge_bound(k, b) {
        return Ok(Dichotomy::Merge(witness));
    }
    Err(Error::Internal(format!(
        "{perm}: merge {witness} exceeds bound {} and no ({k},{b})-generic staircase occurs",
        merge_bound(k, b)
    )))
}

/// Checks the returned branch: a valid embedding of the generic staircase, or
/// a correctly counted colouring within the bound whose `λ` side holds every
/// point before the minimum and whose `β` side holds every point below the
/// first point.
pub fn validate_dichotomy(
    perm: &Permutation,
    k: usize,
    b: usize,
    outcome: &Dichotomy,
) -> std::result::Result<(), String> {
    match outcome {
        Dichotomy::Staircase { witness, .. } => {
            if (witness.k, witness.b) != (k, b) {
                return Err(format!("witness is for ({},{})", witness.k, witness.b));
            }
            if !witness.is_valid(perm) {
                return Err(format!("{} is not an embedding", witness.embedding));
            }
            Ok(())
        }
        Dichotomy::Merge(w) => {
            let recount = count_type_changes(perm, &w.coloring).map_err(|e| e.to_string())?;
            if recount != *w {
                return Err("change counts do not match the colouring".into());
            }
            if w.total() > merge_bound(k, b) {
                return Err(format!("{} changes exceed bound {}", w.total(), merge_bound(k, b)));
            }
            if perm.is_empty() {
                return Ok(());
            }
            let min_pos = perm.positions_by_value()[0];
            if (0..min_pos).any(|i| w.coloring[i] != Side::Lambda) {
                return Err("a point before the minimum is not on the λ side".into());
            }
            let first = perm.value(0);
            if (0..perm.len()).any(|i| perm.value(i) < first && w.coloring[i] != Side::Beta) {
                return Err("a point below the first point is not on the β side".into());
            }
            Ok(())
        }
    }
}
