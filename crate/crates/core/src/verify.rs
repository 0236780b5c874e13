//! The acceptance suite: twelve exact or exhaustive checks, each reporting a
//! verdict, a one-line detail and its running time.

use std::time::Instant;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;

use crate::classes::{
    enumerate_class, main_theorem_report, verify_partial_reduction, ClassSpec, EnumerationConfig,
    MainTheoremConfig,
};
use crate::embedding::{embeddings, Embedding};
use crate::error::Result;
use crate::lattice::{enumerate_k_good, enumerate_subdirect, lattice_of_21, pi_of, rigid_with_ranks, three_chain_report};
use crate::oracle::filter_class;
use crate::perm::{max_decreasing_length, Permutation};
use crate::rigidity::{embedding_inf, embedding_sup, is_k_rigid, leftmost_bottommost};
use crate::series::{catalan_counts, k_rigid_counts, rigid_counts, rigid_ratio_profile};
use crate::staircase::{min_type_change_merge, staircase_or_merge, validate_dichotomy, Dichotomy};

pub const CRITERIA: [(usize, &str); 12] = [
    (1, "Catalan agreement"),
    (2, "Rigid series agreement"),
    (3, "4/9 trend"),
    (4, "k-good count"),
    (5, "Subdirect bijection"),
    (6, "3-chain counterexample"),
    (7, "Merge example"),
    (8, "Dichotomy soundness"),
    (9, "Embedding-lattice laws"),
    (10, "Main-theorem desk check"),
    (11, "Partial-reduction pivots"),
    (12, "Oracle equivalence"),
];

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: usize,
    pub title: String,
    pub passed: bool,
    pub detail: String,
    pub elapsed_ms: u128,
}

impl CriterionResult {
    /// `[PASS]  1 Catalan agreement (12 ms): detail`
    pub fn line(&self) -> String {
        format!(
            "[{}] {:>2} {} ({} ms): {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.elapsed_ms,
            self.detail
        )
    }
}

fn p(s: &str) -> Permutation {
    s.parse().expect("literal permutation")
}

fn to_u64(v: &[BigUint]) -> Vec<u64> {
    v.iter().map(|x| x.try_into().unwrap_or(u64::MAX)).collect()
}

fn av321_up_to(n: usize) -> Result<Vec<Permutation>> {
    let config = EnumerationConfig {
        retain_up_to: n,
        ..EnumerationConfig::default()
    };
    Ok(enumerate_class(&ClassSpec::new([p("321")]), n, &config)?
        .members
        .into_iter()
        .flatten()
        .collect())
}

fn catalan_agreement() -> Result<(bool, String)> {
    let counts = enumerate_class(&ClassSpec::new([p("321")]), 12, &EnumerationConfig::default())?
        .profile
        .counts;
    let expected = to_u64(&catalan_counts(12)[1..]);
    Ok((
        counts == expected,
        format!("Av(321) counts for n = 1..12: {counts:?}"),
    ))
}

fn rigid_series_agreement() -> Result<(bool, String)> {
    let brute = k_rigid_counts(2, 10)?;
    let series = to_u64(&rigid_counts(10)?);
    let ok = brute == series && series[..7] == [1, 0, 1, 2, 6, 18, 57];
    Ok((ok, format!("brute force {brute:?}, series {series:?}")))
}

fn four_ninths() -> Result<(bool, String)> {
    let profile = rigid_ratio_profile(16)?;
    let at = |n: usize| &profile[n - 2];
    Ok((
        at(16).distance < at(8).distance,
        format!(
            "|r_8/c_8 - 4/9| = {}, |r_16/c_16 - 4/9| = {}",
            at(8).distance_decimal,
            at(16).distance_decimal
        ),
    ))
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn k_good_lemma() -> Result<(bool, String)> {
    let mut cases: Vec<(usize, usize)> = (0..=4).flat_map(|k| (0..=k).map(move |l| (k, l))).collect();
    cases.extend((1..=3).map(|k| (k, k + 1)));
    let mut bad = Vec::new();
    for &(k, l) in &cases {
        let got = enumerate_k_good(k, l)?;
        if got != binomial(2 * l, l) {
            bad.push(format!("(k={k}, l={l}): {got} vs {}", binomial(2 * l, l)));
        }
    }
    let detail = if bad.is_empty() {
        format!("{} (k, l) cases match C(2l, l)", cases.len())
    } else {
        bad.join("; ")
    };
    Ok((bad.is_empty(), detail))
}

fn subdirect_bijection() -> Result<(bool, String)> {
    let mut bad = Vec::new();
    let mut total = 0;
    for m in 1..=4 {
        for n in 1..=4 {
            let rigid = rigid_with_ranks(&[m, n])?;
            let mut products = enumerate_subdirect(&[m, n]);
            let mut images = Vec::with_capacity(rigid.len());
            for perm in &rigid {
                let k = lattice_of_21(perm)?;
                if pi_of(&k)? != *perm {
                    bad.push(format!("pi_of(L({perm})) differs"));
                }
                images.push(k);
            }
            images.sort();
            products.sort();
            if images != products {
                bad.push(format!("({m},{n}): {} permutations, {} subdirect products", rigid.len(), products.len()));
            }
            total += rigid.len();
        }
    }
    let detail = if bad.is_empty() {
        format!("{total} rigid permutations over m, n ≤ 4, each matched to its own subdirect product")
    } else {
        bad.join("; ")
    };
    Ok((bad.is_empty(), detail))
}

fn three_chains() -> Result<(bool, String)> {
    let r = three_chain_report()?;
    Ok((
        r.subdirect_count == 29 && r.rigid_count == 25,
        format!(
            "{} subdirect products of 2×2×2, {} 3-rigid permutations, {} distinct triple incidences",
            r.subdirect_count, r.rigid_count, r.distinct_incidences
        ),
    ))
}

fn merge_example() -> Result<(bool, String)> {
    let perm = p("123789456");
    let inc = [p("21")];
    let three = min_type_change_merge(&perm, &inc, &inc, 3)?;
    let two = min_type_change_merge(&perm, &inc, &inc, 2)?;
    let ok = matches!(&three, Some(w) if w.total() == 3) && two.is_none();
    let shown = three.map(|w| w.to_string()).unwrap_or_else(|| "none".into());
    Ok((ok, format!("bound 3: {shown}; bound 2: {}", if two.is_none() { "none" } else { "found" })))
}

fn dichotomy_soundness() -> Result<(bool, String)> {
    let perms = av321_up_to(9)?;
    let cases = [(2, 2), (2, 3), (3, 2)];
    let outcomes: Vec<std::result::Result<(bool, usize), String>> = perms
        .par_iter()
        .flat_map_iter(|perm| {
            cases.iter().map(move |&(k, b)| {
                let out = staircase_or_merge(perm, k, b).map_err(|e| format!("{perm} ({k},{b}): {e}"))?;
                validate_dichotomy(perm, k, b, &out).map_err(|e| format!("{perm} ({k},{b}): {e}"))?;
                Ok(match out {
                    Dichotomy::Staircase { .. } => (true, 0),
                    Dichotomy::Merge(w) => (false, w.total()),
                })
            })
        })
        .collect();
    let failures: Vec<&String> = outcomes.iter().filter_map(|o| o.as_ref().err()).collect();
    let ok_outcomes: Vec<&(bool, usize)> = outcomes.iter().filter_map(|o| o.as_ref().ok()).collect();
    let staircases = ok_outcomes.iter().filter(|o| o.0).count();
    let max_total = ok_outcomes.iter().filter(|o| !o.0).map(|o| o.1).max().unwrap_or(0);
    let detail = match failures.first() {
        Some(first) => format!("{} failures, first: {first}", failures.len()),
        None => format!(
            "{} cases: {staircases} staircases, {} merges with at most {max_total} type changes",
            outcomes.len(),
            outcomes.len() - staircases
        ),
    };
    Ok((failures.is_empty(), detail))
}

/// Checks the lattice identities on the embeddings of `rho` in `pi`.
fn lattice_laws(rho: &Permutation, pi: &Permutation) -> std::result::Result<usize, String> {
    let all = embeddings(rho, pi);
    let err = |what: &str| format!("{rho} in {pi}: {what}");
    let inf = |f: &Embedding, g: &Embedding| embedding_inf(f, g, rho, pi).map_err(|e| err(&e.to_string()));
    let sup = |f: &Embedding, g: &Embedding| embedding_sup(f, g, rho, pi).map_err(|e| err(&e.to_string()));
    for f in &all {
        for g in &all {
            let (m, j) = (inf(f, g)?, sup(f, g)?);
            if m != inf(g, f)? || j != sup(g, f)? {
                return Err(err("not commutative"));
            }
            if inf(f, &j)? != *f || sup(f, &m)? != *f {
                return Err(err("not absorptive"));
            }
            for h in &all {
                if inf(&m, h)? != inf(f, &inf(g, h)?)? || sup(&j, h)? != sup(f, &sup(g, h)?)? {
                    return Err(err("not associative"));
                }
                if inf(f, &sup(g, h)?)? != sup(&m, &inf(f, h)?)? || sup(f, &inf(g, h)?)? != inf(&j, &sup(f, h)?)? {
                    return Err(err("not distributive"));
                }
            }
        }
    }
    if let Some(least) = leftmost_bottommost(rho, pi).map_err(|e| err(&e.to_string()))? {
        for f in &all {
            for (&a, &b) in least.image().iter().zip(f.image()) {
                if a > b || pi.value(a) > pi.value(b) {
                    return Err(err("leftmost-bottommost embedding is not minimal"));
                }
            }
        }
    } else if !all.is_empty() {
        return Err(err("leftmost-bottommost embedding missing"));
    }
    Ok(all.len())
}

fn embedding_lattice_laws() -> Result<(bool, String)> {
    let rhos: Vec<Permutation> = av321_up_to(4)?
        .into_iter()
        .filter(|r| max_decreasing_length(r) == 2 && is_k_rigid(r, 2).unwrap_or(false))
        .collect();
    let hosts = av321_up_to(7)?;
    let results: Vec<std::result::Result<usize, String>> = rhos
        .par_iter()
        .flat_map_iter(|rho| hosts.iter().map(move |pi| lattice_laws(rho, pi)))
        .collect();
    let failure = results.iter().find_map(|r| r.as_ref().err());
    let embeddings_seen: usize = results.iter().filter_map(|r| r.as_ref().ok()).sum();
    Ok(match failure {
        Some(e) => (false, e.clone()),
        None => (
            true,
            format!(
                "{} rigid patterns × {} hosts, {embeddings_seen} embeddings",
                rhos.len(),
                hosts.len()
            ),
        ),
    })
}

fn main_theorem() -> Result<(bool, String)> {
    let r = main_theorem_report(
        &[p("2134657")],
        10,
        &EnumerationConfig::default(),
        &MainTheoremConfig::default(),
    )?;
    let detail = format!(
        "red = {:?}; inclusion {}; {} difference members decomposed, max {} type changes (bound {}), {} failures",
        r.reduced_basis.iter().map(|b| b.to_string()).collect::<Vec<_>>(),
        if r.inclusion_holds { "holds" } else { "fails" },
        r.merges_checked,
        r.max_total_observed,
        r.bound,
        r.merge_failures.len()
    );
    Ok((r.passed() && r.reduced_basis == [p("2143")], detail))
}

fn partial_reduction() -> Result<(bool, String)> {
    let small = [p("1"), p("21")];
    let mut checked = 0;
    let mut longest = 0;
    let mut bad = Vec::new();
    for k in 1..=3 {
        for alpha in &small {
            for beta in &small {
                let r = verify_partial_reduction(k, alpha, beta, &[], 8, &EnumerationConfig::default())?;
                checked += r.checked;
                longest = longest.max(r.largest_chain);
                if !r.passed() {
                    bad.push(format!("k={k}, α={alpha}, β={beta}: {} failures", r.failures.len()));
                }
            }
        }
    }
    let detail = if bad.is_empty() {
        format!("{checked} permutations checked, longest pivot chain {longest}")
    } else {
        bad.join("; ")
    };
    Ok((bad.is_empty(), detail))
}

/// Bases used for the insertion-versus-filter comparison.
pub fn test_matrix() -> Vec<Vec<Permutation>> {
    [
        vec!["321"],
        vec!["21"],
        vec!["231"],
        vec!["321", "2143"],
        vec!["321", "2413"],
        vec!["321", "3412"],
        vec!["4321"],
        vec!["4321", "2143"],
        vec!["321", "2134657"],
        vec!["321", "241365"],
    ]
    .into_iter()
    .map(|b| b.into_iter().map(p).collect())
    .collect()
}

fn oracle_equivalence() -> Result<(bool, String)> {
    let matrix = test_matrix();
    let mut bad = Vec::new();
    for basis in &matrix {
        let spec = ClassSpec::new(basis.clone());
        let e = enumerate_class(&spec, 8, &EnumerationConfig::default())?;
        let mismatches: Vec<usize> = (1..=8usize)
            .into_par_iter()
            .filter(|&n| {
                let mut got = e.members[n].clone();
                got.sort();
                got != filter_class(n, basis)
            })
            .collect();
        if !mismatches.is_empty() {
            bad.push(format!("{spec} differs at n = {mismatches:?}"));
        }
    }
    let detail = if bad.is_empty() {
        format!("{} bases agree with S_n filtering for n ≤ 8", matrix.len())
    } else {
        bad.join("; ")
    };
    Ok((bad.is_empty(), detail))
}

pub fn run_criterion(id: usize) -> CriterionResult {
    let start = Instant::now();
    let outcome = match id {
        1 => catalan_agreement(),
        2 => rigid_series_agreement(),
        3 => four_ninths(),
        4 => k_good_lemma(),
        5 => subdirect_bijection(),
        6 => three_chains(),
        7 => merge_example(),
        8 => dichotomy_soundness(),
        9 => embedding_lattice_laws(),
        10 => main_theorem(),
        11 => partial_reduction(),
        12 => oracle_equivalence(),
        _ => Ok((false, format!("no criterion {id}"))),
    };
    let (passed, detail) = outcome.unwrap_or_else(|e| (false, format!("error: {e}")));
    let title = CRITERIA
        .iter()
        .find(|c| c.0 == id)
        .map(|c| c.1.to_string())
        .unwrap_or_default();
    CriterionResult {
        id,
        title,
        passed,
        detail,
        elapsed_ms: start.elapsed().as_millis(),
    }
}

pub fn run_all() -> Vec<CriterionResult> {
    CRITERIA.iter().map(|&(id, _)| run_criterion(id)).collect()
}
