//! Exact coefficients of the Catalan series `c` and of the series `r` of
//! 2-rigid members of `Av(321)`, related by `c = r / (1 - t r)`.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::classes::{enumerate_class, ClassSpec, EnumerationConfig};
use crate::error::{Error, Result};
use crate::rigidity::is_k_rigid;

/// `C_0..=C_N` by `C_{n+1} = Σ C_i C_{n-i}`.
pub fn catalan_counts(n_max: usize) -> Vec<BigUint> {
    let mut c: Vec<BigUint> = vec![BigUint::one()];
    for n in 0..n_max {
        let next = (0..=n).map(|i| &c[i] * &c[n - i]).sum();
        c.push(next);
    }
    c
}

/// `r_0..=r_N` from `r (2 + t) = 1 + c`, i.e.
/// `r_n = ([n = 0] + c_n - r_{n-1}) / 2`. `r_0 = 1` counts the empty
/// permutation.
pub fn rigid_counts(n_max: usize) -> Result<Vec<BigUint>> {
    let c = catalan_counts(n_max);
    let mut r: Vec<BigUint> = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let mut numerator = BigInt::from(c[n].clone());
        if n == 0 {
            numerator += 1;
        } else {
            numerator -= BigInt::from(r[n - 1].clone());
        }
        let (q, rem) = numerator.div_rem(&BigInt::from(2));
        if !rem.is_zero() || q.is_negative() {
            return Err(Error::Internal(format!("series division failed at n = {n}")));
        }
        r.push(q.magnitude().clone());
    }
    Ok(r)
}

/// Checks `c (1 - t r) = r` coefficientwise up to `t^N`.
pub fn check_series_identity(n_max: usize) -> Result<bool> {
    let c = catalan_counts(n_max);
    let r = rigid_counts(n_max)?;
    Ok((0..=n_max).all(|n| {
        let convolution: BigUint = (0..n).map(|i| &c[i] * &r[n - 1 - i]).sum();
        c[n] >= convolution && &c[n] - &convolution == r[n]
    }))
}

/// Renders a non-negative rational with `places` decimals, truncated.
pub fn decimal(x: &BigRational, places: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10), places);
    let scaled = (x * BigRational::from_integer(scale.clone())).floor().to_integer();
    let (int, frac) = scaled.div_rem(&scale);
    if places == 0 {
        return int.to_string();
    }
    format!("{int}.{:0>places$}", frac.to_string())
}

/// Big integers serialise as decimal strings.
pub fn as_decimal<S: serde::Serializer>(x: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(x)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RatioEntry {
    pub n: usize,
    #[serde(serialize_with = "as_decimal")]
    pub rigid: BigUint,
    #[serde(serialize_with = "as_decimal")]
    pub catalan: BigUint,
    #[serde(skip)]
    pub ratio: BigRational,
    #[serde(skip)]
    pub distance: BigRational,
    /// `r_n / c_n` to 10 places.
    pub ratio_decimal: String,
    /// `|r_n / c_n - 4/9|` to 10 places.
    pub distance_decimal: String,
}

/// `r_n / c_n` and its distance to `4/9` for `n = 2..=N`.
pub fn rigid_ratio_profile(n_max: usize) -> Result<Vec<RatioEntry>> {
    if n_max < 2 {
        return Err(Error::InvalidArgument("the ratio profile needs N ≥ 2".into()));
    }
    let c = catalan_counts(n_max);
    let r = rigid_counts(n_max)?;
    let limit = BigRational::new(BigInt::from(4), BigInt::from(9));
    Ok((2..=n_max)
        .map(|n| {
            let ratio = BigRational::new(BigInt::from(r[n].clone()), BigInt::from(c[n].clone()));
            let distance = (&ratio - &limit).abs();
            RatioEntry {
                n,
                rigid: r[n].clone(),
                catalan: c[n].clone(),
                ratio_decimal: decimal(&ratio, 10),
                distance_decimal: decimal(&distance, 10),
                ratio,
                distance,
            }
        })
        .collect())
}

/// Brute-force counts of k-rigid members of `I_k` of length `0..=N`.
pub fn k_rigid_counts(k: usize, n_max: usize) -> Result<Vec<u64>> {
    let config = EnumerationConfig {
        max_length: n_max.max(EnumerationConfig::default().max_length),
        retain_up_to: n_max,
    };
    let e = enumerate_class(&ClassSpec::in_ik(k, []), n_max, &config)?;
    Ok(e.members
        .iter()
        .map(|level| {
            level
                .par_iter()
                .filter(|p| is_k_rigid(p, k).unwrap_or(false))
                .count() as u64
        })
        .collect())
}
