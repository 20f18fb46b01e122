//! Partial-quotient frequencies against the Kuzmin law
//! `P(b = k) = log2((k + 1)^2 / (k (k + 2)))`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::cf::Expansion;
use crate::error::{CfError, Result};

/// Quotients above this value share the tail bucket.
pub const HISTOGRAM_CAP: u64 = 100;

/// Histogram bucket: a single value `1..=HISTOGRAM_CAP` or everything above.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Bucket {
    Value(u64),
    Tail,
}

impl std::fmt::Display for Bucket {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Bucket::Value(k) => write!(f, "{k}"),
            Bucket::Tail => write!(f, ">{HISTOGRAM_CAP}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct KuzminReport {
    pub sample_size: usize,
    /// every bucket `1..=cap` plus the tail, zeros included
    pub counts: BTreeMap<Bucket, u64>,
    pub empirical: BTreeMap<Bucket, f64>,
    pub expected: BTreeMap<Bucket, f64>,
    pub max_abs_deviation: f64,
    /// `(n, b_n)` of the largest quotient in the sample
    pub largest_quotient: (usize, BigInt),
}

impl KuzminReport {
    pub fn deviation(&self, bucket: Bucket) -> f64 {
        self.empirical[&bucket] - self.expected[&bucket]
    }
}

/// Kuzmin probability of a partial quotient equal to `k`.
pub fn kuzmin_expected(k: u64) -> Result<f64> {
    if k < 1 {
        return Err(CfError::domain("Kuzmin probability needs k >= 1"));
    }
    let k = k as f64;
    Ok((((k + 1.0) * (k + 1.0)) / (k * (k + 2.0))).log2())
}

/// Kuzmin mass of every value above `k`: `log2((k + 2) / (k + 1))`.
pub fn kuzmin_tail(k: u64) -> f64 {
    let k = k as f64;
    ((k + 2.0) / (k + 1.0)).log2()
}

/// Histogram of `b_n` for `n >= skip_first` compared with the Kuzmin law.
pub fn kuzmin_report(exp: &Expansion, skip_first: usize) -> Result<KuzminReport> {
    let sample = exp.quotients().iter().enumerate().skip(skip_first);
    if exp.len() <= skip_first {
        return Err(CfError::domain(format!(
            "no quotients after skipping {skip_first} of {}",
            exp.len()
        )));
    }
    let mut counts: BTreeMap<Bucket, u64> = (1..=HISTOGRAM_CAP)
        .map(Bucket::Value)
        .chain(std::iter::once(Bucket::Tail))
        .map(|b| (b, 0))
        .collect();
    let mut sample_size = 0usize;
    let mut largest: Option<(usize, &BigInt)> = None;
    for (n, b) in sample {
        let bucket = match b.to_u64() {
            Some(v) if (1..=HISTOGRAM_CAP).contains(&v) => Bucket::Value(v),
            Some(0) => return Err(CfError::domain(format!("zero partial quotient at n = {n}"))),
            _ => Bucket::Tail,
        };
        *counts.get_mut(&bucket).expect("bucket exists") += 1;
        sample_size += 1;
        if largest.map_or(true, |(_, best)| b > best) {
            largest = Some((n, b));
        }
    }
    let total = sample_size as f64;
    let empirical: BTreeMap<Bucket, f64> =
        counts.iter().map(|(&b, &c)| (b, c as f64 / total)).collect();
    let expected: BTreeMap<Bucket, f64> = counts
        .keys()
        .map(|&b| {
            let p = match b {
                Bucket::Value(k) => kuzmin_expected(k).expect("k >= 1"),
                Bucket::Tail => kuzmin_tail(HISTOGRAM_CAP),
            };
            (b, p)
        })
        .collect();
    let max_abs_deviation = empirical
        .iter()
        .map(|(b, e)| (e - expected[b]).abs())
        .fold(0.0, f64::max);
    let (n, b) = largest.expect("nonempty sample");
    Ok(KuzminReport {
        sample_size,
        counts,
        empirical,
        expected,
        max_abs_deviation,
        largest_quotient: (n, b.clone()),
    })
}
