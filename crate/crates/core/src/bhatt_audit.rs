//! Exact evaluation of Bhatt's claimed upper bound on `p_s(n)`,
//!
//! `2 + floor(n/3) + sum_{i=0}^{floor(log2 n)} floor(log2(n-3i))^(floor(log2(n-3i)) - 1)`,
//!
//! and a scan that compares it against exact counts.

use num_bigint::BigUint;
use serde::Serialize;

use crate::counting::{count_s_partitions_table, ln_count, Count, CountTable};
use crate::{Error, Result};

/// How summands without an obvious value are treated.
pub const TERM_CONVENTION: &str = "summands with n-3i < 2 or floor(log2(n-3i)) = 0 contribute 0; \
floor(log2(n-3i)) = 1 contributes 1^0 = 1; log2 floors use integer bit length";

/// Largest scan accepted by [`audit_scan`].
pub const MAX_AUDIT_N: u64 = 1_000_000;

fn floor_log2(x: u64) -> u32 {
    63 - x.leading_zeros()
}

fn summand(x: i64) -> Count {
    if x < 2 {
        return Count::from(0u8);
    }
    let k = floor_log2(x as u64);
    BigUint::from(k).pow(k - 1)
}

/// The bound, evaluated exactly under [`TERM_CONVENTION`].
pub fn bhatt_bound(n: u64) -> Result<Count> {
    if n == 0 {
        return Err(Error::domain("bhatt_bound", "n must be >= 1"));
    }
    let mut total = Count::from(2 + n / 3);
    for i in 0..=u64::from(floor_log2(n)) {
        total += summand(n as i64 - 3 * i as i64);
    }
    Ok(total)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditRecord {
    pub n: u64,
    #[serde(serialize_with = "as_decimal")]
    pub exact: Count,
    #[serde(serialize_with = "as_decimal")]
    pub bound: Count,
    pub violated: bool,
}

pub(crate) fn as_decimal<S: serde::Serializer>(x: &Count, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_str_radix(10))
}

impl AuditRecord {
    pub fn new(n: u64, exact: Count) -> Result<Self> {
        let bound = bhatt_bound(n)?;
        let violated = exact > bound;
        Ok(AuditRecord {
            n,
            exact,
            bound,
            violated,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuditSummary {
    pub n_max: u64,
    /// Smallest `n` with `p_s(n) > bound(n)`.
    pub first_violation: Option<u64>,
    pub violations: u64,
    /// Largest `exact / bound` seen, and where.
    pub max_ratio: f64,
    pub max_ratio_n: u64,
    /// `ln(exact) / ln(bound)` at `n = 10^3, 10^4, ...` up to `n_max`.
    pub log_ratio_samples: Vec<(u64, f64)>,
    /// Whether `log_ratio_samples` is strictly increasing.
    pub log_ratio_increasing: bool,
    /// `n >= 16` where the bound decreased; expected empty.
    pub bound_decreases: Vec<u64>,
    pub convention: &'static str,
}

/// Audit every `n` in `1..=table.n_max()` against an existing table.
pub fn audit_table<F: FnMut(&AuditRecord)>(table: &CountTable, mut sink: F) -> Result<AuditSummary> {
    let n_max = table.n_max();
    if n_max == 0 {
        return Err(Error::domain("audit_scan", "n_max must be >= 1"));
    }
    let mut summary = AuditSummary {
        n_max,
        first_violation: None,
        violations: 0,
        max_ratio: 0.0,
        max_ratio_n: 0,
        log_ratio_samples: Vec::new(),
        log_ratio_increasing: true,
        bound_decreases: Vec::new(),
        convention: TERM_CONVENTION,
    };
    let mut max_ln_ratio = f64::NEG_INFINITY;
    let mut previous_bound: Option<Count> = None;
    let mut next_sample = 1000u64;

    for (n, exact) in table.iter().skip(1) {
        let record = AuditRecord::new(n, exact.clone())?;
        if record.violated {
            summary.violations += 1;
            summary.first_violation.get_or_insert(n);
        }
        let ln_exact = ln_count(&record.exact);
        let ln_bound = ln_count(&record.bound);
        if ln_exact - ln_bound > max_ln_ratio {
            max_ln_ratio = ln_exact - ln_bound;
            summary.max_ratio_n = n;
        }
        if n == next_sample {
            summary.log_ratio_samples.push((n, ln_exact / ln_bound));
            next_sample = next_sample.saturating_mul(10);
        }
        if let Some(prev) = &previous_bound {
            if n >= 16 && record.bound < *prev {
                summary.bound_decreases.push(n);
            }
        }
        sink(&record);
        previous_bound = Some(record.bound);
    }
    summary.max_ratio = max_ln_ratio.exp();
    summary.log_ratio_increasing = summary
        .log_ratio_samples
        .windows(2)
        .all(|w| w[1].1 > w[0].1);
    Ok(summary)
}

/// Build `p_s(0..=n_max)` once and audit `n = 1..=n_max`, streaming each
/// record to `sink`.
pub fn audit_scan<F: FnMut(&AuditRecord)>(n_max: u64, sink: F) -> Result<AuditSummary> {
    if n_max == 0 {
        return Err(Error::domain("audit_scan", "n_max must be >= 1"));
    }
    if n_max > MAX_AUDIT_N {
        return Err(Error::Resource {
            op: "audit_scan",
            detail: format!("n_max = {n_max} exceeds {MAX_AUDIT_N}"),
        });
    }
    let table = count_s_partitions_table(n_max)?;
    audit_table(&table, sink)
}
