//! Exact counting and asymptotics for s-partitions.
//!
//! An s-partition of `n` writes `n` as a sum of parts of the form `2^k - 1`
//! (`1, 3, 7, 15, ...`). This crate provides:
//!
//! - [`counting`]: exact big-integer tables of `p_s(n)` and of binary partitions
//! - [`special_fn`]: complex Gamma, Riemann zeta and adaptive Gauss-Kronrod quadrature
//! - [`pennington`]: the analytic constants, the periodic correction `W(z)` and the
//!   asymptotic expansion of `ln p_s(n)` (plus the general form for any part sequence)
//! - [`bhatt_audit`]: exact evaluation of a published upper bound and a scan for violations
//! - [`exponentiation`]: greedy s-partition decomposition and `a^n mod m` built on it
//! - [`cli`]: the command-line front end

// `!(x >= lo)` is used on purpose so NaN is rejected as well.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
// Published coefficient tables are kept digit for digit.
#![allow(clippy::excessive_precision)]

pub mod bhatt_audit;
pub mod cli;
pub mod counting;
mod error;
pub mod exponentiation;
pub mod pennington;
pub mod special_fn;

pub use error::{Error, Result};

pub use bhatt_audit::{audit_scan, bhatt_bound, AuditRecord, AuditSummary};
pub use counting::{
    brute_force_count, count_binary_partitions_table, count_s_partitions_table, cumulative_p,
    ln_count, mersenne_parts_upto, Count, CountTable,
};
pub use exponentiation::{
    greedy_decompose, modexp_reference, modexp_spartition, pow_mersenne_part, SPartition,
};
pub use pennington::{
    theorem1_ln_ps, theorem2_ln_ph, AsymptoticBreakdown, AsymptoticParams, Constants,
    FourierCoefficients,
};
pub use special_fn::{gamma_complex, integrate_adaptive, zeta_complex, Complex, QuadratureResult};
