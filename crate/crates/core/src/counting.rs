//! Exact partition counts with Mersenne parts `2^k - 1` and with power-of-two parts.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::{Error, Result};

/// Exact nonnegative count.
pub type Count = BigUint;

/// Largest table the DP builders accept.
pub const MAX_TABLE_N: u64 = 50_000_000;

/// Largest argument accepted by [`brute_force_count`].
pub const BRUTE_FORCE_MAX_N: u64 = 300;

/// Counts for every total `0..=n_max` under one fixed part set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTable {
    counts: Vec<Count>,
}

impl CountTable {
    pub fn n_max(&self) -> u64 {
        (self.counts.len() - 1) as u64
    }

    /// Count for total `n`, or `None` beyond the table.
    pub fn get(&self, n: u64) -> Option<&Count> {
        self.counts.get(usize::try_from(n).ok()?)
    }

    pub fn counts(&self) -> &[Count] {
        &self.counts
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, &Count)> {
        self.counts.iter().enumerate().map(|(n, c)| (n as u64, c))
    }

    /// Number of solutions of `sum r_i * part_i < u`, i.e. the sum of counts
    /// for totals `0..u`. Requires `1 <= u <= n_max + 1`.
    pub fn cumulative(&self, u: u64) -> Option<Count> {
        if u == 0 || u > self.n_max() + 1 {
            return None;
        }
        Some(self.counts[..u as usize].iter().sum())
    }
}

/// All Mersenne numbers `2^k - 1 <= n` with `k >= 1`, ascending.
pub fn mersenne_parts_upto(n: u64) -> Vec<u64> {
    (1..64u32)
        .map(|k| (1u64 << k) - 1)
        .take_while(|&p| p <= n)
        .collect()
}

fn power_of_two_parts_upto(n: u64) -> Vec<u64> {
    (0..64u32)
        .map(|k| 1u64 << k)
        .take_while(|&p| p <= n)
        .collect()
}

fn partition_table(parts: &[u64], n_max: u64, op: &'static str) -> Result<CountTable> {
    if n_max > MAX_TABLE_N {
        return Err(Error::Resource {
            op,
            detail: format!("n_max = {n_max} exceeds {MAX_TABLE_N}"),
        });
    }
    let len = n_max as usize + 1;
    let mut counts: Vec<Count> = Vec::new();
    counts.try_reserve_exact(len).map_err(|e| Error::Resource {
        op,
        detail: e.to_string(),
    })?;
    counts.push(Count::one());
    counts.resize(len, Count::zero());

    // Parts in the outer loop and totals ascending: each part may repeat
    // without bound and orderings are never double counted.
    for &part in parts {
        let part = part as usize;
        for total in part..len {
            let (lower, upper) = counts.split_at_mut(total);
            upper[0] += &lower[total - part];
        }
    }
    Ok(CountTable { counts })
}

/// `p_s(n)` for `n = 0..=n_max`: partitions into parts `1, 3, 7, 15, ...`.
pub fn count_s_partitions_table(n_max: u64) -> Result<CountTable> {
    partition_table(
        &mersenne_parts_upto(n_max),
        n_max,
        "count_s_partitions_table",
    )
}

/// Binary partitions `b(n)` for `n = 0..=n_max`: parts `1, 2, 4, 8, ...`.
pub fn count_binary_partitions_table(n_max: u64) -> Result<CountTable> {
    partition_table(
        &power_of_two_parts_upto(n_max),
        n_max,
        "count_binary_partitions_table",
    )
}

/// `P(u)` for the Mersenne sequence: solutions of `sum r_v (2^v - 1) < u`.
pub fn cumulative_p(u: u64) -> Result<Count> {
    if u == 0 {
        return Err(Error::domain("cumulative_p", "u must be at least 1"));
    }
    let table = count_s_partitions_table(u - 1)?;
    Ok(table.cumulative(u).expect("u is within the table"))
}

/// Exhaustive enumeration of multiplicities. Shares nothing with the DP and is
/// only meant as a test oracle.
pub fn brute_force_count(n: u64) -> Result<Count> {
    if n > BRUTE_FORCE_MAX_N {
        return Err(Error::domain(
            "brute_force_count",
            format!("n = {n} exceeds oracle limit {BRUTE_FORCE_MAX_N}"),
        ));
    }
    let mut parts = Vec::new();
    let mut p = 1u64;
    while p <= n.max(1) {
        parts.push(p);
        p = 2 * p + 1;
    }
    parts.reverse();

    fn enumerate(parts: &[u64], remaining: u64) -> u64 {
        match parts.split_first() {
            None => u64::from(remaining == 0),
            Some((&part, rest)) => (0..=remaining / part)
                .map(|r| enumerate(rest, remaining - r * part))
                .sum(),
        }
    }
    Ok(Count::from(enumerate(&parts, n)))
}

/// Natural log of a positive big integer, from its bit length and its top
/// 64 bits. Relative accuracy is close to one ulp of the result.
pub fn ln_count(x: &Count) -> f64 {
    let bits = x.bits();
    if bits == 0 {
        return f64::NEG_INFINITY;
    }
    if bits <= 64 {
        return x.to_u64().expect("fits in u64").to_f64().unwrap().ln();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_u64().expect("top 64 bits");
    (top as f64).ln() + shift as f64 * std::f64::consts::LN_2
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mersenne_parts() {
        assert!(mersenne_parts_upto(0).is_empty());
        assert_eq!(mersenne_parts_upto(7), vec![1, 3, 7]);
        assert_eq!(mersenne_parts_upto(100), vec![1, 3, 7, 15, 31, 63]);
        assert_eq!(mersenne_parts_upto(u64::MAX).len(), 63);
    }

    #[test]
    fn small_tables() {
        let t = count_s_partitions_table(0).unwrap();
        assert_eq!(t.counts(), &[Count::one()]);

        let t = count_s_partitions_table(12).unwrap();
        let expect: Vec<u32> = vec![1, 1, 1, 2, 2, 2, 3, 4, 4, 5, 6, 6, 7];
        let got: Vec<u32> = t.counts().iter().map(|c| c.to_u32().unwrap()).collect();
        assert_eq!(got, expect);
    }

    #[test]
    fn brute_force_values() {
        assert_eq!(brute_force_count(0).unwrap(), Count::from(1u8));
        assert_eq!(brute_force_count(3).unwrap(), Count::from(2u8));
        assert_eq!(brute_force_count(9).unwrap(), Count::from(5u8));
        assert!(matches!(
            brute_force_count(301),
            Err(Error::Domain { .. })
        ));
    }

    #[test]
    fn cumulative_values() {
        assert_eq!(cumulative_p(1).unwrap(), Count::from(1u8));
        assert_eq!(cumulative_p(4).unwrap(), Count::from(5u8));
        assert_eq!(cumulative_p(8).unwrap(), Count::from(16u8));
        assert!(cumulative_p(0).is_err());
    }

    #[test]
    fn binary_values() {
        let b = count_binary_partitions_table(10).unwrap();
        assert_eq!(b.get(0).unwrap(), &Count::from(1u8));
        assert_eq!(b.get(4).unwrap(), &Count::from(4u8));
        assert_eq!(b.get(10).unwrap(), &Count::from(14u8));
        assert!(b.get(11).is_none());
    }

    #[test]
    fn oversized_table_rejected() {
        assert!(matches!(
            count_s_partitions_table(MAX_TABLE_N + 1),
            Err(Error::Resource { .. })
        ));
    }

    #[test]
    fn ln_of_big_counts() {
        assert_eq!(ln_count(&Count::from(1u8)), 0.0);
        assert!(ln_count(&Count::zero()).is_infinite());
        let x = Count::from(3u8).pow(200);
        let expect = 200.0 * 3f64.ln();
        assert!((ln_count(&x) - expect).abs() < 1e-12 * expect);
        let x = Count::one() << 1000u32;
        assert!((ln_count(&x) - 1000.0 * std::f64::consts::LN_2).abs() < 1e-12);
    }
}
