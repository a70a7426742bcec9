//! Greedy s-partitions and modular exponentiation built on them.
//!
//! `a^(2^k - 1)` has a short fixed chain: start from `a` and apply
//! `x <- x^2 a` another `k - 1` times. Writing `n` as a sum of Mersenne
//! numbers therefore turns `a^n mod m` into a product of such chains.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::{Error, Result};

/// A multiset of Mersenne parts `2^k - 1`, stored as exponents `k`,
/// largest first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SPartition {
    #[serde(serialize_with = "crate::bhatt_audit::as_decimal")]
    pub n: BigUint,
    pub exponents: Vec<u64>,
}

fn mersenne(k: u64) -> BigUint {
    (BigUint::one() << k) - 1u8
}

impl SPartition {
    pub fn parts(&self) -> Vec<BigUint> {
        self.exponents.iter().map(|&k| mersenne(k)).collect()
    }

    /// The parts sum to `n` and every exponent is at least 1.
    pub fn sums_to_n(&self) -> bool {
        self.exponents.iter().all(|&k| k >= 1)
            && self.parts().into_iter().sum::<BigUint>() == self.n
    }

    /// Exponents strictly decrease except for at most one repeat at the end,
    /// and there are at most `floor(log2(n + 1)) + 1` parts.
    pub fn has_greedy_shape(&self) -> bool {
        let e = &self.exponents;
        let strict_prefix = e.len().saturating_sub(1);
        let shape_ok = e
            .windows(2)
            .enumerate()
            .all(|(i, w)| w[0] > w[1] || (w[0] == w[1] && i + 1 == strict_prefix));
        let limit = (&self.n + 1u8).bits() as usize; // floor(log2(n+1)) + 1
        shape_ok && e.len() <= limit
    }
}

/// Repeatedly take the largest `2^k - 1` not exceeding what is left.
pub fn greedy_decompose(n: &BigUint) -> SPartition {
    let mut remaining = n.clone();
    let mut exponents = Vec::new();
    while !remaining.is_zero() {
        let k = (&remaining + 1u8).bits() - 1;
        remaining -= mersenne(k);
        exponents.push(k);
    }
    SPartition {
        n: n.clone(),
        exponents,
    }
}

fn check_modulus(op: &'static str, m: &BigUint) -> Result<()> {
    if m.is_zero() {
        Err(Error::domain(op, "modulus must be >= 1"))
    } else {
        Ok(())
    }
}

/// `a^(2^k - 1) mod m` and the number of modular multiplications used
/// (squarings included).
pub fn pow_mersenne_part_counted(a: &BigUint, k: u64, m: &BigUint) -> Result<(BigUint, u64)> {
    check_modulus("pow_mersenne_part", m)?;
    if k == 0 {
        return Err(Error::domain("pow_mersenne_part", "k must be >= 1"));
    }
    let base = a % m;
    let mut x = base.clone();
    let mut multiplications = 0;
    for _ in 1..k {
        x = &x * &x % m;
        x = x * &base % m;
        multiplications += 2;
    }
    Ok((x, multiplications))
}

pub fn pow_mersenne_part(a: &BigUint, k: u64, m: &BigUint) -> Result<BigUint> {
    pow_mersenne_part_counted(a, k, m).map(|(x, _)| x)
}

/// `a^n mod m` through the greedy s-partition of `n`.
pub fn modexp_spartition(a: &BigUint, n: &BigUint, m: &BigUint) -> Result<BigUint> {
    check_modulus("modexp_spartition", m)?;
    let mut acc = BigUint::one() % m;
    for k in greedy_decompose(n).exponents {
        acc = acc * pow_mersenne_part(a, k, m)? % m;
    }
    Ok(acc)
}

/// Plain right-to-left square-and-multiply.
pub fn modexp_reference(a: &BigUint, n: &BigUint, m: &BigUint) -> Result<BigUint> {
    check_modulus("modexp_reference", m)?;
    let mut result = BigUint::one() % m;
    let mut square = a % m;
    for i in 0..n.bits() {
        if n.bit(i) {
            result = result * &square % m;
        }
        square = &square * &square % m;
    }
    Ok(result)
}
