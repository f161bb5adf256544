//! Size limits for the exponential brute-force oracles.
//!
//! Every oracle checks the size of the space it is about to enumerate
//! against one of the limits below and refuses with
//! [`Error::ResourceLimit`] when it is exceeded. Setting the environment
//! variable `TW_GUARD_OVERRIDE` to anything other than `0` or the empty
//! string disables all checks.

use crate::error::{Error, Result};

/// Assignments enumerated by the CSP, homomorphism and embedding oracles.
pub const MAX_ENUMERATION: u128 = 10_000_000;
/// Vertices accepted by the longest-path oracle.
pub const MAX_LONGEST_PATH_VERTICES: u128 = 16;
/// Vertices accepted by the exact treewidth search without a small bound.
pub const MAX_EXACT_TREEWIDTH_VERTICES: u128 = 14;
/// Largest upper bound for which the exact search runs on bigger graphs.
pub const MAX_EXACT_TREEWIDTH_SMALL_BOUND: usize = 4;
/// Subsets the exact treewidth search may keep alive at once.
pub const MAX_EXACT_TREEWIDTH_STATES: u128 = 1 << 22;
/// Vertices accepted by the independent-set oracle.
pub const MAX_MIS_BRUTEFORCE_VERTICES: u128 = 24;
/// Pattern vertices accepted by the partition expansion (Bell(10) = 115975).
pub const MAX_PARTITION_VERTICES: u128 = 10;
/// Pattern vertices accepted by automorphism counting (9! = 362880).
pub const MAX_AUTOMORPHISM_VERTICES: u128 = 9;
/// Vertices accepted by the backtracking isomorphism test.
pub const MAX_ISOMORPHISM_VERTICES: u128 = 10;

pub fn overridden() -> bool {
    match std::env::var_os("TW_GUARD_OVERRIDE") {
        Some(v) => !(v.is_empty() || v == "0"),
        None => false,
    }
}

pub fn check(what: &'static str, value: u128, limit: u128) -> Result<()> {
    if value > limit && !overridden() {
        return Err(Error::ResourceLimit { what, value, limit });
    }
    Ok(())
}

/// `base^exp`, saturating at `u128::MAX`.
pub fn saturating_pow(base: usize, exp: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base as u128);
        if acc == u128::MAX {
            break;
        }
    }
    acc
}

/// `n (n-1) ... (n-k+1)`, saturating; zero when `k > n`.
pub fn falling_factorial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc.saturating_mul((n - i) as u128))
}

/// Binomial coefficient, saturating.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // exact at every step: acc * (n-i) / (i+1) = C(n, i+1)
        match acc.checked_mul((n - i) as u128) {
            Some(v) => acc = v / (i as u128 + 1),
            None => return u128::MAX,
        }
    }
    acc
}
