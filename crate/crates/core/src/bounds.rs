//! Exact binomial coefficients for bound formulas.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

/// `C(n, k)` as an exact big integer.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::default();
    }
    let k = k.min(n - k);
    let mut r = BigUint::one();
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// `C(n, k)`, saturating at `usize::MAX`.
pub fn binomial_usize(n: usize, k: usize) -> usize {
    binomial(n as u64, k as u64)
        .to_usize()
        .unwrap_or(usize::MAX)
}
