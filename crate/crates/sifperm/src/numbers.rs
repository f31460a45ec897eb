//! Exact integer helpers shared by the series and formula layers.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// n-th Catalan number, by the product recurrence
/// `C_0 = 1`, `C_{k+1} = C_k * 2(2k+1) / (k+2)` (the division is exact).
pub fn catalan(n: usize) -> BigInt {
    let mut c = BigInt::one();
    for k in 0..n {
        c = c * BigInt::from(2 * (2 * k + 1)) / BigInt::from(k + 2);
    }
    c
}

/// `C_0, ..., C_{count-1}`.
pub fn catalan_numbers(count: usize) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(count);
    let mut c = BigInt::one();
    for k in 0..count {
        out.push(c.clone());
        c = c * BigInt::from(2 * (2 * k + 1)) / BigInt::from(k + 2);
    }
    out
}

/// Binomial coefficient with the usual convention that out-of-range choices
/// are zero.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || k > n || n < 0 {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut v = BigInt::one();
    for i in 0..k {
        v = v * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    v
}
