//! Small exact-arithmetic helpers shared across the combinatorial modules.

/// Binomial coefficient C(n, k) in `u128`, exact.
///
/// Returns 0 when `k > n`. Panics on overflow, which cannot happen in the
/// ranges used here (n stays below ~60).
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc
            .checked_mul((n - i) as u128)
            .expect("binomial overflow");
        acc /= (i + 1) as u128;
    }
    acc
}

/// 2^e in `u128`, exact. Panics for e >= 128.
pub fn pow2(e: u32) -> u128 {
    1u128 << e
}

/// Number of distinct theta-hyperplanes of a smooth canonical curve of
/// genus g: 2^(g-1) (2^g - 1).
pub fn odd_theta_count(g: u32) -> u128 {
    pow2(g - 1) * (pow2(g) - 1)
}
