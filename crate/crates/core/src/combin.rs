//! Small combinatorial helpers shared by generators and enumerators.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Calls `f` on every `k`-subset of `0..n` in lexicographic order.
pub fn for_each_combination<F: FnMut(&[u32])>(n: usize, k: usize, mut f: F) {
    if k > n {
        return;
    }
    if k == 0 {
        f(&[]);
        return;
    }
    let mut idx: Vec<u32> = (0..k as u32).collect();
    loop {
        f(&idx);
        // rightmost position that can still advance
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if (idx[i] as usize) < n - k + i {
                break;
            }
            if i == 0 {
                return;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Exact binomial coefficient; zero when `r > n` or `n < 0`.
pub fn binom(n: i64, r: i64) -> BigInt {
    if r < 0 || n < 0 || r > n {
        return BigInt::zero();
    }
    let r = r.min(n - r);
    let mut acc = BigInt::one();
    for i in 0..r {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Binomial coefficient for small arguments; saturates instead of overflowing.
pub fn binom_u64(n: u64, r: u64) -> u64 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r as u128 {
        acc = acc * (n as u128 - i) / (i + 1);
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}
