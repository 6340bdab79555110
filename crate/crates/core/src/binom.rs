//! Binomial coefficients in machine and arbitrary precision.

use num_bigint::BigUint;
use num_traits::One;

/// `C(n, k)` in `u128`, or `None` on overflow.
pub fn binom_checked(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) is always divisible by (i + 1) after the multiply.
        acc = acc.checked_mul((n - i) as u128)? / (i as u128 + 1);
    }
    Some(acc)
}

/// `C(n, k)` as `u64`. Panics on overflow; callers only use it where sizes are guarded.
pub fn binom(n: u64, k: u64) -> u64 {
    let v = binom_checked(n, k).expect("binomial overflow");
    u64::try_from(v).expect("binomial exceeds u64")
}

pub fn binom_big(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Natural log of `C(n, k)` without overflow.
pub fn ln_binom(n: u64, k: u64) -> f64 {
    if k > n {
        return f64::NEG_INFINITY;
    }
    let k = k.min(n - k);
    (0..k).map(|i| ((n - i) as f64).ln() - ((i + 1) as f64).ln()).sum()
}

/// Table of `C(v, j)` for `v < n_max`, `j <= k_max`, used by hot ranking loops.
#[derive(Debug, Clone)]
pub struct BinomTable {
    k_max: usize,
    n_max: usize,
    data: Vec<u64>,
}

impl BinomTable {
    pub fn new(n_max: usize, k_max: usize) -> Self {
        let mut data = vec![0u64; (n_max + 1) * (k_max + 1)];
        for v in 0..=n_max {
            for j in 0..=k_max {
                data[v * (k_max + 1) + j] = match binom_checked(v as u64, j as u64) {
                    Some(x) if x <= u64::MAX as u128 => x as u64,
                    _ => u64::MAX,
                };
            }
        }
        BinomTable { k_max, n_max, data }
    }

    #[inline]
    pub fn get(&self, v: usize, j: usize) -> u64 {
        debug_assert!(v <= self.n_max && j <= self.k_max);
        self.data[v * (self.k_max + 1) + j]
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn k_max(&self) -> usize {
        self.k_max
    }
}
