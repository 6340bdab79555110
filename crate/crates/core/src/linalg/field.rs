//! Arithmetic in GF(p) for primes below 2^62 with Barrett reduction.

/// Largest prime below 2^62.
pub const DEFAULT_PRIME: u64 = (1u64 << 62) - 57;
/// Independent prime used to re-check rank deficiencies.
pub const SECOND_PRIME: u64 = (1u64 << 62) - 87;

/// The prime field GF(p), `2 <= p < 2^62`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fp {
    p: u64,
    bits: u32,
    mu: u128,
}

impl Fp {
    pub fn new(p: u64) -> Self {
        assert!((2..1u64 << 62).contains(&p), "modulus must lie in [2, 2^62)");
        let bits = 64 - p.leading_zeros();
        let mu = (1u128 << (2 * bits)) / p as u128;
        Fp { p, bits, mu }
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        self.reduce(a as u128 * b as u128)
    }

    /// Reduces `x < p^2`.
    #[inline]
    fn reduce(&self, x: u128) -> u64 {
        let q = ((x >> (self.bits - 1)) * self.mu) >> (self.bits + 1);
        let mut r = (x - q * self.p as u128) as u64;
        while r >= self.p {
            r -= self.p;
        }
        r
    }

    /// `a - f * b`.
    #[inline]
    pub fn sub_mul(&self, a: u64, f: u64, b: u64) -> u64 {
        self.sub(a, self.mul(f, b))
    }

    pub fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }

    /// Maps a residue to the symmetric range `(-p/2, p/2]`.
    pub fn to_signed(&self, a: u64) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }

    /// Multiplicative inverse of a nonzero residue.
    pub fn inv(&self, a: u64) -> u64 {
        assert!(a % self.p != 0, "inverse of zero");
        let (mut r0, mut r1) = (self.p as i128, (a % self.p) as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1, "modulus is not prime");
        t0.rem_euclid(self.p as i128) as u64
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut a: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, a);
            }
            a = mulmod(a, a);
            e >>= 1;
        }
        acc
    };
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn constants_are_prime() {
        assert!(is_prime_u64(DEFAULT_PRIME));
        assert!(is_prime_u64(SECOND_PRIME));
        assert!(((DEFAULT_PRIME + 1)..(1u64 << 62)).all(|q| !is_prime_u64(q)));
        assert!(!is_prime_u64(561));
        assert!(is_prime_u64(1_000_000_007));
    }

    #[test]
    fn inverse_and_pow() {
        let f = Fp::new(DEFAULT_PRIME);
        for a in [1u64, 2, 3, 12345, DEFAULT_PRIME - 1] {
            assert_eq!(f.mul(a, f.inv(a)), 1);
            assert_eq!(f.pow(a, DEFAULT_PRIME - 1), 1);
        }
        let small = Fp::new(7);
        assert_eq!(small.inv(3), 5);
        assert_eq!(small.from_i64(-1), 6);
        assert_eq!(small.to_signed(6), -1);
    }

    proptest! {
        #[test]
        fn barrett_matches_u128(a in 0u64..DEFAULT_PRIME, b in 0u64..DEFAULT_PRIME) {
            let f = Fp::new(DEFAULT_PRIME);
            prop_assert_eq!(f.mul(a, b) as u128, (a as u128 * b as u128) % DEFAULT_PRIME as u128);
        }

        #[test]
        fn barrett_small_moduli(p in prop::sample::select(vec![2u64, 3, 5, 7, 65_537, 1_000_000_007, SECOND_PRIME]), a: u64, b: u64) {
            let f = Fp::new(p);
            let (a, b) = (a % p, b % p);
            prop_assert_eq!(f.mul(a, b) as u128, (a as u128 * b as u128) % p as u128);
        }
    }
}
