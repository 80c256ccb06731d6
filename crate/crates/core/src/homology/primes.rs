//! Random primes just below `2^30`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const DEFAULT_PRIME_SEED: u64 = 0x5eed_b377;

const LOW: u64 = (1 << 30) - (1 << 24);
const HIGH: u64 = 1 << 30;

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Modular inverse for prime `p`.
#[inline]
pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Draws distinct primes from `[2^30 - 2^24, 2^30)`.
#[derive(Debug, Clone)]
pub struct PrimeSource {
    rng: ChaCha8Rng,
    used: Vec<u64>,
}

impl PrimeSource {
    pub fn seeded(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
            used: Vec::new(),
        }
    }

    pub fn from_entropy() -> Self {
        Self {
            rng: ChaCha8Rng::from_entropy(),
            used: Vec::new(),
        }
    }

    pub fn next_prime(&mut self) -> u64 {
        loop {
            let c = self.rng.gen_range(LOW..HIGH) | 1;
            if is_prime(c) && !self.used.contains(&c) {
                self.used.push(c);
                return c;
            }
        }
    }
}

impl Default for PrimeSource {
    fn default() -> Self {
        Self::seeded(DEFAULT_PRIME_SEED)
    }
}
