use rand::Rng;

use crate::types::SeedCtx;

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    (a as u128 * b as u128 % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin for all `u64`.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'bases: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Range `[⌈√M⌉, ⌊2√M⌋]` widened to `[2, 3]` for tiny `M`.
pub fn prime_range(m: u64) -> (u64, u64) {
    let r = m.isqrt();
    let lo = if r * r == m { r } else { r + 1 };
    let hi = (4 * m as u128).isqrt() as u64;
    (lo.max(2), hi.max(3))
}

/// Uniform prime from [`prime_range`] by rejection sampling.
pub fn sample_prime(m: u64, seed: &SeedCtx) -> u64 {
    let (lo, hi) = prime_range(m);
    let mut rng = seed.rng();
    for _ in 0..64 * (64 - hi.leading_zeros() as usize + 1) {
        let c = rng.random_range(lo..=hi);
        if is_prime(c) {
            return c;
        }
    }
    // Bertrand's postulate guarantees a prime in the range.
    (lo..=hi).find(|&c| is_prime(c)).expect("interval holds a prime")
}
