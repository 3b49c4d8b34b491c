//! Exact convolution of non-negative integer vectors via number theoretic
//! transforms over word-size primes, with Garner reconstruction across two
//! primes when a single modulus cannot hold the coefficients.

/// Montgomery arithmetic modulo an odd prime `P < 2^31`, `R = 2^32`.
struct Field<const P: u32>;

impl<const P: u32> Field<P> {
    /// `-P^{-1} mod 2^32`.
    const NEG_INV: u32 = {
        let mut inv: u32 = 1;
        let mut i = 0;
        while i < 5 {
            inv = inv.wrapping_mul(2u32.wrapping_sub(P.wrapping_mul(inv)));
            i += 1;
        }
        inv.wrapping_neg()
    };
    /// `R^2 mod P`.
    const R2: u32 = ((1u128 << 64) % P as u128) as u32;

    #[inline(always)]
    fn reduce(t: u64) -> u32 {
        let m = (t as u32).wrapping_mul(Self::NEG_INV);
        let u = (t.wrapping_add(m as u64 * P as u64) >> 32) as u32;
        if u >= P {
            u.wrapping_sub(P)
        } else {
            u
        }
    }

    #[inline(always)]
    fn mul(a: u32, b: u32) -> u32 {
        Self::reduce(a as u64 * b as u64)
    }

    #[inline(always)]
    fn add(a: u32, b: u32) -> u32 {
        let s = a.wrapping_add(b);
        if s >= P {
            s.wrapping_sub(P)
        } else {
            s
        }
    }

    #[inline(always)]
    fn sub(a: u32, b: u32) -> u32 {
        let d = a.wrapping_sub(b);
        if a >= b {
            d
        } else {
            d.wrapping_add(P)
        }
    }

    fn to_mont(x: u32) -> u32 {
        Self::mul(x % P, Self::R2)
    }

    fn pow(mut base: u32, mut e: u64) -> u32 {
        let mut acc = Self::to_mont(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = Self::mul(acc, base);
            }
            base = Self::mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Montgomery form of a primitive `len`-th root of unity.
    fn root(generator: u32, len: usize) -> u32 {
        assert!((P as u64 - 1).is_multiple_of(len as u64), "transform length unsupported by modulus");
        Self::pow(Self::to_mont(generator), (P as u64 - 1) / len as u64)
    }

    /// Twiddles for one stage. Small stages get a flat table; large stages a
    /// split table so memory stays bounded.
    fn stage_twiddles(w: u32, half: usize) -> (Vec<u32>, Vec<u32>) {
        let lo_len = half.min(SPLIT);
        let mut lo = Vec::with_capacity(lo_len);
        let mut acc = Self::to_mont(1);
        for _ in 0..lo_len {
            lo.push(acc);
            acc = Self::mul(acc, w);
        }
        let mut hi = Vec::new();
        if half > SPLIT {
            let step = acc;
            let mut acc = Self::to_mont(1);
            for _ in 0..half / SPLIT {
                hi.push(acc);
                acc = Self::mul(acc, step);
            }
        }
        (lo, hi)
    }

    #[inline(always)]
    fn run<const DIF: bool>(x: &mut [u32], y: &mut [u32], tw: &[u32]) {
        if DIF {
            for ((u, v), &w) in x.iter_mut().zip(y.iter_mut()).zip(tw) {
                let (a, b) = (*u, *v);
                *u = Self::add(a, b);
                *v = Self::mul(Self::sub(a, b), w);
            }
        } else {
            for ((u, v), &w) in x.iter_mut().zip(y.iter_mut()).zip(tw) {
                let (a, b) = (*u, Self::mul(*v, w));
                *u = Self::add(a, b);
                *v = Self::sub(a, b);
            }
        }
    }

    fn stage<const DIF: bool>(a: &mut [u32], half: usize, tables: &(Vec<u32>, Vec<u32>)) {
        let (lo, hi) = tables;
        let mut tw = Vec::new();
        for block in a.chunks_exact_mut(2 * half) {
            let (x, y) = block.split_at_mut(half);
            if hi.is_empty() {
                Self::run::<DIF>(x, y, lo);
            } else {
                for ((xs, ys), &h) in x.chunks_mut(SPLIT).zip(y.chunks_mut(SPLIT)).zip(hi) {
                    tw.clear();
                    tw.extend(lo.iter().map(|&l| Self::mul(h, l)));
                    Self::run::<DIF>(xs, ys, &tw);
                }
            }
        }
    }

    /// Runs the stages in `order`. Stages with `half < BLOCK` are applied
    /// block by block so each block stays in cache across them.
    fn stages<const DIF: bool>(a: &mut [u32], order: &[(usize, u32)]) {
        let tables: Vec<_> = order.iter().map(|&(half, w)| (half, Self::stage_twiddles(w, half))).collect();
        let (wide, narrow): (Vec<_>, Vec<_>) = tables.iter().partition(|(half, _)| *half >= BLOCK);
        let run_wide = |a: &mut [u32]| {
            for (half, t) in &wide {
                Self::stage::<DIF>(a, *half, t);
            }
        };
        if DIF {
            run_wide(a);
        }
        for block in a.chunks_mut(BLOCK) {
            for (half, t) in &narrow {
                Self::stage::<DIF>(block, *half, t);
            }
        }
        if !DIF {
            run_wide(a);
        }
    }

    fn stage_roots(w: u32, n: usize) -> Vec<(usize, u32)> {
        let mut out = Vec::new();
        let (mut half, mut ws) = (n / 2, w);
        while half >= 1 {
            out.push((half, ws));
            ws = Self::mul(ws, ws);
            half /= 2;
        }
        out
    }

    /// Decimation in frequency with primitive `len`-th root `w`; output in
    /// bit-reversed order.
    fn forward(a: &mut [u32], w: u32) {
        let order = Self::stage_roots(w, a.len());
        Self::stages::<true>(a, &order);
    }

    /// Inverse of [`Self::forward`] given `w^{-1}`, without the `1/n` factor.
    fn inverse(a: &mut [u32], w_inv: u32) {
        let mut order = Self::stage_roots(w_inv, a.len());
        order.reverse();
        Self::stages::<false>(a, &order);
    }

    /// Linear (not cyclic) product modulo `P`; reuses the input buffers.
    fn convolve(mut fa: Vec<u32>, mut fb: Vec<u32>, generator: u32) -> Vec<u32> {
        let out_len = fa.len() + fb.len() - 1;
        let n = out_len.next_power_of_two();
        for buf in [&mut fa, &mut fb] {
            for x in buf.iter_mut() {
                *x = Self::to_mont(*x);
            }
            buf.resize(n, 0);
        }
        let w = Self::root(generator, n);
        Self::forward(&mut fa, w);
        Self::forward(&mut fb, w);
        for (x, &y) in fa.iter_mut().zip(&fb) {
            *x = Self::mul(*x, y);
        }
        drop(fb);
        Self::inverse(&mut fa, Self::pow(w, n as u64 - 1));
        // n^{-1} in plain form turns the Montgomery value back into a plain one.
        let n_inv = {
            let nm = Self::to_mont(n as u32 % P);
            Self::reduce(Self::pow(nm, P as u64 - 2) as u64)
        };
        fa.truncate(out_len);
        for x in fa.iter_mut() {
            *x = Self::mul(*x, n_inv);
        }
        fa
    }
}

const SPLIT: usize = 1 << 16;
/// Stages with `half` below this run per cache-sized block.
const BLOCK: usize = 1 << 13;

const P1: u32 = 2_013_265_921; // 15·2^27 + 1
const G1: u32 = 31;
const P2: u32 = 469_762_049; // 7·2^26 + 1
const G2: u32 = 3;

/// Largest transform length supported by the primary modulus.
pub const MAX_LEN: usize = 1 << 27;

/// Exact product of two non-negative integer vectors.
///
/// The caller provides `bound`, an upper bound on every output coefficient.
/// One prime is used when it suffices, otherwise two primes and Garner's
/// reconstruction (bound below `P1·P2 ≈ 9.4e17`). Inputs longer than the
/// transform limit are split and recombined.
pub fn multiply(a: &[u32], b: &[u32], bound: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let out_len = a.len() + b.len() - 1;
    let two = bound >= P1 as u64;
    let limit = if two { MAX_LEN / 2 } else { MAX_LEN };
    if out_len > limit {
        let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
        let chunk = (limit - short.len() + 1).max(1).min(long.len());
        let mut out = vec![0u64; out_len];
        for (c, piece) in long.chunks(chunk).enumerate() {
            let part = multiply(piece, short, bound);
            for (o, v) in out[c * chunk..].iter_mut().zip(part) {
                *o += v;
            }
        }
        return out;
    }
    if small_direct(a.len(), b.len()) {
        let mut out = vec![0u64; out_len];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] += x as u64 * y as u64;
            }
        }
        return out;
    }
    let r1 = Field::<P1>::convolve(a.to_vec(), b.to_vec(), G1);
    if !two {
        return r1.into_iter().map(u64::from).collect();
    }
    assert!(bound < P1 as u64 * P2 as u64, "coefficient bound exceeds CRT range");
    let r2 = Field::<P2>::convolve(a.to_vec(), b.to_vec(), G2);
    let inv = mod_pow(P1 as u64 % P2 as u64, P2 as u64 - 2, P2 as u64);
    r1.iter()
        .zip(&r2)
        .map(|(&x1, &x2)| {
            let diff = (x2 as u64 + P2 as u64 - x1 as u64 % P2 as u64) % P2 as u64;
            let k = diff * inv % P2 as u64;
            x1 as u64 + P1 as u64 * k
        })
        .collect()
}

/// Product for callers that guarantee every coefficient is below `P1`
/// (about 2·10^9). Takes the buffers by value to avoid copies.
pub fn multiply_small(a: Vec<u32>, b: Vec<u32>) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let out_len = a.len() + b.len() - 1;
    if out_len > MAX_LEN {
        let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
        let chunk = (MAX_LEN - short.len() + 1).max(1).min(long.len());
        let mut out = vec![0u32; out_len];
        for (c, piece) in long.chunks(chunk).enumerate() {
            let part = multiply_small(piece.to_vec(), short.clone());
            for (o, v) in out[c * chunk..].iter_mut().zip(part) {
                *o += v;
            }
        }
        return out;
    }
    if small_direct(a.len(), b.len()) {
        return multiply(&a, &b, 0).into_iter().map(|v| v as u32).collect();
    }
    Field::<P1>::convolve(a, b, G1)
}

fn small_direct(la: usize, lb: usize) -> bool {
    la.min(lb) <= 32 || la.saturating_mul(lb) <= 4096
}

fn mod_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn schoolbook(a: &[u32], b: &[u32]) -> Vec<u64> {
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] += x as u64 * y as u64;
            }
        }
        out
    }

    #[test]
    fn montgomery_constants() {
        assert_eq!(P1.wrapping_mul(Field::<P1>::NEG_INV), u32::MAX);
        let x = Field::<P1>::to_mont(12345);
        assert_eq!(Field::<P1>::reduce(x as u64), 12345);
    }

    #[test]
    fn transform_roundtrip() {
        let a: Vec<u32> = (0..256u32).map(|i| i * 7 % 101).collect();
        let b: Vec<u32> = (0..200u32).map(|i| i * 13 % 97).collect();
        let want = schoolbook(&a, &b);
        let r1 = Field::<P1>::convolve(a.clone(), b.clone(), G1);
        let r2 = Field::<P2>::convolve(a, b, G2);
        assert!(r1.iter().zip(&want).all(|(&g, &w)| g as u64 == w));
        assert!(r2.iter().zip(&want).all(|(&g, &w)| g as u64 == w));
    }

    #[test]
    fn split_table_stages() {
        let n = (SPLIT * 2) + 5;
        let a: Vec<u32> = (0..n as u32).map(|i| i % 3).collect();
        let b = vec![1u32, 2, 3];
        let want = schoolbook(&a, &b);
        let got = multiply_small(a, b);
        assert!(got.iter().zip(&want).all(|(&g, &w)| g as u64 == w));
    }

    #[test]
    fn blocked_stages() {
        for (la, lb) in [(BLOCK + 7, 40usize), (4 * BLOCK, 2 * BLOCK)] {
            let a: Vec<u32> = (0..la as u32).map(|i| i.wrapping_mul(2_654_435_761) % 7).collect();
            let b: Vec<u32> = (0..lb as u32).map(|i| i % 5 + 1).collect();
            let got = Field::<P1>::convolve(a.clone(), b.clone(), G1);
            assert!(got.iter().zip(&schoolbook(&a, &b)).all(|(&g, &w)| g as u64 == w), "{la}x{lb}");
        }
    }

    #[test]
    fn crt_path() {
        let a = vec![2_000_000u32; 300];
        let b = vec![3_000_000u32; 300];
        let bound = 300 * 2_000_000u64 * 3_000_000;
        assert_eq!(multiply(&a, &b, bound), schoolbook(&a, &b));
    }

    proptest! {
        #[test]
        fn matches_schoolbook(a in prop::collection::vec(0u32..50, 1..300), b in prop::collection::vec(0u32..50, 1..300)) {
            prop_assert_eq!(multiply(&a, &b, 300 * 50 * 50), schoolbook(&a, &b));
        }
    }
}
