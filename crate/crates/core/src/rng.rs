//! Seeded, deterministic randomness helpers shared by the sampling procedures.

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};
use rand::RngCore;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Rng = ChaCha8Rng;

pub fn seeded(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Fixed splitting rule for deriving per-trial seeds from a master seed.
pub fn split_seed(master: u64, index: u64) -> u64 {
    master ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(0xD1B5_4A32_D192_ED03)
}

/// Bernoulli draw with exact rational probability num/den (0 <= num <= den).
pub fn bernoulli_u64(rng: &mut Rng, num: u64, den: u64) -> bool {
    debug_assert!(den > 0 && num <= den);
    uniform_below(rng, den) < num
}

/// Uniform integer in [0, bound) by rejection; deterministic given the stream.
pub fn uniform_below(rng: &mut Rng, bound: u64) -> u64 {
    debug_assert!(bound > 0);
    if bound == 1 {
        return 0;
    }
    let zone = u64::MAX - (u64::MAX % bound);
    loop {
        let x = rng.next_u64();
        if x < zone {
            return x % bound;
        }
    }
}

/// Bernoulli draw with exact big-rational probability p in [0, 1].
pub fn bernoulli_big(rng: &mut Rng, p_num: &BigInt, p_den: &BigInt) -> bool {
    debug_assert!(!p_den.is_zero());
    let num = p_num.magnitude().clone();
    let den = p_den.magnitude().clone();
    if p_num.is_negative() || p_num.is_zero() {
        return false;
    }
    if num >= den {
        return true;
    }
    uniform_biguint_below(rng, &den) < num
}

fn uniform_biguint_below(rng: &mut Rng, bound: &BigUint) -> BigUint {
    let bits = bound.bits();
    let words = bits.div_ceil(32) as usize;
    loop {
        let mut limbs = alloc::vec::Vec::with_capacity(words);
        for _ in 0..words {
            limbs.push(rng.next_u32());
        }
        let mut x = BigUint::new(limbs);
        let excess = (words as u64 * 32).saturating_sub(bits);
        x >>= excess as usize;
        if &x < bound {
            return x;
        }
    }
}

/// Choose k distinct items from 0..n uniformly (sorted), deterministic.
pub fn sample_k_of_n(rng: &mut Rng, k: usize, n: usize) -> alloc::vec::Vec<u32> {
    // Floyd's algorithm
    use alloc::collections::BTreeSet;
    let mut chosen: BTreeSet<u32> = BTreeSet::new();
    for j in (n - k)..n {
        let t = uniform_below(rng, (j + 1) as u64) as u32;
        if !chosen.insert(t) {
            chosen.insert(j as u32);
        }
    }
    chosen.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn deterministic_streams() {
        let mut a = seeded(42);
        let mut b = seeded(42);
        for _ in 0..100 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn bernoulli_extremes() {
        let mut rng = seeded(7);
        assert!(!bernoulli_u64(&mut rng, 0, 5));
        assert!(bernoulli_u64(&mut rng, 5, 5));
        assert!(!bernoulli_big(&mut rng, &BigInt::from(0), &BigInt::from(3)));
        assert!(bernoulli_big(&mut rng, &BigInt::from(3), &BigInt::from(3)));
    }

    #[test]
    fn sample_sizes() {
        let mut rng = seeded(3);
        let s = sample_k_of_n(&mut rng, 4, 10);
        assert_eq!(s.len(), 4);
        assert!(s.windows(2).all(|w| w[0] < w[1]));
        assert!(s.iter().all(|&v| v < 10));
    }
}
