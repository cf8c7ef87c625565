//! Small deterministic sampling helpers over a raw [`RngCore`] stream.
//!
//! The crate only needs uniform indices and unit-interval reals; deriving
//! them directly from `next_u64` keeps synthetic fixtures byte-identical
//! across platforms and toolchain versions.

use rand_core::RngCore;

/// Uniform integer in `[0, bound)` via Lemire's multiply-shift reduction.
pub(crate) fn uniform_usize(rng: &mut impl RngCore, bound: usize) -> usize {
    debug_assert!(bound > 0);
    let x = rng.next_u64() as u128;
    ((x * bound as u128) >> 64) as usize
}

/// Uniform real in `[0, 1)` with 53 bits of precision.
pub(crate) fn uniform_f64(rng: &mut impl RngCore) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// `k` distinct indices from `[0, n)`, ascending.
pub(crate) fn sample_distinct(rng: &mut impl RngCore, n: usize, k: usize) -> Vec<usize> {
    debug_assert!(k <= n);
    let mut picked = Vec::with_capacity(k);
    while picked.len() < k {
        let candidate = uniform_usize(rng, n);
        if !picked.contains(&candidate) {
            picked.push(candidate);
        }
    }
    picked.sort_unstable();
    picked
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand_chacha::ChaCha8Rng;
    use rand_core::SeedableRng;

    #[test]
    fn uniform_usize_stays_in_bounds() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for bound in [1usize, 2, 3, 17, 1000] {
            for _ in 0..200 {
                assert!(uniform_usize(&mut rng, bound) < bound);
            }
        }
    }

    #[test]
    fn uniform_f64_is_in_unit_interval() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1000 {
            let x = uniform_f64(&mut rng);
            assert!((0.0..1.0).contains(&x));
        }
    }

    #[test]
    fn sample_distinct_returns_sorted_unique_indices() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let s = sample_distinct(&mut rng, 10, 4);
            assert_eq!(s.len(), 4);
            assert!(s.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn sampling_is_deterministic_for_a_seed() {
        let mut a = ChaCha8Rng::seed_from_u64(42);
        let mut b = ChaCha8Rng::seed_from_u64(42);
        let xs: Vec<usize> = (0..50).map(|_| uniform_usize(&mut a, 1000)).collect();
        let ys: Vec<usize> = (0..50).map(|_| uniform_usize(&mut b, 1000)).collect();
        assert_eq!(xs, ys);
    }
}
