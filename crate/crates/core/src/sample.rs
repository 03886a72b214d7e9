//! Seeded test and benchmark vectors.
//!
//! The generator is xoshiro256++ seeded through SplitMix64
//! (`Xoshiro256PlusPlus::seed_from_u64`), and normals come from the
//! ziggurat sampler of `rand_distr`. A seed therefore names the same vector
//! on every platform.

use rand::SeedableRng;
use rand_distr::{Distribution, StandardNormal};
use rand_xoshiro::Xoshiro256PlusPlus;

/// `len` standard normal samples, entry `n` divided by `(n+1)^decay`.
pub fn decaying_random_vector(len: usize, decay: f64, seed: u64) -> Vec<f64> {
    let mut rng = Xoshiro256PlusPlus::seed_from_u64(seed);
    (0..len)
        .map(|n| {
            let x: f64 = StandardNormal.sample(&mut rng);
            x / (n as f64 + 1.0).powf(decay)
        })
        .collect()
}
