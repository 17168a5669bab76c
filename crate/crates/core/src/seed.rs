//! Deterministic seed fan-out.
//!
//! A master seed is combined with a path of indices, for example
//! `(instance, strategy, sample)`, through repeated SplitMix64 mixing. The
//! resulting sub-seed feeds a ChaCha8 stream, so every sample is reproducible
//! on its own regardless of how work is split across threads.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type QcRng = ChaCha8Rng;

#[inline]
fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Mixes `master` with each element of `path` in order.
pub fn sub_seed(master: u64, path: &[u64]) -> u64 {
    path.iter()
        .fold(splitmix64(master), |acc, &x| splitmix64(acc ^ splitmix64(x)))
}

pub fn rng_from_seed(seed: u64) -> QcRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rng_for(master: u64, path: &[u64]) -> QcRng {
    rng_from_seed(sub_seed(master, path))
}
