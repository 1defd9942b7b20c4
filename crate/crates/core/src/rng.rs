//! Seeded random streams.
//!
//! Every randomized routine takes a `u64` seed. Independent sub-streams of one
//! seed (for example the per-chain builds of a coreset) are ChaCha streams of
//! the same key, so stream 0 of a seed is the plain seeded generator.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type MonoRng = ChaCha8Rng;

/// Generator for `stream` of `seed`.
pub fn stream(seed: u64, stream: u64) -> MonoRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Deterministically derives a child seed (SplitMix64 finalizer over both inputs).
pub fn derive_seed(master: u64, index: u64) -> u64 {
    let mut z = master ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
