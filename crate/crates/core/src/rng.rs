//! Seed derivation.
//!
//! All randomness in the crate comes from ChaCha8 streams seeded through
//! [`derive_seed`], so a single user seed fans out into independent,
//! order-free substreams (jitter, permutation replicates, ...).

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Stream tag for tie-breaking jitter.
pub const STREAM_JITTER: u64 = 0x6a69_7474_6572;
/// Stream tag for permutation replicates; replicate `b` uses `STREAM_PERMUTATION + b`.
pub const STREAM_PERMUTATION: u64 = 0x7065_726d_0000_0000;

/// SplitMix64 finaliser.
pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// `splitmix64(seed ^ splitmix64(stream))`.
///
/// Depends only on `(seed, stream)`, so replicate `b` gets the same
/// substream no matter how many replicates are requested.
pub fn derive_seed(seed: u64, stream: u64) -> u64 {
    splitmix64(seed ^ splitmix64(stream))
}

pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive_seed(seed, stream))
}
