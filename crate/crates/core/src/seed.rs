//! Named, reproducible random streams.
//!
//! Every random choice in the crate is drawn from a stream derived from one
//! 64-bit master seed plus a stream name and an optional index, so serial and
//! parallel callers observe identical values.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// SplitMix64 finalizer.
pub fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn fnv1a(name: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in name.bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h
}

/// Derives the seed of sub-stream `(name, index)` of `master`.
pub fn derive_seed(master: u64, name: &str, index: u64) -> u64 {
    mix64(mix64(master ^ fnv1a(name)).wrapping_add(mix64(index)))
}

/// A ChaCha stream for `(name, index)` under `master`.
pub fn substream(master: u64, name: &str, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive_seed(master, name, index))
}
