//! Deterministic RNG stream derivation.
//!
//! Every randomized routine takes a [`ChaCha8Rng`] so that results are
//! reproducible across platforms and rayon thread schedules. Independent
//! streams are derived from a master seed, a purpose tag, and an index
//! (typically a trial number) so that parallel trials never share state.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Stream tag for host graph generation.
pub const TAG_HOST: &str = "host";
/// Stream tag for the random perturbation R.
pub const TAG_PERTURB: &str = "perturb";
/// Stream tag for edge coloring.
pub const TAG_COLOR: &str = "color";
/// Stream tag for the sparse/dense edge split.
pub const TAG_SPLIT: &str = "split";
/// Stream tag for k-out subgraph sampling.
pub const TAG_KOUT: &str = "kout";
/// Stream tag for the Hamilton cycle packing pipeline.
pub const TAG_PACK: &str = "pack";
/// Stream tag for expansion set sampling.
pub const TAG_EXPANSION: &str = "expansion";
/// Stream tag for booster-pool (Q) sampling.
pub const TAG_BOOSTERS: &str = "boosters";

#[inline]
fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e3779b97f4a7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d049bb133111eb);
    x ^ (x >> 31)
}

fn tag_hash(tag: &str) -> u64 {
    // FNV-1a; stable across platforms, unlike DefaultHasher.
    let mut h = 0xcbf29ce484222325u64;
    for b in tag.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

/// Derives a sub-master seed from `(master, tag, index)`, for handing a
/// whole seeded pipeline (rather than a single stream) to a trial.
pub fn derive_key(master: u64, tag: &str, index: u64) -> u64 {
    let state = splitmix64(master ^ tag_hash(tag));
    splitmix64(state ^ index.wrapping_mul(0x9e3779b97f4a7c15))
}

/// Derives an independent 256-bit-seeded RNG from `(master, tag, index)`.
pub fn stream(master: u64, tag: &str, index: u64) -> ChaCha8Rng {
    let mut state = splitmix64(master ^ tag_hash(tag));
    state = splitmix64(state ^ index.wrapping_mul(0x9e3779b97f4a7c15));
    let mut seed = [0u8; 32];
    for chunk in seed.chunks_exact_mut(8) {
        state = splitmix64(state);
        chunk.copy_from_slice(&state.to_le_bytes());
    }
    ChaCha8Rng::from_seed(seed)
}
