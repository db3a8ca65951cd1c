//! Seeded random streams.
//!
//! Every randomized routine draws from ChaCha8, keyed by the user seed
//! (expanded with SplitMix64) and placed on a stream selected by a fixed
//! purpose tag plus an index (trial number, repetition, ...). ChaCha is
//! counter based, so streams are independent and identical on every
//! platform.

use rand_chacha::rand_core::SeedableRng;
pub use rand_chacha::ChaCha8Rng as StreamRng;

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn fnv1a(tag: &str) -> u64 {
    tag.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}

/// Random stream for `(seed, tag, index)`.
pub fn stream(seed: u64, tag: &str, index: u64) -> StreamRng {
    let mut state = seed;
    let mut key = [0u8; 32];
    for chunk in key.chunks_exact_mut(8) {
        chunk.copy_from_slice(&splitmix64(&mut state).to_le_bytes());
    }
    let mut rng = StreamRng::from_seed(key);
    let mut sel = fnv1a(tag) ^ index.rotate_left(32);
    rng.set_stream(splitmix64(&mut sel));
    rng
}

/// Child seed for nested randomized stages, derived the same way.
pub fn derive_seed(seed: u64, tag: &str, index: u64) -> u64 {
    let mut state = seed ^ fnv1a(tag);
    splitmix64(&mut state) ^ splitmix64(&mut index.wrapping_add(state))
}
