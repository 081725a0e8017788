//! Schedule-independent random streams.
//!
//! Every stream is a ChaCha8 generator keyed by the run seed and positioned on
//! its own 64-bit stream id, which encodes the stream kind and an index (key
//! pair or trial). Draws therefore depend only on `(seed, kind, index)`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u64)]
pub enum StreamKind {
    Codebook = 1,
    Keys = 2,
    Channel = 3,
    Test = 15,
}

/// Stream ids reserve the top 4 bits for the kind.
const INDEX_BITS: u32 = 60;

pub fn stream(seed: u64, kind: StreamKind, index: u64) -> ChaCha8Rng {
    debug_assert!(index < 1 << INDEX_BITS);
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    let mut rng = ChaCha8Rng::from_seed(key);
    rng.set_stream(((kind as u64) << INDEX_BITS) | index);
    rng
}
