//! Reproducible random streams.
//!
//! Each stream is a ChaCha8 generator keyed by a SHA-256 digest of
//! `(master_seed, replica, label)`, so replicas can be drawn in any order or
//! on any thread and still produce identical numbers.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

pub type StreamRng = ChaCha8Rng;

pub fn stream(master_seed: u64, replica: u64, label: &str) -> StreamRng {
    let mut h = Sha256::new();
    h.update(b"ca184/stream/v1\0");
    h.update(master_seed.to_le_bytes());
    h.update(replica.to_le_bytes());
    h.update(label.as_bytes());
    let digest = h.finalize();
    let mut seed = [0u8; 32];
    seed.copy_from_slice(&digest);
    ChaCha8Rng::from_seed(seed)
}

/// Splits `total` samples into fixed-size blocks so that the work can be
/// spread over threads without changing which stream draws which sample.
pub fn blocks(total: usize, block: usize) -> impl Iterator<Item = (u64, usize)> {
    let block = block.max(1);
    (0..total.div_ceil(block)).map(move |b| (b as u64, block.min(total - b * block)))
}
