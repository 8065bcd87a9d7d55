//! Counter-based random streams.
//!
//! A [`SeedSpec`] names a ChaCha8 keystream: the key is derived from the
//! master seed and the 64-bit stream selector from the stream id. Word `k`
//! of the stream is a pure function of `(master, stream, k)`, so draws do
//! not depend on which thread produced them or in what order.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SeedSpec {
    pub master: u64,
    pub stream: u64,
}

/// SplitMix64 finalizer.
fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

impl SeedSpec {
    pub fn new(master: u64) -> Self {
        SeedSpec { master, stream: 0 }
    }

    pub fn with_stream(master: u64, stream: u64) -> Self {
        SeedSpec { master, stream }
    }

    /// Child stream keyed by a label path. Children of distinct paths are
    /// distinct streams of the same master key.
    pub fn child(&self, labels: &[u64]) -> SeedSpec {
        let mut s = mix64(self.stream ^ 0x005e_ed0f_c0de);
        for &l in labels {
            s = mix64(s ^ mix64(l));
        }
        SeedSpec {
            master: self.master,
            stream: s,
        }
    }

    /// Child stream keyed by a short string tag followed by integer labels.
    pub fn tagged(&self, tag: &str, labels: &[u64]) -> SeedSpec {
        let mut all = Vec::with_capacity(labels.len() + 1);
        all.push(tag_hash(tag));
        all.extend_from_slice(labels);
        self.child(&all)
    }

    pub fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.master);
        rng.set_stream(self.stream);
        rng
    }

    /// Generator positioned at 32-bit word `index` of the stream.
    pub fn rng_at(&self, index: u128) -> ChaCha8Rng {
        let mut rng = self.rng();
        rng.set_word_pos(index);
        rng
    }
}

/// FNV-1a over the tag bytes.
pub fn tag_hash(tag: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in tag.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h
}
