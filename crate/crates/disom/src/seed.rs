//! Hierarchical, labelled seed derivation.
//!
//! Every trial owns two independent random streams: one for the fitness
//! function's noise and one for the algorithm's decisions. Both are derived
//! from a single master seed through a labelled path
//! (`experiment → arm → trial → {noise, alg}`), so a trial reproduces
//! bit-for-bit regardless of execution order or thread count.

use rand_chacha::ChaCha8Rng;
use rand_chacha::rand_core::SeedableRng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

/// A node in the seed-derivation tree.
///
/// Children are derived by hashing the parent state together with a label
/// and an index, so distinct paths yield independent streams and identical
/// paths yield identical streams.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedTree {
    master: u64,
    path: String,
    state: [u8; 32],
}

impl SeedTree {
    /// Root of the tree for a given master seed.
    pub fn new(master: u64) -> Self {
        let mut hasher = Sha256::new();
        hasher.update(b"disom-seed-tree/1");
        hasher.update(master.to_le_bytes());
        SeedTree {
            master,
            path: String::new(),
            state: hasher.finalize().into(),
        }
    }

    /// Derive the child stream for `(label, index)`.
    pub fn child(&self, label: &str, index: u64) -> Self {
        let mut hasher = Sha256::new();
        hasher.update(self.state);
        hasher.update((label.len() as u64).to_le_bytes());
        hasher.update(label.as_bytes());
        hasher.update(index.to_le_bytes());
        let mut path = self.path.clone();
        if !path.is_empty() {
            path.push('/');
        }
        path.push_str(label);
        path.push(':');
        path.push_str(&index.to_string());
        SeedTree {
            master: self.master,
            path,
            state: hasher.finalize().into(),
        }
    }

    /// Deterministic RNG for this node.
    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::from_seed(self.state)
    }

    /// A 64-bit seed for keyed-hash consumers (frozen-noise oracles).
    pub fn seed64(&self) -> u64 {
        u64::from_le_bytes(self.state[..8].try_into().expect("state is 32 bytes"))
    }

    pub fn master(&self) -> u64 {
        self.master
    }

    /// Human-readable derivation path, e.g. `arm:0/trial:17/noise:0`.
    pub fn path(&self) -> &str {
        &self.path
    }

    /// Re-derive a node from its master seed and recorded path.
    ///
    /// Returns `None` if the path string is malformed.
    pub fn from_path(master: u64, path: &str) -> Option<Self> {
        let mut node = SeedTree::new(master);
        if path.is_empty() {
            return Some(node);
        }
        for part in path.split('/') {
            let (label, index) = part.rsplit_once(':')?;
            node = node.child(label, index.parse().ok()?);
        }
        Some(node)
    }
}
