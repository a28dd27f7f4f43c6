//! Seeded randomness: one master seed, independent named ChaCha streams.

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use sha2::{Digest, Sha256};

/// A splittable seed. Streams and children are derived with SHA-256 over the
/// parent seed and a name, so adding a stream never perturbs another.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Seed(u64);

impl Seed {
    pub fn new(seed: u64) -> Seed {
        Seed(seed)
    }

    pub fn value(&self) -> u64 {
        self.0
    }

    fn digest(&self, name: &str) -> [u8; 32] {
        let mut h = Sha256::new();
        h.update(self.0.to_le_bytes());
        h.update((name.len() as u64).to_le_bytes());
        h.update(name.as_bytes());
        h.finalize().into()
    }

    /// The generator named `name`.
    pub fn stream(&self, name: &str) -> ChaCha20Rng {
        ChaCha20Rng::from_seed(self.digest(name))
    }

    /// A child seed for a sub-computation.
    pub fn split(&self, name: &str) -> Seed {
        let d = self.digest(name);
        Seed(u64::from_le_bytes(d[..8].try_into().unwrap()))
    }
}
