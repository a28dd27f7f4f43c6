//! Small contexts shared by the unit tests.

use std::sync::OnceLock;

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

use super::PairingContext;

fn build(name: &str) -> PairingContext {
    crate::presets::build(name, &mut ChaCha20Rng::seed_from_u64(7))
        .unwrap()
        .unwrap()
}

macro_rules! cached {
    ($fn:ident, $name:expr) => {
        pub(crate) fn $fn() -> &'static PairingContext {
            static CELL: OnceLock<PairingContext> = OnceLock::new();
            CELL.get_or_init(|| build($name))
        }
    };
}

cached!(tiny_f49, "tiny-f49");
cached!(tiny_f25, "tiny-f25");
cached!(ss103, "ss103");
cached!(mnt4, "mnt4");
cached!(j1728, "j1728-k4");
cached!(bn12, "bn-k12");
