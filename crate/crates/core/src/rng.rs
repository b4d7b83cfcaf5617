//! Deterministic random streams.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Generator used throughout the crate.
pub type Rng = ChaCha8Rng;

/// Independent stream `index` of the run seeded by `seed`. Streams are
/// derived by counter so results do not depend on evaluation order.
pub fn substream(seed: u64, index: u64) -> Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}
