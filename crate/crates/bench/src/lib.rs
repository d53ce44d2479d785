//! Fixed inputs shared by the benchmarks.

use dld_core::random::{random_function, RingBounds};
use dld_core::CanonicalFunction;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// `n` random ring elements with the default bounds, reproducible from `seed`.
pub fn random_functions(n: usize, seed: u64) -> Vec<CanonicalFunction> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bounds = RingBounds::default();
    (0..n).map(|_| random_function(&mut rng, &bounds)).collect()
}

pub fn parsed(text: &str) -> CanonicalFunction {
    text.parse().expect("benchmark inputs are valid")
}
