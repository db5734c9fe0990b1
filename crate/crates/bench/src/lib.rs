//! Fixtures shared by the benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wmofss_core::swarm::{SchoolState, SwarmConfig};
use wmofss_core::{Family, ProblemSpec, Variant};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `count` uniform points of the unit box.
pub fn random_points(count: usize, dim: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut r = rng(seed);
    (0..count).map(|_| (0..dim).map(|_| r.random()).collect()).collect()
}

/// A freshly initialized school with default parameters for `variant`.
pub fn school(family: Family, m: usize, variant: Variant) -> SchoolState {
    let spec = ProblemSpec::new(family, m).expect("valid problem");
    let config = SwarmConfig::for_variant(&spec, variant);
    SchoolState::init(&spec, &config, &mut rng(1)).expect("valid config")
}
