#![allow(dead_code)]

use std::sync::Arc;

pub mod oracles;

use qgalg::perm::{Catalog, Perm, PermGroup, Tier};

pub fn group(name: &str) -> Arc<PermGroup> {
    Arc::new(Catalog::bundled().group(name).unwrap_or_else(|e| panic!("{name}: {e}")))
}

/// Default-tier catalog groups with order at most `n`, by name.
pub fn catalog_upto(n: usize) -> Vec<(String, Arc<PermGroup>)> {
    Catalog::bundled()
        .entries()
        .iter()
        .filter(|e| e.order <= n && e.tier == Tier::Default)
        .map(|e| (e.name.clone(), Arc::new(e.group().unwrap())))
        .collect()
}

/// The same group acting on relabeled points: generators conjugated by a
/// fixed permutation derived from `seed`, listed in reverse order.
pub fn relabel(g: &PermGroup, seed: u64) -> PermGroup {
    let n = g.degree();
    let mut images: Vec<u32> = (0..n as u32).collect();
    let mut state = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
    for i in (1..n).rev() {
        state = state
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        let j = (state >> 33) as usize % (i + 1);
        images.swap(i, j);
    }
    let sigma = Perm::from_images(images).unwrap();
    let inv = sigma.inverse();
    let gens = g.generators().iter().rev().map(|p| inv.then(p).then(&sigma)).collect();
    PermGroup::from_generators(n, gens).unwrap()
}

/// Property-test settings with a fixed seed, so default runs are
/// reproducible. `PROPTEST_RNG_SEED` still overrides it.
pub fn proptest_config(cases: u32) -> proptest::test_runner::Config {
    use proptest::test_runner::{Config, RngAlgorithm, RngSeed};
    let base = Config::default();
    let rng_seed = match base.rng_seed {
        RngSeed::Random => RngSeed::Fixed(0x9a1_5eed),
        fixed => fixed,
    };
    Config {
        cases,
        rng_seed,
        rng_algorithm: RngAlgorithm::ChaCha,
        failure_persistence: None,
        ..base
    }
}
