//! Random instances shared by the integration tests.

#![allow(dead_code)]

use polymat::polymatroid::{polymatroid_from_rank, DiscretePolymatroid, RankFunction};
use polymat::GroundSubset;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `min(d, f)` where `f` is a random weighted coverage function plus a random
/// modular part; monotone and submodular by construction.
pub fn random_rank(rng: &mut impl Rng, n: usize, d: u64) -> RankFunction {
    let blocks: Vec<(u64, u64)> = (0..rng.gen_range(1..=4))
        .map(|_| (rng.gen_range(1..1u64 << n), rng.gen_range(1..=3)))
        .collect();
    let modular: Vec<u64> = (0..n).map(|_| rng.gen_range(0..=2)).collect();
    RankFunction::from_fn(n, |x: GroundSubset| {
        let cover: u64 = blocks
            .iter()
            .filter(|(mask, _)| mask & x.mask() != 0)
            .map(|(_, w)| w)
            .sum();
        let own: u64 = x.elements().map(|i| modular[i]).sum();
        d.min(cover + own)
    })
    .unwrap()
}

pub fn random_polymatroid(rng: &mut impl Rng, max_n: usize, max_d: u64) -> DiscretePolymatroid {
    let n = rng.gen_range(2..=max_n);
    let d = rng.gen_range(1..=max_d);
    polymatroid_from_rank(&random_rank(rng, n, d)).unwrap()
}

/// A random polymatroid with every unit vector in it.
pub fn random_polymatroid_with_units(
    rng: &mut impl Rng,
    max_n: usize,
    max_d: u64,
) -> DiscretePolymatroid {
    loop {
        let p = random_polymatroid(rng, max_n, max_d);
        if p.contains_units() {
            return p;
        }
    }
}

/// The 200 instances shared by several acceptance criteria.
pub fn standard_samples() -> Vec<DiscretePolymatroid> {
    let mut r = rng(0x5eed_0001);
    (0..200).map(|_| random_polymatroid(&mut r, 5, 5)).collect()
}
