#![allow(dead_code)]

pub mod calibration;
pub mod oracle;

use gridsight_core::modular::ResidueVector;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rv(p: u64, c: &[u64]) -> ResidueVector {
    ResidueVector::new(p, c.to_vec()).unwrap()
}

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_t(p: u64, d: usize, n: usize, rng: &mut ChaCha8Rng) -> Vec<ResidueVector> {
    (0..n)
        .map(|_| ResidueVector::random(p, d, rng).unwrap())
        .collect()
}
