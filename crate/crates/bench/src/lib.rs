//! Shared fixtures for the benchmarks.

use gridsight_core::modular::ResidueVector;

/// A generic residue vector with `d - 1` free coordinates at prime `p`.
/// Coordinates follow a fixed quadratic walk so runs are comparable.
pub fn fixture(p: u64, d: usize) -> ResidueVector {
    let coords = (1..d as u64)
        .map(|i| (i * i * 7 + 3 * i) % (p - 1) + 1)
        .collect();
    ResidueVector::new(p, coords).expect("fixture coordinates are in range")
}
