//! Shared inputs for the criterion benchmarks.

use anchain_core::{assemble_system, build_resolution, FiberType, ObstructionSystem, ResolutionConfig};

/// Pairing system for `(n, t, fiber)`.
pub fn system(n: u32, t: u32, fiber: FiberType) -> ObstructionSystem {
    let config = ResolutionConfig::new(i64::from(n), i64::from(t), fiber).expect("valid config");
    assemble_system(&build_resolution(config))
}

/// A dense `size x size` matrix with entries in `[-20, 20]`, generated by a
/// fixed affine recurrence so every run benchmarks the same input.
pub fn dense_matrix(size: usize) -> anchain_core::IntegerMatrix {
    let entries: Vec<i64> = (0..size * size)
        .map(|k| ((k as i64 * 37 + 11) % 41) - 20)
        .collect();
    anchain_core::IntegerMatrix::from_i64(size, size, &entries).expect("nonempty")
}
