//! Shared instance builders for the criterion benchmarks.

use matcomp_core::{generate, AlgoConfig, DMatrix, GenSpec};

/// A dense generic rank-`r` instance, reproducible from the seed.
pub fn generic_instance(m: usize, n: usize, r: usize, seed: u64) -> DMatrix<f64> {
    generate(&GenSpec {
        m,
        n,
        r,
        psi_u_target: None,
        psi_v_target: None,
        seed,
    })
    .expect("benchmark spec must be feasible")
}

/// Algorithm config with the generic nonsparsity values for the shape.
pub fn generic_config(m: usize, n: usize, r: usize) -> AlgoConfig {
    AlgoConfig::new(r, m - r + 1, n - r + 1)
}
