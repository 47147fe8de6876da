//! Adaptive exact low-rank matrix completion with ledgered observations.
//!
//! The crate centers on an [`EntryOracle`] that reveals ground-truth matrix
//! entries on request and keeps a per-cell ledger of everything revealed,
//! tagged by whether the reveal was a random probe or a deterministic
//! sweep. Three recovery algorithms ([`run_hn2016`], [`run_erre`],
//! [`run_erei`]) drive the oracle adaptively and reconstruct the matrix
//! from as few distinct entries as they can; closed-form budgets and
//! ceilings in [`bounds`] say how few that should be, in terms of the rank,
//! the coherence, and the nonsparsity-numbers computed in [`sparsity`].
//! Instance generation, a plain-text matrix file format, and pluggable
//! index samplers round out what a benchmarking harness needs.

pub mod bounds;
pub mod error;
pub mod gen;
pub mod linalg;
pub mod matfile;
pub mod oracle;
pub mod recover;
pub mod sampler;
pub mod sparsity;

pub use error::{Error, Result};
pub use gen::{demo_matrix, generate, GenSpec};
pub use linalg::{frobenius_close, least_squares, numeric_rank, RANK_REL_TOL};
pub use matfile::{format_matrix, parse_matrix, read_matrix, write_matrix};
pub use oracle::{EntryOracle, EntryTag, ObservationLedger, ObservationStats};
pub use recover::{
    complete_column, erei_effective_budget, hn2016_effective_budget, residual_independent,
    run_erei, run_erei_with_sampler, run_erre, run_erre_with_sampler, run_hn2016,
    run_hn2016_with_sampler, AlgoConfig, RecoveryResult, RecoveryState, EXACT_REL_TOL,
    RESIDUAL_TOL,
};
pub use sampler::{RngSampler, Sampler, ScriptedSampler};
pub use sparsity::{
    nonsparsity_matrix, nonsparsity_subspace, nonsparsity_subspace_capped, nonsparsity_vector,
    psi_from_coherence, sparsity_matrix, sparsity_subspace, sparsity_vector, SubspaceBasis,
    ENUMERATION_CAP, ORTHONORMALITY_TOL,
};
pub use bounds::{
    erei_bound, erei_budget, erre_bound, erre_failure_prob, hn2016_budget, hn2016_obs_cap,
};

/// The dense matrix type every public signature speaks in.
pub use nalgebra::DMatrix;
