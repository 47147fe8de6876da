//! Observation budgets and complexity bounds.
//!
//! Each recovery algorithm comes with a closed-form ceiling on how many
//! distinct entries it should need, parameterized by the instance shape, the
//! rank, the two nonsparsity-numbers, and a failure budget epsilon. The
//! probe budgets (entries sampled per column) are derived from the same
//! two-branch expression. All logarithms are natural.
//!
//! Callers are expected to pass r >= 1, psi values in [1, dimension], and
//! epsilon in (0, 1); the formulas are evaluated as written and make no
//! attempt to repair out-of-range inputs.

/// Per-column probe budget for the incremental-independence algorithm:
/// ceil(min(2(m/psi_u) ln(r/eps), (2m/psi_u)(r + 2 + ln(1/eps)) / psi_v)),
/// clamped to [1, m].
pub fn erei_budget(m: usize, r: usize, psi_u: usize, psi_v: usize, epsilon: f64) -> usize {
    let mf = m as f64;
    let branch_column = 2.0 * (mf / psi_u as f64) * (r as f64 / epsilon).ln();
    let branch_row =
        2.0 * (mf / psi_u as f64) * (r as f64 + 2.0 + (1.0 / epsilon).ln()) / psi_v as f64;
    let d = branch_column.min(branch_row).ceil();
    (d.max(1.0) as usize).min(m)
}

/// Per-column probe budget for the single-pass baseline:
/// ceil(2 (m/psi_u) ln(r/eps)), clamped to [1, m].
pub fn hn2016_budget(m: usize, r: usize, psi_u: usize, epsilon: f64) -> usize {
    let d = (2.0 * (m as f64 / psi_u as f64) * (r as f64 / epsilon).ln()).ceil();
    (d.max(1.0) as usize).min(m)
}

/// Observation ceiling for the incremental-independence algorithm:
/// (m + n - r) r + min(2 (mn/psi_u) ln(r/eps),
///                     (2m/psi_u)(r + 2 + ln(1/eps)) n / psi_v).
pub fn erei_bound(m: usize, n: usize, r: usize, psi_u: usize, psi_v: usize, epsilon: f64) -> f64 {
    let (mf, nf, rf) = (m as f64, n as f64, r as f64);
    let skeleton = (mf + nf - rf) * rf;
    let branch_column = 2.0 * (mf * nf / psi_u as f64) * (rf / epsilon).ln();
    let branch_row =
        (2.0 * mf / psi_u as f64) * (rf + 2.0 + (1.0 / epsilon).ln()) * nf / psi_v as f64;
    skeleton + branch_column.min(branch_row)
}

/// Observation ceiling for the delay-T repeated-sweep algorithm:
/// (m + n - r) r + T n + min(2 (mn/psi_u) ln(r/eps),
///                           (2m/psi_u)(r + 2 + ln(1/eps)) n / psi_v).
///
/// Written out in full rather than delegating to [`erei_bound`]: the
/// difference between the two ceilings being exactly T n is a checked
/// property, which would be vacuous if one formula were defined in terms of
/// the other.
pub fn erre_bound(
    m: usize,
    n: usize,
    r: usize,
    psi_u: usize,
    psi_v: usize,
    epsilon: f64,
    t_delay: usize,
) -> f64 {
    let (mf, nf, rf) = (m as f64, n as f64, r as f64);
    let skeleton = (mf + nf - rf) * rf;
    let sweeps = t_delay as f64 * nf;
    let branch_column = 2.0 * (mf * nf / psi_u as f64) * (rf / epsilon).ln();
    let branch_row =
        (2.0 * mf / psi_u as f64) * (rf + 2.0 + (1.0 / epsilon).ln()) * nf / psi_v as f64;
    skeleton + sweeps + branch_column.min(branch_row)
}

/// Failure probability budget for the delay-T algorithm:
/// eps + exp(-T psi_u psi_v / m).
pub fn erre_failure_prob(m: usize, psi_u: usize, psi_v: usize, epsilon: f64, t_delay: usize) -> f64 {
    epsilon + (-(t_delay as f64) * psi_u as f64 * psi_v as f64 / m as f64).exp()
}

/// Structural worst case for the single-pass baseline: d probes in each of
/// the n columns plus at most r fully observed columns.
pub fn hn2016_obs_cap(m: usize, n: usize, r: usize, d: usize) -> usize {
    r * m + n * d
}
