//! End-to-end runs of the three algorithms against seeded instances,
//! checking exactness, observation accounting, and cross-algorithm
//! agreement through the public API only.

use matcomp_core::{
    demo_matrix, generate, hn2016_obs_cap, numeric_rank, run_erei, run_erre, run_hn2016,
    AlgoConfig, EntryOracle, GenSpec, RANK_REL_TOL,
};

fn generic_spec(m: usize, n: usize, r: usize, seed: u64) -> GenSpec {
    GenSpec {
        m,
        n,
        r,
        psi_u_target: None,
        psi_v_target: None,
        seed,
    }
}

#[test]
fn single_pass_baseline_recovers_generic_instances() {
    // Generic 40x40 rank-3: the residual direction of an active column has
    // at most r-1 = 2 zero entries, so 8 distinct probe rows always catch
    // it and every trial must recover exactly.
    let truth = generate(&generic_spec(40, 40, 3, 100)).unwrap();
    let cap = hn2016_obs_cap(40, 40, 3, 8);
    for seed in 0..30 {
        let mut oracle = EntryOracle::new(truth.clone()).unwrap();
        let mut config = AlgoConfig::new(3, 38, 38);
        config.d_override = Some(8);
        config.seed = seed;
        let result = run_hn2016(&mut oracle, &config).unwrap();
        assert!(result.exact, "seed {seed} failed");
        assert_eq!(result.estimated_rank, 3);
        assert!(result.stats.total <= cap);
        assert!(result.stats.total <= 40 * 40);
        assert_eq!(result.stats.total, oracle.ledger().total());
    }
}

#[test]
fn repeated_sweeps_usually_recover_the_walkthrough_instance() {
    // Per-sweep detection probability is solidly above 1/3 per column, and
    // the failure budget at T=3 is about 1.8%; 45 of 50 is a loose floor.
    let mut successes = 0;
    for seed in 0..50 {
        let mut oracle = EntryOracle::new(demo_matrix()).unwrap();
        let mut config = AlgoConfig::new(1, 2, 4);
        config.t_delay = 3;
        config.seed = seed;
        let result = run_erre(&mut oracle, &config).unwrap();
        assert!(result.stats.total <= 24);
        if result.exact && result.estimated_rank == 1 {
            successes += 1;
        }
    }
    assert!(successes >= 45, "only {successes}/50 runs were exact");
}

#[test]
fn repeated_sweep_observation_count_is_deterministic_on_generic_instances() {
    // On a fully generic instance every entry is nonzero and every square
    // candidate submatrix up to size r is nonsingular, so all detections
    // land in the first sweep, in the first r columns. The distinct-entry
    // count is then a closed form: the skeleton (m+n-r)r plus one pick per
    // undetected column in the detection sweep and in each of the T
    // trailing sweeps.
    for seed in [1, 2, 3] {
        let truth = generate(&generic_spec(40, 40, 3, 200 + seed)).unwrap();
        let mut oracle = EntryOracle::new(truth).unwrap();
        let mut config = AlgoConfig::new(3, 38, 38);
        config.t_delay = 3;
        config.seed = seed;
        let result = run_erre(&mut oracle, &config).unwrap();
        assert!(result.exact);
        assert_eq!(result.estimated_rank, 3);
        let skeleton = (40 + 40 - 3) * 3;
        let sweeps = (3 + 1) * (40 - 3);
        assert_eq!(result.stats.total, skeleton + sweeps);
    }
}

#[test]
fn estimates_carry_the_reported_rank() {
    let truth = generate(&generic_spec(24, 18, 4, 7)).unwrap();

    let mut oracle = EntryOracle::new(truth.clone()).unwrap();
    let mut config = AlgoConfig::new(4, 21, 15);
    config.seed = 5;
    let erei = run_erei(&mut oracle, &config).unwrap();
    assert_eq!(numeric_rank(&erei.estimate, RANK_REL_TOL), erei.estimated_rank);

    let mut oracle = EntryOracle::new(truth.clone()).unwrap();
    let hn = run_hn2016(&mut oracle, &config).unwrap();
    assert_eq!(numeric_rank(&hn.estimate, RANK_REL_TOL), hn.estimated_rank);

    let mut oracle = EntryOracle::new(truth).unwrap();
    let mut config = config.clone();
    config.t_delay = 2;
    let erre = run_erre(&mut oracle, &config).unwrap();
    assert_eq!(numeric_rank(&erre.estimate, RANK_REL_TOL), erre.estimated_rank);
}

#[test]
fn full_probing_strips_all_randomness() {
    for (m, n, r, seed) in [(12, 10, 2, 1), (9, 9, 3, 2), (15, 6, 1, 3)] {
        let truth = generate(&generic_spec(m, n, r, seed)).unwrap();
        let mut config = AlgoConfig::new(r, m - r + 1, n - r + 1);
        config.d_override = Some(m);
        config.t_delay = 1;

        let mut oracle = EntryOracle::new(truth.clone()).unwrap();
        let erei = run_erei(&mut oracle, &config).unwrap();
        let mut oracle = EntryOracle::new(truth.clone()).unwrap();
        let hn = run_hn2016(&mut oracle, &config).unwrap();
        let mut oracle = EntryOracle::new(truth).unwrap();
        let erre = run_erre(&mut oracle, &config).unwrap();

        for (name, result) in [("erei", &erei), ("hn2016", &hn), ("erre", &erre)] {
            assert!(result.exact, "{name} missed {m}x{n} rank {r}");
            assert_eq!(result.estimated_rank, r, "{name} rank on {m}x{n}");
            assert!(result.stats.total <= m * n);
        }
    }
}

#[test]
fn tracked_row_skeleton_shows_up_in_the_ledger() {
    // Whenever the incremental run finds the full rank, its deterministic
    // observations form exactly r full columns and r full rows.
    let truth = generate(&generic_spec(20, 16, 3, 11)).unwrap();
    let mut config = AlgoConfig::new(3, 18, 14);
    config.seed = 21;
    let mut oracle = EntryOracle::new(truth).unwrap();
    let result = run_erei(&mut oracle, &config).unwrap();
    assert!(result.exact);
    assert_eq!(result.estimated_rank, 3);
    assert!(result.stats.deterministic >= (20 + 16 - 3) * 3);
    assert_eq!(oracle.ledger().deterministic_columns().len(), 3);
    assert_eq!(oracle.ledger().deterministic_rows().len(), 3);
}
