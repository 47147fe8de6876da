//! Seeded Monte-Carlo trials and cross-algorithm comparisons.
//!
//! A trial builds a fresh oracle over its instance, runs one algorithm, and
//! audits the estimate against the harness's own copy of the truth, a
//! channel the algorithms cannot reach. Everything is a pure function of
//! the experiment config: instance and algorithm seeds are derived from the
//! master seed per trial, so rerunning a config reproduces the records
//! (wall-clock timings aside) byte for byte.

use std::time::Instant;

use matcomp_core::{
    erei_bound, erre_bound, erre_failure_prob, frobenius_close, generate, hn2016_obs_cap,
    run_erei, run_erre, run_hn2016, AlgoConfig, DMatrix, EntryOracle, Error, GenSpec,
    RecoveryResult, Result, EXACT_REL_TOL,
};

/// Which recovery algorithm a config drives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Algo {
    Hn2016,
    Erre,
    Erei,
}

impl Algo {
    pub fn name(self) -> &'static str {
        match self {
            Algo::Hn2016 => "hn2016",
            Algo::Erre => "erre",
            Algo::Erei => "erei",
        }
    }
}

/// Where each trial's ground truth comes from: freshly generated per trial
/// seed, or one fixed matrix shared by all trials.
#[derive(Debug, Clone, PartialEq)]
pub enum InstanceSource {
    Generated(GenSpec),
    Fixed(DMatrix<f64>),
}

impl InstanceSource {
    fn realize(&self, instance_seed: u64) -> Result<DMatrix<f64>> {
        match self {
            InstanceSource::Generated(spec) => {
                let spec = GenSpec {
                    seed: instance_seed,
                    ..spec.clone()
                };
                generate(&spec)
            }
            InstanceSource::Fixed(mat) => Ok(mat.clone()),
        }
    }
}

/// One full experiment: an algorithm, an instance source, and trial count.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub algo: Algo,
    pub source: InstanceSource,
    pub algo_config: AlgoConfig,
    pub trials: usize,
    pub master_seed: u64,
}

/// Everything measured about one trial; one CSV row.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialRecord {
    pub trial: usize,
    pub seed: u64,
    pub success: bool,
    pub estimated_rank: usize,
    pub total_obs: usize,
    pub det_obs: usize,
    pub rand_obs: usize,
    pub bound: f64,
    pub within_bound: bool,
    pub wall_time_s: f64,
}

pub const CSV_HEADER: &str =
    "trial,seed,success,estimated_rank,total_obs,det_obs,rand_obs,bound,within_bound,wall_time_s";

impl TrialRecord {
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{:.6}",
            self.trial,
            self.seed,
            self.success,
            self.estimated_rank,
            self.total_obs,
            self.det_obs,
            self.rand_obs,
            self.bound,
            self.within_bound,
            self.wall_time_s
        )
    }
}

/// Records plus the aggregates the text summary prints.
#[derive(Debug, Clone)]
pub struct ExperimentSummary {
    pub records: Vec<TrialRecord>,
    pub failure_rate: f64,
    pub failure_budget: f64,
    pub mean_total: f64,
    pub median_total: f64,
    pub bound_violations: usize,
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E3779B97F4A7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D049BB133111EB);
    x ^ (x >> 31)
}

/// Per-trial seed stream: lane 0 feeds instance generation, lane 1 feeds
/// the algorithm's sampler, so the two never alias.
pub fn derive_seed(master_seed: u64, trial: usize, lane: u64) -> u64 {
    splitmix64(master_seed ^ splitmix64((trial as u64) * 2 + lane))
}

fn run_algo(
    algo: Algo,
    oracle: &mut EntryOracle,
    config: &AlgoConfig,
) -> Result<RecoveryResult> {
    match algo {
        Algo::Hn2016 => run_hn2016(oracle, config),
        Algo::Erre => run_erre(oracle, config),
        Algo::Erei => run_erei(oracle, config),
    }
}

/// The observation ceiling a trial is judged against.
fn bound_for(algo: Algo, config: &AlgoConfig, m: usize, n: usize) -> f64 {
    match algo {
        Algo::Erei => erei_bound(m, n, config.rank, config.psi_u, config.psi_v, config.epsilon),
        Algo::Erre => erre_bound(
            m,
            n,
            config.rank,
            config.psi_u,
            config.psi_v,
            config.epsilon,
            config.t_delay,
        ),
        // The single-pass baseline has no distribution-free ceiling beyond
        // its structure: all probes plus the columns it may observe fully.
        Algo::Hn2016 => {
            hn2016_obs_cap(m, n, config.rank, matcomp_core::hn2016_effective_budget(config, m))
                as f64
        }
    }
}

fn failure_budget_for(algo: Algo, config: &AlgoConfig, m: usize) -> f64 {
    match algo {
        Algo::Erre => erre_failure_prob(m, config.psi_u, config.psi_v, config.epsilon, config.t_delay),
        Algo::Erei | Algo::Hn2016 => config.epsilon,
    }
}

fn median(sorted: &[f64]) -> f64 {
    let n = sorted.len();
    if n == 0 {
        return f64::NAN;
    }
    if n % 2 == 1 {
        sorted[n / 2]
    } else {
        (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0
    }
}

/// Run all trials of one config. Each trial audits three ways: the
/// estimate is compared against the harness's own truth copy, the reported
/// observation total must match the oracle ledger, and the total is
/// checked against the algorithm's ceiling.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentSummary> {
    if config.trials == 0 {
        return Err(Error::InvalidParameter("trials must be at least 1".into()));
    }
    let mut records = Vec::with_capacity(config.trials);
    for trial in 0..config.trials {
        let instance_seed = derive_seed(config.master_seed, trial, 0);
        let algo_seed = derive_seed(config.master_seed, trial, 1);
        let truth = config.source.realize(instance_seed)?;
        let (m, n) = (truth.nrows(), truth.ncols());

        let algo_config = AlgoConfig {
            seed: algo_seed,
            ..config.algo_config.clone()
        };
        let mut oracle = EntryOracle::new(truth.clone())?;
        let start = Instant::now();
        let result = run_algo(config.algo, &mut oracle, &algo_config)?;
        let wall_time_s = start.elapsed().as_secs_f64();

        if result.stats.total != oracle.ledger().total() {
            return Err(Error::InvalidParameter(format!(
                "trial {trial}: result reports {} observations, ledger holds {}",
                result.stats.total,
                oracle.ledger().total()
            )));
        }
        let success = frobenius_close(&result.estimate, &truth, EXACT_REL_TOL);
        let bound = bound_for(config.algo, &algo_config, m, n);
        records.push(TrialRecord {
            trial,
            seed: algo_seed,
            success,
            estimated_rank: result.estimated_rank,
            total_obs: result.stats.total,
            det_obs: result.stats.deterministic,
            rand_obs: result.stats.random,
            bound,
            within_bound: (result.stats.total as f64) <= bound,
            wall_time_s,
        });
    }

    let failures = records.iter().filter(|r| !r.success).count();
    let mut totals: Vec<f64> = records.iter().map(|r| r.total_obs as f64).collect();
    totals.sort_by(f64::total_cmp);
    let mean_total = totals.iter().sum::<f64>() / totals.len() as f64;
    let sample_m = match &config.source {
        InstanceSource::Generated(spec) => spec.m,
        InstanceSource::Fixed(mat) => mat.nrows(),
    };
    Ok(ExperimentSummary {
        failure_rate: failures as f64 / records.len() as f64,
        failure_budget: failure_budget_for(config.algo, &config.algo_config, sample_m),
        mean_total,
        median_total: median(&totals),
        bound_violations: records.iter().filter(|r| !r.within_bound).count(),
        records,
    })
}

pub fn csv_lines(records: &[TrialRecord]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for record in records {
        out.push_str(&record.csv_row());
        out.push('\n');
    }
    out
}

/// Human summary printed after the CSV is written.
pub fn render_summary(config: &ExperimentConfig, summary: &ExperimentSummary) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "algo={} trials={} master_seed={}\n",
        config.algo.name(),
        config.trials,
        config.master_seed
    ));
    out.push_str(&format!(
        "empirical failure rate {:.4} vs budget {:.4}{}\n",
        summary.failure_rate,
        summary.failure_budget,
        if summary.failure_rate > summary.failure_budget {
            "  (EXCEEDED)"
        } else {
            ""
        }
    ));
    out.push_str(&format!(
        "observations: mean {:.1}, median {:.1}; bound violations {}/{}\n",
        summary.mean_total,
        summary.median_total,
        summary.bound_violations,
        summary.records.len()
    ));
    out
}

/// One algorithm's aggregates over the shared instance stream.
#[derive(Debug, Clone)]
pub struct ComparisonRow {
    pub algo: Algo,
    pub failure_rate: f64,
    pub mean_total: f64,
    pub median_total: f64,
}

/// Run several configs over identical instances and tabulate them.
///
/// The configs must agree on instance source, trial count, and master
/// seed; with those pinned, trial t sees the same ground truth under every
/// algorithm, so the totals are comparable draw by draw.
pub fn compare_algorithms(configs: &[ExperimentConfig]) -> Result<Vec<ComparisonRow>> {
    let first = configs
        .first()
        .ok_or_else(|| Error::InvalidParameter("no experiment configs given".into()))?;
    for config in &configs[1..] {
        if config.source != first.source
            || config.trials != first.trials
            || config.master_seed != first.master_seed
        {
            return Err(Error::InvalidParameter(
                "comparison configs must share instance source, trials, and master seed".into(),
            ));
        }
    }
    let mut rows = Vec::with_capacity(configs.len());
    for config in configs {
        let summary = run_experiment(config)?;
        rows.push(ComparisonRow {
            algo: config.algo,
            failure_rate: summary.failure_rate,
            mean_total: summary.mean_total,
            median_total: summary.median_total,
        });
    }
    Ok(rows)
}

pub fn render_comparison(rows: &[ComparisonRow]) -> String {
    let mut out = String::from("algo     failure_rate  mean_obs  median_obs\n");
    for row in rows {
        out.push_str(&format!(
            "{:<8} {:>12.4} {:>9.1} {:>11.1}\n",
            row.algo.name(),
            row.failure_rate,
            row.mean_total,
            row.median_total
        ));
    }
    out
}
