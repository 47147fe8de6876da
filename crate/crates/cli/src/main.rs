//! Command-line driver for the recovery experiments.
//!
//! Subcommands: `gen` writes low-rank instances, `psi` measures sparsity
//! and coherence of a matrix file, `run` executes seeded trials of one
//! algorithm and emits CSV, `compare` tabulates several algorithms over
//! shared instances, and `replay-paper` prints the scripted walkthrough.
//! CSV goes to `--out` or stdout; human summaries go to stderr.

use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use matcomp_cli::experiment::{
    compare_algorithms, csv_lines, render_comparison, render_summary, run_experiment, Algo,
    ExperimentConfig, InstanceSource,
};
use matcomp_cli::replay;
use matcomp_core::{
    format_matrix, generate, nonsparsity_subspace, numeric_rank, read_matrix, write_matrix,
    AlgoConfig, GenSpec, SubspaceBasis, RANK_REL_TOL,
};

#[derive(Parser)]
#[command(name = "matcomp", version, about = "Adaptive exact low-rank matrix completion")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random low-rank matrix and write it as a matrix file.
    Gen(GenArgs),
    /// Print nonsparsity, sparsity, and coherence of a matrix file.
    Psi(PsiArgs),
    /// Run seeded recovery trials of one algorithm and emit CSV records.
    Run(RunArgs),
    /// Run several algorithms over shared instances and print a table.
    Compare(CompareArgs),
    /// Replay the scripted 6x4 walkthrough and print its observation mask.
    ReplayPaper,
}

#[derive(Args)]
struct GenArgs {
    /// Row count.
    #[arg(long)]
    m: usize,
    /// Column count.
    #[arg(long)]
    n: usize,
    /// Target rank.
    #[arg(long)]
    rank: usize,
    /// Plant a column-space vector of exactly this support size.
    #[arg(long)]
    psi_u: Option<usize>,
    /// Plant a row-space vector of exactly this support size.
    #[arg(long)]
    psi_v: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct PsiArgs {
    #[arg(long)]
    matrix_file: PathBuf,
}

#[derive(Args)]
struct RunArgs {
    /// Recovery algorithm to run.
    #[arg(long, value_enum)]
    algo: Algo,
    #[command(flatten)]
    trial: TrialArgs,
}

#[derive(Args)]
struct CompareArgs {
    /// Algorithms to compare; repeat the flag. Defaults to all three.
    #[arg(long, value_enum)]
    algo: Vec<Algo>,
    #[command(flatten)]
    trial: TrialArgs,
}

#[derive(Args)]
struct TrialArgs {
    /// Rows of generated instances. Conflicts with --matrix-file.
    #[arg(long)]
    m: Option<usize>,
    /// Columns of generated instances. Conflicts with --matrix-file.
    #[arg(long)]
    n: Option<usize>,
    /// True rank of the instances; inferred for --matrix-file when omitted.
    #[arg(long)]
    rank: Option<usize>,
    /// Column-space nonsparsity; defaults to m-rank+1 for generated
    /// instances, and to support enumeration for small matrix files.
    #[arg(long)]
    psi_u: Option<usize>,
    /// Row-space nonsparsity; defaults like --psi-u with n in place of m.
    #[arg(long)]
    psi_v: Option<usize>,
    /// Failure probability budget, in (0, 1).
    #[arg(long, default_value_t = 0.1)]
    epsilon: f64,
    /// Sweep delay budget for the repeated-sweep algorithm.
    #[arg(long = "T", default_value_t = 1)]
    t_delay: usize,
    /// Override the per-column probe count.
    #[arg(long)]
    d: Option<usize>,
    #[arg(long, default_value_t = 1)]
    trials: usize,
    /// Master seed; instance and sampler seeds are derived per trial.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Run on this matrix file instead of generated instances.
    #[arg(long)]
    matrix_file: Option<PathBuf>,
    /// CSV output path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Stop probing once the configured rank has been detected.
    #[arg(long)]
    early_exit: bool,
}

fn main() -> Result<()> {
    match Cli::parse().command {
        Command::Gen(args) => cmd_gen(args),
        Command::Psi(args) => cmd_psi(args),
        Command::Run(args) => cmd_run(args),
        Command::Compare(args) => cmd_compare(args),
        Command::ReplayPaper => cmd_replay(),
    }
}

fn cmd_gen(args: GenArgs) -> Result<()> {
    let spec = GenSpec {
        m: args.m,
        n: args.n,
        r: args.rank,
        psi_u_target: args.psi_u,
        psi_v_target: args.psi_v,
        seed: args.seed,
    };
    let mat = generate(&spec)?;
    match &args.out {
        Some(path) => {
            write_matrix(path, &mat)
                .with_context(|| format!("writing {}", path.display()))?;
            eprintln!("wrote {}x{} rank-{} matrix to {}", args.m, args.n, args.rank, path.display());
        }
        None => print!("{}", format_matrix(&mat)),
    }
    Ok(())
}

fn cmd_psi(args: PsiArgs) -> Result<()> {
    let mat = read_matrix(&args.matrix_file)
        .with_context(|| format!("reading {}", args.matrix_file.display()))?;
    let spaces = [
        ("column space", SubspaceBasis::column_space(&mat, RANK_REL_TOL)?),
        ("row space", SubspaceBasis::row_space(&mat, RANK_REL_TOL)?),
    ];
    for (label, basis) in &spaces {
        let psi = nonsparsity_subspace(basis, RANK_REL_TOL)?;
        println!(
            "{label}: ambient {}, dim {}, nonsparsity {}, sparsity {}, coherence {}",
            basis.ambient_dim(),
            basis.dim(),
            psi,
            basis.ambient_dim() - psi,
            basis.coherence()?
        );
    }
    Ok(())
}

/// Turn the shared trial flags into an instance source and algorithm
/// config, filling nonsparsity defaults and validating everything that can
/// fail before the first trial.
fn resolve_trial_args(args: &TrialArgs) -> Result<(InstanceSource, AlgoConfig)> {
    let (source, m, n, rank, psi_u, psi_v) = if let Some(path) = &args.matrix_file {
        if args.m.is_some() || args.n.is_some() {
            bail!("--m/--n conflict with --matrix-file; the file fixes the shape");
        }
        let truth = read_matrix(path).with_context(|| format!("reading {}", path.display()))?;
        let (m, n) = (truth.nrows(), truth.ncols());
        let rank = match args.rank {
            Some(r) => r,
            None => numeric_rank(&truth, RANK_REL_TOL),
        };
        if rank == 0 {
            bail!("{} holds a zero matrix; nothing to recover", path.display());
        }
        let psi_u = match args.psi_u {
            Some(p) => p,
            None => nonsparsity_subspace(&SubspaceBasis::column_space(&truth, RANK_REL_TOL)?, RANK_REL_TOL)
                .context("pass --psi-u explicitly; the column space is too large to enumerate")?,
        };
        let psi_v = match args.psi_v {
            Some(p) => p,
            None => nonsparsity_subspace(&SubspaceBasis::row_space(&truth, RANK_REL_TOL)?, RANK_REL_TOL)
                .context("pass --psi-v explicitly; the row space is too large to enumerate")?,
        };
        (InstanceSource::Fixed(truth), m, n, rank, psi_u, psi_v)
    } else {
        let m = args.m.context("--m is required without --matrix-file")?;
        let n = args.n.context("--n is required without --matrix-file")?;
        let rank = args.rank.context("--rank is required without --matrix-file")?;
        if rank == 0 || rank > m.min(n) {
            bail!("--rank must lie in 1..=min(m, n)");
        }
        // Generic factors leave every nonzero combination at full support,
        // so the defaults are the generic nonsparsity values.
        let psi_u = args.psi_u.unwrap_or(m - rank + 1);
        let psi_v = args.psi_v.unwrap_or(n - rank + 1);
        let spec = GenSpec {
            m,
            n,
            r: rank,
            psi_u_target: args.psi_u,
            psi_v_target: args.psi_v,
            seed: 0,
        };
        spec.validate()?;
        (InstanceSource::Generated(spec), m, n, rank, psi_u, psi_v)
    };

    let mut config = AlgoConfig::new(rank, psi_u, psi_v);
    config.epsilon = args.epsilon;
    config.t_delay = args.t_delay;
    config.d_override = args.d;
    config.early_exit = args.early_exit;
    config.validate_for(m, n)?;
    Ok((source, config))
}

fn cmd_run(args: RunArgs) -> Result<()> {
    let (source, algo_config) = resolve_trial_args(&args.trial)?;
    let config = ExperimentConfig {
        algo: args.algo,
        source,
        algo_config,
        trials: args.trial.trials,
        master_seed: args.trial.seed,
    };
    let summary = run_experiment(&config)?;
    let csv = csv_lines(&summary.records);
    match &args.trial.out {
        Some(path) => {
            std::fs::write(path, &csv).with_context(|| format!("writing {}", path.display()))?
        }
        None => print!("{csv}"),
    }
    eprint!("{}", render_summary(&config, &summary));
    Ok(())
}

fn cmd_compare(args: CompareArgs) -> Result<()> {
    let (source, algo_config) = resolve_trial_args(&args.trial)?;
    if args.trial.out.is_some() {
        bail!("--out applies to run; compare prints its table to stdout");
    }
    let algos = if args.algo.is_empty() {
        vec![Algo::Hn2016, Algo::Erre, Algo::Erei]
    } else {
        args.algo.clone()
    };
    let configs: Vec<ExperimentConfig> = algos
        .iter()
        .map(|&algo| ExperimentConfig {
            algo,
            source: source.clone(),
            algo_config: algo_config.clone(),
            trials: args.trial.trials,
            master_seed: args.trial.seed,
        })
        .collect();
    let rows = compare_algorithms(&configs)?;
    println!(
        "{} trials per algorithm, master seed {}",
        args.trial.trials, args.trial.seed
    );
    print!("{}", render_comparison(&rows));
    Ok(())
}

fn cmd_replay() -> Result<()> {
    let report = replay::run_walkthrough()?;
    print!("{}", replay::render(&report));
    Ok(())
}
