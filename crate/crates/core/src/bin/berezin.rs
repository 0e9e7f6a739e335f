//! Batch CLI: build/verify irreps, run defect sweeps, cross-validate the
//! quadrature against Monte Carlo, and print dimension-growth tables.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use berezin::harness::{self, ExperimentConfig};
use berezin::irrep::{verify_irrep, Irrep};
use berezin::lie::{build_cartan_weyl, build_root_system};

#[derive(Copy, Clone, Debug, ValueEnum)]
enum Sign {
    Theorem,
    Liepbr,
}

#[derive(Parser)]
#[command(name = "berezin", about = "Berezin quantization defect harness")]
struct Cli {
    /// Experiment configuration (JSON).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory for reports and the irrep cache.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// RNG seed override.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads (0 = default).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    /// Poisson sign convention override.
    #[arg(long, global = true, value_enum)]
    sign: Option<Sign>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build, verify and cache the irreps for every configured k.
    Irrep,
    /// Run the full defect sweep and write CSV/JSON reports.
    Sweep,
    /// Cross-validate quantization against brute-force Monte Carlo.
    Xval {
        /// Monte Carlo sample count.
        #[arg(long, default_value_t = 1_000_000)]
        samples: usize,
    },
    /// Dimension-growth table and fitted exponent.
    Dims,
}

fn load_config(cli: &Cli) -> berezin::Result<ExperimentConfig> {
    let path = cli
        .config
        .as_ref()
        .ok_or_else(|| berezin::Error::Config("--config is required".into()))?;
    let mut cfg = ExperimentConfig::from_file(path)?;
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    if let Some(sign) = cli.sign {
        cfg.sign_convention = match sign {
            Sign::Theorem => "theorem".into(),
            Sign::Liepbr => "liepbr".into(),
        };
    }
    Ok(cfg)
}

fn run(cli: &Cli) -> berezin::Result<bool> {
    if cli.threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global()
            .map_err(|e| berezin::Error::Config(format!("thread pool: {e}")))?;
    }
    let cfg = load_config(cli)?;
    let cache_dir = cli.out.as_ref().map(|d| d.join("cache"));
    match &cli.command {
        Command::Irrep => {
            let rs = build_root_system(cfg.group.series.chars().next().unwrap(), cfg.group.rank)?;
            let cw = build_cartan_weyl(&rs);
            let mut ok = true;
            for &k in &cfg.k_values {
                let rep: Irrep = harness::cached_irrep(&cw, &cfg, k, cache_dir.as_deref())?;
                let report = verify_irrep(&cw, &rep);
                let pass = report.dimension_match && report.max_residual() < 1e-8;
                ok &= pass;
                println!(
                    "k={k} dim={} expected={} max_residual={:.3e} {}",
                    report.dim,
                    report.expected_dim,
                    report.max_residual(),
                    if pass { "ok" } else { "FAIL" }
                );
            }
            Ok(ok)
        }
        Command::Sweep => {
            let report = harness::run_sweep(&cfg, cache_dir.as_deref())?;
            if let Some(dir) = &cli.out {
                report.write(dir, "sweep")?;
            }
            print!("{}", report.to_csv());
            for (name, fit) in &report.fits {
                println!(
                    "fit {name}: slope={:.4} r2={:.4}{}",
                    fit.slope,
                    fit.r2,
                    fit.flag.as_deref().map(|f| format!(" [{f}]")).unwrap_or_default()
                );
            }
            Ok(report.all_valid())
        }
        Command::Xval { samples } => {
            let report = harness::cross_validate(&cfg, *samples)?;
            if let Some(dir) = &cli.out {
                std::fs::create_dir_all(dir)?;
                std::fs::write(dir.join("xval.json"), serde_json::to_string_pretty(&report)?)?;
            }
            let mut ok = true;
            for r in &report.rows {
                ok &= r.pass;
                println!(
                    "k={} dim={} samples={} max_dev={:.3e} max_sigma_ratio={:.2} {}",
                    r.k,
                    r.dim,
                    r.samples,
                    r.max_deviation,
                    r.max_sigma_ratio,
                    if r.pass { "ok" } else { "FAIL" }
                );
            }
            Ok(ok)
        }
        Command::Dims => {
            let (table, fit) = harness::dims_table(&cfg)?;
            println!("k,dim");
            for (k, d) in &table {
                println!("{k},{d}");
            }
            println!(
                "fitted exponent: {:.4} (r2={:.4}{})",
                fit.slope,
                fit.r2,
                fit.flag.as_deref().map(|f| format!(", {f}")).unwrap_or_default()
            );
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
