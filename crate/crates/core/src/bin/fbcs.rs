use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};

use fbcs_core::harness::estimates::EstimateReport;
use fbcs_core::harness::report::{read_jsonl, summarize_jsonl, write_estimate_csv, write_jsonl};
use fbcs_core::harness::{self, tolerances, RunConfig, Scenario};
use fbcs_core::Convention;

#[derive(Parser)]
#[command(name = "fbcs", version, about = "Fractional Boussinesq-Coriolis simulator and verification lab")]
struct Cli {
    /// TOML run configuration; defaults are used for missing keys.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    out_dir: Option<PathBuf>,
    /// Matrix-entry convention of the closed-form semigroup.
    #[arg(long, global = true)]
    convention: Option<Convention>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one scenario and write the archive, norms and report.
    Simulate {
        #[arg(long)]
        scenario: Option<Scenario>,
    },
    /// Run an estimate suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        /// Samples for the symbol sweep.
        #[arg(long, default_value_t = tolerances::SYMBOL_SAMPLES)]
        samples: usize,
    },
    /// Parameter sweep over the uniformity band plus continuous dependence.
    Sweep,
    /// Summarize JSON-lines reports in a file or directory.
    Report { path: PathBuf },
    /// Print the effective configuration as TOML.
    Config,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Symbols,
    Semigroup,
    Zeta,
    Bilinear,
    Lemmas,
    All,
}

fn load_config(cli: &Cli) -> anyhow::Result<RunConfig> {
    let mut cfg = match &cli.config {
        Some(p) => RunConfig::load(p).with_context(|| format!("reading {}", p.display()))?,
        None => RunConfig::default(),
    };
    if let Some(s) = cli.seed {
        cfg.seed = s;
    }
    if let Some(d) = &cli.out_dir {
        cfg.out_dir = d.clone();
    }
    if let Some(c) = cli.convention {
        cfg.convention = c;
    }
    Ok(cfg)
}

fn print_estimates(reports: &[EstimateReport]) {
    for r in reports {
        println!(
            "{:<10} C = {:.6e}  coarse = {:.6e}  drift = {:.3e}  {}",
            r.id.to_string(),
            r.constant,
            r.coarse_constant,
            r.drift,
            if r.passed() { "pass" } else { "FAIL" }
        );
    }
}

fn verify(cfg: &RunConfig, suite: Suite, samples: usize) -> anyhow::Result<bool> {
    std::fs::create_dir_all(&cfg.out_dir)?;
    if let Suite::Symbols = suite {
        let r = harness::symbol_oracle_sweep(samples, cfg.seed, cfg.convention)?;
        let ok = r.max_error <= tolerances::SYMBOL_ORACLE;
        println!(
            "symbols    convention = {:?}  samples = {}  max error = {:.3e}  {:.1} s  {}",
            r.convention,
            r.samples,
            r.max_error,
            r.seconds,
            if ok { "pass" } else { "FAIL" }
        );
        write_jsonl(&cfg.out_dir.join("symbols.jsonl"), &[r])?;
        return Ok(ok);
    }
    let reports = match suite {
        Suite::Semigroup => harness::verify_semigroup_estimates(cfg)?,
        Suite::Zeta => harness::verify_zeta_estimates(cfg)?,
        Suite::Bilinear => vec![harness::verify_bilinear_estimate(cfg)?],
        Suite::Lemmas => harness::verify_lemma_properties(cfg)?,
        Suite::All => harness::verify_all(cfg)?,
        Suite::Symbols => unreachable!(),
    };
    print_estimates(&reports);
    write_jsonl(&cfg.out_dir.join("estimates.jsonl"), &reports)?;
    write_estimate_csv(&cfg.out_dir.join("estimates.csv"), &reports)?;
    Ok(reports.iter().all(|r| r.passed()))
}

fn report(path: &Path) -> anyhow::Result<()> {
    let files: Vec<PathBuf> = if path.is_dir() {
        let mut v: Vec<PathBuf> = std::fs::read_dir(path)?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "jsonl"))
            .collect();
        v.sort();
        v
    } else {
        vec![path.to_path_buf()]
    };
    if files.is_empty() {
        bail!("no .jsonl reports under {}", path.display());
    }
    for f in files {
        println!("# {}", f.display());
        for line in summarize_jsonl(&read_jsonl(&f)?) {
            println!("{line}");
        }
    }
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    let mut cfg = load_config(&cli)?;
    match cli.command {
        Command::Simulate { scenario } => {
            if let Some(s) = scenario {
                cfg.scenario = s;
            }
            let (outcome, files) = harness::run_scenario(&cfg)?;
            match &outcome.report {
                Some(r) => println!(
                    "converged in {} iterations: ||y|| = {:.6e}, final = {:.6e}, K = {:.4e}, cross-check = {:.3e}",
                    r.iterates.len(),
                    r.y_norm,
                    r.final_norm,
                    r.k_emp,
                    outcome.cross_check.unwrap_or(f64::NAN)
                ),
                None => println!("no convergence; distances {:?}", outcome.failed_distances),
            }
            println!("report: {}", files.report.display());
            Ok(outcome.converged)
        }
        Command::Verify { suite, samples } => verify(&cfg, suite, samples),
        Command::Sweep => {
            let (summaries, dep, path) = harness::run_sweep(&cfg)?;
            for s in &summaries {
                println!(
                    "runs = {}  all converged = {}  common bound = {:.6e}  spread = {:.3e}",
                    s.runs.len(),
                    s.all_converged,
                    s.common_bound,
                    s.spread
                );
            }
            if let Some(d) = &dep {
                println!("dependence ratio = {:.6}  bound = {:.6}  holds = {}", d.ratio, d.bound, d.holds);
            }
            println!("report: {}", path.display());
            Ok(summaries.iter().all(|s| s.all_converged) && dep.map_or(true, |d| d.holds))
        }
        Command::Report { path } => report(&path).map(|_| true),
        Command::Config => {
            print!("{}", cfg.to_toml()?);
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
