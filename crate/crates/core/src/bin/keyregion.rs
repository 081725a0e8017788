use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use keyregion::runner::{self, exit_code, Options};

#[derive(Parser)]
#[command(name = "keyregion", version, about = "Pairwise secret-key rate regions and coding simulations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep a design family on a channel and project the region.
    Region(Flags),
    /// Emit the data series of a figure panel.
    Figure(Flags),
    /// Run a Monte-Carlo coding simulation.
    Simulate(Flags),
    /// Run the invariant self-check suite.
    Check(Flags),
}

#[derive(Args)]
struct Flags {
    /// JSON configuration file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory [default: keyregion-out; `check` writes nothing unless given].
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    grid_step: Option<f64>,
    #[arg(long)]
    budget: Option<u64>,
    /// fig6, fig9a, fig9b or fig9c.
    #[arg(long)]
    figure: Option<String>,
    /// Crossover triple "p1,p2,p3".
    #[arg(long)]
    params: Option<String>,
    /// Offset added to closed-form references (mutation testing of `check`).
    #[arg(long, hide = true, default_value_t = 0.0)]
    perturb: f64,
}

impl Flags {
    fn out_dir(&self) -> PathBuf {
        self.out.clone().unwrap_or_else(|| PathBuf::from("keyregion-out"))
    }

    fn options(&self) -> Options {
        Options {
            config: self.config.clone(),
            out: self.out_dir(),
            seed: self.seed,
            grid_step: self.grid_step,
            budget: self.budget,
            figure: self.figure.clone(),
            params: self.params.clone(),
        }
    }
}

fn configure_threads() -> anyhow::Result<()> {
    if let Ok(v) = std::env::var("KEYREGION_THREADS") {
        let n: usize = v.parse().with_context(|| format!("KEYREGION_THREADS={v:?} is not a count"))?;
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}

fn run(cli: Cli) -> keyregion::Result<ExitCode> {
    match cli.command {
        Command::Region(f) => {
            let m = runner::cmd_region(&f.options())?;
            println!("wrote {} to {}", m.outputs.join(", "), f.out_dir().display());
        }
        Command::Figure(f) => {
            let m = runner::cmd_figure(&f.options())?;
            println!("wrote {} to {}", m.outputs.join(", "), f.out_dir().display());
        }
        Command::Simulate(f) => {
            let (_, r) = runner::cmd_simulate(&f.options())?;
            println!(
                "errors u1={:.4} u2={:.4} u3={:.4}; leakage bits k12={:?} k13={:?} k23={:?}; {} trials in {} ms",
                r.errors.u1,
                r.errors.u2,
                r.errors.u3,
                r.leakage_bits.k12,
                r.leakage_bits.k13,
                r.leakage_bits.k23,
                r.trials,
                r.runtime_ms
            );
        }
        Command::Check(f) => {
            let report = runner::cmd_check(f.out.as_deref(), f.perturb)?;
            for c in &report.results {
                println!(
                    "{} {}: observed {:.3e}, tolerated {:.1e} ({})",
                    if c.passed { "PASS" } else { "FAIL" },
                    c.name,
                    c.observed,
                    c.tolerance,
                    c.detail
                );
            }
            if !report.passed() {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
