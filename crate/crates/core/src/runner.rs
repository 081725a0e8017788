//! Subcommand implementations shared by the binary and the tests. Each command
//! writes its outputs plus a `manifest.json` into the output directory.

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use crate::channel::{ChannelSpec, Gdmmac};
use crate::error::{Error, Result};
use crate::figures::{figure, FigureId};
use crate::region::{RateAxis, RateTriple};
use crate::selfcheck::{run_checks, CheckReport};
use crate::sim::{simulate, SimConfig, SimulationReport};
use crate::sweep::{fmt_num, pareto_project, sweep, write_sweep_csv, Grid, NamedFamily, DEFAULT_STEP};

pub const MANIFEST_FILE: &str = "manifest.json";

/// Largest number of grid points a region sweep may evaluate by default.
pub const DEFAULT_REGION_BUDGET: u64 = 10_000_000;

/// Process exit code for an error: 2 for usage and configuration problems,
/// 1 for runtime, budget and invariant failures.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Domain { .. }
        | Error::Alphabet(_)
        | Error::UnknownVariable(_)
        | Error::OverlappingSets(_)
        | Error::MalformedChain(_)
        | Error::DimensionMismatch(_)
        | Error::Precondition(_)
        | Error::EmptyGrid(_)
        | Error::EmptyVariableSet
        | Error::Config(_)
        | Error::Json(_) => 2,
        Error::Distribution(_)
        | Error::MarkovViolation { .. }
        | Error::EmptyInput(_)
        | Error::BudgetExceeded { .. }
        | Error::CodebookSanity(_)
        | Error::Io(_) => 1,
    }
}

/// Record of one command run, sufficient to repeat it exactly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub config_path: Option<String>,
    pub outputs: Vec<String>,
    pub seed: Option<u64>,
    pub version: String,
    /// Seconds since the Unix epoch.
    pub timestamp: u64,
    /// Effective settings after flag overrides.
    pub settings: serde_json::Value,
}

impl RunManifest {
    fn new(command: &str, config_path: Option<&Path>, seed: Option<u64>, settings: serde_json::Value) -> Self {
        Self {
            command: command.to_string(),
            config_path: config_path.map(|p| p.display().to_string()),
            outputs: Vec::new(),
            seed,
            version: env!("CARGO_PKG_VERSION").to_string(),
            timestamp: SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0),
            settings,
        }
    }

    fn write(mut self, out: &Path) -> Result<Self> {
        self.outputs.push(MANIFEST_FILE.to_string());
        write_json(&out.join(MANIFEST_FILE), &self)?;
        Ok(self)
    }
}

/// Flags shared by the subcommands.
#[derive(Debug, Clone, Default)]
pub struct Options {
    pub config: Option<PathBuf>,
    pub out: PathBuf,
    pub seed: Option<u64>,
    pub grid_step: Option<f64>,
    pub budget: Option<u64>,
    pub figure: Option<String>,
    pub params: Option<String>,
}

/// Parses `"p1,p2,p3"`.
pub fn parse_params(s: &str) -> Result<[f64; 3]> {
    let vals: Vec<f64> = s
        .split(',')
        .map(|t| t.trim().parse::<f64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| Error::Config(format!("--params {s:?}: {e}")))?;
    <[f64; 3]>::try_from(vals).map_err(|v| Error::Config(format!("--params needs 3 values, got {}", v.len())))
}

fn read_config<T: for<'de> Deserialize<'de>>(path: Option<&Path>) -> Result<T> {
    let path = path.ok_or_else(|| Error::Config("--config is required".into()))?;
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("cannot read config {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Config(format!("config {}: {e}", path.display())))
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    serde_json::to_writer_pretty(&mut w, value)?;
    w.write_all(b"\n")?;
    w.flush()?;
    Ok(())
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(path)?))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GridSpec {
    Step { step: f64 },
    Axes { axes: Vec<Vec<f64>> },
}

/// Input of the `region` command.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RegionConfig {
    pub channel: ChannelSpec,
    pub family: NamedFamily,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridSpec>,
    /// Axis pairs `(x, y)` to project onto.
    #[serde(default = "default_projections")]
    pub projections: Vec<(RateAxis, RateAxis)>,
    /// Also emit the convex-hull boundary of each projection.
    #[serde(default)]
    pub hull: bool,
}

fn default_projections() -> Vec<(RateAxis, RateAxis)> {
    vec![(RateAxis::R23, RateAxis::R12)]
}

/// Sweeps a design family on a channel: `sweep.csv`, one projection CSV per
/// requested axis pair, and with `--figure fig6` the figure series for the
/// channel's crossovers (or `--params`).
pub fn cmd_region(opts: &Options) -> Result<RunManifest> {
    let mut cfg: RegionConfig = read_config(opts.config.as_deref())?;
    let channel: Gdmmac = cfg.channel.build().map_err(|e| Error::Config(e.to_string()))?;
    let dims = crate::sweep::DesignFamily::parameter_names(&cfg.family).len();
    if let Some(step) = opts.grid_step {
        cfg.grid = Some(GridSpec::Step { step });
    }
    let grid = match &cfg.grid {
        None => Grid::unit_half(dims, DEFAULT_STEP)?,
        Some(GridSpec::Step { step }) => Grid::unit_half(dims, *step)?,
        Some(GridSpec::Axes { axes }) => Grid::new(axes.clone())?,
    };
    let budget = opts.budget.unwrap_or(DEFAULT_REGION_BUDGET);
    if grid.len() as u64 > budget {
        return Err(Error::BudgetExceeded {
            cost: grid.len() as u128,
            budget: budget as u128,
        });
    }
    let points = sweep(&channel, &cfg.family, &grid)?;
    fs::create_dir_all(&opts.out)?;
    let mut manifest = RunManifest::new("region", opts.config.as_deref(), None, serde_json::to_value(&cfg)?);

    write_sweep_csv(create(&opts.out.join("sweep.csv"))?, dims, &points)?;
    manifest.outputs.push("sweep.csv".into());

    let triples: Vec<RateTriple> = points
        .iter()
        .filter(|p| p.evaluation.feasible)
        .flat_map(|p| p.evaluation.vertices())
        .collect();
    if !triples.is_empty() {
        for &(x, y) in &cfg.projections {
            let name = format!("projection_{}_{}.csv", x.label(), y.label());
            let mut w = create(&opts.out.join(&name))?;
            writeln!(w, "series,axis_x,axis_y,x,y")?;
            let mut kinds = vec![("staircase", false)];
            if cfg.hull {
                kinds.push(("hull", true));
            }
            for (series, hull) in kinds {
                for (px, py) in pareto_project(&triples, x, y, hull)? {
                    writeln!(w, "{series},{},{},{},{}", x.label(), y.label(), fmt_num(px), fmt_num(py))?;
                }
            }
            w.flush()?;
            manifest.outputs.push(name);
        }
    }

    if let Some(id) = &opts.figure {
        let id: FigureId = id.parse()?;
        let params = match (&opts.params, &cfg.channel) {
            (Some(p), _) => Some(parse_params(p)?),
            (None, ChannelSpec::BinarySum { p1, p2, p3 } | ChannelSpec::CorrelatedNoise { p1, p2, p3 }) => {
                Some([*p1, *p2, *p3])
            }
            _ => None,
        };
        manifest.outputs.extend(emit_figure(id, params, opts.grid_step, &opts.out)?);
    }
    manifest.write(&opts.out)
}

fn emit_figure(id: FigureId, params: Option<[f64; 3]>, step: Option<f64>, out: &Path) -> Result<Vec<String>> {
    let fig = figure(id, params, step)?;
    for note in &fig.notes {
        eprintln!("note: {note}");
    }
    let name = format!("{id}.csv");
    let mut w = create(&out.join(&name))?;
    fig.write_csv(&mut w)?;
    w.flush()?;
    Ok(vec![name])
}

/// Writes `<figure>.csv` for `--figure` with optional `--params` and `--grid-step`.
pub fn cmd_figure(opts: &Options) -> Result<RunManifest> {
    let id: FigureId = opts
        .figure
        .as_deref()
        .ok_or_else(|| Error::Config("--figure is required".into()))?
        .parse()?;
    let params = opts.params.as_deref().map(parse_params).transpose()?;
    fs::create_dir_all(&opts.out)?;
    let settings = serde_json::json!({
        "figure": id,
        "params": params.unwrap_or_else(|| id.default_params()),
        "grid_step": opts.grid_step.unwrap_or_else(|| id.default_step()),
    });
    let mut manifest = RunManifest::new("figure", None, None, settings);
    manifest.outputs.extend(emit_figure(id, params, opts.grid_step, &opts.out)?);
    manifest.write(&opts.out)
}

/// Runs a simulation config, writing `report.json`. `--seed` and `--budget`
/// override the config.
pub fn cmd_simulate(opts: &Options) -> Result<(RunManifest, SimulationReport)> {
    let mut cfg: SimConfig = read_config(opts.config.as_deref())?;
    if let Some(seed) = opts.seed {
        cfg.seed = seed;
    }
    if let Some(budget) = opts.budget {
        cfg.budget = budget;
    }
    let report = simulate(&cfg)?;
    fs::create_dir_all(&opts.out)?;
    write_json(&opts.out.join("report.json"), &report)?;
    let mut manifest = RunManifest::new("simulate", opts.config.as_deref(), Some(cfg.seed), serde_json::to_value(&cfg)?);
    manifest.outputs.push("report.json".into());
    Ok((manifest.write(&opts.out)?, report))
}

/// Runs the invariant suite; writes `check.json` when an output directory is given.
pub fn cmd_check(out: Option<&Path>, perturb: f64) -> Result<CheckReport> {
    let report = run_checks(perturb)?;
    if let Some(out) = out {
        fs::create_dir_all(out)?;
        write_json(&out.join("check.json"), &report)?;
        let mut manifest = RunManifest::new("check", None, None, serde_json::json!({ "perturb": perturb }));
        manifest.outputs.push("check.json".into());
        manifest.write(out)?;
    }
    Ok(report)
}
