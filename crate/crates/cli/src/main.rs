use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use magnochain::config::{load_config, to_json, ConfigFile};
use magnochain::dynamics::{build_drift, stability, Rwa};
use magnochain::model::ChainParams;
use magnochain::sweep::{
    boundary_table, evaluate_point, record_table, run_sweep, spectrum_table, write_csv, write_json,
    Axis, Cell, EvalOptions, Recipe, SweepSpec, Table,
};
use magnochain::{presets, Error, Result, TWO_PI};

/// Optical–microwave entanglement and teleportation through an
/// optomagnomechanical chain.
#[derive(Parser)]
#[command(name = "magnochain", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a single parameter point (or its output spectrum).
    Point {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        eval: EvalArgs,
        /// Dump the optical–microwave covariance over MIN_HZ:MAX_HZ:POINTS instead.
        #[arg(long, value_name = "MIN_HZ:MAX_HZ:POINTS")]
        spectrum: Option<String>,
        #[command(flatten)]
        output: Output,
    },
    /// Run a grid sweep.
    Sweep {
        #[command(flatten)]
        source: Source,
        /// coop_plane, magnon_scan, filter_scan, temperature_scan, efficiency_scan,
        /// disk_plane, benchmark, steering_scan or custom.
        #[arg(long, default_value = "custom")]
        recipe: String,
        /// NAME:MIN:MAX:POINTS[:log]; replaces the recipe's default axes.
        #[arg(long = "axis")]
        axes: Vec<String>,
        #[command(flatten)]
        eval: EvalArgs,
        #[command(flatten)]
        output: Output,
    },
    /// Drift eigenvalues, or the C_ab instability boundary over a C_mc range.
    Stability {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_name = "MIN:MAX:POINTS[:log]")]
        cmc: Option<String>,
        #[command(flatten)]
        output: Output,
    },
    /// Fidelity versus negativity for two-mode squeezed resources.
    Benchmark {
        #[command(flatten)]
        output: Output,
    },
    /// List presets, or print one as a config file.
    Presets {
        #[arg(long)]
        show: Option<String>,
    },
}

#[derive(Args)]
struct Source {
    /// JSON parameter file.
    #[arg(long, conflicts_with = "preset")]
    config: Option<PathBuf>,
    #[arg(long)]
    preset: Option<String>,
}

impl Source {
    fn params(&self) -> Result<ChainParams> {
        if let Some(path) = &self.config {
            return Ok(load_config(path)?.params);
        }
        let name = self.preset.as_deref().unwrap_or("table1");
        presets::by_name(name)
            .ok_or_else(|| config_error("preset", format!("unknown preset `{name}`")))
    }
}

#[derive(Args)]
struct EvalArgs {
    /// Optimise the receiver phase and report the teleportation fidelity.
    #[arg(long)]
    fidelity: bool,
    /// Report Gaussian steering in both directions.
    #[arg(long)]
    steering: bool,
    #[arg(long)]
    filter_center_hz: Option<f64>,
    /// Gaussian detection filter width; omitted means a single sideband pair.
    #[arg(long)]
    filter_bandwidth_hz: Option<f64>,
    /// Keep the magnon–phonon counter-rotating terms.
    #[arg(long)]
    no_rwa: bool,
}

impl EvalArgs {
    fn options(&self, mut o: EvalOptions) -> Result<EvalOptions> {
        if let Some(w) = self.filter_bandwidth_hz {
            if w.is_nan() || w <= 0.0 {
                return Err(config_error("filter_bandwidth_hz", "must be > 0"));
            }
            o.filter_bandwidth = Some(TWO_PI * w);
        }
        if let Some(c) = self.filter_center_hz {
            o.filter_center = Some(TWO_PI * c);
        }
        o.fidelity |= self.fidelity;
        o.steering |= self.steering;
        if self.no_rwa {
            o.rwa = Rwa::Off;
        }
        Ok(o)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct Output {
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Worker threads (default: all cores).
    #[arg(long)]
    jobs: Option<usize>,
}

impl Output {
    fn emit(&self, table: &Table) -> Result<()> {
        let io_err = |e: io::Error| Error::Io(e.to_string());
        let sink: Box<dyn Write> = match &self.out {
            Some(p) => Box::new(File::create(p).map_err(io_err)?),
            None => Box::new(io::stdout().lock()),
        };
        let mut w = BufWriter::new(sink);
        match self.format {
            Format::Csv => write_csv(table, &mut w)?,
            Format::Json => write_json(table, &mut w)?,
        }
        w.flush().map_err(io_err)
    }
}

fn config_error(path: &str, reason: impl Into<String>) -> Error {
    Error::Config {
        path: path.into(),
        reason: reason.into(),
    }
}

fn frequency_grid(text: &str) -> Result<Vec<f64>> {
    let axis = Axis::parse(&format!("detuning_hz:{text}"))?;
    Ok(axis.values())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Point {
            source,
            eval,
            spectrum,
            output,
        } => {
            let params = source.params()?;
            if let Some(range) = spectrum {
                return output.emit(&spectrum_table(&params, &frequency_grid(&range)?)?);
            }
            let r = evaluate_point(&params, &eval.options(EvalOptions::default())?)?;
            if !r.stable {
                return Err(Error::Unstable { margin: r.margin });
            }
            output.emit(&record_table(&r))
        }
        Command::Sweep {
            source,
            recipe,
            axes,
            eval,
            output,
        } => {
            let recipe: Recipe = recipe.parse()?;
            let mut spec = SweepSpec::for_recipe(recipe, source.params()?);
            if !axes.is_empty() {
                spec.axes = axes.iter().map(|a| Axis::parse(a)).collect::<Result<_>>()?;
            }
            spec.options = eval.options(spec.options)?;
            output.emit(&run_sweep(&spec, output.jobs)?)
        }
        Command::Stability {
            source,
            cmc,
            output,
        } => {
            let params = source.params()?;
            match cmc {
                Some(range) => {
                    let grid = Axis::parse(&format!("coop.mc:{range}"))?.values();
                    output.emit(&boundary_table(&params, &grid, output.jobs)?)
                }
                None => {
                    let rep = stability(&build_drift(&params, Rwa::Magnon)?)?;
                    log::info!("stable = {}, margin = {:e} rad/s", rep.stable, rep.margin);
                    output.emit(&Table {
                        columns: vec!["re".into(), "im".into(), "stable".into()],
                        rows: rep
                            .eigenvalues
                            .iter()
                            .map(|z| vec![Cell::Num(z.re), Cell::Num(z.im), Cell::Flag(rep.stable)])
                            .collect(),
                    })
                }
            }
        }
        Command::Benchmark { output } => {
            let spec = SweepSpec::for_recipe(Recipe::Benchmark, presets::table1());
            output.emit(&run_sweep(&spec, output.jobs)?)
        }
        Command::Presets { show } => {
            let mut out = io::stdout().lock();
            let io_err = |e: io::Error| Error::Io(e.to_string());
            match show {
                None => {
                    for n in presets::NAMES {
                        writeln!(out, "{n}").map_err(io_err)?;
                    }
                }
                Some(name) => {
                    let p = presets::by_name(&name).ok_or_else(|| {
                        config_error("preset", format!("unknown preset `{name}`"))
                    })?;
                    let text = to_json(&ConfigFile::from_params(&p))?;
                    writeln!(out, "{text}").map_err(io_err)?;
                }
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_config() { 2 } else { 3 })
        }
    }
}
