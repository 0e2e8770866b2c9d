use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use covosc_core::analysis::MomentMode;
use covosc_core::{ETA_MAX, N_MAX, PROTON_MASS_GEV};
use serde::Serialize;

use crate::error::{CliError, Result};

/// Evaluate, export and verify covariant oscillator wave functions.
#[derive(Debug, Parser)]
#[command(name = "covosc", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub options: Options,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    /// Sample the boosted wave function on a (z, t) grid.
    Wavefunction,
    /// Sample the numeric momentum-energy wave function on a (q_z, q_0) grid.
    Momentum,
    /// Second moments and uncertainty products.
    Moments,
    /// Longitudinal position or momentum density.
    Density,
    /// Rapidity and coherence-time ratio at a given energy.
    Coherence,
    /// Run the acceptance checks; exits 2 if any fails.
    Verify,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DensityKind {
    #[default]
    Position,
    Momentum,
}

/// Flags shared by every subcommand. Unset flags fall back to the config
/// file, then to built-in defaults.
#[derive(Debug, Clone, Default, Args)]
pub struct Options {
    /// Excitation number.
    #[arg(long, global = true)]
    pub n: Option<u32>,
    /// Rapidity of the boost.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub eta: Option<f64>,
    /// Beam energy in GeV (coherence).
    #[arg(long, global = true)]
    pub energy: Option<f64>,
    /// Hadron mass in GeV [default: 0.938272].
    #[arg(long, global = true)]
    pub mass: Option<f64>,
    /// Half-width of a symmetric export grid.
    #[arg(long, global = true)]
    pub grid_range: Option<f64>,
    /// Nodes per axis of the export grid (odd).
    #[arg(long, global = true)]
    pub grid_count: Option<usize>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Moment evaluation: analytic or quadrature.
    #[arg(long, global = true)]
    pub mode: Option<MomentMode>,
    /// Density axis (density command).
    #[arg(long, global = true, value_enum)]
    pub kind: Option<DensityKind>,
    /// Key-value file supplying defaults for the flags above.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Also write a gnuplot script for the CSV output to this path.
    #[arg(long, global = true)]
    pub emit_plotscript: Option<PathBuf>,
}

impl Options {
    /// Fills every unset field from `other`.
    fn or(self, other: Options) -> Options {
        Options {
            n: self.n.or(other.n),
            eta: self.eta.or(other.eta),
            energy: self.energy.or(other.energy),
            mass: self.mass.or(other.mass),
            grid_range: self.grid_range.or(other.grid_range),
            grid_count: self.grid_count.or(other.grid_count),
            format: self.format.or(other.format),
            out: self.out.or(other.out),
            mode: self.mode.or(other.mode),
            kind: self.kind.or(other.kind),
            config: self.config.or(other.config),
            emit_plotscript: self.emit_plotscript.or(other.emit_plotscript),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct GridOverride {
    pub range: Option<f64>,
    pub count: Option<usize>,
}

impl GridOverride {
    pub fn is_set(&self) -> bool {
        self.range.is_some() || self.count.is_some()
    }
}

/// Fully resolved and validated invocation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: Command,
    pub n: u32,
    pub eta: f64,
    pub energy_gev: Option<f64>,
    pub mass_gev: f64,
    pub grid: GridOverride,
    pub output_path: Option<PathBuf>,
    pub format: Format,
    pub mode: MomentMode,
    pub density: DensityKind,
    pub plotscript: Option<PathBuf>,
}

impl RunConfig {
    /// Defaults for `command`: n = 0, η = 0, proton mass, CSV to stdout.
    pub fn new(command: Command) -> Self {
        Self {
            command,
            n: 0,
            eta: 0.0,
            energy_gev: None,
            mass_gev: PROTON_MASS_GEV,
            grid: GridOverride::default(),
            output_path: None,
            format: Format::Csv,
            mode: MomentMode::Quadrature,
            density: DensityKind::Position,
            plotscript: None,
        }
    }

    /// Merges flags over the optional config file and validates the result.
    pub fn from_cli(cli: Cli) -> Result<Self> {
        let options = match &cli.options.config {
            Some(path) => cli.options.clone().or(read_config_file(path)?),
            None => cli.options,
        };
        Self::from_options(cli.command, options)
    }

    pub fn from_options(command: Command, o: Options) -> Result<Self> {
        let defaults = Self::new(command);
        let config = Self {
            command,
            n: o.n.unwrap_or(defaults.n),
            eta: o.eta.unwrap_or(defaults.eta),
            energy_gev: o.energy,
            mass_gev: o.mass.unwrap_or(defaults.mass_gev),
            grid: GridOverride { range: o.grid_range, count: o.grid_count },
            output_path: o.out,
            format: o.format.unwrap_or(defaults.format),
            mode: o.mode.unwrap_or(defaults.mode),
            density: o.kind.unwrap_or(defaults.density),
            plotscript: o.emit_plotscript,
        };
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n > N_MAX {
            return Err(CliError::invalid("n", format!("must be at most {N_MAX}, got {}", self.n)));
        }
        if !self.eta.is_finite() || self.eta.abs() > ETA_MAX {
            return Err(CliError::invalid("eta", format!("must lie in [-{ETA_MAX}, {ETA_MAX}], got {}", self.eta)));
        }
        if !(self.mass_gev > 0.0) || !self.mass_gev.is_finite() {
            return Err(CliError::invalid("mass", format!("must be positive, got {}", self.mass_gev)));
        }
        if let Some(e) = self.energy_gev {
            if !e.is_finite() || e < self.mass_gev {
                return Err(CliError::invalid(
                    "energy",
                    format!("must be at least the mass {} GeV, got {e}", self.mass_gev),
                ));
            }
        }
        if let Some(r) = self.grid.range {
            if !(r > 0.0) || !r.is_finite() {
                return Err(CliError::invalid("grid-range", format!("must be positive, got {r}")));
            }
        }
        if let Some(c) = self.grid.count {
            if c < 3 || c.is_multiple_of(2) {
                return Err(CliError::invalid("grid-count", format!("must be odd and at least 3, got {c}")));
            }
        }

        let field = matches!(self.command, Command::Wavefunction | Command::Momentum);
        if self.grid.is_set() && !field {
            return Err(CliError::invalid(
                "grid-range/grid-count",
                "only the wavefunction and momentum commands accept grid overrides",
            ));
        }
        match self.command {
            Command::Coherence if self.energy_gev.is_none() => {
                return Err(CliError::invalid("energy", "the coherence command requires --energy"));
            }
            Command::Moments if self.mode == MomentMode::Analytic && self.n > 0 => {
                return Err(CliError::invalid("mode", "analytic moments exist only for n = 0; use --mode quadrature"));
            }
            Command::Density if self.density == DensityKind::Momentum && self.n > 2 => {
                return Err(CliError::invalid("n", format!("momentum densities need n <= 2, got {}", self.n)));
            }
            _ => {}
        }
        if self.plotscript.is_some() {
            if !(field || self.command == Command::Density) {
                return Err(CliError::invalid("emit-plotscript", "only field and density exports can be plotted"));
            }
            if self.format != Format::Csv || self.output_path.is_none() {
                return Err(CliError::invalid("emit-plotscript", "requires --format csv and --out PATH"));
            }
        }
        Ok(())
    }
}

/// Reads `key = value` lines; `#` starts a comment. Keys are the long flag
/// names with either `-` or `_` separators.
pub fn read_config_file(path: &Path) -> Result<Options> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_config(&text, path)
}

pub fn parse_config(text: &str, path: &Path) -> Result<Options> {
    let mut o = Options::default();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fail = |reason: String| CliError::Config { path: path.to_path_buf(), line: idx + 1, reason };
        let (key, value) = line.split_once('=').ok_or_else(|| fail(format!("expected `key = value`, got `{line}`")))?;
        let (key, value) = (key.trim().replace('_', "-"), value.trim());
        match key.as_str() {
            "n" => o.n = Some(number(value, &key).map_err(fail)?),
            "eta" => o.eta = Some(number(value, &key).map_err(fail)?),
            "energy" => o.energy = Some(number(value, &key).map_err(fail)?),
            "mass" => o.mass = Some(number(value, &key).map_err(fail)?),
            "grid-range" => o.grid_range = Some(number(value, &key).map_err(fail)?),
            "grid-count" => o.grid_count = Some(number(value, &key).map_err(fail)?),
            "format" => o.format = Some(choice(value).map_err(fail)?),
            "kind" => o.kind = Some(choice(value).map_err(fail)?),
            "mode" => o.mode = Some(value.parse().map_err(|e| fail(format!("{e}")))?),
            "out" => o.out = Some(PathBuf::from(value)),
            "emit-plotscript" => o.emit_plotscript = Some(PathBuf::from(value)),
            other => return Err(fail(format!("unknown key `{other}`"))),
        }
    }
    Ok(o)
}

fn number<T: FromStr>(value: &str, key: &str) -> std::result::Result<T, String> {
    value.parse().map_err(|_| format!("cannot parse `{value}` as {key}"))
}

fn choice<T: ValueEnum>(value: &str) -> std::result::Result<T, String> {
    T::from_str(value, false)
}
