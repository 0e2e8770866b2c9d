//! Command-line front end: argument and config-file handling, export
//! formats, and the `verify` report.
//!
//! Every command is a pure function of its [`RunConfig`]; no environment
//! variables, clocks or locale settings are consulted.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod error;
pub mod export;

use std::fs;
use std::io::Write;

use clap::Parser;
use covosc_core::analysis::{
    coherence_ratio, longitudinal_momentum_density, longitudinal_position_density, uncertainty_products,
};
use covosc_core::momentum::{default_momentum_grid, fourier_numeric};
use covosc_core::numerics::default_axis;
use covosc_core::oscillator::sample_wavefunction;
use covosc_core::{verify, Grid1D, Grid2D, OscillatorState, Rapidity};

pub use config::{Cli, Command, DensityKind, Format, RunConfig};
pub use error::{CliError, Result};
pub use export::export_field;

/// Nodes per axis of exported fields unless `--grid-count` is given.
pub const DEFAULT_EXPORT_COUNT: usize = 201;

/// Invocations whose output must be byte-identical across runs.
pub const EXAMPLE_COMMANDS: &[&[&str]] = &[
    &["coherence", "--energy", "900", "--mass", "0.938272", "--format", "json"],
    &["coherence", "--energy", "900"],
    &["moments", "--n", "0", "--eta", "0", "--mode", "analytic"],
    &["moments", "--n", "1", "--eta", "0.5", "--format", "json"],
    &["wavefunction", "--n", "2", "--eta", "1", "--grid-count", "101"],
    &["wavefunction", "--n", "1", "--eta", "-0.5", "--grid-range", "4", "--grid-count", "41", "--format", "json"],
    &["momentum", "--n", "1", "--eta", "0.5", "--grid-count", "61"],
    &["density", "--kind", "position", "--n", "0", "--eta", "1"],
    &["density", "--kind", "momentum", "--n", "1", "--eta", "0.5", "--format", "json"],
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Success,
    VerifyFailed,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Success => 0,
            Status::VerifyFailed => 2,
        }
    }
}

/// Everything one invocation produces, before any I/O.
#[derive(Debug, Clone, PartialEq)]
pub struct Rendered {
    pub body: String,
    pub plotscript: Option<String>,
    pub status: Status,
}

fn export_grid(config: &RunConfig, default_half: f64) -> Result<Grid2D> {
    let half = config.grid.range.unwrap_or(default_half);
    let count = config.grid.count.unwrap_or(DEFAULT_EXPORT_COUNT);
    Ok(Grid2D::square(Grid1D::symmetric(half, count)?))
}

/// Computes the output of `config` without touching the filesystem.
pub fn render(config: &RunConfig) -> Result<Rendered> {
    config.validate()?;
    let eta = Rapidity::new(config.eta)?;
    let state = || OscillatorState::new(config.n, eta);
    let mut status = Status::Success;
    let body = match config.command {
        Command::Wavefunction => {
            let grid = export_grid(config, default_axis(eta, config.n)?.max())?;
            export::render_field(&sample_wavefunction(state()?, grid)?, config.format)
        }
        Command::Momentum => {
            let grid = export_grid(config, default_momentum_grid(eta, config.n)?.axis_z.max())?;
            export::render_field(&fourier_numeric(state()?, grid)?, config.format)
        }
        Command::Moments => export::render_moments(&uncertainty_products(config.n, eta, config.mode)?, config.format),
        Command::Density => {
            let profile = match config.density {
                DensityKind::Position => longitudinal_position_density(config.n, eta)?,
                DensityKind::Momentum => longitudinal_momentum_density(config.n, eta)?,
            };
            export::render_density(&profile, config.format)
        }
        Command::Coherence => {
            let energy = config.energy_gev.expect("validated");
            export::render_coherence(&coherence_ratio(energy, config.mass_gev)?, config.format)
        }
        Command::Verify => {
            let (report, passed) = verify_report();
            if !passed {
                status = Status::VerifyFailed;
            }
            report
        }
    };
    let plotscript = match (&config.plotscript, &config.output_path) {
        (Some(_), Some(data)) => Some(export::plot_script(data, config.command != Command::Density)),
        _ => None,
    };
    Ok(Rendered { body, plotscript, status })
}

/// Renders `config` and writes the result to its output path or `stdout`.
pub fn run(config: &RunConfig, stdout: &mut dyn Write) -> Result<Status> {
    let rendered = render(config)?;
    match &config.output_path {
        Some(path) => fs::write(path, &rendered.body).map_err(|e| CliError::io(path, e))?,
        None => stdout.write_all(rendered.body.as_bytes()).map_err(|e| CliError::io("<stdout>", e))?,
    }
    if let (Some(path), Some(script)) = (&config.plotscript, &rendered.plotscript) {
        fs::write(path, script).map_err(|e| CliError::io(path, e))?;
    }
    Ok(rendered.status)
}

/// Parses one of [`EXAMPLE_COMMANDS`] into a validated config.
pub fn example_config(args: &[&str]) -> Result<RunConfig> {
    let cli = Cli::try_parse_from(std::iter::once("covosc").chain(args.iter().copied()))
        .map_err(|e| CliError::invalid("arguments", e.to_string()))?;
    RunConfig::from_cli(cli)
}

/// Renders every example command twice and compares the bytes.
pub fn determinism_check() -> verify::CriterionOutcome {
    let title = "CLI output determinism";
    let mut mismatched = Vec::new();
    for args in EXAMPLE_COMMANDS {
        let twice = example_config(args).and_then(|c| Ok((render(&c)?, render(&c)?)));
        match twice {
            Ok((a, b)) if a == b => {}
            Ok(_) => mismatched.push(args.join(" ")),
            Err(e) => mismatched.push(format!("{} ({e})", args.join(" "))),
        }
    }
    let passed = mismatched.is_empty();
    let detail = if passed {
        format!("{} example commands rendered twice, byte-identical", EXAMPLE_COMMANDS.len())
    } else {
        format!("differing or failing: {}", mismatched.join("; "))
    };
    verify::CriterionOutcome { id: 9, title, passed, detail }
}

/// Plain-text verification report and whether every check passed.
pub fn verify_report() -> (String, bool) {
    let mut outcomes = verify::run_all();
    outcomes.push(determinism_check());
    let passed = outcomes.iter().all(|o| o.passed);
    let mut report: String = outcomes.iter().map(|o| format!("{o}\n")).collect();
    match verify::convention_report() {
        Ok(note) => report.push_str(&format!("note: {note}\n")),
        Err(e) => report.push_str(&format!("note: convention comparison unavailable: {e}\n")),
    }
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    report.push_str(&match failed {
        0 => format!("all {} checks passed\n", outcomes.len()),
        k => format!("{k} of {} checks failed\n", outcomes.len()),
    });
    (report, passed)
}
