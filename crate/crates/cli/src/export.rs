//! Byte-stable CSV and JSON encodings of fields, densities and reports.
//!
//! CSV numbers use `{:.16e}` (17 significant digits), JSON numbers use the
//! shortest round-trip form; both parse back to the identical `f64`.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use covosc_core::{CoherenceReport, DensityProfile, Grid1D, Grid2D, MomentReport, SampledField};
use serde::{Deserialize, Serialize};

use crate::config::Format;
use crate::error::{CliError, Result};

pub const FIELD_HEADER: &str = "z,t,value";
pub const DENSITY_HEADER: &str = "x,density";

#[derive(Debug, Serialize, Deserialize)]
struct AxisDoc {
    min: f64,
    max: f64,
    count: usize,
}

impl AxisDoc {
    fn new(axis: &Grid1D) -> Self {
        Self { min: axis.min(), max: axis.max(), count: axis.count() }
    }

    fn grid(&self) -> Result<Grid1D> {
        Ok(Grid1D::new(self.min, self.max, self.count)?)
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct GridDoc {
    z: AxisDoc,
    t: AxisDoc,
}

#[derive(Debug, Serialize, Deserialize)]
struct FieldDoc {
    grid: GridDoc,
    values: Vec<f64>,
}

#[derive(Debug, Serialize, Deserialize)]
struct DensityDoc {
    axis: AxisDoc,
    values: Vec<f64>,
}

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn json(value: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

/// Row-major (z outer, t inner) encoding of a sampled field.
pub fn render_field(field: &SampledField, format: Format) -> String {
    let grid = field.grid();
    match format {
        Format::Csv => {
            let mut out = String::with_capacity(64 * (grid.len() + 1));
            out.push_str(FIELD_HEADER);
            out.push('\n');
            let ts = grid.axis_t.nodes();
            for (i, z) in grid.axis_z.nodes().into_iter().enumerate() {
                for (t, v) in ts.iter().zip(field.row(i)) {
                    let _ = writeln!(out, "{},{},{}", num(z), num(*t), num(*v));
                }
            }
            out
        }
        Format::Json => json(&FieldDoc {
            grid: GridDoc { z: AxisDoc::new(&grid.axis_z), t: AxisDoc::new(&grid.axis_t) },
            values: field.values().to_vec(),
        }),
    }
}

/// Writes `field` to `path` in the chosen format.
pub fn export_field(field: &SampledField, format: Format, path: &Path) -> Result<()> {
    fs::write(path, render_field(field, format)).map_err(|e| CliError::io(path, e))
}

pub fn render_density(profile: &DensityProfile, format: Format) -> String {
    match format {
        Format::Csv => {
            let mut out = String::with_capacity(48 * (profile.values.len() + 1));
            out.push_str(DENSITY_HEADER);
            out.push('\n');
            for (x, v) in profile.axis.nodes().into_iter().zip(&profile.values) {
                let _ = writeln!(out, "{},{}", num(x), num(*v));
            }
            out
        }
        Format::Json => json(&DensityDoc { axis: AxisDoc::new(&profile.axis), values: profile.values.clone() }),
    }
}

pub fn render_moments(report: &MomentReport, format: Format) -> String {
    match format {
        Format::Json => json(report),
        Format::Csv => key_values(&[
            ("eta", num(report.eta.value())),
            ("n", report.n.to_string()),
            ("z2", num(report.z2)),
            ("qz2", num(report.qz2)),
            ("u2", num(report.u2)),
            ("v2", num(report.v2)),
            ("qu2", num(report.qu2)),
            ("qv2", num(report.qv2)),
            ("product_zq", num(report.product_zq)),
            ("product_uqu", num(report.product_uqu)),
            ("product_vqv", num(report.product_vqv)),
        ]),
    }
}

pub fn render_coherence(report: &CoherenceReport, format: Format) -> String {
    match format {
        Format::Json => json(report),
        Format::Csv => key_values(&[
            ("energy_gev", num(report.energy_gev)),
            ("mass_gev", num(report.mass_gev)),
            ("eta", num(report.eta.value())),
            ("period_dilation", num(report.period_dilation)),
            ("interaction_contraction", num(report.interaction_contraction)),
            ("ratio", num(report.ratio)),
        ]),
    }
}

fn key_values(rows: &[(&str, String)]) -> String {
    let mut out = String::from("key,value\n");
    for (k, v) in rows {
        let _ = writeln!(out, "{k},{v}");
    }
    out
}

/// Gnuplot script plotting a CSV field (surface) or density (curve) file.
pub fn plot_script(data: &Path, is_field: bool) -> String {
    let data = data.display();
    if is_field {
        format!(
            "set datafile separator ','\nset key autotitle columnhead\nset xlabel 'z'\nset ylabel 't'\nset view map\n\
             splot '{data}' using 1:2:3 with points pointtype 5 pointsize 0.5 palette\n"
        )
    } else {
        format!(
            "set datafile separator ','\nset key autotitle columnhead\nset xlabel 'x'\nset ylabel 'density'\n\
             plot '{data}' using 1:2 with lines\n"
        )
    }
}

fn parse_number(s: &str, line: usize) -> Result<f64> {
    s.trim().parse().map_err(|_| CliError::Parse(format!("line {line}: `{s}` is not a number")))
}

fn data_rows<'a>(text: &'a str, header: &str, width: usize) -> Result<Vec<Vec<f64>>> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, h)) if h == header => {}
        _ => return Err(CliError::Parse(format!("expected header `{header}`"))),
    }
    lines
        .filter(|(_, l)| !l.is_empty())
        .map(|(i, l)| {
            let cells: Vec<&'a str> = l.split(',').collect();
            if cells.len() != width {
                return Err(CliError::Parse(format!("line {}: expected {width} columns", i + 1)));
            }
            cells.iter().map(|c| parse_number(c, i + 1)).collect()
        })
        .collect()
}

/// Rebuilds a uniform axis from its listed nodes, rejecting anything the
/// grid formula would not reproduce exactly.
fn axis_from_nodes(nodes: &[f64]) -> Result<Grid1D> {
    let axis = Grid1D::new(nodes[0], nodes[nodes.len() - 1], nodes.len())?;
    if axis.nodes().iter().zip(nodes).any(|(a, b)| a.to_bits() != b.to_bits()) {
        return Err(CliError::Parse("coordinates do not form a uniform grid".into()));
    }
    Ok(axis)
}

/// Parses either encoding produced by [`render_field`].
pub fn parse_field(text: &str, format: Format) -> Result<SampledField> {
    match format {
        Format::Json => {
            let doc: FieldDoc = serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
            let grid = Grid2D::new(doc.grid.z.grid()?, doc.grid.t.grid()?);
            Ok(SampledField::new(grid, doc.values)?)
        }
        Format::Csv => {
            let rows = data_rows(text, FIELD_HEADER, 3)?;
            if rows.is_empty() {
                return Err(CliError::Parse("no data rows".into()));
            }
            let first_z = rows[0][0].to_bits();
            let nt = rows.iter().take_while(|r| r[0].to_bits() == first_z).count();
            if rows.len() % nt != 0 {
                return Err(CliError::Parse("row count is not a multiple of the t-axis length".into()));
            }
            let zs: Vec<f64> = rows.iter().step_by(nt).map(|r| r[0]).collect();
            let ts: Vec<f64> = rows[..nt].iter().map(|r| r[1]).collect();
            let grid = Grid2D::new(axis_from_nodes(&zs)?, axis_from_nodes(&ts)?);
            let consistent = rows
                .iter()
                .enumerate()
                .all(|(k, r)| r[0].to_bits() == zs[k / nt].to_bits() && r[1].to_bits() == ts[k % nt].to_bits());
            if !consistent {
                return Err(CliError::Parse("rows are not in row-major grid order".into()));
            }
            Ok(SampledField::new(grid, rows.into_iter().map(|r| r[2]).collect())?)
        }
    }
}

/// Parses either encoding produced by [`render_density`].
pub fn parse_density(text: &str, format: Format) -> Result<DensityProfile> {
    match format {
        Format::Json => {
            let doc: DensityDoc = serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
            Ok(DensityProfile { axis: doc.axis.grid()?, values: doc.values })
        }
        Format::Csv => {
            let rows = data_rows(text, DENSITY_HEADER, 2)?;
            if rows.is_empty() {
                return Err(CliError::Parse("no data rows".into()));
            }
            let xs: Vec<f64> = rows.iter().map(|r| r[0]).collect();
            Ok(DensityProfile { axis: axis_from_nodes(&xs)?, values: rows.into_iter().map(|r| r[1]).collect() })
        }
    }
}
