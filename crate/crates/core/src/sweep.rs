//! Flux-bias and frequency-ratio sweeps, tabulated as CSV.
//!
//! Rows are computed in parallel and collected in grid order, so output is
//! byte-identical for identical inputs.

use std::fmt::Write as _;
use std::io::{self, Write};

use rayon::prelude::*;

use crate::circuit::{self, FluxBias};
use crate::config::DeviceConfig;
use crate::coupling::{self, CouplingGeometry, GeometryKind, ValidityPolicy};
use crate::error::{Error, Result};
use crate::modes;

/// Inclusive linear grid `start..=stop` with `steps` points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridRange {
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
}

impl GridRange {
    pub fn new(start: f64, stop: f64, steps: usize) -> Result<Self> {
        if steps < 2 {
            return Err(Error::Validation(format!("steps >= 2 (got {steps})")));
        }
        if !(start.is_finite() && stop.is_finite()) {
            return Err(Error::Validation("grid bounds must be finite".into()));
        }
        Ok(Self { start, stop, steps })
    }

    pub fn points(&self) -> Vec<f64> {
        let last = (self.steps - 1) as f64;
        (0..self.steps)
            .map(|i| {
                if i + 1 == self.steps {
                    self.stop
                } else {
                    self.start + (self.stop - self.start) * i as f64 / last
                }
            })
            .collect()
    }

    fn check_bias(&self) -> Result<()> {
        if self.start.abs() < 0.5 && self.stop.abs() < 0.5 {
            Ok(())
        } else {
            Err(Error::Validation(format!(
                "bias range must lie inside (-0.5, 0.5), got {}:{}",
                self.start, self.stop
            )))
        }
    }

    fn check_positive(&self) -> Result<()> {
        if self.start > 0.0 && self.stop > 0.0 {
            Ok(())
        } else {
            Err(Error::Validation("frequency ratios must be positive".into()))
        }
    }
}

impl std::str::FromStr for GridRange {
    type Err = Error;

    /// `start:stop:steps`
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Validation(format!("expected start:stop:steps, got {s:?}"));
        let parts: Vec<&str> = s.split(':').collect();
        let [start, stop, steps] = parts[..] else {
            return Err(bad());
        };
        Self::new(
            start.trim().parse().map_err(|_| bad())?,
            stop.trim().parse().map_err(|_| bad())?,
            steps.trim().parse().map_err(|_| bad())?,
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepQuantity {
    FluxFactor,
    G0OverOmegaA,
    G0OverOmegaB,
    Spectrum,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub quantity: SweepQuantity,
    pub bias_range: GridRange,
    /// ω_B/ω_A grid; required by the contour sweep.
    pub freq_ratio_range: Option<GridRange>,
    pub geometry: GeometryKind,
    pub policy: ValidityPolicy,
}

impl SweepConfig {
    pub fn new(quantity: SweepQuantity, bias_range: GridRange) -> Self {
        Self {
            quantity,
            bias_range,
            freq_ratio_range: None,
            geometry: GeometryKind::Galvanic,
            policy: ValidityPolicy::Enforce,
        }
    }

    pub fn with_ratio(mut self, range: GridRange) -> Self {
        self.freq_ratio_range = Some(range);
        self
    }

    pub fn with_geometry(mut self, geometry: GeometryKind) -> Self {
        self.geometry = geometry;
        self
    }

    pub fn with_policy(mut self, policy: ValidityPolicy) -> Self {
        self.policy = policy;
        self
    }
}

/// A grid point dropped because the adiabatic checks failed.
#[derive(Debug, Clone, PartialEq)]
pub struct OmittedRow {
    pub point: Vec<f64>,
    pub failed: Vec<String>,
}

/// Numeric table; `None` cells are written empty.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Option<f64>>>,
    pub warnings: Vec<String>,
    pub omitted: Vec<OmittedRow>,
    /// Extra `#` lines written after the rows.
    pub footer: Vec<String>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Self {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            ..Self::default()
        }
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    /// Values of a column, `None` for empty cells.
    pub fn column(&self, name: &str) -> Option<Vec<Option<f64>>> {
        let i = self.column_index(name)?;
        Some(self.rows.iter().map(|r| r[i]).collect())
    }

    pub fn write_csv<W: Write>(&self, meta: &Metadata, out: &mut W) -> io::Result<()> {
        out.write_all(meta.header().as_bytes())?;
        if !self.omitted.is_empty() {
            writeln!(out, "# omitted_rows={}", self.omitted.len())?;
        }
        writeln!(out, "{}", self.columns.join(","))?;
        for row in &self.rows {
            let mut line = String::new();
            for (i, cell) in row.iter().enumerate() {
                if i > 0 {
                    line.push(',');
                }
                if let Some(v) = cell {
                    write!(line, "{}", format_number(*v)).expect("string write");
                }
            }
            writeln!(out, "{line}")?;
        }
        for f in &self.footer {
            writeln!(out, "# {f}")?;
        }
        Ok(())
    }

    pub fn to_csv_string(&self, meta: &Metadata) -> String {
        let mut buf = Vec::new();
        self.write_csv(meta, &mut buf).expect("in-memory write");
        String::from_utf8(buf).expect("ascii output")
    }
}

pub fn format_number(v: f64) -> String {
    if v == 0.0 {
        "0".to_string()
    } else {
        format!("{v:.12e}")
    }
}

/// Provenance written as `#` lines above the CSV header.
#[derive(Debug, Clone, PartialEq)]
pub struct Metadata {
    pub config_hash: Option<String>,
    pub command_line: String,
    pub version: String,
}

impl Metadata {
    pub fn new(config: Option<&DeviceConfig>, command_line: impl Into<String>) -> Self {
        Self {
            config_hash: config.map(DeviceConfig::hash),
            command_line: command_line.into(),
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    fn header(&self) -> String {
        let mut s = String::new();
        writeln!(s, "# squid-optomech {}", self.version).unwrap();
        if let Some(h) = &self.config_hash {
            writeln!(s, "# config_sha256={h}").unwrap();
        }
        writeln!(s, "# command={}", self.command_line).unwrap();
        s
    }
}

enum RowOutcome {
    Row(Vec<Option<f64>>, Vec<String>),
    Omitted(OmittedRow),
}

fn collect(columns: &[&str], outcomes: Vec<RowOutcome>) -> Table {
    let mut table = Table::new(columns);
    for outcome in outcomes {
        match outcome {
            RowOutcome::Row(row, warnings) => {
                table.rows.push(row);
                table.warnings.extend(warnings);
            }
            RowOutcome::Omitted(o) => table.omitted.push(o),
        }
    }
    if !table.omitted.is_empty() {
        table.warnings.push(format!(
            "{} grid point(s) omitted: adiabatic checks failed (use --allow-invalid to keep them)",
            table.omitted.len()
        ));
    }
    table
}

fn cell(result: Result<f64>, what: &str, point: &str, warnings: &mut Vec<String>) -> Option<f64> {
    match result {
        Ok(v) if v.is_finite() => Some(v),
        Ok(v) => {
            warnings.push(format!("{point}: {what} is not finite ({v})"));
            None
        }
        Err(e) => {
            warnings.push(format!("{point}: {what}: {e}"));
            None
        }
    }
}

/// Columns `bias_phi0,F`. No adiabatic filtering: F depends on the SQUID
/// alone.
pub fn sweep_flux_factor(cfg: &DeviceConfig, sweep: &SweepConfig) -> Result<Table> {
    sweep.bias_range.check_bias()?;
    let outcomes = sweep
        .bias_range
        .points()
        .into_par_iter()
        .map(|b| {
            let mut warnings = Vec::new();
            let f = FluxBias::new(b)
                .and_then(|bias| coupling::flux_factor(bias, cfg.geometry.length_a, &cfg.line, &cfg.squid));
            let value = cell(f, "F", &format!("bias {b}"), &mut warnings);
            RowOutcome::Row(vec![Some(b), value], warnings)
        })
        .collect();
    Ok(collect(&["bias_phi0", "F"], outcomes))
}

/// Adiabatic filter shared by the g₀ sweeps: `Err(row)` means omit.
fn screen(
    config: &DeviceConfig,
    bias: FluxBias,
    policy: ValidityPolicy,
    point: Vec<f64>,
    label: &str,
    warnings: &mut Vec<String>,
) -> std::result::Result<(), OmittedRow> {
    let report = circuit::validate_adiabatic(config, bias);
    if report.all_passed() {
        return Ok(());
    }
    let failed: Vec<String> = report.failed().into_iter().map(|c| c.name).collect();
    match policy {
        ValidityPolicy::Enforce => Err(OmittedRow { point, failed }),
        ValidityPolicy::Allow => {
            warnings.push(format!("{label}: adiabatic checks failed: {}", failed.join(", ")));
            Ok(())
        }
    }
}

/// Columns `bias_phi0,g0_over_omegaA_galvanic,g0_over_omegaA_inductive`,
/// both designs sharing the configured Δ and x₀.
pub fn sweep_g0(cfg: &DeviceConfig, sweep: &SweepConfig) -> Result<Table> {
    sweep.bias_range.check_bias()?;
    let galvanic = cfg.coupling.geometry_as(GeometryKind::Galvanic)?;
    let inductive = cfg.coupling.geometry_as(GeometryKind::Inductive)?;
    let outcomes = sweep
        .bias_range
        .points()
        .into_par_iter()
        .map(|b| {
            let mut warnings = Vec::new();
            let label = format!("bias {b}");
            let Ok(bias) = FluxBias::new(b) else {
                warnings.push(format!("{label}: outside the flux domain"));
                return RowOutcome::Row(vec![Some(b), None, None], warnings);
            };
            if let Err(o) = screen(cfg, bias, sweep.policy, vec![b], &label, &mut warnings) {
                return RowOutcome::Omitted(o);
            }
            let ratio = |geom: &CouplingGeometry| {
                coupling::coupling_g0(cfg, geom, bias, ValidityPolicy::Allow).map(|c| c.over_omega_a())
            };
            let g = cell(ratio(&galvanic), "galvanic g0", &label, &mut warnings);
            let i = cell(ratio(&inductive), "inductive g0", &label, &mut warnings);
            RowOutcome::Row(vec![Some(b), g, i], warnings)
        })
        .collect();
    Ok(collect(
        &["bias_phi0", "g0_over_omegaA_galvanic", "g0_over_omegaA_inductive"],
        outcomes,
    ))
}

/// Device with resonator B resized so that ω₁^B/ω₁^A = `ratio` at `bias`,
/// keeping Δ/d_B and x₀/d_B fixed.
pub fn device_at_ratio(
    cfg: &DeviceConfig,
    geom: &CouplingGeometry,
    bias: FluxBias,
    ratio: f64,
) -> Result<(DeviceConfig, CouplingGeometry)> {
    let d_eff = circuit::effective_length(&cfg.geometry, &cfg.line, &cfg.squid, bias)?;
    let v = cfg.line.velocity();
    let omega_a = modes::quarter_wave_frequency(d_eff, v, 0);
    let length_b = std::f64::consts::PI * v / (ratio * omega_a);
    let factor = length_b / cfg.geometry.length_b;
    let mut device = cfg.with_bias(bias);
    device.geometry.length_b = length_b;
    device.coupling.delta *= factor;
    device.coupling.x0 *= factor;
    Ok((device, geom.scaled_along(factor)))
}

/// Columns `omegaB_over_omegaA,bias_phi0,g0_over_omegaB`; ratio is the
/// outer loop, bias the inner.
pub fn sweep_g0_contour(cfg: &DeviceConfig, sweep: &SweepConfig) -> Result<Table> {
    sweep.bias_range.check_bias()?;
    let ratios = sweep
        .freq_ratio_range
        .ok_or_else(|| Error::Validation("contour sweep needs a frequency-ratio range".into()))?;
    ratios.check_positive()?;
    let geom = cfg.coupling.geometry_as(sweep.geometry)?;
    let grid: Vec<(f64, f64)> = ratios
        .points()
        .into_iter()
        .flat_map(|r| sweep.bias_range.points().into_iter().map(move |b| (r, b)))
        .collect();
    let outcomes = grid
        .into_par_iter()
        .map(|(r, b)| {
            let mut warnings = Vec::new();
            let label = format!("ratio {r}, bias {b}");
            let resized = FluxBias::new(b).and_then(|bias| {
                device_at_ratio(cfg, &geom, bias, r).map(|(d, g)| (bias, d, g))
            });
            let (bias, device, scaled) = match resized {
                Ok(x) => x,
                Err(e) => {
                    warnings.push(format!("{label}: {e}"));
                    return RowOutcome::Row(vec![Some(r), Some(b), None], warnings);
                }
            };
            if let Err(o) = screen(&device, bias, sweep.policy, vec![r, b], &label, &mut warnings) {
                return RowOutcome::Omitted(o);
            }
            let g = coupling::coupling_g0(&device, &scaled, bias, ValidityPolicy::Allow).map(|c| c.over_omega_b());
            let value = cell(g, "g0/omega_B", &label, &mut warnings);
            RowOutcome::Row(vec![Some(r), Some(b), value], warnings)
        })
        .collect();
    Ok(collect(&["omegaB_over_omegaA", "bias_phi0", "g0_over_omegaB"], outcomes))
}

/// Dispatch on `sweep.quantity`.
pub fn run_sweep(cfg: &DeviceConfig, sweep: &SweepConfig) -> Result<Table> {
    match sweep.quantity {
        SweepQuantity::FluxFactor => sweep_flux_factor(cfg, sweep),
        SweepQuantity::G0OverOmegaA => sweep_g0(cfg, sweep),
        SweepQuantity::G0OverOmegaB => sweep_g0_contour(cfg, sweep),
        SweepQuantity::Spectrum => Err(Error::Validation(
            "spectra are computed by the spectrum command, not a sweep".into(),
        )),
    }
}
