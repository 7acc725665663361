//! Coupling strength g₀ = ω_A · F(Φ⁰_ext) · G₁.
//!
//! `F` depends only on the SQUID and its bias; `G_n` on how resonator B's
//! field reaches the SQUID loop. Two loop designs are modelled: an
//! inductive loop next to B's centre conductor, and a galvanic loop that
//! shares a segment of it.
//!
//! Sign convention: the interaction enters as −ℏg₀ a†a (b + b†), and
//! [`coupling_g0`] reports |g₀|. The signed factors are available from
//! [`flux_factor`] and the `geometric_factor_*` functions.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::circuit::{self, FluxBias, LineParams, SquidParams, ValidityReport};
use crate::config::DeviceConfig;
use crate::constants::{FLUX_QUANTUM, MU0};
use crate::error::{Error, Result};
use crate::modes::{self, ModeSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GeometryKind {
    Inductive,
    Galvanic,
}

impl GeometryKind {
    pub fn name(self) -> &'static str {
        match self {
            GeometryKind::Inductive => "inductive",
            GeometryKind::Galvanic => "galvanic",
        }
    }
}

impl std::str::FromStr for GeometryKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "inductive" => Ok(GeometryKind::Inductive),
            "galvanic" => Ok(GeometryKind::Galvanic),
            other => Err(Error::Validation(format!(
                "unknown geometry {other:?} (expected galvanic or inductive)"
            ))),
        }
    }
}

/// Placement of the SQUID loop relative to resonator B.
///
/// `delta` is the extent of the loop along B and `x0` where it starts. The
/// inductive loop spans radial distances `d1..d2` from B's conductor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CouplingGeometry {
    Inductive { delta: f64, x0: f64, d1: f64, d2: f64 },
    Galvanic { delta: f64, x0: f64 },
}

impl CouplingGeometry {
    pub fn kind(&self) -> GeometryKind {
        match self {
            CouplingGeometry::Inductive { .. } => GeometryKind::Inductive,
            CouplingGeometry::Galvanic { .. } => GeometryKind::Galvanic,
        }
    }

    pub fn delta(&self) -> f64 {
        match *self {
            CouplingGeometry::Inductive { delta, .. } | CouplingGeometry::Galvanic { delta, .. } => {
                delta
            }
        }
    }

    pub fn x0(&self) -> f64 {
        match *self {
            CouplingGeometry::Inductive { x0, .. } | CouplingGeometry::Galvanic { x0, .. } => x0,
        }
    }

    /// Same loop, stretched along B by `factor` (used when B's length is
    /// rescaled at fixed Δ/d_B and x₀/d_B).
    pub fn scaled_along(&self, factor: f64) -> Self {
        match *self {
            CouplingGeometry::Inductive { delta, x0, d1, d2 } => CouplingGeometry::Inductive {
                delta: delta * factor,
                x0: x0 * factor,
                d1,
                d2,
            },
            CouplingGeometry::Galvanic { delta, x0 } => CouplingGeometry::Galvanic {
                delta: delta * factor,
                x0: x0 * factor,
            },
        }
    }

    pub fn validate(&self, length_b: f64) -> Result<()> {
        let (delta, x0) = (self.delta(), self.x0());
        if !(delta > 0.0 && delta.is_finite()) {
            return Err(Error::Validation("delta > 0".into()));
        }
        if !(x0 >= 0.0 && x0 + delta <= length_b) {
            return Err(Error::PositionOutOfRange { x0, length: length_b });
        }
        if let CouplingGeometry::Inductive { d1, d2, .. } = *self {
            if !(d1 > 0.0 && d2 > d1) {
                return Err(Error::DegenerateLoop { d1, d2 });
            }
        }
        Ok(())
    }
}

/// Explicit flux factor F = π · Δd₀/(d_A + Δd₀) · tan(πΦ⁰/Φ₀). Signed.
pub fn flux_factor(bias: FluxBias, length_a: f64, line: &LineParams, squid: &SquidParams) -> Result<f64> {
    let lin = circuit::linearize_delta_d(line, squid, bias)?;
    Ok(PI * lin.delta_d0 / (length_a + lin.delta_d0) * (PI * bias.value()).tan())
}

/// The same factor written as F = Φ₀ · δd / d_eff⁰.
pub fn flux_factor_from_slope(
    bias: FluxBias,
    length_a: f64,
    line: &LineParams,
    squid: &SquidParams,
) -> Result<f64> {
    let lin = circuit::linearize_delta_d(line, squid, bias)?;
    Ok(FLUX_QUANTUM * lin.slope / (length_a + lin.delta_d0))
}

/// G_n for the inductive loop placed at the midpoint of B.
pub fn geometric_factor_inductive(
    line: &LineParams,
    length_b: f64,
    geom: &CouplingGeometry,
    n: usize,
) -> Result<f64> {
    let CouplingGeometry::Inductive { delta, d1, d2, .. } = *geom else {
        return Err(Error::WrongGeometryVariant {
            expected: "inductive",
        });
    };
    geom.validate(length_b)?;
    let mode = ModeSpec::half_wave(line, length_b, n)?;
    let nf = n as f64;
    Ok(MU0 * delta * nf * (d2 / d1).ln() / (2.0 * line.inductance * FLUX_QUANTUM * length_b)
        * mode.amplitude_prefactor
        * (PI * nf / 2.0).sin())
}

/// G_n for the loop galvanically sharing [x₀, x₀+Δ] of B's conductor.
pub fn geometric_factor_galvanic(
    line: &LineParams,
    length_b: f64,
    geom: &CouplingGeometry,
    n: usize,
) -> Result<f64> {
    let CouplingGeometry::Galvanic { delta, x0 } = *geom else {
        return Err(Error::WrongGeometryVariant {
            expected: "galvanic",
        });
    };
    geom.validate(length_b)?;
    let mode = ModeSpec::half_wave(line, length_b, n)?;
    let nf = n as f64;
    Ok(PI * nf * (delta / length_b) / FLUX_QUANTUM
        * mode.amplitude_prefactor
        * (PI * nf * x0 / length_b).sin())
}

pub fn geometric_factor(line: &LineParams, length_b: f64, geom: &CouplingGeometry, n: usize) -> Result<f64> {
    match geom.kind() {
        GeometryKind::Inductive => geometric_factor_inductive(line, length_b, geom, n),
        GeometryKind::Galvanic => geometric_factor_galvanic(line, length_b, geom, n),
    }
}

/// G₁^galv / G₁^ind = 2π L0 / (μ₀ ln(d2/d1)) for equal Δ.
pub fn coupling_ratio(line: &LineParams, geom: &CouplingGeometry) -> Result<f64> {
    let CouplingGeometry::Inductive { d1, d2, .. } = *geom else {
        return Err(Error::WrongGeometryVariant {
            expected: "inductive",
        });
    };
    if !(d1 > 0.0 && d2 > d1) {
        return Err(Error::DegenerateLoop { d1, d2 });
    }
    Ok(2.0 * PI * line.inductance / (MU0 * (d2 / d1).ln()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ValidityPolicy {
    /// Failed adiabatic checks are an error.
    #[default]
    Enforce,
    /// Failed checks are logged and the value is returned anyway.
    Allow,
}

/// Everything that goes into one g₀ evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct CouplingStrength {
    /// |g₀| (rad/s).
    pub g0: f64,
    /// Fundamental of A at the static bias (rad/s).
    pub omega_a: f64,
    /// Fundamental of B (rad/s).
    pub omega_b: f64,
    pub flux_factor: f64,
    pub geometric_factor: f64,
    pub report: ValidityReport,
}

impl CouplingStrength {
    pub fn over_omega_a(&self) -> f64 {
        self.g0 / self.omega_a
    }

    pub fn over_omega_b(&self) -> f64 {
        self.g0 / self.omega_b
    }
}

/// g₀ for the fundamental modes of both resonators, with A's frequency
/// taken at the bias-dependent effective length.
pub fn coupling_g0(
    config: &DeviceConfig,
    geom: &CouplingGeometry,
    bias: FluxBias,
    policy: ValidityPolicy,
) -> Result<CouplingStrength> {
    let report = circuit::validate_adiabatic(config, bias);
    if !report.all_passed() {
        match policy {
            ValidityPolicy::Enforce => return Err(Error::ValidityViolation(report.failed())),
            ValidityPolicy::Allow => {
                for c in report.failed() {
                    log::warn!("bias {bias}: adiabatic check failed: {c}");
                }
            }
        }
    }
    let (line, squid, resonators) = (&config.line, &config.squid, &config.geometry);
    let d_eff = circuit::effective_length(resonators, line, squid, bias)?;
    let v = line.velocity();
    let omega_a = modes::quarter_wave_frequency(d_eff, v, 0);
    let omega_b = modes::half_wave_frequency(resonators.length_b, v, 1)?;
    let f = flux_factor(bias, resonators.length_a, line, squid)?;
    let g = geometric_factor(line, resonators.length_b, geom, 1)?;
    Ok(CouplingStrength {
        g0: (omega_a * f * g).abs(),
        omega_a,
        omega_b,
        flux_factor: f,
        geometric_factor: g,
        report,
    })
}
