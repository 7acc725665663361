//! JSON device description.
//!
//! ```json
//! {
//!   "line":     {"L0": 4.57e-7, "C0": 1.46e-10},
//!   "squid":    {"EJ": 4.11e-22, "CJ": 1e-15},
//!   "geometry": {"dA": 3e-3, "dB": 6e-2},
//!   "coupling": {"variant": "galvanic", "delta": 6e-3, "x0": 3e-2, "d1": 5e-6, "d2": 1e-5},
//!   "bias": 0.4
//! }
//! ```
//!
//! All values SI. Optional sections: `validity` (threshold overrides) and
//! `array` (lattice description, natural units).

use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::arrays::ArraySpec;
use crate::circuit::{FluxBias, LineParams, ResonatorGeometry, SquidParams, ValidityThresholds};
use crate::coupling::{CouplingGeometry, GeometryKind};
use crate::error::{Error, Result};

/// Coupling-loop section; `d1`/`d2` are only needed by the inductive design.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CouplingSpec {
    pub variant: GeometryKind,
    pub delta: f64,
    pub x0: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d1: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d2: Option<f64>,
}

impl CouplingSpec {
    pub fn geometry(&self) -> Result<CouplingGeometry> {
        self.geometry_as(self.variant)
    }

    /// The loop interpreted as `kind`, regardless of `variant`.
    pub fn geometry_as(&self, kind: GeometryKind) -> Result<CouplingGeometry> {
        Ok(match kind {
            GeometryKind::Galvanic => CouplingGeometry::Galvanic {
                delta: self.delta,
                x0: self.x0,
            },
            GeometryKind::Inductive => {
                let (Some(d1), Some(d2)) = (self.d1, self.d2) else {
                    return Err(Error::Validation(
                        "inductive coupling requires coupling.d1 and coupling.d2".into(),
                    ));
                };
                CouplingGeometry::Inductive {
                    delta: self.delta,
                    x0: self.x0,
                    d1,
                    d2,
                }
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct RawConfig {
    line: LineParams,
    squid: SquidParams,
    geometry: ResonatorGeometry,
    coupling: CouplingSpec,
    bias: f64,
    #[serde(default)]
    validity: ValidityThresholds,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    array: Option<ArraySpec>,
}

/// Validated device: every field satisfies its invariants.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DeviceConfig {
    pub line: LineParams,
    pub squid: SquidParams,
    pub geometry: ResonatorGeometry,
    pub coupling: CouplingSpec,
    pub bias: FluxBias,
    pub validity: ValidityThresholds,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub array: Option<ArraySpec>,
}

impl DeviceConfig {
    pub fn new(
        line: LineParams,
        squid: SquidParams,
        geometry: ResonatorGeometry,
        coupling: CouplingSpec,
        bias: FluxBias,
    ) -> Result<Self> {
        let config = Self {
            line,
            squid,
            geometry,
            coupling,
            bias,
            validity: ValidityThresholds::default(),
            array: None,
        };
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        self.line.validate()?;
        self.squid.validate()?;
        self.geometry.validate()?;
        self.coupling.geometry()?.validate(self.geometry.length_b)?;
        if let (Some(d1), Some(d2)) = (self.coupling.d1, self.coupling.d2) {
            if !(d1 > 0.0 && d2 > d1) {
                return Err(Error::DegenerateLoop { d1, d2 });
            }
        }
        if let Some(array) = &self.array {
            array.site_cells()?;
            for cell in &array.cells {
                cell.validate()?;
            }
        }
        Ok(())
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let raw: RawConfig = serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        let config = Self {
            line: raw.line,
            squid: raw.squid,
            geometry: raw.geometry,
            coupling: raw.coupling,
            bias: FluxBias::new(raw.bias)
                .map_err(|_| Error::Validation(format!("|bias| < 0.5 (got {})", raw.bias)))?,
            validity: raw.validity,
            array: raw.array,
        };
        config.validate()?;
        Ok(config)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    /// SHA-256 of the canonical (compact) JSON form.
    pub fn hash(&self) -> String {
        let canonical = serde_json::to_string(self).expect("config serializes");
        hex::encode(Sha256::digest(canonical.as_bytes()))
    }

    /// Same device with `bias` replaced.
    pub fn with_bias(&self, bias: FluxBias) -> Self {
        Self {
            bias,
            ..self.clone()
        }
    }
}

pub fn load_config(path: impl AsRef<Path>) -> Result<DeviceConfig> {
    let text = std::fs::read_to_string(path)?;
    DeviceConfig::from_json_str(&text)
}

/// Reference device shipped as `fixtures/fig4.json`.
pub const FIG4_JSON: &str = include_str!("../fixtures/fig4.json");

pub fn fig4() -> DeviceConfig {
    DeviceConfig::from_json_str(FIG4_JSON).expect("bundled fixture is valid")
}
