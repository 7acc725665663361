//! SQUID termination of resonator A: effective Josephson energy, the
//! flux-tunable effective length it adds to the line, and the checks that
//! keep the adiabatic picture honest.

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::config::DeviceConfig;
use crate::constants::{FLUX_QUANTUM, REDUCED_FLUX_QUANTUM};
use crate::error::{Error, Result};
use crate::modes;

/// Uniform transmission-line constants shared by both resonators.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LineParams {
    /// Inductance per unit length (H/m).
    #[serde(rename = "L0")]
    pub inductance: f64,
    /// Capacitance per unit length (F/m).
    #[serde(rename = "C0")]
    pub capacitance: f64,
}

impl LineParams {
    pub fn new(inductance: f64, capacitance: f64) -> Result<Self> {
        let line = Self {
            inductance,
            capacitance,
        };
        line.validate()?;
        Ok(line)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.inductance > 0.0 && self.inductance.is_finite()) {
            return Err(Error::Validation("L0 > 0".into()));
        }
        if !(self.capacitance > 0.0 && self.capacitance.is_finite()) {
            return Err(Error::Validation("C0 > 0".into()));
        }
        Ok(())
    }

    /// Propagation speed 1/√(L0 C0) (m/s).
    pub fn velocity(&self) -> f64 {
        1.0 / (self.inductance * self.capacitance).sqrt()
    }

    /// Characteristic impedance √(L0/C0) (Ω).
    pub fn impedance(&self) -> f64 {
        (self.inductance / self.capacitance).sqrt()
    }
}

/// Symmetric dc-SQUID: two identical junctions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SquidParams {
    /// Josephson energy of a single junction (J).
    #[serde(rename = "EJ")]
    pub junction_energy: f64,
    /// Capacitance of a single junction (F).
    #[serde(rename = "CJ", default)]
    pub junction_capacitance: f64,
    #[serde(default = "default_symmetric")]
    pub symmetric: bool,
}

fn default_symmetric() -> bool {
    true
}

impl SquidParams {
    pub fn new(junction_energy: f64, junction_capacitance: f64) -> Result<Self> {
        let squid = Self {
            junction_energy,
            junction_capacitance,
            symmetric: true,
        };
        squid.validate()?;
        Ok(squid)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.junction_energy > 0.0 && self.junction_energy.is_finite()) {
            return Err(Error::Validation("EJ > 0".into()));
        }
        if !(self.junction_capacitance >= 0.0 && self.junction_capacitance.is_finite()) {
            return Err(Error::Validation("CJ >= 0".into()));
        }
        if !self.symmetric {
            return Err(Error::Validation("symmetric SQUID required".into()));
        }
        Ok(())
    }
}

/// Static external flux through the SQUID loop, in units of Φ₀.
///
/// Always strictly inside (-0.5, 0.5), where the SQUID Josephson energy is
/// nonzero.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct FluxBias(f64);

impl FluxBias {
    pub fn new(phi0_ext: f64) -> Result<Self> {
        if phi0_ext.is_finite() && phi0_ext.abs() < 0.5 {
            Ok(Self(phi0_ext))
        } else {
            Err(Error::FluxAtHalfQuantum { flux: phi0_ext })
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for FluxBias {
    type Error = Error;

    fn try_from(value: f64) -> Result<Self> {
        Self::new(value)
    }
}

impl From<FluxBias> for f64 {
    fn from(bias: FluxBias) -> f64 {
        bias.0
    }
}

impl fmt::Display for FluxBias {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} Φ₀", self.0)
    }
}

/// Physical lengths of the two resonators.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResonatorGeometry {
    /// Length of the SQUID-terminated λ/4 resonator A (m).
    #[serde(rename = "dA")]
    pub length_a: f64,
    /// Length of the λ/2 resonator B (m).
    #[serde(rename = "dB")]
    pub length_b: f64,
}

impl ResonatorGeometry {
    pub fn new(length_a: f64, length_b: f64) -> Result<Self> {
        let geom = Self { length_a, length_b };
        geom.validate()?;
        Ok(geom)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.length_a > 0.0 && self.length_a.is_finite()) {
            return Err(Error::Validation("dA > 0".into()));
        }
        if !(self.length_b > 0.0 && self.length_b.is_finite()) {
            return Err(Error::Validation("dB > 0".into()));
        }
        Ok(())
    }
}

/// Effective Josephson energy 2 E_J |cos(π Φ_ext/Φ₀)| of the symmetric SQUID (J).
pub fn josephson_energy(squid: &SquidParams, flux: f64) -> f64 {
    2.0 * squid.junction_energy * (PI * flux).cos().abs()
}

fn check_flux(flux: f64) -> Result<()> {
    FluxBias::new(flux).map(|_| ())
}

/// Length (m) by which the SQUID effectively extends resonator A at the
/// given flux (in Φ₀).
pub fn delta_d(line: &LineParams, squid: &SquidParams, flux: f64) -> Result<f64> {
    check_flux(flux)?;
    let energy = josephson_energy(squid, flux);
    Ok(REDUCED_FLUX_QUANTUM * REDUCED_FLUX_QUANTUM / (line.inductance * energy))
}

/// First-order expansion of the SQUID length around a static bias:
/// `Δd(Φ⁰ + ΔΦ) ≈ delta_d0 + slope · ΔΦ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearizedLength {
    /// Length at the static bias (m).
    pub delta_d0: f64,
    /// Derivative with respect to the flux deviation ΔΦ_ext (m/Wb).
    pub slope: f64,
}

impl LinearizedLength {
    /// Derivative with respect to the flux deviation measured in Φ₀ (m).
    pub fn slope_per_flux_quantum(&self) -> f64 {
        self.slope * FLUX_QUANTUM
    }
}

pub fn linearize_delta_d(
    line: &LineParams,
    squid: &SquidParams,
    bias: FluxBias,
) -> Result<LinearizedLength> {
    let phase = PI * bias.value();
    // cos > 0 on |bias| < 0.5, so the absolute value of E_J(Φ) can be dropped.
    let energy0 = 2.0 * squid.junction_energy * phase.cos();
    let inv = 1.0 / (line.inductance * energy0);
    Ok(LinearizedLength {
        delta_d0: REDUCED_FLUX_QUANTUM * REDUCED_FLUX_QUANTUM * inv,
        slope: 0.5 * REDUCED_FLUX_QUANTUM * inv * phase.tan(),
    })
}

/// Static effective length d_A + Δd₀ of resonator A (m).
pub fn effective_length(
    geom: &ResonatorGeometry,
    line: &LineParams,
    squid: &SquidParams,
    bias: FluxBias,
) -> Result<f64> {
    Ok(geom.length_a + linearize_delta_d(line, squid, bias)?.delta_d0)
}

/// Small-oscillation plasma frequency 1/√(L_J C_J) of the SQUID (rad/s),
/// with L_J = (Φ₀/2π)² / E_J(Φ_ext).
pub fn plasma_frequency(squid: &SquidParams, flux: f64) -> Result<f64> {
    if squid.junction_capacitance == 0.0 {
        return Err(Error::ZeroCapacitance);
    }
    check_flux(flux)?;
    let inductance = REDUCED_FLUX_QUANTUM * REDUCED_FLUX_QUANTUM / josephson_energy(squid, flux);
    Ok(1.0 / (inductance * squid.junction_capacitance).sqrt())
}

/// Limits used by [`validate_adiabatic`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ValidityThresholds {
    /// Minimum ω_p / ω_A.
    pub min_plasma_ratio: f64,
    /// Maximum Δd₀ / λ_A where λ_A = 4 d_eff is the fundamental wavelength.
    pub max_length_fraction: f64,
    /// Minimum ω_A / ω_B.
    pub min_frequency_ratio: f64,
    /// Maximum |Φ⁰_ext| / Φ₀.
    pub max_bias: f64,
}

impl Default for ValidityThresholds {
    fn default() -> Self {
        Self {
            min_plasma_ratio: 10.0,
            max_length_fraction: 0.2,
            min_frequency_ratio: 5.0,
            max_bias: 0.45,
        }
    }
}

/// One named adiabatic-validity check.
///
/// `margin` is the signed distance from the threshold, positive when the
/// check passes.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub threshold: f64,
    pub passed: bool,
    pub margin: f64,
}

impl Check {
    fn at_least(name: &str, value: f64, threshold: f64) -> Self {
        Self {
            name: name.to_string(),
            value,
            threshold,
            passed: value >= threshold,
            margin: value - threshold,
        }
    }

    fn at_most(name: &str, value: f64, threshold: f64) -> Self {
        Self {
            name: name.to_string(),
            value,
            threshold,
            passed: value <= threshold,
            margin: threshold - value,
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<16} {} value={:.6e} threshold={:.6e} margin={:.6e}",
            self.name,
            if self.passed { "PASS" } else { "FAIL" },
            self.value,
            self.threshold,
            self.margin
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidityReport {
    pub checks: Vec<Check>,
}

impl ValidityReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failed(&self) -> Vec<Check> {
        self.checks.iter().filter(|c| !c.passed).cloned().collect()
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// `Ok(())` when every check passes, otherwise `ValidityViolation`.
    pub fn into_result(self) -> Result<()> {
        if self.all_passed() {
            Ok(())
        } else {
            Err(Error::ValidityViolation(self.failed()))
        }
    }
}

impl fmt::Display for ValidityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}

pub const CHECK_PLASMA: &str = "plasma_ratio";
pub const CHECK_LENGTH: &str = "length_fraction";
pub const CHECK_FREQUENCY: &str = "frequency_ratio";
pub const CHECK_BIAS: &str = "bias_margin";

/// Evaluate the four adiabatic-validity checks for `config` at `bias`.
///
/// Never fails; violations show up as failed checks. A zero junction
/// capacitance counts as an infinitely fast SQUID.
pub fn validate_adiabatic(config: &DeviceConfig, bias: FluxBias) -> ValidityReport {
    let limits = &config.validity;
    let lin = linearize_delta_d(&config.line, &config.squid, bias)
        .expect("FluxBias is always inside the open half-quantum interval");
    let d_eff = config.geometry.length_a + lin.delta_d0;
    let v = config.line.velocity();
    let omega_a = modes::quarter_wave_frequency(d_eff, v, 0);
    let omega_b = modes::half_wave_frequency(config.geometry.length_b, v, 1)
        .expect("index 1 is valid");

    let plasma_ratio = match plasma_frequency(&config.squid, bias.value()) {
        Ok(wp) => wp / omega_a,
        Err(_) => f64::INFINITY,
    };

    ValidityReport {
        checks: vec![
            Check::at_least(CHECK_PLASMA, plasma_ratio, limits.min_plasma_ratio),
            Check::at_most(
                CHECK_LENGTH,
                lin.delta_d0 / (4.0 * d_eff),
                limits.max_length_fraction,
            ),
            Check::at_least(CHECK_FREQUENCY, omega_a / omega_b, limits.min_frequency_ratio),
            Check::at_most(CHECK_BIAS, bias.value().abs(), limits.max_bias),
        ],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reference_line() -> LineParams {
        LineParams::new(4.57e-7, 1.46e-10).unwrap()
    }

    fn reference_squid() -> SquidParams {
        SquidParams::new(4.11e-22, 1e-15).unwrap()
    }

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn josephson_energy_values() {
        let squid = reference_squid();
        assert_eq!(josephson_energy(&squid, 0.0), 8.22e-22);
        assert!(josephson_energy(&squid, 0.5) < 1e-37);
        assert!(rel(josephson_energy(&squid, 0.4), 2.540e-22) < 1e-3);
    }

    #[test]
    fn delta_d_values() {
        let (line, squid) = (reference_line(), reference_squid());
        assert!(rel(delta_d(&line, &squid, 0.0).unwrap(), 2.884e-4) < 1e-3);
        assert!(rel(delta_d(&line, &squid, 0.4).unwrap(), 9.34e-4) < 2e-3);
        assert!(matches!(
            delta_d(&line, &squid, 0.5),
            Err(Error::FluxAtHalfQuantum { .. })
        ));
        assert!(delta_d(&line, &squid, -0.7).is_err());
    }

    #[test]
    fn linearization_matches_direct_length() {
        let (line, squid) = (reference_line(), reference_squid());
        let zero = linearize_delta_d(&line, &squid, FluxBias::new(0.0).unwrap()).unwrap();
        assert_eq!(zero.slope, 0.0);
        for b in [0.0, 0.1, 0.25, 0.4, -0.3] {
            let lin = linearize_delta_d(&line, &squid, FluxBias::new(b).unwrap()).unwrap();
            assert!(rel(lin.delta_d0, delta_d(&line, &squid, b).unwrap()) < 1e-14);
        }
    }

    #[test]
    fn effective_length_values() {
        let (line, squid) = (reference_line(), reference_squid());
        let geom = ResonatorGeometry::new(3e-3, 60e-3).unwrap();
        let at = |b| effective_length(&geom, &line, &squid, FluxBias::new(b).unwrap()).unwrap();
        assert!(rel(at(0.0), 3.288e-3) < 1e-3);
        assert!(rel(at(0.4), 3.934e-3) < 1e-3);
        let stiff = SquidParams::new(1e-10, 0.0).unwrap();
        let d = effective_length(&geom, &line, &stiff, FluxBias::new(0.1).unwrap()).unwrap();
        assert!(rel(d, 3e-3) < 1e-9);
    }

    #[test]
    fn plasma_frequency_behaviour() {
        let squid = reference_squid();
        assert!(plasma_frequency(&squid, 0.49).unwrap() < plasma_frequency(&squid, 0.4).unwrap());
        let doubled = SquidParams::new(2.0 * 4.11e-22, 1e-15).unwrap();
        let ratio = plasma_frequency(&doubled, 0.2).unwrap() / plasma_frequency(&squid, 0.2).unwrap();
        assert!(rel(ratio, 2f64.sqrt()) < 1e-12);
        // 1/sqrt(L_J C_J), L_J = (Φ₀/2π)²/(2 E_J) = 1.0831e-31 / 8.22e-22 H
        let oracle = 1.0 / ((1.083_106e-31 / 8.22e-22) * 1e-15f64).sqrt();
        assert!(rel(plasma_frequency(&squid, 0.0).unwrap(), oracle) < 1e-5);
        let no_cap = SquidParams::new(4.11e-22, 0.0).unwrap();
        assert!(matches!(plasma_frequency(&no_cap, 0.1), Err(Error::ZeroCapacitance)));
        assert!(plasma_frequency(&squid, 0.5).is_err());
    }

    #[test]
    fn flux_bias_domain() {
        assert!(FluxBias::new(0.4999).is_ok());
        assert!(FluxBias::new(0.5).is_err());
        assert!(FluxBias::new(-0.5).is_err());
        assert!(FluxBias::new(f64::NAN).is_err());
        let parsed: std::result::Result<FluxBias, _> = serde_json::from_str("0.6");
        assert!(parsed.is_err());
    }

    #[test]
    fn parameter_validation() {
        assert!(LineParams::new(-1.0, 1.0).is_err());
        assert!(LineParams::new(1.0, 0.0).is_err());
        assert!(SquidParams::new(0.0, 1e-15).is_err());
        assert!(SquidParams::new(1e-22, -1.0).is_err());
        assert!(ResonatorGeometry::new(0.0, 1.0).is_err());
        let mut squid = reference_squid();
        squid.symmetric = false;
        assert!(squid.validate().is_err());
    }
}
