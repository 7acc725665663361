//! Mode spectra of the two resonators.
//!
//! Index conventions differ between the resonators and matter for every
//! downstream coupling number:
//!
//! * resonator A (λ/4, open/short) counts from `n = 0`; the fundamental is
//!   `n = 0` with ω = (π/2)·v/d_eff.
//! * resonator B (λ/2, open/open) counts from `n = 1`; `n = 0` is the
//!   constant mode and is rejected.

use std::f64::consts::PI;

use crate::circuit::LineParams;
use crate::constants::HBAR;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Resonator {
    A,
    B,
}

/// A single resonator mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeSpec {
    pub resonator: Resonator,
    pub index: usize,
    /// rad/s
    pub angular_frequency: f64,
    /// Zero-point flux scale √(Z₀ℏ/2π · ω_d/ω_n) (Wb).
    pub amplitude_prefactor: f64,
}

impl ModeSpec {
    /// Mode `n` of resonator A with effective length `d_eff`.
    pub fn quarter_wave(line: &LineParams, d_eff: f64, n: usize) -> Self {
        let v = line.velocity();
        let omega = quarter_wave_frequency(d_eff, v, n);
        let omega_full = full_wave_frequency(d_eff, v);
        Self {
            resonator: Resonator::A,
            index: n,
            angular_frequency: omega,
            amplitude_prefactor: zero_point_scale(line.impedance()) * (omega_full / omega).sqrt(),
        }
    }

    /// Mode `n >= 1` of resonator B with length `length_b`.
    pub fn half_wave(line: &LineParams, length_b: f64, n: usize) -> Result<Self> {
        let v = line.velocity();
        let omega = half_wave_frequency(length_b, v, n)?;
        let omega_full = full_wave_frequency(length_b, v);
        Ok(Self {
            resonator: Resonator::B,
            index: n,
            angular_frequency: omega,
            amplitude_prefactor: zero_point_scale(line.impedance()) * (omega_full / omega).sqrt(),
        })
    }
}

/// `(v, Z0)`: propagation speed (m/s) and characteristic impedance (Ω).
pub fn line_constants(line: &LineParams) -> (f64, f64) {
    (line.velocity(), line.impedance())
}

/// √(Z₀ℏ/2π) (Wb).
pub fn zero_point_scale(impedance: f64) -> f64 {
    (impedance * HBAR / (2.0 * PI)).sqrt()
}

/// Full-wavelength frequency 2πv/d of a line of length `d`.
pub fn full_wave_frequency(length: f64, velocity: f64) -> f64 {
    2.0 * PI * velocity / length
}

/// ω_n = (π/2)(2n+1)·v/d_eff, `n >= 0`.
pub fn quarter_wave_frequency(d_eff: f64, velocity: f64, n: usize) -> f64 {
    0.5 * PI * (2 * n + 1) as f64 * velocity / d_eff
}

/// ω_n = πn·v/d_B, `n >= 1`.
pub fn half_wave_frequency(length_b: f64, velocity: f64, n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::IndexZero);
    }
    Ok(PI * n as f64 * velocity / length_b)
}

/// Current amplitude of mode `n` of resonator B at `x0` (A per unit of
/// `b_n + b_n†`). Signed; vanishes at the open ends.
pub fn mode_current_amplitude(line: &LineParams, length_b: f64, n: usize, x0: f64) -> Result<f64> {
    if !(0.0..=length_b).contains(&x0) {
        return Err(Error::PositionOutOfRange {
            x0,
            length: length_b,
        });
    }
    let mode = ModeSpec::half_wave(line, length_b, n)?;
    let k = PI * n as f64 / length_b;
    Ok(mode.amplitude_prefactor * k * (k * x0).sin() / line.inductance)
}
