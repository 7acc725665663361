//! Physical constants, SI units.

/// Magnetic flux quantum h/2e (Wb).
pub const FLUX_QUANTUM: f64 = 2.067833848e-15;

/// Reduced Planck constant (J s).
pub const HBAR: f64 = 1.054571817e-34;

/// Vacuum permeability (H/m).
pub const MU0: f64 = 1.25663706e-6;

/// Reduced flux quantum Φ₀/2π (Wb).
pub const REDUCED_FLUX_QUANTUM: f64 = FLUX_QUANTUM / (2.0 * std::f64::consts::PI);
