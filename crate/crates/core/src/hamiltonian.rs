//! Two-mode and multimode Hamiltonians of the SQUID-coupled resonators.
//!
//! All builders work in natural units with ℏ = 1: frequencies go in, the
//! matrix comes out in the same units. Mode A (the λ/4 "cavity") is the
//! first tensor factor, mode B (the λ/2 "mechanical" mode) the second.

use num_complex::Complex64;

use crate::circuit::{self, FluxBias};
use crate::config::DeviceConfig;
use crate::coupling::{self, CouplingGeometry};
use crate::error::{Error, Result};
use crate::fock::{local_product, lowering_matrix, number_matrix, total_dim, CMatrix, FockOperator};
use crate::modes;

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Parameters of the fundamental-mode pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoModeParams {
    pub omega_a: f64,
    pub omega_b: f64,
    /// Signed: the interaction term is −g₀ a†a (b + b†).
    pub g0: f64,
    /// ε_A in the drive term ε_A a + ε_A* a†.
    pub drive_amplitude: Complex64,
    pub drive_frequency: f64,
    pub dims: (usize, usize),
}

impl TwoModeParams {
    /// Undriven pair.
    pub fn new(omega_a: f64, omega_b: f64, g0: f64, dims: (usize, usize)) -> Self {
        Self {
            omega_a,
            omega_b,
            g0,
            drive_amplitude: Complex64::new(0.0, 0.0),
            drive_frequency: 0.0,
            dims,
        }
    }

    pub fn with_drive(mut self, amplitude: Complex64, frequency: f64) -> Self {
        self.drive_amplitude = amplitude;
        self.drive_frequency = frequency;
        self
    }

    /// Δ_A = ω_A − ω_d.
    pub fn detuning(&self) -> f64 {
        self.omega_a - self.drive_frequency
    }

    pub fn validate(&self) -> Result<()> {
        let (da, db) = self.dims;
        if da < 2 || db < 2 {
            return Err(Error::DimensionMismatch(format!(
                "two-mode truncation must be >= 2 per mode, got ({da}, {db})"
            )));
        }
        if !(self.omega_b > 0.0) {
            return Err(Error::Validation("omega_b > 0".into()));
        }
        Ok(())
    }

    fn dims_vec(&self) -> Vec<usize> {
        vec![self.dims.0, self.dims.1]
    }
}

/// Smallest b-mode truncation that holds the polaron displacement
/// g₀ n_a / ω_B of every a-sector comfortably.
pub fn recommended_dim_b(p: &TwoModeParams) -> usize {
    let shift = p.g0 * (p.dims.0 - 1) as f64 / p.omega_b;
    (10.0 * shift * shift).ceil() as usize + 20
}

fn warn_truncation(p: &TwoModeParams) {
    let need = recommended_dim_b(p);
    if p.dims.1 < need {
        log::warn!(
            "dim_b = {} is below the recommended {need} for g0 = {}, omega_b = {}",
            p.dims.1,
            p.g0,
            p.omega_b
        );
    }
}

/// Single-mode factors on the (a, b) pair.
struct PairOps {
    dims: Vec<usize>,
    a: CMatrix,
    na: CMatrix,
    b: CMatrix,
    nb: CMatrix,
}

impl PairOps {
    fn new(p: &TwoModeParams) -> Self {
        let (da, db) = p.dims;
        Self {
            dims: p.dims_vec(),
            a: lowering_matrix(da),
            na: number_matrix(da),
            b: lowering_matrix(db),
            nb: number_matrix(db),
        }
    }

    fn quadrature_b(&self) -> CMatrix {
        &self.b + self.b.adjoint()
    }

    /// Δ a†a + ω_B b†b
    fn free(&self, omega_a: f64, omega_b: f64) -> FockOperator {
        let mut h = FockOperator::new(self.dims.clone(), local_product(&self.dims, &[(0, &self.na)]) * re(omega_a))
            .expect("dims match");
        h.add_assign_scaled(&local_product(&self.dims, &[(1, &self.nb)]), re(omega_b));
        h
    }

    /// a†a (b + b†)
    fn radiation_pressure(&self) -> CMatrix {
        let xb = self.quadrature_b();
        local_product(&self.dims, &[(0, &self.na), (1, &xb)])
    }
}

/// H = ω_A a†a + ω_B b†b − g₀ a†a (b + b†).
pub fn build_optomech(p: &TwoModeParams) -> Result<FockOperator> {
    p.validate()?;
    warn_truncation(p);
    let ops = PairOps::new(p);
    let mut h = ops.free(p.omega_a, p.omega_b);
    h.add_assign_scaled(&ops.radiation_pressure(), re(-p.g0));
    Ok(h)
}

/// Driven pair in the frame rotating at ω_d:
/// H = Δ_A a†a + ω_B b†b − g₀ a†a (b + b†) + ε_A a + ε_A* a†.
pub fn build_rotating(p: &TwoModeParams) -> Result<FockOperator> {
    p.validate()?;
    let ops = PairOps::new(p);
    let mut h = ops.free(p.detuning(), p.omega_b);
    h.add_assign_scaled(&ops.radiation_pressure(), re(-p.g0));
    let a = local_product(&ops.dims, &[(0, &ops.a)]);
    h.add_assign_scaled(&a, p.drive_amplitude);
    h.add_assign_scaled(&a.adjoint(), p.drive_amplitude.conj());
    Ok(h)
}

/// Coherent amplitude α that removes the drive from [`build_rotating`]
/// under a → a + α: α = −ε_A* / Δ_A.
pub fn steady_state_alpha(p: &TwoModeParams) -> Result<Complex64> {
    let detuning = p.detuning();
    if detuning == 0.0 {
        return Err(Error::ZeroDetuning);
    }
    Ok(-p.drive_amplitude.conj() / detuning)
}

/// Drive-linearized Hamiltonian about the coherent amplitude `alpha`:
/// H = Δ_A a†a + ω_B b†b − g₀ (α a† + α* a)(b + b†) − g₀ |α|² (b + b†).
///
/// For real α the bilinear term is −g₀α (a + a†)(b + b†); the cubic
/// −g₀ a†a (b + b†) left over after displacement is dropped.
pub fn build_linearized(p: &TwoModeParams, alpha: Complex64) -> Result<FockOperator> {
    p.validate()?;
    let ops = PairOps::new(p);
    let mut h = ops.free(p.detuning(), p.omega_b);
    let xb = ops.quadrature_b();
    let mixed = &ops.a.adjoint() * alpha + &ops.a * alpha.conj();
    h.add_assign_scaled(&local_product(&ops.dims, &[(0, &mixed), (1, &xb)]), re(-p.g0));
    h.add_assign_scaled(&local_product(&ops.dims, &[(1, &xb)]), re(-p.g0 * alpha.norm_sqr()));
    Ok(h)
}

/// [`build_linearized`] with α taken from [`steady_state_alpha`].
pub fn build_linearized_from_drive(p: &TwoModeParams) -> Result<FockOperator> {
    build_linearized(p, steady_state_alpha(p)?)
}

/// Polaron-frame Hamiltonian H = Δ_A a†a + ω_B b†b − (g₀²/ω_B)(a†a)².
///
/// The Kerr coefficient is negative: the exact transform of
/// [`build_optomech`] lowers the n_a-photon sector by g₀²n_a²/ω_B. Pass
/// `drive_frequency = 0` to compare against the undriven Hamiltonian.
pub fn build_kerr(p: &TwoModeParams) -> Result<FockOperator> {
    p.validate()?;
    let ops = PairOps::new(p);
    let mut h = ops.free(p.detuning(), p.omega_b);
    let na2 = &ops.na * &ops.na;
    h.add_assign_scaled(&local_product(&ops.dims, &[(0, &na2)]), re(-kerr_coefficient(p)));
    Ok(h)
}

/// g₀² / ω_B.
pub fn kerr_coefficient(p: &TwoModeParams) -> f64 {
    p.g0 * p.g0 / p.omega_b
}

/// Exact eigenvalue of [`build_optomech`] for an untruncated b mode.
pub fn polaron_energy(omega_a: f64, omega_b: f64, g0: f64, n_a: usize, n_b: usize) -> f64 {
    let na = n_a as f64;
    omega_a * na + omega_b * n_b as f64 - g0 * g0 * na * na / omega_b
}

/// The `k` lowest polaron energies with `n_a < dim_a` and unbounded `n_b`.
pub fn polaron_spectrum(omega_a: f64, omega_b: f64, g0: f64, dim_a: usize, k: usize) -> Vec<f64> {
    let mut values: Vec<f64> = (0..dim_a)
        .flat_map(|na| (0..k).map(move |nb| polaron_energy(omega_a, omega_b, g0, na, nb)))
        .collect();
    values.sort_by(f64::total_cmp);
    values.truncate(k);
    values
}

/// H = Σ ω̃_n^A a_n†a_n + Σ ω_m^B b_m†b_m − Σ_n ω̃_n^A F Σ_m G_m (b_m + b_m†) a_n†a_n.
///
/// `dims` lists the A modes first, then the B modes.
pub fn build_multimode(
    freqs_a: &[f64],
    freqs_b: &[f64],
    flux_factor: f64,
    geometric: &[f64],
    dims: &[usize],
) -> Result<FockOperator> {
    let (na_modes, nb_modes) = (freqs_a.len(), freqs_b.len());
    if na_modes == 0 || nb_modes == 0 {
        return Err(Error::DimensionMismatch("need at least one mode per resonator".into()));
    }
    if geometric.len() != nb_modes || dims.len() != na_modes + nb_modes {
        return Err(Error::DimensionMismatch(format!(
            "{na_modes} A modes, {nb_modes} B modes, {} geometric factors, {} dims",
            geometric.len(),
            dims.len()
        )));
    }
    if let Some(&d) = dims.iter().find(|&&d| d < 2) {
        return Err(Error::DimensionMismatch(format!("mode truncation must be >= 2, got {d}")));
    }
    let mut h = FockOperator::zeros(dims)?;
    let numbers: Vec<CMatrix> = dims.iter().map(|&d| number_matrix(d)).collect();
    for (k, &w) in freqs_a.iter().chain(freqs_b).enumerate() {
        h.add_assign_scaled(&local_product(dims, &[(k, &numbers[k])]), re(w));
    }
    for (m, &g) in geometric.iter().enumerate() {
        if g == 0.0 {
            continue;
        }
        let mode_b = na_modes + m;
        let b = lowering_matrix(dims[mode_b]);
        let xb = &b + b.adjoint();
        for (n, &w) in freqs_a.iter().enumerate() {
            let term = local_product(dims, &[(n, &numbers[n]), (mode_b, &xb)]);
            h.add_assign_scaled(&term, re(-w * flux_factor * g));
        }
    }
    debug_assert_eq!(h.dim(), total_dim(dims));
    Ok(h)
}

/// Mode frequencies and couplings of a device, ready for [`build_multimode`].
#[derive(Debug, Clone, PartialEq)]
pub struct MultimodeSpec {
    pub freqs_a: Vec<f64>,
    pub freqs_b: Vec<f64>,
    pub flux_factor: f64,
    pub geometric: Vec<f64>,
}

impl MultimodeSpec {
    /// First `modes_a` modes of A (n = 0, 1, ...) at the static bias and
    /// first `modes_b` modes of B (n = 1, 2, ...), in rad/s.
    pub fn from_device(
        config: &DeviceConfig,
        geom: &CouplingGeometry,
        bias: FluxBias,
        modes_a: usize,
        modes_b: usize,
    ) -> Result<Self> {
        let (line, squid, res) = (&config.line, &config.squid, &config.geometry);
        let d_eff = circuit::effective_length(res, line, squid, bias)?;
        let v = line.velocity();
        let freqs_a = (0..modes_a).map(|n| modes::quarter_wave_frequency(d_eff, v, n)).collect();
        let freqs_b = (1..=modes_b)
            .map(|n| modes::half_wave_frequency(res.length_b, v, n))
            .collect::<Result<_>>()?;
        let geometric = (1..=modes_b)
            .map(|n| coupling::geometric_factor(line, res.length_b, geom, n))
            .collect::<Result<_>>()?;
        Ok(Self {
            freqs_a,
            freqs_b,
            flux_factor: coupling::flux_factor(bias, res.length_a, line, squid)?,
            geometric,
        })
    }

    /// Every frequency divided by `unit`.
    pub fn rescaled(&self, unit: f64) -> Self {
        Self {
            freqs_a: self.freqs_a.iter().map(|w| w / unit).collect(),
            freqs_b: self.freqs_b.iter().map(|w| w / unit).collect(),
            ..self.clone()
        }
    }

    pub fn build(&self, dims: &[usize]) -> Result<FockOperator> {
        build_multimode(&self.freqs_a, &self.freqs_b, self.flux_factor, &self.geometric, dims)
    }
}
