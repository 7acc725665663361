//! Low-lying spectra of any of the Hamiltonian forms, as a table.

use num_complex::Complex64;

use crate::arrays::ArraySpec;
use crate::config::DeviceConfig;
use crate::coupling::{self, CouplingGeometry, ValidityPolicy};
use crate::diag;
use crate::error::{Error, Result};
use crate::fock::FockOperator;
use crate::hamiltonian::{self, MultimodeSpec, TwoModeParams};
use crate::sweep::Table;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpectrumForm {
    Optomech,
    Rotating,
    Linearized,
    Kerr,
    Multimode,
    Array,
}

impl std::str::FromStr for SpectrumForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "optomech" => SpectrumForm::Optomech,
            "rotating" => SpectrumForm::Rotating,
            "linearized" => SpectrumForm::Linearized,
            "kerr" => SpectrumForm::Kerr,
            "multimode" => SpectrumForm::Multimode,
            "array" => SpectrumForm::Array,
            other => return Err(Error::Validation(format!("unknown Hamiltonian form {other:?}"))),
        })
    }
}

/// Everything needed to build one Hamiltonian.
#[derive(Debug, Clone, PartialEq)]
pub enum HamiltonianSource {
    TwoMode {
        params: TwoModeParams,
        /// Linearization amplitude; derived from the drive when `None`.
        alpha: Option<Complex64>,
    },
    Multimode {
        spec: MultimodeSpec,
        dims: Vec<usize>,
    },
    Array(ArraySpec),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumRequest {
    pub form: SpectrumForm,
    pub source: HamiltonianSource,
    pub k: usize,
    pub compare_polaron: bool,
    pub dimension_cap: usize,
}

impl SpectrumRequest {
    pub fn two_mode(form: SpectrumForm, params: TwoModeParams, k: usize) -> Self {
        Self {
            form,
            source: HamiltonianSource::TwoMode { params, alpha: None },
            k,
            compare_polaron: false,
            dimension_cap: diag::DEFAULT_DIMENSION_CAP,
        }
    }

    pub fn with_polaron_comparison(mut self) -> Self {
        self.compare_polaron = true;
        self
    }
}

/// Fundamental-mode pair of a device at its configured bias, with every
/// frequency expressed in units of ω_B.
pub fn two_mode_from_device(
    config: &DeviceConfig,
    geom: &CouplingGeometry,
    policy: ValidityPolicy,
    dims: (usize, usize),
) -> Result<TwoModeParams> {
    let c = coupling::coupling_g0(config, geom, config.bias, policy)?;
    Ok(TwoModeParams::new(c.omega_a / c.omega_b, 1.0, c.g0 / c.omega_b, dims))
}

/// Build the operator described by `req`.
pub fn build_hamiltonian(req: &SpectrumRequest) -> Result<FockOperator> {
    let mismatch = || {
        Error::Validation(format!(
            "form {:?} does not match the supplied parameters",
            req.form
        ))
    };
    match (&req.source, req.form) {
        (HamiltonianSource::TwoMode { params, alpha }, form) => {
            let (da, db) = params.dims;
            let dim = da.saturating_mul(db);
            if dim > req.dimension_cap {
                return Err(Error::DimensionTooLarge {
                    dim,
                    cap: req.dimension_cap,
                });
            }
            match form {
                SpectrumForm::Optomech => hamiltonian::build_optomech(params),
                SpectrumForm::Rotating => hamiltonian::build_rotating(params),
                SpectrumForm::Linearized => match alpha {
                    Some(a) => hamiltonian::build_linearized(params, *a),
                    None => hamiltonian::build_linearized_from_drive(params),
                },
                SpectrumForm::Kerr => hamiltonian::build_kerr(params),
                SpectrumForm::Multimode | SpectrumForm::Array => Err(mismatch()),
            }
        }
        (HamiltonianSource::Multimode { spec, dims }, SpectrumForm::Multimode) => {
            let dim = dims.iter().try_fold(1usize, |a, &d| a.checked_mul(d)).unwrap_or(usize::MAX);
            if dim > req.dimension_cap {
                return Err(Error::DimensionTooLarge {
                    dim,
                    cap: req.dimension_cap,
                });
            }
            spec.build(dims)
        }
        (HamiltonianSource::Array(spec), SpectrumForm::Array) => {
            crate::arrays::build_array_with_cap(
                &spec.site_cells()?,
                &spec.topology(),
                &[spec.dims],
                req.dimension_cap,
            )
        }
        _ => Err(mismatch()),
    }
}

/// Lowest `k` eigenvalues; with `compare_polaron`, also the analytic
/// polaron energies and their deviation (optomech and kerr only).
pub fn spectrum_command(req: &SpectrumRequest) -> Result<Table> {
    let polaron = if req.compare_polaron {
        match (&req.source, req.form) {
            (HamiltonianSource::TwoMode { params, .. }, SpectrumForm::Optomech) => Some(hamiltonian::polaron_spectrum(
                params.omega_a,
                params.omega_b,
                params.g0,
                params.dims.0,
                req.k,
            )),
            (HamiltonianSource::TwoMode { params, .. }, SpectrumForm::Kerr) => Some(hamiltonian::polaron_spectrum(
                params.detuning(),
                params.omega_b,
                params.g0,
                params.dims.0,
                req.k,
            )),
            _ => {
                return Err(Error::Validation(
                    "--compare-polaron applies to the optomech and kerr forms".into(),
                ))
            }
        }
    } else {
        None
    };

    let h = build_hamiltonian(req)?;
    let values = diag::eigenvalues_with_cap(&h, req.k, req.dimension_cap)?;

    let mut table = match polaron {
        Some(_) => Table::new(&["index", "eigenvalue", "polaron", "deviation"]),
        None => Table::new(&["index", "eigenvalue"]),
    };
    let mut max_dev = 0.0f64;
    for (i, &e) in values.iter().enumerate() {
        let mut row = vec![Some(i as f64), Some(e)];
        if let Some(p) = &polaron {
            let dev = e - p[i];
            max_dev = max_dev.max(dev.abs());
            row.extend([Some(p[i]), Some(dev)]);
        }
        table.rows.push(row);
    }
    if polaron.is_some() {
        table.footer.push(format!("max_abs_deviation={max_dev:.6e}"));
    }
    Ok(table)
}
