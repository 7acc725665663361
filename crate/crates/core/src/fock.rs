//! Dense operators on truncated multimode Fock spaces.
//!
//! Modes are ordered as listed in `dims`; the first mode is the slowest
//! index of the row-major basis, so for dims `[da, db]` the state
//! `|na, nb⟩` sits at `na * db + nb`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Relative tolerance used for hermiticity checks.
pub const HERMITIAN_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(into = "OperatorRecord", try_from = "OperatorRecord")]
pub struct FockOperator {
    dims: Vec<usize>,
    matrix: CMatrix,
}

/// JSON form: dims plus row-major `[re, im]` entries.
#[derive(Debug, Clone, Serialize, Deserialize)]
struct OperatorRecord {
    dims: Vec<usize>,
    entries: Vec<[f64; 2]>,
}

impl From<FockOperator> for OperatorRecord {
    fn from(op: FockOperator) -> Self {
        let n = op.matrix.nrows();
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let z = op.matrix[(i, j)];
                entries.push([z.re, z.im]);
            }
        }
        Self {
            dims: op.dims,
            entries,
        }
    }
}

impl TryFrom<OperatorRecord> for FockOperator {
    type Error = Error;

    fn try_from(rec: OperatorRecord) -> Result<Self> {
        let n = total_dim(&rec.dims);
        if rec.entries.len() != n * n {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for total dimension {n}",
                rec.entries.len()
            )));
        }
        let matrix = CMatrix::from_row_iterator(
            n,
            n,
            rec.entries.iter().map(|[re, im]| Complex64::new(*re, *im)),
        );
        FockOperator::new(rec.dims, matrix)
    }
}

pub fn total_dim(dims: &[usize]) -> usize {
    dims.iter().product()
}

fn check_mode_dim(dim: usize) -> Result<()> {
    if dim < 2 {
        return Err(Error::DimensionMismatch(format!(
            "mode truncation must be >= 2, got {dim}"
        )));
    }
    Ok(())
}

/// Single-mode lowering matrix with √n on the first superdiagonal.
pub(crate) fn lowering_matrix(dim: usize) -> CMatrix {
    CMatrix::from_fn(dim, dim, |i, j| {
        if j == i + 1 {
            Complex64::new((j as f64).sqrt(), 0.0)
        } else {
            ZERO
        }
    })
}

pub(crate) fn number_matrix(dim: usize) -> CMatrix {
    CMatrix::from_fn(dim, dim, |i, j| if i == j { Complex64::new(i as f64, 0.0) } else { ZERO })
}

impl FockOperator {
    pub fn new(dims: Vec<usize>, matrix: CMatrix) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::DimensionMismatch("no modes".into()));
        }
        let n = total_dim(&dims);
        if matrix.nrows() != n || matrix.ncols() != n {
            return Err(Error::DimensionMismatch(format!(
                "matrix is {}x{}, dims {dims:?} need {n}x{n}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        Ok(Self { dims, matrix })
    }

    pub fn zeros(dims: &[usize]) -> Result<Self> {
        let n = total_dim(dims);
        Self::new(dims.to_vec(), CMatrix::zeros(n, n))
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.matrix[(row, col)]
    }

    pub fn adjoint(&self) -> Self {
        Self {
            dims: self.dims.clone(),
            matrix: self.matrix.adjoint(),
        }
    }

    fn check_same_space(&self, other: &Self) -> Result<()> {
        if self.dims != other.dims {
            return Err(Error::DimensionMismatch(format!(
                "dims {:?} vs {:?}",
                self.dims, other.dims
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_space(other)?;
        Ok(Self {
            dims: self.dims.clone(),
            matrix: &self.matrix + &other.matrix,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_space(other)?;
        Ok(Self {
            dims: self.dims.clone(),
            matrix: &self.matrix - &other.matrix,
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same_space(other)?;
        Ok(Self {
            dims: self.dims.clone(),
            matrix: &self.matrix * &other.matrix,
        })
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            dims: self.dims.clone(),
            matrix: &self.matrix * factor,
        }
    }

    pub(crate) fn add_assign_scaled(&mut self, other: &CMatrix, factor: Complex64) {
        self.matrix.zip_apply(other, |a, b| *a += b * factor);
    }

    pub fn max_abs(&self) -> f64 {
        self.matrix.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// max |H − H†| over entries.
    pub fn hermiticity_defect(&self) -> f64 {
        let n = self.dim();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i..n {
                let d = (self.matrix[(i, j)] - self.matrix[(j, i)].conj()).norm();
                worst = worst.max(d);
            }
        }
        worst
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermiticity_defect() <= HERMITIAN_TOL * self.max_abs()
    }

    pub fn ensure_hermitian(&self) -> Result<()> {
        let (defect, scale) = (self.hermiticity_defect(), self.max_abs());
        if defect <= HERMITIAN_TOL * scale {
            Ok(())
        } else {
            Err(Error::NotHermitian { defect, scale })
        }
    }

    /// Is every off-diagonal entry exactly zero?
    pub fn is_diagonal(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..n).all(|j| i == j || self.matrix[(i, j)] == ZERO))
    }

    pub fn diagonal(&self) -> Vec<Complex64> {
        self.matrix.diagonal().iter().copied().collect()
    }

    /// Occupation numbers of basis state `index`.
    pub fn occupations(&self, index: usize) -> Vec<usize> {
        occupations(&self.dims, index)
    }

    /// Restriction to the lower Fock states `|n_k < new_dims[k]⟩` of every mode.
    pub fn project(&self, new_dims: &[usize]) -> Result<Self> {
        if new_dims.len() != self.dims.len() || new_dims.iter().zip(&self.dims).any(|(n, o)| n > o) {
            return Err(Error::DimensionMismatch(format!(
                "cannot project dims {:?} onto {new_dims:?}",
                self.dims
            )));
        }
        let kept: Vec<usize> = (0..self.dim())
            .filter(|&i| {
                occupations(&self.dims, i)
                    .iter()
                    .zip(new_dims)
                    .all(|(occ, lim)| occ < lim)
            })
            .collect();
        let m = kept.len();
        let matrix = CMatrix::from_fn(m, m, |i, j| self.matrix[(kept[i], kept[j])]);
        Self::new(new_dims.to_vec(), matrix)
    }

    /// Sub-block on the given basis indices.
    pub fn restrict(&self, indices: &[usize]) -> CMatrix {
        let m = indices.len();
        CMatrix::from_fn(m, m, |i, j| self.matrix[(indices[i], indices[j])])
    }

    /// Place a single-mode operator on mode `mode` of a space with `dims`.
    pub fn embed(&self, mode: usize, dims: &[usize]) -> Result<Self> {
        if self.dims.len() != 1 || mode >= dims.len() || dims[mode] != self.dims[0] {
            return Err(Error::DimensionMismatch(format!(
                "cannot embed single-mode operator of dims {:?} at mode {mode} of {dims:?}",
                self.dims
            )));
        }
        Ok(Self {
            dims: dims.to_vec(),
            matrix: local_product(dims, &[(mode, &self.matrix)]),
        })
    }
}

pub fn occupations(dims: &[usize], mut index: usize) -> Vec<usize> {
    let mut occ = vec![0; dims.len()];
    for (k, &d) in dims.iter().enumerate().rev() {
        occ[k] = index % d;
        index /= d;
    }
    occ
}

pub fn basis_index(dims: &[usize], occ: &[usize]) -> usize {
    occ.iter().zip(dims).fold(0, |acc, (&n, &d)| acc * d + n)
}

/// Kronecker product of per-mode factors; modes absent from `factors` get
/// the identity.
pub(crate) fn local_product(dims: &[usize], factors: &[(usize, &CMatrix)]) -> CMatrix {
    let mut out = CMatrix::from_element(1, 1, ONE);
    for (k, &d) in dims.iter().enumerate() {
        out = match factors.iter().find(|(m, _)| *m == k) {
            Some((_, f)) => out.kronecker(*f),
            None => out.kronecker(&CMatrix::identity(d, d)),
        };
    }
    out
}

pub fn annihilation(dim: usize) -> Result<FockOperator> {
    check_mode_dim(dim)?;
    FockOperator::new(vec![dim], lowering_matrix(dim))
}

pub fn creation(dim: usize) -> Result<FockOperator> {
    Ok(annihilation(dim)?.adjoint())
}

pub fn number(dim: usize) -> Result<FockOperator> {
    check_mode_dim(dim)?;
    FockOperator::new(vec![dim], number_matrix(dim))
}

pub fn identity(dim: usize) -> Result<FockOperator> {
    check_mode_dim(dim)?;
    FockOperator::new(vec![dim], CMatrix::identity(dim, dim))
}

pub fn identity_on(dims: &[usize]) -> Result<FockOperator> {
    let n = total_dim(dims);
    FockOperator::new(dims.to_vec(), CMatrix::identity(n, n))
}

/// Tensor product; the resulting dims are the concatenation in order.
pub fn tensor(ops: &[FockOperator]) -> Result<FockOperator> {
    let (first, rest) = ops
        .split_first()
        .ok_or_else(|| Error::DimensionMismatch("empty tensor product".into()))?;
    let mut dims = first.dims.clone();
    let mut matrix = first.matrix.clone();
    for op in rest {
        dims.extend_from_slice(&op.dims);
        matrix = matrix.kronecker(&op.matrix);
    }
    FockOperator::new(dims, matrix)
}

/// `[x, y] = xy − yx`.
pub fn commutator(x: &FockOperator, y: &FockOperator) -> Result<FockOperator> {
    x.mul(y)?.sub(&y.mul(x)?)
}

/// Matrix exponential of the truncated anti-hermitian generator
/// `α a† − α* a`, computed through the eigendecomposition of the hermitian
/// matrix `i(α a† − α* a)`. Unitary to rounding.
pub fn displacement(alpha: Complex64, dim: usize) -> Result<FockOperator> {
    check_mode_dim(dim)?;
    let norm_sqr = alpha.norm_sqr();
    if norm_sqr > dim as f64 / 4.0 {
        return Err(Error::AlphaTooLargeForDim { norm_sqr, dim });
    }
    let a = lowering_matrix(dim);
    let generator = a.adjoint() * alpha - &a * alpha.conj();
    let hermitian = generator * Complex64::i();
    let eig = hermitian.symmetric_eigen();
    let phases = CMatrix::from_diagonal(&eig.eigenvalues.map(|l| Complex64::new(0.0, -l).exp()));
    let d = &eig.eigenvectors * phases * eig.eigenvectors.adjoint();
    FockOperator::new(vec![dim], d)
}
