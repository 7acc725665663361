//! Dense hermitian diagonalization.
//!
//! The basis is first split into the connected components of the matrix's
//! nonzero pattern, so Hamiltonians with conserved quantities are solved
//! block by block. The spectrum is unchanged by this; only the cost drops.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::{CMatrix, FockOperator};

/// Default cap on the total Hilbert-space dimension.
pub const DEFAULT_DIMENSION_CAP: usize = 4096;

/// The `k` smallest eigenvalues, ascending. `k` larger than the dimension
/// returns the whole spectrum.
pub fn eigenvalues(op: &FockOperator, k: usize) -> Result<Vec<f64>> {
    eigenvalues_with_cap(op, k, DEFAULT_DIMENSION_CAP)
}

pub fn eigenvalues_with_cap(op: &FockOperator, k: usize, cap: usize) -> Result<Vec<f64>> {
    if op.dim() > cap {
        return Err(Error::DimensionTooLarge { dim: op.dim(), cap });
    }
    op.ensure_hermitian()?;
    let mut spectrum = hermitian_spectrum(op.matrix());
    spectrum.truncate(k);
    Ok(spectrum)
}

/// Full ascending spectrum of a hermitian matrix.
pub fn hermitian_spectrum(matrix: &CMatrix) -> Vec<f64> {
    let mut values = Vec::with_capacity(matrix.nrows());
    for block in connected_blocks(matrix) {
        values.extend(block_spectrum(matrix, &block));
    }
    values.sort_by(f64::total_cmp);
    values
}

fn block_spectrum(matrix: &CMatrix, block: &[usize]) -> Vec<f64> {
    if let [i] = block {
        return vec![matrix[(*i, *i)].re];
    }
    let m = block.len();
    let sub: DMatrix<Complex64> = DMatrix::from_fn(m, m, |i, j| matrix[(block[i], block[j])]);
    sub.symmetric_eigenvalues().iter().copied().collect()
}

/// Connected components of the graph with an edge wherever `matrix[(i, j)] != 0`.
pub fn connected_blocks(matrix: &CMatrix) -> Vec<Vec<usize>> {
    let n = matrix.nrows();
    let mut parent: Vec<usize> = (0..n).collect();

    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }

    for i in 0..n {
        for j in (i + 1)..n {
            if matrix[(i, j)] != Complex64::new(0.0, 0.0) || matrix[(j, i)] != Complex64::new(0.0, 0.0) {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri.max(rj)] = ri.min(rj);
                }
            }
        }
    }

    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for i in 0..n {
        let root = find(&mut parent, i);
        if slot[root] == usize::MAX {
            slot[root] = blocks.len();
            blocks.push(Vec::new());
        }
        blocks[slot[root]].push(i);
    }
    blocks
}
