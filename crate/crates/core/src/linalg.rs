//! Small dense linear-algebra helpers shared by the geometry modules.
//!
//! Every space here has real dimension at most ~20, so everything is dense
//! `nalgebra` storage and nothing tries to be clever about allocation.

use nalgebra::{DMatrix, DVector};

use crate::error::{GeometryError, Result};

/// A tangent vector in the real model space R^{2n}.
pub type Vector = DVector<f64>;
/// A linear operator on the real model space R^{2n}.
pub type Operator = DMatrix<f64>;

/// Largest singular value.
pub fn op_norm(m: &Operator) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.clone()
        .svd(false, false)
        .singular_values
        .iter()
        .fold(0.0_f64, |acc, &s| acc.max(s))
}

/// Max absolute entry of `m - m^T`.
pub fn asymmetry(m: &Operator) -> f64 {
    (m - m.transpose()).amax()
}

pub fn outer(u: &Vector, v: &Vector) -> Operator {
    u * v.transpose()
}

/// Orthogonal projector onto the span of an orthonormal family.
pub fn projector(dim: usize, basis: &[Vector]) -> Operator {
    basis
        .iter()
        .fold(Operator::zeros(dim, dim), |acc, b| acc + outer(b, b))
}

pub fn unit(dim: usize, k: usize) -> Vector {
    let mut v = Vector::zeros(dim);
    v[k] = 1.0;
    v
}

/// Columns of `m` as vectors.
pub fn columns(m: &Operator) -> Vec<Vector> {
    m.column_iter().map(|c| c.into_owned()).collect()
}

pub fn from_columns(cols: &[Vector]) -> Operator {
    Operator::from_columns(cols)
}

/// Removes the components of `v` along an orthonormal family, twice.
///
/// A second sweep restores orthogonality lost to cancellation in the first.
pub fn reorthogonalize(v: &Vector, basis: &[Vector]) -> Vector {
    let mut w = v.clone();
    for _ in 0..2 {
        for b in basis {
            let c = b.dot(&w);
            w.axpy(-c, b, 1.0);
        }
    }
    w
}

/// Orthonormalizes `vectors` (twice-iterated Gram-Schmidt), rejecting
/// families whose smallest singular value falls below `tol`.
pub fn orthonormalize(vectors: &[Vector], tol: f64) -> Result<Vec<Vector>> {
    if vectors.is_empty() {
        return Ok(Vec::new());
    }
    let sigma = smallest_singular_value(vectors);
    if sigma < tol {
        return Err(GeometryError::DegenerateInput { sigma, tol });
    }
    let mut out: Vec<Vector> = Vec::with_capacity(vectors.len());
    for v in vectors {
        let w = reorthogonalize(v, &out);
        let norm = w.norm();
        if norm < tol {
            return Err(GeometryError::DegenerateInput { sigma: norm, tol });
        }
        out.push(w / norm);
    }
    Ok(out)
}

/// Orthonormal basis of the orthogonal complement of `span(vectors)` in R^dim.
///
/// The complement is completed greedily from the coordinate basis, always
/// taking the candidate with the largest residual.
pub fn complement(dim: usize, vectors: &[Vector], tol: f64) -> Result<Vec<Vector>> {
    let mut basis = orthonormalize(vectors, tol)?;
    let inputs = basis.len();
    let mut candidates: Vec<Vector> = (0..dim).map(|k| unit(dim, k)).collect();
    while basis.len() < dim {
        let (best, residual) = candidates
            .iter()
            .enumerate()
            .map(|(i, c)| (i, reorthogonalize(c, &basis)))
            .max_by(|a, b| a.1.norm().total_cmp(&b.1.norm()))
            .expect("candidate pool is never empty while the basis is incomplete");
        candidates.swap_remove(best);
        let norm = residual.norm();
        basis.push(residual / norm);
    }
    Ok(basis.split_off(inputs))
}

pub fn smallest_singular_value(vectors: &[Vector]) -> f64 {
    let m = from_columns(vectors);
    m.svd(false, false)
        .singular_values
        .iter()
        .fold(f64::INFINITY, |acc, &s| acc.min(s))
}

/// Symmetric eigen-decomposition with eigenvalues sorted ascending.
pub fn sorted_symmetric_eigen(m: &Operator) -> (Vec<f64>, Vec<Vector>) {
    let sym = (m + m.transpose()) * 0.5;
    let eig = sym.symmetric_eigen();
    let mut idx: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    idx.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = idx.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = idx
        .iter()
        .map(|&i| eig.eigenvectors.column(i).into_owned())
        .collect();
    (values, vectors)
}

/// Groups ascending eigenvalues whose consecutive gap is below `tol`,
/// returning `(mean eigenvalue, multiplicity)` per cluster.
pub fn cluster_eigenvalues(sorted: &[f64], tol: f64) -> Vec<(f64, usize)> {
    let mut out: Vec<(f64, usize)> = Vec::new();
    let mut start = 0;
    for i in 1..=sorted.len() {
        if i == sorted.len() || sorted[i] - sorted[i - 1] > tol {
            let chunk = &sorted[start..i];
            if !chunk.is_empty() {
                out.push((chunk.iter().sum::<f64>() / chunk.len() as f64, chunk.len()));
            }
            start = i;
        }
    }
    out
}
