//! Coherence and sparsity measurement for subspaces.
//!
//! Two scalar parameters drive every observation bound in this crate: the
//! coherence of a subspace (how concentrated its projections of standard
//! basis vectors can get) and its nonsparsity-number psi (the minimum
//! support size over nonzero vectors it contains). Psi is computed exactly
//! by brute-force support enumeration, which is why it only runs below a
//! hard ambient-dimension cap; the point of this module is ground truth,
//! not scale.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::linalg::{
    append_column, numeric_rank, numeric_rank_at_scale, orthonormal_complement, select_rows,
};

/// Largest ambient dimension the support enumeration will accept.
pub const ENUMERATION_CAP: usize = 20;

/// Maximum deviation from the identity Gram matrix a basis may carry.
pub const ORTHONORMALITY_TOL: f64 = 1e-10;

/// Orthonormal basis of a linear subspace, stored as the columns of an
/// ambient_dim x dim matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SubspaceBasis {
    q: DMatrix<f64>,
}

impl SubspaceBasis {
    /// The zero-dimensional subspace of an ambient space.
    pub fn empty(ambient_dim: usize) -> Self {
        SubspaceBasis {
            q: DMatrix::zeros(ambient_dim, 0),
        }
    }

    /// Wrap a matrix whose columns are checked to be orthonormal.
    pub fn from_orthonormal(q: DMatrix<f64>) -> Result<Self> {
        if q.ncols() > q.nrows() {
            return Err(Error::InvalidDimensions(format!(
                "{} basis vectors cannot be independent in dimension {}",
                q.ncols(),
                q.nrows()
            )));
        }
        let gram = q.transpose() * &q;
        let mut deviation: f64 = 0.0;
        for i in 0..gram.nrows() {
            for j in 0..gram.ncols() {
                let expected = if i == j { 1.0 } else { 0.0 };
                deviation = deviation.max((gram[(i, j)] - expected).abs());
            }
        }
        if deviation > ORTHONORMALITY_TOL {
            return Err(Error::NotOrthonormal { deviation });
        }
        Ok(SubspaceBasis { q })
    }

    /// Orthonormal basis of the column space of `mat`.
    pub fn column_space(mat: &DMatrix<f64>, rel_tol: f64) -> Result<Self> {
        let rank = numeric_rank(mat, rel_tol);
        if rank == 0 {
            return Err(Error::ZeroMatrix);
        }
        let svd = mat.clone().svd(true, false);
        let u = svd.u.expect("left singular vectors were requested");
        SubspaceBasis::from_orthonormal(u.columns(0, rank).into_owned())
    }

    /// Orthonormal basis of the row space of `mat`.
    pub fn row_space(mat: &DMatrix<f64>, rel_tol: f64) -> Result<Self> {
        SubspaceBasis::column_space(&mat.transpose(), rel_tol)
    }

    pub fn ambient_dim(&self) -> usize {
        self.q.nrows()
    }

    pub fn dim(&self) -> usize {
        self.q.ncols()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.q
    }

    /// The basis rows indexed by `rows`, as a |rows| x dim matrix.
    pub fn restricted_to(&self, rows: &[usize]) -> DMatrix<f64> {
        select_rows(&self.q, rows)
    }

    /// Rank of the `rows` restriction, with singular values measured
    /// against this basis's unit scale. A restriction can consist purely
    /// of rounding noise (rows that are zero up to floating point), and a
    /// self-relative rank test would read such noise as full rank.
    pub fn restricted_rank(&self, rows: &[usize], tol: f64) -> usize {
        numeric_rank_at_scale(&self.restricted_to(rows), tol, 1.0)
    }

    /// Basis of this subspace plus the direction of `v`; errors if `v`
    /// already lies in the span.
    pub fn extended_with(&self, v: &DVector<f64>, tol: f64) -> Result<SubspaceBasis> {
        if v.len() != self.ambient_dim() {
            return Err(Error::InvalidDimensions(format!(
                "vector of length {} cannot extend a basis in dimension {}",
                v.len(),
                self.ambient_dim()
            )));
        }
        match orthonormal_complement(&self.q, v, tol) {
            Some(w) => Ok(SubspaceBasis {
                q: append_column(&self.q, &w),
            }),
            None => Err(Error::DependentColumn),
        }
    }

    /// Coherence: (ambient_dim / dim) times the largest squared norm of a
    /// projected standard basis vector. For an orthonormal basis that
    /// projection norm is the norm of the corresponding basis row, so the
    /// value ranges over [1, ambient_dim/dim].
    pub fn coherence(&self) -> Result<f64> {
        if self.dim() == 0 {
            return Err(Error::EmptyBasis);
        }
        let max_row_sq = (0..self.ambient_dim())
            .map(|i| self.q.row(i).norm_squared())
            .fold(0.0, f64::max);
        Ok(self.ambient_dim() as f64 / self.dim() as f64 * max_row_sq)
    }
}

/// Support size of a vector: entries with |x_i| > tol * max|x|. The zero
/// vector has support 0.
pub fn nonsparsity_vector(x: &DVector<f64>, tol: f64) -> usize {
    let max = x.amax();
    if max == 0.0 {
        return 0;
    }
    x.iter().filter(|&&v| v.abs() > tol * max).count()
}

/// Number of zero entries of a vector (its length minus the support size).
pub fn sparsity_vector(x: &DVector<f64>, tol: f64) -> usize {
    x.len() - nonsparsity_vector(x, tol)
}

/// Advance `support` to the next k-subset of 0..n in lexicographic order;
/// returns false when `support` was the last one.
fn next_combination(support: &mut [usize], n: usize) -> bool {
    let k = support.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if support[i] != i + n - k {
            support[i] += 1;
            for j in i + 1..k {
                support[j] = support[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Minimum support size over nonzero vectors of the subspace, by exhaustive
/// support enumeration with an explicit ambient-dimension cap.
///
/// A candidate support T admits a subspace vector exactly when the basis
/// rows outside T are rank-deficient, because a combination vanishing off T
/// is a null vector of that row restriction. Supports are visited in
/// increasing size, so the first success is the minimum.
pub fn nonsparsity_subspace_capped(
    basis: &SubspaceBasis,
    tol: f64,
    cap: usize,
) -> Result<usize> {
    let m = basis.ambient_dim();
    let k = basis.dim();
    if k == 0 {
        return Err(Error::EmptyBasis);
    }
    if m > cap {
        return Err(Error::EnumerationCap { ambient: m, cap });
    }
    for size in 1..(m - k + 1) {
        let mut support: Vec<usize> = (0..size).collect();
        loop {
            let complement: Vec<usize> =
                (0..m).filter(|i| !support.contains(i)).collect();
            if basis.restricted_rank(&complement, tol) < k {
                return Ok(size);
            }
            if !next_combination(&mut support, m) {
                break;
            }
        }
    }
    // Only k-1 rows lie outside a support of size m-k+1, so that size
    // always admits a vector: no enumeration needed.
    Ok(m - k + 1)
}

/// [`nonsparsity_subspace_capped`] at the default cap.
pub fn nonsparsity_subspace(basis: &SubspaceBasis, tol: f64) -> Result<usize> {
    nonsparsity_subspace_capped(basis, tol, ENUMERATION_CAP)
}

/// Ambient dimension minus the subspace nonsparsity-number.
pub fn sparsity_subspace(basis: &SubspaceBasis, tol: f64) -> Result<usize> {
    Ok(basis.ambient_dim() - nonsparsity_subspace(basis, tol)?)
}

/// Minimum support size over nonzero vectors of the column space of `mat`.
pub fn nonsparsity_matrix(mat: &DMatrix<f64>, tol: f64) -> Result<usize> {
    let colspace = SubspaceBasis::column_space(mat, tol)?;
    nonsparsity_subspace(&colspace, tol)
}

/// Row count of `mat` minus its column-space nonsparsity-number.
pub fn sparsity_matrix(mat: &DMatrix<f64>, tol: f64) -> Result<usize> {
    Ok(mat.nrows() - nonsparsity_matrix(mat, tol)?)
}

/// Conservative lower bound on the column-space nonsparsity-number implied
/// by a known coherence mu0 and rank r: floor(m / (mu0 * r)), at least 1.
/// Useful when only coherence is published for an instance; the matching
/// row-space value should then be taken as 1.
pub fn psi_from_coherence(mu0: f64, r: usize, m: usize) -> Result<usize> {
    if mu0 < 1.0 || mu0.is_nan() {
        return Err(Error::InvalidParameter(format!(
            "coherence is at least 1, got {mu0}"
        )));
    }
    if r == 0 || m == 0 {
        return Err(Error::InvalidParameter(format!(
            "rank and dimension must be positive, got r={r}, m={m}"
        )));
    }
    let bound = (m as f64 / (mu0 * r as f64)).floor() as usize;
    Ok(bound.max(1))
}
