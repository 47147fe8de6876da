//! Dense helpers on top of nalgebra: numeric rank, least squares, and
//! incremental orthonormalization.

use nalgebra::{DMatrix, DVector};

/// Relative singular-value cutoff used for numeric rank decisions.
pub const RANK_REL_TOL: f64 = 1e-9;

/// Number of singular values exceeding `rel_tol` times the largest one.
pub fn numeric_rank(mat: &DMatrix<f64>, rel_tol: f64) -> usize {
    if mat.nrows() == 0 || mat.ncols() == 0 {
        return 0;
    }
    let sv = mat.clone().singular_values();
    let smax = sv.max();
    // The NaN check keeps non-finite input from reading as full rank.
    if smax <= 0.0 || smax.is_nan() {
        return 0;
    }
    sv.iter().filter(|&&s| s > rel_tol * smax).count()
}

/// Minimum-norm least-squares solution of `a x = b` via SVD with a relative
/// singular-value cutoff. A basis-free `a` (zero columns) yields an empty
/// solution vector.
/// Count of singular values above rel_tol times an external scale.
///
/// [`numeric_rank`] measures against the matrix's own largest singular
/// value, which misreads a submatrix made of pure rounding noise (its
/// "largest" value is noise too) as full rank. When the matrix is a
/// restriction of something with a known scale, cut against that scale
/// instead.
pub fn numeric_rank_at_scale(mat: &DMatrix<f64>, rel_tol: f64, scale: f64) -> usize {
    if mat.nrows() == 0 || mat.ncols() == 0 {
        return 0;
    }
    let sv = mat.clone().singular_values();
    sv.iter().filter(|&&s| s > rel_tol * scale).count()
}

pub fn least_squares(a: &DMatrix<f64>, b: &DVector<f64>, rel_tol: f64) -> DVector<f64> {
    if a.ncols() == 0 {
        return DVector::zeros(0);
    }
    let svd = a.clone().svd(true, true);
    let smax = svd.singular_values.max();
    // With a zero `a` every direction is cut off and the solution is zero.
    let eps = if smax > 0.0 { rel_tol * smax } else { f64::MAX };
    svd.solve(b, eps)
        .expect("SVD factors were requested")
        .column(0)
        .into_owned()
}

/// Component of `v` orthogonal to the columns of `basis` (assumed
/// orthonormal), renormalized. `None` when `v` is numerically in the span.
/// The projection is applied twice so the result stays orthogonal in
/// floating point even when `v` is nearly dependent.
pub fn orthonormal_complement(
    basis: &DMatrix<f64>,
    v: &DVector<f64>,
    tol: f64,
) -> Option<DVector<f64>> {
    let mut w = v.clone();
    if basis.ncols() > 0 {
        for _ in 0..2 {
            w -= basis * (basis.transpose() * &w);
        }
    }
    let norm = w.norm();
    if norm <= tol * v.norm().max(1.0) {
        None
    } else {
        Some(w / norm)
    }
}

/// `mat` restricted to `rows`, preserving the given order.
pub fn select_rows(mat: &DMatrix<f64>, rows: &[usize]) -> DMatrix<f64> {
    mat.select_rows(rows.iter())
}

/// `mat` with `col` appended on the right.
pub fn append_column(mat: &DMatrix<f64>, col: &DVector<f64>) -> DMatrix<f64> {
    let k = mat.ncols();
    let mut out = mat.clone().insert_column(k, 0.0);
    out.set_column(k, col);
    out
}

/// Whether `estimate` matches `truth` within `rel_tol` in Frobenius norm,
/// relative to the norm of `truth`. A zero `truth` demands an exactly zero
/// difference.
pub fn frobenius_close(estimate: &DMatrix<f64>, truth: &DMatrix<f64>, rel_tol: f64) -> bool {
    (estimate - truth).norm() <= rel_tol * truth.norm()
}
