//! Singular value and Hermitian eigen-decompositions.
//!
//! Both are delegated to faer; nalgebra's complex SVD loses accuracy on
//! rank-deficient inputs with repeated singular values, which is exactly the
//! shape of the span and kernel problems solved here.

use super::{ComplexMatrix, C64};
use faer::{Mat, MatRef, Side};

fn to_faer(m: &ComplexMatrix) -> Mat<C64> {
    Mat::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
}

fn from_faer(m: MatRef<'_, C64>) -> ComplexMatrix {
    ComplexMatrix::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
}

/// Thin SVD `M = U·diag(σ)·V*` with `σ` in non-increasing order.
#[derive(Debug, Clone)]
pub struct Svd {
    pub u: ComplexMatrix,
    pub singular_values: Vec<f64>,
    pub v: ComplexMatrix,
}

pub fn thin_svd(m: &ComplexMatrix) -> Svd {
    let svd = to_faer(m).thin_svd().expect("SVD did not converge");
    let s = svd.S();
    Svd {
        u: from_faer(svd.U()),
        singular_values: (0..s.dim()).map(|k| s[k].re).collect(),
        v: from_faer(svd.V()),
    }
}

/// Singular values and right singular vectors only. Tall inputs are first
/// reduced to their triangular QR factor, which has the same singular values
/// and right singular vectors.
pub fn right_svd(m: &ComplexMatrix) -> (Vec<f64>, ComplexMatrix) {
    let a = to_faer(m);
    let svd = if m.nrows() > 2 * m.ncols() {
        let r = a.qr().thin_R().to_owned();
        r.thin_svd()
    } else {
        a.thin_svd()
    }
    .expect("SVD did not converge");
    let s = svd.S();
    ((0..s.dim()).map(|k| s[k].re).collect(), from_faer(svd.V()))
}

pub fn singular_values(m: &ComplexMatrix) -> Vec<f64> {
    to_faer(m).singular_values().expect("SVD did not converge")
}

/// Eigen-decomposition of a Hermitian matrix (lower triangle is read), with
/// eigenvalues in non-decreasing order.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

pub fn hermitian_eigen(h: &ComplexMatrix) -> HermitianEigen {
    let evd = to_faer(h).self_adjoint_eigen(Side::Lower).expect("eigen-decomposition did not converge");
    let s = evd.S();
    HermitianEigen { values: (0..s.dim()).map(|k| s[k].re).collect(), vectors: from_faer(evd.U()) }
}

pub fn hermitian_eigenvalues(h: &ComplexMatrix) -> Vec<f64> {
    to_faer(h).self_adjoint_eigenvalues(Side::Lower).expect("eigen-decomposition did not converge")
}


/// True when the Cholesky factorisation of `h + shift·1` succeeds, which
/// certifies that the smallest eigenvalue of `h` is at least `-shift`.
pub fn shifted_positive(h: &ComplexMatrix, shift: f64) -> bool {
    let mut a = to_faer(h);
    for i in 0..h.nrows() {
        a[(i, i)] += C64::new(shift, 0.0);
    }
    a.llt(Side::Lower).is_ok()
}
