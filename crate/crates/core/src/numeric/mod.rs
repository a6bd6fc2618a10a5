//! Dense complex linear algebra: tolerances, decompositions, antilinear
//! operators and kernel solvers.

mod antilinear;
mod decomp;
mod dump;
mod kernel;
mod product;

pub use antilinear::{antilinear_polar, AntilinearOperator, PolarParts};
pub use decomp::{hermitian_eigen, hermitian_eigenvalues, shifted_positive, right_svd, singular_values, thin_svd, HermitianEigen, Svd};
pub use dump::{format_matrix, parse_matrix};
pub use product::{ad_mul, conjugate_by, mul, mul_ad};
pub use kernel::{
    joint_kernel, joint_kernel_stacked, null_space, DenseMap, LinearMap, SylvesterMap,
};

use nalgebra::{Complex, DMatrix, DVector};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type C64 = Complex<f64>;
pub type ComplexMatrix = DMatrix<C64>;
pub type ComplexVector = DVector<C64>;
pub type RealMatrix = DMatrix<f64>;

pub const ZERO: C64 = Complex { re: 0.0, im: 0.0 };
pub const ONE: C64 = Complex { re: 1.0, im: 0.0 };
pub const I: C64 = Complex { re: 0.0, im: 1.0 };

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumericError {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("singular input: smallest singular value {smallest:e} below {threshold:e}")]
    SingularInput { smallest: f64, threshold: f64 },
    #[error("antilinear operator is not involutive (residual {residual:e})")]
    NotInvolutive { residual: f64 },
    #[error("invalid tolerance policy: {0}")]
    InvalidTolerance(String),
    #[error("malformed matrix dump: {0}")]
    Parse(String),
}

/// Thresholds shared by every comparison in the crate.
///
/// `eq_tol` bounds norm differences that should vanish; `rank_tol` is the
/// relative singular-value cutoff used when counting kernel dimensions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TolerancePolicy {
    pub eq_tol: f64,
    pub rank_tol: f64,
}

impl Default for TolerancePolicy {
    fn default() -> Self {
        Self { eq_tol: 1e-9, rank_tol: 1e-11 }
    }
}

impl TolerancePolicy {
    pub fn new(eq_tol: f64, rank_tol: f64) -> Result<Self, NumericError> {
        if !(eq_tol >= 0.0 && rank_tol >= 0.0) {
            return Err(NumericError::InvalidTolerance(format!(
                "tolerances must be nonnegative (eq_tol={eq_tol}, rank_tol={rank_tol})"
            )));
        }
        if rank_tol > eq_tol {
            return Err(NumericError::InvalidTolerance(format!(
                "rank_tol {rank_tol} exceeds eq_tol {eq_tol}"
            )));
        }
        Ok(Self { eq_tol, rank_tol })
    }

    /// Same rank cutoff, different equality threshold (clamped so the
    /// invariant `rank_tol <= eq_tol` survives).
    pub fn with_eq_tol(self, eq_tol: f64) -> Self {
        Self { eq_tol, rank_tol: self.rank_tol.min(eq_tol) }
    }
}

pub fn c(re: f64, im: f64) -> C64 {
    Complex::new(re, im)
}

pub fn identity(n: usize) -> ComplexMatrix {
    ComplexMatrix::identity(n, n)
}

pub fn complexify(m: &RealMatrix) -> ComplexMatrix {
    m.map(|x| c(x, 0.0))
}

pub fn basis_vector(n: usize, i: usize) -> ComplexVector {
    let mut v = ComplexVector::zeros(n);
    v[i] = ONE;
    v
}

/// Frobenius norm; every "norm of a difference" in the crate uses it.
pub fn norm(m: &ComplexMatrix) -> f64 {
    m.norm()
}

pub fn distance(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    (a - b).norm()
}

pub fn commutator(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a * b - b * a
}

pub fn anticommutator(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a * b + b * a
}

/// Hermitian inner product `sum conj(x_i) y_i`.
pub fn inner(x: &ComplexVector, y: &ComplexVector) -> C64 {
    x.dotc(y)
}

/// Frobenius inner product `tr(a* b)`.
pub fn frobenius_inner(a: &ComplexMatrix, b: &ComplexMatrix) -> C64 {
    a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum()
}

/// Column-major vectorisation.
pub fn vectorize(m: &ComplexMatrix) -> ComplexVector {
    ComplexVector::from_column_slice(m.as_slice())
}

pub fn unvectorize(v: &ComplexVector, rows: usize) -> ComplexMatrix {
    assert!(rows > 0 && v.len() % rows == 0, "vector length {} is not a multiple of {rows}", v.len());
    ComplexMatrix::from_column_slice(rows, v.len() / rows, v.as_slice())
}

/// Best scalar approximation `c·1` of a square matrix and the Frobenius
/// distance to it.
pub fn scalar_part(m: &ComplexMatrix) -> (C64, f64) {
    let n = m.nrows();
    let s = m.trace() / c(n as f64, 0.0);
    let mut d = m.clone();
    for i in 0..n {
        d[(i, i)] -= s;
    }
    (s, d.norm())
}

/// `‖U*U − 1‖`.
pub fn unitarity_defect(u: &ComplexMatrix) -> f64 {
    let n = u.ncols();
    (u.adjoint() * u - identity(n)).norm()
}

/// Distance between two operators after removing the best relative phase.
pub fn projective_distance(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    let overlap = frobenius_inner(b, a);
    let phase = if overlap.norm() > 0.0 { overlap / overlap.norm() } else { ONE };
    (a - b * phase).norm()
}

/// Apply a real function to a Hermitian matrix through its eigen-decomposition.
pub fn hermitian_function(h: &ComplexMatrix, f: impl Fn(f64) -> f64) -> ComplexMatrix {
    let eig = hermitian_eigen(h);
    let v = &eig.vectors;
    let d = ComplexMatrix::from_diagonal(&ComplexVector::from_iterator(eig.values.len(), eig.values.iter().map(|&x| c(f(x), 0.0))));
    v * d * v.adjoint()
}

/// Unitary factor of the polar decomposition `M = U·P`.
pub fn polar_unitary(m: &ComplexMatrix, tol: TolerancePolicy) -> Result<ComplexMatrix, NumericError> {
    if !m.is_square() {
        return Err(NumericError::ShapeMismatch(format!(
            "polar decomposition needs a square matrix, got {}x{}",
            m.nrows(),
            m.ncols()
        )));
    }
    let svd = thin_svd(m);
    let smallest = svd.singular_values.iter().cloned().fold(f64::INFINITY, f64::min);
    if smallest < tol.rank_tol {
        return Err(NumericError::SingularInput { smallest, threshold: tol.rank_tol });
    }
    Ok(svd.u * svd.v.adjoint())
}

/// An orthonormal basis of a subspace, stored as the columns of a matrix.
#[derive(Debug, Clone)]
pub struct Subspace {
    basis: ComplexMatrix,
}

impl Subspace {
    /// Trusts the caller that the columns are orthonormal.
    pub fn from_orthonormal(basis: ComplexMatrix) -> Self {
        Self { basis }
    }

    /// Orthonormalises an arbitrary spanning set, dropping directions whose
    /// singular value is below `rank_tol` relative to the largest one.
    pub fn span(spanning: &ComplexMatrix, tol: TolerancePolicy) -> Self {
        let ambient = spanning.nrows();
        if spanning.ncols() == 0 || ambient == 0 {
            return Self::empty(ambient);
        }
        let svd = thin_svd(spanning);
        let u = svd.u;
        let top = svd.singular_values.iter().cloned().fold(0.0, f64::max);
        if top == 0.0 {
            return Self::empty(ambient);
        }
        let keep: Vec<usize> = (0..svd.singular_values.len())
            .filter(|&i| svd.singular_values[i] > tol.rank_tol * top)
            .collect();
        Self { basis: u.select_columns(keep.iter()) }
    }

    pub fn from_vectors(vectors: &[ComplexVector], ambient: usize, tol: TolerancePolicy) -> Self {
        if vectors.is_empty() {
            return Self::empty(ambient);
        }
        Self::span(&ComplexMatrix::from_columns(vectors), tol)
    }

    pub fn empty(ambient: usize) -> Self {
        Self { basis: ComplexMatrix::zeros(ambient, 0) }
    }

    pub fn full(ambient: usize) -> Self {
        Self { basis: identity(ambient) }
    }

    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.nrows()
    }

    pub fn basis(&self) -> &ComplexMatrix {
        &self.basis
    }

    pub fn into_basis(self) -> ComplexMatrix {
        self.basis
    }

    pub fn vectors(&self) -> Vec<ComplexVector> {
        self.basis.column_iter().map(|c| c.into_owned()).collect()
    }

    pub fn project(&self, v: &ComplexVector) -> ComplexVector {
        let column = ComplexMatrix::from_column_slice(v.len(), 1, v.as_slice());
        ComplexVector::from_column_slice(mul(&self.basis, &ad_mul(&self.basis, &column)).as_slice())
    }

    /// `‖v − Pv‖`.
    pub fn residual(&self, v: &ComplexVector) -> f64 {
        (v - self.project(v)).norm()
    }

    /// Largest residual of the other subspace's basis vectors after
    /// projection onto this one.
    pub fn containment_residual(&self, other: &Subspace) -> f64 {
        if other.dim() == 0 {
            return 0.0;
        }
        self.max_column_residual(other.basis())
    }

    /// Largest `‖c − Pc‖` over the columns `c` of `m`.
    pub fn max_column_residual(&self, m: &ComplexMatrix) -> f64 {
        (m - mul(&self.basis, &ad_mul(&self.basis, m))).column_iter().map(|c| c.norm()).fold(0.0, f64::max)
    }
}

/// Mutual projection residual of two subspaces, or `None` when the
/// dimensions differ.
pub fn subspace_distance(a: &Subspace, b: &Subspace) -> Option<f64> {
    if a.dim() != b.dim() || a.ambient_dim() != b.ambient_dim() {
        return None;
    }
    Some(a.containment_residual(b).max(b.containment_residual(a)))
}

/// True iff both spanning sets describe the same subspace. Inputs need not be
/// orthonormal.
pub fn subspace_equal(b1: &ComplexMatrix, b2: &ComplexMatrix, tol: TolerancePolicy) -> bool {
    let (s1, s2) = (Subspace::span(b1, tol), Subspace::span(b2, tol));
    matches!(subspace_distance(&s1, &s2), Some(r) if r <= tol.eq_tol)
}
