//! The automorphism crossed module of a full matrix algebra: invertible
//! elements mapped to the automorphisms they induce, with automorphisms
//! acting on invertibles by evaluation.

use super::{ComputableGroup, CrossedModule};
use crate::numeric::{c, distance, identity, ComplexMatrix, ComplexVector};
use crate::sampling::{random_unitary, SampleRng};
use rand::Rng;

/// Invertible `size × size` complex matrices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GeneralLinear {
    pub size: usize,
}

impl ComputableGroup for GeneralLinear {
    type Element = ComplexMatrix;

    fn identity(&self) -> ComplexMatrix {
        identity(self.size)
    }
    fn mul(&self, a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
        a * b
    }
    fn inv(&self, a: &ComplexMatrix) -> ComplexMatrix {
        a.clone().try_inverse().expect("group element is invertible")
    }
    fn distance(&self, a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
        distance(a, b)
    }
    /// `V·diag(σ)·W` with Haar-like unitaries and `σ ∈ [1/2, 2]`, so samples
    /// stay well conditioned.
    fn sample(&self, rng: &mut SampleRng) -> ComplexMatrix {
        let v = random_unitary(rng, self.size);
        let w = random_unitary(rng, self.size);
        let sigma = ComplexVector::from_iterator(self.size, (0..self.size).map(|_| c(2f64.powf(rng.random_range(-1.0..1.0)), 0.0)));
        v * ComplexMatrix::from_diagonal(&sigma) * w
    }
}

/// The inner automorphism `x ↦ m x m⁻¹`, stored with both factors.
#[derive(Debug, Clone)]
pub struct Conjugation {
    pub matrix: ComplexMatrix,
    pub inverse: ComplexMatrix,
}

impl Conjugation {
    pub fn by(m: &ComplexMatrix) -> Self {
        Self { matrix: m.clone(), inverse: m.clone().try_inverse().expect("conjugating matrix is invertible") }
    }

    pub fn apply(&self, x: &ComplexMatrix) -> ComplexMatrix {
        &self.matrix * x * &self.inverse
    }
}

/// Automorphisms of the full matrix algebra, all of which are inner. Two
/// automorphisms are compared by their values on the matrix units.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InnerConjugations {
    pub size: usize,
}

impl ComputableGroup for InnerConjugations {
    type Element = Conjugation;

    fn identity(&self) -> Conjugation {
        Conjugation { matrix: identity(self.size), inverse: identity(self.size) }
    }
    fn mul(&self, a: &Conjugation, b: &Conjugation) -> Conjugation {
        Conjugation { matrix: &a.matrix * &b.matrix, inverse: &b.inverse * &a.inverse }
    }
    fn inv(&self, a: &Conjugation) -> Conjugation {
        Conjugation { matrix: a.inverse.clone(), inverse: a.matrix.clone() }
    }
    fn distance(&self, a: &Conjugation, b: &Conjugation) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.size {
            for j in 0..self.size {
                let e = ComplexMatrix::from_fn(self.size, self.size, |r, s| if (r, s) == (i, j) { c(1.0, 0.0) } else { c(0.0, 0.0) });
                worst = worst.max(distance(&a.apply(&e), &b.apply(&e)));
            }
        }
        worst
    }
    fn sample(&self, rng: &mut SampleRng) -> Conjugation {
        Conjugation::by(&GeneralLinear { size: self.size }.sample(rng))
    }
}

/// `GL(k) → Aut(M_k)`, `u ↦ Ad(u)`, with `θ` acting on units by evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MatrixAutomorphisms {
    units: GeneralLinear,
    automorphisms: InnerConjugations,
}

impl MatrixAutomorphisms {
    pub fn new(size: usize) -> Self {
        Self { units: GeneralLinear { size }, automorphisms: InnerConjugations { size } }
    }
}

impl CrossedModule for MatrixAutomorphisms {
    type Base = InnerConjugations;
    type Top = GeneralLinear;

    fn base(&self) -> &InnerConjugations {
        &self.automorphisms
    }
    fn top(&self) -> &GeneralLinear {
        &self.units
    }
    fn boundary(&self, u: &ComplexMatrix) -> Conjugation {
        Conjugation::by(u)
    }
    fn act(&self, theta: &Conjugation, u: &ComplexMatrix) -> ComplexMatrix {
        theta.apply(u)
    }
}
