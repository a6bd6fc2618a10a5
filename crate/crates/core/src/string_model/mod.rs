//! Discrete loops and based paths in `Spin(d)`, the lifted loop group acting
//! on Fock space, and the string crossed module built from them.
//!
//! The circle is sampled at `2n` points `j = 0..2n`. A based path has `n + 1`
//! samples `p_0 = e, …, p_n`. Gluing two paths with a common endpoint gives
//! the loop `(p_1, …, p_n, q_n, …, q_1)`, so that the reflection
//! `j ↦ 2n − 1 − j` exchanges the two halves without fixed points. A loop
//! counts as supported in the first half when it is trivial from point
//! `n − 1` on; the sample at `n − 1` carries the path endpoint, so
//! restrictions of such loops end at the identity.

mod checks;
mod spin;

pub use checks::{
    check_lift_projectivity, check_loop_operations, check_omega_homomorphism, check_reflection, disjoint_commutativity_check,
    loop_cocycle_compare, overlapping_commutator, pi1_kernel_dimension, CocycleComparison,
};
pub use spin::SpinGroup;

use crate::bogoliubov::{implement_pin, normalize_phase, BogoliubovError, Implementer, Normalization, OrthogonalMap, Parity, PhaseMode};
use crate::clifford::{CliffordError, CliffordModel, LatticeModel};
use crate::numeric::{distance, identity, ComplexMatrix, RealMatrix, TolerancePolicy, C64};
use crate::sampling::{random_phase, SampleRng};
use crate::twogroup::{ComputableGroup, CrossedModule};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StringError {
    #[error("paths do not share their endpoint (distance {0:e})")]
    EndpointMismatch(f64),
    #[error("path does not start at the identity (distance {0:e})")]
    NotBased(f64),
    #[error("loop is not supported in the first half (defect {0:e})")]
    NotHalfSupported(f64),
    #[error("expected {expected} samples, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("spin groups need d ≥ 2, got {0}")]
    DimensionTooSmall(usize),
    #[error(transparent)]
    Clifford(#[from] CliffordError),
    #[error(transparent)]
    Bogoliubov(#[from] BogoliubovError),
}

/// Values `γ_j` at the `2n` lattice points.
#[derive(Debug, Clone)]
pub struct DiscreteLoop {
    values: Vec<ComplexMatrix>,
}

impl DiscreteLoop {
    pub fn values(&self) -> &[ComplexMatrix] {
        &self.values
    }
}

/// Samples `p_0 = e, p_1, …, p_n` of a based path.
#[derive(Debug, Clone)]
pub struct DiscretePath {
    values: Vec<ComplexMatrix>,
}

impl DiscretePath {
    pub fn values(&self) -> &[ComplexMatrix] {
        &self.values
    }

    pub fn endpoint(&self) -> &ComplexMatrix {
        self.values.last().expect("paths have n + 1 ≥ 2 samples")
    }
}

/// A loop paired with a unitary implementing its pointwise rotation: an
/// element of the pulled-back central extension.
#[derive(Debug, Clone)]
pub struct ExtLoop {
    pub loop_part: DiscreteLoop,
    pub implementer: Implementer,
}

impl ExtLoop {
    pub fn unitary(&self) -> &ComplexMatrix {
        &self.implementer.unitary
    }
}

/// The lattice, its Fock representation and the spin group acting pointwise.
#[derive(Debug, Clone)]
pub struct StringModel {
    clifford: CliffordModel,
    spin: SpinGroup,
    tol: TolerancePolicy,
}

impl StringModel {
    pub fn new(n: usize, d: usize, tol: TolerancePolicy) -> Result<Self, StringError> {
        if d < 2 {
            return Err(StringError::DimensionTooSmall(d));
        }
        Ok(Self::from_clifford(CliffordModel::new(LatticeModel::new(n, d)?), tol))
    }

    pub fn from_clifford(clifford: CliffordModel, tol: TolerancePolicy) -> Self {
        let spin = SpinGroup::new(clifford.lattice().d());
        Self { clifford, spin, tol }
    }

    pub fn clifford(&self) -> &CliffordModel {
        &self.clifford
    }
    pub fn spin(&self) -> &SpinGroup {
        &self.spin
    }
    pub fn tol(&self) -> TolerancePolicy {
        self.tol
    }
    pub fn n(&self) -> usize {
        self.clifford.lattice().n()
    }
    pub fn d(&self) -> usize {
        self.clifford.lattice().d()
    }
    pub fn points(&self) -> usize {
        2 * self.n()
    }

    // Loops.

    pub fn loop_from(&self, values: Vec<ComplexMatrix>) -> Result<DiscreteLoop, StringError> {
        if values.len() != self.points() {
            return Err(StringError::WrongLength { expected: self.points(), got: values.len() });
        }
        Ok(DiscreteLoop { values })
    }

    /// Exponentiates `B_ab` (for `a < b`, row-major) at each point.
    fn exponentiate(&self, coords: &[Vec<f64>]) -> Result<Vec<ComplexMatrix>, StringError> {
        let d = self.d();
        let per_point = d * (d - 1) / 2;
        coords
            .iter()
            .map(|xs| {
                if xs.len() != per_point {
                    return Err(StringError::WrongLength { expected: per_point, got: xs.len() });
                }
                let mut b = RealMatrix::zeros(d, d);
                let pairs = (0..d).flat_map(|a| (a + 1..d).map(move |c| (a, c)));
                for ((a, c), &x) in pairs.zip(xs) {
                    b[(a, c)] = x;
                    b[(c, a)] = -x;
                }
                Ok(self.spin.exp(&b))
            })
            .collect()
    }

    /// A loop from bivector coordinates, one list per point.
    pub fn loop_from_bivectors(&self, coords: &[Vec<f64>]) -> Result<DiscreteLoop, StringError> {
        self.loop_from(self.exponentiate(coords)?)
    }

    /// A path from bivector coordinates, `n + 1` lists with a zero first entry.
    pub fn path_from_bivectors(&self, coords: &[Vec<f64>]) -> Result<DiscretePath, StringError> {
        self.path_from(self.exponentiate(coords)?)
    }

    pub fn identity_loop(&self) -> DiscreteLoop {
        DiscreteLoop { values: vec![self.spin.identity(); self.points()] }
    }

    pub fn loop_mul(&self, a: &DiscreteLoop, b: &DiscreteLoop) -> DiscreteLoop {
        DiscreteLoop { values: a.values.iter().zip(&b.values).map(|(x, y)| x * y).collect() }
    }

    pub fn loop_inv(&self, a: &DiscreteLoop) -> DiscreteLoop {
        DiscreteLoop { values: a.values.iter().map(|x| x.adjoint()).collect() }
    }

    /// Largest pointwise distance.
    pub fn loop_distance(&self, a: &DiscreteLoop, b: &DiscreteLoop) -> f64 {
        a.values.iter().zip(&b.values).map(|(x, y)| distance(x, y)).fold(0.0, f64::max)
    }

    /// Random values at `points`, identity elsewhere.
    pub fn random_loop_on(&self, rng: &mut SampleRng, points: &[usize]) -> DiscreteLoop {
        let mut values = vec![self.spin.identity(); self.points()];
        for &j in points {
            values[j] = self.spin.random(rng);
        }
        DiscreteLoop { values }
    }

    pub fn random_loop(&self, rng: &mut SampleRng) -> DiscreteLoop {
        let all: Vec<usize> = (0..self.points()).collect();
        self.random_loop_on(rng, &all)
    }

    /// Points where a first-half loop may be nontrivial: `0..n−1`.
    pub fn half_support(&self) -> Vec<usize> {
        (0..self.n().saturating_sub(1)).collect()
    }

    pub fn random_half_loop(&self, rng: &mut SampleRng) -> DiscreteLoop {
        self.random_loop_on(rng, &self.half_support())
    }

    /// Distance from the identity at the points `n − 1, …, 2n − 1`.
    pub fn half_support_defect(&self, a: &DiscreteLoop) -> f64 {
        let e = self.spin.identity();
        a.values[self.n() - 1..].iter().map(|x| distance(x, &e)).fold(0.0, f64::max)
    }

    /// `γ ↦ γ∘τ`, the loop traversed backwards: `(γ∘τ)_j = γ_{2n−1−j}`.
    pub fn reflect_loop(&self, a: &DiscreteLoop) -> DiscreteLoop {
        DiscreteLoop { values: a.values.iter().rev().cloned().collect() }
    }

    // Paths.

    pub fn path_from(&self, values: Vec<ComplexMatrix>) -> Result<DiscretePath, StringError> {
        if values.len() != self.n() + 1 {
            return Err(StringError::WrongLength { expected: self.n() + 1, got: values.len() });
        }
        let defect = distance(&values[0], &self.spin.identity());
        if defect > self.tol.eq_tol {
            return Err(StringError::NotBased(defect));
        }
        Ok(DiscretePath { values })
    }

    pub fn identity_path(&self) -> DiscretePath {
        DiscretePath { values: vec![self.spin.identity(); self.n() + 1] }
    }

    pub fn path_mul(&self, a: &DiscretePath, b: &DiscretePath) -> DiscretePath {
        DiscretePath { values: a.values.iter().zip(&b.values).map(|(x, y)| x * y).collect() }
    }

    pub fn path_inv(&self, a: &DiscretePath) -> DiscretePath {
        DiscretePath { values: a.values.iter().map(|x| x.adjoint()).collect() }
    }

    pub fn path_distance(&self, a: &DiscretePath, b: &DiscretePath) -> f64 {
        a.values.iter().zip(&b.values).map(|(x, y)| distance(x, y)).fold(0.0, f64::max)
    }

    pub fn random_path(&self, rng: &mut SampleRng) -> DiscretePath {
        let mut values = vec![self.spin.identity()];
        values.extend((0..self.n()).map(|_| self.spin.random(rng)));
        DiscretePath { values }
    }

    /// Random path ending at `end`.
    pub fn random_path_to(&self, rng: &mut SampleRng, end: &ComplexMatrix) -> DiscretePath {
        let mut p = self.random_path(rng);
        let last = p.values.len() - 1;
        p.values[last] = end.clone();
        p
    }

    /// `(e, γ_0, …, γ_{n−1})` for a first-half loop; the result ends at the
    /// identity.
    pub fn restrict(&self, a: &DiscreteLoop) -> Result<DiscretePath, StringError> {
        let defect = self.half_support_defect(a);
        if defect > self.tol.eq_tol {
            return Err(StringError::NotHalfSupported(defect));
        }
        Ok(self.restrict_unchecked(a))
    }

    fn restrict_unchecked(&self, a: &DiscreteLoop) -> DiscretePath {
        let mut values = vec![self.spin.identity()];
        values.extend(a.values[..self.n()].iter().cloned());
        DiscretePath { values }
    }

    /// The loop `(p_1, …, p_n, q_n, …, q_1)`; the endpoints must agree.
    pub fn concat(&self, p: &DiscretePath, q: &DiscretePath) -> Result<DiscreteLoop, StringError> {
        let gap = distance(p.endpoint(), q.endpoint());
        if gap > self.tol.eq_tol {
            return Err(StringError::EndpointMismatch(gap));
        }
        Ok(self.concat_unchecked(p, q))
    }

    fn concat_unchecked(&self, p: &DiscretePath, q: &DiscretePath) -> DiscreteLoop {
        let mut values: Vec<ComplexMatrix> = p.values[1..].to_vec();
        values.extend(q.values[1..].iter().rev().cloned());
        DiscreteLoop { values }
    }

    /// The paths `(p, q)` with `concat(p, q) = γ`; their endpoints are `γ_{n−1}`
    /// and `γ_n`, so they match exactly when the loop is such a concatenation.
    pub fn halves(&self, a: &DiscreteLoop) -> (DiscretePath, DiscretePath) {
        let n = self.n();
        let e = self.spin.identity();
        let first = std::iter::once(e.clone()).chain(a.values[..n].iter().cloned()).collect();
        let second = std::iter::once(e).chain(a.values[n..].iter().rev().cloned()).collect();
        (DiscretePath { values: first }, DiscretePath { values: second })
    }

    /// `concat(p, p)`.
    pub fn double(&self, p: &DiscretePath) -> DiscreteLoop {
        self.concat_unchecked(p, p)
    }

    // Orthogonal action and lifts.

    /// Block-diagonal rotation with block `λ(γ_j)` at point `j`.
    pub fn omega(&self, a: &DiscreteLoop) -> OrthogonalMap {
        let d = self.d();
        let mut m = RealMatrix::zeros(self.points() * d, self.points() * d);
        for (j, x) in a.values.iter().enumerate() {
            m.view_mut((j * d, j * d), (d, d)).copy_from(&self.spin.covering(x));
        }
        OrthogonalMap::from_trusted(m)
    }

    /// `(γ, U)` with `U` the vacuum-normalised pin implementer of `ω(γ)`.
    pub fn lift(&self, a: &DiscreteLoop) -> Result<ExtLoop, StringError> {
        self.lift_with(a, PhaseMode::Vacuum)
    }

    pub fn lift_with(&self, a: &DiscreteLoop, mode: PhaseMode) -> Result<ExtLoop, StringError> {
        let raw = implement_pin(&self.clifford, &self.omega(a), self.tol)?;
        Ok(ExtLoop { loop_part: a.clone(), implementer: normalize_phase(&raw, mode, self.tol) })
    }

    /// `(e, z·1)`.
    pub fn central(&self, z: C64) -> ExtLoop {
        ExtLoop {
            loop_part: self.identity_loop(),
            implementer: Implementer {
                unitary: identity(self.clifford.fock_dim()) * z,
                implemented: OrthogonalMap::identity(self.clifford.dim_h()),
                parity: Parity::Even,
                normalization: Normalization::Raw,
            },
        }
    }

    pub fn ext_mul(&self, a: &ExtLoop, b: &ExtLoop) -> ExtLoop {
        ExtLoop { loop_part: self.loop_mul(&a.loop_part, &b.loop_part), implementer: a.implementer.compose(&b.implementer) }
    }

    pub fn ext_inv(&self, a: &ExtLoop) -> ExtLoop {
        ExtLoop { loop_part: self.loop_inv(&a.loop_part), implementer: a.implementer.inverse() }
    }

    pub fn ext_distance(&self, a: &ExtLoop, b: &ExtLoop) -> f64 {
        self.loop_distance(&a.loop_part, &b.loop_part).max(distance(a.unitary(), b.unitary()))
    }

    // Reflections.

    /// `δ_j ⊗ u ↦ δ_{2n−1−j} ⊗ u`.
    pub fn reflection(&self) -> OrthogonalMap {
        let p = self.points();
        self.point_permutation(|j| (2 * p - 1 - j) % p, |_| 1.0)
    }

    /// The vertex reflection `δ_j ⊗ u ↦ δ_{2n−j mod 2n} ⊗ u` with the sign
    /// `τδ_0 = −δ_0`; it fixes the points `0` and `n`.
    pub fn vertex_reflection(&self) -> OrthogonalMap {
        let p = self.points();
        self.point_permutation(|j| (p - j) % p, |j| if j == 0 { -1.0 } else { 1.0 })
    }

    fn point_permutation(&self, image: impl Fn(usize) -> usize, sign: impl Fn(usize) -> f64) -> OrthogonalMap {
        let d = self.d();
        let dim = self.points() * d;
        let mut m = RealMatrix::zeros(dim, dim);
        for j in 0..self.points() {
            for a in 0..d {
                m[(image(j) * d + a, j * d + a)] = sign(j);
            }
        }
        OrthogonalMap::from_trusted(m)
    }

    /// `τ g τ` for the reflection `τ`.
    pub fn sigma(&self, g: &OrthogonalMap) -> OrthogonalMap {
        let tau = self.reflection();
        tau.compose(g).compose(&tau)
    }
}

/// Based paths under pointwise multiplication.
#[derive(Debug, Clone)]
pub struct PathGroup {
    model: Arc<StringModel>,
}

impl ComputableGroup for PathGroup {
    type Element = DiscretePath;

    fn identity(&self) -> DiscretePath {
        self.model.identity_path()
    }
    fn mul(&self, a: &DiscretePath, b: &DiscretePath) -> DiscretePath {
        self.model.path_mul(a, b)
    }
    fn inv(&self, a: &DiscretePath) -> DiscretePath {
        self.model.path_inv(a)
    }
    fn distance(&self, a: &DiscretePath, b: &DiscretePath) -> f64 {
        self.model.path_distance(a, b)
    }
    fn sample(&self, rng: &mut SampleRng) -> DiscretePath {
        self.model.random_path(rng)
    }
}

/// Lifted first-half loops `(γ, U)`, including the scalars `(e, z)`.
#[derive(Debug, Clone)]
pub struct LiftedHalfLoops {
    model: Arc<StringModel>,
}

impl ComputableGroup for LiftedHalfLoops {
    type Element = ExtLoop;

    fn identity(&self) -> ExtLoop {
        self.model.central(C64::new(1.0, 0.0))
    }
    fn mul(&self, a: &ExtLoop, b: &ExtLoop) -> ExtLoop {
        self.model.ext_mul(a, b)
    }
    fn inv(&self, a: &ExtLoop) -> ExtLoop {
        self.model.ext_inv(a)
    }
    fn distance(&self, a: &ExtLoop, b: &ExtLoop) -> f64 {
        self.model.ext_distance(a, b)
    }
    /// A random first-half loop, lifted, times a random phase.
    fn sample(&self, rng: &mut SampleRng) -> ExtLoop {
        let a = self.model.random_half_loop(rng);
        let lifted = self.model.lift(&a).expect("pointwise rotations are special orthogonal");
        let z = random_phase(rng);
        self.model.ext_mul(&self.model.central(z), &lifted)
    }
}

/// Lifted first-half loops over based paths: `t(γ, U) = restrict(γ)` and
/// `α(p, (γ, U)) = (Δp·γ·Δp⁻¹, V U V*)` with `V` a lift of `Δp = double(p)`.
#[derive(Debug, Clone)]
pub struct StringCrossedModule {
    paths: PathGroup,
    lifts: LiftedHalfLoops,
}

impl StringCrossedModule {
    pub fn new(model: Arc<StringModel>) -> Self {
        Self { paths: PathGroup { model: model.clone() }, lifts: LiftedHalfLoops { model } }
    }

    pub fn model(&self) -> &StringModel {
        &self.paths.model
    }

    pub fn shared_model(&self) -> Arc<StringModel> {
        self.paths.model.clone()
    }
}

pub fn string_crossed_module(model: Arc<StringModel>) -> StringCrossedModule {
    StringCrossedModule::new(model)
}

impl CrossedModule for StringCrossedModule {
    type Base = PathGroup;
    type Top = LiftedHalfLoops;

    fn base(&self) -> &PathGroup {
        &self.paths
    }
    fn top(&self) -> &LiftedHalfLoops {
        &self.lifts
    }
    fn boundary(&self, h: &ExtLoop) -> DiscretePath {
        self.model().restrict_unchecked(&h.loop_part)
    }
    fn act(&self, p: &DiscretePath, h: &ExtLoop) -> ExtLoop {
        let m = self.model();
        let doubled = m.double(p);
        let v = m.lift(&doubled).expect("pointwise rotations are special orthogonal");
        m.ext_mul(&m.ext_mul(&v, h), &m.ext_inv(&v))
    }
}

#[cfg(test)]
mod tests;
