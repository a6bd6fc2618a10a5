//! Bogoliubov automorphisms and their implementers on Fock space.
//!
//! An orthogonal map `g` of the real lattice space acts on the Clifford algebra
//! by `π(v) ↦ π(gv)`; an implementer is a Fock unitary `U` with
//! `U π(v) U* = π(gv)`. Two constructions are provided behind the
//! [`ImplementerStrategy`] trait: a kernel solve that needs no conventions and
//! a product of plane-rotation implementers.

use crate::clifford::CliffordModel;
use crate::numeric::{
    c, complexify, conjugate_by, distance, identity, mul, joint_kernel, polar_unitary, scalar_part, unvectorize, ComplexMatrix,
    LinearMap, NumericError, RealMatrix, Subspace, SylvesterMap, TolerancePolicy, C64, ONE,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BogoliubovError {
    #[error("matrix is not orthogonal (defect {0:e})")]
    NotOrthogonal(f64),
    #[error("orthogonal map has determinant -1")]
    NotSpecialOrthogonal,
    #[error("matrix is not antisymmetric (defect {0:e})")]
    NotAntisymmetric(f64),
    #[error("map acts on dimension {got}, model has dimension {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("implementer space has dimension {0}, expected exactly 1")]
    NonUniqueImplementer(usize),
    #[error("operator is not a scalar (defect {0:e})")]
    NonScalarDefect(f64),
    #[error("derived implementer violates its commutator contract (residual {0:e})")]
    ContractViolation(f64),
    #[error("unitary neither commutes nor anticommutes with the grading")]
    IndefiniteParity,
    #[error("no implementer strategy named {0:?}")]
    UnknownStrategy(String),
    #[error(transparent)]
    Numeric(#[from] NumericError),
}

/// A real orthogonal matrix acting on the lattice space.
#[derive(Debug, Clone, PartialEq)]
pub struct OrthogonalMap {
    matrix: RealMatrix,
}

impl OrthogonalMap {
    pub fn new(matrix: RealMatrix, tol: TolerancePolicy) -> Result<Self, BogoliubovError> {
        if !matrix.is_square() {
            return Err(BogoliubovError::NotOrthogonal(f64::INFINITY));
        }
        let defect = (matrix.transpose() * &matrix - RealMatrix::identity(matrix.nrows(), matrix.ncols())).norm();
        if defect > tol.eq_tol {
            return Err(BogoliubovError::NotOrthogonal(defect));
        }
        Ok(Self { matrix })
    }

    /// For matrices orthogonal by construction (products, block sums).
    pub(crate) fn from_trusted(matrix: RealMatrix) -> Self {
        Self { matrix }
    }

    pub fn identity(dim: usize) -> Self {
        Self { matrix: RealMatrix::identity(dim, dim) }
    }

    /// Rotation by `theta` in the plane of basis vectors `u`, `w`:
    /// `u ↦ cos θ u + sin θ w`, `w ↦ −sin θ u + cos θ w`.
    pub fn plane_rotation(dim: usize, u: usize, w: usize, theta: f64) -> Self {
        assert!(u != w && u < dim && w < dim);
        let mut m = RealMatrix::identity(dim, dim);
        let (s, co) = theta.sin_cos();
        m[(u, u)] = co;
        m[(w, w)] = co;
        m[(w, u)] = s;
        m[(u, w)] = -s;
        Self { matrix: m }
    }

    pub fn matrix(&self) -> &RealMatrix {
        &self.matrix
    }
    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }
    pub fn determinant(&self) -> f64 {
        self.matrix.determinant()
    }
    pub fn is_special(&self) -> bool {
        self.determinant() > 0.0
    }
    /// `self ∘ other`.
    pub fn compose(&self, other: &OrthogonalMap) -> OrthogonalMap {
        Self { matrix: &self.matrix * &other.matrix }
    }
    pub fn inverse(&self) -> OrthogonalMap {
        Self { matrix: self.matrix.transpose() }
    }
    pub fn distance(&self, other: &OrthogonalMap) -> f64 {
        (&self.matrix - &other.matrix).norm()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum Parity {
    Even,
    Odd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum Normalization {
    Raw,
    Vacuum,
    Scan,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhaseMode {
    Vacuum,
    Scan,
}

#[derive(Debug, Clone)]
pub struct Implementer {
    pub unitary: ComplexMatrix,
    pub implemented: OrthogonalMap,
    pub parity: Parity,
    pub normalization: Normalization,
}

impl Implementer {
    pub fn residual(&self, model: &CliffordModel) -> f64 {
        implementer_residual(model, &self.unitary, &self.implemented)
    }

    /// Product in the pairs model: `(g, U)(h, V) = (gh, UV)`.
    pub fn compose(&self, other: &Implementer) -> Implementer {
        let parity = if self.parity == other.parity { Parity::Even } else { Parity::Odd };
        Implementer {
            unitary: mul(&self.unitary, &other.unitary),
            implemented: self.implemented.compose(&other.implemented),
            parity,
            normalization: Normalization::Raw,
        }
    }

    pub fn inverse(&self) -> Implementer {
        Implementer {
            unitary: self.unitary.adjoint(),
            implemented: self.implemented.inverse(),
            parity: self.parity,
            normalization: Normalization::Raw,
        }
    }
}

/// `π(g b_i)` for every real basis vector.
pub fn transformed_generators(model: &CliffordModel, g: &OrthogonalMap) -> Vec<ComplexMatrix> {
    (0..model.dim_h()).map(|i| model.pi_real(g.matrix().column(i).as_slice())).collect()
}

/// `max_i ‖U π(b_i) U* − π(g b_i)‖`.
pub fn implementer_residual(model: &CliffordModel, u: &ComplexMatrix, g: &OrthogonalMap) -> f64 {
    transformed_generators(model, g)
        .iter()
        .zip(model.generators())
        .map(|(target, gen)| distance(&conjugate_by(u, gen), target))
        .fold(0.0, f64::max)
}

fn check_dimension(model: &CliffordModel, g: &OrthogonalMap) -> Result<(), BogoliubovError> {
    if g.dim() != model.dim_h() {
        return Err(BogoliubovError::DimensionMismatch { expected: model.dim_h(), got: g.dim() });
    }
    Ok(())
}

fn parity_of(model: &CliffordModel, u: &ComplexMatrix, tol: TolerancePolicy) -> Result<Parity, BogoliubovError> {
    let gamma = model.grading();
    let even = distance(&(u * gamma), &(gamma * u));
    let odd = (u * gamma + gamma * u).norm();
    let bound = tol.eq_tol * (model.fock_dim() as f64).sqrt();
    match (even <= bound, odd <= bound) {
        (true, _) => Ok(Parity::Even),
        (false, true) => Ok(Parity::Odd),
        _ => Err(BogoliubovError::IndefiniteParity),
    }
}

/// A construction of implementers, selectable by name.
pub trait ImplementerStrategy: Send + Sync {
    fn name(&self) -> &'static str;
    fn implement(
        &self,
        model: &CliffordModel,
        g: &OrthogonalMap,
        tol: TolerancePolicy,
    ) -> Result<Implementer, BogoliubovError>;
}

/// Solves `π(g b_i) U = U π(b_i)` for all `i` as a joint kernel.
pub struct KernelOracle;

/// Multiplies plane-rotation implementers along a Givens factorisation.
pub struct PinProduct;

impl ImplementerStrategy for KernelOracle {
    fn name(&self) -> &'static str {
        "oracle"
    }
    fn implement(
        &self,
        model: &CliffordModel,
        g: &OrthogonalMap,
        tol: TolerancePolicy,
    ) -> Result<Implementer, BogoliubovError> {
        implement_oracle(model, g, tol)
    }
}

impl ImplementerStrategy for PinProduct {
    fn name(&self) -> &'static str {
        "pin"
    }
    fn implement(
        &self,
        model: &CliffordModel,
        g: &OrthogonalMap,
        tol: TolerancePolicy,
    ) -> Result<Implementer, BogoliubovError> {
        implement_pin(model, g, tol)
    }
}

/// Implementer strategies by name.
pub struct ImplementerRegistry {
    strategies: BTreeMap<&'static str, Box<dyn ImplementerStrategy>>,
}

impl Default for ImplementerRegistry {
    fn default() -> Self {
        let mut registry = Self { strategies: BTreeMap::new() };
        registry.register(Box::new(KernelOracle));
        registry.register(Box::new(PinProduct));
        registry
    }
}

impl ImplementerRegistry {
    pub fn register(&mut self, strategy: Box<dyn ImplementerStrategy>) {
        self.strategies.insert(strategy.name(), strategy);
    }

    pub fn get(&self, name: &str) -> Result<&dyn ImplementerStrategy, BogoliubovError> {
        self.strategies
            .get(name)
            .map(|s| s.as_ref())
            .ok_or_else(|| BogoliubovError::UnknownStrategy(name.to_string()))
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.strategies.keys().copied().collect()
    }
}

/// Coefficients of the generic quadratic probe; fixed so results are
/// reproducible.
fn probe_coefficients(dim_h: usize) -> RealMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0b0e);
    RealMatrix::from_fn(dim_h, dim_h, |i, j| if i < j { rng.random_range(-1.0..1.0) } else { 0.0 })
}

/// `i Σ_{i<j} c_ij P_i P_j`, Hermitian when the `P_i` are anti-Hermitian and
/// pairwise anticommuting.
fn quadratic_probe(ops: &[ComplexMatrix], coeffs: &RealMatrix) -> ComplexMatrix {
    let dim = ops[0].nrows();
    let mut h = ComplexMatrix::zeros(dim, dim);
    for i in 0..ops.len() {
        let mut tail = ComplexMatrix::zeros(dim, dim);
        for (j, op) in ops.iter().enumerate().skip(i + 1) {
            tail += op * c(coeffs[(i, j)], 0.0);
        }
        h += &ops[i] * tail;
    }
    h * c(0.0, 1.0)
}

/// All solutions `U` of `U π(b) = π(g b) U`, vectorised.
///
/// A quadratic Hamiltonian `H` and its Bogoliubov image `H_g` satisfy
/// `H_g U = U H`; `H` has simple spectrum, so this probe alone cuts the
/// search space down to the Fock dimension before the generator constraints
/// are applied.
pub fn implementer_kernel(model: &CliffordModel, g: &OrthogonalMap, tol: TolerancePolicy) -> Result<Subspace, BogoliubovError> {
    check_dimension(model, g)?;
    let dim = model.fock_dim();
    let targets = transformed_generators(model, g);
    let coeffs = probe_coefficients(model.dim_h());
    let probe = SylvesterMap::new(quadratic_probe(&targets, &coeffs), quadratic_probe(model.generators(), &coeffs));
    let relations: Vec<SylvesterMap> = targets
        .iter()
        .zip(model.generators())
        .map(|(t, b)| SylvesterMap::new(t.clone(), b.clone()))
        .collect();
    let mut constraints: Vec<&dyn LinearMap> = vec![&probe];
    constraints.extend(relations.iter().map(|r| r as &dyn LinearMap));
    Ok(joint_kernel(dim * dim, &constraints, tol)?)
}

/// Implementer from the joint kernel of the implementer relation, which
/// must be one-dimensional.
pub fn implement_oracle(
    model: &CliffordModel,
    g: &OrthogonalMap,
    tol: TolerancePolicy,
) -> Result<Implementer, BogoliubovError> {
    let kernel = implementer_kernel(model, g, tol)?;
    if kernel.dim() != 1 {
        return Err(BogoliubovError::NonUniqueImplementer(kernel.dim()));
    }
    let raw = unvectorize(&kernel.basis().column(0).into_owned(), model.fock_dim());
    let unitary = polar_unitary(&raw, tol)?;
    let parity = parity_of(model, &unitary, tol)?;
    Ok(Implementer { unitary, implemented: g.clone(), parity, normalization: Normalization::Raw })
}

/// One factor of a Givens factorisation: rotation by `theta` in the plane
/// of basis vectors `(u, w)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlaneRotation {
    pub u: usize,
    pub w: usize,
    pub theta: f64,
}

/// Writes a special orthogonal matrix as an ordered product of plane
/// rotations, the rightmost factor applied first.
pub fn givens_factors(g: &RealMatrix) -> Vec<PlaneRotation> {
    let dim = g.nrows();
    let mut r = g.clone();
    let mut factors = Vec::new();
    for col in 0..dim {
        for row in col + 1..dim {
            let b = r[(row, col)];
            if b == 0.0 {
                continue;
            }
            let a = r[(col, col)];
            let rho = a.hypot(b);
            let (co, s) = (a / rho, b / rho);
            for k in 0..dim {
                let (x, y) = (r[(col, k)], r[(row, k)]);
                r[(col, k)] = co * x + s * y;
                r[(row, k)] = -s * x + co * y;
            }
            factors.push(PlaneRotation { u: col, w: row, theta: s.atan2(co) });
        }
    }
    // r is now diag(±1) with an even number of −1 entries; pair them into
    // rotations by π.
    let negatives: Vec<usize> = (0..dim).filter(|&i| r[(i, i)] < 0.0).collect();
    for pair in negatives.chunks(2) {
        if let [u, w] = *pair {
            factors.push(PlaneRotation { u, w, theta: std::f64::consts::PI });
        }
    }
    factors
}

/// `cos(θ/2) + sin(θ/2) π(u)π(w)`, the implementer of a plane rotation.
pub fn rotation_implementer(model: &CliffordModel, rot: &PlaneRotation) -> ComplexMatrix {
    let (s, co) = (rot.theta / 2.0).sin_cos();
    let pair = model.generator(rot.u) * model.generator(rot.w);
    identity(model.fock_dim()) * c(co, 0.0) + pair * c(s, 0.0)
}

pub fn implement_pin(
    model: &CliffordModel,
    g: &OrthogonalMap,
    _tol: TolerancePolicy,
) -> Result<Implementer, BogoliubovError> {
    check_dimension(model, g)?;
    if !g.is_special() {
        return Err(BogoliubovError::NotSpecialOrthogonal);
    }
    let mut unitary = identity(model.fock_dim());
    for rot in givens_factors(g.matrix()) {
        let (s, co) = (rot.theta / 2.0).sin_cos();
        let pair = model.right_mul_generator(&model.right_mul_generator(&unitary, rot.u), rot.w);
        unitary = unitary * c(co, 0.0) + pair * c(s, 0.0);
    }
    Ok(Implementer { unitary, implemented: g.clone(), parity: Parity::Even, normalization: Normalization::Raw })
}

/// Multiply by the unit scalar that makes `⟨Ω, UΩ⟩` (vacuum mode) or the
/// first entry above `eq_tol` in row-major order (scan mode) real positive.
/// Vacuum mode falls back to scan when the vacuum overlap is below `rank_tol`.
pub fn normalize_phase(imp: &Implementer, mode: PhaseMode, tol: TolerancePolicy) -> Implementer {
    let (unitary, normalization) = normalize_unitary_phase(&imp.unitary, mode, tol);
    Implementer { unitary, normalization, ..imp.clone() }
}

pub fn normalize_unitary_phase(
    u: &ComplexMatrix,
    mode: PhaseMode,
    tol: TolerancePolicy,
) -> (ComplexMatrix, Normalization) {
    let vacuum = u[(0, 0)];
    if mode == PhaseMode::Vacuum && vacuum.norm() >= tol.rank_tol {
        return (u * (vacuum.conj() / vacuum.norm()), Normalization::Vacuum);
    }
    let (rows, cols) = u.shape();
    for i in 0..rows {
        for j in 0..cols {
            let z = u[(i, j)];
            if z.norm() > tol.eq_tol {
                return (u * (z.conj() / z.norm()), Normalization::Scan);
            }
        }
    }
    (u.clone(), Normalization::Scan)
}

/// Pin implementer with vacuum phase normalisation.
pub fn normalized_pin(
    model: &CliffordModel,
    g: &OrthogonalMap,
    tol: TolerancePolicy,
) -> Result<ComplexMatrix, BogoliubovError> {
    Ok(normalize_phase(&implement_pin(model, g, tol)?, PhaseMode::Vacuum, tol).unitary)
}

/// `c(g, h) = U_g U_h U_{gh}^{-1}` for vacuum-normalised implementers.
pub fn extension_cocycle(
    model: &CliffordModel,
    g: &OrthogonalMap,
    h: &OrthogonalMap,
    tol: TolerancePolicy,
) -> Result<C64, BogoliubovError> {
    let ug = normalized_pin(model, g, tol)?;
    let uh = normalized_pin(model, h, tol)?;
    let ugh = normalized_pin(model, &g.compose(h), tol)?;
    let product = ug * uh * ugh.adjoint();
    let (scalar, defect) = scalar_part(&product);
    if defect > tol.eq_tol {
        return Err(BogoliubovError::NonScalarDefect(defect));
    }
    Ok(scalar)
}

/// A real antisymmetric matrix: an element of the orthogonal Lie algebra.
#[derive(Debug, Clone, PartialEq)]
pub struct SkewGenerator {
    matrix: RealMatrix,
}

impl SkewGenerator {
    pub fn new(matrix: RealMatrix, tol: TolerancePolicy) -> Result<Self, BogoliubovError> {
        if !matrix.is_square() {
            return Err(BogoliubovError::NotAntisymmetric(f64::INFINITY));
        }
        let defect = (&matrix + matrix.transpose()).norm();
        if defect > tol.eq_tol {
            return Err(BogoliubovError::NotAntisymmetric(defect));
        }
        Ok(Self { matrix })
    }

    /// Generator of the rotation from `u` towards `w`.
    pub fn plane(dim: usize, u: usize, w: usize) -> Self {
        let mut m = RealMatrix::zeros(dim, dim);
        m[(w, u)] = 1.0;
        m[(u, w)] = -1.0;
        Self { matrix: m }
    }

    pub fn matrix(&self) -> &RealMatrix {
        &self.matrix
    }

    pub fn bracket(&self, other: &SkewGenerator) -> SkewGenerator {
        Self { matrix: &self.matrix * &other.matrix - &other.matrix * &self.matrix }
    }

    pub fn add(&self, other: &SkewGenerator) -> SkewGenerator {
        Self { matrix: &self.matrix + &other.matrix }
    }

    pub fn scale(&self, s: f64) -> SkewGenerator {
        Self { matrix: &self.matrix * s }
    }
}

/// `dΓ(X) = −¼ Σ_ij X_ij π_i π_j` minus its vacuum expectation, so that
/// `[dΓ(X), π(v)] = π(Xv)` and `⟨Ω, dΓ(X) Ω⟩ = 0`.
pub fn derived_implementer(
    model: &CliffordModel,
    x: &SkewGenerator,
    tol: TolerancePolicy,
) -> Result<ComplexMatrix, BogoliubovError> {
    let dim_h = model.dim_h();
    if x.matrix().nrows() != dim_h {
        return Err(BogoliubovError::DimensionMismatch { expected: dim_h, got: x.matrix().nrows() });
    }
    let dim = model.fock_dim();
    let xm = x.matrix();
    let gens = model.generators();
    let mut out = ComplexMatrix::zeros(dim, dim);
    for i in 0..dim_h {
        let mut row = ComplexMatrix::zeros(dim, dim);
        for (j, gj) in gens.iter().enumerate() {
            if xm[(i, j)] != 0.0 {
                row += gj * c(xm[(i, j)], 0.0);
            }
        }
        out += &gens[i] * row;
    }
    out *= c(-0.25, 0.0);
    let vacuum = out[(0, 0)];
    for k in 0..dim {
        out[(k, k)] -= vacuum;
    }
    let residual = (0..dim_h)
        .map(|k| {
            let lhs = &out * &gens[k] - &gens[k] * &out;
            let rhs = model.pi_real(xm.column(k).as_slice());
            distance(&lhs, &rhs)
        })
        .fold(0.0, f64::max);
    if residual > tol.eq_tol {
        return Err(BogoliubovError::ContractViolation(residual));
    }
    Ok(out)
}

/// The scalar `s(X, Y)` with `[dΓ(X), dΓ(Y)] − dΓ([X, Y]) = s(X, Y)·1`.
pub fn schwinger_term(
    model: &CliffordModel,
    x: &SkewGenerator,
    y: &SkewGenerator,
    tol: TolerancePolicy,
) -> Result<C64, BogoliubovError> {
    let dx = derived_implementer(model, x, tol)?;
    let dy = derived_implementer(model, y, tol)?;
    let dxy = derived_implementer(model, &x.bracket(y), tol)?;
    let defect_op = &dx * &dy - &dy * &dx - dxy;
    let (scalar, defect) = scalar_part(&defect_op);
    if defect > tol.eq_tol {
        return Err(BogoliubovError::NonScalarDefect(defect));
    }
    Ok(scalar)
}

/// Convenience for tests and checks: the orthogonal matrix as a complex one.
pub fn complex_matrix(g: &OrthogonalMap) -> ComplexMatrix {
    complexify(g.matrix())
}

/// Phase-insensitive comparison of two implementers of the same map.
pub fn agree_up_to_phase(u: &ComplexMatrix, v: &ComplexMatrix) -> f64 {
    let overlap: C64 = u.iter().zip(v.iter()).map(|(a, b)| b.conj() * a).sum();
    let phase = if overlap.norm() > 0.0 { overlap / overlap.norm() } else { ONE };
    distance(u, &(v * phase))
}
