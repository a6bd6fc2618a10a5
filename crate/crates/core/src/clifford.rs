//! The discrete circle model: a lattice of 2n points with d internal
//! directions, a Lagrangian subspace of its complexification, and the Fock
//! representation of the Clifford algebra.

use crate::numeric::{c, frobenius_inner, identity, ComplexMatrix, ComplexVector, RealMatrix, TolerancePolicy, C64, ONE, ZERO};
use std::f64::consts::PI;
use thiserror::Error;

/// Fock dimensions above 2^MAX_MODES are refused outright.
pub const MAX_MODES: usize = 12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CliffordError {
    #[error("lattice needs n >= 1 and d >= 1 (got n={n}, d={d})")]
    EmptyLattice { n: usize, d: usize },
    #[error("n·d = {0} is odd; the half-space algebra would not be a factor")]
    OddModeCount(usize),
    #[error("n·d = {0} exceeds the supported maximum {MAX_MODES}")]
    TooManyModes(usize),
    #[error("vector has dimension {got}, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("Lagrangian check failed with defect {0:e}")]
    InvalidLagrangian(f64),
}

/// 2n circle points with d real components each.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LatticeModel {
    n: usize,
    d: usize,
}

impl LatticeModel {
    pub fn new(n: usize, d: usize) -> Result<Self, CliffordError> {
        if n == 0 || d == 0 {
            return Err(CliffordError::EmptyLattice { n, d });
        }
        let m = n * d;
        if m % 2 != 0 {
            return Err(CliffordError::OddModeCount(m));
        }
        if m > MAX_MODES {
            return Err(CliffordError::TooManyModes(m));
        }
        Ok(Self { n, d })
    }

    pub fn n(&self) -> usize {
        self.n
    }
    pub fn d(&self) -> usize {
        self.d
    }
    pub fn points(&self) -> usize {
        2 * self.n
    }
    pub fn dim_h(&self) -> usize {
        2 * self.n * self.d
    }
    pub fn modes(&self) -> usize {
        self.n * self.d
    }
    pub fn fock_dim(&self) -> usize {
        1 << self.modes()
    }

    /// Real basis index of `δ_j ⊗ u_a`.
    pub fn index(&self, point: usize, axis: usize) -> usize {
        debug_assert!(point < self.points() && axis < self.d);
        point * self.d + axis
    }

    pub fn point_of(&self, index: usize) -> usize {
        index / self.d
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HalfSpace {
    First,
    Second,
}

/// Points of the closed-open half circles `[0, π)` and `[π, 2π)`.
pub fn half_space(lattice: &LatticeModel, which: HalfSpace) -> Vec<usize> {
    let n = lattice.n();
    match which {
        HalfSpace::First => (0..n).collect(),
        HalfSpace::Second => (n..2 * n).collect(),
    }
}

/// m orthonormal, isotropic vectors in the complexified space, stored as the
/// columns of a `dim_h × m` matrix.
#[derive(Debug, Clone)]
pub struct Lagrangian {
    vectors: ComplexMatrix,
}

impl Lagrangian {
    pub fn new(vectors: ComplexMatrix) -> Self {
        Self { vectors }
    }
    pub fn vectors(&self) -> &ComplexMatrix {
        &self.vectors
    }
    pub fn len(&self) -> usize {
        self.vectors.ncols()
    }
    pub fn is_empty(&self) -> bool {
        self.vectors.ncols() == 0
    }
    pub fn vector(&self, k: usize) -> ComplexVector {
        self.vectors.column(k).into_owned()
    }
}

/// Half-integer Fourier modes `(2n)^{-1/2} Σ_j ζ^{(k+1/2) j} δ_j ⊗ u_a` with
/// `ζ = e^{2πi/2n}`; mode `(k, a)` sits in column `k·d + a`.
pub fn default_lagrangian(lattice: &LatticeModel) -> Lagrangian {
    let (n, d, points) = (lattice.n(), lattice.d(), lattice.points());
    let norm = 1.0 / (points as f64).sqrt();
    let mut vectors = ComplexMatrix::zeros(lattice.dim_h(), lattice.modes());
    for k in 0..n {
        for a in 0..d {
            for j in 0..points {
                let angle = PI * (k as f64 + 0.5) * j as f64 / n as f64;
                vectors[(lattice.index(j, a), k * d + a)] = C64::from_polar(norm, angle);
            }
        }
    }
    Lagrangian::new(vectors)
}

/// Largest violation of orthonormality `⟨l_i, l_j⟩ = δ_ij` and isotropy
/// `⟨conj l_i, l_j⟩ = 0`.
pub fn lagrangian_defect(l: &Lagrangian) -> f64 {
    let v = l.vectors();
    let gram = v.adjoint() * v - identity(v.ncols());
    let iso = v.transpose() * v;
    gram.iter().chain(iso.iter()).map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn validate_lagrangian(l: &Lagrangian, tol: f64) -> bool {
    lagrangian_defect(l) <= tol
}

/// A Fock basis state: bit k set means mode k is occupied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FockIndex(pub usize);

impl FockIndex {
    pub fn occupied(self, mode: usize) -> bool {
        self.0 >> mode & 1 == 1
    }

    pub fn count(self) -> u32 {
        self.0.count_ones()
    }

    /// Sign of moving a new factor past the occupied modes below `mode`.
    pub fn insertion_sign(self, mode: usize) -> f64 {
        if (self.0 & ((1usize << mode) - 1)).count_ones() % 2 == 0 {
            1.0
        } else {
            -1.0
        }
    }

    /// `l_mode ∧ ξ`, or `None` if the mode is already occupied.
    pub fn wedge(self, mode: usize) -> Option<(FockIndex, f64)> {
        if self.occupied(mode) {
            None
        } else {
            Some((FockIndex(self.0 | 1 << mode), self.insertion_sign(mode)))
        }
    }
}

/// The Fock representation on `2^m` dimensions with one generator matrix per
/// real basis vector `δ_j ⊗ u_a`.
#[derive(Debug, Clone)]
pub struct CliffordModel {
    lattice: LatticeModel,
    lagrangian: Lagrangian,
    creation: Vec<ComplexMatrix>,
    generators: Vec<ComplexMatrix>,
    grading: ComplexMatrix,
    /// Majorana operators `π(√2 Re l_k)`, `π(√2 Im l_k)`, each with one
    /// nonzero entry per column.
    majorana: Vec<Monomial>,
    /// `generator(a) = Σ_k frame[(k, a)] · majorana[k]`.
    frame: RealMatrix,
}

/// A matrix with exactly one nonzero entry per column: column `x` is
/// `phase[x]` at row `target[x]`.
#[derive(Debug, Clone)]
struct Monomial {
    target: Vec<usize>,
    phase: Vec<C64>,
}

impl Monomial {
    fn from_dense(m: &ComplexMatrix) -> Self {
        let (target, phase) = (0..m.ncols())
            .map(|x| {
                let col = m.column(x);
                let row = (0..m.nrows()).max_by(|&i, &j| col[i].norm().total_cmp(&col[j].norm())).unwrap_or(0);
                debug_assert!((col.norm() - col[row].norm()).abs() < 1e-12, "Majorana operators are monomial");
                (row, col[row])
            })
            .unzip();
        Self { target, phase }
    }
}

impl CliffordModel {
    pub fn new(lattice: LatticeModel) -> Self {
        let lagrangian = default_lagrangian(&lattice);
        Self::build(lattice, lagrangian)
    }

    pub fn with_lagrangian(
        lattice: LatticeModel,
        lagrangian: Lagrangian,
        tol: TolerancePolicy,
    ) -> Result<Self, CliffordError> {
        if lagrangian.vectors().shape() != (lattice.dim_h(), lattice.modes()) {
            return Err(CliffordError::DimensionMismatch {
                expected: lattice.dim_h() * lattice.modes(),
                got: lagrangian.vectors().len(),
            });
        }
        let defect = lagrangian_defect(&lagrangian);
        if defect > tol.eq_tol {
            return Err(CliffordError::InvalidLagrangian(defect));
        }
        Ok(Self::build(lattice, lagrangian))
    }

    fn build(lattice: LatticeModel, lagrangian: Lagrangian) -> Self {
        let (m, dim) = (lattice.modes(), lattice.fock_dim());
        let creation: Vec<ComplexMatrix> = (0..m)
            .map(|k| {
                let mut a = ComplexMatrix::zeros(dim, dim);
                for s in 0..dim {
                    if let Some((t, sign)) = FockIndex(s).wedge(k) {
                        a[(t.0, s)] = c(sign, 0.0);
                    }
                }
                a
            })
            .collect();
        let grading = ComplexMatrix::from_diagonal(&ComplexVector::from_fn(dim, |s, _| {
            c(if FockIndex(s).count() % 2 == 0 { 1.0 } else { -1.0 }, 0.0)
        }));
        let mut model = Self {
            lattice,
            lagrangian,
            creation,
            generators: Vec::new(),
            grading,
            majorana: Vec::new(),
            frame: RealMatrix::zeros(0, 0),
        };
        model.generators = (0..lattice.dim_h())
            .map(|i| model.pi_basis_combination(|j| if j == i { c(1.0, 0.0) } else { ZERO }))
            .collect();
        let sqrt2 = std::f64::consts::SQRT_2;
        let l = model.lagrangian.vectors();
        let frame = RealMatrix::from_fn(lattice.dim_h(), lattice.dim_h(), |k, a| {
            let z = l[(a, k / 2)] * sqrt2;
            if k % 2 == 0 {
                z.re
            } else {
                z.im
            }
        });
        model.majorana = (0..lattice.dim_h())
            .map(|k| Monomial::from_dense(&model.pi_real(frame.row(k).transpose().as_slice())))
            .collect();
        model.frame = frame;
        model
    }

    /// `u · generator(a)` in `O(dim²)` per Majorana term, using the
    /// monomial structure of the Majorana operators.
    pub fn right_mul_generator(&self, u: &ComplexMatrix, a: usize) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(u.nrows(), u.ncols());
        for (k, op) in self.majorana.iter().enumerate() {
            let w = self.frame[(k, a)];
            if w.abs() < 1e-15 {
                continue;
            }
            for x in 0..u.ncols() {
                let scale = op.phase[x] * w;
                out.column_mut(x).axpy(scale, &u.column(op.target[x]), ONE);
            }
        }
        out
    }

    /// `π(v) = √2 Σ_k ⟨l_k, v⟩ a†_k − √2 Σ_k ⟨conj l_k, v⟩ a_k`.
    fn pi_basis_combination(&self, v: impl Fn(usize) -> C64) -> ComplexMatrix {
        let dim = self.lattice.fock_dim();
        let l = self.lagrangian.vectors();
        let sqrt2 = std::f64::consts::SQRT_2;
        let mut out = ComplexMatrix::zeros(dim, dim);
        for (k, create) in self.creation.iter().enumerate() {
            let mut along = ZERO; // ⟨l_k, v⟩
            let mut against = ZERO; // ⟨conj l_k, v⟩
            for i in 0..self.lattice.dim_h() {
                let vi = v(i);
                along += l[(i, k)].conj() * vi;
                against += l[(i, k)] * vi;
            }
            out += create * (along * sqrt2);
            out -= create.transpose() * (against * sqrt2);
        }
        out
    }

    /// The one-mode representation on the two-point, one-axis lattice, which
    /// the lattice guard excludes; used for hand-checked examples.
    #[cfg(test)]
    pub(crate) fn one_mode() -> Self {
        let lattice = LatticeModel { n: 1, d: 1 };
        Self::build(lattice, default_lagrangian(&lattice))
    }

    pub fn lattice(&self) -> &LatticeModel {
        &self.lattice
    }
    pub fn lagrangian(&self) -> &Lagrangian {
        &self.lagrangian
    }
    pub fn fock_dim(&self) -> usize {
        self.lattice.fock_dim()
    }
    pub fn dim_h(&self) -> usize {
        self.lattice.dim_h()
    }

    /// `π(δ_j ⊗ u_a)` for real basis index `i = j·d + a`.
    pub fn generator(&self, i: usize) -> &ComplexMatrix {
        &self.generators[i]
    }
    pub fn generators(&self) -> &[ComplexMatrix] {
        &self.generators
    }
    pub fn creation(&self, mode: usize) -> &ComplexMatrix {
        &self.creation[mode]
    }
    pub fn grading(&self) -> &ComplexMatrix {
        &self.grading
    }

    /// The Fock vacuum (empty wedge).
    pub fn vacuum(&self) -> ComplexVector {
        crate::numeric::basis_vector(self.fock_dim(), 0)
    }

    /// `π(v)` for a complex vector, extended complex-linearly from the real
    /// basis.
    pub fn pi_vector(&self, v: &ComplexVector) -> Result<ComplexMatrix, CliffordError> {
        if v.len() != self.dim_h() {
            return Err(CliffordError::DimensionMismatch { expected: self.dim_h(), got: v.len() });
        }
        let dim = self.fock_dim();
        let mut out = ComplexMatrix::zeros(dim, dim);
        for (i, g) in self.generators.iter().enumerate() {
            if v[i] != ZERO {
                out += g * v[i];
            }
        }
        Ok(out)
    }

    /// `π` applied to a real vector.
    pub fn pi_real(&self, v: &[f64]) -> ComplexMatrix {
        assert_eq!(v.len(), self.dim_h());
        let dim = self.fock_dim();
        let mut out = ComplexMatrix::zeros(dim, dim);
        for (i, g) in self.generators.iter().enumerate() {
            if v[i] != 0.0 {
                out += g * c(v[i], 0.0);
            }
        }
        out
    }

    /// Real basis indices of the generators at the given points.
    pub fn generator_indices(&self, points: &[usize]) -> Vec<usize> {
        let d = self.lattice.d();
        points.iter().flat_map(|&j| (0..d).map(move |a| j * d + a)).collect()
    }

    /// Coefficients of `x` on the generators (which are Frobenius-orthogonal
    /// with squared norm `fock_dim`).
    pub fn generator_coefficients(&self, x: &ComplexMatrix) -> Vec<C64> {
        let scale = self.fock_dim() as f64;
        self.generators.iter().map(|g| frobenius_inner(g, x) / scale).collect()
    }
}

/// Ordered products of the generators at `points` over all subsets of the
/// selected real basis vectors, in increasing index order. The subset with
/// bitmask `s` over the selected list is entry `s`; entry 0 is the identity.
pub fn clifford_monomials(model: &CliffordModel, points: &[usize]) -> Vec<ComplexMatrix> {
    let mut points = points.to_vec();
    points.sort_unstable();
    points.dedup();
    let indices = model.generator_indices(&points);
    let count = 1usize << indices.len();
    let mut out: Vec<ComplexMatrix> = Vec::with_capacity(count);
    out.push(identity(model.fock_dim()));
    for s in 1..count {
        let top = usize::BITS - 1 - s.leading_zeros();
        let rest = s & !(1 << top);
        let next = &out[rest] * model.generator(indices[top as usize]);
        out.push(next);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{
        anticommutator, distance, joint_kernel, joint_kernel_stacked, null_space, subspace_distance, vectorize,
        LinearMap, SylvesterMap,
    };
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn model(n: usize, d: usize) -> CliffordModel {
        CliffordModel::new(LatticeModel::new(n, d).unwrap())
    }

    #[test]
    fn right_multiplication_by_generators_matches_dense_products() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for (n, d) in [(1, 2), (2, 2), (2, 3)] {
            let m = model(n, d);
            let dim = m.fock_dim();
            let u = ComplexMatrix::from_fn(dim, dim, |_, _| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
            for a in 0..m.dim_h() {
                assert!(distance(&m.right_mul_generator(&u, a), &(&u * m.generator(a))) < 1e-12);
            }
        }
    }

    fn random_vector(rng: &mut ChaCha8Rng, len: usize) -> ComplexVector {
        ComplexVector::from_fn(len, |_, _| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
    }

    #[test]
    fn lattice_guards() {
        assert!(matches!(LatticeModel::new(3, 3), Err(CliffordError::OddModeCount(9))));
        assert!(LatticeModel::new(0, 2).is_err());
        assert!(LatticeModel::new(7, 2).is_err());
        let l = LatticeModel::new(2, 3).unwrap();
        assert_eq!((l.points(), l.dim_h(), l.modes(), l.fock_dim()), (4, 12, 6, 64));
    }

    #[test]
    fn default_lagrangian_small_cases() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let l = default_lagrangian(&LatticeModel::new(1, 2).unwrap());
        // (δ0 + i δ1)/√2 ⊗ u_a: entries at indices a and 2 + a.
        for a in 0..2 {
            let v = l.vector(a);
            assert!((v[a] - c(s, 0.0)).norm() < 1e-15);
            assert!((v[2 + a] - c(0.0, s)).norm() < 1e-15);
            assert!((v.norm() - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn lagrangian_validation() {
        for (n, d) in [(1, 2), (2, 1), (2, 2), (2, 3), (3, 2), (4, 1)] {
            assert!(validate_lagrangian(&default_lagrangian(&LatticeModel::new(n, d).unwrap()), 1e-13));
        }
        let lattice = LatticeModel::new(1, 2).unwrap();
        let mut real = default_lagrangian(&lattice).vectors().clone();
        real.set_column(0, &crate::numeric::basis_vector(4, 0));
        assert!(!validate_lagrangian(&Lagrangian::new(real), 1e-9));
        let mut scaled = default_lagrangian(&lattice).vectors().clone();
        scaled.column_mut(1).scale_mut(2.0);
        assert!(!validate_lagrangian(&Lagrangian::new(scaled.clone()), 1e-9));
        let tol = TolerancePolicy::default();
        assert!(CliffordModel::with_lagrangian(lattice, Lagrangian::new(scaled), tol).is_err());
    }

    #[test]
    fn pi_vector_hand_computed_examples() {
        // n = 1, d = 1 is excluded by the parity guard, so build the
        // representation directly from the one-mode Lagrangian.
        let lattice = LatticeModel { n: 1, d: 1 };
        let m = CliffordModel::build(lattice, default_lagrangian(&lattice));
        let expected0 = ComplexMatrix::from_row_slice(2, 2, &[ZERO, -ONE, ONE, ZERO]);
        let expected1 = ComplexMatrix::from_row_slice(2, 2, &[ZERO, c(0.0, -1.0), c(0.0, -1.0), ZERO]);
        assert!(distance(m.generator(0), &expected0) < 1e-15);
        assert!(distance(m.generator(1), &expected1) < 1e-15);
        let zero = m.pi_vector(&ComplexVector::zeros(2)).unwrap();
        assert_eq!(zero.norm(), 0.0);
        assert!(matches!(
            m.pi_vector(&ComplexVector::zeros(3)),
            Err(CliffordError::DimensionMismatch { expected: 2, got: 3 })
        ));
    }

    #[test]
    fn pi_on_lagrangian_vectors_is_scaled_creation() {
        let m = model(2, 2);
        let sqrt2 = std::f64::consts::SQRT_2;
        for k in 0..m.lattice().modes() {
            let l = m.lagrangian().vector(k);
            let p = m.pi_vector(&l).unwrap();
            assert!(distance(&p, &(m.creation(k) * c(sqrt2, 0.0))) < 1e-13);
            let pbar = m.pi_vector(&l.conjugate()).unwrap();
            assert!(distance(&pbar, &(m.creation(k).adjoint() * c(-sqrt2, 0.0))) < 1e-13);
        }
    }

    #[test]
    fn clifford_and_star_relations_on_random_vectors() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (n, d) in [(1, 2), (2, 2), (2, 3)] {
            let m = model(n, d);
            let dim = m.fock_dim();
            for _ in 0..20 {
                let v = random_vector(&mut rng, m.dim_h());
                let w = random_vector(&mut rng, m.dim_h());
                let (pv, pw) = (m.pi_vector(&v).unwrap(), m.pi_vector(&w).unwrap());
                let expected = identity(dim) * (v.conjugate().dotc(&w) * c(-2.0, 0.0));
                assert!(distance(&anticommutator(&pv, &pw), &expected) < 1e-10);
                let pbar = m.pi_vector(&v.conjugate()).unwrap();
                assert!(distance(&pv.adjoint(), &(-pbar)) < 1e-12);
            }
        }
    }

    #[test]
    fn grading_anticommutes_with_generators() {
        let m = model(2, 2);
        let g = m.grading();
        assert!(distance(&(g * g), &identity(m.fock_dim())) < 1e-15);
        for p in m.generators() {
            assert!(distance(&(g * p * g), &(-p)) < 1e-14);
        }
    }

    #[test]
    fn fock_representation_is_irreducible() {
        let tol = TolerancePolicy::default();
        for (n, d) in [(1, 2), (2, 1)] {
            let lattice = LatticeModel::new(n, d).unwrap();
            let m = CliffordModel::new(lattice);
            let dim = m.fock_dim();
            let maps: Vec<SylvesterMap> = m.generators().iter().map(SylvesterMap::commutator).collect();
            let refs: Vec<&dyn LinearMap> = maps.iter().map(|s| s as &dyn LinearMap).collect();
            let k = joint_kernel(dim * dim, &refs, tol).unwrap();
            let stacked = joint_kernel_stacked(dim * dim, &refs, tol).unwrap();
            assert_eq!(k.dim(), 1);
            assert!(subspace_distance(&k, &stacked).unwrap() < 1e-10);
            let v = k.basis().column(0).into_owned();
            let id = vectorize(&identity(dim)) / c((dim as f64).sqrt(), 0.0);
            assert!((v.dotc(&id).norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn monomial_counts_and_independence() {
        let m = model(1, 2);
        let empty = clifford_monomials(&m, &[]);
        assert_eq!(empty.len(), 1);
        assert!(distance(&empty[0], &identity(4)) < 1e-15);

        let m = model(2, 2);
        let mons = clifford_monomials(&m, &half_space(m.lattice(), HalfSpace::First));
        assert_eq!(mons.len(), 16);
        let frame = ComplexMatrix::from_columns(&mons.iter().map(vectorize).collect::<Vec<_>>());
        assert_eq!(null_space(&frame, TolerancePolicy::default()).dim(), 0);
        // Ordered products: entry 0b0101 is π(b_0)π(b_2).
        assert!(distance(&mons[0b0101], &(m.generator(0) * m.generator(2))) < 1e-14);
    }

    #[test]
    fn half_spaces_partition_the_circle() {
        let l = LatticeModel::new(2, 2).unwrap();
        let first = half_space(&l, HalfSpace::First);
        let second = half_space(&l, HalfSpace::Second);
        assert_eq!(first, vec![0, 1]);
        assert_eq!(second, vec![2, 3]);
        let mut all = [first, second].concat();
        all.sort_unstable();
        assert_eq!(all, (0..4).collect::<Vec<_>>());
    }

    #[test]
    fn wedge_signs_count_lower_occupied_modes() {
        let s = FockIndex(0b1011);
        assert_eq!(s.wedge(0), None);
        assert_eq!(s.wedge(2), Some((FockIndex(0b1111), 1.0)));
        assert_eq!(FockIndex(0b0011).wedge(2), Some((FockIndex(0b0111), 1.0)));
        assert_eq!(FockIndex(0b0001).wedge(2), Some((FockIndex(0b0101), -1.0)));
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(32))]
            #[test]
            fn pi_is_complex_linear(seed in any::<u64>(), re in -2.0f64..2.0, im in -2.0f64..2.0) {
                let m = model(2, 1);
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let v = random_vector(&mut rng, m.dim_h());
                let w = random_vector(&mut rng, m.dim_h());
                let lambda = c(re, im);
                let lhs = m.pi_vector(&(&v * lambda + &w)).unwrap();
                let rhs = m.pi_vector(&v).unwrap() * lambda + m.pi_vector(&w).unwrap();
                prop_assert!(distance(&lhs, &rhs) < 1e-12);
            }
        }
    }
}
