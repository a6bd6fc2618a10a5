//! Finite-dimensional *-subalgebras of Fock-space operators, their commutants
//! and graded commutants, and modular theory for a cyclic separating vector.

mod modular;

pub use modular::{
    canonical_implementation, inner_unitary, normalizer_membership, normalizer_residual, s_a, t_a, tomita_data,
    CanonicalImplementation, InnerAutomorphism, ModularResiduals, StandardFormData,
};

use crate::numeric::{
    c, distance, identity, joint_kernel, unvectorize, vectorize, ComplexMatrix, ComplexVector, LinearMap,
    NumericError, Subspace, SylvesterMap, TolerancePolicy, ONE,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AlgebraError {
    #[error("algebra is not invariant under the grading (residual {0:e})")]
    NotGraded(f64),
    #[error("vector is not cyclic and separating (cyclic: {cyclic}, separating: {separating})")]
    NotCyclicSeparating { cyclic: bool, separating: bool },
    #[error("images do not define a *-automorphism (residual {0:e})")]
    NotAutomorphism(f64),
    #[error("automorphism is not implemented by a unique unitary of the algebra (solution space has dimension {kernel_dim})")]
    NotInner { kernel_dim: usize },
    #[error("unitary does not normalise the algebra (residual {0:e})")]
    NotInNormalizer(f64),
    #[error("positive cone is not preserved (violation {0:e})")]
    ConeViolation(f64),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error(transparent)]
    Numeric(#[from] NumericError),
}

/// A unital *-subalgebra of `N×N` matrices, stored as a Frobenius-orthonormal
/// basis together with the generators it was built from.
#[derive(Debug, Clone)]
pub struct OperatorAlgebra {
    size: usize,
    basis: Vec<ComplexMatrix>,
    coords: Subspace,
    generators: Vec<ComplexMatrix>,
}

impl OperatorAlgebra {
    fn from_subspace(size: usize, coords: Subspace, generators: Option<Vec<ComplexMatrix>>) -> Self {
        let basis: Vec<ComplexMatrix> = coords.vectors().iter().map(|v| unvectorize(v, size)).collect();
        let generators = generators.unwrap_or_else(|| basis.clone());
        Self { size, basis, coords, generators }
    }

    /// Span of `elements`, trusted to be a *-algebra. The elements themselves
    /// are kept as generators.
    pub fn from_elements(size: usize, elements: &[ComplexMatrix], tol: TolerancePolicy) -> Self {
        let coords = span_of(size, elements, tol);
        Self::from_subspace(size, coords, Some(elements.to_vec()))
    }

    pub fn scalars(size: usize) -> Self {
        let unit = identity(size) * c(1.0 / (size as f64).sqrt(), 0.0);
        let coords = Subspace::from_orthonormal(ComplexMatrix::from_columns(&[vectorize(&unit)]));
        Self::from_subspace(size, coords, Some(vec![identity(size)]))
    }

    /// All of `B(C^N)`, generated by the matrix units `E_{i,i+1}` and their
    /// adjoints.
    pub fn full(size: usize) -> Self {
        let coords = Subspace::full(size * size);
        let generators = (0..size.saturating_sub(1))
            .map(|i| {
                let mut e = ComplexMatrix::zeros(size, size);
                e[(i, i + 1)] = ONE;
                e
            })
            .collect::<Vec<_>>();
        let generators = if generators.is_empty() { vec![identity(size)] } else { generators };
        Self::from_subspace(size, coords, Some(generators))
    }

    /// Matrix size `N`.
    pub fn size(&self) -> usize {
        self.size
    }
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
    pub fn basis(&self) -> &[ComplexMatrix] {
        &self.basis
    }
    pub fn generators(&self) -> &[ComplexMatrix] {
        &self.generators
    }
    /// Vectorised basis, one orthonormal column per element.
    pub fn subspace(&self) -> &Subspace {
        &self.coords
    }

    pub fn coordinates(&self, x: &ComplexMatrix) -> ComplexVector {
        self.coords.basis().adjoint() * vectorize(x)
    }

    pub fn from_coordinates(&self, coeffs: &ComplexVector) -> ComplexMatrix {
        unvectorize(&(self.coords.basis() * coeffs), self.size)
    }

    /// Distance from `x` to the algebra.
    pub fn residual(&self, x: &ComplexMatrix) -> f64 {
        self.coords.residual(&vectorize(x))
    }

    pub fn contains(&self, x: &ComplexMatrix, tol: TolerancePolicy) -> bool {
        self.residual(x) <= tol.eq_tol * x.norm().max(1.0)
    }

    /// Largest distance from the algebra of `b·g`, `g·b` and `b*` for basis
    /// elements `b` and generators `g`.
    pub fn closure_residual(&self) -> f64 {
        let mut worst = 0.0f64;
        for b in &self.basis {
            let mut columns = vec![vectorize(&b.adjoint())];
            for g in &self.generators {
                columns.push(vectorize(&(b * g)));
                columns.push(vectorize(&(g * b)));
            }
            worst = worst.max(self.coords.max_column_residual(&ComplexMatrix::from_columns(&columns)));
        }
        worst
    }

    /// A Hermitian element with pseudo-random coefficients drawn from a fixed
    /// seed, generic enough to serve as a spectral probe.
    pub fn generic_hermitian(&self) -> ComplexMatrix {
        self.seeded_hermitian(0xa1_9eb7a)
    }

    fn seeded_hermitian(&self, seed: u64) -> ComplexMatrix {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut h = ComplexMatrix::zeros(self.size, self.size);
        for b in &self.basis {
            let (re, im) = (rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            let z = c(re, im);
            h += b * z + b.adjoint() * z.conj();
        }
        h
    }

    /// `‖ΓbΓ − P(ΓbΓ)‖` over the basis.
    pub fn grading_residual(&self, grading: &ComplexMatrix) -> f64 {
        self.basis.iter().map(|b| self.residual(&(grading * b * grading))).fold(0.0, f64::max)
    }

    /// Whether both algebras span the same subspace.
    pub fn same_span(&self, other: &OperatorAlgebra, tol: TolerancePolicy) -> bool {
        matches!(crate::numeric::subspace_distance(&self.coords, &other.coords), Some(r) if r <= tol.eq_tol)
    }
}

fn span_of(size: usize, elements: &[ComplexMatrix], tol: TolerancePolicy) -> Subspace {
    if elements.is_empty() {
        return Subspace::empty(size * size);
    }
    let cols: Vec<ComplexVector> = elements.iter().map(vectorize).collect();
    Subspace::span(&ComplexMatrix::from_columns(&cols), tol)
}

/// Incremental Gram-Schmidt with one re-orthogonalisation pass.
struct GrowingBasis {
    vectors: Vec<ComplexVector>,
    threshold: f64,
}

impl GrowingBasis {
    fn residual_of(&self, v: &ComplexVector) -> ComplexVector {
        let mut r = v.clone();
        for _ in 0..2 {
            for q in &self.vectors {
                let overlap = q.dotc(&r);
                r.axpy(-overlap, q, ONE);
            }
        }
        r
    }

    /// Adds the normalised residual of `v` if it is not already in the span.
    fn try_add(&mut self, v: &ComplexVector) -> bool {
        let scale = v.norm();
        if scale == 0.0 {
            return false;
        }
        let r = self.residual_of(v);
        let rn = r.norm();
        if rn <= self.threshold * scale {
            return false;
        }
        self.vectors.push(r / c(rn, 0.0));
        true
    }
}

/// The *-algebra generated by `gens` and the identity: words in the
/// generators and their adjoints, grown until the span stops increasing.
pub fn generated_star_algebra(gens: &[ComplexMatrix], tol: TolerancePolicy) -> Result<OperatorAlgebra, AlgebraError> {
    let size = match gens.first() {
        Some(g) => g.nrows(),
        None => return Err(AlgebraError::ShapeMismatch("no generators given".into())),
    };
    if gens.iter().any(|g| g.shape() != (size, size)) {
        return Err(AlgebraError::ShapeMismatch("generators must be square of a common size".into()));
    }
    let full = size * size;
    // Letters: the generators plus those adjoints that are new.
    let mut letter_span = GrowingBasis { vectors: Vec::new(), threshold: tol.eq_tol };
    let mut letters = Vec::new();
    for g in gens.iter().cloned().chain(gens.iter().map(|g| g.adjoint())) {
        if letter_span.try_add(&vectorize(&g)) {
            letters.push(g);
        }
    }

    let mut span = GrowingBasis { vectors: Vec::new(), threshold: tol.eq_tol };
    span.try_add(&vectorize(&identity(size)));
    let mut frontier = vec![identity(size)];
    while !frontier.is_empty() && span.vectors.len() < full {
        let mut next = Vec::new();
        for word in &frontier {
            for letter in &letters {
                let candidate = word * letter;
                if span.try_add(&vectorize(&candidate)) {
                    next.push(candidate);
                }
                if span.vectors.len() == full {
                    break;
                }
            }
        }
        frontier = next;
    }
    let coords = Subspace::from_orthonormal(ComplexMatrix::from_columns(&span.vectors));
    Ok(OperatorAlgebra::from_subspace(size, coords, Some(gens.to_vec())))
}

/// `{X : [a, X] = 0 for all a in alg}`.
pub fn commutant(alg: &OperatorAlgebra, tol: TolerancePolicy) -> Result<OperatorAlgebra, AlgebraError> {
    let size = alg.size();
    if alg.dim() == 1 {
        return Ok(OperatorAlgebra::full(size));
    }
    if alg.dim() == size * size {
        return Ok(OperatorAlgebra::scalars(size));
    }
    let probe = SylvesterMap::commutator(&alg.generic_hermitian());
    let letters: Vec<ComplexMatrix> = match generating_pair(alg, tol) {
        Some([_, second]) => vec![second],
        None => alg.generators().iter().cloned().chain(alg.generators().iter().map(|g| g.adjoint())).collect(),
    };
    let maps: Vec<SylvesterMap> = letters.iter().map(SylvesterMap::commutator).collect();
    let mut constraints: Vec<&dyn LinearMap> = vec![&probe];
    constraints.extend(maps.iter().map(|m| m as &dyn LinearMap));
    let kernel = joint_kernel(size * size, &constraints, tol)?;
    Ok(with_compact_generators(OperatorAlgebra::from_subspace(size, kernel, None), tol))
}

/// Replaces a basis-as-generators list by a generic Hermitian pair when the
/// pair provably generates the same algebra.
fn with_compact_generators(mut alg: OperatorAlgebra, tol: TolerancePolicy) -> OperatorAlgebra {
    if let Some(pair) = generating_pair(&alg, tol) {
        alg.generators = pair.to_vec();
    }
    alg
}

fn generating_pair(alg: &OperatorAlgebra, tol: TolerancePolicy) -> Option<[ComplexMatrix; 2]> {
    const SHORT: usize = 4;
    if alg.generators().len() <= SHORT {
        return None;
    }
    let pair = [alg.generic_hermitian(), alg.seeded_hermitian(0x5ec0_4d)];
    match generated_star_algebra(&pair, tol) {
        Ok(g) if g.dim() == alg.dim() => Some(pair),
        _ => None,
    }
}

/// Operators that commute with the even part of `alg` and graded-commute with
/// its odd part.
///
/// For a graded algebra the commutant is grading-invariant, and an odd `X`
/// anticommutes with the odd elements of `alg` exactly when `XΓ` lies in the
/// commutant. So the result is the even part of the commutant plus its odd
/// part multiplied by `Γ`.
pub fn super_commutant(
    alg: &OperatorAlgebra,
    grading: &ComplexMatrix,
    tol: TolerancePolicy,
) -> Result<OperatorAlgebra, AlgebraError> {
    let residual = alg.grading_residual(grading);
    if residual > tol.eq_tol {
        return Err(AlgebraError::NotGraded(residual));
    }
    let comm = commutant(alg, tol)?;
    let half = c(0.5, 0.0);
    let mut parts = Vec::with_capacity(2 * comm.dim());
    for x in comm.basis() {
        let twisted = grading * x * grading;
        parts.push((x + &twisted) * half);
        parts.push(((x - &twisted) * half) * grading);
    }
    let coords = span_of(alg.size(), &parts, tol);
    Ok(with_compact_generators(OperatorAlgebra::from_subspace(alg.size(), coords, None), tol))
}

/// Split of an operator into even and odd parts under the grading.
pub fn graded_parts(x: &ComplexMatrix, grading: &ComplexMatrix) -> (ComplexMatrix, ComplexMatrix) {
    let twisted = grading * x * grading;
    let half = c(0.5, 0.0);
    ((x + &twisted) * half, (x - &twisted) * half)
}

/// `‖X − ΓXΓ‖`, zero exactly for even operators.
pub fn odd_part_norm(x: &ComplexMatrix, grading: &ComplexMatrix) -> f64 {
    distance(x, &(grading * x * grading))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CyclicSeparating {
    pub cyclic: bool,
    pub separating: bool,
}

impl CyclicSeparating {
    pub fn both(self) -> bool {
        self.cyclic && self.separating
    }
}

/// Rank of `a ↦ aΩ` on the basis, compared to the Fock dimension (cyclic)
/// and to the algebra dimension (separating).
pub fn cyclic_separating_check(alg: &OperatorAlgebra, omega: &ComplexVector, tol: TolerancePolicy) -> CyclicSeparating {
    let rank = orbit_rank(alg, omega, tol);
    CyclicSeparating { cyclic: rank == alg.size(), separating: rank == alg.dim() }
}

fn orbit_rank(alg: &OperatorAlgebra, omega: &ComplexVector, tol: TolerancePolicy) -> usize {
    let cols: Vec<ComplexVector> = alg.basis().iter().map(|b| b * omega).collect();
    Subspace::span(&ComplexMatrix::from_columns(&cols), tol).dim()
}
