//! Tomita operator, modular conjugation, positive cone and the canonical
//! implementation of automorphisms.

use super::{cyclic_separating_check, AlgebraError, OperatorAlgebra};
use crate::numeric::{
    ad_mul, antilinear_polar, c, conjugate_by, distance, hermitian_eigenvalues, hermitian_function, identity, mul, null_space, shifted_positive, unitarity_defect, vectorize, AntilinearOperator,
    ComplexMatrix, ComplexVector, TolerancePolicy,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Modular data of an algebra with a cyclic separating vector.
#[derive(Debug, Clone)]
pub struct StandardFormData {
    pub omega: ComplexVector,
    /// `aΩ ↦ a*Ω`.
    pub s: AntilinearOperator,
    pub j: AntilinearOperator,
    pub delta: ComplexMatrix,
    /// Columns `a·JaJ·Ω` for the algebra basis.
    pub cone_frame: ComplexMatrix,
    algebra: OperatorAlgebra,
    frame_inverse: ComplexMatrix,
    delta_inv_quarter: ComplexMatrix,
}

/// Residuals of the defining identities of the modular data.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct ModularResiduals {
    pub s_fixes_omega: f64,
    pub s_involution: f64,
    pub polar: f64,
    pub j_fixes_omega: f64,
    pub delta_fixes_omega: f64,
    pub j_involution: f64,
    pub j_antiunitary: f64,
    /// `‖JΔJ − Δ⁻¹‖ / ‖Δ⁻¹‖`. Relative, because forming `Δ⁻¹` costs about
    /// `ε·cond(Δ)·‖Δ⁻¹‖` and `cond(Δ)` reaches 10⁶ at Fock dimension 64.
    pub modular_inversion: f64,
    pub mirrored_commutes: f64,
}

impl ModularResiduals {
    pub fn max(&self) -> f64 {
        [
            self.s_fixes_omega,
            self.s_involution,
            self.polar,
            self.j_fixes_omega,
            self.delta_fixes_omega,
            self.j_involution,
            self.j_antiunitary,
            self.modular_inversion,
            self.mirrored_commutes,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

impl StandardFormData {
    pub fn algebra(&self) -> &OperatorAlgebra {
        &self.algebra
    }

    /// `J x J`, a linear operator.
    pub fn mirror(&self, x: &ComplexMatrix) -> ComplexMatrix {
        self.j.sandwich(x)
    }

    pub fn residuals(&self) -> ModularResiduals {
        let n = self.omega.len();
        let sqrt_delta = hermitian_function(&self.delta, |x| x.max(0.0).sqrt());
        let inv_delta = hermitian_function(&self.delta, |x| 1.0 / x);
        let j_delta_half = self.j.after_linear(&sqrt_delta);
        let mirrored_commutes = self
            .algebra
            .basis()
            .iter()
            .map(|b| {
                let jbj = self.mirror(b);
                self.algebra
                    .generators()
                    .iter()
                    .map(|g| (&jbj * g - g * &jbj).norm())
                    .fold(0.0, f64::max)
            })
            .fold(0.0, f64::max);
        ModularResiduals {
            s_fixes_omega: (self.s.apply(&self.omega) - &self.omega).norm(),
            s_involution: self.s.involution_defect(),
            polar: distance(self.s.linear_part(), j_delta_half.linear_part()),
            j_fixes_omega: (self.j.apply(&self.omega) - &self.omega).norm(),
            delta_fixes_omega: (&self.delta * &self.omega - &self.omega).norm(),
            j_involution: (self.j.compose(&self.j) - identity(n)).norm(),
            j_antiunitary: self.j.antiunitarity_defect(),
            modular_inversion: distance(&self.j.sandwich(&self.delta), &inv_delta) / inv_delta.norm(),
            mirrored_commutes,
        }
    }

    /// The elements `x` of the algebra with `xΩ = Δ^{-1/4} ξ`, one per column
    /// `ξ` of `xis`.
    fn cone_preimages(&self, xis: &ComplexMatrix) -> Vec<ComplexMatrix> {
        let coeffs = mul(&self.frame_inverse, &mul(&self.delta_inv_quarter, xis));
        let n = self.omega.len();
        mul(self.algebra.subspace().basis(), &coeffs)
            .column_iter()
            .map(|col| ComplexMatrix::from_column_slice(n, n, col.as_slice()))
            .collect()
    }

    /// How far `ξ` is from the positive cone `Δ^{1/4} A₊ Ω`: the
    /// non-Hermiticity and negative spectrum of its preimage in the algebra,
    /// relative to the preimage's size. Zero for cone vectors.
    pub fn cone_violation(&self, xi: &ComplexVector) -> f64 {
        let column = ComplexMatrix::from_column_slice(xi.len(), 1, xi.as_slice());
        preimage_violation(&self.cone_preimages(&column)[0])
    }

    /// Largest cone violation of `U ξ` over the cone frame.
    pub fn cone_preservation_residual(&self, u: &ComplexMatrix) -> f64 {
        self.cone_preimages(&mul(u, &self.cone_frame)).iter().map(preimage_violation).fold(0.0, f64::max)
    }
}

/// Relative non-Hermiticity and negative spectrum of `x`. A successful
/// Cholesky factorisation with a shift of `1e-12·scale` bounds the negative
/// part below that shift and skips the eigenvalue solve.
fn preimage_violation(x: &ComplexMatrix) -> f64 {
    let scale = x.norm().max(1.0);
    let hermitian_defect = distance(x, &x.adjoint());
    let h = (x + x.adjoint()) * c(0.5, 0.0);
    if shifted_positive(&h, 1e-12 * scale) {
        return hermitian_defect / scale;
    }
    let lowest = hermitian_eigenvalues(&h).first().copied().unwrap_or(0.0);
    hermitian_defect.max(-lowest).max(0.0) / scale
}

/// Modular data of `alg` with respect to `omega`.
///
/// With `F = [a_iΩ]` and `G = [a_i*Ω]` over the algebra basis, the Tomita
/// operator has linear part `G·conj(F)^{-1}`.
pub fn tomita_data(
    alg: &OperatorAlgebra,
    omega: &ComplexVector,
    tol: TolerancePolicy,
) -> Result<StandardFormData, AlgebraError> {
    let check = cyclic_separating_check(alg, omega, tol);
    if !check.both() {
        return Err(AlgebraError::NotCyclicSeparating { cyclic: check.cyclic, separating: check.separating });
    }
    let f_cols: Vec<ComplexVector> = alg.basis().iter().map(|b| b * omega).collect();
    let g_cols: Vec<ComplexVector> = alg.basis().iter().map(|b| b.adjoint() * omega).collect();
    let f = ComplexMatrix::from_columns(&f_cols);
    let g = ComplexMatrix::from_columns(&g_cols);
    let frame_inverse = f
        .clone()
        .try_inverse()
        .ok_or_else(|| AlgebraError::NotCyclicSeparating { cyclic: true, separating: false })?;
    let s = AntilinearOperator::new(&g * frame_inverse.conjugate());
    let polar = antilinear_polar(&s, tol)?;
    let delta = polar.delta;
    let j = polar.j;
    let delta_inv_quarter = hermitian_function(&delta, |x| x.powf(-0.25));
    let cone_cols: Vec<ComplexVector> =
        alg.basis().iter().map(|b| b * (j.sandwich(b) * omega)).collect();
    Ok(StandardFormData {
        omega: omega.clone(),
        s,
        j,
        delta,
        cone_frame: ComplexMatrix::from_columns(&cone_cols),
        algebra: alg.clone(),
        frame_inverse,
        delta_inv_quarter,
    })
}

/// An inner automorphism `Ad(u)` of an algebra, stored as a representative
/// (phase fixed by the first significant entry) and the images of the
/// algebra's generators. Equality is equality of the images.
#[derive(Debug, Clone)]
pub struct InnerAutomorphism {
    representative: ComplexMatrix,
    images: Vec<ComplexMatrix>,
}

impl InnerAutomorphism {
    pub fn new(u: &ComplexMatrix, alg: &OperatorAlgebra, tol: TolerancePolicy) -> Self {
        let (representative, _) = crate::bogoliubov::normalize_unitary_phase(
            u,
            crate::bogoliubov::PhaseMode::Scan,
            tol,
        );
        let images = alg.generators().iter().map(|g| conjugate_by(&representative, g)).collect();
        Self { representative, images }
    }

    pub fn identity(alg: &OperatorAlgebra) -> Self {
        Self { representative: identity(alg.size()), images: alg.generators().to_vec() }
    }

    pub fn representative(&self) -> &ComplexMatrix {
        &self.representative
    }

    pub fn images(&self) -> &[ComplexMatrix] {
        &self.images
    }

    pub fn apply(&self, x: &ComplexMatrix) -> ComplexMatrix {
        conjugate_by(&self.representative, x)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &InnerAutomorphism) -> InnerAutomorphism {
        InnerAutomorphism {
            representative: mul(&self.representative, &other.representative),
            images: other.images.iter().map(|x| self.apply(x)).collect(),
        }
    }

    pub fn inverse(&self, alg: &OperatorAlgebra) -> InnerAutomorphism {
        let u = self.representative.adjoint();
        let images = alg.generators().iter().map(|g| mul(&mul(&u, g), &self.representative)).collect();
        InnerAutomorphism { representative: u, images }
    }

    /// Largest difference of generator images.
    pub fn distance(&self, other: &InnerAutomorphism) -> f64 {
        self.images.iter().zip(&other.images).map(|(a, b)| distance(a, b)).fold(0.0, f64::max)
    }

    pub fn equals(&self, other: &InnerAutomorphism, tol: TolerancePolicy) -> bool {
        self.distance(other) <= tol.eq_tol
    }
}

/// Trace-form defect of the assignment `g_i ↦ θ_i` on generators and their
/// pairwise products.
fn trace_form_defect(gens: &[ComplexMatrix], images: &[ComplexMatrix]) -> f64 {
    let gram = |ops: &[ComplexMatrix]| {
        let mut columns: Vec<ComplexVector> = ops.iter().map(vectorize).collect();
        for a in ops {
            for b in ops {
                columns.push(vectorize(&mul(a, b)));
            }
        }
        let stacked = ComplexMatrix::from_columns(&columns);
        ad_mul(&stacked, &stacked)
    };
    let (lhs, rhs) = (gram(gens), gram(images));
    lhs.iter().zip(rhs.iter()).map(|(x, y)| (x - y).norm() / x.norm().max(1.0)).fold(0.0, f64::max)
}

/// The unitary `u ∈ alg`, unique up to phase, with `u g u* = θ(g)` on the
/// generators.
///
/// Both sides of `θ(g) u − u g = 0` lie in the algebra, so the equation is
/// tested on a few fixed random vectors, which are jointly separating for a
/// generic choice.
pub fn inner_unitary(
    alg: &OperatorAlgebra,
    images: &[ComplexMatrix],
    tol: TolerancePolicy,
) -> Result<InnerAutomorphism, AlgebraError> {
    let gens = alg.generators();
    if images.len() != gens.len() || images.iter().any(|x| x.shape() != (alg.size(), alg.size())) {
        return Err(AlgebraError::ShapeMismatch(format!(
            "expected {} images of size {}",
            gens.len(),
            alg.size()
        )));
    }
    let outside = images.iter().map(|x| alg.residual(x) / x.norm().max(1.0)).fold(0.0, f64::max);
    if outside > tol.eq_tol {
        return Err(AlgebraError::NotAutomorphism(outside));
    }
    let form = trace_form_defect(gens, images);
    if form > tol.eq_tol {
        return Err(AlgebraError::NotAutomorphism(form));
    }

    let n = alg.size();
    let probes = alg.dim().div_ceil(n) + 1;
    let mut rng = ChaCha8Rng::seed_from_u64(0x1a4e_7);
    let vectors = crate::sampling::random_complex(&mut rng, n, probes);
    let rows_per_gen = n * probes;
    let mut system = ComplexMatrix::zeros(rows_per_gen * gens.len(), alg.dim());
    for (k, b) in alg.basis().iter().enumerate() {
        let b_vecs = b * &vectors;
        for (i, (g, img)) in gens.iter().zip(images).enumerate() {
            let col = img * &b_vecs - b * (g * &vectors);
            for (r, z) in col.iter().enumerate() {
                system[(i * rows_per_gen + r, k)] = *z;
            }
        }
    }
    let kernel = null_space(&system, tol);
    if kernel.dim() != 1 {
        return Err(AlgebraError::NotInner { kernel_dim: kernel.dim() });
    }
    let coeffs = kernel.basis().column(0).into_owned();
    let mut u = ComplexMatrix::zeros(n, n);
    for (b, &z) in alg.basis().iter().zip(coeffs.iter()) {
        u += b * z;
    }
    u *= c((n as f64).sqrt() / u.norm(), 0.0);
    let defect = unitarity_defect(&u);
    if defect > tol.eq_tol * (n as f64).sqrt() {
        return Err(AlgebraError::NotAutomorphism(defect));
    }
    Ok(InnerAutomorphism::new(&u, alg, tol))
}

/// `i(θ) = u·JuJ` together with the residuals of its three defining
/// properties.
#[derive(Debug, Clone)]
pub struct CanonicalImplementation {
    pub unitary: ComplexMatrix,
    /// `max_g ‖U g U* − θ(g)‖`.
    pub action_residual: f64,
    /// `‖UJ − JU‖`.
    pub j_residual: f64,
    /// Largest cone violation of `U` applied to the cone frame.
    pub cone_residual: f64,
}

impl CanonicalImplementation {
    pub fn max_residual(&self) -> f64 {
        self.action_residual.max(self.j_residual).max(self.cone_residual)
    }
}

pub fn canonical_implementation(
    sfd: &StandardFormData,
    theta: &InnerAutomorphism,
    tol: TolerancePolicy,
) -> Result<CanonicalImplementation, AlgebraError> {
    let u = theta.representative();
    let unitary = mul(u, &sfd.mirror(u));
    let action_residual = sfd
        .algebra()
        .generators()
        .iter()
        .zip(theta.images())
        .map(|(g, img)| distance(&conjugate_by(&unitary, g), img))
        .fold(0.0, f64::max);
    let jm = sfd.j.linear_part();
    let j_residual = distance(&mul(&unitary, jm), &mul(jm, &unitary.conjugate()));
    let cone_residual = sfd.cone_preservation_residual(&unitary);
    if cone_residual > tol.eq_tol {
        return Err(AlgebraError::ConeViolation(cone_residual));
    }
    Ok(CanonicalImplementation { unitary, action_residual, j_residual, cone_residual })
}

/// `max_b dist(U b U*, alg)` over the basis.
pub fn normalizer_residual(u: &ComplexMatrix, alg: &OperatorAlgebra) -> f64 {
    let images: Vec<ComplexVector> = alg.basis().iter().map(|b| vectorize(&conjugate_by(u, b))).collect();
    alg.subspace().max_column_residual(&ComplexMatrix::from_columns(&images))
}

pub fn normalizer_membership(u: &ComplexMatrix, alg: &OperatorAlgebra, tol: TolerancePolicy) -> bool {
    normalizer_residual(u, alg) <= tol.eq_tol
}

/// The automorphism `Ad(U)` restricted to the algebra.
pub fn t_a(u: &ComplexMatrix, alg: &OperatorAlgebra, tol: TolerancePolicy) -> Result<InnerAutomorphism, AlgebraError> {
    let residual = normalizer_residual(u, alg);
    if residual > tol.eq_tol {
        return Err(AlgebraError::NotInNormalizer(residual));
    }
    let images: Vec<ComplexMatrix> = alg.generators().iter().map(|g| conjugate_by(u, g)).collect();
    inner_unitary(alg, &images, tol)
}

/// `t_A(JUJ)`.
pub fn s_a(u: &ComplexMatrix, sfd: &StandardFormData, tol: TolerancePolicy) -> Result<InnerAutomorphism, AlgebraError> {
    t_a(&sfd.mirror(u), sfd.algebra(), tol)
}

#[cfg(test)]
mod tests {
    use super::super::{commutant, generated_star_algebra};
    use super::*;
    use crate::clifford::{half_space, CliffordModel, HalfSpace, LatticeModel};
    use crate::numeric::{basis_vector, subspace_equal, vectorize};
    use crate::sampling::{random_complex, random_phase, sample_rng};
    use proptest::prelude::*;

    fn setup(n: usize, d: usize) -> (CliffordModel, OperatorAlgebra, StandardFormData) {
        let m = CliffordModel::new(LatticeModel::new(n, d).unwrap());
        let tol = TolerancePolicy::default();
        let gens: Vec<ComplexMatrix> = m
            .generator_indices(&half_space(m.lattice(), HalfSpace::First))
            .iter()
            .map(|&i| m.generator(i).clone())
            .collect();
        let a = generated_star_algebra(&gens, tol).unwrap();
        let sfd = tomita_data(&a, &m.vacuum(), tol).unwrap();
        (m, a, sfd)
    }

    fn random_unitary_in(alg: &OperatorAlgebra, rng: &mut impl rand::Rng) -> ComplexMatrix {
        let coeffs = random_complex(rng, alg.dim(), 1).column(0).into_owned();
        let x = alg.from_coordinates(&coeffs);
        let h = (&x + x.adjoint()) * c(0.5, 0.0);
        (h * c(0.0, 1.0)).exp()
    }

    #[test]
    fn micro_model_modular_data() {
        let (_, a, sfd) = setup(1, 2);
        let r = sfd.residuals();
        assert!(r.max() < 1e-10, "{r:?}");
        let tol = TolerancePolicy::default();
        let mirrored: Vec<ComplexVector> = a.basis().iter().map(|b| vectorize(&sfd.mirror(b))).collect();
        let comm = commutant(&a, tol).unwrap();
        assert!(subspace_equal(&ComplexMatrix::from_columns(&mirrored), comm.subspace().basis(), tol));
    }

    #[test]
    fn modular_data_at_two_points() {
        let (_, a, sfd) = setup(2, 2);
        assert!(sfd.residuals().max() < 1e-9);
        let tol = TolerancePolicy::default();
        let mirrored: Vec<ComplexVector> = a.basis().iter().map(|b| vectorize(&sfd.mirror(b))).collect();
        let comm = commutant(&a, tol).unwrap();
        assert!(subspace_equal(&ComplexMatrix::from_columns(&mirrored), comm.subspace().basis(), tol));
    }

    #[test]
    fn tomita_rejects_non_separating_vectors() {
        let tol = TolerancePolicy::default();
        let full = OperatorAlgebra::full(4);
        assert!(matches!(
            tomita_data(&full, &basis_vector(4, 0), tol),
            Err(AlgebraError::NotCyclicSeparating { cyclic: true, separating: false })
        ));
    }

    #[test]
    fn cone_contains_frame_and_rejects_negatives() {
        let (_, _, sfd) = setup(1, 2);
        for col in sfd.cone_frame.column_iter() {
            assert!(sfd.cone_violation(&col.into_owned()) < 1e-10);
        }
        assert!(sfd.cone_violation(&sfd.omega) < 1e-12);
        assert!(sfd.cone_violation(&(-sfd.omega.clone())) > 0.1);
        // Δ^{1/4} a*a Ω is in the cone for any a.
        let mut rng = sample_rng(1, 0);
        let a = sfd.algebra().from_coordinates(&random_complex(&mut rng, 4, 1).column(0).into_owned());
        let quarter = hermitian_function(&sfd.delta, |x| x.powf(0.25));
        let xi = quarter * (a.adjoint() * &a) * &sfd.omega;
        assert!(sfd.cone_violation(&xi) < 1e-10);
    }

    #[test]
    fn inner_unitary_recovers_representatives() {
        let (_, a, _) = setup(2, 2);
        let tol = TolerancePolicy::default();
        let id = inner_unitary(&a, a.generators(), tol).unwrap();
        assert!(crate::numeric::projective_distance(id.representative(), &identity(16)) < 1e-10);
        let mut rng = sample_rng(2, 0);
        let v = random_unitary_in(&a, &mut rng);
        let theta = InnerAutomorphism::new(&v, &a, tol);
        let found = inner_unitary(&a, theta.images(), tol).unwrap();
        assert!(crate::numeric::projective_distance(found.representative(), &v) < 1e-9);
        assert!(found.equals(&theta, tol));
    }

    #[test]
    fn inner_unitary_rejects_non_automorphisms() {
        let (_, a, _) = setup(1, 2);
        let tol = TolerancePolicy::default();
        let doubled: Vec<ComplexMatrix> = a.generators().iter().map(|g| g * c(2.0, 0.0)).collect();
        assert!(matches!(inner_unitary(&a, &doubled, tol), Err(AlgebraError::NotAutomorphism(_))));
        // A non-factor: the diagonal algebra has a centre, so the solution
        // space is larger than one dimension.
        let diag: Vec<ComplexMatrix> = (0..2)
            .map(|i| {
                let mut e = ComplexMatrix::zeros(2, 2);
                e[(i, i)] = c(1.0, 0.0);
                e
            })
            .collect();
        let abelian = OperatorAlgebra::from_elements(2, &diag, tol);
        assert!(matches!(inner_unitary(&abelian, &diag, tol), Err(AlgebraError::NotInner { kernel_dim: 2 })));
    }

    #[test]
    fn canonical_implementation_properties() {
        let (_, a, sfd) = setup(1, 2);
        let tol = TolerancePolicy::default();
        let id = canonical_implementation(&sfd, &InnerAutomorphism::identity(&a), tol).unwrap();
        assert!(distance(&id.unitary, &identity(4)) < 1e-12);
        let mut rng = sample_rng(5, 0);
        for _ in 0..20 {
            let v = random_unitary_in(&a, &mut rng);
            let theta = inner_unitary(&a, InnerAutomorphism::new(&v, &a, tol).images(), tol).unwrap();
            let imp = canonical_implementation(&sfd, &theta, tol).unwrap();
            assert!(imp.max_residual() < 1e-9, "{imp:?}");
            assert!(unitarity_defect(&imp.unitary) < 1e-10);
        }
    }

    #[test]
    fn canonical_implementation_is_phase_independent_and_multiplicative() {
        let (_, a, sfd) = setup(2, 2);
        let tol = TolerancePolicy::default();
        let mut rng = sample_rng(6, 0);
        let u = random_unitary_in(&a, &mut rng);
        let w = random_unitary_in(&a, &mut rng);
        let theta = InnerAutomorphism::new(&u, &a, tol);
        let phased = InnerAutomorphism { representative: u.clone() * random_phase(&mut rng), ..theta.clone() };
        let i1 = canonical_implementation(&sfd, &theta, tol).unwrap().unitary;
        let i2 = canonical_implementation(&sfd, &phased, tol).unwrap().unitary;
        assert!(distance(&i1, &i2) < 1e-12);
        let phi = InnerAutomorphism::new(&w, &a, tol);
        let both = canonical_implementation(&sfd, &theta.compose(&phi), tol).unwrap().unitary;
        let product = i1 * canonical_implementation(&sfd, &phi, tol).unwrap().unitary;
        assert!(distance(&both, &product) < 1e-9);
    }

    #[test]
    fn source_and_target_of_canonical_implementations_agree() {
        let (_, a, sfd) = setup(2, 2);
        let tol = TolerancePolicy::default();
        let mut rng = sample_rng(7, 0);
        let theta = InnerAutomorphism::new(&random_unitary_in(&a, &mut rng), &a, tol);
        let imp = canonical_implementation(&sfd, &theta, tol).unwrap().unitary;
        assert!(t_a(&imp, &a, tol).unwrap().equals(&theta, tol.with_eq_tol(1e-8)));
        assert!(s_a(&imp, &sfd, tol).unwrap().equals(&theta, tol.with_eq_tol(1e-8)));
        assert!(t_a(&identity(16), &a, tol).unwrap().equals(&InnerAutomorphism::identity(&a), tol));
    }

    #[test]
    fn kernels_of_source_and_target() {
        let (m, a, sfd) = setup(2, 2);
        let tol = TolerancePolicy::default();
        let mut rng = sample_rng(8, 0);
        let id = InnerAutomorphism::identity(&a);
        // Unitaries of A lie in the kernel of the source map.
        let u = random_unitary_in(&a, &mut rng);
        assert!(s_a(&u, &sfd, tol).unwrap().distance(&id) < 1e-8);
        assert!(t_a(&u, &a, tol).unwrap().distance(&id) > 1e-3);
        // Unitaries of A' lie in the kernel of the target map.
        let comm = commutant(&a, tol).unwrap();
        let w = random_unitary_in(&comm, &mut rng);
        assert!(t_a(&w, &a, tol).unwrap().distance(&id) < 1e-8);
        // An odd element of the other half normalises A only trivially for
        // generic elements.
        let other = m.generator_indices(&half_space(m.lattice(), HalfSpace::Second));
        let x = m.generator(other[0]) * c(0.5, 0.0) + identity(16) * c(0.5_f64.sqrt(), 0.0) * c(1.0, 0.0);
        assert!(!normalizer_membership(&x, &a, tol));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(8))]
        #[test]
        fn mirrored_unitaries_commute_with_the_algebra(seed in any::<u64>()) {
            let (_, a, sfd) = setup(1, 2);
            let mut rng = sample_rng(seed, 0);
            let u = random_unitary_in(&a, &mut rng);
            let ju = sfd.mirror(&u);
            for g in a.generators() {
                prop_assert!(distance(&(&ju * g), &(g * &ju)) < 1e-10);
            }
        }
    }
}
