//! The representation of the string crossed module on the half-circle
//! Clifford algebra `A`: paths act on `A` by the automorphisms their doubled
//! loops implement (`R0`), and lifted half-supported loops are sent to their
//! unitaries, which lie in `A` (`R1`).
//!
//! The same data is packaged as a homomorphism of strict 2-groups, with the
//! fusion factorization `p ↦ (Δp, W)` on the string side and the canonical
//! implementation of automorphisms on the algebra side.

mod checks;

pub use checks::{
    assemble_2group_hom, check_alpha_compatibility, check_f_trivial, check_fusion_factorization, check_t_compatibility,
    check_well_definedness, intertwiner_report, modular_vs_reflection, pi_level_checks, FValues, ReflectionComparison,
};

use crate::algebra::{
    canonical_implementation, generated_star_algebra, odd_part_norm, s_a, super_commutant, t_a, tomita_data, AlgebraError,
    InnerAutomorphism, OperatorAlgebra, StandardFormData,
};
use crate::bogoliubov::{Implementer, Normalization, Parity};
use crate::clifford::{half_space, HalfSpace};
use crate::numeric::{c, distance, mul, ComplexMatrix, TolerancePolicy};
use crate::sampling::{random_complex, SampleRng};
use crate::string_model::{DiscreteLoop, DiscretePath, ExtLoop, PathGroup, StringCrossedModule, StringError, StringModel};
use crate::twogroup::{ComputableGroup, CrossedModule, TwoGroup};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StringorError {
    #[error("unitary is not in the half-circle algebra (residual {0:e})")]
    NotInA(f64),
    #[error("unitary is not even (odd part {0:e})")]
    NotEven(f64),
    #[error("expected a unit scalar, distance from the scalars {0:e}")]
    NonScalarDefect(f64),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    String(#[from] StringError),
}

/// The half-circle algebra, its graded commutant, the modular data of the
/// vacuum, and the two crossed modules being related.
#[derive(Debug, Clone)]
pub struct StringorContext {
    string: Arc<StringModel>,
    algebra: OperatorAlgebra,
    complement: OperatorAlgebra,
    sfd: StandardFormData,
    string_cm: StringCrossedModule,
    uaut: UnitaryAutomorphisms,
}

impl StringorContext {
    pub fn new(string: Arc<StringModel>) -> Result<Self, StringorError> {
        let tol = string.tol();
        let clifford = string.clifford();
        let gens: Vec<ComplexMatrix> = clifford
            .generator_indices(&half_space(clifford.lattice(), HalfSpace::First))
            .into_iter()
            .map(|i| clifford.generator(i).clone())
            .collect();
        let algebra = generated_star_algebra(&gens, tol)?;
        let complement = super_commutant(&algebra, clifford.grading(), tol)?;
        let sfd = tomita_data(&algebra, &clifford.vacuum(), tol)?;
        let uaut = UnitaryAutomorphisms::new(algebra.clone(), tol);
        Ok(Self { string_cm: StringCrossedModule::new(string.clone()), string, algebra, complement, sfd, uaut })
    }

    pub fn string(&self) -> &StringModel {
        &self.string
    }
    pub fn algebra(&self) -> &OperatorAlgebra {
        &self.algebra
    }
    /// The graded commutant of [`Self::algebra`].
    pub fn complement(&self) -> &OperatorAlgebra {
        &self.complement
    }
    pub fn standard_form(&self) -> &StandardFormData {
        &self.sfd
    }
    pub fn string_cm(&self) -> &StringCrossedModule {
        &self.string_cm
    }
    pub fn uaut(&self) -> &UnitaryAutomorphisms {
        &self.uaut
    }
    pub fn tol(&self) -> TolerancePolicy {
        self.string.tol()
    }

    /// Relative distance of `x` from the algebra.
    pub fn membership_residual(&self, x: &ComplexMatrix) -> f64 {
        self.algebra.residual(x) / x.norm().max(1.0)
    }

    pub fn odd_part(&self, x: &ComplexMatrix) -> f64 {
        odd_part_norm(x, self.string.clifford().grading())
    }

    /// The unitary of a lifted half-supported loop, checked to be even and in
    /// the algebra.
    pub fn r1(&self, phi: &ExtLoop) -> Result<ComplexMatrix, StringorError> {
        let tol = self.tol().eq_tol;
        let odd = self.odd_part(phi.unitary());
        if odd > tol {
            return Err(StringorError::NotEven(odd));
        }
        let outside = self.membership_residual(phi.unitary());
        if outside > tol {
            return Err(StringorError::NotInA(outside));
        }
        Ok(phi.unitary().clone())
    }

    /// The automorphism of the algebra implemented by a lift of the doubled
    /// path, with its representative in the algebra.
    pub fn r0(&self, p: &DiscretePath) -> Result<InnerAutomorphism, StringorError> {
        let lifted = self.string.lift(&self.string.double(p))?;
        Ok(t_a(lifted.unitary(), &self.algebra, self.tol())?)
    }

    /// `(Δp, W)` with `W` the canonical implementation of `R0(p)`.
    pub fn fusion_factorization(&self, p: &DiscretePath) -> Result<ExtLoop, StringorError> {
        let theta = self.r0(p)?;
        let w = canonical_implementation(&self.sfd, &theta, self.tol())?;
        let doubled = self.string.double(p);
        Ok(ExtLoop {
            implementer: Implementer {
                unitary: w.unitary,
                implemented: self.string.omega(&doubled),
                parity: Parity::Even,
                normalization: Normalization::Raw,
            },
            loop_part: doubled,
        })
    }

    /// `t_A(U)`, the automorphism of the algebra induced by conjugation.
    pub fn target_automorphism(&self, u: &ComplexMatrix) -> Result<InnerAutomorphism, StringorError> {
        Ok(t_a(u, &self.algebra, self.tol())?)
    }

    /// `s_A(U) = t_A(JUJ)`.
    pub fn source_automorphism(&self, u: &ComplexMatrix) -> Result<InnerAutomorphism, StringorError> {
        Ok(s_a(u, &self.sfd, self.tol())?)
    }

    /// A loop through `p` and back along `q`, requiring matching endpoints.
    pub fn concat_lift(&self, p: &DiscretePath, q: &DiscretePath) -> Result<ExtLoop, StringorError> {
        Ok(self.string.lift(&self.string.concat(p, q)?)?)
    }

    /// The half-supported loop whose restriction is `h`, for a path ending
    /// at the identity.
    pub fn half_loop_of(&self, h: &DiscretePath) -> Result<DiscreteLoop, StringorError> {
        Ok(self.string.concat(h, &self.string.identity_path())?)
    }
}

/// Random `exp(iH)` with `H` Hermitian in the algebra.
pub fn random_algebra_unitary(alg: &OperatorAlgebra, rng: &mut SampleRng) -> ComplexMatrix {
    let coords = random_complex(rng, alg.dim(), 1).column(0).into_owned();
    let x = alg.from_coordinates(&coords);
    let h = (&x + x.adjoint()) * c(0.5, 0.0);
    (h * c(0.0, 1.0)).exp()
}

/// Unitaries of the algebra.
#[derive(Debug, Clone)]
pub struct AlgebraUnitaries {
    algebra: OperatorAlgebra,
}

impl ComputableGroup for AlgebraUnitaries {
    type Element = ComplexMatrix;

    fn identity(&self) -> ComplexMatrix {
        crate::numeric::identity(self.algebra.size())
    }
    fn mul(&self, a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
        a * b
    }
    fn inv(&self, a: &ComplexMatrix) -> ComplexMatrix {
        a.adjoint()
    }
    fn distance(&self, a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
        distance(a, b)
    }
    fn sample(&self, rng: &mut SampleRng) -> ComplexMatrix {
        random_algebra_unitary(&self.algebra, rng)
    }
}

/// Automorphisms of the algebra, all inner, compared by their action.
#[derive(Debug, Clone)]
pub struct AlgebraAutomorphisms {
    algebra: OperatorAlgebra,
    tol: TolerancePolicy,
}

impl ComputableGroup for AlgebraAutomorphisms {
    type Element = InnerAutomorphism;

    fn identity(&self) -> InnerAutomorphism {
        InnerAutomorphism::identity(&self.algebra)
    }
    fn mul(&self, a: &InnerAutomorphism, b: &InnerAutomorphism) -> InnerAutomorphism {
        a.compose(b)
    }
    fn inv(&self, a: &InnerAutomorphism) -> InnerAutomorphism {
        a.inverse(&self.algebra)
    }
    fn distance(&self, a: &InnerAutomorphism, b: &InnerAutomorphism) -> f64 {
        a.distance(b)
    }
    fn sample(&self, rng: &mut SampleRng) -> InnerAutomorphism {
        InnerAutomorphism::new(&random_algebra_unitary(&self.algebra, rng), &self.algebra, self.tol)
    }
}

/// `U(A) → Aut(A)`, `u ↦ Ad(u)`, with automorphisms acting by evaluation.
#[derive(Debug, Clone)]
pub struct UnitaryAutomorphisms {
    units: AlgebraUnitaries,
    automorphisms: AlgebraAutomorphisms,
}

impl UnitaryAutomorphisms {
    pub fn new(algebra: OperatorAlgebra, tol: TolerancePolicy) -> Self {
        Self { units: AlgebraUnitaries { algebra: algebra.clone() }, automorphisms: AlgebraAutomorphisms { algebra, tol } }
    }
}

impl CrossedModule for UnitaryAutomorphisms {
    type Base = AlgebraAutomorphisms;
    type Top = AlgebraUnitaries;

    fn base(&self) -> &AlgebraAutomorphisms {
        &self.automorphisms
    }
    fn top(&self) -> &AlgebraUnitaries {
        &self.units
    }
    fn boundary(&self, u: &ComplexMatrix) -> InnerAutomorphism {
        InnerAutomorphism::new(u, &self.automorphisms.algebra, self.automorphisms.tol)
    }
    fn act(&self, theta: &InnerAutomorphism, u: &ComplexMatrix) -> ComplexMatrix {
        theta.apply(u)
    }
}

/// Lifts of loops `concat(p, q)`: the morphisms of the string 2-group.
#[derive(Debug, Clone)]
pub struct ConcatLifts {
    model: Arc<StringModel>,
}

impl ComputableGroup for ConcatLifts {
    type Element = ExtLoop;

    fn identity(&self) -> ExtLoop {
        self.model.central(c(1.0, 0.0))
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
    fn sample(&self, rng: &mut SampleRng) -> ExtLoop {
        let p = self.model.random_path(rng);
        let q = self.model.random_path_to(rng, p.endpoint());
        let lifted = self.model.lift(&self.model.concat(&p, &q).expect("shared endpoint")).expect("lift");
        let z = crate::sampling::random_phase(rng);
        self.model.ext_mul(&self.model.central(z), &lifted)
    }
}

/// Paths as objects, lifted concatenations as morphisms, `t` and `s` the two
/// halves, and the fusion factorization as identities.
pub struct StringTwoGroup<'a> {
    ctx: &'a StringorContext,
    paths: PathGroup,
    lifts: ConcatLifts,
}

impl<'a> StringTwoGroup<'a> {
    pub fn new(ctx: &'a StringorContext) -> Self {
        Self { ctx, paths: ctx.string_cm.base().clone(), lifts: ConcatLifts { model: ctx.string.clone() } }
    }
}

impl TwoGroup for StringTwoGroup<'_> {
    type Objects = PathGroup;
    type Morphisms = ConcatLifts;

    fn objects(&self) -> &PathGroup {
        &self.paths
    }
    fn morphisms(&self) -> &ConcatLifts {
        &self.lifts
    }
    fn source(&self, x: &ExtLoop) -> DiscretePath {
        self.ctx.string.halves(&x.loop_part).1
    }
    fn target(&self, x: &ExtLoop) -> DiscretePath {
        self.ctx.string.halves(&x.loop_part).0
    }
    fn unit(&self, p: &DiscretePath) -> ExtLoop {
        self.ctx.fusion_factorization(p).expect("fusion factorization")
    }
}

/// Unitaries normalising the algebra, sampled as `u·JvJ·z` with `u, v` in
/// `U(A)` and `z` a phase.
pub struct NormalizerUnitaries<'a> {
    ctx: &'a StringorContext,
}

impl ComputableGroup for NormalizerUnitaries<'_> {
    type Element = ComplexMatrix;

    fn identity(&self) -> ComplexMatrix {
        crate::numeric::identity(self.ctx.algebra.size())
    }
    fn mul(&self, a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
        mul(a, b)
    }
    fn inv(&self, a: &ComplexMatrix) -> ComplexMatrix {
        a.adjoint()
    }
    fn distance(&self, a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
        distance(a, b)
    }
    fn sample(&self, rng: &mut SampleRng) -> ComplexMatrix {
        let u = random_algebra_unitary(&self.ctx.algebra, rng);
        let v = random_algebra_unitary(&self.ctx.algebra, rng);
        let z = crate::sampling::random_phase(rng);
        mul(&u, &self.ctx.sfd.mirror(&v)) * z
    }
}

/// Automorphisms as objects, normalising unitaries as morphisms, with
/// `t_A`, `s_A` and the canonical implementation.
pub struct UnitaryTwoGroup<'a> {
    ctx: &'a StringorContext,
    normalizer: NormalizerUnitaries<'a>,
}

impl<'a> UnitaryTwoGroup<'a> {
    pub fn new(ctx: &'a StringorContext) -> Self {
        Self { ctx, normalizer: NormalizerUnitaries { ctx } }
    }
}

impl<'a> TwoGroup for UnitaryTwoGroup<'a> {
    type Objects = AlgebraAutomorphisms;
    type Morphisms = NormalizerUnitaries<'a>;

    fn objects(&self) -> &AlgebraAutomorphisms {
        self.ctx.uaut.base()
    }
    fn morphisms(&self) -> &NormalizerUnitaries<'a> {
        &self.normalizer
    }
    fn source(&self, x: &ComplexMatrix) -> InnerAutomorphism {
        self.ctx.source_automorphism(x).expect("normaliser element")
    }
    fn target(&self, x: &ComplexMatrix) -> InnerAutomorphism {
        self.ctx.target_automorphism(x).expect("normaliser element")
    }
    fn unit(&self, theta: &InnerAutomorphism) -> ComplexMatrix {
        canonical_implementation(&self.ctx.sfd, theta, self.ctx.tol()).expect("canonical implementation").unitary
    }
}
