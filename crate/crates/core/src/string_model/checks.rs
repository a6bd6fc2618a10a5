//! Sampled property checks on a [`StringModel`].

use super::{StringError, StringModel};
use crate::bogoliubov::{implementer_kernel, implementer_residual, OrthogonalMap, SkewGenerator, schwinger_term};
use crate::numeric::{commutator, norm, scalar_part, RealMatrix, C64};
use crate::twogroup::{sampled_report, AxiomReport, ComputableGroup};

/// `ω(γγ′) = ω(γ)ω(γ′)` and `ω(γ)` special orthogonal.
pub fn check_omega_homomorphism(model: &StringModel, samples: usize, seed: u64) -> AxiomReport {
    sampled_report(&["omega_homomorphism", "omega_orthogonal", "omega_determinant"], samples, seed, |rng| {
        let (a, b) = (model.random_loop(rng), model.random_loop(rng));
        let (wa, wb) = (model.omega(&a), model.omega(&b));
        let hom = model.omega(&model.loop_mul(&a, &b)).distance(&wa.compose(&wb));
        let m = wa.matrix();
        let orth = (m.transpose() * m - RealMatrix::identity(m.nrows(), m.nrows())).norm();
        vec![hom, orth, (wa.determinant() - 1.0).abs()]
    })
}

/// Lifts implement their loops, and `lift(γ)lift(γ′)lift(γγ′)⁻¹` is a unit
/// scalar. `rescan_ratio` compares vacuum and scan normalisation, which may
/// differ by a unit scalar only.
pub fn check_lift_projectivity(model: &StringModel, samples: usize, seed: u64) -> AxiomReport {
    let names = ["implementer", "product_implementer", "scalar_defect", "unit_modulus", "rescan_ratio"];
    sampled_report(&names, samples, seed, |rng| {
        let (a, b) = (model.random_loop(rng), model.random_loop(rng));
        let (la, lb) = (lift(model, &a), lift(model, &b));
        let lab = lift(model, &model.loop_mul(&a, &b));
        let product = model.ext_mul(&la, &lb);
        let implements = la.implementer.residual(model.clifford());
        let product_implements =
            implementer_residual(model.clifford(), product.unitary(), &model.omega(&product.loop_part));
        let (z, defect) = scalar_part(&(product.unitary() * lab.unitary().adjoint()));
        let rescanned = model.lift_with(&a, crate::bogoliubov::PhaseMode::Scan).expect("lift");
        let (_, ratio_defect) = scalar_part(&(rescanned.unitary() * la.unitary().adjoint()));
        vec![implements, product_implements, defect, (z.norm() - 1.0).abs(), ratio_defect]
    })
}

fn lift(model: &StringModel, a: &super::DiscreteLoop) -> super::ExtLoop {
    model.lift(a).expect("pointwise rotations are special orthogonal")
}

/// Restriction, doubling and concatenation bookkeeping.
pub fn check_loop_operations(model: &StringModel, samples: usize, seed: u64) -> AxiomReport {
    let names = [
        "restrict_based",
        "restrict_endpoint",
        "restrict_homomorphism",
        "concat_restores_loop",
        "double_homomorphism",
        "double_based_at_identity",
    ];
    sampled_report(&names, samples, seed, |rng| {
        let e = model.spin().identity();
        let (a, b) = (model.random_half_loop(rng), model.random_half_loop(rng));
        let (ra, rb) = (model.restrict(&a).expect("half loop"), model.restrict(&b).expect("half loop"));
        let rab = model.restrict(&model.loop_mul(&a, &b)).expect("half loop");
        let based = crate::numeric::distance(&ra.values()[0], &e);
        let endpoint = crate::numeric::distance(ra.endpoint(), &e);
        let hom = model.path_distance(&rab, &model.path_mul(&ra, &rb));
        let restored = model.loop_distance(&model.concat(&ra, &model.identity_path()).expect("both end at e"), &a);
        let (p, q) = (model.random_path(rng), model.random_path(rng));
        let double_hom =
            model.loop_distance(&model.double(&model.path_mul(&p, &q)), &model.loop_mul(&model.double(&p), &model.double(&q)));
        // Δp_{2n−1} = p_1 and p_0 = e, so the doubled loop closes up at the base point.
        let doubled = model.double(&p);
        let closes = crate::numeric::distance(&doubled.values()[model.points() - 1], &p.values()[1]);
        vec![based, endpoint, hom, restored, double_hom, closes]
    })
}

/// `τ² = 1`, `σ(ω(concat(p, q))) = ω(concat(q, p))`, palindromic loops are
/// `σ`-fixed and `σ(ω(γ)) = ω(γ∘τ)`.
pub fn check_reflection(model: &StringModel, samples: usize, seed: u64) -> AxiomReport {
    let tau = model.reflection();
    let involution = tau.compose(&tau).distance(&OrthogonalMap::identity(tau.dim()));
    let names = ["reflection_involution", "sigma_swaps_concat", "sigma_fixes_double", "sigma_reverses_loop"];
    sampled_report(&names, samples, seed, |rng| {
        let p = model.random_path(rng);
        let q = model.random_path_to(rng, p.endpoint());
        let pq = model.concat(&p, &q).expect("shared endpoint");
        let qp = model.concat(&q, &p).expect("shared endpoint");
        let swap = model.sigma(&model.omega(&pq)).distance(&model.omega(&qp));
        let doubled = model.omega(&model.double(&p));
        let fixed = model.sigma(&doubled).distance(&doubled);
        let a = model.random_loop(rng);
        let reversed = model.sigma(&model.omega(&a)).distance(&model.omega(&model.reflect_loop(&a)));
        vec![involution, swap, fixed, reversed]
    })
}

/// Lifts of a first-half loop and a loop supported on the remaining points
/// commute.
pub fn disjoint_commutativity_check(model: &StringModel, samples: usize, seed: u64) -> AxiomReport {
    let first = model.half_support();
    let rest: Vec<usize> = (first.len()..model.points()).collect();
    sampled_report(&["disjoint_commutator"], samples, seed, |rng| {
        let a = lift(model, &model.random_loop_on(rng, &first));
        let b = lift(model, &model.random_loop_on(rng, &rest));
        vec![norm(&commutator(a.unitary(), b.unitary()))]
    })
}

/// Smallest commutator norm between lifts of random loops that share the
/// point `0`; an anti-test for [`disjoint_commutativity_check`].
pub fn overlapping_commutator(model: &StringModel, samples: usize, seed: u64) -> f64 {
    let report = sampled_report(&["inverse_commutator"], samples, seed, |rng| {
        let a = lift(model, &model.random_loop_on(rng, &[0]));
        let b = lift(model, &model.random_loop_on(rng, &[0]));
        vec![1.0 / norm(&commutator(a.unitary(), b.unitary()))]
    });
    1.0 / report.max_residual()
}

/// `π₁` of the string crossed module is the kernel of `t`: lifts of the
/// trivial loop. Its dimension as a space of operators implementing the
/// identity is 1, i.e. only scalars.
pub fn pi1_kernel_dimension(model: &StringModel) -> Result<usize, StringError> {
    let identity = OrthogonalMap::identity(model.clifford().dim_h());
    Ok(implementer_kernel(model.clifford(), &identity, model.tol())?.dim())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CocycleComparison {
    pub discrete: C64,
    pub schwinger: C64,
    pub difference: f64,
}

/// Compares `(2πi)⁻¹ Σ_j ⟨ξ_j, (η_{j+1} − η_{j−1})/2⟩` (with
/// `⟨X, Y⟩ = −tr XY` and indices mod `2n`) against the Fock-space Schwinger term of the
/// block-diagonal generators.
pub fn loop_cocycle_compare(model: &StringModel, xi: &[RealMatrix], eta: &[RealMatrix]) -> Result<CocycleComparison, StringError> {
    let points = model.points();
    for values in [xi, eta] {
        if values.len() != points {
            return Err(StringError::WrongLength { expected: points, got: values.len() });
        }
    }
    let pairing: f64 = (0..points)
        .map(|j| {
            // The central difference keeps the pairing antisymmetric.
            let step = (&eta[(j + 1) % points] - &eta[(j + points - 1) % points]) * 0.5;
            -(&xi[j] * step).trace()
        })
        .sum();
    let discrete = C64::new(pairing, 0.0) / C64::new(0.0, std::f64::consts::TAU);
    let x = SkewGenerator::new(block_diagonal(model, xi), model.tol())?;
    let y = SkewGenerator::new(block_diagonal(model, eta), model.tol())?;
    let schwinger = schwinger_term(model.clifford(), &x, &y, model.tol())?;
    Ok(CocycleComparison { discrete, schwinger, difference: (discrete - schwinger).norm() })
}

fn block_diagonal(model: &StringModel, blocks: &[RealMatrix]) -> RealMatrix {
    let d = model.d();
    let mut m = RealMatrix::zeros(model.points() * d, model.points() * d);
    for (j, b) in blocks.iter().enumerate() {
        m.view_mut((j * d, j * d), (d, d)).copy_from(b);
    }
    m
}
