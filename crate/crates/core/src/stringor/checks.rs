//! Sampled verification of the representation's defining identities.

use super::{StringTwoGroup, StringorContext, UnitaryTwoGroup};
use crate::algebra::canonical_implementation;
use crate::bogoliubov::{agree_up_to_phase, implement_oracle, OrthogonalMap};
use crate::clifford::CliffordModel;
use crate::numeric::{distance, identity, scalar_part, RealMatrix, C64};
use crate::sampling::{random_phase, random_special_orthogonal, sample_rng};
use crate::string_model::{pi1_kernel_dimension, DiscretePath};
use crate::twogroup::{
    check_intertwiner, check_minimal_data, sampled_report, AxiomReport, ComputableGroup, CrossedModule, FnIntertwiner, TwoGroup,
};
use rayon::prelude::*;

/// `(R0, R1)` against the crossed-module axioms of an intertwiner.
pub fn intertwiner_report(ctx: &StringorContext, samples: usize, seed: u64) -> AxiomReport {
    let r = FnIntertwiner {
        on_base: |p: &DiscretePath| ctx.r0(p).expect("doubled loops normalise the algebra"),
        on_top: |phi: &crate::string_model::ExtLoop| phi.unitary().clone(),
    };
    check_intertwiner(&r, ctx.string_cm(), ctx.uaut(), samples, seed)
}

/// The automorphism induced by `concat(p, q)` depends on `p` only.
pub fn check_well_definedness(ctx: &StringorContext, samples: usize, seed: u64) -> AxiomReport {
    let m = ctx.string();
    sampled_report(&["restriction_only", "agrees_with_r0"], samples, seed, |rng| {
        let p = m.random_path(rng);
        let (q, q2) = (m.random_path_to(rng, p.endpoint()), m.random_path_to(rng, p.endpoint()));
        let first = ctx.target_automorphism(ctx.concat_lift(&p, &q).expect("shared endpoint").unitary());
        let second = ctx.target_automorphism(ctx.concat_lift(&p, &q2).expect("shared endpoint").unitary());
        match (first, second, ctx.r0(&p)) {
            (Ok(a), Ok(b), Ok(r)) => vec![a.distance(&b), a.distance(&r)],
            _ => vec![f64::INFINITY; 2],
        }
    })
}

/// `R0(t(Φ)) = t_A(R1(Φ))`, together with membership of `R1(Φ)` in the
/// algebra and its evenness.
pub fn check_t_compatibility(ctx: &StringorContext, samples: usize, seed: u64) -> AxiomReport {
    let cm = ctx.string_cm();
    sampled_report(&["t_compatibility", "membership", "evenness"], samples, seed, |rng| {
        let phi = cm.top().sample(rng);
        let u = phi.unitary();
        let lhs = ctx.r0(&cm.boundary(&phi));
        let rhs = ctx.target_automorphism(u);
        let compat = match (lhs, rhs) {
            (Ok(a), Ok(b)) => a.distance(&b),
            _ => f64::INFINITY,
        };
        vec![compat, ctx.membership_residual(u), ctx.odd_part(u)]
    })
}

/// `R1(α(p, Φ)) = R0(p)(R1(Φ))`, compared as matrices and up to phase.
pub fn check_alpha_compatibility(ctx: &StringorContext, samples: usize, seed: u64) -> AxiomReport {
    let cm = ctx.string_cm();
    sampled_report(&["elementwise", "up_to_phase"], samples, seed, |rng| {
        let p = cm.base().sample(rng);
        let phi = cm.top().sample(rng);
        let left = cm.act(&p, &phi);
        match ctx.r0(&p) {
            Ok(theta) => {
                let right = theta.apply(phi.unitary());
                vec![distance(left.unitary(), &right), agree_up_to_phase(left.unitary(), &right)]
            }
            Err(_) => vec![f64::INFINITY; 2],
        }
    })
}

/// `ff(p) = (Δp, W)`: `W` implements `ω(Δp)`, commutes with `J`, preserves
/// the cone, and `ff` is multiplicative.
pub fn check_fusion_factorization(ctx: &StringorContext, samples: usize, seed: u64) -> AxiomReport {
    let m = ctx.string();
    let names = ["loop_is_double", "implements", "j_commutation", "cone", "homomorphism"];
    sampled_report(&names, samples, seed, |rng| {
        let (p, p2) = (m.random_path(rng), m.random_path(rng));
        let theta = match ctx.r0(&p) {
            Ok(t) => t,
            Err(_) => return vec![f64::INFINITY; names.len()],
        };
        let canonical = match canonical_implementation(ctx.standard_form(), &theta, ctx.tol()) {
            Ok(c) => c,
            Err(_) => return vec![f64::INFINITY; names.len()],
        };
        let (ff, ff2, ff12) = match (ctx.fusion_factorization(&p), ctx.fusion_factorization(&p2), ctx.fusion_factorization(&m.path_mul(&p, &p2))) {
            (Ok(a), Ok(b), Ok(c)) => (a, b, c),
            _ => return vec![f64::INFINITY; names.len()],
        };
        let is_double = m.loop_distance(&ff.loop_part, &m.double(&p));
        let implements = ff.implementer.residual(m.clifford());
        let hom = m.ext_distance(&m.ext_mul(&ff, &ff2), &ff12);
        vec![is_double, implements, canonical.j_residual, canonical.cone_residual, hom]
    })
}

/// Observed values of `f(p) = W·V⁻¹` with `W` the canonical implementation of
/// `R0(p)` and `V` the vacuum-normalised lift of `Δp`.
#[derive(Debug, Clone)]
pub struct FValues {
    /// `scalar_defect`, `unit_modulus` and `f_homomorphism`.
    pub report: AxiomReport,
    pub values: Vec<C64>,
    pub max_deviation_from_one: f64,
}

fn f_value(ctx: &StringorContext, p: &DiscretePath) -> (C64, f64) {
    let m = ctx.string();
    match (ctx.fusion_factorization(p), m.lift(&m.double(p))) {
        (Ok(w), Ok(v)) => scalar_part(&(w.unitary() * v.unitary().adjoint())),
        _ => (C64::new(f64::NAN, f64::NAN), f64::INFINITY),
    }
}

pub fn check_f_trivial(ctx: &StringorContext, samples: usize, seed: u64) -> FValues {
    let m = ctx.string();
    let rows: Vec<(C64, [f64; 3])> = (0..samples as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = sample_rng(seed, i);
            let (p, p2) = (m.random_path(&mut rng), m.random_path(&mut rng));
            let (f1, d1) = f_value(ctx, &p);
            let (f2, _) = f_value(ctx, &p2);
            let (f12, _) = f_value(ctx, &m.path_mul(&p, &p2));
            (f1, [d1, (f1.norm() - 1.0).abs(), (f12 - f1 * f2).norm()])
        })
        .collect();
    let names = ["scalar_defect", "unit_modulus", "f_homomorphism"];
    let worst = (0..3).map(|k| rows.iter().map(|(_, r)| nan_as_inf(r[k])).fold(0.0, f64::max));
    let values: Vec<C64> = rows.iter().map(|(f, _)| *f).collect();
    let max_deviation_from_one = values.iter().map(|f| nan_as_inf((f - C64::new(1.0, 0.0)).norm())).fold(0.0, f64::max);
    FValues {
        report: AxiomReport {
            residuals: names.iter().map(|n| n.to_string()).zip(worst).collect(),
            samples,
            exhaustive: false,
        },
        values,
        max_deviation_from_one,
    }
}

fn nan_as_inf(x: f64) -> f64 {
    if x.is_nan() {
        f64::INFINITY
    } else {
        x
    }
}

/// Minimal-data checks for both 2-groups and the compatibility of
/// `Φ ↦ Φ.unitary` with sources, targets and identities.
pub fn assemble_2group_hom(ctx: &StringorContext, samples: usize, seed: u64) -> AxiomReport {
    let string = StringTwoGroup::new(ctx);
    let unitary = UnitaryTwoGroup::new(ctx);
    let names = ["target_compatibility", "source_compatibility", "unit_compatibility", "identity_to_identity"];
    let compat = sampled_report(&names, samples, seed, |rng| {
        let phi = string.morphisms().sample(rng);
        let u = phi.unitary();
        let target = ctx.r0(&string.target(&phi)).map(|r| unitary.objects().distance(&unitary.target(u), &r));
        let source = ctx.r0(&string.source(&phi)).map(|r| unitary.objects().distance(&unitary.source(u), &r));
        let p = string.objects().sample(rng);
        let unit = ctx.r0(&p).map(|r| distance(string.unit(&p).unitary(), &unitary.unit(&r)));
        let e = string.morphisms().identity();
        let id = distance(e.unitary(), &unitary.morphisms().identity());
        vec![target.unwrap_or(f64::INFINITY), source.unwrap_or(f64::INFINITY), unit.unwrap_or(f64::INFINITY), id]
    });
    compat
        .merge("string.", check_minimal_data(&string, samples, seed ^ 0x5717))
        .merge("unitary.", check_minimal_data(&unitary, samples, seed ^ 0x0a11))
}

/// The orthogonal map implemented by `x`, read off from
/// `x π(b_b) x* = Σ_a M_ab π(b_a)` and `tr π(b_a)π(b_c) = −dim·δ_ac`.
pub fn implemented_map(model: &CliffordModel, x: &crate::numeric::ComplexMatrix) -> RealMatrix {
    let dim = model.fock_dim() as f64;
    let x_adj = x.adjoint();
    let images: Vec<_> = model.generators().iter().map(|g| x * g * &x_adj).collect();
    let size = model.dim_h();
    RealMatrix::from_fn(size, size, |a, b| -(model.generator(a) * &images[b]).trace().re / dim)
}

/// `JUJ` against `σ(g)` for the fixed-point-free reflection (asserted) and
/// for the vertex reflection (recorded).
#[derive(Debug, Clone)]
pub struct ReflectionComparison {
    /// `reflection_agreement` and `identity`.
    pub report: AxiomReport,
    /// Largest `‖M(JUJ) − τ_v g τ_v‖` for the vertex reflection `τ_v`.
    pub vertex_defect: f64,
}

pub fn modular_vs_reflection(ctx: &StringorContext, samples: usize, seed: u64) -> ReflectionComparison {
    let m = ctx.string();
    let model = m.clifford();
    let sfd = ctx.standard_form();
    let vertex = m.vertex_reflection();
    let id_map = implemented_map(model, &sfd.mirror(&identity(model.fock_dim())));
    let id_defect = (id_map - RealMatrix::identity(model.dim_h(), model.dim_h())).norm();
    let rows: Vec<[f64; 2]> = (0..samples as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = sample_rng(seed, i);
            let g = OrthogonalMap::from_trusted(random_special_orthogonal(&mut rng, model.dim_h(), 1.0));
            let u = match implement_oracle(model, &g, m.tol()) {
                Ok(imp) => imp.unitary,
                Err(_) => return [f64::INFINITY; 2],
            };
            let mirrored = implemented_map(model, &sfd.mirror(&u));
            let expected = m.sigma(&g);
            let vertex_expected = vertex.compose(&g).compose(&vertex);
            [(&mirrored - expected.matrix()).norm(), (&mirrored - vertex_expected.matrix()).norm()]
        })
        .collect();
    let agreement = rows.iter().map(|r| nan_as_inf(r[0])).fold(0.0, f64::max);
    let vertex_defect = rows.iter().map(|r| nan_as_inf(r[1])).fold(0.0, f64::max);
    ReflectionComparison {
        report: AxiomReport {
            residuals: vec![("reflection_agreement".into(), agreement), ("identity".into(), id_defect)],
            samples,
            exhaustive: false,
        },
        vertex_defect,
    }
}

/// `R1(e, z) = z`, centrality of `(e, z)`, scalars as the whole kernel of
/// `t`, and `R0(p′) = Ad(R1(h))∘R0(p)` whenever `p′ = t(h)·p`.
pub fn pi_level_checks(ctx: &StringorContext, samples: usize, seed: u64) -> AxiomReport {
    let m = ctx.string();
    let cm = ctx.string_cm();
    let kernel = match pi1_kernel_dimension(m) {
        Ok(dim) => (dim as f64 - 1.0).abs(),
        Err(_) => f64::INFINITY,
    };
    let names = ["r1_on_scalars", "centrality", "inner_difference", "kernel_dimension"];
    sampled_report(&names, samples, seed, |rng| {
        let z = random_phase(rng);
        let central = m.central(z);
        let on_scalars = match ctx.r1(&central) {
            Ok(u) => distance(&u, &(identity(model_dim(ctx)) * z)),
            Err(_) => f64::INFINITY,
        };
        let p = m.random_path(rng);
        let centrality = cm.top().distance(&cm.act(&p, &central), &central);
        let p2 = m.random_path_to(rng, p.endpoint());
        let h = m.path_mul(&p2, &m.path_inv(&p));
        let inner = (|| {
            let lifted = m.lift(&ctx.half_loop_of(&h).ok()?).ok()?;
            let x = ctx.r1(&lifted).ok()?;
            let (r, r2) = (ctx.r0(&p).ok()?, ctx.r0(&p2).ok()?);
            Some(r2.distance(&ctx.uaut().boundary(&x).compose(&r)))
        })()
        .unwrap_or(f64::INFINITY);
        vec![on_scalars, centrality, inner, kernel]
    })
}

fn model_dim(ctx: &StringorContext) -> usize {
    ctx.string().clifford().fock_dim()
}
