use super::{Bound, Checks, Environment, RunConfig, Suite};
use crate::algebra::{canonical_implementation, commutant, cyclic_separating_check, s_a, super_commutant, InnerAutomorphism, OperatorAlgebra};
use crate::bogoliubov::{implement_oracle, implementer_kernel, normalize_phase, normalized_pin, BogoliubovError, ImplementerRegistry, OrthogonalMap, PhaseMode};
use crate::numeric::{anticommutator, distance, identity, scalar_part, subspace_distance, RealMatrix};
use crate::sampling::{random_antisymmetric, random_complex, random_phase, random_special_orthogonal, sample_rng, SampleRng};
use crate::string_model::{
    check_lift_projectivity, check_loop_operations, check_omega_homomorphism, check_reflection, disjoint_commutativity_check,
    loop_cocycle_compare, overlapping_commutator, pi1_kernel_dimension, DiscretePath, StringCrossedModule, StringModel,
};
use crate::stringor::{
    assemble_2group_hom, check_alpha_compatibility, check_f_trivial, check_fusion_factorization, check_t_compatibility,
    check_well_definedness, intertwiner_report, modular_vs_reflection, pi_level_checks, random_algebra_unitary,
};
use crate::twogroup::{
    centrality_residual, check_crossed_module, check_minimal_data, check_pi0_section, functor_g, pi1_residual, round_trip_residual,
    sampled_report, AxiomReport, FiniteCrossedModule, MatrixAutomorphisms, TableGroup,
};
use std::f64::consts::TAU;

const INF: f64 = f64::INFINITY;

fn rows(report: AxiomReport, bound: Bound) -> Vec<(String, f64, Bound)> {
    report.residuals.into_iter().map(|(n, r)| (n, r, bound)).collect()
}

/// A suite whose shared setup failed still reports, as one failing record.
fn setup_failed(checks: &mut Checks, anchor: &str) {
    checks.check("setup", anchor, Bound::Gate(0.0), 1, |_, _| INF);
}

fn needs_spin(config: &RunConfig) -> bool {
    config.d >= 2
}

pub struct CliffordSuite;

impl Suite for CliffordSuite {
    fn name(&self) -> &'static str {
        "clifford"
    }

    fn run(&self, env: &Environment, checks: &mut Checks) {
        let model = env.clifford();
        let dim_h = model.dim_h();
        checks.axioms("relations", "Clifford relation", Bound::Gate(1e-10), 200, |seed, samples| {
            sampled_report(&["anticommutator", "adjoint"], samples, seed, |rng| {
                let v = random_complex(rng, dim_h, 1).column(0).into_owned();
                let w = random_complex(rng, dim_h, 1).column(0).into_owned();
                let (pv, pw) = (model.pi_vector(&v).unwrap(), model.pi_vector(&w).unwrap());
                let expected = identity(model.fock_dim()) * (v.conjugate().dotc(&w) * -2.0);
                let star = distance(&pv.adjoint(), &-model.pi_vector(&v.conjugate()).unwrap());
                vec![distance(&anticommutator(&pv, &pw), &expected), star]
            })
        });
        checks.check("grading", "Clifford relation", Bound::Gate(1e-10), 1, |_, _| {
            let g = model.grading();
            let square = distance(&(g * g), &identity(model.fock_dim()));
            model.generators().iter().map(|p| distance(&(g * p * g), &-p)).fold(square, f64::max)
        });
        checks.check("lagrangian", "Fock representation", Bound::Gate(1e-10), 1, |_, _| {
            crate::clifford::lagrangian_defect(model.lagrangian())
        });
        checks.check("irreducibility", "Fock representation", Bound::Exact, 1, |_, _| {
            let kernel = implementer_kernel(model, &OrthogonalMap::identity(dim_h), env.tol()).expect("identity map");
            (kernel.dim() as f64 - 1.0).abs()
        });
    }
}

pub struct BogoliubovSuite;

fn random_rotation(rng: &mut SampleRng, dim: usize) -> OrthogonalMap {
    OrthogonalMap::new(random_special_orthogonal(rng, dim, 1.0), Default::default()).expect("sampled maps are orthogonal")
}

impl Suite for BogoliubovSuite {
    fn name(&self) -> &'static str {
        "bogoliubov"
    }

    fn run(&self, env: &Environment, checks: &mut Checks) {
        let model = env.clifford();
        let tol = env.tol();
        let dim_h = model.dim_h();
        let registry = ImplementerRegistry::default();
        let names = ["kernel_dimension", "oracle_residual", "pin_residual", "pin_oracle_agreement"];
        checks.axioms_with(
            "implementers",
            "implementer relation",
            50,
            |seed, samples| {
                sampled_report(&names, samples, seed, |rng| {
                    let g = random_rotation(rng, dim_h);
                    let oracle = match implement_oracle(model, &g, tol) {
                        Ok(imp) => imp,
                        Err(BogoliubovError::NonUniqueImplementer(k)) => return vec![(k as f64 - 1.0).abs(), INF, INF, INF],
                        Err(_) => return vec![INF; 4],
                    };
                    let Ok(pin) = registry.get("pin").and_then(|s| s.implement(model, &g, tol)) else {
                        return vec![0.0, oracle.residual(model), INF, INF];
                    };
                    let (a, b) = (normalize_phase(&oracle, PhaseMode::Vacuum, tol), normalize_phase(&pin, PhaseMode::Vacuum, tol));
                    vec![0.0, oracle.residual(model), pin.residual(model), distance(&a.unitary, &b.unitary)]
                })
            },
            |axiom| match axiom {
                "kernel_dimension" => Bound::Exact,
                "pin_oracle_agreement" => Bound::Gate(1e-8),
                _ => Bound::Gate(1e-9),
            },
        );
        for name in registry.names() {
            checks.check(&format!("strategy_{name}"), "implementer relation", Bound::Gate(1e-9), 10, |seed, samples| {
                let strategy = registry.get(name).expect("listed strategy");
                (0..samples as u64)
                    .map(|i| {
                        let g = random_rotation(&mut sample_rng(seed, i), dim_h);
                        strategy.implement(model, &g, tol).map(|imp| imp.residual(model)).unwrap_or(INF)
                    })
                    .fold(0.0, f64::max)
            });
        }
        checks.axioms("extension", "central extension by unit scalars", Bound::Gate(1e-8), 50, |seed, samples| {
            sampled_report(&["scalar_defect", "unit_modulus", "cocycle_identity"], samples, seed, |rng| {
                let (g, h, k) = (random_rotation(rng, dim_h), random_rotation(rng, dim_h), random_rotation(rng, dim_h));
                let lift = |x: &OrthogonalMap| normalized_pin(model, x, tol).expect("rotations have even implementers");
                let cocycle = |x: &OrthogonalMap, y: &OrthogonalMap| scalar_part(&(lift(x) * lift(y) * lift(&x.compose(y)).adjoint()));
                let (c_gh, defect) = cocycle(&g, &h);
                let (c_gh_k, _) = cocycle(&g.compose(&h), &k);
                let (c_g_hk, _) = cocycle(&g, &h.compose(&k));
                let (c_hk, _) = cocycle(&h, &k);
                vec![defect, (c_gh.norm() - 1.0).abs(), (c_gh * c_gh_k - c_g_hk * c_hk).norm()]
            })
        });
    }
}

pub struct TomitaSuite;

fn algebra_distance(a: &OperatorAlgebra, b: &OperatorAlgebra) -> f64 {
    subspace_distance(a.subspace(), b.subspace()).unwrap_or(INF)
}

impl Suite for TomitaSuite {
    fn name(&self) -> &'static str {
        "tomita"
    }

    fn run(&self, env: &Environment, checks: &mut Checks) {
        let Ok(halves) = env.halves() else {
            return setup_failed(checks, "standard form");
        };
        let model = env.clifford();
        let tol = env.tol();
        let sfd = &halves.standard_form;
        let first = &halves.first;
        checks.measure(
            "twisted_duality",
            "twisted duality",
            1,
            |_, _| {
                let g = model.grading();
                let of_first = super_commutant(first, g, tol).map(|s| algebra_distance(&s, &halves.second)).unwrap_or(INF);
                let of_second = super_commutant(&halves.second, g, tol).map(|s| algebra_distance(&s, first)).unwrap_or(INF);
                [of_first, of_second]
            },
            |[a, b]| vec![("first_half".into(), a, Bound::Gate(1e-8)), ("second_half".into(), b, Bound::Gate(1e-8))],
        );
        checks.check("cyclic_separating", "standard form", Bound::Exact, 1, |_, _| {
            if cyclic_separating_check(first, &model.vacuum(), tol).both() {
                0.0
            } else {
                1.0
            }
        });
        checks.measure(
            "modular",
            "modular conjugation and modular operator",
            1,
            |_, _| serde_json::to_value(sfd.residuals()).expect("plain struct"),
            |value| {
                let fields = value.as_object().expect("struct serializes to an object");
                fields.iter().map(|(k, v)| (k.clone(), v.as_f64().unwrap_or(INF), Bound::Gate(1e-9))).collect()
            },
        );
        checks.check("mirror_is_commutant", "modular conjugation and modular operator", Bound::Gate(1e-9), 1, |_, _| {
            let mirrored: Vec<_> = first.basis().iter().map(|b| sfd.mirror(b)).collect();
            let image = OperatorAlgebra::from_elements(first.size(), &mirrored, tol);
            commutant(first, tol).map(|c| algebra_distance(&image, &c)).unwrap_or(INF)
        });
        let names = ["action", "j_commutation", "cone", "source_trivial"];
        checks.axioms("canonical_implementation", "canonical implementation", Bound::Gate(1e-9), 20, |seed, samples| {
            sampled_report(&names, samples, seed, |rng| {
                let u = random_algebra_unitary(first, rng);
                let theta = InnerAutomorphism::new(&u, first, tol);
                let source = s_a(&u, sfd, tol).map(|s| s.distance(&InnerAutomorphism::identity(first))).unwrap_or(INF);
                match canonical_implementation(sfd, &theta, tol) {
                    Ok(ci) => vec![ci.action_residual, ci.j_residual, ci.cone_residual, source],
                    Err(_) => vec![INF, INF, INF, source],
                }
            })
        });
    }
}

pub struct TwoGroupSuite;

fn finite_rows(cm: &FiniteCrossedModule, samples: usize, seed: u64) -> Vec<(String, f64, Bound)> {
    let mut out = rows(check_crossed_module(cm, samples, seed).merge("round_trip.", round_trip_residual(cm, samples, seed ^ 1)), Bound::Exact);
    for (name, r, _) in rows(check_minimal_data(&functor_g(cm), samples, seed ^ 2), Bound::Exact) {
        out.push((format!("minimal_data.{name}"), r, Bound::Exact));
    }
    out.push(("pi1_fixed".into(), if cm.pi1_is_fixed() { 0.0 } else { 1.0 }, Bound::Exact));
    out
}

impl Suite for TwoGroupSuite {
    fn name(&self) -> &'static str {
        "two-group"
    }

    fn run(&self, _env: &Environment, checks: &mut Checks) {
        let anchor = "crossed modules and strict 2-groups";
        let examples: [(&str, fn() -> FiniteCrossedModule); 4] = [
            ("conjugation_dihedral", || FiniteCrossedModule::conjugation(TableGroup::dihedral(4))),
            ("alternating_in_symmetric", FiniteCrossedModule::alternating_in_symmetric),
            ("delooping_cyclic", || FiniteCrossedModule::delooping(TableGroup::cyclic(3))),
            ("discrete_symmetric", || FiniteCrossedModule::discrete(TableGroup::symmetric(3))),
        ];
        for (name, build) in examples {
            checks.measure(name, anchor, 100, |seed, samples| finite_rows(&build(), samples, seed), |r| r);
        }
        checks.measure(
            "random_finite",
            anchor,
            100,
            |seed, samples| finite_rows(&FiniteCrossedModule::random(&mut sample_rng(seed, u64::MAX)), samples, seed),
            |r| r,
        );
        let matrices = MatrixAutomorphisms::new(2);
        checks.axioms("matrix_automorphisms", anchor, Bound::Gate(1e-9), 100, |seed, samples| {
            check_crossed_module(&matrices, samples, seed).merge("minimal_data.", check_minimal_data(&functor_g(&matrices), samples, seed ^ 2))
        });
        checks.axioms("matrix_round_trip", anchor, Bound::Gate(1e-10), 50, |seed, samples| round_trip_residual(&matrices, samples, seed));
    }
}

/// Largest magnitudes over a few pairs of low-frequency loops in the
/// rotation algebra.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CocycleSweep {
    /// `|discrete pairing − Fock Schwinger term|`.
    pub difference: f64,
    pub discrete: f64,
    pub fock: f64,
}

/// Compares the discrete loop pairing with the Fock-space Schwinger term on
/// `samples` pairs of first-harmonic loops. On a finite lattice the Fock term
/// is a coboundary, a linear function of `[X, Y]`, so it vanishes whenever
/// the rotation algebra is abelian (d = 2).
pub fn smooth_cocycle_sample(model: &StringModel, samples: usize, seed: u64) -> CocycleSweep {
    let points = model.points();
    let d = model.d();
    let smooth = |rng: &mut SampleRng| -> Vec<RealMatrix> {
        let (a, b) = (random_antisymmetric(rng, d), random_antisymmetric(rng, d));
        (0..points)
            .map(|j| {
                let angle = TAU * j as f64 / points as f64;
                &a * angle.cos() + &b * angle.sin()
            })
            .collect()
    };
    let mut worst = CocycleSweep::default();
    for i in 0..samples as u64 {
        let mut rng = sample_rng(seed, i);
        let (xi, eta) = (smooth(&mut rng), smooth(&mut rng));
        let (difference, discrete, fock) = match loop_cocycle_compare(model, &xi, &eta) {
            Ok(cmp) => (cmp.difference, cmp.discrete.norm(), cmp.schwinger.norm()),
            Err(_) => (INF, INF, INF),
        };
        worst.difference = worst.difference.max(difference);
        worst.discrete = worst.discrete.max(discrete);
        worst.fock = worst.fock.max(fock);
    }
    worst
}

pub struct StringSuite;

impl Suite for StringSuite {
    fn name(&self) -> &'static str {
        "string"
    }

    fn applies(&self, config: &RunConfig) -> bool {
        needs_spin(config)
    }

    fn run(&self, env: &Environment, checks: &mut Checks) {
        let model = env.string();
        let m: &StringModel = model;
        let cm = StringCrossedModule::new(model.clone());
        let gate = Bound::Gate(1e-8);
        checks.axioms("omega", "pointwise rotation of loops", gate, 200, |seed, n| check_omega_homomorphism(m, n, seed));
        checks.axioms("loop_operations", "restriction, concatenation and doubling", gate, 100, |seed, n| {
            check_loop_operations(m, n, seed)
        });
        checks.axioms("lift_projectivity", "central extension of the loop group", gate, 100, |seed, n| {
            check_lift_projectivity(m, n, seed)
        });
        checks.axioms("crossed_module", "equivariance and Peiffer identity", gate, 100, |seed, n| check_crossed_module(&cm, n, seed));
        checks.axioms("disjoint_commutativity", "disjoint commutativity", gate, 50, |seed, n| {
            disjoint_commutativity_check(m, n, seed)
        });
        checks.check("overlapping_commutator", "disjoint commutativity", Bound::Explore, 20, |seed, n| {
            overlapping_commutator(m, n, seed)
        });
        checks.axioms("reflection", "loop reflection", gate, 50, |seed, n| check_reflection(m, n, seed));
        checks.check("pi1_kernel_dimension", "fundamental group", Bound::Exact, 1, |_, _| {
            pi1_kernel_dimension(m).map(|k| (k as f64 - 1.0).abs()).unwrap_or(INF)
        });
        checks.axioms("pi1_centrality", "fundamental group", Bound::Gate(1e-10), 20, |seed, n| {
            sampled_report(&["in_kernel", "central"], n, seed, |rng| {
                let central = m.central(random_phase(rng));
                let acting: Vec<DiscretePath> = (0..4).map(|_| m.random_path(rng)).collect();
                vec![pi1_residual(&cm, &central), centrality_residual(&cm, &central, &acting)]
            })
        });
        checks.axioms("pi0_section", "connected components", gate, 50, |seed, n| {
            check_pi0_section(&cm, m.spin(), |p: &DiscretePath| p.endpoint().clone(), n, seed)
        });
        checks.measure(
            "cocycle_comparison",
            "basic cocycle",
            5,
            |seed, n| smooth_cocycle_sample(m, n, seed),
            |w| {
                vec![
                    ("difference".into(), w.difference, Bound::Explore),
                    ("discrete".into(), w.discrete, Bound::Explore),
                    ("fock".into(), w.fock, Bound::Explore),
                ]
            },
        );
    }
}

pub struct StringorSuite;

impl Suite for StringorSuite {
    fn name(&self) -> &'static str {
        "stringor"
    }

    fn applies(&self, config: &RunConfig) -> bool {
        needs_spin(config)
    }

    fn run(&self, env: &Environment, checks: &mut Checks) {
        let Ok(ctx) = env.stringor() else {
            return setup_failed(checks, "stringor representation");
        };
        let gate = Bound::Gate(1e-8);
        checks.axioms("t_compatibility", "stringor representation", gate, 100, |seed, n| check_t_compatibility(ctx, n, seed));
        checks.axioms("alpha_compatibility", "stringor representation", gate, 100, |seed, n| {
            check_alpha_compatibility(ctx, n, seed)
        });
        checks.axioms("well_definedness", "stringor representation", gate, 50, |seed, n| check_well_definedness(ctx, n, seed));
        checks.axioms("intertwiner", "stringor representation", gate, 30, |seed, n| intertwiner_report(ctx, n, seed));
        checks.axioms("fusion_factorization", "fusion factorization", gate, 30, |seed, n| {
            check_fusion_factorization(ctx, n, seed)
        });
        checks.measure(
            "f_values",
            "fusion factorization",
            30,
            |seed, n| check_f_trivial(ctx, n, seed),
            |f| {
                let mut out = rows(f.report, gate);
                out.push(("deviation_from_one".into(), f.max_deviation_from_one, Bound::Explore));
                out
            },
        );
        checks.axioms("two_group_hom", "2-group homomorphism", gate, 30, |seed, n| assemble_2group_hom(ctx, n, seed));
        checks.measure(
            "modular_reflection",
            "modular conjugation realizes the reflection",
            4,
            |seed, n| modular_vs_reflection(ctx, n, seed),
            |cmp| {
                let mut out = rows(cmp.report, gate);
                out.push(("vertex_defect".into(), cmp.vertex_defect, Bound::Explore));
                out
            },
        );
        checks.axioms("pi_level", "fundamental group", Bound::Gate(1e-10), 30, |seed, n| pi_level_checks(ctx, n, seed));
    }
}
