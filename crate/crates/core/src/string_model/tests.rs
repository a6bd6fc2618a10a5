use super::*;
use crate::bogoliubov::implementer_residual;
use crate::numeric::{commutator, norm, scalar_part};
use crate::sampling::{random_antisymmetric, sample_rng};
use crate::twogroup::{centrality_residual, check_crossed_module, check_pi0_section, pi1_residual};
use proptest::prelude::*;

const EQ: f64 = 1e-10;

fn model(n: usize, d: usize) -> Arc<StringModel> {
    Arc::new(StringModel::new(n, d, TolerancePolicy::default()).unwrap())
}

#[test]
fn rejects_degenerate_dimensions() {
    assert_eq!(StringModel::new(2, 1, TolerancePolicy::default()).unwrap_err(), StringError::DimensionTooSmall(1));
    let m = model(2, 2);
    assert!(matches!(m.loop_from(vec![]), Err(StringError::WrongLength { expected: 4, got: 0 })));
    let not_based = vec![m.spin().identity() * C64::new(-1.0, 0.0); 3];
    assert!(matches!(m.path_from(not_based), Err(StringError::NotBased(_))));
}

#[test]
fn omega_of_identity_and_half_loops() {
    let m = model(2, 3);
    assert!(m.omega(&m.identity_loop()).distance(&OrthogonalMap::identity(m.clifford().dim_h())) < EQ);
    let mut rng = sample_rng(0x57, 0);
    let a = m.random_half_loop(&mut rng);
    let w = m.omega(&a);
    let d = m.d();
    let tail = (m.n() - 1) * d;
    let rest = w.matrix().view((tail, tail), (w.dim() - tail, w.dim() - tail)).into_owned();
    assert!((rest - RealMatrix::identity(w.dim() - tail, w.dim() - tail)).norm() < EQ);
}

#[test]
fn omega_is_a_homomorphism() {
    let report = check_omega_homomorphism(&model(2, 3), 40, 1);
    assert!(report.passed(EQ), "{report:?}");
}

#[test]
fn loop_bookkeeping() {
    for (n, d) in [(2, 2), (3, 2), (2, 3)] {
        let m = model(n, d);
        let report = check_loop_operations(&m, 20, 2);
        assert!(report.passed(EQ), "{report:?}");
        assert!(m.loop_distance(&m.double(&m.identity_path()), &m.identity_loop()) < EQ);
    }
}

#[test]
fn concat_requires_matching_endpoints() {
    let m = model(2, 2);
    let mut rng = sample_rng(0x57, 3);
    let (p, q) = (m.random_path(&mut rng), m.random_path(&mut rng));
    assert!(matches!(m.concat(&p, &q), Err(StringError::EndpointMismatch(_))));
    let a = m.random_loop(&mut rng);
    assert!(matches!(m.restrict(&a), Err(StringError::NotHalfSupported(_))));
}

#[test]
fn concat_index_layout() {
    let m = model(3, 2);
    let mut rng = sample_rng(0x57, 4);
    let p = m.random_path(&mut rng);
    let q = m.random_path_to(&mut rng, p.endpoint());
    let l = m.concat(&p, &q).unwrap();
    for j in 0..m.points() {
        let expected = if j < m.n() { &p.values()[j + 1] } else { &q.values()[2 * m.n() - j] };
        assert!(crate::numeric::distance(&l.values()[j], expected) < EQ);
    }
}

#[test]
fn lift_of_identity_is_the_unit() {
    let m = model(2, 2);
    let l = m.lift(&m.identity_loop()).unwrap();
    assert!(m.ext_distance(&l, &m.central(C64::new(1.0, 0.0))) < EQ);
}

#[test]
fn lifts_multiply_projectively() {
    let report = check_lift_projectivity(&model(2, 2), 20, 5);
    assert!(report.passed(1e-9), "{report:?}");
}

#[test]
fn lifted_half_loops_live_on_the_first_half() {
    let m = model(3, 2);
    let mut rng = sample_rng(0x57, 6);
    let a = m.lift(&m.random_half_loop(&mut rng)).unwrap();
    // Even, and commutes with every generator attached to the remaining points.
    assert!(norm(&commutator(a.unitary(), m.clifford().grading())) < EQ);
    let rest: Vec<usize> = (m.n() - 1..m.points()).collect();
    for i in m.clifford().generator_indices(&rest) {
        assert!(norm(&commutator(a.unitary(), m.clifford().generator(i))) < EQ);
    }
}

#[test]
fn string_crossed_module_axioms() {
    for (n, d) in [(2, 2), (2, 3), (3, 2)] {
        let cm = string_crossed_module(model(n, d));
        let report = check_crossed_module(&cm, 12, 7);
        assert!(report.passed(1e-8), "(n, d) = ({n}, {d}): {report:?}");
    }
}

#[test]
fn peiffer_identity_at_reference_size() {
    let cm = string_crossed_module(model(2, 3));
    let report = crate::twogroup::sampled_report(&["peiffer"], 100, 8, |rng| {
        let (h, k) = (cm.top().sample(rng), cm.top().sample(rng));
        let top = cm.top();
        vec![top.distance(&cm.act(&cm.boundary(&h), &k), &top.mul(&top.mul(&h, &k), &top.inv(&h)))]
    });
    assert!(report.passed(1e-8), "{report:?}");
}

#[test]
fn central_scalars_form_the_fundamental_group() {
    let m = model(2, 2);
    let cm = string_crossed_module(m.clone());
    let mut rng = sample_rng(0x57, 9);
    let z = crate::sampling::random_phase(&mut rng);
    let central = m.central(z);
    assert!(pi1_residual(&cm, &central) < EQ);
    let acting: Vec<DiscretePath> = (0..8).map(|_| m.random_path(&mut rng)).collect();
    assert!(centrality_residual(&cm, &central, &acting) < EQ);
    assert_eq!(pi1_kernel_dimension(&m).unwrap(), 1);
    let generic = cm.top().sample(&mut rng);
    assert!(pi1_residual(&cm, &generic) > 0.1);
}

#[test]
fn endpoint_evaluation_identifies_components() {
    let m = model(2, 3);
    let cm = string_crossed_module(m.clone());
    let report = check_pi0_section(&cm, m.spin(), |p: &DiscretePath| p.endpoint().clone(), 20, 10);
    assert!(report.passed(EQ), "{report:?}");
    // Surjective: every sampled spin element is the endpoint of some path.
    let mut rng = sample_rng(0x57, 11);
    let x = m.spin().random(&mut rng);
    assert!(crate::numeric::distance(m.random_path_to(&mut rng, &x).endpoint(), &x) < EQ);
}

#[test]
fn disjoint_lifts_commute_and_overlapping_ones_do_not() {
    let m = model(2, 2);
    let report = disjoint_commutativity_check(&m, 30, 12);
    assert!(report.passed(EQ), "{report:?}");
    let identity = m.lift(&m.identity_loop()).unwrap();
    assert!(norm(&commutator(identity.unitary(), identity.unitary())) < EQ);
    let overlap = overlapping_commutator(&m, 30, 13);
    assert!(overlap.is_finite());
}

#[test]
fn reflection_properties() {
    for (n, d) in [(1, 2), (2, 2), (3, 2)] {
        let report = check_reflection(&model(n, d), 20, 14);
        assert!(report.passed(EQ), "{report:?}");
    }
    let m = model(2, 2);
    let id = OrthogonalMap::identity(m.clifford().dim_h());
    assert!(m.sigma(&id).distance(&id) < EQ);
    let v = m.vertex_reflection();
    assert!(v.compose(&v).distance(&id) < EQ);
}

#[test]
fn vertex_reflection_fixes_two_points() {
    let m = model(2, 2);
    let v = m.vertex_reflection();
    let d = m.d();
    assert_eq!(v.matrix()[(0, 0)], -1.0);
    assert_eq!(v.matrix()[(m.n() * d, m.n() * d)], 1.0);
    assert_eq!(v.matrix()[(3 * d, d)], 1.0);
}

#[test]
fn cocycle_comparison_basics() {
    let m = model(2, 2);
    let mut rng = sample_rng(0x57, 15);
    let xi: Vec<RealMatrix> = (0..m.points()).map(|_| random_antisymmetric(&mut rng, 2)).collect();
    let eta: Vec<RealMatrix> = (0..m.points()).map(|_| random_antisymmetric(&mut rng, 2)).collect();
    let same = loop_cocycle_compare(&m, &xi, &xi).unwrap();
    assert!(same.discrete.norm() < EQ && same.schwinger.norm() < EQ);
    let constant = vec![random_antisymmetric(&mut rng, 2); m.points()];
    assert!(loop_cocycle_compare(&m, &xi, &constant).unwrap().discrete.norm() < EQ);
    let forward = loop_cocycle_compare(&m, &xi, &eta).unwrap();
    let backward = loop_cocycle_compare(&m, &eta, &xi).unwrap();
    assert!((forward.discrete + backward.discrete).norm() < EQ);
    assert!((forward.schwinger + backward.schwinger).norm() < EQ);
    assert!(matches!(loop_cocycle_compare(&m, &xi[1..], &eta), Err(StringError::WrongLength { .. })));
}

#[test]
fn action_ignores_the_phase_of_the_lift() {
    let m = model(2, 2);
    let mut rng = sample_rng(0x57, 16);
    let p = m.random_path(&mut rng);
    let h = string_crossed_module(m.clone()).top().sample(&mut rng);
    let v = m.lift(&m.double(&p)).unwrap();
    let z = crate::sampling::random_phase(&mut rng);
    let w = m.ext_mul(&m.central(z), &v);
    let by_v = m.ext_mul(&m.ext_mul(&v, &h), &m.ext_inv(&v));
    let by_w = m.ext_mul(&m.ext_mul(&w, &h), &m.ext_inv(&w));
    assert!(m.ext_distance(&by_v, &by_w) < EQ);
    assert!(implementer_residual(m.clifford(), by_v.unitary(), &m.omega(&by_v.loop_part)) < EQ);
    let (_, defect) = scalar_part(&(by_v.unitary() * by_w.unitary().adjoint()));
    assert!(defect < EQ);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn omega_respects_products(seed in any::<u64>()) {
        let m = model(2, 2);
        let mut rng = sample_rng(seed, 0);
        let (a, b) = (m.random_loop(&mut rng), m.random_loop(&mut rng));
        let lhs = m.omega(&m.loop_mul(&a, &b));
        prop_assert!(lhs.distance(&m.omega(&a).compose(&m.omega(&b))) < EQ);
        prop_assert!(m.omega(&m.loop_inv(&a)).distance(&m.omega(&a).inverse()) < EQ);
    }

    #[test]
    fn palindromic_loops_are_reflection_fixed(seed in any::<u64>()) {
        let m = model(3, 2);
        let mut rng = sample_rng(seed, 0);
        let doubled = m.omega(&m.double(&m.random_path(&mut rng)));
        prop_assert!(m.sigma(&doubled).distance(&doubled) < EQ);
    }
}

#[test]
fn bivector_literals() {
    let m = model(2, 2);
    let zero = vec![vec![0.0]; m.points()];
    assert!(m.loop_distance(&m.loop_from_bivectors(&zero).unwrap(), &m.identity_loop()) < EQ);
    let quarter = std::f64::consts::FRAC_PI_2;
    let a = m.loop_from_bivectors(&[vec![quarter], vec![0.0], vec![0.0], vec![0.0]]).unwrap();
    let rotation = m.spin().covering(&a.values()[0]);
    assert!((rotation[(0, 1)] - quarter.sin()).abs() < EQ || (rotation[(0, 1)] + quarter.sin()).abs() < EQ);
    assert!(m.path_from_bivectors(&[vec![0.0], vec![0.3], vec![1.0]]).is_ok());
    assert!(matches!(m.path_from_bivectors(&[vec![0.5], vec![0.3], vec![1.0]]), Err(StringError::NotBased(_))));
    assert!(matches!(m.loop_from_bivectors(&vec![vec![0.0, 1.0]; 4]), Err(StringError::WrongLength { .. })));
}
