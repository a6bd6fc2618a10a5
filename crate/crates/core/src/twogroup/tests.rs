use super::*;
use crate::sampling::sample_rng;
use proptest::prelude::*;

fn builtins() -> Vec<FiniteCrossedModule> {
    vec![
        FiniteCrossedModule::delooping(TableGroup::cyclic(4)),
        FiniteCrossedModule::discrete(TableGroup::symmetric(3)),
        FiniteCrossedModule::alternating_in_symmetric(),
        FiniteCrossedModule::conjugation(TableGroup::dihedral(4)),
        FiniteCrossedModule::cyclic_module(TableGroup::cyclic(2), 5, |x| if x == 0 { 1 } else { 4 }).unwrap(),
        FiniteCrossedModule::product(
            &FiniteCrossedModule::delooping(TableGroup::cyclic(2)),
            &FiniteCrossedModule::alternating_in_symmetric(),
        ),
    ]
}

fn random_modules(count: u64) -> Vec<FiniteCrossedModule> {
    (0..count).map(|i| FiniteCrossedModule::random(&mut sample_rng(0xc405_5ed, i))).collect()
}

#[test]
fn table_groups_satisfy_group_laws() {
    for g in [
        TableGroup::cyclic(7),
        TableGroup::dihedral(5),
        TableGroup::symmetric(3),
        TableGroup::symmetric(4),
        TableGroup::alternating(4),
        TableGroup::direct_product(&TableGroup::cyclic(2), &TableGroup::symmetric(3)),
    ] {
        let report = check_group(&g, 0, 0);
        assert!(report.exhaustive && report.passed(0.0), "{}: {report:?}", g.name());
    }
    assert_eq!(TableGroup::symmetric(4).order(), 24);
    assert_eq!(TableGroup::alternating(4).order(), 12);
    assert!(!TableGroup::symmetric(3).is_abelian());
    assert!(TableGroup::cyclic(6).is_abelian());
}

#[test]
fn from_table_validates_and_relabels_the_identity() {
    // Z/2 written with the identity as label 1.
    let g = TableGroup::from_table("flip", 2, vec![1, 0, 0, 1]).unwrap();
    assert_eq!(g.op(0, 1), 1);
    assert_eq!(g.op(1, 1), 0);
    // x·y = x is associative but has no two-sided identity.
    assert_eq!(TableGroup::from_table("left", 2, vec![0, 0, 1, 1]), Err(TableError::NoIdentity));
    // x·y = (x - y) mod 3 is not associative.
    let sub: Vec<usize> = (0..9).map(|k| (k / 3 + 3 - k % 3) % 3).collect();
    assert!(matches!(TableGroup::from_table("sub", 3, sub), Err(TableError::NotAssociative(..))));
    assert_eq!(TableGroup::from_table("bad", 2, vec![0, 1, 2, 0]), Err(TableError::Shape));
}

#[test]
fn stock_crossed_modules_pass() {
    for cm in builtins() {
        let report = check_crossed_module(&cm, 200, 1);
        assert!(report.exhaustive, "{}", cm.name());
        assert!(report.passed(0.0), "{}: {report:?}", cm.name());
    }
}

#[test]
fn delooping_a_nonabelian_group_breaks_only_peiffer() {
    let report = check_crossed_module(&FiniteCrossedModule::delooping(TableGroup::symmetric(3)), 200, 1);
    assert_eq!(report.residual("peiffer"), Some(1.0));
    let others = report.residuals.iter().filter(|(n, _)| n != "peiffer").map(|(_, r)| *r).fold(0.0, f64::max);
    assert_eq!(others, 0.0);
}

#[test]
fn normal_inclusion_rejects_non_normal_subgroups() {
    let s3 = TableGroup::symmetric(3);
    let transposition = (1..6).find(|&x| s3.op(x, x) == 0).unwrap();
    let sub = s3.generated_subgroup(&[transposition]);
    assert_eq!(sub.len(), 2);
    assert!(matches!(FiniteCrossedModule::normal_inclusion(s3, &sub), Err(TableError::NotNormal)));
}

#[test]
fn cyclic_module_requires_a_character() {
    // Z/3 cannot act on Z/5 by x ↦ 4x, since 4³ ≠ 1 mod 5.
    let r = FiniteCrossedModule::cyclic_module(TableGroup::cyclic(3), 5, |x| [1, 4, 1][x]);
    assert!(matches!(r, Err(TableError::NotHomomorphism)));
}

#[test]
fn intertwiner_examples() {
    let cm = FiniteCrossedModule::alternating_in_symmetric();
    let id = FiniteIntertwiner::identity(&cm);
    assert!(check_intertwiner(&id, &cm, &cm, 50, 2).passed(0.0));

    let small = FiniteCrossedModule::delooping(TableGroup::cyclic(2));
    let large = FiniteCrossedModule::delooping(TableGroup::cyclic(4));
    let doubling = FiniteIntertwiner { on_base: vec![0], on_top: vec![0, 2] };
    assert!(check_intertwiner(&doubling, &small, &large, 50, 2).passed(0.0));

    let broken = FiniteIntertwiner { on_base: vec![0], on_top: vec![0, 1] };
    let report = check_intertwiner(&broken, &small, &large, 50, 2);
    assert_eq!(report.residual("top_homomorphism"), Some(1.0));
}

#[test]
fn closure_intertwiner_matches_table_version() {
    let small = FiniteCrossedModule::delooping(TableGroup::cyclic(2));
    let large = FiniteCrossedModule::delooping(TableGroup::cyclic(4));
    let r = FnIntertwiner { on_base: |_: &usize| 0usize, on_top: |h: &usize| 2 * h };
    let report = check_intertwiner::<FiniteCrossedModule, FiniteCrossedModule, _>(&r, &small, &large, 10, 3);
    assert!(report.passed(0.0));
}

#[test]
fn functor_g_on_discrete_and_delooped_groups() {
    let dis = functor_g(FiniteCrossedModule::discrete(TableGroup::symmetric(3)));
    let all = dis.morphisms().elements().unwrap();
    assert_eq!(all.len(), 6);
    for x in &all {
        assert_eq!(dis.source(x), dis.target(x));
    }
    let b = functor_g(FiniteCrossedModule::delooping(TableGroup::cyclic(2)));
    assert_eq!(b.morphisms().elements().unwrap().len(), 2);
    assert_eq!(b.objects().order(), 1);
    for cm in builtins() {
        let name = cm.name().to_string();
        let report = check_minimal_data(&functor_g(cm), 200, 4);
        assert!(report.passed(0.0), "{name}: {report:?}");
    }
}

#[test]
fn functor_x_round_trip_is_exact() {
    for cm in builtins().into_iter().chain(random_modules(10)) {
        let trip = round_trip_residual(&cm, 100, 5);
        assert!(trip.exhaustive && trip.passed(0.0), "{}: {trip:?}", cm.name());
        let back = functor_x(functor_g(&cm));
        let report = check_crossed_module(&back, 200, 6);
        assert!(report.passed(0.0), "{}: {report:?}", cm.name());
    }
}

#[test]
fn kernel_of_a_discrete_two_group_is_trivial() {
    let x = functor_x(functor_g(FiniteCrossedModule::discrete(TableGroup::dihedral(3))));
    assert_eq!(x.top().elements().unwrap().len(), 1);
}

#[test]
fn random_crossed_modules_are_valid() {
    for cm in random_modules(10) {
        let report = check_crossed_module(&cm, 200, 7);
        assert!(report.passed(0.0), "{}: {report:?}", cm.name());
        assert!(check_minimal_data(&functor_g(&cm), 200, 8).passed(0.0), "{}", cm.name());
        assert!(cm.pi1_is_fixed(), "{}", cm.name());
    }
}

#[test]
fn composition_identities() {
    let cm = FiniteCrossedModule::conjugation(TableGroup::symmetric(3));
    let tg = functor_g(&cm);
    let all = tg.morphisms().elements().unwrap();
    for x in &all {
        let unit_s = tg.unit(&tg.source(x));
        assert_eq!(compose(&tg, x, &unit_s, 0.0).unwrap(), *x);
        let inv = invert_morphism(&tg, x);
        assert_eq!(compose(&tg, &inv, x, 0.0).unwrap(), unit_s);
        assert_eq!(compose(&tg, x, &inv, 0.0).unwrap(), tg.unit(&tg.target(x)));
    }
    for g in 0..6 {
        let u = tg.unit(&g);
        assert_eq!(compose(&tg, &u, &u, 0.0).unwrap(), u);
    }
    let m = tg.morphisms();
    for x in &all {
        for y in all.iter().filter(|y| tg.target(y) == tg.source(x)) {
            let xy = compose(&tg, x, y, 0.0).unwrap();
            assert_eq!(xy, compose_via_target(&tg, x, y, 0.0).unwrap());
            // Interchange law against a second composable pair.
            for x2 in all.iter().step_by(5) {
                for y2 in all.iter().filter(|y2| tg.target(y2) == tg.source(x2)).take(2) {
                    let lhs = m.mul(&xy, &compose(&tg, x2, y2, 0.0).unwrap());
                    let rhs = compose(&tg, &m.mul(x, x2), &m.mul(y, y2), 0.0).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
}

#[test]
fn compose_rejects_mismatched_morphisms() {
    let tg = functor_g(FiniteCrossedModule::discrete(TableGroup::cyclic(3)));
    let r = compose(&tg, &(0, 1), &(0, 2), 0.0);
    assert_eq!(r, Err(TwoGroupError::NotComposable(1.0)));
}

/// `G(cm)` with a unit map that is not a section of the source.
struct ShiftedUnit<T>(T);

impl<T: TwoGroup<Objects = TableGroup>> TwoGroup for ShiftedUnit<T> {
    type Objects = TableGroup;
    type Morphisms = T::Morphisms;

    fn objects(&self) -> &TableGroup {
        self.0.objects()
    }
    fn morphisms(&self) -> &T::Morphisms {
        self.0.morphisms()
    }
    fn source(&self, x: &Elem<T::Morphisms>) -> usize {
        self.0.source(x)
    }
    fn target(&self, x: &Elem<T::Morphisms>) -> usize {
        self.0.target(x)
    }
    fn unit(&self, g: &usize) -> Elem<T::Morphisms> {
        let shifted = self.objects().op(*g, 1);
        self.0.unit(&shifted)
    }
}

#[test]
fn non_section_unit_fails_minimal_data() {
    let broken = ShiftedUnit(functor_g(FiniteCrossedModule::discrete(TableGroup::cyclic(3))));
    let report = check_minimal_data(&broken, 50, 9);
    assert_eq!(report.residual("source_section"), Some(1.0));
    assert_eq!(report.residual("target_section"), Some(1.0));
}

#[test]
fn homotopy_groups_of_stock_examples() {
    let b = FiniteCrossedModule::delooping(TableGroup::cyclic(4));
    assert_eq!(b.pi1(), vec![0, 1, 2, 3]);
    assert_eq!(b.pi0().len(), 1);
    let dis = FiniteCrossedModule::discrete(TableGroup::symmetric(3));
    assert_eq!(dis.pi1(), vec![0]);
    assert_eq!(dis.pi0().len(), 6);
    let a3 = FiniteCrossedModule::alternating_in_symmetric();
    assert_eq!(a3.pi1(), vec![0]);
    assert_eq!(a3.pi0().len(), 2);
    let inn = FiniteCrossedModule::conjugation(TableGroup::dihedral(4));
    assert_eq!(inn.pi0().len(), 1);
    let module = FiniteCrossedModule::cyclic_module(TableGroup::cyclic(2), 5, |x| if x == 0 { 1 } else { 4 }).unwrap();
    assert_eq!(module.pi1().len(), 5);
    // Z/2 acts by negation on π₁ = Z/5, so π₁ is not fixed.
    assert!(!module.pi1_is_fixed());
    let acting: Vec<usize> = (0..2).collect();
    assert_eq!(centrality_residual(&module, &1, &acting), 1.0);
    assert_eq!(pi1_residual(&module, &3), 0.0);
}

#[test]
fn pi0_section_of_a_normal_inclusion() {
    // S3 / A3 ≅ Z/2 via the sign.
    let cm = FiniteCrossedModule::alternating_in_symmetric();
    let a3: Vec<usize> = (0..3).map(|h| cm.boundary_index(h)).collect();
    let sign = |g: &usize| usize::from(!a3.contains(g));
    let report = check_pi0_section(&cm, &TableGroup::cyclic(2), sign, 100, 10);
    assert!(report.passed(0.0), "{report:?}");
    let wrong = |g: &usize| usize::from(*g != 0);
    assert!(!check_pi0_section(&cm, &TableGroup::cyclic(2), wrong, 100, 10).passed(0.0));
}

#[test]
fn matrix_automorphism_crossed_module() {
    let cm = MatrixAutomorphisms::new(2);
    let report = check_crossed_module(&cm, 200, 11);
    assert!(!report.exhaustive);
    assert!(report.passed(1e-9), "{report:?}");
    assert!(round_trip_residual(&cm, 50, 12).passed(1e-10));
    assert!(check_minimal_data(&functor_g(&cm), 50, 13).passed(1e-9));
    // π₁ is the scalars: Ad(z) is the identity automorphism.
    let z = crate::numeric::identity(2) * crate::numeric::c(0.0, 3.0);
    assert!(pi1_residual(&cm, &z) < 1e-14);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_modules_and_their_two_groups_are_consistent(seed in any::<u64>()) {
        let cm = FiniteCrossedModule::random(&mut sample_rng(seed, 0));
        prop_assert!(check_crossed_module(&cm, 50, seed).passed(0.0));
        let tg = functor_g(&cm);
        let m = tg.morphisms();
        let mut rng = sample_rng(seed, 1);
        for _ in 0..20 {
            let x = m.sample(&mut rng);
            let inv = invert_morphism(&tg, &x);
            prop_assert_eq!(compose(&tg, &inv, &x, 0.0).unwrap(), tg.unit(&tg.source(&x)));
            let k = source_kernel_part(&tg, &x);
            prop_assert_eq!(tg.source(&k), 0);
        }
    }
}
