//! Crossed modules and strict 2-groups over pluggable groups.
//!
//! Groups only need to expose multiplication, inversion, a distance used for
//! tolerance-aware equality, and a sampler. Axiom checks are exhaustive when
//! every group involved is finite with at most [`EXHAUSTIVE_LIMIT`] elements,
//! and sample-based otherwise. Sample `i` always draws from its own seeded
//! stream, so reports do not depend on evaluation order.

mod finite;
mod functors;
mod matrix;

pub use finite::{FiniteCrossedModule, FiniteIntertwiner, TableGroup, TableError};
pub use functors::{functor_g, functor_x, round_trip_residual, KernelCrossedModule, Semidirect, SemidirectTwoGroup, SourceKernel};
pub use matrix::{Conjugation, GeneralLinear, InnerConjugations, MatrixAutomorphisms};

use crate::sampling::{sample_rng, SampleRng};
use rayon::prelude::*;
use serde::Serialize;
use std::fmt::Debug;
use thiserror::Error;

/// Groups up to this order are checked on every tuple instead of samples.
pub const EXHAUSTIVE_LIMIT: usize = 64;

pub trait ComputableGroup: Sync {
    type Element: Clone + Debug;

    fn identity(&self) -> Self::Element;
    fn mul(&self, a: &Self::Element, b: &Self::Element) -> Self::Element;
    fn inv(&self, a: &Self::Element) -> Self::Element;
    /// Zero exactly when the elements are equal.
    fn distance(&self, a: &Self::Element, b: &Self::Element) -> f64;
    fn sample(&self, rng: &mut SampleRng) -> Self::Element;

    /// Every element, for finite groups small enough to enumerate.
    fn elements(&self) -> Option<Vec<Self::Element>> {
        None
    }

    fn eq(&self, a: &Self::Element, b: &Self::Element, tol: f64) -> bool {
        self.distance(a, b) <= tol
    }
}

pub type Elem<G> = <G as ComputableGroup>::Element;

/// `t: H → G` with a `G`-action `α` on `H`.
pub trait CrossedModule: Sync {
    type Base: ComputableGroup;
    type Top: ComputableGroup;

    fn base(&self) -> &Self::Base;
    fn top(&self) -> &Self::Top;
    /// The structure map `t`.
    fn boundary(&self, h: &Elem<Self::Top>) -> Elem<Self::Base>;
    /// The action `α(g, h)`.
    fn act(&self, g: &Elem<Self::Base>, h: &Elem<Self::Top>) -> Elem<Self::Top>;
}

/// Objects, morphisms, source, target and identity morphisms of a strict
/// 2-group. Composition is determined by the group structure.
pub trait TwoGroup: Sync {
    type Objects: ComputableGroup;
    type Morphisms: ComputableGroup;

    fn objects(&self) -> &Self::Objects;
    fn morphisms(&self) -> &Self::Morphisms;
    fn source(&self, x: &Elem<Self::Morphisms>) -> Elem<Self::Objects>;
    fn target(&self, x: &Elem<Self::Morphisms>) -> Elem<Self::Objects>;
    fn unit(&self, g: &Elem<Self::Objects>) -> Elem<Self::Morphisms>;
}

/// A pair of maps between crossed modules, on the acting groups and on the
/// top groups.
pub trait StrictIntertwiner<S: CrossedModule, T: CrossedModule>: Sync {
    fn on_base(&self, g: &Elem<S::Base>) -> Elem<T::Base>;
    fn on_top(&self, h: &Elem<S::Top>) -> Elem<T::Top>;
}

/// Intertwiner built from two closures.
pub struct FnIntertwiner<F0, F1> {
    pub on_base: F0,
    pub on_top: F1,
}

impl<S, T, F0, F1> StrictIntertwiner<S, T> for FnIntertwiner<F0, F1>
where
    S: CrossedModule,
    T: CrossedModule,
    F0: Fn(&Elem<S::Base>) -> Elem<T::Base> + Sync,
    F1: Fn(&Elem<S::Top>) -> Elem<T::Top> + Sync,
{
    fn on_base(&self, g: &Elem<S::Base>) -> Elem<T::Base> {
        (self.on_base)(g)
    }
    fn on_top(&self, h: &Elem<S::Top>) -> Elem<T::Top> {
        (self.on_top)(h)
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TwoGroupError {
    #[error("morphisms are not composable: source and target differ by {0:e}")]
    NotComposable(f64),
}

/// Largest residual per axiom over the evaluated tuples.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AxiomReport {
    pub residuals: Vec<(String, f64)>,
    pub samples: usize,
    pub exhaustive: bool,
}

impl AxiomReport {
    /// NaN counts as infinitely bad.
    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().map(|(_, r)| sanitize(*r)).fold(0.0, f64::max)
    }

    pub fn residual(&self, name: &str) -> Option<f64> {
        self.residuals.iter().find(|(n, _)| n == name).map(|(_, r)| *r)
    }

    pub fn passed(&self, tol: f64) -> bool {
        self.max_residual() <= tol
    }

    /// Entries of `other` are appended, each name prefixed by `prefix`.
    pub fn merge(mut self, prefix: &str, other: AxiomReport) -> Self {
        self.residuals.extend(other.residuals.into_iter().map(|(n, r)| (format!("{prefix}{n}"), r)));
        self.samples = self.samples.max(other.samples);
        self.exhaustive &= other.exhaustive;
        self
    }
}

fn sanitize(r: f64) -> f64 {
    if r.is_nan() {
        f64::INFINITY
    } else {
        r
    }
}

/// Runs `eval` on `samples` independent streams and keeps the worst value of
/// each of the `names.len()` residuals.
pub fn sampled_report<F>(names: &[&str], samples: usize, seed: u64, eval: F) -> AxiomReport
where
    F: Fn(&mut SampleRng) -> Vec<f64> + Sync,
{
    let rows: Vec<Vec<f64>> = (0..samples as u64)
        .into_par_iter()
        .map(|i| eval(&mut sample_rng(seed, i)))
        .collect();
    let mut worst = vec![0.0f64; names.len()];
    for row in rows {
        debug_assert_eq!(row.len(), names.len());
        for (w, r) in worst.iter_mut().zip(row) {
            *w = w.max(sanitize(r));
        }
    }
    AxiomReport {
        residuals: names.iter().map(|n| n.to_string()).zip(worst).collect(),
        samples,
        exhaustive: false,
    }
}

fn small_elements<G: ComputableGroup>(group: &G) -> Option<Vec<G::Element>> {
    group.elements().filter(|e| e.len() <= EXHAUSTIVE_LIMIT)
}

fn worst(values: impl Iterator<Item = f64>) -> f64 {
    values.map(sanitize).fold(0.0, f64::max)
}

const GROUP_AXIOMS: [&str; 3] = ["associativity", "identity", "inverse"];

fn group_residuals<G: ComputableGroup>(group: &G, a: &G::Element, b: &G::Element, c: &G::Element) -> [f64; 3] {
    let e = group.identity();
    let assoc = group.distance(&group.mul(&group.mul(a, b), c), &group.mul(a, &group.mul(b, c)));
    let unit = group.distance(&group.mul(&e, a), a).max(group.distance(&group.mul(a, &e), a));
    let inv = group.distance(&group.mul(a, &group.inv(a)), &e).max(group.distance(&group.mul(&group.inv(a), a), &e));
    [assoc, unit, inv]
}

/// Associativity, identity and inverse laws.
pub fn check_group<G: ComputableGroup>(group: &G, samples: usize, seed: u64) -> AxiomReport {
    if let Some(all) = small_elements(group) {
        let mut res = [0.0f64; 3];
        for a in &all {
            for b in &all {
                for c in &all {
                    let r = group_residuals(group, a, b, c);
                    for k in 0..3 {
                        res[k] = res[k].max(sanitize(r[k]));
                    }
                }
            }
        }
        return AxiomReport {
            residuals: GROUP_AXIOMS.iter().map(|n| n.to_string()).zip(res).collect(),
            samples: all.len().pow(3),
            exhaustive: true,
        };
    }
    sampled_report(&GROUP_AXIOMS, samples, seed, |rng| {
        let (a, b, c) = (group.sample(rng), group.sample(rng), group.sample(rng));
        group_residuals(group, &a, &b, &c).to_vec()
    })
}

const CROSSED_AXIOMS: [&str; 5] = ["boundary_homomorphism", "action_homomorphism", "action_law", "equivariance", "peiffer"];

fn crossed_residuals<C: CrossedModule>(
    cm: &C,
    g: &Elem<C::Base>,
    g2: &Elem<C::Base>,
    h: &Elem<C::Top>,
    k: &Elem<C::Top>,
) -> [f64; 5] {
    let (base, top) = (cm.base(), cm.top());
    let hk = top.mul(h, k);
    let boundary_hom = base.distance(&cm.boundary(&hk), &base.mul(&cm.boundary(h), &cm.boundary(k)));
    let action_hom = top.distance(&cm.act(g, &hk), &top.mul(&cm.act(g, h), &cm.act(g, k)));
    let action_law = top
        .distance(&cm.act(&base.mul(g, g2), h), &cm.act(g, &cm.act(g2, h)))
        .max(top.distance(&cm.act(&base.identity(), h), h));
    let conj = base.mul(&base.mul(g, &cm.boundary(h)), &base.inv(g));
    let equivariance = base.distance(&cm.boundary(&cm.act(g, h)), &conj);
    let peiffer = top.distance(&cm.act(&cm.boundary(h), k), &top.mul(&hk, &top.inv(h)));
    [boundary_hom, action_hom, action_law, equivariance, peiffer]
}

/// Group laws of both groups, homomorphism laws of `t` and `α(g, ·)`, the
/// action law, equivariance `t(α(g,h)) = g t(h) g⁻¹` and the Peiffer identity
/// `α(t(h), k) = h k h⁻¹`.
pub fn check_crossed_module<C: CrossedModule>(cm: &C, samples: usize, seed: u64) -> AxiomReport {
    let base_laws = check_group(cm.base(), samples, seed ^ 0xba5e);
    let top_laws = check_group(cm.top(), samples, seed ^ 0x70b);
    let axioms = match (small_elements(cm.base()), small_elements(cm.top())) {
        (Some(gs), Some(hs)) => {
            let mut res = [0.0f64; 5];
            for g in &gs {
                for g2 in &gs {
                    for h in &hs {
                        for k in &hs {
                            let r = crossed_residuals(cm, g, g2, h, k);
                            for i in 0..5 {
                                res[i] = res[i].max(sanitize(r[i]));
                            }
                        }
                    }
                }
            }
            AxiomReport {
                residuals: CROSSED_AXIOMS.iter().map(|n| n.to_string()).zip(res).collect(),
                samples: gs.len().pow(2) * hs.len().pow(2),
                exhaustive: true,
            }
        }
        _ => sampled_report(&CROSSED_AXIOMS, samples, seed, |rng| {
            let (g, g2) = (cm.base().sample(rng), cm.base().sample(rng));
            let (h, k) = (cm.top().sample(rng), cm.top().sample(rng));
            crossed_residuals(cm, &g, &g2, &h, &k).to_vec()
        }),
    };
    axioms.merge("base.", base_laws).merge("top.", top_laws)
}

const INTERTWINER_AXIOMS: [&str; 4] = ["base_homomorphism", "top_homomorphism", "boundary_compatibility", "action_compatibility"];

fn intertwiner_residuals<S: CrossedModule, T: CrossedModule, R: StrictIntertwiner<S, T>>(
    r: &R,
    src: &S,
    dst: &T,
    g: &Elem<S::Base>,
    g2: &Elem<S::Base>,
    h: &Elem<S::Top>,
    k: &Elem<S::Top>,
) -> [f64; 4] {
    let (db, dt) = (dst.base(), dst.top());
    let base_hom = db.distance(&r.on_base(&src.base().mul(g, g2)), &db.mul(&r.on_base(g), &r.on_base(g2)));
    let top_hom = dt.distance(&r.on_top(&src.top().mul(h, k)), &dt.mul(&r.on_top(h), &r.on_top(k)));
    let boundary = db.distance(&r.on_base(&src.boundary(h)), &dst.boundary(&r.on_top(h)));
    let action = dt.distance(&r.on_top(&src.act(g, h)), &dst.act(&r.on_base(g), &r.on_top(h)));
    [base_hom, top_hom, boundary, action]
}

/// Homomorphism laws of both components plus `R₀(t(h)) = t′(R₁(h))` and
/// `R₁(α(g,h)) = α′(R₀(g), R₁(h))`.
pub fn check_intertwiner<S, T, R>(r: &R, src: &S, dst: &T, samples: usize, seed: u64) -> AxiomReport
where
    S: CrossedModule,
    T: CrossedModule,
    R: StrictIntertwiner<S, T>,
{
    match (small_elements(src.base()), small_elements(src.top())) {
        (Some(gs), Some(hs)) => {
            let mut res = [0.0f64; 4];
            for g in &gs {
                for g2 in &gs {
                    for h in &hs {
                        for k in &hs {
                            let v = intertwiner_residuals(r, src, dst, g, g2, h, k);
                            for i in 0..4 {
                                res[i] = res[i].max(sanitize(v[i]));
                            }
                        }
                    }
                }
            }
            AxiomReport {
                residuals: INTERTWINER_AXIOMS.iter().map(|n| n.to_string()).zip(res).collect(),
                samples: gs.len().pow(2) * hs.len().pow(2),
                exhaustive: true,
            }
        }
        _ => sampled_report(&INTERTWINER_AXIOMS, samples, seed, |rng| {
            let (g, g2) = (src.base().sample(rng), src.base().sample(rng));
            let (h, k) = (src.top().sample(rng), src.top().sample(rng));
            intertwiner_residuals(r, src, dst, &g, &g2, &h, &k).to_vec()
        }),
    }
}

/// Projection of a morphism onto the kernel of the source map.
pub fn source_kernel_part<T: TwoGroup>(tg: &T, x: &Elem<T::Morphisms>) -> Elem<T::Morphisms> {
    let m = tg.morphisms();
    m.mul(x, &m.inv(&tg.unit(&tg.source(x))))
}

/// Projection of a morphism onto the kernel of the target map.
pub fn target_kernel_part<T: TwoGroup>(tg: &T, x: &Elem<T::Morphisms>) -> Elem<T::Morphisms> {
    let m = tg.morphisms();
    m.mul(x, &m.inv(&tg.unit(&tg.target(x))))
}

const MINIMAL_AXIOMS: [&str; 6] = [
    "source_homomorphism",
    "target_homomorphism",
    "unit_homomorphism",
    "source_section",
    "target_section",
    "kernels_commute",
];

fn minimal_residuals<T: TwoGroup>(
    tg: &T,
    x: &Elem<T::Morphisms>,
    y: &Elem<T::Morphisms>,
    g: &Elem<T::Objects>,
    g2: &Elem<T::Objects>,
) -> [f64; 6] {
    let (obj, mor) = (tg.objects(), tg.morphisms());
    let xy = mor.mul(x, y);
    let s_hom = obj.distance(&tg.source(&xy), &obj.mul(&tg.source(x), &tg.source(y)));
    let t_hom = obj.distance(&tg.target(&xy), &obj.mul(&tg.target(x), &tg.target(y)));
    let i_hom = mor.distance(&tg.unit(&obj.mul(g, g2)), &mor.mul(&tg.unit(g), &tg.unit(g2)));
    let unit = tg.unit(g);
    let s_sec = obj.distance(&tg.source(&unit), g);
    let t_sec = obj.distance(&tg.target(&unit), g);
    let a = source_kernel_part(tg, x);
    let b = target_kernel_part(tg, y);
    let commute = mor.distance(&mor.mul(&a, &b), &mor.mul(&b, &a));
    [s_hom, t_hom, i_hom, s_sec, t_sec, commute]
}

/// The minimal data of a strict 2-group: `s`, `t`, `i` are homomorphisms,
/// `s∘i = t∘i = id`, and `ker(s)`, `ker(t)` commute. Kernel elements are
/// produced by the projections `x·i(s(x))⁻¹` and `x·i(t(x))⁻¹`.
pub fn check_minimal_data<T: TwoGroup>(tg: &T, samples: usize, seed: u64) -> AxiomReport {
    let laws = check_group(tg.morphisms(), samples, seed ^ 0x6d6f72);
    let axioms = match (small_elements(tg.morphisms()), small_elements(tg.objects())) {
        (Some(xs), Some(gs)) => {
            let mut res = [0.0f64; 6];
            for (i, x) in xs.iter().enumerate() {
                for (j, y) in xs.iter().enumerate() {
                    let g = &gs[(i + j) % gs.len()];
                    let g2 = &gs[(i * 7 + j * 3) % gs.len()];
                    let v = minimal_residuals(tg, x, y, g, g2);
                    for k in 0..6 {
                        res[k] = res[k].max(sanitize(v[k]));
                    }
                }
            }
            for g in &gs {
                for g2 in &gs {
                    let e = tg.morphisms().identity();
                    let v = minimal_residuals(tg, &e, &e, g, g2);
                    for k in 2..5 {
                        res[k] = res[k].max(sanitize(v[k]));
                    }
                }
            }
            AxiomReport {
                residuals: MINIMAL_AXIOMS.iter().map(|n| n.to_string()).zip(res).collect(),
                samples: xs.len().pow(2) + gs.len().pow(2),
                exhaustive: true,
            }
        }
        _ => sampled_report(&MINIMAL_AXIOMS, samples, seed, |rng| {
            let (x, y) = (tg.morphisms().sample(rng), tg.morphisms().sample(rng));
            let (g, g2) = (tg.objects().sample(rng), tg.objects().sample(rng));
            minimal_residuals(tg, &x, &y, &g, &g2).to_vec()
        }),
    };
    axioms.merge("morphisms.", laws)
}

/// `x ∘ y = x·i(s(x))⁻¹·y`, defined when `s(x) = t(y)`.
pub fn compose<T: TwoGroup>(
    tg: &T,
    x: &Elem<T::Morphisms>,
    y: &Elem<T::Morphisms>,
    tol: f64,
) -> Result<Elem<T::Morphisms>, TwoGroupError> {
    let gap = tg.objects().distance(&tg.source(x), &tg.target(y));
    if !(gap <= tol) {
        return Err(TwoGroupError::NotComposable(gap));
    }
    let m = tg.morphisms();
    Ok(m.mul(&m.mul(x, &m.inv(&tg.unit(&tg.source(x)))), y))
}

/// The same composite written with the target of `y`: `x·i(t(y))⁻¹·y`.
pub fn compose_via_target<T: TwoGroup>(
    tg: &T,
    x: &Elem<T::Morphisms>,
    y: &Elem<T::Morphisms>,
    tol: f64,
) -> Result<Elem<T::Morphisms>, TwoGroupError> {
    let gap = tg.objects().distance(&tg.source(x), &tg.target(y));
    if !(gap <= tol) {
        return Err(TwoGroupError::NotComposable(gap));
    }
    let m = tg.morphisms();
    Ok(m.mul(&m.mul(x, &m.inv(&tg.unit(&tg.target(y)))), y))
}

/// Inverse under composition: `i(s(x))·x⁻¹·i(t(x))`.
pub fn invert_morphism<T: TwoGroup>(tg: &T, x: &Elem<T::Morphisms>) -> Elem<T::Morphisms> {
    let m = tg.morphisms();
    m.mul(&m.mul(&tg.unit(&tg.source(x)), &m.inv(x)), &tg.unit(&tg.target(x)))
}

/// Distance of `t(h)` from the identity; zero exactly on `π₁ = ker(t)`.
pub fn pi1_residual<C: CrossedModule>(cm: &C, h: &Elem<C::Top>) -> f64 {
    cm.base().distance(&cm.boundary(h), &cm.base().identity())
}

/// `max_g d(α(g,h), h)` over the given acting elements: zero when `h` is
/// fixed by the action, as every element of `π₁` must be.
pub fn centrality_residual<C: CrossedModule>(cm: &C, h: &Elem<C::Top>, acting: &[Elem<C::Base>]) -> f64 {
    worst(acting.iter().map(|g| cm.top().distance(&cm.act(g, h), h)))
}

/// Checks a map `G → Q` that is meant to identify `π₀ = G/t(H)` with `Q`: it
/// must be a homomorphism and kill `t(H)`.
pub fn check_pi0_section<C, Q, F>(cm: &C, classes: &Q, section: F, samples: usize, seed: u64) -> AxiomReport
where
    C: CrossedModule,
    Q: ComputableGroup,
    F: Fn(&Elem<C::Base>) -> Q::Element + Sync,
{
    sampled_report(&["section_homomorphism", "kills_boundary"], samples, seed, |rng| {
        let (g, g2, h) = (cm.base().sample(rng), cm.base().sample(rng), cm.top().sample(rng));
        let hom = classes.distance(&section(&cm.base().mul(&g, &g2)), &classes.mul(&section(&g), &section(&g2)));
        let kills = classes.distance(&section(&cm.boundary(&h)), &classes.identity());
        vec![hom, kills]
    })
}

#[cfg(test)]
mod tests;
