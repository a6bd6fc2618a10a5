//! The equivalence between crossed modules and strict 2-groups.

use super::{sampled_report, AxiomReport, ComputableGroup, CrossedModule, Elem, TwoGroup};
use crate::sampling::SampleRng;

/// `H ⋊ G` with `(h, g)(h′, g′) = (h·α(g, h′), g g′)`.
pub struct Semidirect<C> {
    cm: C,
}

impl<C: CrossedModule> Semidirect<C> {
    pub fn crossed_module(&self) -> &C {
        &self.cm
    }
}

impl<C: CrossedModule> ComputableGroup for Semidirect<C> {
    type Element = (Elem<C::Top>, Elem<C::Base>);

    fn identity(&self) -> Self::Element {
        (self.cm.top().identity(), self.cm.base().identity())
    }

    fn mul(&self, a: &Self::Element, b: &Self::Element) -> Self::Element {
        let top = self.cm.top();
        (top.mul(&a.0, &self.cm.act(&a.1, &b.0)), self.cm.base().mul(&a.1, &b.1))
    }

    /// `(h, g)⁻¹ = (α(g⁻¹, h⁻¹), g⁻¹)`.
    fn inv(&self, a: &Self::Element) -> Self::Element {
        let g_inv = self.cm.base().inv(&a.1);
        (self.cm.act(&g_inv, &self.cm.top().inv(&a.0)), g_inv)
    }

    fn distance(&self, a: &Self::Element, b: &Self::Element) -> f64 {
        self.cm.top().distance(&a.0, &b.0).max(self.cm.base().distance(&a.1, &b.1))
    }

    fn sample(&self, rng: &mut SampleRng) -> Self::Element {
        let h = self.cm.top().sample(rng);
        (h, self.cm.base().sample(rng))
    }

    fn elements(&self) -> Option<Vec<Self::Element>> {
        let hs = self.cm.top().elements()?;
        let gs = self.cm.base().elements()?;
        Some(hs.iter().flat_map(|h| gs.iter().map(move |g| (h.clone(), g.clone()))).collect())
    }
}

/// The 2-group of a crossed module: objects `G`, morphisms `H ⋊ G`,
/// `s(h, g) = g`, `t(h, g) = t(h)·g`, `i(g) = (1, g)`.
pub struct SemidirectTwoGroup<C> {
    morphisms: Semidirect<C>,
}

impl<C: CrossedModule> SemidirectTwoGroup<C> {
    pub fn crossed_module(&self) -> &C {
        &self.morphisms.cm
    }
}

pub fn functor_g<C: CrossedModule>(cm: C) -> SemidirectTwoGroup<C> {
    SemidirectTwoGroup { morphisms: Semidirect { cm } }
}

impl<C: CrossedModule> TwoGroup for SemidirectTwoGroup<C> {
    type Objects = C::Base;
    type Morphisms = Semidirect<C>;

    fn objects(&self) -> &C::Base {
        self.morphisms.cm.base()
    }
    fn morphisms(&self) -> &Semidirect<C> {
        &self.morphisms
    }
    fn source(&self, x: &(Elem<C::Top>, Elem<C::Base>)) -> Elem<C::Base> {
        x.1.clone()
    }
    fn target(&self, x: &(Elem<C::Top>, Elem<C::Base>)) -> Elem<C::Base> {
        let cm = &self.morphisms.cm;
        cm.base().mul(&cm.boundary(&x.0), &x.1)
    }
    fn unit(&self, g: &Elem<C::Base>) -> (Elem<C::Top>, Elem<C::Base>) {
        (self.morphisms.cm.top().identity(), g.clone())
    }
}

/// `ker(s)` as a group: the morphism group restricted to elements with
/// trivial source. Samples are projected with `x ↦ x·i(s(x))⁻¹`.
pub struct SourceKernel<T> {
    tg: T,
}

impl<T: TwoGroup> SourceKernel<T> {
    pub fn two_group(&self) -> &T {
        &self.tg
    }

    /// Distance of `s(x)` from the identity object.
    pub fn membership_residual(&self, x: &Elem<T::Morphisms>) -> f64 {
        self.tg.objects().distance(&self.tg.source(x), &self.tg.objects().identity())
    }
}

impl<T: TwoGroup> ComputableGroup for SourceKernel<T> {
    type Element = Elem<T::Morphisms>;

    fn identity(&self) -> Self::Element {
        self.tg.morphisms().identity()
    }
    fn mul(&self, a: &Self::Element, b: &Self::Element) -> Self::Element {
        self.tg.morphisms().mul(a, b)
    }
    fn inv(&self, a: &Self::Element) -> Self::Element {
        self.tg.morphisms().inv(a)
    }
    fn distance(&self, a: &Self::Element, b: &Self::Element) -> f64 {
        self.tg.morphisms().distance(a, b)
    }
    fn sample(&self, rng: &mut SampleRng) -> Self::Element {
        let x = self.tg.morphisms().sample(rng);
        super::source_kernel_part(&self.tg, &x)
    }
    fn elements(&self) -> Option<Vec<Self::Element>> {
        let all = self.tg.morphisms().elements()?;
        Some(all.into_iter().filter(|x| self.membership_residual(x) == 0.0).collect())
    }
}

/// The crossed module of a 2-group: `ker(s) → Γ₀` by the target map, with
/// `α(g, h) = i(g)·h·i(g)⁻¹`.
pub struct KernelCrossedModule<T> {
    kernel: SourceKernel<T>,
}

impl<T: TwoGroup> KernelCrossedModule<T> {
    pub fn two_group(&self) -> &T {
        &self.kernel.tg
    }
}

pub fn functor_x<T: TwoGroup>(tg: T) -> KernelCrossedModule<T> {
    KernelCrossedModule { kernel: SourceKernel { tg } }
}

impl<T: TwoGroup> CrossedModule for KernelCrossedModule<T> {
    type Base = T::Objects;
    type Top = SourceKernel<T>;

    fn base(&self) -> &T::Objects {
        self.kernel.tg.objects()
    }
    fn top(&self) -> &SourceKernel<T> {
        &self.kernel
    }
    fn boundary(&self, h: &Elem<T::Morphisms>) -> Elem<T::Objects> {
        self.kernel.tg.target(h)
    }
    fn act(&self, g: &Elem<T::Objects>, h: &Elem<T::Morphisms>) -> Elem<T::Morphisms> {
        let tg = &self.kernel.tg;
        let m = tg.morphisms();
        let unit = tg.unit(g);
        m.mul(&m.mul(&unit, h), &m.inv(&unit))
    }
}

/// Compares `X(G(cm))` with `cm` through `h ↦ (h, 1)`: kernel membership of
/// the image, and agreement of `t` and `α`.
pub fn round_trip_residual<C: CrossedModule>(cm: &C, samples: usize, seed: u64) -> AxiomReport {
    let back = functor_x(functor_g(cm));
    let names = ["kernel_membership", "boundary_agreement", "action_agreement"];
    let compare = |g: &Elem<C::Base>, h: &Elem<C::Top>| {
        let (base, top) = (cm.base(), cm.top());
        let embedded = (h.clone(), base.identity());
        let acted = back.act(g, &embedded);
        vec![
            back.top().membership_residual(&embedded),
            base.distance(&back.boundary(&embedded), &cm.boundary(h)),
            top.distance(&acted.0, &cm.act(g, h)).max(base.distance(&acted.1, &base.identity())),
        ]
    };
    let (Some(gs), Some(hs)) = (super::small_elements(cm.base()), super::small_elements(cm.top())) else {
        return sampled_report(&names, samples, seed, |rng| {
            let (g, h) = (cm.base().sample(rng), cm.top().sample(rng));
            compare(&g, &h)
        });
    };
    let mut res = [0.0f64; 3];
    for g in &gs {
        for h in &hs {
            for (r, v) in res.iter_mut().zip(compare(g, h)) {
                *r = r.max(v);
            }
        }
    }
    AxiomReport {
        residuals: names.iter().map(|n| n.to_string()).zip(res).collect(),
        samples: gs.len() * hs.len(),
        exhaustive: true,
    }
}

impl<C: CrossedModule> CrossedModule for &C {
    type Base = C::Base;
    type Top = C::Top;

    fn base(&self) -> &C::Base {
        (**self).base()
    }
    fn top(&self) -> &C::Top {
        (**self).top()
    }
    fn boundary(&self, h: &Elem<C::Top>) -> Elem<C::Base> {
        (**self).boundary(h)
    }
    fn act(&self, g: &Elem<C::Base>, h: &Elem<C::Top>) -> Elem<C::Top> {
        (**self).act(g, h)
    }
}

impl<T: TwoGroup> TwoGroup for &T {
    type Objects = T::Objects;
    type Morphisms = T::Morphisms;

    fn objects(&self) -> &T::Objects {
        (**self).objects()
    }
    fn morphisms(&self) -> &T::Morphisms {
        (**self).morphisms()
    }
    fn source(&self, x: &Elem<T::Morphisms>) -> Elem<T::Objects> {
        (**self).source(x)
    }
    fn target(&self, x: &Elem<T::Morphisms>) -> Elem<T::Objects> {
        (**self).target(x)
    }
    fn unit(&self, g: &Elem<T::Objects>) -> Elem<T::Morphisms> {
        (**self).unit(g)
    }
}
