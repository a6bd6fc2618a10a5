//! Finite groups given by multiplication tables, and crossed modules between
//! them.

use super::{ComputableGroup, CrossedModule, StrictIntertwiner};
use crate::sampling::SampleRng;
use rand::Rng;
use std::collections::{BTreeSet, HashMap};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("table is not square of size order×order with entries below the order")]
    Shape,
    #[error("multiplication is not associative at ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("element {0} has no inverse")]
    NoInverse(usize),
    #[error("subset is not a normal subgroup")]
    NotNormal,
    #[error("map is not a homomorphism")]
    NotHomomorphism,
}

/// A finite group on `0..order` with `0` as the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableGroup {
    name: String,
    order: usize,
    table: Vec<usize>,
    inverses: Vec<usize>,
}

impl TableGroup {
    /// Validates closure, associativity, identity and inverses. The identity
    /// is relabelled to `0` if needed.
    pub fn from_table(name: impl Into<String>, order: usize, table: Vec<usize>) -> Result<Self, TableError> {
        if order == 0 || table.len() != order * order || table.iter().any(|&x| x >= order) {
            return Err(TableError::Shape);
        }
        let at = |a: usize, b: usize| table[a * order + b];
        for a in 0..order {
            for b in 0..order {
                for c in 0..order {
                    if at(at(a, b), c) != at(a, at(b, c)) {
                        return Err(TableError::NotAssociative(a, b, c));
                    }
                }
            }
        }
        let e = (0..order)
            .find(|&e| (0..order).all(|a| at(e, a) == a && at(a, e) == a))
            .ok_or(TableError::NoIdentity)?;
        // Swap labels 0 and e so that the identity is 0.
        let relabel = |x: usize| if x == e { 0 } else if x == 0 { e } else { x };
        let mut relabelled = vec![0; order * order];
        for a in 0..order {
            for b in 0..order {
                relabelled[relabel(a) * order + relabel(b)] = relabel(at(a, b));
            }
        }
        let mut inverses = vec![0; order];
        for a in 0..order {
            inverses[a] = (0..order)
                .find(|&b| relabelled[a * order + b] == 0)
                .ok_or(TableError::NoInverse(a))?;
        }
        Ok(Self { name: name.into(), order, table: relabelled, inverses })
    }

    fn from_trusted_rule(name: impl Into<String>, order: usize, rule: impl Fn(usize, usize) -> usize) -> Self {
        let table: Vec<usize> = (0..order * order).map(|k| rule(k / order, k % order)).collect();
        let inverses = (0..order).map(|a| (0..order).find(|&b| table[a * order + b] == 0).expect("inverse")).collect();
        Self { name: name.into(), order, table, inverses }
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1, "cyclic group of order 0");
        Self::from_trusted_rule(format!("Z/{n}"), n, |a, b| (a + b) % n)
    }

    /// Symmetries of the regular `n`-gon: element `k + n·f` is the rotation
    /// by `k` steps followed by `f` reflections.
    pub fn dihedral(n: usize) -> Self {
        assert!(n >= 1, "dihedral group needs n ≥ 1");
        Self::from_trusted_rule(format!("D{n}"), 2 * n, move |a, b| {
            let (k1, f1) = (a % n, a / n);
            let (k2, f2) = (b % n, b / n);
            let k = if f1 == 0 { k1 + k2 } else { k1 + n - k2 };
            (k % n) + n * (f1 ^ f2)
        })
    }

    /// The group generated by permutations of `0..points`, composed as
    /// functions: `(στ)(x) = σ(τ(x))`.
    pub fn from_permutations(name: impl Into<String>, points: usize, generators: &[Vec<usize>]) -> Self {
        let id: Vec<usize> = (0..points).collect();
        let mut elements = vec![id.clone()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(id, 0)]);
        let mut frontier = 0;
        while frontier < elements.len() {
            let current = elements[frontier].clone();
            frontier += 1;
            for g in generators {
                let next: Vec<usize> = (0..points).map(|x| g[current[x]]).collect();
                if !index.contains_key(&next) {
                    index.insert(next.clone(), elements.len());
                    elements.push(next);
                }
            }
        }
        let order = elements.len();
        Self::from_trusted_rule(name, order, |a, b| {
            let prod: Vec<usize> = (0..points).map(|x| elements[a][elements[b][x]]).collect();
            index[&prod]
        })
    }

    /// All permutations of `k` points.
    pub fn symmetric(k: usize) -> Self {
        assert!((1..=5).contains(&k), "symmetric group too large for a table");
        let mut gens = Vec::new();
        if k >= 2 {
            let mut swap: Vec<usize> = (0..k).collect();
            swap.swap(0, 1);
            let cycle: Vec<usize> = (0..k).map(|x| (x + 1) % k).collect();
            gens.push(swap);
            gens.push(cycle);
        }
        Self::from_permutations(format!("S{k}"), k, &gens)
    }

    /// Even permutations of `k` points, generated by 3-cycles.
    pub fn alternating(k: usize) -> Self {
        assert!((1..=5).contains(&k), "alternating group too large for a table");
        let gens: Vec<Vec<usize>> = (2..k)
            .map(|c| {
                let mut p: Vec<usize> = (0..k).collect();
                p[0] = 1;
                p[1] = c;
                p[c] = 0;
                p
            })
            .collect();
        Self::from_permutations(format!("A{k}"), k, &gens)
    }

    pub fn direct_product(a: &TableGroup, b: &TableGroup) -> Self {
        let m = b.order;
        Self::from_trusted_rule(format!("{}x{}", a.name, b.name), a.order * m, |x, y| {
            a.op(x / m, y / m) * m + b.op(x % m, y % m)
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn op(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }

    /// `g h g⁻¹`.
    pub fn conjugate(&self, g: usize, h: usize) -> usize {
        self.op(self.op(g, h), self.inverse(g))
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..self.order).all(|b| self.op(a, b) == self.op(b, a)))
    }

    /// Smallest subgroup containing `gens`, sorted.
    pub fn generated_subgroup(&self, gens: &[usize]) -> Vec<usize> {
        let mut set = BTreeSet::from([0]);
        let mut stack = vec![0];
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.op(x, g);
                if set.insert(y) {
                    stack.push(y);
                }
            }
        }
        set.into_iter().collect()
    }

    /// Smallest normal subgroup containing `gens`.
    pub fn normal_closure(&self, gens: &[usize]) -> Vec<usize> {
        let conjugates: Vec<usize> = gens.iter().flat_map(|&h| (0..self.order).map(move |g| (g, h))).map(|(g, h)| self.conjugate(g, h)).collect();
        self.generated_subgroup(&conjugates)
    }

    pub fn is_normal_subgroup(&self, subset: &[usize]) -> bool {
        let set: BTreeSet<usize> = subset.iter().copied().collect();
        set.contains(&0)
            && set.iter().all(|&a| set.iter().all(|&b| set.contains(&self.op(a, b))))
            && (0..self.order).all(|g| set.iter().all(|&h| set.contains(&self.conjugate(g, h))))
    }

    /// The subgroup on `elements` (which must be closed), relabelled so that
    /// `elements[k]` becomes `k`.
    fn restrict(&self, name: impl Into<String>, elements: &[usize]) -> Self {
        let pos: HashMap<usize, usize> = elements.iter().enumerate().map(|(k, &x)| (x, k)).collect();
        Self::from_trusted_rule(name, elements.len(), |a, b| pos[&self.op(elements[a], elements[b])])
    }
}

impl ComputableGroup for TableGroup {
    type Element = usize;

    fn identity(&self) -> usize {
        0
    }
    fn mul(&self, a: &usize, b: &usize) -> usize {
        self.op(*a, *b)
    }
    fn inv(&self, a: &usize) -> usize {
        self.inverse(*a)
    }
    fn distance(&self, a: &usize, b: &usize) -> f64 {
        if a == b {
            0.0
        } else {
            1.0
        }
    }
    fn sample(&self, rng: &mut SampleRng) -> usize {
        rng.random_range(0..self.order)
    }
    fn elements(&self) -> Option<Vec<usize>> {
        Some((0..self.order).collect())
    }
}

/// A crossed module of table groups, with `t` and `α` stored as lookup
/// tables (`action[g·|H| + h] = α(g, h)`).
#[derive(Debug, Clone)]
pub struct FiniteCrossedModule {
    name: String,
    base: TableGroup,
    top: TableGroup,
    boundary: Vec<usize>,
    action: Vec<usize>,
}

impl FiniteCrossedModule {
    /// Only shapes are validated; the axioms are the business of
    /// [`super::check_crossed_module`].
    pub fn new(
        name: impl Into<String>,
        base: TableGroup,
        top: TableGroup,
        boundary: Vec<usize>,
        action: Vec<usize>,
    ) -> Result<Self, TableError> {
        if boundary.len() != top.order()
            || boundary.iter().any(|&g| g >= base.order())
            || action.len() != base.order() * top.order()
            || action.iter().any(|&h| h >= top.order())
        {
            return Err(TableError::Shape);
        }
        Ok(Self { name: name.into(), base, top, boundary, action })
    }

    fn with_rules(
        name: impl Into<String>,
        base: TableGroup,
        top: TableGroup,
        boundary: impl Fn(usize) -> usize,
        action: impl Fn(usize, usize) -> usize,
    ) -> Self {
        let b = (0..top.order()).map(boundary).collect();
        let a = (0..base.order() * top.order()).map(|k| action(k / top.order(), k % top.order())).collect();
        Self { name: name.into(), base, top, boundary: b, action: a }
    }

    /// `A → {e}`: a crossed module exactly when `A` is abelian.
    pub fn delooping(a: TableGroup) -> Self {
        let name = format!("B({})", a.name());
        Self::with_rules(name, TableGroup::trivial(), a, |_| 0, |_, h| h)
    }

    /// `{e} → G`.
    pub fn discrete(g: TableGroup) -> Self {
        let name = format!("dis({})", g.name());
        Self::with_rules(name, g, TableGroup::trivial(), |_| 0, |_, h| h)
    }

    /// `G → G` by the identity, acting by conjugation.
    pub fn conjugation(g: TableGroup) -> Self {
        let name = format!("inn({})", g.name());
        let acting = g.clone();
        Self::with_rules(name, g.clone(), acting, |h| h, move |x, h| g.conjugate(x, h))
    }

    /// Inclusion of a normal subgroup, acting by conjugation.
    pub fn normal_inclusion(g: TableGroup, subgroup: &[usize]) -> Result<Self, TableError> {
        if !g.is_normal_subgroup(subgroup) {
            return Err(TableError::NotNormal);
        }
        let mut elements: Vec<usize> = subgroup.to_vec();
        elements.sort_unstable();
        elements.dedup();
        let top = g.restrict(format!("N<{}", g.name()), &elements);
        let pos: HashMap<usize, usize> = elements.iter().enumerate().map(|(k, &x)| (x, k)).collect();
        let name = format!("{}->{}", top.name(), g.name());
        let base = g.clone();
        Ok(Self::with_rules(name, base, top, |h| elements[h], |x, h| pos[&g.conjugate(x, elements[h])]))
    }

    /// `A₃ → S₃`.
    pub fn alternating_in_symmetric() -> Self {
        let s3 = TableGroup::symmetric(3);
        let a3 = s3.normal_closure(&[cycle_of_order_three(&s3)]);
        Self::normal_inclusion(s3, &a3).expect("A3 is normal in S3")
    }

    /// `G` acting on the cyclic group `Z/m` through `ρ: G → (Z/m)^×`, with
    /// trivial boundary. `unit_of(g)` gives `ρ(g)`.
    pub fn cyclic_module(g: TableGroup, m: usize, unit_of: impl Fn(usize) -> usize) -> Result<Self, TableError> {
        let units: Vec<usize> = (0..g.order()).map(|x| unit_of(x) % m).collect();
        for a in 0..g.order() {
            for b in 0..g.order() {
                if units[g.op(a, b)] != (units[a] * units[b]) % m {
                    return Err(TableError::NotHomomorphism);
                }
            }
        }
        let name = format!("Z/{m}<{}", g.name());
        Ok(Self::with_rules(name, g, TableGroup::cyclic(m), |_| 0, |x, h| (units[x] * h) % m))
    }

    /// Componentwise product of two crossed modules.
    pub fn product(a: &FiniteCrossedModule, b: &FiniteCrossedModule) -> Self {
        let base = TableGroup::direct_product(&a.base, &b.base);
        let top = TableGroup::direct_product(&a.top, &b.top);
        let (bg, bh) = (b.base.order(), b.top.order());
        let name = format!("({})x({})", a.name, b.name);
        Self::with_rules(
            name,
            base,
            top,
            |h| a.boundary[h / bh] * bg + b.boundary[h % bh],
            |g, h| a.act_index(g / bg, h / bh) * bh + b.act_index(g % bg, h % bh),
        )
    }

    /// A random valid crossed module whose groups have at most 64 elements.
    pub fn random(rng: &mut SampleRng) -> Self {
        let pool = [
            TableGroup::cyclic(rng.random_range(1..=12)),
            TableGroup::dihedral(rng.random_range(2..=8)),
            TableGroup::symmetric(3),
            TableGroup::symmetric(4),
            TableGroup::alternating(4),
            TableGroup::direct_product(&TableGroup::cyclic(2), &TableGroup::symmetric(3)),
        ];
        let g = pool[rng.random_range(0..pool.len())].clone();
        let pick = |rng: &mut SampleRng, g: &TableGroup| -> Self {
            match rng.random_range(0..4) {
                0 => {
                    let x = rng.random_range(0..g.order());
                    let n = g.normal_closure(&[x]);
                    Self::normal_inclusion(g.clone(), &n).expect("normal closure is normal")
                }
                1 => Self::conjugation(g.clone()),
                2 => {
                    let m = rng.random_range(3..=9);
                    let sign = |x: usize| if x < g.order() / 2 || g.order() % 2 == 1 { 1 } else { m - 1 };
                    // Dihedral groups map onto {±1} by reflection count; other
                    // groups act trivially.
                    if g.name().starts_with('D') {
                        Self::cyclic_module(g.clone(), m, sign).expect("reflection count is a character")
                    } else {
                        Self::cyclic_module(g.clone(), m, |_| 1).expect("trivial character")
                    }
                }
                _ => {
                    let a = TableGroup::cyclic(rng.random_range(1..=6));
                    Self::delooping(a)
                }
            }
        };
        let first = pick(rng, &g);
        if rng.random_bool(0.3) {
            let second = pick(rng, &TableGroup::cyclic(2));
            if first.base.order() * second.base.order() <= 64 && first.top.order() * second.top.order() <= 64 {
                return Self::product(&first, &second);
            }
        }
        first
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn base_group(&self) -> &TableGroup {
        &self.base
    }

    pub fn top_group(&self) -> &TableGroup {
        &self.top
    }

    pub fn boundary_index(&self, h: usize) -> usize {
        self.boundary[h]
    }

    pub fn act_index(&self, g: usize, h: usize) -> usize {
        self.action[g * self.top.order() + h]
    }

    /// `ker(t)`, sorted.
    pub fn pi1(&self) -> Vec<usize> {
        (0..self.top.order()).filter(|&h| self.boundary[h] == 0).collect()
    }

    /// Cosets of `t(H)` in `G`, each sorted, ordered by smallest element.
    pub fn pi0(&self) -> Vec<Vec<usize>> {
        let image: BTreeSet<usize> = self.boundary.iter().copied().collect();
        let mut seen = vec![false; self.base.order()];
        let mut classes = Vec::new();
        for g in 0..self.base.order() {
            if seen[g] {
                continue;
            }
            let mut class: Vec<usize> = image.iter().map(|&t| self.base.op(g, t)).collect();
            class.sort_unstable();
            for &x in &class {
                seen[x] = true;
            }
            classes.push(class);
        }
        classes
    }

    /// Whether `G` fixes every element of `π₁`.
    pub fn pi1_is_fixed(&self) -> bool {
        self.pi1().iter().all(|&h| (0..self.base.order()).all(|g| self.act_index(g, h) == h))
    }
}

fn cycle_of_order_three(g: &TableGroup) -> usize {
    (1..g.order())
        .find(|&x| g.op(x, g.op(x, x)) == 0 && g.op(x, x) != 0)
        .expect("group has an element of order three")
}

impl CrossedModule for FiniteCrossedModule {
    type Base = TableGroup;
    type Top = TableGroup;

    fn base(&self) -> &TableGroup {
        &self.base
    }
    fn top(&self) -> &TableGroup {
        &self.top
    }
    fn boundary(&self, h: &usize) -> usize {
        self.boundary[*h]
    }
    fn act(&self, g: &usize, h: &usize) -> usize {
        self.act_index(*g, *h)
    }
}

/// An intertwiner of finite crossed modules given by lookup tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteIntertwiner {
    pub on_base: Vec<usize>,
    pub on_top: Vec<usize>,
}

impl FiniteIntertwiner {
    pub fn identity(cm: &FiniteCrossedModule) -> Self {
        Self { on_base: (0..cm.base.order()).collect(), on_top: (0..cm.top.order()).collect() }
    }
}

impl StrictIntertwiner<FiniteCrossedModule, FiniteCrossedModule> for FiniteIntertwiner {
    fn on_base(&self, g: &usize) -> usize {
        self.on_base[*g]
    }
    fn on_top(&self, h: &usize) -> usize {
        self.on_top[*h]
    }
}
