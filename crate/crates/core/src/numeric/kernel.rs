//! Null spaces and intersections of kernels of linear maps.

use super::{
    c, hermitian_eigen, identity, right_svd, unvectorize, vectorize, ComplexMatrix, ComplexVector, NumericError, Subspace, TolerancePolicy,
    ZERO,
};
#[cfg(test)]
use super::ONE;

/// A linear map between coordinate spaces.
pub trait LinearMap: Sync {
    fn dim_in(&self) -> usize;
    fn dim_out(&self) -> usize;
    fn apply(&self, x: &ComplexVector) -> ComplexVector;

    /// Apply to every column of `basis`.
    fn apply_columns(&self, basis: &ComplexMatrix) -> ComplexMatrix {
        let cols: Vec<ComplexVector> = basis.column_iter().map(|col| self.apply(&col.into_owned())).collect();
        if cols.is_empty() {
            return ComplexMatrix::zeros(self.dim_out(), 0);
        }
        ComplexMatrix::from_columns(&cols)
    }

    /// Structured form used by the spectral fast path.
    fn as_sylvester(&self) -> Option<&SylvesterMap> {
        None
    }

    fn to_matrix(&self) -> ComplexMatrix {
        self.apply_columns(&identity(self.dim_in()))
    }
}

/// An explicit matrix.
#[derive(Debug, Clone)]
pub struct DenseMap(pub ComplexMatrix);

impl LinearMap for DenseMap {
    fn dim_in(&self) -> usize {
        self.0.ncols()
    }
    fn dim_out(&self) -> usize {
        self.0.nrows()
    }
    fn apply(&self, x: &ComplexVector) -> ComplexVector {
        &self.0 * x
    }
    fn apply_columns(&self, basis: &ComplexMatrix) -> ComplexMatrix {
        &self.0 * basis
    }
    fn to_matrix(&self) -> ComplexMatrix {
        self.0.clone()
    }
}

/// `X ↦ L·X − X·R` on N×N matrices, acting on column-major vectorisations.
#[derive(Debug, Clone)]
pub struct SylvesterMap {
    left: ComplexMatrix,
    right: ComplexMatrix,
    hermitian: bool,
}

impl SylvesterMap {
    pub fn new(left: ComplexMatrix, right: ComplexMatrix) -> Self {
        assert!(left.is_square() && right.is_square() && left.nrows() == right.nrows());
        let is_herm = |m: &ComplexMatrix| (m - m.adjoint()).norm() <= 1e-12 * m.norm().max(1.0);
        let hermitian = is_herm(&left) && is_herm(&right);
        Self { left, right, hermitian }
    }

    /// `X ↦ [A, X]`.
    pub fn commutator(a: &ComplexMatrix) -> Self {
        Self::new(a.clone(), a.clone())
    }

    pub fn left(&self) -> &ComplexMatrix {
        &self.left
    }

    pub fn right(&self) -> &ComplexMatrix {
        &self.right
    }

    pub fn size(&self) -> usize {
        self.left.nrows()
    }

    /// Both sides Hermitian, so the kernel is read off eigen-decompositions.
    pub fn is_hermitian(&self) -> bool {
        self.hermitian
    }

    pub fn apply_matrix(&self, x: &ComplexMatrix) -> ComplexMatrix {
        &self.left * x - x * &self.right
    }
}

impl LinearMap for SylvesterMap {
    fn dim_in(&self) -> usize {
        self.size() * self.size()
    }
    fn dim_out(&self) -> usize {
        self.dim_in()
    }
    fn apply(&self, x: &ComplexVector) -> ComplexVector {
        vectorize(&self.apply_matrix(&unvectorize(x, self.size())))
    }
    fn as_sylvester(&self) -> Option<&SylvesterMap> {
        Some(self)
    }
}

/// Orthonormal basis of `ker M`. Singular values at or below
/// `rank_tol·max(1, σ_max)` count as zero.
pub fn null_space(m: &ComplexMatrix, tol: TolerancePolicy) -> Subspace {
    null_space_with_cutoff(m, tol.rank_tol)
}

fn null_space_with_cutoff(m: &ComplexMatrix, cutoff: f64) -> Subspace {
    let (rows, cols) = m.shape();
    if cols == 0 {
        return Subspace::empty(0);
    }
    if rows == 0 {
        return Subspace::full(cols);
    }
    // The thin SVD of a wide matrix does not report the trailing kernel
    // directions, so pad with zero rows.
    let padded;
    let a = if rows < cols {
        padded = m.clone().insert_rows(rows, cols - rows, ZERO);
        &padded
    } else {
        m
    };
    let (singular, v) = right_svd(a);
    let top = singular.first().copied().unwrap_or(0.0);
    let threshold = cutoff * top.max(1.0);
    let kernel: Vec<ComplexVector> = (0..singular.len())
        .filter(|&i| singular[i] <= threshold)
        .map(|i| v.column(i).into_owned())
        .collect();
    if kernel.is_empty() {
        Subspace::empty(cols)
    } else {
        Subspace::from_orthonormal(ComplexMatrix::from_columns(&kernel))
    }
}

/// Spectral kernels larger than this are pre-reduced through Gram matrices.
const GRAM_REDUCTION_THRESHOLD: usize = 128;
/// Eigenvalues of L and R closer than this (relative) are treated as equal.
const CLUSTER_GAP: f64 = 1e-7;
/// Gram eigenvalues kept for the superset, relative to the largest.
const GRAM_KEEP: f64 = 1e-10;
/// Relative singular-value cutoff after a Gram pre-reduction. Working through
/// normal equations halves the available digits, so the polish cannot use
/// `rank_tol` itself.
const GRAM_POLISH: f64 = 1e-8;

/// Kernel of a Hermitian Sylvester map: rank-one matrices `v_p w_q*` for
/// eigenvectors of L and R whose eigenvalues fall in the same cluster.
struct RankOneBasis {
    v: ComplexMatrix,
    w: ComplexMatrix,
    pairs: Vec<(usize, usize)>,
}

impl RankOneBasis {
    fn new(map: &SylvesterMap) -> Self {
        let el = hermitian_eigen(map.left());
        let er = hermitian_eigen(map.right());
        let scale = el
            .values
            .iter()
            .chain(er.values.iter())
            .fold(1.0f64, |acc, x| acc.max(x.abs()));
        let gap = CLUSTER_GAP * scale;
        let mut merged: Vec<(f64, bool, usize)> = el
            .values
            .iter()
            .enumerate()
            .map(|(i, &x)| (x, true, i))
            .chain(er.values.iter().enumerate().map(|(i, &x)| (x, false, i)))
            .collect();
        merged.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut pairs = Vec::new();
        let mut start = 0;
        for end in 1..=merged.len() {
            if end == merged.len() || merged[end].0 - merged[end - 1].0 > gap {
                let cluster = &merged[start..end];
                for &(_, _, p) in cluster.iter().filter(|e| e.1) {
                    for &(_, _, q) in cluster.iter().filter(|e| !e.1) {
                        pairs.push((p, q));
                    }
                }
                start = end;
            }
        }
        pairs.sort_unstable();
        Self { v: el.vectors, w: er.vectors, pairs }
    }

    fn len(&self) -> usize {
        self.pairs.len()
    }

    /// Vectorised basis elements, one per column.
    fn materialize_all(&self) -> ComplexMatrix {
        let n = self.v.nrows();
        let mut out = ComplexMatrix::zeros(n * n, self.len());
        for (col, &(p, q)) in self.pairs.iter().enumerate() {
            let vp = self.v.column(p);
            let wq = self.w.column(q);
            for b in 0..n {
                let wb = wq[b].conj();
                for a in 0..n {
                    out[(b * n + a, col)] = vp[a] * wb;
                }
            }
        }
        out
    }

    /// Vectorised `V·C·W*` for each coefficient column.
    fn materialize(&self, coeffs: &ComplexMatrix) -> ComplexMatrix {
        let n = self.v.nrows();
        let w_adj = self.w.adjoint();
        let cols: Vec<ComplexVector> = coeffs
            .column_iter()
            .map(|col| {
                let mut cm = ComplexMatrix::zeros(n, n);
                for (k, &(p, q)) in self.pairs.iter().enumerate() {
                    cm[(p, q)] = col[k];
                }
                vectorize(&(&self.v * cm * &w_adj))
            })
            .collect();
        if cols.is_empty() {
            ComplexMatrix::zeros(n * n, 0)
        } else {
            ComplexMatrix::from_columns(&cols)
        }
    }

    /// Gram matrix of `X ↦ AX − XB` on this basis:
    /// `⟨A X_pq − X_pq B, A X_rs − X_rs B⟩` in closed form.
    fn gram(&self, map: &SylvesterMap) -> ComplexMatrix {
        let (a, b) = (map.left(), map.right());
        let (v, w) = (&self.v, &self.w);
        let (v_adj, w_adj) = (v.adjoint(), w.adjoint());
        let a_t = &v_adj * a * v;
        let a_adj_t = a_t.adjoint();
        let aa_t = &v_adj * (a.adjoint() * a) * v;
        let b_t = &w_adj * b * w;
        let b_adj_t = b_t.adjoint();
        let bb_t = &w_adj * (b * b.adjoint()) * w;
        let d = self.len();
        let mut g = ComplexMatrix::zeros(d, d);
        for (i, &(p, q)) in self.pairs.iter().enumerate() {
            for (k, &(r, s)) in self.pairs.iter().enumerate() {
                let mut val = -a_adj_t[(p, r)] * b_t[(s, q)] - a_t[(p, r)] * b_adj_t[(s, q)];
                if s == q {
                    val += aa_t[(p, r)];
                }
                if p == r {
                    val += bb_t[(s, q)];
                }
                g[(i, k)] = val;
            }
        }
        g
    }
}

fn check_dims(dim: usize, constraints: &[&dyn LinearMap]) -> Result<(), NumericError> {
    for (i, c) in constraints.iter().enumerate() {
        if c.dim_in() != dim {
            return Err(NumericError::ShapeMismatch(format!(
                "constraint {i} acts on dimension {} but the common space has dimension {dim}",
                c.dim_in()
            )));
        }
    }
    Ok(())
}

/// Restrict every constraint to `basis` at once and keep the joint kernel.
fn stacked_restriction(constraints: &[&dyn LinearMap], basis: &ComplexMatrix, cutoff: f64) -> ComplexMatrix {
    if basis.ncols() == 0 || constraints.is_empty() {
        return basis.clone();
    }
    let images: Vec<ComplexMatrix> = constraints.iter().map(|c| c.apply_columns(basis)).collect();
    let rows: usize = images.iter().map(|m| m.nrows()).sum();
    let mut stacked = ComplexMatrix::zeros(rows, basis.ncols());
    let mut offset = 0;
    for img in &images {
        stacked.rows_mut(offset, img.nrows()).copy_from(img);
        offset += img.nrows();
    }
    let ns = null_space_with_cutoff(&stacked, cutoff);
    if ns.dim() == 0 {
        ComplexMatrix::zeros(basis.nrows(), 0)
    } else {
        basis * ns.basis()
    }
}

/// Intersection of the kernels of `constraints` on a space of dimension `dim`.
///
/// Constraints are applied one at a time to the current kernel basis, so the
/// working dimension only shrinks. If one constraint is a Hermitian Sylvester
/// map, its kernel is computed spectrally and used as the starting basis; such
/// a constraint should be implied by the others (a "probe"), which is how the
/// callers use it.
pub fn joint_kernel(
    dim: usize,
    constraints: &[&dyn LinearMap],
    tol: TolerancePolicy,
) -> Result<Subspace, NumericError> {
    check_dims(dim, constraints)?;
    let probe = constraints
        .iter()
        .position(|c| c.as_sylvester().is_some_and(SylvesterMap::is_hermitian));
    let rest: Vec<&dyn LinearMap> = constraints
        .iter()
        .enumerate()
        .filter(|(i, _)| Some(*i) != probe)
        .map(|(_, c)| *c)
        .collect();

    let mut basis = match probe {
        None => identity(dim),
        Some(i) => {
            let map = constraints[i].as_sylvester().expect("probe is a Sylvester map");
            let rank_one = RankOneBasis::new(map);
            let all_sylvester = rest.iter().all(|c| c.as_sylvester().is_some());
            if rank_one.len() > GRAM_REDUCTION_THRESHOLD && all_sylvester && !rest.is_empty() {
                return Ok(Subspace::from_orthonormal(gram_reduced(&rank_one, constraints, &rest, tol)));
            }
            rank_one.materialize_all()
        }
    };

    for constraint in rest {
        if basis.ncols() == 0 {
            break;
        }
        let image = constraint.apply_columns(&basis);
        let ns = null_space(&image, tol);
        basis = if ns.dim() == 0 { ComplexMatrix::zeros(dim, 0) } else { &basis * ns.basis() };
    }
    Ok(Subspace::from_orthonormal(basis))
}

fn gram_reduced(
    rank_one: &RankOneBasis,
    all: &[&dyn LinearMap],
    rest: &[&dyn LinearMap],
    tol: TolerancePolicy,
) -> ComplexMatrix {
    let d = rank_one.len();
    let mut gram = ComplexMatrix::zeros(d, d);
    for c in rest {
        gram += rank_one.gram(c.as_sylvester().expect("checked by caller"));
    }
    // Symmetrise away rounding before the Hermitian eigen-solve.
    let gram = (&gram + gram.adjoint()) * c(0.5, 0.0);
    let eig = hermitian_eigen(&gram);
    let top = eig.values.iter().cloned().fold(0.0, f64::max);
    let keep: Vec<usize> = (0..d).filter(|&i| eig.values[i] <= GRAM_KEEP * top.max(1.0)).collect();
    if keep.is_empty() {
        return ComplexMatrix::zeros(rank_one.v.nrows().pow(2), 0);
    }
    let coeffs = eig.vectors.select_columns(keep.iter());
    let superset = rank_one.materialize(&coeffs);
    stacked_restriction(all, &superset, tol.rank_tol.max(GRAM_POLISH))
}

/// Single-shot solve: stack every constraint matrix and take one null space.
/// Meant as a cross-check for small problems.
pub fn joint_kernel_stacked(
    dim: usize,
    constraints: &[&dyn LinearMap],
    tol: TolerancePolicy,
) -> Result<Subspace, NumericError> {
    check_dims(dim, constraints)?;
    if constraints.is_empty() {
        return Ok(Subspace::full(dim));
    }
    let basis = stacked_restriction(constraints, &identity(dim), tol.rank_tol);
    Ok(Subspace::from_orthonormal(basis))
}

/// The identity matrix in vectorised form.
#[cfg(test)]
fn vec_identity(n: usize) -> ComplexVector {
    let mut v = ComplexVector::zeros(n * n);
    for i in 0..n {
        v[i * n + i] = ONE;
    }
    v
}

#[cfg(test)]
mod tests {
    use super::super::{distance, subspace_distance};
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> ComplexMatrix {
        ComplexMatrix::from_fn(rows, cols, |_, _| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
    }

    fn random_hermitian(rng: &mut ChaCha8Rng, n: usize) -> ComplexMatrix {
        let a = random_matrix(rng, n, n);
        (&a + a.adjoint()) * c(0.5, 0.0)
    }

    /// Independent oracle: Gaussian elimination with partial pivoting, kernel
    /// dimension = number of free columns.
    fn row_reduction_nullity(m: &ComplexMatrix, eps: f64) -> usize {
        let mut a = m.clone();
        let (rows, cols) = a.shape();
        let mut rank = 0;
        for col in 0..cols {
            let pivot = (rank..rows).max_by(|&i, &j| a[(i, col)].norm().total_cmp(&a[(j, col)].norm()));
            let Some(p) = pivot else { break };
            if a[(p, col)].norm() <= eps {
                continue;
            }
            a.swap_rows(rank, p);
            for r in 0..rows {
                if r != rank {
                    let f = a[(r, col)] / a[(rank, col)];
                    for k in 0..cols {
                        let sub = f * a[(rank, k)];
                        a[(r, k)] -= sub;
                    }
                }
            }
            rank += 1;
        }
        cols - rank
    }

    #[test]
    fn null_space_examples() {
        let tol = TolerancePolicy::default();
        assert_eq!(null_space(&identity(3), tol).dim(), 0);
        let zero = ComplexMatrix::zeros(2, 2);
        let ns = null_space(&zero, tol);
        assert_eq!(ns.dim(), 2);
        assert!(distance(&(ns.basis().adjoint() * ns.basis()), &identity(2)) < 1e-14);

        let d = ComplexMatrix::from_diagonal(&ComplexVector::from_vec(vec![ONE, ZERO, c(2.0, 0.0)]));
        let ns = null_space(&d, tol);
        assert_eq!(ns.dim(), 1);
        assert_eq!(row_reduction_nullity(&d, 1e-12), 1);
        assert!((ns.basis()[(1, 0)].norm() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn wide_matrices_report_their_full_kernel() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let m = random_matrix(&mut rng, 2, 5);
        let ns = null_space(&m, TolerancePolicy::default());
        assert_eq!(ns.dim(), 3);
        assert_eq!(row_reduction_nullity(&m, 1e-12), 3);
        assert!((&m * ns.basis()).norm() < 1e-13);
    }

    #[test]
    fn schur_lemma_on_two_by_two() {
        let tol = TolerancePolicy::default();
        let units: Vec<SylvesterMap> = (0..4)
            .map(|k| {
                let mut e = ComplexMatrix::zeros(2, 2);
                e[(k / 2, k % 2)] = ONE;
                SylvesterMap::commutator(&e)
            })
            .collect();
        let refs: Vec<&dyn LinearMap> = units.iter().map(|u| u as &dyn LinearMap).collect();
        let k = joint_kernel(4, &refs, tol).unwrap();
        assert_eq!(k.dim(), 1);
        let expected = Subspace::from_vectors(&[vec_identity(2)], 4, tol);
        assert!(subspace_distance(&k, &expected).unwrap() < 1e-12);
    }

    #[test]
    fn empty_constraint_list_gives_the_whole_space() {
        let k = joint_kernel(5, &[], TolerancePolicy::default()).unwrap();
        assert_eq!(k.dim(), 5);
    }

    #[test]
    fn mismatched_dimensions_are_rejected() {
        let m = DenseMap(identity(3));
        assert!(joint_kernel(4, &[&m], TolerancePolicy::default()).is_err());
    }

    #[test]
    fn spectral_probe_matches_stacked_solve() {
        // Commutant of the algebra generated by a random Hermitian h ⊗ 1 on
        // C^3 ⊗ C^2: the answer is 1 ⊗ M_2, dimension 4.
        let tol = TolerancePolicy::default();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let h3 = random_hermitian(&mut rng, 3);
        let x3 = random_matrix(&mut rng, 3, 3);
        let embed = |m: &ComplexMatrix| m.kronecker(&identity(2));
        let h = embed(&h3);
        let probe = SylvesterMap::commutator(&(embed(&(&h3 * &h3)) + &h));
        let c1 = SylvesterMap::commutator(&h);
        let c2 = SylvesterMap::commutator(&embed(&x3));
        let fast = joint_kernel(36, &[&probe, &c1, &c2], tol).unwrap();
        let slow = joint_kernel_stacked(36, &[&c1, &c2], tol).unwrap();
        assert_eq!(fast.dim(), 4);
        assert_eq!(slow.dim(), 4);
        assert!(subspace_distance(&fast, &slow).unwrap() < 1e-10);
    }

    #[test]
    fn gram_reduction_matches_plain_restriction() {
        // Commutant of M_2 ⊗ 1 on C^2 ⊗ C^9. The probe's spectral kernel has
        // dimension 2·81 = 162, above the threshold, so the Gram route runs.
        let tol = TolerancePolicy::default();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let h2 = random_hermitian(&mut rng, 2);
        let x2 = random_matrix(&mut rng, 2, 2);
        let embed = |m: &ComplexMatrix| m.kronecker(&identity(9));
        let probe = SylvesterMap::commutator(&embed(&h2));
        let c1 = SylvesterMap::commutator(&embed(&x2));
        let c2 = SylvesterMap::commutator(&embed(&x2.adjoint()));
        let k = joint_kernel(324, &[&probe, &c1, &c2], tol).unwrap();
        assert_eq!(k.dim(), 81);
        for col in k.basis().column_iter() {
            let v = col.into_owned();
            assert!(c1.apply(&v).norm() < 1e-10);
            assert!(probe.apply(&v).norm() < 1e-10);
        }
    }

    #[test]
    fn permutation_invariance() {
        let tol = TolerancePolicy::default();
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let base = random_matrix(&mut rng, 3, 8);
        let m1 = DenseMap(base.clone());
        let m2 = DenseMap(random_matrix(&mut rng, 2, 3) * &base + random_matrix(&mut rng, 2, 8) * c(1e-3, 0.0));
        let m3 = DenseMap(random_matrix(&mut rng, 1, 8));
        let a = joint_kernel(8, &[&m1, &m2, &m3], tol).unwrap();
        let b = joint_kernel(8, &[&m3, &m1, &m2], tol).unwrap();
        let s = joint_kernel_stacked(8, &[&m2, &m3, &m1], tol).unwrap();
        assert_eq!(a.dim(), b.dim());
        assert!(subspace_distance(&a, &b).unwrap() < 1e-10);
        assert!(subspace_distance(&a, &s).unwrap() < 1e-10);
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(48))]
            #[test]
            fn null_space_vectors_are_annihilated(seed in any::<u64>(), rows in 1usize..7, cols in 1usize..7, rank_drop in 0usize..3) {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let inner = rows.min(cols).saturating_sub(rank_drop).max(1);
                let m = random_matrix(&mut rng, rows, inner) * random_matrix(&mut rng, inner, cols);
                let tol = TolerancePolicy::default();
                let ns = null_space(&m, tol);
                let scale = m.norm().max(1.0);
                for v in ns.vectors() {
                    prop_assert!((&m * &v).norm() <= tol.eq_tol * scale);
                }
                let gram = ns.basis().adjoint() * ns.basis();
                prop_assert!(distance(&gram, &identity(ns.dim())) <= tol.eq_tol);
                prop_assert_eq!(ns.dim(), row_reduction_nullity(&m, 1e-9 * scale));
            }
        }
    }
}
