use super::{identity, mul, ComplexMatrix, ComplexVector, NumericError, TolerancePolicy};

/// An antilinear map `v ↦ M·conj(v)` in a fixed basis.
#[derive(Debug, Clone, PartialEq)]
pub struct AntilinearOperator {
    linear_part: ComplexMatrix,
}

impl AntilinearOperator {
    pub fn new(linear_part: ComplexMatrix) -> Self {
        Self { linear_part }
    }

    /// Plain entrywise conjugation.
    pub fn conjugation(n: usize) -> Self {
        Self::new(identity(n))
    }

    pub fn linear_part(&self) -> &ComplexMatrix {
        &self.linear_part
    }

    pub fn dim(&self) -> usize {
        self.linear_part.nrows()
    }

    pub fn apply(&self, v: &ComplexVector) -> ComplexVector {
        &self.linear_part * v.conjugate()
    }

    /// `self ∘ other`, which is linear.
    pub fn compose(&self, other: &AntilinearOperator) -> ComplexMatrix {
        mul(&self.linear_part, &other.linear_part.conjugate())
    }

    /// `self ∘ L` for a linear `L`.
    pub fn after_linear(&self, l: &ComplexMatrix) -> AntilinearOperator {
        Self::new(mul(&self.linear_part, &l.conjugate()))
    }

    /// `L ∘ self` for a linear `L`.
    pub fn before_linear(&self, l: &ComplexMatrix) -> AntilinearOperator {
        Self::new(l * &self.linear_part)
    }

    /// The linear operator `self ∘ X ∘ self`; for an involution this is
    /// conjugation of `X` by the antilinear map.
    pub fn sandwich(&self, x: &ComplexMatrix) -> ComplexMatrix {
        mul(&mul(&self.linear_part, &x.conjugate()), &self.linear_part.conjugate())
    }

    /// Adjoint defined by `⟨Av, w⟩ = conj⟨v, A*w⟩`.
    pub fn adjoint(&self) -> AntilinearOperator {
        Self::new(self.linear_part.transpose())
    }

    /// `‖A∘A − 1‖`.
    pub fn involution_defect(&self) -> f64 {
        (self.compose(self) - identity(self.dim())).norm()
    }

    /// `‖A*A − 1‖`, zero for antiunitaries.
    pub fn antiunitarity_defect(&self) -> f64 {
        (self.adjoint().compose(self) - identity(self.dim())).norm()
    }
}

#[derive(Debug, Clone)]
pub struct PolarParts {
    pub j: AntilinearOperator,
    pub delta: ComplexMatrix,
}

/// Polar decomposition `S = J∘Δ^{1/2}` of an invertible antilinear involution.
///
/// With `M = W Σ V*` the linear part of `S`, `Δ = S*S` has linear form
/// `conj(V Σ² V*)` and `J` has linear part `W V*`, the unitary polar factor of
/// `M`; no inverse square roots are formed.
pub fn antilinear_polar(s: &AntilinearOperator, tol: TolerancePolicy) -> Result<PolarParts, NumericError> {
    let m = s.linear_part();
    if !m.is_square() {
        return Err(NumericError::ShapeMismatch(format!(
            "antilinear polar decomposition needs a square operator, got {}x{}",
            m.nrows(),
            m.ncols()
        )));
    }
    let svd = super::thin_svd(m);
    let smallest = svd.singular_values.iter().cloned().fold(f64::INFINITY, f64::min);
    let largest = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    if smallest < tol.rank_tol * largest.max(1.0) {
        return Err(NumericError::SingularInput { smallest, threshold: tol.rank_tol });
    }
    // S∘S = 1 is checked relative to the conditioning of S.
    let residual = s.involution_defect();
    if residual > tol.eq_tol * largest.max(1.0).powi(2) {
        return Err(NumericError::NotInvolutive { residual });
    }
    let (w, v) = (&svd.u, &svd.v);
    let v_adj = v.adjoint();
    let j = AntilinearOperator::new(w * &v_adj);
    let sigma_sq = ComplexMatrix::from_diagonal(&ComplexVector::from_iterator(
        svd.singular_values.len(),
        svd.singular_values.iter().map(|x| super::c(x * x, 0.0)),
    ));
    let delta = (v * sigma_sq * v_adj).conjugate();
    Ok(PolarParts { j, delta })
}
