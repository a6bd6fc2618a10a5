//! `Spin(d)` inside a complex irreducible representation of the Clifford
//! algebra of `ℝᵈ` with `γ_a² = −1`.

use crate::numeric::{c, distance, identity, ComplexMatrix, RealMatrix, ONE, ZERO};
use crate::sampling::{random_antisymmetric, SampleRng};
use crate::twogroup::ComputableGroup;

/// Gamma matrices `γ_1..γ_d` on `(ℂ²)^{⊗⌊d/2⌋}`, built from Pauli strings:
/// `i·Z…Z X 1…1`, `i·Z…Z Y 1…1`, and `i·Z…Z` for the last one when `d` is odd.
fn gamma_matrices(d: usize) -> Vec<ComplexMatrix> {
    let x = ComplexMatrix::from_row_slice(2, 2, &[ZERO, ONE, ONE, ZERO]);
    let y = ComplexMatrix::from_row_slice(2, 2, &[ZERO, c(0.0, -1.0), c(0.0, 1.0), ZERO]);
    let z = ComplexMatrix::from_row_slice(2, 2, &[ONE, ZERO, ZERO, -ONE]);
    let qubits = d / 2;
    let string = |k: usize, middle: &ComplexMatrix| {
        let mut m = identity(1);
        for q in 0..qubits {
            let factor = if q < k { z.clone() } else if q == k { middle.clone() } else { identity(2) };
            m = m.kronecker(&factor);
        }
        m * c(0.0, 1.0)
    };
    let mut gammas = Vec::with_capacity(d);
    for k in 0..qubits {
        gammas.push(string(k, &x));
        gammas.push(string(k, &y));
    }
    if d % 2 == 1 {
        gammas.push(string(qubits, &z));
    }
    gammas
}

/// The spin group with its gamma matrices. Elements are unitary matrices in
/// the even part of the Clifford algebra.
#[derive(Debug, Clone)]
pub struct SpinGroup {
    d: usize,
    gammas: Vec<ComplexMatrix>,
}

impl SpinGroup {
    /// Panics for `d < 2`; callers validate dimensions first.
    pub fn new(d: usize) -> Self {
        assert!(d >= 2, "spin groups need d ≥ 2");
        Self { d, gammas: gamma_matrices(d) }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Size of the spinor matrices.
    pub fn spinor_dim(&self) -> usize {
        self.gammas[0].nrows()
    }

    pub fn gammas(&self) -> &[ComplexMatrix] {
        &self.gammas
    }

    /// `exp(−¼ Σ_ab B_ab γ_a γ_b)`, the lift of `exp(B)` for an antisymmetric
    /// `B`: the covering of the result is `exp(B)`.
    pub fn exp(&self, bivector: &RealMatrix) -> ComplexMatrix {
        let mut generator = ComplexMatrix::zeros(self.spinor_dim(), self.spinor_dim());
        for a in 0..self.d {
            for b in 0..self.d {
                if a != b && bivector[(a, b)] != 0.0 {
                    generator -= &self.gammas[a] * &self.gammas[b] * c(bivector[(a, b)] / 4.0, 0.0);
                }
            }
        }
        generator.exp()
    }

    /// The rotation `λ(x)` with `x γ_b x⁻¹ = Σ_a λ_ab γ_a`.
    pub fn covering(&self, x: &ComplexMatrix) -> RealMatrix {
        let x_inv = x.adjoint();
        let dim = self.spinor_dim() as f64;
        let conjugated: Vec<ComplexMatrix> = self.gammas.iter().map(|g| x * g * &x_inv).collect();
        // tr(γ_a γ_c) = −dim·δ_ac.
        RealMatrix::from_fn(self.d, self.d, |a, b| -(&self.gammas[a] * &conjugated[b]).trace().re / dim)
    }

    /// `exp` of a random bivector with entries up to `π`, which reaches every
    /// element of the (connected) group.
    pub fn random(&self, rng: &mut SampleRng) -> ComplexMatrix {
        self.exp(&(random_antisymmetric(rng, self.d) * std::f64::consts::PI))
    }
}

impl ComputableGroup for SpinGroup {
    type Element = ComplexMatrix;

    fn identity(&self) -> ComplexMatrix {
        identity(self.spinor_dim())
    }
    fn mul(&self, a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
        a * b
    }
    fn inv(&self, a: &ComplexMatrix) -> ComplexMatrix {
        a.adjoint()
    }
    fn distance(&self, a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
        distance(a, b)
    }
    fn sample(&self, rng: &mut SampleRng) -> ComplexMatrix {
        self.random(rng)
    }
}
