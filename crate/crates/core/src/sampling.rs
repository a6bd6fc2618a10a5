//! Seeded random generators and samplers for matrices used across the crate.

use crate::numeric::{c, ComplexMatrix, RealMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type SampleRng = ChaCha8Rng;

/// FNV-1a; stable across platforms and compiler versions, unlike `std`'s
/// default hasher.
pub fn stable_hash(text: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in text.as_bytes() {
        h ^= u64::from(*b);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

/// Seed for a named check derived from the run seed.
pub fn check_seed(run_seed: u64, name: &str) -> u64 {
    run_seed ^ stable_hash(name).rotate_left(17)
}

/// Generator for sample `index` of a check: one ChaCha stream per sample, so
/// results do not depend on evaluation order.
pub fn sample_rng(seed: u64, index: u64) -> SampleRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

pub fn uniform(rng: &mut impl Rng) -> f64 {
    rng.random_range(-1.0..1.0)
}

pub fn random_real(rng: &mut impl Rng, rows: usize, cols: usize) -> RealMatrix {
    RealMatrix::from_fn(rows, cols, |_, _| uniform(rng))
}

pub fn random_complex(rng: &mut impl Rng, rows: usize, cols: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| c(uniform(rng), uniform(rng)))
}

pub fn random_antisymmetric(rng: &mut impl Rng, dim: usize) -> RealMatrix {
    let a = random_real(rng, dim, dim);
    &a - a.transpose()
}

/// `exp` of a random antisymmetric matrix with entries of size `scale`.
pub fn random_special_orthogonal(rng: &mut impl Rng, dim: usize, scale: f64) -> RealMatrix {
    (random_antisymmetric(rng, dim) * scale).exp()
}

pub fn random_hermitian(rng: &mut impl Rng, dim: usize) -> ComplexMatrix {
    let a = random_complex(rng, dim, dim);
    (&a + a.adjoint()) * c(0.5, 0.0)
}

pub fn random_unitary(rng: &mut impl Rng, dim: usize) -> ComplexMatrix {
    (random_hermitian(rng, dim) * c(0.0, 1.0)).exp()
}

pub fn random_phase(rng: &mut impl Rng) -> crate::numeric::C64 {
    crate::numeric::C64::from_polar(1.0, rng.random_range(0.0..std::f64::consts::TAU))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stable_hash_is_fixed() {
        assert_eq!(stable_hash(""), 0xcbf2_9ce4_8422_2325);
        assert_eq!(stable_hash("a"), 0xaf63_dc4c_8601_ec8c);
        assert_ne!(check_seed(1, "x"), check_seed(1, "y"));
    }

    #[test]
    fn per_sample_streams_are_reproducible_and_distinct() {
        let a: f64 = sample_rng(5, 3).random();
        let b: f64 = sample_rng(5, 3).random();
        let c: f64 = sample_rng(5, 4).random();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn special_orthogonal_samples() {
        let mut rng = sample_rng(1, 0);
        let g = random_special_orthogonal(&mut rng, 6, 1.0);
        assert!((g.transpose() * &g - RealMatrix::identity(6, 6)).norm() < 1e-12);
        assert!((g.determinant() - 1.0).abs() < 1e-12);
        let u = random_unitary(&mut rng, 4);
        assert!(crate::numeric::unitarity_defect(&u) < 1e-12);
    }
}
