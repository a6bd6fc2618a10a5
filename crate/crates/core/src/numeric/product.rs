//! Dense complex products routed through faer's blocked kernels, which are
//! an order of magnitude faster than nalgebra's generic loops for complex
//! entries at the sizes used here.

use super::{ComplexMatrix, ONE};
use faer::linalg::matmul::matmul;
use faer::{Accum, MatMut, MatRef, Par};

fn view(m: &ComplexMatrix) -> MatRef<'_, super::C64> {
    MatRef::from_column_major_slice(m.as_slice(), m.nrows(), m.ncols())
}

fn product(rows: usize, cols: usize, f: impl FnOnce(MatMut<'_, super::C64>)) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(rows, cols);
    f(MatMut::from_column_major_slice_mut(out.as_mut_slice(), rows, cols));
    out
}

/// `a·b`.
pub fn mul(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    assert_eq!(a.ncols(), b.nrows(), "inner dimensions differ");
    product(a.nrows(), b.ncols(), |dst| matmul(dst, Accum::Replace, view(a), view(b), ONE, Par::Seq))
}

/// `a*·b`.
pub fn ad_mul(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    assert_eq!(a.nrows(), b.nrows(), "inner dimensions differ");
    product(a.ncols(), b.ncols(), |dst| matmul(dst, Accum::Replace, view(a).adjoint(), view(b), ONE, Par::Seq))
}

/// `a·b*`.
pub fn mul_ad(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    assert_eq!(a.ncols(), b.ncols(), "inner dimensions differ");
    product(a.nrows(), b.nrows(), |dst| matmul(dst, Accum::Replace, view(a), view(b).adjoint(), ONE, Par::Seq))
}

/// `u·x·u*`.
pub fn conjugate_by(u: &ComplexMatrix, x: &ComplexMatrix) -> ComplexMatrix {
    mul_ad(&mul(u, x), u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::distance;
    use crate::sampling::{random_complex, sample_rng};

    #[test]
    fn products_match_nalgebra() {
        let mut rng = sample_rng(3, 0);
        let (a, b) = (random_complex(&mut rng, 5, 3), random_complex(&mut rng, 3, 4));
        assert!(distance(&mul(&a, &b), &(&a * &b)) < 1e-13);
        let c = random_complex(&mut rng, 5, 4);
        assert!(distance(&ad_mul(&a, &c), &a.ad_mul(&c)) < 1e-13);
        let u = random_complex(&mut rng, 4, 4);
        let x = random_complex(&mut rng, 4, 4);
        assert!(distance(&mul_ad(&x, &u), &(&x * u.adjoint())) < 1e-13);
        assert!(distance(&conjugate_by(&u, &x), &(&u * &x * u.adjoint())) < 1e-13);
    }
}
