use rand::Rng;

use crate::linalg::{determinant, Matrix};
use crate::scalar::Scalar;

/// `Qᵀ diag(0_r, D) Q` with `D` nonzero integers in `[-3, 3]` and `Q` a
/// random nonsingular integer matrix with entries in `[-2, 2]`; the radical
/// rank is exactly `r`.
pub fn random_degenerate_gram<T: Scalar, R: Rng + ?Sized>(rng: &mut R, dim: usize, r: usize) -> Matrix<T> {
    assert!(r <= dim, "radical rank exceeds dimension");
    let d: Vec<T> = (0..dim)
        .map(|i| {
            if i < r {
                T::zero()
            } else {
                let v = rng.gen_range(1..=3);
                T::from_int(if rng.gen_bool(0.5) { v } else { -v })
            }
        })
        .collect();
    let q = loop {
        let q: Matrix<T> = Matrix::from_fn(dim, dim, |_, _| T::from_int(rng.gen_range(-2..=2)));
        if !determinant(&q).expect("square").is_zero() {
            break q;
        }
    };
    Matrix::from_diagonal(&d).congruent(&q)
}
