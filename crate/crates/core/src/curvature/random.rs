use rand::Rng;

use super::CurvatureTensor;
use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// Symmetric matrix with integer entries in `[-bound, bound]`.
pub fn random_symmetric<T: Scalar, R: Rng + ?Sized>(rng: &mut R, m: usize, bound: i64) -> Matrix<T> {
    let mut s = Matrix::zeros(m, m);
    for i in 0..m {
        for j in i..m {
            let v = T::from_int(rng.gen_range(-bound..=bound));
            s[(i, j)] = v.clone();
            s[(j, i)] = v;
        }
    }
    s
}

pub fn random_int_vector<T: Scalar, R: Rng + ?Sized>(rng: &mut R, m: usize, bound: i64) -> Vec<T> {
    (0..m).map(|_| T::from_int(rng.gen_range(-bound..=bound))).collect()
}

/// Sum of `terms` Kulkarni–Nomizu products of random symmetric integer
/// matrices; always an algebraic curvature tensor.
pub fn random_algebraic_tensor<T: Scalar, R: Rng + ?Sized>(rng: &mut R, m: usize, terms: usize) -> CurvatureTensor<T> {
    let mut r = CurvatureTensor::zeros(m);
    for _ in 0..terms {
        let h = random_symmetric(rng, m, 3);
        let k = random_symmetric(rng, m, 3);
        r = r.add(&CurvatureTensor::kulkarni_nomizu(&h, &k));
    }
    r
}
