use super::{CurvatureError, CurvatureTensor};
use crate::linalg::Matrix;
use crate::metric::AssociatedMetric;
use crate::scalar::Scalar;

/// Pseudo-Jacobi operator `J_R(x)` in frame components.
///
/// Index convention: `(G̃ · J)[w][y] = R(y, x, x, w)`; column `y` of the
/// matrix holds the components of `J_R(x) e_y`.
#[derive(Clone, Debug, PartialEq)]
pub struct JacobiOperator<T> {
    pub direction: Vec<T>,
    /// `g(x, x)` with the degenerate metric.
    pub q: T,
    pub matrix: Matrix<T>,
}

impl<T: Scalar> JacobiOperator<T> {
    /// `(1/q) J_R(x)`, which equals `J_R(x/√|q|)` up to the sign of `q`
    /// folded in; `None` when `q = 0`.
    pub fn normalized(&self) -> Option<Matrix<T>> {
        if self.q.is_zero() {
            None
        } else {
            Some(self.matrix.scale(&(T::one() / self.q.clone())))
        }
    }

    /// Whether `G̃ · J` is symmetric.
    pub fn is_self_adjoint(&self, metric: &AssociatedMetric<T>) -> bool {
        (metric.gram_tilde() * &self.matrix).is_symmetric()
    }
}

/// `T[w][y] = R(y, x, x, w)`.
pub fn jacobi_lowered<T: Scalar>(r: &CurvatureTensor<T>, x: &[T]) -> Matrix<T> {
    let m = r.dim();
    let mut t: Matrix<T> = Matrix::zeros(m, m);
    for y in 0..m {
        for b in (0..m).filter(|&b| !x[b].is_zero()) {
            for c in (0..m).filter(|&c| !x[c].is_zero()) {
                let xx = x[b].clone() * x[c].clone();
                for w in 0..m {
                    let v = r.get(y, b, c, w);
                    if !v.is_zero() {
                        t[(w, y)] = t[(w, y)].clone() + xx.clone() * v.clone();
                    }
                }
            }
        }
    }
    t
}

/// Builds `J_R(x) = G̃⁻¹ T` for a verified tensor. `x` is given in frame
/// components; `g(x, x) = 0` is allowed here.
pub fn jacobi_operator<T: Scalar>(
    r: &CurvatureTensor<T>,
    metric: &AssociatedMetric<T>,
    x: &[T],
) -> Result<JacobiOperator<T>, CurvatureError> {
    let m = r.dim();
    if metric.dim() != m || x.len() != m {
        return Err(CurvatureError::DimensionMismatch { expected: m, got: if x.len() != m { x.len() } else { metric.dim() } });
    }
    if !r.status().is_verified() {
        return Err(CurvatureError::NotVerified(r.status().clone()));
    }
    let t = jacobi_lowered(r, x);
    Ok(JacobiOperator { direction: x.to_vec(), q: metric.causal_value(x), matrix: metric.inverse() * &t })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::char_poly;
    use crate::metric::{associated_metric, build_adapted_frame, DegenerateForm};
    use crate::scalar::Rational;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn unverified_tensor_rejected() {
        let g = DegenerateForm::new(Matrix::from_diagonal(&[q(1), q(1)])).unwrap();
        let f = build_adapted_frame(&g, 1).unwrap();
        let am = associated_metric(&g, &f).unwrap();
        let r = CurvatureTensor::<Rational>::zeros(2);
        assert!(matches!(jacobi_operator(&r, &am, &[q(1), q(0)]), Err(CurvatureError::NotVerified(_))));
    }

    #[test]
    fn constant_curvature_spectrum() {
        let g = DegenerateForm::new(Matrix::from_diagonal(&[q(1), q(1), q(-1)])).unwrap();
        let f = build_adapted_frame(&g, 1).unwrap();
        let am = associated_metric(&g, &f).unwrap();
        let r = CurvatureTensor::constant_curvature(g.gram(), &q(5)).verified();
        let j = jacobi_operator(&r, &am, &[q(1), q(0), q(0)]).unwrap();
        // eigenvalues {0, 5, 5}: det(J − λI) = −λ(λ−5)²
        let p = char_poly(&j.matrix).unwrap();
        assert_eq!(p.coeffs(), &[q(0), q(-25), q(10), q(-1)]);
        assert_eq!(j.matrix.mul_vec(&[q(1), q(0), q(0)]), vec![q(0); 3]);
    }
}
