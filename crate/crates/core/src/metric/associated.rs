use super::{AdaptedFrame, DegenerateForm, MetricError};
use crate::linalg::{invert, Matrix};
use crate::scalar::Scalar;

/// The nondegenerate metric `g̃ = g + Σ η_i ⊗ η_i` and its inverse (the
/// pseudo-inverse of `g`).
///
/// When `r = m` the same expression reduces to `Σ η_i ⊗ η_i` because `g`
/// vanishes identically.
#[derive(Clone, Debug)]
pub struct AssociatedMetric<T> {
    frame_g: Matrix<T>,
    frame_tilde: Matrix<T>,
    frame_inverse: Matrix<T>,
    working_tilde: Matrix<T>,
    working_inverse: Matrix<T>,
    radical_rank: usize,
}

impl<T: Scalar> AssociatedMetric<T> {
    /// Components of the degenerate `g` in the adapted frame.
    pub fn frame_g(&self) -> &Matrix<T> {
        &self.frame_g
    }

    /// Components of `g̃` in the adapted frame.
    pub fn gram_tilde(&self) -> &Matrix<T> {
        &self.frame_tilde
    }

    /// `g̃⁻¹` in the adapted frame.
    pub fn inverse(&self) -> &Matrix<T> {
        &self.frame_inverse
    }

    pub fn working_gram_tilde(&self) -> &Matrix<T> {
        &self.working_tilde
    }

    pub fn working_inverse(&self) -> &Matrix<T> {
        &self.working_inverse
    }

    pub fn dim(&self) -> usize {
        self.frame_g.rows()
    }

    pub fn radical_rank(&self) -> usize {
        self.radical_rank
    }

    /// `X^♭(Y) = g(X,Y) + Σ η_i(X) η_i(Y)`, working coordinates.
    pub fn flat(&self, x: &[T]) -> Vec<T> {
        self.working_tilde.mul_vec(x)
    }

    /// Inverse of [`AssociatedMetric::flat`].
    pub fn sharp(&self, omega: &[T]) -> Vec<T> {
        self.working_inverse.mul_vec(omega)
    }

    /// `g(x, x)` for frame components `x`.
    pub fn causal_value(&self, x: &[T]) -> T {
        self.frame_g.bilinear(x, x)
    }
}

pub fn associated_metric<T: Scalar>(
    g: &DegenerateForm<T>,
    frame: &AdaptedFrame<T>,
) -> Result<AssociatedMetric<T>, MetricError> {
    let mut working_tilde = g.gram().clone();
    let m = g.dim();
    for eta in frame.eta() {
        for i in 0..m {
            for j in 0..m {
                working_tilde[(i, j)] = working_tilde[(i, j)].clone() + eta[i].clone() * eta[j].clone();
            }
        }
    }
    let working_inverse = invert(&working_tilde)?;
    let frame_tilde = working_tilde.congruent(frame.basis());
    let frame_inverse = invert(&frame_tilde)?;
    Ok(AssociatedMetric {
        frame_g: frame.frame_gram().clone(),
        frame_tilde,
        frame_inverse,
        working_tilde,
        working_inverse,
        radical_rank: frame.radical_rank(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{unit_vector, Matrix};
    use crate::metric::{build_adapted_frame, DegenerateForm};
    use crate::scalar::Rational;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn radical_vectors_become_orthonormal() {
        let g = DegenerateForm::new(Matrix::from_diagonal(&[q(0), q(0), q(1), q(-1)])).unwrap();
        let f = build_adapted_frame(&g, 2).unwrap();
        let am = associated_metric(&g, &f).unwrap();
        assert_eq!(am.gram_tilde(), &Matrix::from_diagonal(&[q(1), q(1), q(1), q(-1)]));
        assert_eq!(am.flat(&f.radical()[0]), f.eta()[0]);
    }

    #[test]
    fn nondegenerate_metric_is_unchanged() {
        let gram = Matrix::from_rows(vec![vec![q(2), q(1)], vec![q(1), q(-3)]]).unwrap();
        let g = DegenerateForm::new(gram.clone()).unwrap();
        let f = build_adapted_frame(&g, 1).unwrap();
        let am = associated_metric(&g, &f).unwrap();
        assert_eq!(am.working_gram_tilde(), &gram);
        let x = vec![q(3), q(-2)];
        let y = vec![q(1), q(5)];
        assert_eq!(crate::linalg::dot(&am.flat(&x), &y), g.eval(&x, &y));
    }

    #[test]
    fn totally_lightlike_gives_identity_in_xi_frame() {
        let g = DegenerateForm::new(Matrix::<Rational>::zeros(3, 3)).unwrap();
        let f = build_adapted_frame(&g, 3).unwrap();
        let am = associated_metric(&g, &f).unwrap();
        assert_eq!(am.gram_tilde(), &Matrix::identity(3));
    }

    #[test]
    fn sharp_inverts_flat() {
        let g = DegenerateForm::new(
            Matrix::from_rows(vec![vec![q(1), q(1), q(0)], vec![q(1), q(1), q(0)], vec![q(0), q(0), q(-2)]]).unwrap(),
        )
        .unwrap();
        let f = build_adapted_frame(&g, 1).unwrap();
        let am = associated_metric(&g, &f).unwrap();
        for k in 0..3 {
            let e = unit_vector(3, k);
            assert_eq!(am.sharp(&am.flat(&e)), e);
            assert_eq!(am.flat(&am.sharp(&e)), e);
        }
    }
}
