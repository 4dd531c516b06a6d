use super::{jacobi_operator, CurvatureError, CurvatureTensor};
use crate::linalg::{congruence_diagonalize, unit_vector, Matrix};
use crate::metric::{AdaptedFrame, AssociatedMetric};
use crate::scalar::Scalar;

/// `η_i(R(e_a, ξ_i) e_b)` summed over the radical, as an `m×m` matrix.
///
/// Uses the operator form when the tensor carries one; otherwise the vector
/// `R(e_a, ξ_i) e_b` is recovered by raising `R(e_a, ξ_i, e_b, ·)` with `g̃`.
pub fn radical_trace_term<T: Scalar>(r: &CurvatureTensor<T>, metric: &AssociatedMetric<T>) -> Matrix<T> {
    let m = r.dim();
    let rr = metric.radical_rank();
    let inv = metric.inverse();
    Matrix::from_fn(m, m, |a, b| {
        (0..rr).fold(T::zero(), |acc, i| {
            let v = match r.op_get(a, i, b, i) {
                Some(v) => v.clone(),
                None => (0..m).fold(T::zero(), |s, d| s + inv[(i, d)].clone() * r.get(a, i, b, d).clone()),
            };
            acc + v
        })
    })
}

/// Ricci form in the frame:
/// `Ric(X,Y) = Σ ε_k R(X,F_k,Y,F_k) + Σ_i η_i(R(X,ξ_i)Y)`
/// where `F_k` is a `g`-orthogonal basis of the screen.
///
/// The screen block is diagonalized by congruence; each term is weighted by
/// `1/g(F_k,F_k)`, which is `ε_k` after normalization and keeps the result
/// exact without square roots.
pub fn ricci<T: Scalar>(
    r: &CurvatureTensor<T>,
    frame: &AdaptedFrame<T>,
    metric: &AssociatedMetric<T>,
) -> Result<Matrix<T>, CurvatureError> {
    let m = r.dim();
    if frame.dim() != m || metric.dim() != m {
        return Err(CurvatureError::DimensionMismatch { expected: m, got: frame.dim() });
    }
    let rr = frame.radical_rank();
    let screen = frame.screen_gram();
    let diag = congruence_diagonalize(&screen)?;
    let orth: Vec<(Vec<T>, T)> = (0..m - rr)
        .map(|k| {
            let mut v = vec![T::zero(); m];
            for j in 0..m - rr {
                v[rr + j] = diag.basis[(j, k)].clone();
            }
            (v, T::one() / diag.diagonal[k].clone())
        })
        .collect();
    let eta = radical_trace_term(r, metric);
    Ok(Matrix::from_fn(m, m, |a, b| {
        let ea = unit_vector(m, a);
        let eb = unit_vector(m, b);
        orth.iter().fold(eta[(a, b)].clone(), |acc, (f, w)| acc + w.clone() * r.eval(&ea, f, &eb, f))
    }))
}

/// `tr J_R(x) − Σ η_i(R(x,ξ_i)x) + Ric(x,x)`.
pub fn trace_identity_residual<T: Scalar>(
    r: &CurvatureTensor<T>,
    frame: &AdaptedFrame<T>,
    metric: &AssociatedMetric<T>,
    x: &[T],
) -> Result<T, CurvatureError> {
    let j = jacobi_operator(r, metric, x)?;
    let ric = ricci(r, frame, metric)?;
    let eta = radical_trace_term(r, metric);
    Ok(j.matrix.trace() - eta.bilinear(x, x) + ric.bilinear(x, x))
}

#[derive(Clone, Debug, PartialEq)]
pub enum EinsteinResult<T> {
    Einstein(T),
    /// `Ric(e_i, e_j) ≠ λ g(e_i, e_j)` at the witness entry.
    NotEinstein { witness: (usize, usize) },
}

impl<T> EinsteinResult<T> {
    pub fn lambda(&self) -> Option<&T> {
        match self {
            Self::Einstein(l) => Some(l),
            Self::NotEinstein { .. } => None,
        }
    }
}

/// Solves `Ric = λ g`. `λ` is read off the first nonzero entry of `g` in
/// row-major order; when `g = 0` only `Ric = 0` qualifies (with `λ = 0`).
pub fn einstein_check<T: Scalar>(ric: &Matrix<T>, g: &Matrix<T>) -> EinsteinResult<T> {
    assert_eq!((ric.rows(), ric.cols()), (g.rows(), g.cols()), "shape mismatch");
    let n = g.rows();
    let entries = (0..n).flat_map(|i| (0..n).map(move |j| (i, j)));
    let lambda = entries
        .clone()
        .find(|&(i, j)| !g[(i, j)].approx_zero())
        .map(|(i, j)| ric[(i, j)].clone() / g[(i, j)].clone())
        .unwrap_or_else(T::zero);
    match entries.into_iter().find(|&(i, j)| !ric[(i, j)].approx_eq(&(lambda.clone() * g[(i, j)].clone()))) {
        None => EinsteinResult::Einstein(lambda),
        Some(witness) => EinsteinResult::NotEinstein { witness },
    }
}
