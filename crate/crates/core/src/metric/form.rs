use std::fmt;

use super::MetricError;
use crate::linalg::{null_space, Matrix};
use crate::scalar::Scalar;

/// A symmetric bilinear form that may have a nontrivial radical.
#[derive(Clone, Debug, PartialEq)]
pub struct DegenerateForm<T> {
    gram: Matrix<T>,
    radical: Vec<Vec<T>>,
}

impl<T: Scalar> DegenerateForm<T> {
    pub fn new(gram: Matrix<T>) -> Result<Self, MetricError> {
        if !gram.is_square() {
            return Err(MetricError::NotSquare { rows: gram.rows(), cols: gram.cols() });
        }
        if let Some((row, col)) = gram.asymmetry_witness() {
            return Err(MetricError::NotSymmetric { row, col });
        }
        let radical = null_space(&gram);
        Ok(Self { gram, radical })
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &Matrix<T> {
        &self.gram
    }

    /// Kernel basis of the Gram matrix.
    pub fn radical(&self) -> &[Vec<T>] {
        &self.radical
    }

    pub fn radical_rank(&self) -> usize {
        self.radical.len()
    }

    pub fn eval(&self, x: &[T], y: &[T]) -> T {
        self.gram.bilinear(x, y)
    }
}

/// Kernel basis of `g`.
pub fn compute_radical<T: Scalar>(g: &DegenerateForm<T>) -> Vec<Vec<T>> {
    g.radical().to_vec()
}

/// Type of a submanifold of dimension `m` and codimension `n` whose induced
/// metric has radical rank `r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SubmanifoldKind {
    Nondegenerate,
    /// `0 < r < min(m, n)`
    RLightlike,
    /// `r = n < m`
    Coisotropic,
    /// `r = m < n`
    Isotropic,
    /// `r = m = n`
    TotallyLightlike,
}

impl SubmanifoldKind {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Nondegenerate => "nondegenerate",
            Self::RLightlike => "r-lightlike",
            Self::Coisotropic => "coisotropic",
            Self::Isotropic => "isotropic",
            Self::TotallyLightlike => "totally lightlike",
        }
    }

    /// Whether the tangent space has a nonzero screen (cases 1 and 2).
    pub fn has_screen(&self) -> bool {
        matches!(self, Self::Nondegenerate | Self::RLightlike | Self::Coisotropic)
    }
}

impl fmt::Display for SubmanifoldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub fn classify(m: usize, n: usize, r: usize) -> Result<SubmanifoldKind, MetricError> {
    if m == 0 || n == 0 {
        return Err(MetricError::InconsistentDimensions { m, n, r });
    }
    if r == 0 {
        return Ok(SubmanifoldKind::Nondegenerate);
    }
    if r > m.min(n) {
        return Err(MetricError::InconsistentDimensions { m, n, r });
    }
    Ok(match (r == m, r == n) {
        (true, true) => SubmanifoldKind::TotallyLightlike,
        (true, false) => SubmanifoldKind::Isotropic,
        (false, true) => SubmanifoldKind::Coisotropic,
        (false, false) => SubmanifoldKind::RLightlike,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn classification_table() {
        assert_eq!(classify(6, 2, 2).unwrap(), SubmanifoldKind::Coisotropic);
        assert_eq!(classify(4, 1, 1).unwrap(), SubmanifoldKind::Coisotropic);
        assert_eq!(classify(3, 5, 3).unwrap(), SubmanifoldKind::Isotropic);
        assert_eq!(classify(2, 2, 2).unwrap(), SubmanifoldKind::TotallyLightlike);
        assert_eq!(classify(5, 4, 2).unwrap(), SubmanifoldKind::RLightlike);
        assert_eq!(classify(5, 4, 0).unwrap(), SubmanifoldKind::Nondegenerate);
    }

    #[test]
    fn inconsistent_dimensions() {
        assert!(classify(3, 2, 3).is_err());
        assert!(classify(0, 2, 0).is_err());
        assert!(classify(4, 0, 0).is_err());
    }

    #[test]
    fn radical_of_special_forms() {
        let nondeg = DegenerateForm::new(Matrix::from_diagonal(&[q(1), q(-1)])).unwrap();
        assert!(nondeg.radical().is_empty());
        let zero = DegenerateForm::new(Matrix::<Rational>::zeros(3, 3)).unwrap();
        assert_eq!(zero.radical_rank(), 3);
    }

    #[test]
    fn asymmetric_gram_rejected() {
        let m = Matrix::from_rows(vec![vec![q(0), q(1)], vec![q(0), q(0)]]).unwrap();
        assert!(matches!(DegenerateForm::new(m), Err(MetricError::NotSymmetric { row: 0, col: 1 })));
    }
}
