//! Characteristic polynomials via the Faddeev–LeVerrier recurrence.

use std::fmt;

use super::{LinalgError, Matrix};
use crate::scalar::Scalar;

/// Coefficients `c_0..c_n` of `det(A − λI)`, ascending powers of `λ`.
///
/// The leading coefficient is `(−1)^n`.
#[derive(Clone, Debug, PartialEq)]
pub struct CharPoly<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> CharPoly<T> {
    pub fn from_coeffs(coeffs: Vec<T>) -> Self {
        Self { coeffs }
    }

    /// `det(A − λI)` for `A = 0` in dimension `n`, i.e. `(−λ)^n`.
    pub fn monomial(n: usize) -> Self {
        let mut coeffs = vec![T::zero(); n + 1];
        coeffs[n] = if n % 2 == 0 { T::one() } else { -T::one() };
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, x: &T) -> T {
        self.coeffs.iter().rev().fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    /// `true` when the polynomial is `±λ^n` (every eigenvalue zero).
    pub fn is_nilpotent_poly(&self) -> bool {
        self.approx_eq(&Self::monomial(self.degree()))
    }

    pub fn approx_eq(&self, other: &Self) -> bool {
        self.coeffs.len() == other.coeffs.len()
            && self.coeffs.iter().zip(&other.coeffs).all(|(a, b)| a.approx_eq(b))
    }

    pub fn to_report_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(Scalar::to_report_string).collect()
    }
}

impl<T: Scalar> fmt::Display for CharPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let coeff = c.to_report_string();
            terms.push(match k {
                0 => coeff,
                1 => format!("({coeff})λ"),
                _ => format!("({coeff})λ^{k}"),
            });
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// `det(A − λI)` of a square matrix.
///
/// Faddeev–LeVerrier: `M_1 = I`, `a_{n-k} = −tr(A M_k)/k`,
/// `M_{k+1} = A M_k + a_{n-k} I`, which yields `det(λI − A)`; the result is
/// multiplied by `(−1)^n`. All divisions are by small integers, so the
/// computation is exact over the rationals.
pub fn char_poly<T: Scalar>(a: &Matrix<T>) -> Result<CharPoly<T>, LinalgError> {
    if !a.is_square() {
        return Err(LinalgError::NotSquare { rows: a.rows(), cols: a.cols() });
    }
    let n = a.rows();
    // monic coefficients of det(λI − A), ascending
    let mut monic = vec![T::zero(); n + 1];
    monic[n] = T::one();
    let mut m = Matrix::identity(n);
    for k in 1..=n {
        let am = a * &m;
        let c = -am.trace() / T::from_int(k as i64);
        monic[n - k] = c.clone();
        if k < n {
            m = am.add(&Matrix::identity(n).scale(&c));
        }
    }
    if n % 2 == 1 {
        for c in &mut monic {
            *c = -c.clone();
        }
    }
    Ok(CharPoly { coeffs: monic })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::determinant;
    use crate::scalar::Rational;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn zero_matrix_gives_signed_monomial() {
        let p = char_poly(&Matrix::<Rational>::zeros(3, 3)).unwrap();
        assert_eq!(p.coeffs(), &[q(0), q(0), q(0), q(-1)]);
        assert!(p.is_nilpotent_poly());
    }

    #[test]
    fn diagonal_two_by_two() {
        let p = char_poly(&Matrix::from_diagonal(&[q(2), q(3)])).unwrap();
        assert_eq!(p.coeffs(), &[q(6), q(-5), q(1)]);
        assert_eq!(p.eval(&q(2)), q(0));
        assert_eq!(p.eval(&q(3)), q(0));
    }

    #[test]
    fn agrees_with_determinant_evaluation() {
        // det(A − tI) evaluated directly at a few integer points
        let a = Matrix::from_rows(vec![
            vec![q(1), q(2), q(0)],
            vec![q(-1), q(0), q(3)],
            vec![q(4), q(1), q(-2)],
        ])
        .unwrap();
        let p = char_poly(&a).unwrap();
        for t in -3..=3 {
            let shifted = a.sub(&Matrix::identity(3).scale(&q(t)));
            assert_eq!(p.eval(&q(t)), determinant(&shifted).unwrap());
        }
    }

    #[test]
    fn rejects_non_square() {
        assert!(char_poly(&Matrix::<Rational>::zeros(2, 3)).is_err());
    }

    #[test]
    fn display_is_readable() {
        let p = char_poly(&Matrix::from_diagonal(&[q(2), q(3)])).unwrap();
        assert_eq!(p.to_string(), "(1)λ^2 + (-5)λ + 6");
    }
}
