//! Gaussian elimination: reduced row echelon form, rank, kernel, inverse,
//! determinant.

use super::{LinalgError, Matrix};
use crate::scalar::Scalar;

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon<T> {
    pub reduced: Matrix<T>,
    pub pivots: Vec<usize>,
}

/// Row-reduces `m` with partial pivoting on the largest absolute entry.
pub fn rref<T: Scalar>(m: &Matrix<T>) -> Echelon<T> {
    let scale = m.max_abs();
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let best = (r..rows)
            .filter(|&i| !a[(i, c)].is_negligible(&scale))
            .max_by(|&i, &j| {
                a[(i, c)].abs().partial_cmp(&a[(j, c)].abs()).unwrap_or(std::cmp::Ordering::Equal)
            });
        let Some(p) = best else {
            for i in r..rows {
                a[(i, c)] = T::zero();
            }
            continue;
        };
        swap_rows(&mut a, r, p);
        let inv = T::one() / a[(r, c)].clone();
        for j in c..cols {
            a[(r, j)] = a[(r, j)].clone() * inv.clone();
        }
        for i in 0..rows {
            if i == r || a[(i, c)].is_zero() {
                continue;
            }
            let f = a[(i, c)].clone();
            for j in c..cols {
                if !a[(r, j)].is_zero() {
                    a[(i, j)] = a[(i, j)].clone() - f.clone() * a[(r, j)].clone();
                }
            }
            a[(i, c)] = T::zero();
        }
        pivots.push(c);
        r += 1;
    }
    Echelon { reduced: a, pivots }
}

pub fn rank<T: Scalar>(m: &Matrix<T>) -> usize {
    rref(m).pivots.len()
}

/// Basis of the kernel of `m`, one vector per free column.
pub fn null_space<T: Scalar>(m: &Matrix<T>) -> Vec<Vec<T>> {
    let Echelon { reduced, pivots } = rref(m);
    let cols = m.cols();
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![T::zero(); cols];
            v[fc] = T::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -reduced[(row, fc)].clone();
            }
            v
        })
        .collect()
}

pub fn determinant<T: Scalar>(m: &Matrix<T>) -> Result<T, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    let n = m.rows();
    let scale = m.max_abs();
    let mut a = m.clone();
    let mut det = T::one();
    for c in 0..n {
        let best = (c..n)
            .filter(|&i| !a[(i, c)].is_negligible(&scale))
            .max_by(|&i, &j| {
                a[(i, c)].abs().partial_cmp(&a[(j, c)].abs()).unwrap_or(std::cmp::Ordering::Equal)
            });
        let Some(p) = best else {
            return Ok(T::zero());
        };
        if p != c {
            swap_rows(&mut a, c, p);
            det = -det;
        }
        let pivot = a[(c, c)].clone();
        det = det * pivot.clone();
        for i in c + 1..n {
            if a[(i, c)].is_zero() {
                continue;
            }
            let f = a[(i, c)].clone() / pivot.clone();
            for j in c..n {
                a[(i, j)] = a[(i, j)].clone() - f.clone() * a[(c, j)].clone();
            }
        }
    }
    Ok(det)
}

/// Inverse of a square matrix. A singular input is reported together with a
/// nonzero kernel vector.
pub fn invert<T: Scalar>(m: &Matrix<T>) -> Result<Matrix<T>, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    let n = m.rows();
    let mut aug = Matrix::from_fn(n, 2 * n, |i, j| {
        if j < n {
            m[(i, j)].clone()
        } else if j - n == i {
            T::one()
        } else {
            T::zero()
        }
    });
    let scale = m.max_abs();
    for c in 0..n {
        let best = (c..n)
            .filter(|&i| !aug[(i, c)].is_negligible(&scale))
            .max_by(|&i, &j| {
                aug[(i, c)].abs().partial_cmp(&aug[(j, c)].abs()).unwrap_or(std::cmp::Ordering::Equal)
            });
        let Some(p) = best else {
            let witness = null_space(m)
                .into_iter()
                .next()
                .unwrap_or_default()
                .iter()
                .map(Scalar::to_report_string)
                .collect();
            return Err(LinalgError::Singular { witness });
        };
        swap_rows(&mut aug, c, p);
        let inv = T::one() / aug[(c, c)].clone();
        for j in 0..2 * n {
            aug[(c, j)] = aug[(c, j)].clone() * inv.clone();
        }
        for i in 0..n {
            if i == c || aug[(i, c)].is_zero() {
                continue;
            }
            let f = aug[(i, c)].clone();
            for j in 0..2 * n {
                if !aug[(c, j)].is_zero() {
                    aug[(i, j)] = aug[(i, j)].clone() - f.clone() * aug[(c, j)].clone();
                }
            }
        }
    }
    Ok(aug.submatrix(0..n, n..2 * n))
}

/// Solves `A x = b` for square nonsingular `A`.
pub fn solve<T: Scalar>(a: &Matrix<T>, b: &[T]) -> Result<Vec<T>, LinalgError> {
    Ok(invert(a)?.mul_vec(b))
}

fn swap_rows<T: Scalar>(a: &mut Matrix<T>, r1: usize, r2: usize) {
    if r1 == r2 {
        return;
    }
    for j in 0..a.cols() {
        let tmp = a[(r1, j)].clone();
        a[(r1, j)] = a[(r2, j)].clone();
        a[(r2, j)] = tmp;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn mat(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()).unwrap()
    }

    #[test]
    fn kernel_of_diagonal_form() {
        let m = Matrix::from_diagonal(&[q(0), q(0), q(1), q(-1)]);
        let ker = null_space(&m);
        assert_eq!(ker, vec![vec![q(1), q(0), q(0), q(0)], vec![q(0), q(1), q(0), q(0)]]);
    }

    #[test]
    fn identity_has_trivial_kernel() {
        assert!(null_space(&Matrix::<Rational>::identity(3)).is_empty());
    }

    #[test]
    fn rank_one_symmetric_kernel() {
        let ker = null_space(&mat(&[&[1, 1], &[1, 1]]));
        assert_eq!(ker, vec![vec![q(-1), q(1)]]);
    }

    #[test]
    fn swap_matrix_is_its_own_inverse() {
        let s = mat(&[&[0, 1], &[1, 0]]);
        assert_eq!(invert(&s).unwrap(), s);
        assert_eq!(invert(&Matrix::<Rational>::identity(4)).unwrap(), Matrix::identity(4));
    }

    #[test]
    fn singular_inverse_reports_kernel() {
        let err = invert(&mat(&[&[1, 2], &[2, 4]])).unwrap_err();
        match err {
            LinalgError::Singular { witness } => assert_eq!(witness, vec!["-2", "1"]),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn determinant_and_non_square() {
        assert_eq!(determinant(&mat(&[&[2, 1], &[1, 3]])).unwrap(), q(5));
        assert_eq!(determinant(&mat(&[&[0, 1], &[1, 0]])).unwrap(), q(-1));
        assert!(matches!(
            determinant(&Matrix::<Rational>::zeros(2, 3)),
            Err(LinalgError::NotSquare { .. })
        ));
    }

    #[test]
    fn float_rank_uses_tolerance() {
        let m = Matrix::from_rows(vec![vec![1.0, 2.0], vec![2.0, 4.0 + 1e-15]]).unwrap();
        assert_eq!(rank(&m), 1);
    }
}
