//! Symmetric congruence diagonalization and inertia.

use super::{LinalgError, Matrix};
use crate::scalar::Scalar;

/// `Cᵀ S C = diag(d)` with `C` invertible.
#[derive(Clone, Debug)]
pub struct CongruenceDiagonal<T> {
    /// Columns are the new basis vectors.
    pub basis: Matrix<T>,
    pub diagonal: Vec<T>,
}

/// Inertia of a symmetric form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Signature {
    pub fn dim(&self) -> usize {
        self.positive + self.negative + self.zero
    }
}

/// Diagonalizes a symmetric matrix by simultaneous row/column operations.
///
/// Pivots are chosen on the largest absolute diagonal entry; when every
/// remaining diagonal entry vanishes but an off-diagonal entry `s_ij` does
/// not, basis vector `e_i` is replaced by `e_i + e_j`, which puts `2 s_ij` on
/// the diagonal.
pub fn congruence_diagonalize<T: Scalar>(s: &Matrix<T>) -> Result<CongruenceDiagonal<T>, LinalgError> {
    if !s.is_square() {
        return Err(LinalgError::NotSquare { rows: s.rows(), cols: s.cols() });
    }
    if let Some((i, j)) = s.asymmetry_witness() {
        return Err(LinalgError::NotSymmetric { row: i, col: j });
    }
    let n = s.rows();
    let scale = s.max_abs();
    let mut a = s.clone();
    let mut c = Matrix::identity(n);

    for k in 0..n {
        let diag_pivot = (k..n)
            .filter(|&i| !a[(i, i)].is_negligible(&scale))
            .max_by(|&i, &j| a[(i, i)].abs().partial_cmp(&a[(j, j)].abs()).unwrap_or(std::cmp::Ordering::Equal));
        let p = match diag_pivot {
            Some(p) => p,
            None => {
                let off = (k..n)
                    .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                    .filter(|&(i, j)| !a[(i, j)].is_negligible(&scale))
                    .max_by(|&(i, j), &(x, y)| {
                        a[(i, j)].abs().partial_cmp(&a[(x, y)].abs()).unwrap_or(std::cmp::Ordering::Equal)
                    });
                let Some((i, j)) = off else {
                    break;
                };
                add_basis_vector(&mut a, &mut c, i, j);
                i
            }
        };
        swap_basis_vectors(&mut a, &mut c, k, p);
        let pivot = a[(k, k)].clone();
        for r in k + 1..n {
            if a[(r, k)].is_zero() {
                continue;
            }
            let f = a[(r, k)].clone() / pivot.clone();
            // e_r ← e_r − f e_k
            for j in 0..n {
                let v = a[(k, j)].clone();
                a[(r, j)] = a[(r, j)].clone() - f.clone() * v;
            }
            for i in 0..n {
                let v = a[(i, k)].clone();
                a[(i, r)] = a[(i, r)].clone() - f.clone() * v;
            }
            for i in 0..n {
                let v = c[(i, k)].clone();
                c[(i, r)] = c[(i, r)].clone() - f.clone() * v;
            }
            a[(r, k)] = T::zero();
            a[(k, r)] = T::zero();
        }
    }
    let diagonal = (0..n)
        .map(|i| if a[(i, i)].is_negligible(&scale) { T::zero() } else { a[(i, i)].clone() })
        .collect();
    Ok(CongruenceDiagonal { basis: c, diagonal })
}

/// Counts of positive, negative and zero diagonal entries after congruence
/// diagonalization.
pub fn congruence_signature<T: Scalar>(s: &Matrix<T>) -> Result<Signature, LinalgError> {
    let diag = congruence_diagonalize(s)?.diagonal;
    let mut sig = Signature { positive: 0, negative: 0, zero: 0 };
    for d in &diag {
        if d.is_zero() {
            sig.zero += 1;
        } else if d.is_positive() {
            sig.positive += 1;
        } else {
            sig.negative += 1;
        }
    }
    Ok(sig)
}

// e_i ← e_i + e_j
fn add_basis_vector<T: Scalar>(a: &mut Matrix<T>, c: &mut Matrix<T>, i: usize, j: usize) {
    let n = a.rows();
    for col in 0..n {
        let v = a[(j, col)].clone();
        a[(i, col)] = a[(i, col)].clone() + v;
    }
    for row in 0..n {
        let v = a[(row, j)].clone();
        a[(row, i)] = a[(row, i)].clone() + v;
    }
    for row in 0..n {
        let v = c[(row, j)].clone();
        c[(row, i)] = c[(row, i)].clone() + v;
    }
}

fn swap_basis_vectors<T: Scalar>(a: &mut Matrix<T>, c: &mut Matrix<T>, i: usize, j: usize) {
    if i == j {
        return;
    }
    let n = a.rows();
    for col in 0..n {
        let t = a[(i, col)].clone();
        a[(i, col)] = a[(j, col)].clone();
        a[(j, col)] = t;
    }
    for row in 0..n {
        let t = a[(row, i)].clone();
        a[(row, i)] = a[(row, j)].clone();
        a[(row, j)] = t;
        let t = c[(row, i)].clone();
        c[(row, i)] = c[(row, j)].clone();
        c[(row, j)] = t;
    }
}
