use rand::Rng;

use super::{build_umbilical, HypersurfacePoint};
use crate::curvature::random_symmetric;
use crate::linalg::{determinant, invert, Matrix};
use crate::scalar::Scalar;

/// `a/b` with `1 ≤ |a| ≤ 3`, `1 ≤ b ≤ 3`.
fn nonzero_rational<T: Scalar, R: Rng + ?Sized>(rng: &mut R) -> T {
    let a = rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 };
    T::from_ratio(a, rng.gen_range(1..=3))
}

/// Nonsingular symmetric integer matrix with entries in `[-3, 3]`.
pub fn random_screen_gram<T: Scalar, R: Rng + ?Sized>(rng: &mut R, m: usize) -> Matrix<T> {
    loop {
        let s: Matrix<T> = random_symmetric(rng, m, 3);
        if !determinant(&s).expect("square").is_zero() {
            return s;
        }
    }
}

/// `B` symmetric with integer entries in `[-3, 3]` and row/column `ξ` zero.
fn random_b<T: Scalar, R: Rng + ?Sized>(rng: &mut R, n: usize) -> Matrix<T> {
    let s: Matrix<T> = random_symmetric(rng, n, 3);
    Matrix::from_fn(n, n, |i, j| if i == 0 || j == 0 { T::zero() } else { s[(i, j)].clone() })
}

/// `A_N` with integer entries in `[-3, 3]` post-composed with `P`.
fn random_shape<T: Scalar, R: Rng + ?Sized>(rng: &mut R, n: usize) -> Matrix<T> {
    let mut a = Matrix::zeros(n, n);
    for d in 1..n {
        for k in 0..n {
            a[(d, k)] = T::from_int(rng.gen_range(-3..=3));
        }
    }
    a
}

/// Unconstrained data with `c` a random nonzero rational.
pub fn random_hypersurface<T: Scalar, R: Rng + ?Sized>(rng: &mut R, m: usize) -> HypersurfacePoint<T> {
    let gs = random_screen_gram(rng, m);
    let c = nonzero_rational(rng);
    let (b, a) = (random_b(rng, m + 1), random_shape(rng, m + 1));
    HypersurfacePoint::new(c, &gs, b, a).expect("generated data satisfies the invariants")
}

/// `B = ρ g`, `A_N = λ P` with nonzero `c`, `ρ`, `λ`.
pub fn random_umbilical<T: Scalar, R: Rng + ?Sized>(rng: &mut R, m: usize) -> HypersurfacePoint<T> {
    let gs = random_screen_gram(rng, m);
    let (c, rho, lambda) = (nonzero_rational(rng), nonzero_rational(rng), nonzero_rational(rng));
    build_umbilical(m, c, rho, lambda, &gs).expect("screen Gram is nonsingular")
}

/// Data with `B(A_N ξ, ·) = 0`, `g(A_N ξ, A_N ξ) ≠ 0` and `B ≠ 0`; needs
/// `m ≥ 2`.
///
/// `a = A_N ξ` is a random non-null screen vector and `B = Qᵀ B₀ Q` with
/// `Q = I − a e_kᵀ / a_k`, so that `Q a = 0`.
pub fn random_osserman_constrained<T: Scalar, R: Rng + ?Sized>(rng: &mut R, m: usize) -> HypersurfacePoint<T> {
    assert!(m >= 2, "a nonzero B orthogonal to a screen vector needs m ≥ 2");
    let n = m + 1;
    loop {
        let gs: Matrix<T> = random_screen_gram(rng, m);
        let mut a = random_shape(rng, n);
        let axi = a.column(0);
        let g = Matrix::from_fn(n, n, |i, j| if i == 0 || j == 0 { T::zero() } else { gs[(i - 1, j - 1)].clone() });
        if g.bilinear(&axi, &axi).is_zero() {
            continue;
        }
        let k = (1..n).find(|&k| !axi[k].is_zero()).expect("non-null vector is nonzero");
        let q = Matrix::from_fn(n, n, |i, j| {
            let id = if i == j { T::one() } else { T::zero() };
            if j == k {
                id - axi[i].clone() / axi[k].clone()
            } else {
                id
            }
        });
        let b = random_b(rng, n).congruent(&q);
        if b.is_zero_matrix() {
            continue;
        }
        for d in 0..n {
            a[(d, 0)] = axi[d].clone();
        }
        return HypersurfacePoint::new(nonzero_rational(rng), &gs, b, a).expect("generated data satisfies the invariants");
    }
}

/// Einstein data with algebraic curvature, drawn from one of four families:
/// umbilical; `B = 0`; rank-one `B` with `A_N = φ G_S⁻¹ B`, `A_N ξ = 0`; and
/// for `m = 2` any `B` with `A_N = φ G_S⁻¹ B`, `A_N ξ = 0`.
pub fn random_einstein<T: Scalar, R: Rng + ?Sized>(rng: &mut R, m: usize) -> HypersurfacePoint<T> {
    let n = m + 1;
    let families = if m == 2 { 4 } else { 3 };
    match rng.gen_range(0..families) {
        0 => random_umbilical(rng, m),
        1 => {
            let gs = random_screen_gram(rng, m);
            let a = random_shape(rng, n);
            HypersurfacePoint::new(nonzero_rational(rng), &gs, Matrix::zeros(n, n), a)
                .expect("generated data satisfies the invariants")
        }
        family => {
            let gs = random_screen_gram(rng, m);
            let bs: Matrix<T> = if family == 2 {
                let l: Vec<T> = loop {
                    let l: Vec<T> = (0..m).map(|_| T::from_int(rng.gen_range(-3..=3))).collect();
                    if l.iter().any(|v| !v.is_zero()) {
                        break l;
                    }
                };
                let s: T = nonzero_rational(rng);
                Matrix::from_fn(m, m, |i, j| s.clone() * l[i].clone() * l[j].clone())
            } else {
                random_symmetric(rng, m, 3)
            };
            let phi: T = nonzero_rational(rng);
            let shape = (&invert(&gs).expect("nonsingular") * &bs).scale(&phi);
            let lift = |s: &Matrix<T>| {
                Matrix::from_fn(n, n, |i, j| if i == 0 || j == 0 { T::zero() } else { s[(i - 1, j - 1)].clone() })
            };
            HypersurfacePoint::new(nonzero_rational(rng), &gs, lift(&bs), lift(&shape))
                .expect("generated data satisfies the invariants")
        }
    }
}
