use rand::Rng;

use super::GfhModel;
use crate::poly::Polynomial;
use crate::scalar::Scalar;

fn small_rational<T: Scalar, R: Rng + ?Sized>(rng: &mut R, num: i64, den: i64) -> T {
    T::from_ratio(rng.gen_range(-num..=num), rng.gen_range(1..=den))
}

/// Polynomial in `vars` variables with up to `terms` monomials of total
/// degree at most `max_degree` and coefficients `a/b`, `|a| ≤ 3`, `1 ≤ b ≤ 3`.
pub fn random_polynomial<T: Scalar, R: Rng + ?Sized>(
    rng: &mut R,
    vars: usize,
    max_degree: u32,
    terms: usize,
) -> Polynomial<T> {
    let monomials = (0..terms).map(|_| {
        let degree = rng.gen_range(0..=max_degree);
        let mut e = vec![0u32; vars];
        for _ in 0..degree {
            e[rng.gen_range(0..vars)] += 1;
        }
        (e, small_rational(rng, 3, 3))
    });
    Polynomial::from_terms(vars, monomials.collect::<Vec<_>>())
}

/// Rational point with coordinates `a/b`, `|a| ≤ 5`, `1 ≤ b ≤ 4`.
pub fn random_point<T: Scalar, R: Rng + ?Sized>(rng: &mut R, p: usize) -> Vec<T> {
    (0..2 * p + 2).map(|_| small_rational(rng, 5, 4)).collect()
}

/// Model with random `f`, `h` of degree at most 3 at a random point.
pub fn random_model<T: Scalar, R: Rng + ?Sized>(rng: &mut R, p: usize) -> GfhModel<T> {
    let terms = 2 + p * 2;
    let f = random_polynomial(rng, p, 3, terms);
    let h = random_polynomial(rng, p, 3, terms);
    let point = random_point(rng, p);
    GfhModel::new(p, f, h, point).expect("dimensions agree by construction")
}
