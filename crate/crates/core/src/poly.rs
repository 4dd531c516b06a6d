//! Sparse multivariate polynomials with scalar coefficients.

use std::collections::BTreeMap;
use std::fmt;

use crate::scalar::{Rational, Scalar};

/// Sparse polynomial in a fixed number of variables. Zero coefficients are
/// never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial<T> {
    vars: usize,
    terms: BTreeMap<Vec<u32>, T>,
}

pub type RationalPolynomial = Polynomial<Rational>;

impl<T: Scalar> Polynomial<T> {
    pub fn zero(vars: usize) -> Self {
        Self { vars, terms: BTreeMap::new() }
    }

    pub fn constant(vars: usize, c: T) -> Self {
        Self::from_terms(vars, [(vec![0; vars], c)])
    }

    /// The coordinate function `x_i` (0-based).
    pub fn variable(vars: usize, i: usize) -> Self {
        assert!(i < vars, "variable index out of range");
        let mut e = vec![0; vars];
        e[i] = 1;
        Self::from_terms(vars, [(e, T::one())])
    }

    /// Sums repeated exponent tuples and drops zero coefficients.
    ///
    /// Panics if an exponent tuple has the wrong length.
    pub fn from_terms(vars: usize, terms: impl IntoIterator<Item = (Vec<u32>, T)>) -> Self {
        let mut out = Self::zero(vars);
        for (e, c) in terms {
            assert_eq!(e.len(), vars, "exponent tuple of wrong length");
            out.add_term(e, c);
        }
        out
    }

    fn add_term(&mut self, e: Vec<u32>, c: T) {
        if c.is_zero() {
            return;
        }
        let remove = match self.terms.get_mut(&e) {
            Some(v) => {
                *v = v.clone() + c;
                v.is_zero()
            }
            None => {
                self.terms.insert(e, c);
                false
            }
        };
        if remove {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &T)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.vars, other.vars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-T::one()))
    }

    pub fn scale(&self, s: &T) -> Self {
        if s.is_zero() {
            return Self::zero(self.vars);
        }
        Self { vars: self.vars, terms: self.terms.iter().map(|(e, c)| (e.clone(), c.clone() * s.clone())).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.vars, other.vars);
        let mut out = Self::zero(self.vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca.clone() * cb.clone());
            }
        }
        out
    }

    /// `∂/∂x_i`.
    pub fn partial(&self, i: usize) -> Self {
        let mut out = Self::zero(self.vars);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut d = e.clone();
            d[i] -= 1;
            out.add_term(d, c.clone() * T::from_int(i64::from(e[i])));
        }
        out
    }

    pub fn gradient(&self) -> Vec<Self> {
        (0..self.vars).map(|i| self.partial(i)).collect()
    }

    pub fn eval(&self, x: &[T]) -> T {
        assert_eq!(x.len(), self.vars, "point of wrong dimension");
        self.terms.iter().fold(T::zero(), |acc, (e, c)| {
            let mono = e.iter().zip(x).fold(c.clone(), |m, (&k, xi)| m * pow(xi, k));
            acc + mono
        })
    }

    /// Converts coefficients to another scalar type.
    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Polynomial<U> {
        Polynomial::from_terms(self.vars, self.terms.iter().map(|(e, c)| (e.clone(), f(c))))
    }
}

fn pow<T: Scalar>(x: &T, k: u32) -> T {
    (0..k).fold(T::one(), |acc, _| acc * x.clone())
}

impl<T: Scalar> fmt::Display for Polynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "{}", c.to_report_string())?;
            for (i, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => write!(f, "*x{}", i + 1)?,
                    _ => write!(f, "*x{}^{}", i + 1, k)?,
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn cancellation_drops_terms() {
        let x = RationalPolynomial::variable(2, 0);
        assert!(x.sub(&x).is_zero());
        assert_eq!(x.sub(&x).degree(), None);
    }

    #[test]
    fn product_and_partials() {
        let x = RationalPolynomial::variable(2, 0);
        let y = RationalPolynomial::variable(2, 1);
        let p = x.mul(&x).mul(&y).add(&y.scale(&q(3)));
        assert_eq!(p.degree(), Some(3));
        assert_eq!(p.partial(0), x.mul(&y).scale(&q(2)));
        assert_eq!(p.partial(1), x.mul(&x).add(&RationalPolynomial::constant(2, q(3))));
        assert_eq!(p.eval(&[q(2), q(-1)]), q(-7));
    }

    #[test]
    fn cube_second_derivative() {
        let x = RationalPolynomial::variable(1, 0);
        let cube = x.mul(&x).mul(&x);
        assert_eq!(cube.partial(0).partial(0).eval(&[q(1)]), q(6));
    }
}
