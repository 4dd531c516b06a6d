use std::fmt;

use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// Which line of the algebraic curvature identities failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SymmetryIdentity {
    /// `R(x,y,z,w) = −R(y,x,z,w)`
    Antisymmetry,
    /// `R(x,y,z,w) = R(z,w,x,y)`
    PairSymmetry,
    /// `R(x,y,z,w) + R(y,z,x,w) + R(z,x,y,w) = 0`
    FirstBianchi,
}

impl SymmetryIdentity {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Antisymmetry => "antisymmetry",
            Self::PairSymmetry => "pair symmetry",
            Self::FirstBianchi => "first Bianchi",
        }
    }

    /// Component quadruples entering the identity anchored at `q`.
    pub fn terms(&self, [a, b, c, d]: [usize; 4]) -> Vec<[usize; 4]> {
        match self {
            Self::Antisymmetry => vec![[a, b, c, d], [b, a, c, d]],
            Self::PairSymmetry => vec![[a, b, c, d], [c, d, a, b]],
            Self::FirstBianchi => vec![[a, b, c, d], [b, c, a, d], [c, a, b, d]],
        }
    }
}

impl fmt::Display for SymmetryIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SymmetryStatus {
    Unverified,
    Verified,
    /// First failing quadruple; see [`check_curvature_symmetries`].
    Violated { indices: [usize; 4], identity: SymmetryIdentity },
}

impl SymmetryStatus {
    pub fn is_verified(&self) -> bool {
        matches!(self, Self::Verified)
    }
}

/// Rank-4 array `R[a][b][c][d] = R(e_a, e_b, e_c, e_d)` in a frame.
///
/// Optionally carries the (1,3) form `op[a][b][c][d]`, the `e_d` component of
/// `R(e_a, e_b) e_c`. Degenerate metrics lose information when lowering, so
/// the operator form is kept whenever the producer knows it.
#[derive(Clone, Debug, PartialEq)]
pub struct CurvatureTensor<T> {
    dim: usize,
    comps: Vec<T>,
    op: Option<Vec<T>>,
    status: SymmetryStatus,
}

fn flat_index(m: usize, a: usize, b: usize, c: usize, d: usize) -> usize {
    ((a * m + b) * m + c) * m + d
}

impl<T: Scalar> CurvatureTensor<T> {
    pub fn zeros(dim: usize) -> Self {
        Self { dim, comps: vec![T::zero(); dim.pow(4)], op: None, status: SymmetryStatus::Unverified }
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize, usize, usize) -> T) -> Self {
        let mut t = Self::zeros(dim);
        for a in 0..dim {
            for b in 0..dim {
                for c in 0..dim {
                    for d in 0..dim {
                        t.comps[flat_index(dim, a, b, c, d)] = f(a, b, c, d);
                    }
                }
            }
        }
        t
    }

    /// Panics unless `comps.len() == dim⁴`.
    pub fn from_components(dim: usize, comps: Vec<T>) -> Self {
        assert_eq!(comps.len(), dim.pow(4), "component count must be dim^4");
        Self { dim, comps, op: None, status: SymmetryStatus::Unverified }
    }

    /// Attaches the (1,3) form. Panics on a length mismatch.
    pub fn with_operator(mut self, op: Vec<T>) -> Self {
        assert_eq!(op.len(), self.dim.pow(4), "operator entry count must be dim^4");
        self.op = Some(op);
        self
    }

    /// `c (g(y,z) g(x,w) − g(x,z) g(y,w))`.
    pub fn constant_curvature(g: &Matrix<T>, c: &T) -> Self {
        Self::from_fn(g.rows(), |a, b, cc, d| {
            c.clone() * (g[(b, cc)].clone() * g[(a, d)].clone() - g[(a, cc)].clone() * g[(b, d)].clone())
        })
    }

    /// Kulkarni–Nomizu product of two symmetric forms, normalized so that
    /// `kulkarni_nomizu(g, g) / 2` is the unit constant-curvature tensor.
    pub fn kulkarni_nomizu(h: &Matrix<T>, k: &Matrix<T>) -> Self {
        Self::from_fn(h.rows(), |a, b, c, d| {
            h[(b, c)].clone() * k[(a, d)].clone() + h[(a, d)].clone() * k[(b, c)].clone()
                - h[(a, c)].clone() * k[(b, d)].clone()
                - h[(b, d)].clone() * k[(a, c)].clone()
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, a: usize, b: usize, c: usize, d: usize) -> &T {
        &self.comps[flat_index(self.dim, a, b, c, d)]
    }

    /// Overwrites one component; the symmetry status returns to unverified.
    pub fn set(&mut self, a: usize, b: usize, c: usize, d: usize, v: T) {
        self.comps[flat_index(self.dim, a, b, c, d)] = v;
        self.status = SymmetryStatus::Unverified;
    }

    pub fn components(&self) -> &[T] {
        &self.comps
    }

    pub fn operator(&self) -> Option<&[T]> {
        self.op.as_deref()
    }

    /// `e_d` component of `R(e_a, e_b) e_c`, when the operator form is known.
    pub fn op_get(&self, a: usize, b: usize, c: usize, d: usize) -> Option<&T> {
        self.op.as_ref().map(|op| &op[flat_index(self.dim, a, b, c, d)])
    }

    pub fn status(&self) -> &SymmetryStatus {
        &self.status
    }

    /// Runs the symmetry checker and records the result.
    pub fn verify(&mut self) -> &SymmetryStatus {
        self.status = check_curvature_symmetries(self);
        &self.status
    }

    pub fn verified(mut self) -> Self {
        self.verify();
        self
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Scalar::approx_zero)
    }

    pub fn max_abs(&self) -> T {
        self.comps.iter().fold(T::zero(), |acc, x| if x.abs() > acc { x.abs() } else { acc })
    }

    /// `R(x, y, z, w)` for frame vectors.
    pub fn eval(&self, x: &[T], y: &[T], z: &[T], w: &[T]) -> T {
        let m = self.dim;
        let mut acc = T::zero();
        for a in (0..m).filter(|&a| !x[a].is_zero()) {
            for b in (0..m).filter(|&b| !y[b].is_zero()) {
                let xy = x[a].clone() * y[b].clone();
                for c in (0..m).filter(|&c| !z[c].is_zero()) {
                    let xyz = xy.clone() * z[c].clone();
                    for d in (0..m).filter(|&d| !w[d].is_zero()) {
                        let r = self.get(a, b, c, d);
                        if !r.is_zero() {
                            acc = acc + xyz.clone() * w[d].clone() * r.clone();
                        }
                    }
                }
            }
        }
        acc
    }

    /// `R(x, y) z` from the operator form.
    pub fn apply(&self, x: &[T], y: &[T], z: &[T]) -> Option<Vec<T>> {
        let op = self.op.as_ref()?;
        let m = self.dim;
        let mut out = vec![T::zero(); m];
        for a in (0..m).filter(|&a| !x[a].is_zero()) {
            for b in (0..m).filter(|&b| !y[b].is_zero()) {
                let xy = x[a].clone() * y[b].clone();
                for c in (0..m).filter(|&c| !z[c].is_zero()) {
                    let xyz = xy.clone() * z[c].clone();
                    for (d, o) in out.iter_mut().enumerate() {
                        let r = &op[flat_index(m, a, b, c, d)];
                        if !r.is_zero() {
                            *o = o.clone() + xyz.clone() * r.clone();
                        }
                    }
                }
            }
        }
        Some(out)
    }

    /// Whether lowering the operator form with `g` reproduces the components.
    /// `true` when no operator form is attached.
    pub fn operator_consistent(&self, g: &Matrix<T>) -> bool {
        let Some(op) = &self.op else { return true };
        let m = self.dim;
        (0..m.pow(3)).all(|abc| {
            (0..m).all(|e| {
                let lowered = (0..m).fold(T::zero(), |acc, d| acc + op[abc * m + d].clone() * g[(d, e)].clone());
                lowered.approx_eq(&self.comps[abc * m + e])
            })
        })
    }

    /// Components with respect to the basis whose vectors are the columns of
    /// `basis` (expressed in the current frame). The operator form is dropped.
    pub fn change_basis(&self, basis: &Matrix<T>) -> Self {
        let m = self.dim;
        assert_eq!((basis.rows(), basis.cols()), (m, m), "basis must be m x m");
        let mut cur = self.comps.clone();
        // Contract one slot at a time; slot k has stride m^(3-k).
        for slot in 0..4 {
            let stride = m.pow(3 - slot as u32);
            let mut next = vec![T::zero(); cur.len()];
            for (flat, out) in next.iter_mut().enumerate() {
                let new_idx = (flat / stride) % m;
                let base = flat - new_idx * stride;
                let mut acc = T::zero();
                for old in 0..m {
                    let b = &basis[(old, new_idx)];
                    if !b.is_zero() {
                        acc = acc + b.clone() * cur[base + old * stride].clone();
                    }
                }
                *out = acc;
            }
            cur = next;
        }
        Self::from_components(m, cur)
    }

    pub fn scale(&self, s: &T) -> Self {
        Self {
            dim: self.dim,
            comps: self.comps.iter().map(|x| x.clone() * s.clone()).collect(),
            op: self.op.as_ref().map(|op| op.iter().map(|x| x.clone() * s.clone()).collect()),
            status: SymmetryStatus::Unverified,
        }
    }

    /// Componentwise sum; operator forms are summed only when both exist.
    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let op = match (&self.op, &other.op) {
            (Some(a), Some(b)) => Some(a.iter().zip(b).map(|(x, y)| x.clone() + y.clone()).collect()),
            _ => None,
        };
        Self {
            dim: self.dim,
            comps: self.comps.iter().zip(&other.comps).map(|(x, y)| x.clone() + y.clone()).collect(),
            op,
            status: SymmetryStatus::Unverified,
        }
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> CurvatureTensor<U> {
        CurvatureTensor {
            dim: self.dim,
            comps: self.comps.iter().map(&f).collect(),
            op: self.op.as_ref().map(|op| op.iter().map(&f).collect()),
            status: SymmetryStatus::Unverified,
        }
    }
}

/// Tests antisymmetry, pair symmetry and the first Bianchi identity on every
/// index quadruple. Identities are checked in that order, each over all
/// quadruples in lexicographic order; the first failure is returned.
pub fn check_curvature_symmetries<T: Scalar>(r: &CurvatureTensor<T>) -> SymmetryStatus {
    let m = r.dim();
    let scale = r.max_abs();
    let quads = || {
        (0..m).flat_map(move |a| (0..m).flat_map(move |b| (0..m).flat_map(move |c| (0..m).map(move |d| [a, b, c, d]))))
    };
    for identity in [SymmetryIdentity::Antisymmetry, SymmetryIdentity::PairSymmetry, SymmetryIdentity::FirstBianchi] {
        for q in quads() {
            let [a, b, c, d] = q;
            let residual = match identity {
                SymmetryIdentity::Antisymmetry => r.get(a, b, c, d).clone() + r.get(b, a, c, d).clone(),
                SymmetryIdentity::PairSymmetry => r.get(a, b, c, d).clone() - r.get(c, d, a, b).clone(),
                SymmetryIdentity::FirstBianchi => {
                    r.get(a, b, c, d).clone() + r.get(b, c, a, d).clone() + r.get(c, a, b, d).clone()
                }
            };
            if !residual.is_negligible(&scale) {
                return SymmetryStatus::Violated { indices: q, identity };
            }
        }
    }
    SymmetryStatus::Verified
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn zero_tensor_verifies() {
        assert_eq!(check_curvature_symmetries(&CurvatureTensor::<Rational>::zeros(3)), SymmetryStatus::Verified);
    }

    #[test]
    fn constant_curvature_verifies() {
        let g = Matrix::from_diagonal(&[q(1), q(-1), q(2)]);
        let r = CurvatureTensor::constant_curvature(&g, &q(3)).verified();
        assert!(r.status().is_verified());
        assert_eq!(r.get(0, 1, 1, 0), &q(-3));
    }

    #[test]
    fn kulkarni_nomizu_of_metric_is_twice_constant_curvature() {
        let g = Matrix::from_diagonal(&[q(1), q(1), q(-1), q(1)]);
        let kn = CurvatureTensor::kulkarni_nomizu(&g, &g);
        assert_eq!(kn, CurvatureTensor::constant_curvature(&g, &q(2)));
    }

    #[test]
    fn diagonal_perturbation_breaks_antisymmetry() {
        let mut r = CurvatureTensor::<Rational>::zeros(2);
        r.set(1, 1, 0, 1, q(1));
        assert_eq!(
            check_curvature_symmetries(&r),
            SymmetryStatus::Violated { indices: [1, 1, 0, 1], identity: SymmetryIdentity::Antisymmetry }
        );
        let mut r = CurvatureTensor::<Rational>::zeros(3);
        r.set(2, 0, 1, 2, q(1));
        match check_curvature_symmetries(&r) {
            SymmetryStatus::Violated { indices, identity } => {
                assert_eq!(identity, SymmetryIdentity::Antisymmetry);
                assert!(identity.terms(indices).contains(&[2, 0, 1, 2]));
            }
            other => panic!("expected a violation, got {other:?}"),
        }
    }

    #[test]
    fn change_basis_matches_multilinear_eval() {
        let g = Matrix::from_rows(vec![vec![q(1), q(2), q(0)], vec![q(2), q(0), q(1)], vec![q(0), q(1), q(-1)]]).unwrap();
        let h = Matrix::from_diagonal(&[q(1), q(3), q(-2)]);
        let r = CurvatureTensor::kulkarni_nomizu(&g, &h);
        let basis = Matrix::from_rows(vec![vec![q(1), q(1), q(0)], vec![q(0), q(1), q(2)], vec![q(-1), q(0), q(1)]]).unwrap();
        let moved = r.change_basis(&basis);
        let cols: Vec<Vec<Rational>> = (0..3).map(|j| basis.column(j)).collect();
        for (a, b, c, d) in [(0, 1, 2, 0), (1, 2, 1, 2), (2, 0, 0, 1)] {
            assert_eq!(moved.get(a, b, c, d), &r.eval(&cols[a], &cols[b], &cols[c], &cols[d]));
        }
    }
}
