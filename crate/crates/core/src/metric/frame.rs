use super::{classify, DegenerateForm, MetricError, SubmanifoldKind};
use crate::linalg::{determinant, dot, invert, rank, unit_vector, Matrix};
use crate::scalar::Scalar;

/// How a frame was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FrameSource {
    /// Greedy pivot completion of the radical by standard basis vectors.
    GreedyScreen,
    /// Supplied by the caller and validated.
    Hint,
}

/// Explicit frame supplied by a caller. Vectors are in working coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct FrameHint<T> {
    pub radical: Vec<Vec<T>>,
    pub screen: Vec<Vec<T>>,
    /// Transversal one-forms; the dual covectors of the radical vectors are
    /// used when absent.
    pub eta: Option<Vec<Vec<T>>>,
}

/// Ordered basis `(ξ_1..ξ_r, E_{r+1}..E_m)` adapted to `TM = Rad ⊥ S(TM)`,
/// together with one-forms `η_i` satisfying `η_i(ξ_j) = δ_ij` and
/// `η_i(E_k) = 0`.
///
/// "Frame components" throughout the crate refer to coordinates with respect
/// to this basis, radical vectors first.
#[derive(Clone, Debug)]
pub struct AdaptedFrame<T> {
    radical: Vec<Vec<T>>,
    screen: Vec<Vec<T>>,
    eta: Vec<Vec<T>>,
    codim: usize,
    kind: SubmanifoldKind,
    source: FrameSource,
    basis: Matrix<T>,
    basis_inverse: Matrix<T>,
    frame_gram: Matrix<T>,
}

impl<T: Scalar> AdaptedFrame<T> {
    /// Ambient codimension `n` the frame was built for.
    pub fn codim(&self) -> usize {
        self.codim
    }

    pub fn kind(&self) -> SubmanifoldKind {
        self.kind
    }

    pub fn source(&self) -> FrameSource {
        self.source
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn radical_rank(&self) -> usize {
        self.radical.len()
    }

    pub fn radical(&self) -> &[Vec<T>] {
        &self.radical
    }

    pub fn screen(&self) -> &[Vec<T>] {
        &self.screen
    }

    pub fn eta(&self) -> &[Vec<T>] {
        &self.eta
    }

    /// Columns are the frame vectors in working coordinates.
    pub fn basis(&self) -> &Matrix<T> {
        &self.basis
    }

    pub fn basis_inverse(&self) -> &Matrix<T> {
        &self.basis_inverse
    }

    /// Components of `g` in the frame: block diagonal `diag(0_r, G_screen)`.
    pub fn frame_gram(&self) -> &Matrix<T> {
        &self.frame_gram
    }

    /// Gram matrix of `g` restricted to the screen vectors.
    pub fn screen_gram(&self) -> Matrix<T> {
        let r = self.radical_rank();
        let m = self.dim();
        self.frame_gram.submatrix(r..m, r..m)
    }

    /// Working coordinates → frame components.
    pub fn to_frame(&self, v: &[T]) -> Vec<T> {
        self.basis_inverse.mul_vec(v)
    }

    /// Frame components → working coordinates.
    pub fn from_frame(&self, c: &[T]) -> Vec<T> {
        self.basis.mul_vec(c)
    }

    /// Screen projection `P` in working coordinates: `X − Σ η_i(X) ξ_i`.
    pub fn project_screen(&self, x: &[T]) -> Vec<T> {
        let mut out = x.to_vec();
        for (xi, eta) in self.radical.iter().zip(&self.eta) {
            let c = dot(eta, x);
            for (o, v) in out.iter_mut().zip(xi) {
                *o = o.clone() - c.clone() * v.clone();
            }
        }
        out
    }
}

/// Builds the default adapted frame of `g` for ambient codimension `n`.
///
/// The screen is completed greedily from standard basis vectors: at each step
/// the candidate independent of the radical and the screen chosen so far with
/// the largest absolute Schur pivot is taken; if every candidate has zero
/// pivot, the pair with the largest off-diagonal Schur entry is added as a
/// 2×2 block. Ties go to the lowest index, so the result is deterministic.
pub fn build_adapted_frame<T: Scalar>(g: &DegenerateForm<T>, n: usize) -> Result<AdaptedFrame<T>, MetricError> {
    let m = g.dim();
    let r = g.radical_rank();
    let gram = g.gram();
    let scale = gram.max_abs();
    let radical = g.radical().to_vec();
    let mut screen: Vec<Vec<T>> = Vec::new();

    while screen.len() < m - r {
        let mut spanned: Vec<Vec<T>> = radical.iter().chain(&screen).cloned().collect();
        let base_rank = spanned.len();
        let candidates: Vec<usize> = (0..m)
            .filter(|&k| {
                spanned.push(unit_vector(m, k));
                let independent = rank(&Matrix::from_columns(m, &spanned)) > base_rank;
                spanned.pop();
                independent
            })
            .collect();
        let projected: Vec<Vec<T>> = candidates.iter().map(|&k| project_off(gram, &screen, &unit_vector(m, k))).collect();

        let mut best: Option<(usize, T)> = None;
        for (idx, v) in projected.iter().enumerate() {
            let s = gram.bilinear(v, v);
            if s.is_negligible(&scale) {
                continue;
            }
            if best.as_ref().map_or(true, |(_, b)| s.abs() > *b) {
                best = Some((idx, s.abs()));
            }
        }
        if let Some((idx, _)) = best {
            screen.push(unit_vector(m, candidates[idx]));
            continue;
        }

        let mut best_pair: Option<(usize, usize, T)> = None;
        for a in 0..projected.len() {
            for b in a + 1..projected.len() {
                let s = gram.bilinear(&projected[a], &projected[b]);
                if s.is_negligible(&scale) {
                    continue;
                }
                if best_pair.as_ref().map_or(true, |(_, _, v)| s.abs() > *v) {
                    best_pair = Some((a, b, s.abs()));
                }
            }
        }
        match best_pair {
            Some((a, b, _)) if screen.len() + 2 <= m - r => {
                screen.push(unit_vector(m, candidates[a]));
                screen.push(unit_vector(m, candidates[b]));
            }
            _ => return Err(MetricError::ScreenNotCertified),
        }
    }

    assemble(g, n, radical, screen, None, FrameSource::GreedyScreen)
}

/// Validates a caller-supplied frame against every adapted-frame invariant.
pub fn frame_from_hint<T: Scalar>(
    g: &DegenerateForm<T>,
    n: usize,
    hint: FrameHint<T>,
) -> Result<AdaptedFrame<T>, MetricError> {
    let m = g.dim();
    if hint.radical.iter().chain(&hint.screen).any(|v| v.len() != m) {
        return Err(MetricError::InvalidFrame("frame vector of wrong length".into()));
    }
    if hint.radical.len() != g.radical_rank() {
        return Err(MetricError::InvalidFrame(format!(
            "{} radical vectors supplied, radical rank is {}",
            hint.radical.len(),
            g.radical_rank()
        )));
    }
    for (i, xi) in hint.radical.iter().enumerate() {
        if !g.gram().mul_vec(xi).iter().all(Scalar::approx_zero) {
            return Err(MetricError::InvalidFrame(format!("radical vector {i} is not annihilated by g")));
        }
    }
    if hint.screen.len() != m - g.radical_rank() {
        return Err(MetricError::InvalidFrame(format!(
            "{} screen vectors supplied, expected {}",
            hint.screen.len(),
            m - g.radical_rank()
        )));
    }
    assemble(g, n, hint.radical, hint.screen, hint.eta, FrameSource::Hint)
}

fn assemble<T: Scalar>(
    g: &DegenerateForm<T>,
    n: usize,
    radical: Vec<Vec<T>>,
    screen: Vec<Vec<T>>,
    eta: Option<Vec<Vec<T>>>,
    source: FrameSource,
) -> Result<AdaptedFrame<T>, MetricError> {
    let m = g.dim();
    let r = radical.len();
    let kind = classify(m, n, r)?;
    let columns: Vec<Vec<T>> = radical.iter().chain(&screen).cloned().collect();
    let basis = Matrix::from_columns(m, &columns);
    let basis_inverse =
        invert(&basis).map_err(|_| MetricError::InvalidFrame("frame vectors are not a basis".into()))?;
    let frame_gram = g.gram().congruent(&basis);
    let screen_gram = frame_gram.submatrix(r..m, r..m);
    if m > r && determinant(&screen_gram)?.approx_zero() {
        return Err(MetricError::InvalidFrame("screen Gram matrix is singular".into()));
    }
    let dual: Vec<Vec<T>> = (0..r).map(|i| basis_inverse.row(i).to_vec()).collect();
    let eta = match eta {
        None => dual,
        Some(eta) => {
            if eta.len() != r || eta.iter().any(|e| e.len() != m) {
                return Err(MetricError::InvalidFrame("wrong number or length of η covectors".into()));
            }
            for (i, e) in eta.iter().enumerate() {
                for (j, v) in columns.iter().enumerate() {
                    let expected = if i == j { T::one() } else { T::zero() };
                    if !dot(e, v).approx_eq(&expected) {
                        return Err(MetricError::InvalidFrame(format!(
                            "η_{} evaluates to {} on frame vector {j}",
                            i + 1,
                            dot(e, v).to_report_string()
                        )));
                    }
                }
            }
            eta
        }
    };
    Ok(AdaptedFrame { radical, screen, eta, codim: n, kind, source, basis, basis_inverse, frame_gram })
}

// v − S G_S⁻¹ Sᵀ g v: removes the g-component of v along the screen vectors
fn project_off<T: Scalar>(gram: &Matrix<T>, screen: &[Vec<T>], v: &[T]) -> Vec<T> {
    if screen.is_empty() {
        return v.to_vec();
    }
    let m = gram.rows();
    let s = Matrix::from_columns(m, screen);
    let gs = gram.congruent(&s);
    let rhs: Vec<T> = screen.iter().map(|e| gram.bilinear(e, v)).collect();
    let coeffs = invert(&gs).expect("chosen screen is nondegenerate").mul_vec(&rhs);
    let correction = s.mul_vec(&coeffs);
    v.iter().zip(correction).map(|(a, b)| a.clone() - b).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn form(rows: Vec<Vec<i64>>) -> DegenerateForm<Rational> {
        DegenerateForm::new(Matrix::from_rows(rows.into_iter().map(|r| r.into_iter().map(q).collect()).collect()).unwrap())
            .unwrap()
    }

    #[test]
    fn diagonal_degenerate_form() {
        let g = DegenerateForm::new(Matrix::from_diagonal(&[q(0), q(0), q(1), q(-1)])).unwrap();
        let f = build_adapted_frame(&g, 2).unwrap();
        assert_eq!(f.radical(), &[unit_vector(4, 0), unit_vector(4, 1)]);
        assert_eq!(f.screen(), &[unit_vector(4, 2), unit_vector(4, 3)]);
        assert_eq!(f.eta(), &[unit_vector(4, 0), unit_vector(4, 1)]);
        assert_eq!(f.kind(), SubmanifoldKind::Coisotropic);
    }

    #[test]
    fn nondegenerate_form_keeps_input_basis() {
        let g = form(vec![vec![2, 1, 0], vec![1, -1, 0], vec![0, 0, 3]]);
        let f = build_adapted_frame(&g, 1).unwrap();
        assert!(f.radical().is_empty());
        assert!(f.eta().is_empty());
        let mut screen = f.screen().to_vec();
        screen.sort_by_key(|v| v.iter().position(|x| *x == q(1)));
        assert_eq!(screen, vec![unit_vector(3, 0), unit_vector(3, 1), unit_vector(3, 2)]);
    }

    #[test]
    fn hyperbolic_block_needs_pair_fallback() {
        // radical e0; the rest is a hyperbolic plane with zero diagonal
        let g = form(vec![vec![0, 0, 0], vec![0, 0, 1], vec![0, 1, 0]]);
        let f = build_adapted_frame(&g, 1).unwrap();
        assert_eq!(f.screen(), &[unit_vector(3, 1), unit_vector(3, 2)]);
        assert_eq!(f.kind(), SubmanifoldKind::Coisotropic);
    }

    #[test]
    fn frame_invariants_hold_on_tilted_radical() {
        let g = form(vec![vec![1, 1, 0], vec![1, 1, 0], vec![0, 0, -2]]);
        let f = build_adapted_frame(&g, 1).unwrap();
        assert_eq!(f.radical_rank(), 1);
        let xi = &f.radical()[0];
        assert!(g.gram().mul_vec(xi).iter().all(|x| *x == q(0)));
        assert_eq!(dot(&f.eta()[0], xi), q(1));
        for e in f.screen() {
            assert_eq!(dot(&f.eta()[0], e), q(0));
        }
    }

    #[test]
    fn hint_validation_rejects_bad_frames() {
        let g = DegenerateForm::new(Matrix::from_diagonal(&[q(0), q(1), q(-1)])).unwrap();
        let bad_radical = FrameHint { radical: vec![unit_vector(3, 1)], screen: vec![unit_vector(3, 0), unit_vector(3, 2)], eta: None };
        assert!(frame_from_hint(&g, 1, bad_radical).is_err());
        let dependent = FrameHint { radical: vec![unit_vector(3, 0)], screen: vec![unit_vector(3, 1), unit_vector(3, 1)], eta: None };
        assert!(frame_from_hint(&g, 1, dependent).is_err());
        let bad_eta = FrameHint {
            radical: vec![unit_vector(3, 0)],
            screen: vec![unit_vector(3, 1), unit_vector(3, 2)],
            eta: Some(vec![vec![q(1), q(1), q(0)]]),
        };
        assert!(frame_from_hint(&g, 1, bad_eta).is_err());
        let good = FrameHint {
            radical: vec![unit_vector(3, 0)],
            screen: vec![vec![q(1), q(1), q(0)], unit_vector(3, 2)],
            eta: None,
        };
        let f = frame_from_hint(&g, 1, good).unwrap();
        // η must annihilate the tilted screen vector
        assert_eq!(f.eta()[0], vec![q(1), q(-1), q(0)]);
        assert_eq!(f.source(), FrameSource::Hint);
    }

    #[test]
    fn screen_projection_kills_radical() {
        let g = form(vec![vec![1, 1, 0], vec![1, 1, 0], vec![0, 0, -2]]);
        let f = build_adapted_frame(&g, 1).unwrap();
        let p = f.project_screen(&f.radical()[0]);
        assert!(p.iter().all(|x| *x == q(0)));
        for e in f.screen() {
            assert_eq!(&f.project_screen(e), e);
        }
    }
}
