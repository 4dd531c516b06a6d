use super::HypersurfaceError;
use crate::curvature::{CurvatureTensor, EinsteinResult};
use crate::linalg::{determinant, unit_vector, Matrix};
use crate::metric::{associated_metric, frame_from_hint, AdaptedFrame, AssociatedMetric, DegenerateForm, FrameHint};
use crate::scalar::Scalar;

/// Pointwise data of a lightlike hypersurface in a space of constant
/// curvature `c`, in an adapted frame `(ξ, E_1..E_m)`.
///
/// In the frame `ξ = e_0`, `η = e_0*` and `P = diag(0, 1, .., 1)`.
/// `B` is the local second fundamental form, `a[(d, k)]` the `e_d`
/// component of `A_N e_k`.
#[derive(Clone, Debug)]
pub struct HypersurfacePoint<T> {
    m: usize,
    c: T,
    g: Matrix<T>,
    b: Matrix<T>,
    a: Matrix<T>,
    frame: AdaptedFrame<T>,
    metric: AssociatedMetric<T>,
    /// Frame expressed in the coordinates the data was given in, if any.
    working: Option<AdaptedFrame<T>>,
    curvature: CurvatureTensor<T>,
    ricci: Matrix<T>,
}

impl<T: Scalar> HypersurfacePoint<T> {
    /// Builds the point from frame data. `screen_gram` is `m×m`, `b` and
    /// `a` are `(m+1)×(m+1)`.
    pub fn new(c: T, screen_gram: &Matrix<T>, b: Matrix<T>, a: Matrix<T>) -> Result<Self, HypersurfaceError> {
        let m = screen_gram.rows();
        if m == 0 || screen_gram.cols() != m {
            return Err(HypersurfaceError::InvalidData("screen Gram matrix must be square and nonempty".into()));
        }
        if !screen_gram.is_symmetric() {
            return Err(HypersurfaceError::InvalidData("screen Gram matrix is not symmetric".into()));
        }
        if determinant(screen_gram)?.approx_zero() {
            return Err(HypersurfaceError::InvalidData("screen Gram matrix is singular".into()));
        }
        let n = m + 1;
        for (name, mat) in [("B", &b), ("A_N", &a)] {
            if (mat.rows(), mat.cols()) != (n, n) {
                return Err(HypersurfaceError::InvalidData(format!(
                    "{name} must be {n}x{n}, got {}x{}",
                    mat.rows(),
                    mat.cols()
                )));
            }
        }
        if let Some((i, j)) = b.asymmetry_witness() {
            return Err(HypersurfaceError::InvalidData(format!("B is not symmetric at ({i}, {j})")));
        }
        if let Some(j) = (0..n).find(|&j| !b[(0, j)].approx_zero()) {
            return Err(HypersurfaceError::InvalidData(format!("B(ξ, e_{j}) ≠ 0")));
        }
        if let Some(j) = (0..n).find(|&j| !a[(0, j)].approx_zero()) {
            return Err(HypersurfaceError::InvalidData(format!("η(A_N e_{j}) ≠ 0: A_N must be screen-valued")));
        }
        let g = Matrix::from_fn(n, n, |i, j| {
            if i == 0 || j == 0 {
                T::zero()
            } else {
                screen_gram[(i - 1, j - 1)].clone()
            }
        });
        let form = DegenerateForm::new(g.clone())?;
        let hint = FrameHint { radical: vec![unit_vector(n, 0)], screen: (1..n).map(|k| unit_vector(n, k)).collect(), eta: None };
        let frame = frame_from_hint(&form, 1, hint)?;
        let metric = associated_metric(&form, &frame)?;
        let curvature = curvature_from(&c, &g, &b, &a).verified();
        let ricci = ricci_from(m, &c, &g, &b, &a);
        Ok(Self { m, c, g, b, a, frame, metric, working: None, curvature, ricci })
    }

    /// Builds the point from data in arbitrary coordinates: `gram` of radical
    /// rank 1, `b` a bilinear form and `a` an endomorphism (columns are images
    /// of the coordinate vectors). The adapted frame comes from `hint` or is
    /// chosen automatically. `A_N` must take values in the chosen screen, so
    /// the automatic choice only suits data whose shape operator happens to
    /// do so.
    pub fn from_working(
        c: T,
        gram: Matrix<T>,
        b: &Matrix<T>,
        a: &Matrix<T>,
        hint: Option<FrameHint<T>>,
    ) -> Result<Self, HypersurfaceError> {
        let form = DegenerateForm::new(gram)?;
        if form.radical_rank() != 1 {
            return Err(HypersurfaceError::InvalidData(format!(
                "a lightlike hypersurface needs radical rank 1, got {}",
                form.radical_rank()
            )));
        }
        let n = form.dim();
        if (b.rows(), b.cols()) != (n, n) || (a.rows(), a.cols()) != (n, n) {
            return Err(HypersurfaceError::InvalidData(format!("B and A_N must be {n}x{n}")));
        }
        let frame = match hint {
            Some(h) => frame_from_hint(&form, 1, h)?,
            None => crate::metric::build_adapted_frame(&form, 1)?,
        };
        let basis = frame.basis();
        let fb = b.congruent(basis);
        let fa = &(frame.basis_inverse() * a) * basis;
        let mut point = Self::new(c, &frame.screen_gram(), fb, fa)?;
        point.working = Some(frame);
        Ok(point)
    }

    /// Screen dimension; the tangent space has dimension `m + 1`.
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn dim(&self) -> usize {
        self.m + 1
    }

    pub fn c(&self) -> &T {
        &self.c
    }

    /// Frame Gram matrix `diag(0, G_S)`.
    pub fn g(&self) -> &Matrix<T> {
        &self.g
    }

    pub fn b(&self) -> &Matrix<T> {
        &self.b
    }

    pub fn shape_operator(&self) -> &Matrix<T> {
        &self.a
    }

    pub fn xi(&self) -> Vec<T> {
        unit_vector(self.dim(), 0)
    }

    pub fn eta(&self) -> Vec<T> {
        unit_vector(self.dim(), 0)
    }

    pub fn projection(&self) -> Matrix<T> {
        let n = self.dim();
        Matrix::from_fn(n, n, |i, j| if i == j && i > 0 { T::one() } else { T::zero() })
    }

    pub fn frame(&self) -> &AdaptedFrame<T> {
        &self.frame
    }

    pub fn metric(&self) -> &AssociatedMetric<T> {
        &self.metric
    }

    /// The adapted frame in the input coordinates when the point was built
    /// with [`HypersurfacePoint::from_working`].
    pub fn working_frame(&self) -> Option<&AdaptedFrame<T>> {
        self.working.as_ref()
    }

    /// `A_N x`.
    pub fn shape(&self, x: &[T]) -> Vec<T> {
        self.a.mul_vec(x)
    }

    /// `A_N ξ`.
    pub fn shape_xi(&self) -> Vec<T> {
        self.a.column(0)
    }

    pub fn curvature(&self) -> &CurvatureTensor<T> {
        &self.curvature
    }

    pub fn ricci(&self) -> &Matrix<T> {
        &self.ricci
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U + Copy) -> Result<HypersurfacePoint<U>, HypersurfaceError> {
        let gs = self.g.submatrix(1..self.dim(), 1..self.dim()).map(f);
        HypersurfacePoint::new(f(&self.c), &gs, self.b.map(f), self.a.map(f))
    }

    /// `Ric = λ g` test on [`HypersurfacePoint::ricci`].
    pub fn einstein(&self) -> EinsteinResult<T> {
        crate::curvature::einstein_check(&self.ricci, &self.g)
    }
}

/// `op[a][b][c][d]`: the `e_d` component of
/// `R(e_a,e_b)e_c = c{g(e_b,e_c)e_a − g(e_a,e_c)e_b} + B(e_b,e_c)A_N e_a − B(e_a,e_c)A_N e_b`.
fn curvature_from<T: Scalar>(c: &T, g: &Matrix<T>, b: &Matrix<T>, a: &Matrix<T>) -> CurvatureTensor<T> {
    let n = g.rows();
    let delta = |i: usize, j: usize| if i == j { T::one() } else { T::zero() };
    let mut op = Vec::with_capacity(n.pow(4));
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                for d in 0..n {
                    let v = c.clone() * (g[(y, z)].clone() * delta(x, d) - g[(x, z)].clone() * delta(y, d))
                        + b[(y, z)].clone() * a[(d, x)].clone()
                        - b[(x, z)].clone() * a[(d, y)].clone();
                    op.push(v);
                }
            }
        }
    }
    let comps: Vec<T> = op
        .chunks(n)
        .flat_map(|row| (0..n).map(move |w| (0..n).fold(T::zero(), |acc, d| acc + row[d].clone() * g[(d, w)].clone())))
        .collect();
    CurvatureTensor::from_components(n, comps).with_operator(op)
}

/// `Ric(X,Y) = m c g(X,Y) + B(X,Y) tr A_N − B(A_N X, Y)`.
fn ricci_from<T: Scalar>(m: usize, c: &T, g: &Matrix<T>, b: &Matrix<T>, a: &Matrix<T>) -> Matrix<T> {
    let n = g.rows();
    let tr = a.trace();
    let mc = T::from_int(m as i64) * c.clone();
    Matrix::from_fn(n, n, |x, y| {
        let bax = (0..n).fold(T::zero(), |acc, d| acc + a[(d, x)].clone() * b[(d, y)].clone());
        mc.clone() * g[(x, y)].clone() + b[(x, y)].clone() * tr.clone() - bax
    })
}
