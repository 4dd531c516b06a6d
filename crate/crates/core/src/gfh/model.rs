use super::GfhError;
use crate::curvature::{CurvatureTensor, JacobiOperator};
use crate::linalg::{unit_vector, Matrix};
use crate::metric::{associated_metric, frame_from_hint, AdaptedFrame, AssociatedMetric, DegenerateForm, FrameHint};
use crate::poly::Polynomial;
use crate::scalar::Scalar;

/// The 2-degenerate metric `g_(f,h)` on `ℝ × 𝒪 × ℝ^{p+1}` at one point.
///
/// Coordinates are `(x_0..x_p, y_0..y_p)`: `x_a` has index `a` and `y_a` has
/// index `p + 1 + a`. `f` and `h` are polynomials in `x_1..x_p`.
#[derive(Clone, Debug, PartialEq)]
pub struct GfhModel<T> {
    p: usize,
    f: Polynomial<T>,
    h: Polynomial<T>,
    point: Vec<T>,
}

/// The standard frames at a point, all in coordinate components except `n`,
/// which lives in the ambient basis `(u_0..u_p, v_0..v_p, w_1, w_2)`.
#[derive(Clone, Debug, PartialEq)]
pub struct GfhFrames<T> {
    pub xi: [Vec<T>; 2],
    pub u: Vec<Vec<T>>,
    pub v: Vec<Vec<T>>,
    pub n: [Vec<T>; 2],
    /// `η_a = ḡ(N_a, ·)` restricted to the tangent space, as coordinate
    /// covectors.
    pub eta: [Vec<T>; 2],
}

impl<T: Scalar> GfhFrames<T> {
    /// `(ξ1, ξ2, U_1..U_p, V_1..V_p)`.
    pub fn ordered(&self) -> Vec<Vec<T>> {
        let mut out = vec![self.xi[0].clone(), self.xi[1].clone()];
        out.extend(self.u.iter().cloned());
        out.extend(self.v.iter().cloned());
        out
    }

    pub fn hint(&self) -> FrameHint<T> {
        let mut screen = self.u.clone();
        screen.extend(self.v.iter().cloned());
        FrameHint { radical: self.xi.to_vec(), screen, eta: Some(self.eta.to_vec()) }
    }
}

impl<T: Scalar> GfhModel<T> {
    pub fn new(p: usize, f: Polynomial<T>, h: Polynomial<T>, point: Vec<T>) -> Result<Self, GfhError> {
        if p == 0 {
            return Err(GfhError::InvalidModel("p must be at least 1".into()));
        }
        if f.vars() != p || h.vars() != p {
            return Err(GfhError::InvalidModel(format!(
                "f and h must be polynomials in {p} variables (got {} and {})",
                f.vars(),
                h.vars()
            )));
        }
        if point.len() != 2 * p + 2 {
            return Err(GfhError::InvalidModel(format!(
                "point must have {} coordinates, got {}",
                2 * p + 2,
                point.len()
            )));
        }
        Ok(Self { p, f, h, point })
    }

    /// Same polynomials at another point.
    pub fn at(&self, point: Vec<T>) -> Result<Self, GfhError> {
        Self::new(self.p, self.f.clone(), self.h.clone(), point)
    }

    pub fn p(&self) -> usize {
        self.p
    }

    /// Tangent dimension `2p + 2`.
    pub fn dim(&self) -> usize {
        2 * self.p + 2
    }

    pub fn f(&self) -> &Polynomial<T> {
        &self.f
    }

    pub fn h(&self) -> &Polynomial<T> {
        &self.h
    }

    pub fn point(&self) -> &[T] {
        &self.point
    }

    /// `(x_1, .., x_p)`, where `f` and `h` are evaluated.
    pub fn inner_point(&self) -> &[T] {
        &self.point[1..=self.p]
    }

    /// `(∂_i f, ∂_i h)` at the point, `i = 1..p`.
    pub fn gradients(&self) -> (Vec<T>, Vec<T>) {
        let x = self.inner_point();
        let grad = |q: &Polynomial<T>| q.gradient().iter().map(|d| d.eval(x)).collect();
        (grad(&self.f), grad(&self.h))
    }

    /// `F[i][j] = ∂_i ∂_j f` and `H[i][j] = ∂_i ∂_j h` at the point.
    pub fn hessians(&self) -> (Matrix<T>, Matrix<T>) {
        let x = self.inner_point();
        let hess = |q: &Polynomial<T>| {
            let g = q.gradient();
            Matrix::from_fn(self.p, self.p, |i, j| g[i].partial(j).eval(x))
        };
        (hess(&self.f), hess(&self.h))
    }

    /// Coordinate index of `x_a`.
    pub fn x_index(&self, a: usize) -> usize {
        a
    }

    /// Coordinate index of `y_a`.
    pub fn y_index(&self, a: usize) -> usize {
        self.p + 1 + a
    }

    /// Gram matrix of `g_(f,h)` in the coordinate frame.
    pub fn metric_matrix(&self) -> DegenerateForm<T> {
        let p = self.p;
        let (df, dh) = self.gradients();
        let mut g: Matrix<T> = Matrix::zeros(self.dim(), self.dim());
        for i in 1..=p {
            let xi = self.x_index(i);
            g[(0, xi)] = df[i - 1].clone();
            g[(xi, 0)] = df[i - 1].clone();
            let y0 = self.y_index(0);
            g[(xi, y0)] = dh[i - 1].clone();
            g[(y0, xi)] = dh[i - 1].clone();
            for j in 1..=p {
                g[(xi, self.x_index(j))] =
                    df[i - 1].clone() * df[j - 1].clone() + dh[i - 1].clone() * dh[j - 1].clone();
            }
            let yi = self.y_index(i);
            g[(xi, yi)] = T::one();
            g[(yi, xi)] = T::one();
        }
        DegenerateForm::new(g).expect("g_(f,h) is symmetric by construction")
    }

    pub fn frames(&self) -> GfhFrames<T> {
        let p = self.p;
        let m = self.dim();
        let (df, dh) = self.gradients();
        let mut xi1: Vec<T> = unit_vector(m, self.x_index(0));
        let mut xi2: Vec<T> = unit_vector(m, self.y_index(0));
        for i in 1..=p {
            xi1[self.y_index(i)] = -df[i - 1].clone();
            xi2[self.y_index(i)] = -dh[i - 1].clone();
        }
        let u = (1..=p)
            .map(|i| {
                let mut v: Vec<T> = unit_vector(m, self.x_index(i));
                v[self.x_index(0)] = -df[i - 1].clone();
                v[self.y_index(0)] = -dh[i - 1].clone();
                v
            })
            .collect();
        let v = (1..=p).map(|i| unit_vector(m, self.y_index(i))).collect();
        let amb = 2 * p + 4;
        let half = T::half();
        let n = [0usize, 1].map(|a| {
            let xi = if a == 0 { &xi1 } else { &xi2 };
            let mut out = super::ambient::push_forward(p, &df, &dh, xi);
            for o in out.iter_mut() {
                *o = -half.clone() * o.clone();
            }
            out[amb - 2 + a] = out[amb - 2 + a].clone() + T::one();
            out
        });
        let eta = [0usize, 1].map(|a| super::ambient::pull_back_covector(p, &df, &dh, &n[a]));
        GfhFrames { xi: [xi1, xi2], u, v, n, eta }
    }

    /// The standard frame validated as an adapted frame of codimension 2,
    /// with `g̃` built from `η_a = ḡ(N_a, ·)`.
    pub fn adapted_frame(&self) -> Result<(AdaptedFrame<T>, AssociatedMetric<T>), GfhError> {
        let g = self.metric_matrix();
        let frame = frame_from_hint(&g, 2, self.frames().hint())?;
        let metric = associated_metric(&g, &frame)?;
        Ok((frame, metric))
    }

    /// Frame index of `ξ_a` (`a = 0, 1`), `U_i` and `V_i` (`i = 1..p`).
    pub fn xi_slot(&self, a: usize) -> usize {
        a
    }

    pub fn u_slot(&self, i: usize) -> usize {
        1 + i
    }

    pub fn v_slot(&self, i: usize) -> usize {
        1 + self.p + i
    }

    /// Gram matrix of `g` in the frame `(ξ1, ξ2, U, V)`:
    /// `g(U_i,U_j) = −(∂_i f ∂_j f + ∂_i h ∂_j h)`, `g(U_i,V_j) = δ_ij`, the
    /// rest zero.
    pub fn frame_gram(&self) -> Matrix<T> {
        let p = self.p;
        let (df, dh) = self.gradients();
        let mut g: Matrix<T> = Matrix::zeros(self.dim(), self.dim());
        for i in 1..=p {
            for j in 1..=p {
                g[(self.u_slot(i), self.u_slot(j))] =
                    -(df[i - 1].clone() * df[j - 1].clone() + dh[i - 1].clone() * dh[j - 1].clone());
            }
            g[(self.u_slot(i), self.v_slot(i))] = T::one();
            g[(self.v_slot(i), self.u_slot(i))] = T::one();
        }
        g
    }

    /// `(h¹, h²)` on `U`-indices: the Hessians of `f` and `h`.
    pub fn second_fundamental(&self) -> (Matrix<T>, Matrix<T>) {
        self.hessians()
    }

    /// `table[a][b]` = frame components of `∇_{E_a} E_b`.
    pub fn connection_coefficients(&self) -> Vec<Vec<Vec<T>>> {
        let p = self.p;
        let m = self.dim();
        let (df, dh) = self.gradients();
        let (ff, hh) = self.hessians();
        let mut table = vec![vec![vec![T::zero(); m]; m]; m];
        let half = T::half();
        for i in 1..=p {
            for j in 1..=p {
                let (fij, hij) = (ff[(i - 1, j - 1)].clone(), hh[(i - 1, j - 1)].clone());
                let e = &mut table[self.u_slot(i)][self.u_slot(j)];
                e[0] = -half.clone() * fij.clone();
                e[1] = -half.clone() * hij.clone();
                for k in 1..=p {
                    e[self.v_slot(k)] = -(fij.clone() * df[k - 1].clone() + hij.clone() * dh[k - 1].clone());
                }
                table[self.u_slot(i)][0][self.v_slot(j)] = -fij;
                table[self.u_slot(i)][1][self.v_slot(j)] = -hij;
            }
        }
        table
    }

    /// `½{f_ik f_jl − f_jk f_il + h_ik h_jl − h_jk h_il}` (0-based `i..l`).
    fn closed_form_entry(ff: &Matrix<T>, hh: &Matrix<T>, i: usize, j: usize, k: usize, l: usize) -> T {
        T::half()
            * (ff[(i, k)].clone() * ff[(j, l)].clone() - ff[(j, k)].clone() * ff[(i, l)].clone()
                + hh[(i, k)].clone() * hh[(j, l)].clone()
                - hh[(j, k)].clone() * hh[(i, l)].clone())
    }

    /// Closed-form curvature in the frame, with the operator form
    /// `R(U_i,U_j)U_k = Σ_l (…) V_l`. Symmetry status is unverified.
    pub fn curvature_closed_form(&self) -> CurvatureTensor<T> {
        let p = self.p;
        let m = self.dim();
        let (ff, hh) = self.hessians();
        let mut comps = vec![T::zero(); m.pow(4)];
        let mut op = vec![T::zero(); m.pow(4)];
        let flat = |a: usize, b: usize, c: usize, d: usize| ((a * m + b) * m + c) * m + d;
        for i in 1..=p {
            for j in 1..=p {
                for k in 1..=p {
                    for l in 1..=p {
                        let v = Self::closed_form_entry(&ff, &hh, i - 1, j - 1, k - 1, l - 1);
                        if v.is_zero() {
                            continue;
                        }
                        let (ui, uj, uk) = (self.u_slot(i), self.u_slot(j), self.u_slot(k));
                        comps[flat(ui, uj, uk, self.u_slot(l))] = v.clone();
                        op[flat(ui, uj, uk, self.v_slot(l))] = v;
                    }
                }
            }
        }
        CurvatureTensor::from_components(m, comps).with_operator(op)
    }

    /// Curvature computed twice (closed form and Gauss equation from the
    /// embedding); any disagreement is an error. Returns the verified
    /// closed-form tensor.
    pub fn curvature(&self) -> Result<CurvatureTensor<T>, GfhError> {
        let closed = self.curvature_closed_form();
        let gauss = super::ambient::gauss_curvature(self);
        compare_routes(&closed, &gauss)?;
        Ok(closed.verified())
    }

    /// Closed-form `J_R(X)` for `X` in frame components: column `U_i` holds
    /// `Σ_l Φ_li V_l`, everything else is zero.
    pub fn jacobi_matrix(&self, x: &[T]) -> Result<JacobiOperator<T>, GfhError> {
        let p = self.p;
        let m = self.dim();
        if x.len() != m {
            return Err(GfhError::InvalidModel(format!("direction must have {m} components, got {}", x.len())));
        }
        let (ff, hh) = self.hessians();
        let xs: Vec<T> = (1..=p).map(|j| x[self.u_slot(j)].clone()).collect();
        let mut mat: Matrix<T> = Matrix::zeros(m, m);
        for l in 0..p {
            for i in 0..p {
                let mut phi = T::zero();
                for j in (0..p).filter(|&j| !xs[j].is_zero()) {
                    for k in (0..p).filter(|&k| !xs[k].is_zero()) {
                        phi = phi + xs[j].clone() * xs[k].clone() * Self::closed_form_entry(&ff, &hh, i, j, k, l);
                    }
                }
                mat[(self.v_slot(l + 1), self.u_slot(i + 1))] = phi;
            }
        }
        let q = self.frame_gram().bilinear(x, x);
        Ok(JacobiOperator { direction: x.to_vec(), q, matrix: mat })
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U + Copy) -> GfhModel<U> {
        GfhModel { p: self.p, f: self.f.map(f), h: self.h.map(f), point: self.point.iter().map(f).collect() }
    }
}

/// First component where the two tensors differ.
pub fn compare_routes<T: Scalar>(closed: &CurvatureTensor<T>, gauss: &CurvatureTensor<T>) -> Result<(), GfhError> {
    let m = closed.dim();
    for (flat, (a, b)) in closed.components().iter().zip(gauss.components()).enumerate() {
        if !a.approx_eq(b) {
            let idx = [flat / (m * m * m), (flat / (m * m)) % m, (flat / m) % m, flat % m];
            return Err(GfhError::RouteDisagreement {
                indices: idx,
                closed_form: a.to_report_string(),
                gauss: b.to_report_string(),
            });
        }
    }
    Ok(())
}
