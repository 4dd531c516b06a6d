//! The embedding `F(x,y) = Σ x_a u_a + Σ y_a v_a + f w_1 + h w_2` into the
//! flat ambient space, used as an independent oracle for the model.
//!
//! Ambient basis order: `u_0..u_p` (indices `0..=p`), `v_0..v_p`
//! (`p+1..=2p+1`), `w_1`, `w_2` (`2p+2`, `2p+3`).

use super::GfhModel;
use crate::curvature::CurvatureTensor;
use crate::linalg::{dot, invert, Matrix};
use crate::poly::Polynomial;
use crate::scalar::Scalar;

pub fn ambient_dim(p: usize) -> usize {
    2 * p + 4
}

fn u(_p: usize, a: usize) -> usize {
    a
}

fn v(p: usize, a: usize) -> usize {
    p + 1 + a
}

fn w(p: usize, a: usize) -> usize {
    2 * p + 1 + a
}

/// Gram matrix of `ḡ`: `ḡ(u_0,w_1) = ḡ(v_0,w_2) = 1`, `ḡ(u_i,v_j) = δ_ij`
/// for `i,j ≥ 1`, `ḡ(w_i,w_j) = δ_ij`, every other pairing zero.
pub fn ambient_gram<T: Scalar>(p: usize) -> Matrix<T> {
    let n = ambient_dim(p);
    let mut g: Matrix<T> = Matrix::zeros(n, n);
    let mut set = |i: usize, j: usize| {
        g[(i, j)] = T::one();
        g[(j, i)] = T::one();
    };
    set(u(p, 0), w(p, 1));
    set(v(p, 0), w(p, 2));
    for i in 1..=p {
        set(u(p, i), v(p, i));
    }
    set(w(p, 1), w(p, 1));
    set(w(p, 2), w(p, 2));
    g
}

/// Ambient images of the coordinate vectors as columns:
/// `∂_0^x → u_0`, `∂_i^x → u_i + ∂_i f w_1 + ∂_i h w_2`, `∂_a^y → v_a`.
pub fn push_forward_matrix<T: Scalar>(p: usize, df: &[T], dh: &[T]) -> Matrix<T> {
    let mut b: Matrix<T> = Matrix::zeros(ambient_dim(p), 2 * p + 2);
    for a in 0..=p {
        b[(u(p, a), a)] = T::one();
        b[(v(p, a), p + 1 + a)] = T::one();
    }
    for i in 1..=p {
        b[(w(p, 1), i)] = df[i - 1].clone();
        b[(w(p, 2), i)] = dh[i - 1].clone();
    }
    b
}

pub fn push_forward<T: Scalar>(p: usize, df: &[T], dh: &[T], x: &[T]) -> Vec<T> {
    push_forward_matrix(p, df, dh).mul_vec(x)
}

/// Coordinate covector `X ↦ ḡ(n, F_* X)`.
pub fn pull_back_covector<T: Scalar>(p: usize, df: &[T], dh: &[T], n: &[T]) -> Vec<T> {
    let gn = ambient_gram::<T>(p).mul_vec(n);
    push_forward_matrix(p, df, dh).transpose().mul_vec(&gn)
}

/// `F^* ḡ` in the coordinate frame.
pub fn pullback_gram<T: Scalar>(model: &GfhModel<T>) -> Matrix<T> {
    let (df, dh) = model.gradients();
    ambient_gram::<T>(model.p()).congruent(&push_forward_matrix(model.p(), &df, &dh))
}

/// Ambient vector field with polynomial components in `x_1..x_p`.
type Field<T> = Vec<Polynomial<T>>;

/// Frame fields `(ξ1, ξ2, U_1..U_p, V_1..V_p)` and `(N_1, N_2)` as ambient
/// polynomial fields.
pub fn frame_fields<T: Scalar>(model: &GfhModel<T>) -> (Vec<Field<T>>, [Field<T>; 2]) {
    let p = model.p();
    let n = ambient_dim(p);
    let zero = Polynomial::zero(p);
    let one = Polynomial::constant(p, T::one());
    let df = model.f().gradient();
    let dh = model.h().gradient();
    let mut xi1 = vec![zero.clone(); n];
    let mut xi2 = vec![zero.clone(); n];
    xi1[u(p, 0)] = one.clone();
    xi2[v(p, 0)] = one.clone();
    for i in 1..=p {
        xi1[v(p, i)] = df[i - 1].scale(&-T::one());
        xi2[v(p, i)] = dh[i - 1].scale(&-T::one());
    }
    let mut tangent = vec![xi1.clone(), xi2.clone()];
    for i in 1..=p {
        let mut ui = vec![zero.clone(); n];
        ui[u(p, i)] = one.clone();
        ui[w(p, 1)] = df[i - 1].clone();
        ui[w(p, 2)] = dh[i - 1].clone();
        ui[u(p, 0)] = df[i - 1].scale(&-T::one());
        ui[v(p, 0)] = dh[i - 1].scale(&-T::one());
        tangent.push(ui);
    }
    for i in 1..=p {
        let mut vi = vec![zero.clone(); n];
        vi[v(p, i)] = one.clone();
        tangent.push(vi);
    }
    let minus_half = -T::half();
    let normal = |xi: &Field<T>, a: usize| {
        let mut out: Field<T> = xi.iter().map(|c| c.scale(&minus_half)).collect();
        out[w(p, a)] = out[w(p, a)].add(&one);
        out
    };
    let transversal = [normal(&xi1, 1), normal(&xi2, 2)];
    (tangent, transversal)
}

fn eval_field<T: Scalar>(field: &Field<T>, x: &[T]) -> Vec<T> {
    field.iter().map(|c| c.eval(x)).collect()
}

/// Flat derivative `D_X Y` at the model point; `x` holds coordinate
/// components of `X`. Only `x_1..x_p` enter the fields.
fn flat_derivative<T: Scalar>(model: &GfhModel<T>, x: &[T], field: &Field<T>) -> Vec<T> {
    let p = model.p();
    let pt = model.inner_point();
    let mut out = vec![T::zero(); field.len()];
    for i in 1..=p {
        let xi = &x[model.x_index(i)];
        if xi.is_zero() {
            continue;
        }
        for (o, c) in out.iter_mut().zip(field) {
            *o = o.clone() + xi.clone() * c.partial(i - 1).eval(pt);
        }
    }
    out
}

/// Everything the oracle routes need at the model point.
struct AmbientData<T> {
    gram: Matrix<T>,
    /// Ambient vectors of the tangent frame.
    frame: Vec<Vec<T>>,
    normals: [Vec<T>; 2],
    /// `D_{E_a} E_b` as ambient vectors.
    d_frame: Vec<Vec<Vec<T>>>,
    /// `D_{E_a} N_i`.
    d_normal: Vec<[Vec<T>; 2]>,
}

fn ambient_data<T: Scalar>(model: &GfhModel<T>) -> AmbientData<T> {
    let pt = model.inner_point();
    let (tangent, transversal) = frame_fields(model);
    let coords = model.frames().ordered();
    let frame: Vec<Vec<T>> = tangent.iter().map(|f| eval_field(f, pt)).collect();
    let normals = [eval_field(&transversal[0], pt), eval_field(&transversal[1], pt)];
    let d_frame = coords.iter().map(|x| tangent.iter().map(|f| flat_derivative(model, x, f)).collect()).collect();
    let d_normal = coords
        .iter()
        .map(|x| [flat_derivative(model, x, &transversal[0]), flat_derivative(model, x, &transversal[1])])
        .collect();
    AmbientData { gram: ambient_gram(model.p()), frame, normals, d_frame, d_normal }
}

/// Second fundamental forms `h_i(E_a, E_b) = −ḡ(D_{E_a} ξ_i, E_b)` over the
/// full tangent frame.
pub fn ambient_second_fundamental<T: Scalar>(model: &GfhModel<T>) -> [Matrix<T>; 2] {
    let d = ambient_data(model);
    let m = model.dim();
    [0usize, 1].map(|i| {
        Matrix::from_fn(m, m, |a, b| -d.gram.bilinear(&d.d_frame[a][i], &d.frame[b]))
    })
}

/// `h_i(E_a, E_b) = ḡ(D_{E_a} E_b, ξ_i)`, the transversal side of the
/// Gauss formula.
pub fn ambient_second_fundamental_gauss<T: Scalar>(model: &GfhModel<T>) -> [Matrix<T>; 2] {
    let d = ambient_data(model);
    let m = model.dim();
    [0usize, 1].map(|i| Matrix::from_fn(m, m, |a, b| d.gram.bilinear(&d.d_frame[a][b], &d.frame[i])))
}

/// Tangential part of `D_{E_a} E_b`, decomposed in the ambient frame
/// `(ξ1, ξ2, U, V, N_1, N_2)`.
pub fn ambient_connection<T: Scalar>(model: &GfhModel<T>) -> Vec<Vec<Vec<T>>> {
    let d = ambient_data(model);
    let m = model.dim();
    let mut cols = d.frame.clone();
    cols.extend(d.normals.iter().cloned());
    let basis = Matrix::from_columns(ambient_dim(model.p()), &cols);
    let inv = invert(&basis).expect("quasi-orthogonal ambient frame is a basis");
    d.d_frame
        .iter()
        .map(|row| row.iter().map(|vec| inv.mul_vec(vec)[..m].to_vec()).collect())
        .collect()
}

/// Curvature from the Gauss equation in a flat ambient with trivial screen
/// transversal part:
/// `R(X,Y,Z,W) = Σ_i [h_i(Y,Z) ḡ(A_{N_i}X, W) − h_i(X,Z) ḡ(A_{N_i}Y, W)]`
/// for screen `W`, and zero for radical `W` since `g(·, ξ) = 0`.
/// `ḡ(A_{N_i}X, W) = −ḡ(D_X N_i, W)`.
pub fn gauss_curvature<T: Scalar>(model: &GfhModel<T>) -> CurvatureTensor<T> {
    let d = ambient_data(model);
    let m = model.dim();
    let h = [0usize, 1].map(|i| Matrix::from_fn(m, m, |a, b| -d.gram.bilinear(&d.d_frame[a][i], &d.frame[b])));
    let shape = [0usize, 1].map(|i| {
        Matrix::from_fn(m, m, |a, b| {
            let gw = d.gram.mul_vec(&d.frame[b]);
            -dot(&d.d_normal[a][i], &gw)
        })
    });
    CurvatureTensor::from_fn(m, |x, y, z, w| {
        if w < 2 {
            return T::zero();
        }
        (0..2).fold(T::zero(), |acc, i| {
            acc + h[i][(y, z)].clone() * shape[i][(x, w)].clone() - h[i][(x, z)].clone() * shape[i][(y, w)].clone()
        })
    })
}

/// `ḡ(N_i, ξ_j)` and `ḡ(N_i, N_j)` at the point.
pub fn normal_pairings<T: Scalar>(model: &GfhModel<T>) -> (Matrix<T>, Matrix<T>) {
    let d = ambient_data(model);
    (
        Matrix::from_fn(2, 2, |i, j| d.gram.bilinear(&d.normals[i], &d.frame[j])),
        Matrix::from_fn(2, 2, |i, j| d.gram.bilinear(&d.normals[i], &d.normals[j])),
    )
}
