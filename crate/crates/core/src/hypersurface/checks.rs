use super::{HypersurfaceError, HypersurfacePoint};
use crate::curvature::{CurvatureTensor, EinsteinResult, SymmetryStatus};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// A frame tuple (indices into `(ξ, E_1..E_m)`) and the nonzero residual
/// found there.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness<T> {
    pub frame: Vec<usize>,
    pub value: T,
}

/// Outcome of an exhaustive check; `witness` is set exactly when the
/// property fails.
#[derive(Clone, Debug, PartialEq)]
pub struct Check<T> {
    pub holds: bool,
    pub witness: Option<Witness<T>>,
}

impl<T> Check<T> {
    fn from_witness(witness: Option<Witness<T>>) -> Self {
        Self { holds: witness.is_none(), witness }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ScreenConformal<T> {
    /// `g(A_N X, PY) = φ B(X, PY)` on every frame pair.
    Factor(T),
    /// `B = 0`, so every `φ` works only if `g(A_N X, PY) = 0`; no factor is
    /// reported.
    Indeterminate,
    /// `g(A_N X, PY) − φ B(X, PY)` at the witness pair, with `φ` read off the
    /// first pair where `B(X, PY) ≠ 0`.
    NotConformal(Witness<T>),
}

impl<T> ScreenConformal<T> {
    pub fn factor(&self) -> Option<&T> {
        match self {
            Self::Factor(phi) => Some(phi),
            _ => None,
        }
    }
}

/// Curvature tensor of the point, with its operator form.
pub fn induced_curvature<T: Scalar>(p: &HypersurfacePoint<T>) -> CurvatureTensor<T> {
    p.curvature().clone()
}

/// `Ric(X,Y) = m c g(X,Y) + B(X,Y) tr A_N − B(A_N X, Y)` in the frame.
pub fn ricci_h<T: Scalar>(p: &HypersurfacePoint<T>) -> Matrix<T> {
    p.ricci().clone()
}

/// First entry `(i, j)` with `Ric(e_i,e_j) ≠ Ric(e_j,e_i)`.
pub fn ricci_asymmetry<T: Scalar>(p: &HypersurfacePoint<T>) -> Option<Witness<T>> {
    p.ricci().asymmetry_witness().map(|(i, j)| Witness {
        frame: vec![i, j],
        value: p.ricci()[(i, j)].clone() - p.ricci()[(j, i)].clone(),
    })
}

/// The covector `X ↦ B(A_N ξ, X)`.
pub fn osserman_constraint_residual<T: Scalar>(p: &HypersurfacePoint<T>) -> Vec<T> {
    let a = p.shape_xi();
    (0..p.dim()).map(|x| p.b().bilinear(&a, &crate::linalg::unit_vector(p.dim(), x))).collect()
}

/// `c {B(V,Y) η(X) − B(V,X) η(Y)}`.
pub fn local_symmetry_obstruction<T: Scalar>(p: &HypersurfacePoint<T>, v: &[T], x: &[T], y: &[T]) -> T {
    let b = p.b();
    p.c().clone() * (b.bilinear(v, y) * x[0].clone() - b.bilinear(v, x) * y[0].clone())
}

/// Derivation action `(R(V1,V2)·R)(X,Y,Z,T)`:
/// `−R(R(V1,V2)X,Y,Z,T) − R(X,R(V1,V2)Y,Z,T) − R(X,Y,R(V1,V2)Z,T) − R(X,Y,Z,R(V1,V2)T)`.
///
/// When `X` is a multiple of `ξ` the value is also computed from
/// [`semi_symmetry_closed_form`]; a mismatch is an error.
#[allow(clippy::too_many_arguments)]
pub fn semi_symmetry_residual<T: Scalar>(
    p: &HypersurfacePoint<T>,
    v1: &[T],
    v2: &[T],
    x: &[T],
    y: &[T],
    z: &[T],
    t: &[T],
) -> Result<T, HypersurfaceError> {
    let r = p.curvature();
    let l = |u: &[T]| r.apply(v1, v2, u).expect("hypersurface curvature carries its operator form");
    let four = -(r.eval(&l(x), y, z, t) + r.eval(x, &l(y), z, t) + r.eval(x, y, &l(z), t) + r.eval(x, y, z, &l(t)));
    if x[1..].iter().all(Scalar::approx_zero) {
        let closed = x[0].clone() * semi_symmetry_closed_form(p, v1, v2, y, z, t);
        if !closed.approx_eq(&four) {
            return Err(HypersurfaceError::RouteDisagreement {
                tuple: "vector arguments".into(),
                four_term: four.to_report_string(),
                closed_form: closed.to_report_string(),
            });
        }
    }
    Ok(four)
}

/// `(R(V1,V2)·R)(ξ,X,Y,Z)` expanded in `g`, `B`, `A_N` and `a = A_N ξ`:
///
/// ```text
/// c{ B(V2,Y)g(V1,X)g(a,Z) − B(V1,Y)g(V2,X)g(a,Z) − B(X,V1)g(V2,Y)g(a,Z)
///  + B(X,V2)g(V1,Y)g(a,Z) − B(X,Y)g(a,V1)g(V2,Z) + B(X,Y)g(a,V2)g(V1,Z) }
/// − B(V2,X)B(A V1,Y)g(a,Z) + B(V1,X)B(A V2,Y)g(a,Z) − B(X,A V1)B(V2,Y)g(a,Z)
/// + B(X,A V2)B(V1,Y)g(a,Z) − B(X,Y)B(V2,Z)g(a,A V1) + B(X,Y)B(V1,Z)g(a,A V2)
/// ```
pub fn semi_symmetry_closed_form<T: Scalar>(
    p: &HypersurfacePoint<T>,
    v1: &[T],
    v2: &[T],
    x: &[T],
    y: &[T],
    z: &[T],
) -> T {
    let g = |u: &[T], w: &[T]| p.g().bilinear(u, w);
    let b = |u: &[T], w: &[T]| p.b().bilinear(u, w);
    let a = p.shape_xi();
    let (av1, av2) = (p.shape(v1), p.shape(v2));
    let gaz = g(&a, z);
    let curv = b(v2, y) * g(v1, x) * gaz.clone() - b(v1, y) * g(v2, x) * gaz.clone() - b(x, v1) * g(v2, y) * gaz.clone()
        + b(x, v2) * g(v1, y) * gaz.clone()
        - b(x, y) * g(&a, v1) * g(v2, z)
        + b(x, y) * g(&a, v2) * g(v1, z);
    p.c().clone() * curv - b(v2, x) * b(&av1, y) * gaz.clone() + b(v1, x) * b(&av2, y) * gaz.clone()
        - b(x, &av1) * b(v2, y) * gaz.clone()
        + b(x, &av2) * b(v1, y) * gaz
        - b(x, y) * b(v2, z) * g(&a, &av1)
        + b(x, y) * b(v1, z) * g(&a, &av2)
}

/// `−Ric(R(V1,V2)X, Y) − Ric(X, R(V1,V2)Y)`.
pub fn ricci_semi_symmetry_residual<T: Scalar>(p: &HypersurfacePoint<T>, v1: &[T], v2: &[T], x: &[T], y: &[T]) -> T {
    let r = p.curvature();
    let l = |u: &[T]| r.apply(v1, v2, u).expect("hypersurface curvature carries its operator form");
    let ric = p.ricci();
    -(ric.bilinear(&l(x), y) + ric.bilinear(x, &l(y)))
}

/// Tests `g(A_N X, PY) = φ B(X, PY)` on all frame pairs.
pub fn screen_conformal_check<T: Scalar>(p: &HypersurfacePoint<T>) -> ScreenConformal<T> {
    let n = p.dim();
    let (g, b, a) = (p.g(), p.b(), p.shape_operator());
    // PY = e_y for y ≥ 1 and 0 for y = 0
    let lhs = |x: usize, y: usize| (0..n).fold(T::zero(), |acc, d| acc + a[(d, x)].clone() * g[(d, y)].clone());
    let pairs = || (0..n).flat_map(|x| (1..n).map(move |y| (x, y)));
    let Some((x0, y0)) = pairs().find(|&(x, y)| !b[(x, y)].approx_zero()) else {
        return ScreenConformal::Indeterminate;
    };
    let phi = lhs(x0, y0) / b[(x0, y0)].clone();
    for (x, y) in pairs() {
        let residual = lhs(x, y) - phi.clone() * b[(x, y)].clone();
        if !residual.approx_zero() {
            return ScreenConformal::NotConformal(Witness { frame: vec![x, y], value: residual });
        }
    }
    ScreenConformal::Factor(phi)
}

/// `M = k·base` for a single `k`, read off the first nonzero entry of `base`.
fn proportional<T: Scalar>(mat: &Matrix<T>, base: &Matrix<T>) -> Result<T, Witness<T>> {
    let n = mat.rows();
    let entries = || (0..n).flat_map(|i| (0..n).map(move |j| (i, j)));
    let k = entries()
        .find(|&(i, j)| !base[(i, j)].approx_zero())
        .map(|(i, j)| mat[(i, j)].clone() / base[(i, j)].clone())
        .unwrap_or_else(T::zero);
    for (i, j) in entries() {
        let residual = mat[(i, j)].clone() - k.clone() * base[(i, j)].clone();
        if !residual.approx_zero() {
            return Err(Witness { frame: vec![i, j], value: residual });
        }
    }
    Ok(k)
}

/// `R(V1,V2)` as a matrix: `l[(d, x)]` is the `e_d` component of `R(e_v1,e_v2)e_x`.
fn endomorphism<T: Scalar>(r: &CurvatureTensor<T>, v1: usize, v2: usize) -> Matrix<T> {
    let n = r.dim();
    Matrix::from_fn(n, n, |d, x| r.op_get(v1, v2, x, d).expect("operator form").clone())
}

/// Nonzero entries of each column of `l`.
fn sparse_columns<T: Scalar>(l: &Matrix<T>) -> Vec<Vec<(usize, T)>> {
    (0..l.cols())
        .map(|x| (0..l.rows()).filter(|&e| !l[(e, x)].is_zero()).map(|e| (e, l[(e, x)].clone())).collect())
        .collect()
}

/// Result of the exhaustive semi-symmetry scan.
#[derive(Clone, Debug, PartialEq)]
pub struct SemiSymmetryScan<T> {
    /// First frame tuple `(V1,V2,X,Y,Z,T)` in lexicographic order with a
    /// nonzero residual.
    pub check: Check<T>,
    pub tuples: usize,
    /// Tuples with `X = ξ` on which the closed form was compared.
    pub closed_form_tuples: usize,
}

/// Evaluates the derivation action on every frame 6-tuple and compares the
/// `X = ξ` slice with the closed form.
pub fn semi_symmetry_scan<T: Scalar>(p: &HypersurfacePoint<T>) -> Result<SemiSymmetryScan<T>, HypersurfaceError> {
    let n = p.dim();
    let r = p.curvature();
    let (g, b, a) = (p.g(), p.b(), p.shape_operator());
    let c = p.c();
    let av = a.clone();
    // tables for the closed form: g(a, e_k), B(A e_v, e_k), g(a, A e_v)
    let axi = a.column(0);
    let ga: Vec<T> = (0..n).map(|k| (0..n).fold(T::zero(), |s, d| s + axi[d].clone() * g[(d, k)].clone())).collect();
    let bav = Matrix::from_fn(n, n, |v, k| (0..n).fold(T::zero(), |s, d| s + av[(d, v)].clone() * b[(d, k)].clone()));
    let gaav: Vec<T> = (0..n).map(|v| (0..n).fold(T::zero(), |s, d| s + ga[d].clone() * av[(d, v)].clone())).collect();
    let closed = |v1: usize, v2: usize, x: usize, y: usize, z: usize| -> T {
        let gaz = &ga[z];
        let curv = b[(v2, y)].clone() * g[(v1, x)].clone() * gaz.clone()
            - b[(v1, y)].clone() * g[(v2, x)].clone() * gaz.clone()
            - b[(x, v1)].clone() * g[(v2, y)].clone() * gaz.clone()
            + b[(x, v2)].clone() * g[(v1, y)].clone() * gaz.clone()
            - b[(x, y)].clone() * ga[v1].clone() * g[(v2, z)].clone()
            + b[(x, y)].clone() * ga[v2].clone() * g[(v1, z)].clone();
        c.clone() * curv - b[(v2, x)].clone() * bav[(v1, y)].clone() * gaz.clone()
            + b[(v1, x)].clone() * bav[(v2, y)].clone() * gaz.clone()
            - bav[(v1, x)].clone() * b[(v2, y)].clone() * gaz.clone()
            + bav[(v2, x)].clone() * b[(v1, y)].clone() * gaz.clone()
            - b[(x, y)].clone() * b[(v2, z)].clone() * gaav[v1].clone()
            + b[(x, y)].clone() * b[(v1, z)].clone() * gaav[v2].clone()
    };
    let mut witness = None;
    let mut closed_form_tuples = 0;
    for v1 in 0..n {
        for v2 in 0..n {
            let cols = sparse_columns(&endomorphism(r, v1, v2));
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        for t in 0..n {
                            let mut acc = T::zero();
                            for (e, l) in &cols[x] {
                                acc = acc + l.clone() * r.get(*e, y, z, t).clone();
                            }
                            for (e, l) in &cols[y] {
                                acc = acc + l.clone() * r.get(x, *e, z, t).clone();
                            }
                            for (e, l) in &cols[z] {
                                acc = acc + l.clone() * r.get(x, y, *e, t).clone();
                            }
                            for (e, l) in &cols[t] {
                                acc = acc + l.clone() * r.get(x, y, z, *e).clone();
                            }
                            let value = -acc;
                            if x == 0 {
                                let expected = closed(v1, v2, y, z, t);
                                if !expected.approx_eq(&value) {
                                    return Err(HypersurfaceError::RouteDisagreement {
                                        tuple: format!("{:?}", [v1, v2, x, y, z, t]),
                                        four_term: value.to_report_string(),
                                        closed_form: expected.to_report_string(),
                                    });
                                }
                                closed_form_tuples += 1;
                            }
                            if witness.is_none() && !value.approx_zero() {
                                witness = Some(Witness { frame: vec![v1, v2, x, y, z, t], value });
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(SemiSymmetryScan { check: Check::from_witness(witness), tuples: n.pow(6), closed_form_tuples })
}

/// Ricci semi-symmetry on every frame quadruple `(V1,V2,X,Y)`.
pub fn ricci_semi_symmetry_scan<T: Scalar>(p: &HypersurfacePoint<T>) -> Check<T> {
    let n = p.dim();
    let ric = p.ricci();
    for v1 in 0..n {
        for v2 in 0..n {
            let cols = sparse_columns(&endomorphism(p.curvature(), v1, v2));
            for x in 0..n {
                for y in 0..n {
                    let mut acc = T::zero();
                    for (e, l) in &cols[x] {
                        acc = acc + l.clone() * ric[(*e, y)].clone();
                    }
                    for (e, l) in &cols[y] {
                        acc = acc + l.clone() * ric[(x, *e)].clone();
                    }
                    if !acc.approx_zero() {
                        return Check::from_witness(Some(Witness { frame: vec![v1, v2, x, y], value: -acc }));
                    }
                }
            }
        }
    }
    Check::from_witness(None)
}

/// Local-symmetry obstruction on every frame triple `(V,X,Y)`.
pub fn local_symmetry_scan<T: Scalar>(p: &HypersurfacePoint<T>) -> Check<T> {
    let n = p.dim();
    let b = p.b();
    let delta0 = |i: usize| if i == 0 { T::one() } else { T::zero() };
    for v in 0..n {
        for x in 0..n {
            for y in 0..n {
                let value = p.c().clone() * (b[(v, y)].clone() * delta0(x) - b[(v, x)].clone() * delta0(y));
                if !value.approx_zero() {
                    return Check::from_witness(Some(Witness { frame: vec![v, x, y], value }));
                }
            }
        }
    }
    Check::from_witness(None)
}

/// One cross-check between report flags. `holds` is meaningful only when
/// `applies`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Implication {
    pub statement: &'static str,
    pub applies: bool,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SymmetryReport<T> {
    /// `B = 0`; witness is the first nonzero entry.
    pub totally_geodesic: Check<T>,
    /// `B = ρ g`.
    pub totally_umbilical: Check<T>,
    pub rho: Option<T>,
    /// `A_N = λ P`.
    pub screen_umbilical: Check<T>,
    pub lambda_screen: Option<T>,
    pub screen_conformal: ScreenConformal<T>,
    /// `B(A_N ξ, ·) = 0`; witness is the first nonzero component.
    pub osserman_constraint: Check<T>,
    /// `g(A_N ξ, A_N ξ)`.
    pub shape_xi_norm: T,
    pub ricci_symmetric: Check<T>,
    pub einstein: EinsteinResult<T>,
    /// Whether the induced curvature is an algebraic curvature tensor.
    pub curvature_status: SymmetryStatus,
    /// `c{B(V,Y)η(X) − B(V,X)η(Y)}` vanishes on all triples.
    pub local_symmetry: Check<T>,
    pub semi_symmetric: Check<T>,
    pub semi_symmetry_tuples: usize,
    pub closed_form_tuples: usize,
    pub ricci_semi_symmetric: Check<T>,
    pub implications: Vec<Implication>,
}

/// Runs every checker exhaustively over frame tuples and cross-checks the
/// implications between them. A failed implication is an error.
pub fn symmetry_report<T: Scalar>(p: &HypersurfacePoint<T>) -> Result<SymmetryReport<T>, HypersurfaceError> {
    let n = p.dim();
    let b = p.b();
    let zero = Matrix::zeros(n, n);
    let totally_geodesic = Check::from_witness(proportional(b, &zero).err());
    let (totally_umbilical, rho) = match proportional(b, p.g()) {
        Ok(rho) => (Check::from_witness(None), Some(rho)),
        Err(w) => (Check::from_witness(Some(w)), None),
    };
    let (screen_umbilical, lambda_screen) = match proportional(p.shape_operator(), &p.projection()) {
        Ok(l) => (Check::from_witness(None), Some(l)),
        Err(w) => (Check::from_witness(Some(w)), None),
    };
    let residual = osserman_constraint_residual(p);
    let osserman_constraint = Check::from_witness(
        residual.iter().position(|v| !v.approx_zero()).map(|x| Witness { frame: vec![x], value: residual[x].clone() }),
    );
    let a = p.shape_xi();
    let shape_xi_norm = p.g().bilinear(&a, &a);
    let scan = semi_symmetry_scan(p)?;
    let report = SymmetryReport {
        totally_geodesic,
        totally_umbilical,
        rho,
        screen_umbilical,
        lambda_screen,
        screen_conformal: screen_conformal_check(p),
        osserman_constraint,
        shape_xi_norm,
        ricci_symmetric: Check::from_witness(ricci_asymmetry(p)),
        einstein: p.einstein(),
        curvature_status: p.curvature().status().clone(),
        local_symmetry: local_symmetry_scan(p),
        semi_symmetric: scan.check,
        semi_symmetry_tuples: scan.tuples,
        closed_form_tuples: scan.closed_form_tuples,
        ricci_semi_symmetric: ricci_semi_symmetry_scan(p),
        implications: Vec::new(),
    };
    let implications = implications(p, &report);
    if let Some(bad) = implications.iter().find(|i| i.applies && !i.holds) {
        return Err(HypersurfaceError::ImplicationViolated(bad.statement.to_string()));
    }
    Ok(SymmetryReport { implications, ..report })
}

fn implications<T: Scalar>(p: &HypersurfacePoint<T>, r: &SymmetryReport<T>) -> Vec<Implication> {
    let c_nonzero = !p.c().approx_zero();
    let constrained = r.osserman_constraint.holds && !r.shape_xi_norm.approx_zero();
    let geodesic = r.totally_geodesic.holds;
    vec![
        Implication {
            statement: "c ≠ 0: local-symmetry obstruction vanishes ⟺ totally geodesic",
            applies: c_nonzero,
            holds: r.local_symmetry.holds == geodesic,
        },
        Implication {
            statement: "B = ρg and A_N = λP ⟹ semi-symmetric",
            applies: r.totally_umbilical.holds && r.screen_umbilical.holds,
            holds: r.semi_symmetric.holds,
        },
        Implication {
            statement: "B(A_Nξ, ·) = 0 and A_Nξ non-null: semi-symmetric ⟺ totally geodesic",
            applies: constrained,
            holds: r.semi_symmetric.holds == geodesic,
        },
        Implication {
            statement: "c ≠ 0, B(A_Nξ, ·) = 0 and A_Nξ non-null: local-symmetry obstruction vanishes ⟺ semi-symmetric",
            applies: c_nonzero && constrained,
            holds: r.local_symmetry.holds == r.semi_symmetric.holds,
        },
        Implication {
            statement: "Einstein with algebraic curvature ⟹ Ricci semi-symmetric",
            applies: matches!(r.einstein, EinsteinResult::Einstein(_)) && r.curvature_status.is_verified(),
            holds: r.ricci_semi_symmetric.holds,
        },
    ]
}
