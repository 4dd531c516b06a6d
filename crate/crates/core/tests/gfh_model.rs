use lightlike_core::curvature::{
    check_curvature_symmetries, jacobi_operator, osserman_test, ricci, trace_identity_residual, SymmetryStatus,
};
use lightlike_core::gfh::{ambient, random_model, GfhModel};
use lightlike_core::linalg::{char_poly, congruence_signature, invert, rank, CharPoly, Matrix, Signature};
use lightlike_core::metric::SubmanifoldKind;
use lightlike_core::{Rational, RationalPolynomial, Scalar};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn q(n: i64) -> Rational {
    Rational::from_int(n)
}

fn qr(n: i64, d: i64) -> Rational {
    Rational::from_ratio(n, d)
}

fn x(p: usize, i: usize) -> RationalPolynomial {
    RationalPolynomial::variable(p, i - 1)
}

fn model(p: usize, f: RationalPolynomial, h: RationalPolynomial, point: Vec<Rational>) -> GfhModel<Rational> {
    GfhModel::new(p, f, h, point).unwrap()
}

fn models(count: usize, seed: u64) -> Vec<GfhModel<Rational>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|i| random_model(&mut rng, 1 + i % 3)).collect()
}

/// Embedding pullback built from scratch: `F` as polynomials in all
/// `2p+2` coordinates, differentiated symbolically.
fn pullback_oracle(m: &GfhModel<Rational>) -> Matrix<Rational> {
    let p = m.p();
    let n = 2 * p + 2;
    let lift = |poly: &RationalPolynomial| {
        RationalPolynomial::from_terms(
            n,
            poly.terms()
                .map(|(e, c)| {
                    let mut full = vec![0; n];
                    full[1..=p].copy_from_slice(e);
                    (full, c.clone())
                })
                .collect::<Vec<_>>(),
        )
    };
    // ambient components: u_0..u_p, v_0..v_p, w1, w2
    let mut comps: Vec<RationalPolynomial> = (0..n).map(|k| RationalPolynomial::variable(n, k)).collect();
    comps.push(lift(m.f()));
    comps.push(lift(m.h()));
    let jac = Matrix::from_fn(n + 2, n, |a, c| comps[a].partial(c).eval(m.point()));
    let mut gbar = Matrix::<Rational>::zeros(n + 2, n + 2);
    let pairs = [(0, n), (p + 1, n + 1), (n, n), (n + 1, n + 1)];
    for (i, j) in pairs.into_iter().chain((1..=p).map(|i| (i, p + 1 + i))) {
        gbar[(i, j)] = q(1);
        gbar[(j, i)] = q(1);
    }
    gbar.congruent(&jac)
}

#[test]
fn hessian_examples() {
    let m = model(1, x(1, 1).mul(&x(1, 1)), x(1, 1).mul(&x(1, 1)).mul(&x(1, 1)), vec![q(0), q(1), q(0), q(0)]);
    let (f, h) = m.hessians();
    assert_eq!(f, Matrix::from_diagonal(&[q(2)]));
    assert_eq!(h, Matrix::from_diagonal(&[q(6)]));
    let m = model(2, x(2, 1).mul(&x(2, 2)), RationalPolynomial::zero(2), vec![q(3); 6]);
    assert_eq!(m.hessians().0, Matrix::from_rows(vec![vec![q(0), q(1)], vec![q(1), q(0)]]).unwrap());
    let lin = x(2, 1).scale(&q(4)).add(&x(2, 2));
    let m = model(2, lin.clone(), lin, vec![q(1); 6]);
    assert!(m.hessians().0.is_zero_matrix() && m.hessians().1.is_zero_matrix());
}

#[test]
fn metric_matches_embedding_pullback() {
    for m in models(10, 1) {
        assert_eq!(m.metric_matrix().gram(), &pullback_oracle(&m));
        assert_eq!(m.metric_matrix().gram(), &ambient::pullback_gram(&m));
    }
}

#[test]
fn zero_functions_leave_only_the_pairing_blocks() {
    let m = model(2, RationalPolynomial::zero(2), RationalPolynomial::zero(2), vec![q(1); 6]);
    let g = m.metric_matrix();
    let mut expected = Matrix::<Rational>::zeros(6, 6);
    for i in 1..=2 {
        expected[(i, 3 + i)] = q(1);
        expected[(3 + i, i)] = q(1);
    }
    assert_eq!(g.gram(), &expected);
    let fr = m.frames();
    assert_eq!(fr.xi[0], lightlike_core::linalg::unit_vector(6, 0));
    assert_eq!(fr.xi[1], lightlike_core::linalg::unit_vector(6, 3));
    assert_eq!(fr.u[1], lightlike_core::linalg::unit_vector(6, 2));
    assert_eq!(fr.v[0], lightlike_core::linalg::unit_vector(6, 4));
}

#[test]
fn signatures_and_radical() {
    for m in models(8, 2) {
        let p = m.p();
        let g = m.metric_matrix();
        assert_eq!(rank(g.gram()), 2 * p);
        assert_eq!(g.radical_rank(), 2);
        assert_eq!(
            congruence_signature(g.gram()).unwrap(),
            Signature { positive: p, negative: p, zero: 2 }
        );
        assert_eq!(
            congruence_signature(&ambient::ambient_gram::<Rational>(p)).unwrap(),
            Signature { positive: p + 2, negative: p + 2, zero: 0 }
        );
        let fr = m.frames();
        for xi in &fr.xi {
            assert!(g.gram().mul_vec(xi).iter().all(|v| *v == q(0)));
        }
        let spanned = Matrix::from_columns(2 * p + 2, &[g.radical(), &fr.xi[..]].concat());
        assert_eq!(rank(&spanned), 2);
    }
}

#[test]
fn frame_relations() {
    for m in models(8, 3) {
        let p = m.p();
        let g = m.metric_matrix();
        let fr = m.frames();
        let (df, dh) = m.gradients();
        for i in 0..p {
            for j in 0..p {
                let delta = if i == j { q(1) } else { q(0) };
                assert_eq!(g.eval(&fr.u[i], &fr.v[j]), delta);
                assert_eq!(g.eval(&fr.v[i], &fr.v[j]), q(0));
                // the U_i are not null: g(U_i,U_j) = −(f_i f_j + h_i h_j)
                let k = df[i].clone() * df[j].clone() + dh[i].clone() * dh[j].clone();
                assert_eq!(g.eval(&fr.u[i], &fr.u[j]), -k);
            }
        }
        let (n_xi, n_n) = ambient::normal_pairings(&m);
        assert_eq!(n_xi, Matrix::identity(2));
        assert!(n_n.is_zero_matrix());
        let basis = Matrix::from_columns(2 * p + 2, &fr.ordered());
        assert_eq!(g.gram().congruent(&basis), m.frame_gram());
        for (a, eta) in fr.eta.iter().enumerate() {
            let values: Vec<Rational> = fr.ordered().iter().map(|e| lightlike_core::linalg::dot(eta, e)).collect();
            assert_eq!(values, lightlike_core::linalg::unit_vector(2 * p + 2, a));
        }
    }
}

#[test]
fn adapted_frame_from_standard_hint() {
    for m in models(6, 4) {
        let (frame, metric) = m.adapted_frame().unwrap();
        assert_eq!(frame.kind(), SubmanifoldKind::Coisotropic);
        assert_eq!(frame.frame_gram(), &m.frame_gram());
        let tilde = metric.working_gram_tilde();
        assert_eq!(tilde * &invert(tilde).unwrap(), Matrix::identity(m.dim()));
        assert_eq!(metric.gram_tilde() * metric.inverse(), Matrix::identity(m.dim()));
    }
}

#[test]
fn second_fundamental_forms_match_ambient() {
    for m in models(8, 5) {
        let p = m.p();
        let (f, h) = m.second_fundamental();
        let weingarten = ambient::ambient_second_fundamental(&m);
        let gauss = ambient::ambient_second_fundamental_gauss(&m);
        for (a, closed) in [f, h].iter().enumerate() {
            for b in 0..m.dim() {
                for c in 0..m.dim() {
                    let expected = if (2..2 + p).contains(&b) && (2..2 + p).contains(&c) {
                        closed[(b - 2, c - 2)].clone()
                    } else {
                        q(0)
                    };
                    assert_eq!(weingarten[a][(b, c)], expected, "h{} at ({b},{c})", a + 1);
                    assert_eq!(gauss[a][(b, c)], expected);
                }
            }
        }
    }
}

#[test]
fn connection_matches_ambient() {
    for m in models(8, 6) {
        assert_eq!(ambient::ambient_connection(&m), m.connection_coefficients());
    }
}

#[test]
fn connection_example() {
    // f = x1²/2, h = 0: ∇_{U1}U1 = −½ξ1 − x1 V1
    let f = x(1, 1).mul(&x(1, 1)).scale(&qr(1, 2));
    let m = model(1, f, RationalPolynomial::zero(1), vec![q(0), qr(7, 3), q(0), q(0)]);
    let table = m.connection_coefficients();
    assert_eq!(table[2][2], vec![qr(-1, 2), q(0), q(0), qr(-7, 3)]);
    assert_eq!(table[2][0], vec![q(0), q(0), q(0), q(-1)]);
    let lin = model(1, x(1, 1), x(1, 1).scale(&q(2)), vec![q(1); 4]);
    assert!(lin.connection_coefficients().iter().flatten().flatten().all(|v| *v == q(0)));
}

#[test]
fn curvature_examples() {
    let m = model(2, x(2, 1).mul(&x(2, 2)), RationalPolynomial::zero(2), vec![q(1), q(2), q(-1), q(0), q(0), q(0)]);
    let r = m.curvature().unwrap();
    assert_eq!(r.get(2, 3, 2, 3), &qr(-1, 2));
    let f = x(2, 1).mul(&x(2, 1)).scale(&qr(1, 2));
    let rank_one = model(2, f, RationalPolynomial::zero(2), vec![q(2); 6]);
    assert!(rank_one.curvature().unwrap().is_zero());
    assert!(ambient::gauss_curvature(&rank_one).is_zero());
    let lin = model(2, x(2, 2), x(2, 1), vec![q(2); 6]);
    assert!(lin.curvature().unwrap().is_zero());
}

#[test]
fn routes_agree_and_tensor_is_algebraic() {
    for m in models(10, 7) {
        let closed = m.curvature_closed_form();
        let gauss = ambient::gauss_curvature(&m);
        assert_eq!(closed.components(), gauss.components());
        assert_eq!(check_curvature_symmetries(&closed), SymmetryStatus::Verified);
        assert!(closed.operator_consistent(&m.frame_gram()));
    }
}

#[test]
fn perturbed_component_is_detected() {
    let m = models(1, 8).remove(0);
    let r = m.curvature().unwrap();
    let mut bad = r.clone();
    let v = bad.get(2, 3, 1, 0).clone() + q(1);
    bad.set(2, 3, 1, 0, v);
    match check_curvature_symmetries(&bad) {
        SymmetryStatus::Violated { indices, identity } => assert!(identity.terms(indices).contains(&[2, 3, 1, 0])),
        other => panic!("mutation not detected: {other:?}"),
    }
}

fn random_direction(rng: &mut ChaCha8Rng, m: usize) -> Vec<Rational> {
    lightlike_core::curvature::random_int_vector(rng, m, 5)
}

#[test]
fn jacobi_closed_form_and_generic_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for m in models(8, 9) {
        let (_, metric) = m.adapted_frame().unwrap();
        let r = m.curvature().unwrap();
        for _ in 0..3 {
            let xv = random_direction(&mut rng, m.dim());
            let closed = m.jacobi_matrix(&xv).unwrap();
            let generic = jacobi_operator(&r, &metric, &xv).unwrap();
            assert_eq!(closed, generic);
            assert!(generic.is_self_adjoint(&metric));
            assert_eq!(closed.matrix.trace(), q(0));
            assert!((&closed.matrix * &closed.matrix).is_zero_matrix());
            for slot in [0, 1].into_iter().chain(m.p() + 2..m.dim()) {
                assert!(closed.matrix.column(slot).iter().all(|v| *v == q(0)));
            }
            assert_eq!(char_poly(&closed.matrix).unwrap(), CharPoly::monomial(m.dim()));
        }
        let mut radical = vec![q(0); m.dim()];
        radical[0] = q(3);
        radical[1] = q(-2);
        assert!(m.jacobi_matrix(&radical).unwrap().matrix.is_zero_matrix());
    }
}

#[test]
fn osserman_pipeline_and_trace_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for (k, m) in models(4, 10).into_iter().enumerate() {
        let (frame, metric) = m.adapted_frame().unwrap();
        let r = m.curvature().unwrap();
        let report = osserman_test(&r, &frame, &metric, 6, k as u64).unwrap();
        assert!(report.verdict);
        assert_eq!(report.reference.as_ref().unwrap(), &CharPoly::monomial(m.dim()));
        assert_eq!(report.samples.len(), 12);
        for _ in 0..3 {
            let xv = random_direction(&mut rng, m.dim());
            assert_eq!(trace_identity_residual(&r, &frame, &metric, &xv).unwrap(), q(0));
        }
    }
}

#[test]
fn ricci_matches_direct_contraction() {
    let f = x(2, 1).mul(&x(2, 1)).add(&x(2, 1).mul(&x(2, 2)).scale(&q(3)));
    let h = x(2, 2).mul(&x(2, 2)).scale(&qr(1, 2)).sub(&x(2, 1).mul(&x(2, 2)));
    let m = model(2, f, h, vec![q(1), qr(1, 2), q(-2), q(0), q(1), q(3)]);
    let (frame, metric) = m.adapted_frame().unwrap();
    let r = m.curvature().unwrap();
    let ric = ricci(&r, &frame, &metric).unwrap();
    let inv = metric.inverse();
    let n = m.dim();
    let direct = Matrix::from_fn(n, n, |a, b| {
        let mut acc = q(0);
        for c in 0..n {
            for d in 0..n {
                acc += inv[(c, d)].clone() * r.get(a, c, b, d).clone();
            }
        }
        acc
    });
    assert_eq!(ric, direct);
    // the U-U block of g̃⁻¹ vanishes, so the model is Ricci-flat
    assert!(!r.is_zero());
    assert!(ric.is_zero_matrix());
}

#[test]
fn float_model_agrees_with_exact() {
    let m = models(1, 11).remove(0);
    let mf = m.map(|v| v.to_f64());
    let exact = m.curvature_closed_form();
    let float = mf.curvature_closed_form();
    for (a, b) in exact.components().iter().zip(float.components()) {
        assert!(a.to_f64().approx_eq(b));
    }
    assert!(mf.curvature().is_ok());
}
