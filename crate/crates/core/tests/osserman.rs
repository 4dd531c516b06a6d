use lightlike_core::curvature::*;
use lightlike_core::hypersurface::{random_umbilical, HypersurfacePoint};
use lightlike_core::linalg::{CharPoly, Matrix};
use lightlike_core::metric::{associated_metric, build_adapted_frame, DegenerateForm};
use lightlike_core::{Rational, Scalar};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn q(n: i64) -> Rational {
    Rational::from_int(n)
}

fn setup(diag: &[i64]) -> (DegenerateForm<Rational>, lightlike_core::metric::AdaptedFrame<Rational>) {
    let g = DegenerateForm::new(Matrix::from_diagonal(&diag.iter().map(|&v| q(v)).collect::<Vec<_>>())).unwrap();
    let r = g.radical_rank();
    let f = build_adapted_frame(&g, r.max(1)).unwrap();
    (g, f)
}

/// `det(A − λI)` for `A = diag(values)`.
fn diagonal_poly(values: &[Rational]) -> CharPoly<Rational> {
    let mut coeffs = vec![q(1)];
    for v in values {
        // multiply by (v − λ)
        let mut next = vec![q(0); coeffs.len() + 1];
        for (k, c) in coeffs.iter().enumerate() {
            next[k] = next[k].clone() + c.clone() * v.clone();
            next[k + 1] = next[k + 1].clone() - c.clone();
        }
        coeffs = next;
    }
    CharPoly::from_coeffs(coeffs)
}

#[test]
fn degenerate_constant_curvature_is_osserman() {
    for diag in [&[0, 1, 1, -1][..], &[0, 0, 1, -1, 1], &[0, 1, -1]] {
        let (g, f) = setup(diag);
        let am = associated_metric(&g, &f).unwrap();
        let c = q(3);
        let r = CurvatureTensor::constant_curvature(f.frame_gram(), &c).verified();
        let report = osserman_test(&r, &f, &am, 12, 5).unwrap();
        assert!(report.verdict, "{diag:?}");
        // (1/q)J has eigenvalue 0 on the radical and on x, c on the rest of the screen
        let n = diag.len();
        let rr = f.radical_rank();
        let mut values = vec![q(0); rr + 1];
        values.extend(std::iter::repeat(c.clone()).take(n - rr - 1));
        assert_eq!(report.reference.clone().unwrap(), diagonal_poly(&values));
        let sp = report.sign_summary(CausalSign::Spacelike).unwrap();
        let tl = report.sign_summary(CausalSign::Timelike).unwrap();
        assert!(sp.consistent && tl.consistent);
        assert_eq!(sp.sampled, 12);
        assert_eq!(tl.sampled, 12);
    }
}

#[test]
fn product_curvature_is_not_osserman() {
    // screen = span(e1, e2) ⊕ span(e3, e4) with different constant curvatures
    let (g, f) = setup(&[0, 1, 1, 1, 1]);
    let am = associated_metric(&g, &f).unwrap();
    let fg = f.frame_gram();
    let block = |lo: usize, hi: usize| Matrix::from_fn(5, 5, |i, j| if (lo..hi).contains(&i) { fg[(i, j)].clone() } else { q(0) });
    let r = CurvatureTensor::constant_curvature(&block(1, 3), &q(1))
        .add(&CurvatureTensor::constant_curvature(&block(3, 5), &q(2)))
        .verified();
    assert!(r.status().is_verified());
    let report = osserman_test(&r, &f, &am, 16, 9).unwrap();
    assert!(!report.verdict);
    let w = report.witness.unwrap();
    assert!(!report.samples[w].poly.approx_eq(report.reference.as_ref().unwrap()));
    assert!(report.sign_summary(CausalSign::Timelike).unwrap().empty);
}

#[test]
fn spacelike_and_timelike_verdicts_agree_on_umbilical_data() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for m in 2..=4 {
        let p: HypersurfacePoint<Rational> = random_umbilical(&mut rng, m);
        let report = match osserman_test(p.curvature(), p.frame(), p.metric(), 8, 3) {
            Ok(r) => r,
            Err(e) => panic!("{e}"),
        };
        let sp = report.sign_summary(CausalSign::Spacelike).unwrap();
        let tl = report.sign_summary(CausalSign::Timelike).unwrap();
        if !sp.empty && !tl.empty {
            assert_eq!(sp.consistent, tl.consistent);
        }
        assert!(report.verdict);
        for s in &report.samples {
            let res = trace_identity_residual(p.curvature(), p.frame(), p.metric(), &s.direction).unwrap();
            assert_eq!(res, q(0));
        }
    }
}

#[test]
fn osserman_test_requires_verified_tensor() {
    let (g, f) = setup(&[0, 1, 1]);
    let am = associated_metric(&g, &f).unwrap();
    let mut r = CurvatureTensor::constant_curvature(f.frame_gram(), &q(1));
    assert!(matches!(osserman_test(&r, &f, &am, 4, 1), Err(CurvatureError::NotVerified(_))));
    r.set(1, 2, 1, 2, q(7));
    r.verify();
    assert!(matches!(r.status(), SymmetryStatus::Violated { .. }));
}

#[test]
fn float_and_exact_reports_agree() {
    let (g, f) = setup(&[0, 1, -1, 1]);
    let am = associated_metric(&g, &f).unwrap();
    let r = CurvatureTensor::constant_curvature(f.frame_gram(), &q(2)).verified();
    let exact = osserman_test(&r, &f, &am, 6, 4).unwrap();
    let gf = DegenerateForm::new(g.gram().map(|v| v.to_f64())).unwrap();
    let ff = build_adapted_frame(&gf, 1).unwrap();
    let amf = associated_metric(&gf, &ff).unwrap();
    let rf = CurvatureTensor::constant_curvature(ff.frame_gram(), &2.0f64).verified();
    let float = osserman_test(&rf, &ff, &amf, 6, 4).unwrap();
    assert_eq!(exact.verdict, float.verdict);
    let (pe, pf) = (exact.reference.unwrap(), float.reference.unwrap());
    for (a, b) in pe.coeffs().iter().zip(pf.coeffs()) {
        assert!((a.to_f64() - b).abs() < 1e-9);
    }
}
