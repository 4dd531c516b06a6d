//! `analyze`: one pipeline per model kind, generic over the scalar.

use lightlike_core::curvature::{
    einstein_check, jacobi_operator, CurvatureError, osserman_test, ricci, trace_identity_residual, CurvatureTensor,
};
use lightlike_core::gfh::{ambient, GfhModel};
use lightlike_core::hypersurface::{symmetry_report, HypersurfacePoint};
use lightlike_core::linalg::{congruence_signature, is_zero_vec, rank, vec_approx_eq, Matrix};
use lightlike_core::metric::{associated_metric, build_adapted_frame, classify, frame_from_hint, DegenerateForm, FrameHint};
use lightlike_core::{Polynomial, Rational, Scalar};

use crate::error::CliError;
use crate::input::{Mode, Model, ModelFile};
use crate::report::{
    matrix, num, vector, AnalyzeReport, CurvatureOut, EinsteinOut, FactOut, FrameOut, GfhPointOut, ModelOut,
    OssermanOut, SignatureOut, SymmetryReportOut, SymmetryStatusOut, TOOL, VERSION,
};

pub const DEFAULT_SAMPLES: usize = 64;
pub const DEFAULT_SEED: u64 = 0;

/// Settings after merging file options with command-line flags.
#[derive(Clone, Copy, Debug)]
pub struct Settings {
    pub samples: usize,
    pub seed: u64,
    pub mode: Mode,
}

impl Settings {
    /// Flags win over the file's `options`, which win over the defaults.
    pub fn resolve(file: &ModelFile, samples: Option<usize>, seed: Option<u64>, mode: Option<Mode>) -> Self {
        Self {
            samples: samples.or(file.options.samples).unwrap_or(DEFAULT_SAMPLES),
            seed: seed.or(file.options.seed).unwrap_or(DEFAULT_SEED),
            mode: mode.or(file.options.mode).unwrap_or(Mode::Exact),
        }
    }
}

pub fn convert<T: Scalar>(v: &Rational) -> T {
    T::from_big_ratio(v.numer().clone(), v.denom().clone())
}

fn convert_vec<T: Scalar>(v: &[Rational]) -> Vec<T> {
    v.iter().map(convert).collect()
}

fn convert_hint<T: Scalar>(h: &FrameHint<Rational>) -> FrameHint<T> {
    let vs = |v: &[Vec<Rational>]| v.iter().map(|x| convert_vec(x)).collect();
    FrameHint { radical: vs(&h.radical), screen: vs(&h.screen), eta: h.eta.as_ref().map(|e| vs(e)) }
}

pub fn run(file: &ModelFile, settings: Settings) -> Result<AnalyzeReport, CliError> {
    if settings.samples == 0 {
        return Err(CliError::Input("samples must be at least 1".into()));
    }
    let model = match settings.mode {
        Mode::Exact => analyze_model::<Rational>(&file.model, settings),
        Mode::Float => analyze_model::<f64>(&file.model, settings),
    }?;
    Ok(AnalyzeReport {
        tool: TOOL,
        version: VERSION,
        command: "analyze",
        mode: settings.mode.name(),
        seed: settings.seed,
        samples_per_sign: settings.samples,
        model,
    })
}

fn analyze_model<T: Scalar>(model: &Model, s: Settings) -> Result<ModelOut, CliError> {
    match model {
        Model::Gfh { p, f, h, points } => {
            let f: Polynomial<T> = f.map(convert);
            let h: Polynomial<T> = h.map(convert);
            let out = points
                .iter()
                .enumerate()
                .map(|(k, pt)| {
                    let m = GfhModel::new(*p, f.clone(), h.clone(), convert_vec(pt))?;
                    gfh_point(&m, s.samples, s.seed.wrapping_add(k as u64))
                })
                .collect::<Result<_, _>>()?;
            Ok(ModelOut::Gfh { p: *p, points: out })
        }
        Model::Hypersurface { c, g, b, a, hint } => hypersurface::<T>(
            convert(c),
            g.map(convert),
            &b.map(convert),
            &a.map(convert),
            hint.as_ref().map(convert_hint),
            s,
        ),
        Model::RawMetric { gram, codimension, hint, curvature } => raw_metric::<T>(
            gram.map(convert),
            *codimension,
            hint.as_ref().map(convert_hint),
            curvature.as_ref().map(|c| convert_vec(c)),
            s,
        ),
    }
}

fn fact(id: &'static str, statement: &'static str, holds: bool, detail: Option<String>) -> FactOut {
    FactOut { id, statement, holds, detail }
}

fn tables_agree<T: Scalar>(a: &[Vec<Vec<T>>], b: &[Vec<Vec<T>>]) -> bool {
    a.len() == b.len()
        && a.iter().zip(b).all(|(ra, rb)| ra.len() == rb.len() && ra.iter().zip(rb).all(|(x, y)| vec_approx_eq(x, y)))
}

/// Full structural reproduction of one point of a gfh model.
pub fn gfh_point<T: Scalar>(m: &GfhModel<T>, samples: usize, seed: u64) -> Result<GfhPointOut, CliError> {
    let p = m.p();
    let dim = m.dim();
    let form = m.metric_matrix();
    let r = form.radical_rank();
    let kind = classify(dim, 2, r)?;
    let sig = congruence_signature(form.gram())?;
    let frames = m.frames();
    let (frame, metric) = m.adapted_frame()?;

    let mut facts = Vec::new();
    let mut spanned = form.radical().to_vec();
    spanned.extend(frames.xi.iter().cloned());
    let radical_ok = r == 2
        && rank(&Matrix::from_columns(dim, &spanned)) == 2
        && frames.xi.iter().all(|xi| is_zero_vec(&form.gram().mul_vec(xi)));
    let signature_ok = (sig.positive, sig.negative, sig.zero) == (p, p, 2);
    facts.push(fact(
        "metric",
        "coisotropic of codimension 2 with signature (p, p, 2) and radical spanned by ξ1, ξ2",
        kind.name() == "coisotropic" && radical_ok && signature_ok,
        None,
    ));
    facts.push(fact(
        "pullback",
        "metric equals the pullback of the ambient metric by the embedding",
        form.gram().approx_eq(&ambient::pullback_gram(m)),
        None,
    ));

    let (hf, hh) = m.second_fundamental();
    let embed = |h: &Matrix<T>| {
        Matrix::from_fn(dim, dim, |b, c| {
            if (2..2 + p).contains(&b) && (2..2 + p).contains(&c) {
                h[(b - 2, c - 2)].clone()
            } else {
                T::zero()
            }
        })
    };
    let expected = [embed(&hf), embed(&hh)];
    let weingarten = ambient::ambient_second_fundamental(m);
    let gauss_side = ambient::ambient_second_fundamental_gauss(m);
    let sff_ok = (0..2).all(|a| weingarten[a].approx_eq(&expected[a]) && gauss_side[a].approx_eq(&expected[a]));
    facts.push(fact(
        "second-fundamental-form",
        "second fundamental forms are the Hessians of f and h on U and vanish elsewhere",
        sff_ok,
        None,
    ));
    facts.push(fact(
        "connection",
        "induced connection equals the tangential part of the ambient derivative",
        tables_agree(&m.connection_coefficients(), &ambient::ambient_connection(m)),
        None,
    ));

    // A route disagreement aborts with its own exit code.
    let curvature = m.curvature()?;
    facts.push(fact(
        "curvature-routes",
        "closed-form curvature equals the Gauss-equation curvature",
        true,
        Some(format!("{} components compared", dim.pow(4))),
    ));

    let osserman = osserman_test(&curvature, &frame, &metric, samples, seed)?;
    let mut jacobi_ok = true;
    let mut jacobi_detail = None;
    for (k, s) in osserman.samples.iter().enumerate() {
        let closed = m.jacobi_matrix(&s.direction)?;
        let generic = jacobi_operator(&curvature, &metric, &s.direction)?;
        let killed = [0, 1]
            .into_iter()
            .chain((1..=p).map(|i| m.v_slot(i)))
            .all(|slot| closed.matrix.column(slot).iter().all(|v| v.approx_zero()));
        if !(closed.matrix.approx_eq(&generic.matrix) && killed) {
            jacobi_ok = false;
            jacobi_detail = Some(format!("sample {k} direction [{}]", vector(&s.direction).join(", ")));
            break;
        }
    }
    facts.push(fact(
        "jacobi-operator",
        "closed-form Jacobi operator matches the generic one and kills ξ1, ξ2 and V",
        jacobi_ok,
        jacobi_detail,
    ));

    let ric = ricci(&curvature, &frame, &metric)?;
    let mut worst = T::zero();
    for s in &osserman.samples {
        let res = trace_identity_residual(&curvature, &frame, &metric, &s.direction)?.abs();
        if res > worst {
            worst = res;
        }
    }
    Ok(GfhPointOut {
        point: vector(m.point()),
        classification: kind.name(),
        radical_rank: r,
        signature: SignatureOut { positive: sig.positive, negative: sig.negative, zero: sig.zero },
        frame: FrameOut::new(&frame),
        facts,
        curvature_status: curvature.status().into(),
        osserman: OssermanOut::new(&osserman),
        einstein: EinsteinOut::new(&einstein_check(&ric, metric.frame_g())),
        trace_identity_max_residual: num(&worst),
    })
}

fn hypersurface<T: Scalar>(
    c: T,
    g: Matrix<T>,
    b: &Matrix<T>,
    a: &Matrix<T>,
    hint: Option<FrameHint<T>>,
    s: Settings,
) -> Result<ModelOut, CliError> {
    let pt = HypersurfacePoint::from_working(c, g, b, a, hint)?;
    let report = symmetry_report(&pt)?;
    let osserman = if pt.curvature().status().is_verified() {
        Some(OssermanOut::new(&osserman_test(pt.curvature(), pt.frame(), pt.metric(), s.samples, s.seed)?))
    } else {
        None
    };
    let kind = classify(pt.dim(), 1, 1)?;
    let working = pt.working_frame().expect("built from input coordinates");
    Ok(ModelOut::Hypersurface {
        m: pt.m(),
        c: num(pt.c()),
        classification: kind.name(),
        radical_rank: 1,
        frame: FrameOut::new(working),
        b_frame: matrix(pt.b()),
        a_n_frame: matrix(pt.shape_operator()),
        ricci: matrix(pt.ricci()),
        einstein: EinsteinOut::new(&pt.einstein()),
        symmetry: SymmetryReportOut::new(&report),
        osserman,
    })
}

fn raw_metric<T: Scalar>(
    gram: Matrix<T>,
    codimension: Option<usize>,
    hint: Option<FrameHint<T>>,
    curvature: Option<Vec<T>>,
    s: Settings,
) -> Result<ModelOut, CliError> {
    let form = DegenerateForm::new(gram)?;
    let dim = form.dim();
    let r = form.radical_rank();
    let n = codimension.unwrap_or(r.max(1));
    let kind = classify(dim, n, r)?;
    let frame = match hint {
        Some(h) => frame_from_hint(&form, n, h)?,
        None => build_adapted_frame(&form, n)?,
    };
    let metric = associated_metric(&form, &frame)?;
    let curvature = match curvature {
        None => None,
        Some(comps) => {
            let tensor = CurvatureTensor::from_components(dim, comps).change_basis(frame.basis()).verified();
            let status: SymmetryStatusOut = tensor.status().into();
            if tensor.status().is_verified() {
                let ric = ricci(&tensor, &frame, &metric)?;
                // A totally lightlike metric has no unit directions to sample.
                let osserman = match osserman_test(&tensor, &frame, &metric, s.samples, s.seed) {
                    Ok(o) => Some(OssermanOut::new(&o)),
                    Err(CurvatureError::NoCausalDirections) => None,
                    Err(e) => return Err(e.into()),
                };
                Some(CurvatureOut {
                    status,
                    osserman,
                    einstein: Some(EinsteinOut::new(&einstein_check(&ric, metric.frame_g()))),
                    ricci: Some(matrix(&ric)),
                })
            } else {
                Some(CurvatureOut { status, osserman: None, ricci: None, einstein: None })
            }
        }
    };
    Ok(ModelOut::RawMetric {
        dim,
        codimension: n,
        classification: kind.name(),
        radical_rank: r,
        frame: FrameOut::new(&frame),
        frame_gram: matrix(frame.frame_gram()),
        gram_tilde: matrix(metric.gram_tilde()),
        gram_tilde_inverse: matrix(metric.inverse()),
        working_gram_tilde: matrix(metric.working_gram_tilde()),
        curvature,
    })
}
