//! Serializable reports. Every number is a string: `"p/q"` in exact mode,
//! the shortest round-trip decimal in float mode. Field order is fixed by the
//! struct definitions, so equal inputs give byte-identical JSON.

use std::fmt::Write as _;

use serde::Serialize;

use lightlike_core::curvature::{EinsteinResult, OssermanReport, SymmetryStatus};
use lightlike_core::hypersurface::{Check, Implication, ScreenConformal, SymmetryReport, Witness};
use lightlike_core::linalg::{CharPoly, Matrix};
use lightlike_core::metric::{AdaptedFrame, FrameSource};
use lightlike_core::Scalar;

pub const TOOL: &str = "lightlike";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub fn num<T: Scalar>(v: &T) -> String {
    v.to_report_string()
}

pub fn vector<T: Scalar>(v: &[T]) -> Vec<String> {
    v.iter().map(num).collect()
}

pub fn matrix<T: Scalar>(m: &Matrix<T>) -> Vec<Vec<String>> {
    (0..m.rows()).map(|i| vector(m.row(i))).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct FrameOut {
    pub source: &'static str,
    /// Radical vectors in input coordinates.
    pub radical: Vec<Vec<String>>,
    pub screen: Vec<Vec<String>>,
    pub eta: Vec<Vec<String>>,
}

impl FrameOut {
    pub fn new<T: Scalar>(f: &AdaptedFrame<T>) -> Self {
        let vs = |v: &[Vec<T>]| v.iter().map(|x| vector(x)).collect();
        Self {
            source: match f.source() {
                FrameSource::GreedyScreen => "greedy-screen",
                FrameSource::Hint => "hint",
            },
            radical: vs(f.radical()),
            screen: vs(f.screen()),
            eta: vs(f.eta()),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SymmetryStatusOut {
    pub verified: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violated_identity: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub indices: Option<[usize; 4]>,
}

impl From<&SymmetryStatus> for SymmetryStatusOut {
    fn from(s: &SymmetryStatus) -> Self {
        match s {
            SymmetryStatus::Violated { indices, identity } => {
                Self { verified: false, violated_identity: Some(identity.name()), indices: Some(*indices) }
            }
            other => Self { verified: other.is_verified(), violated_identity: None, indices: None },
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PolyOut {
    /// Coefficients of `det(A − λI)`, constant term first.
    pub coefficients: Vec<String>,
    pub text: String,
}

impl PolyOut {
    pub fn new<T: Scalar>(p: &CharPoly<T>) -> Self {
        Self { coefficients: p.to_report_strings(), text: p.to_string() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SignOut {
    pub sign: &'static str,
    pub sampled: usize,
    pub empty: bool,
    pub consistent: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SampleOut {
    pub sign: &'static str,
    /// Frame components.
    pub direction: Vec<String>,
    pub q: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct OssermanWitnessOut {
    pub index: usize,
    pub sample: SampleOut,
    pub char_poly: PolyOut,
}

#[derive(Clone, Debug, Serialize)]
pub struct OssermanOut {
    pub verdict: bool,
    pub samples_per_sign: usize,
    pub seed: u64,
    pub char_poly: Option<PolyOut>,
    pub signs: Vec<SignOut>,
    pub witness: Option<OssermanWitnessOut>,
    pub directions: Vec<SampleOut>,
}

impl OssermanOut {
    pub fn new<T: Scalar>(r: &OssermanReport<T>) -> Self {
        let sample = |i: usize| {
            let s = &r.samples[i];
            SampleOut { sign: s.sign.name(), direction: vector(&s.direction), q: num(&s.q) }
        };
        Self {
            verdict: r.verdict,
            samples_per_sign: r.samples_per_sign,
            seed: r.seed,
            char_poly: r.reference.as_ref().map(PolyOut::new),
            signs: r
                .signs
                .iter()
                .map(|s| SignOut { sign: s.sign.name(), sampled: s.sampled, empty: s.empty, consistent: s.consistent })
                .collect(),
            witness: r
                .witness
                .map(|i| OssermanWitnessOut { index: i, sample: sample(i), char_poly: PolyOut::new(&r.samples[i].poly) }),
            directions: (0..r.samples.len()).map(sample).collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EinsteinOut {
    pub einstein: bool,
    pub lambda: Option<String>,
    /// First entry where `Ric ≠ λ g`.
    pub witness: Option<[usize; 2]>,
}

impl EinsteinOut {
    pub fn new<T: Scalar>(e: &EinsteinResult<T>) -> Self {
        match e {
            EinsteinResult::Einstein(l) => Self { einstein: true, lambda: Some(num(l)), witness: None },
            EinsteinResult::NotEinstein { witness } => {
                Self { einstein: false, lambda: None, witness: Some([witness.0, witness.1]) }
            }
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessOut {
    /// Indices into the frame `(ξ, E_1..E_m)`.
    pub frame: Vec<usize>,
    pub value: String,
}

impl WitnessOut {
    fn new<T: Scalar>(w: &Witness<T>) -> Self {
        Self { frame: w.frame.clone(), value: num(&w.value) }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckOut {
    pub holds: bool,
    pub witness: Option<WitnessOut>,
}

impl CheckOut {
    pub fn new<T: Scalar>(c: &Check<T>) -> Self {
        Self { holds: c.holds, witness: c.witness.as_ref().map(WitnessOut::new) }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ScreenConformalOut {
    /// `"factor"`, `"indeterminate"` or `"not-conformal"`.
    pub status: &'static str,
    pub factor: Option<String>,
    pub witness: Option<WitnessOut>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ImplicationOut {
    pub statement: &'static str,
    pub applies: bool,
    pub holds: bool,
}

impl From<&Implication> for ImplicationOut {
    fn from(i: &Implication) -> Self {
        Self { statement: i.statement, applies: i.applies, holds: i.holds }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SymmetryReportOut {
    pub totally_geodesic: CheckOut,
    pub totally_umbilical: CheckOut,
    pub rho: Option<String>,
    pub screen_umbilical: CheckOut,
    pub lambda_screen: Option<String>,
    pub screen_conformal: ScreenConformalOut,
    pub osserman_constraint: CheckOut,
    pub shape_xi_norm: String,
    pub ricci_symmetric: CheckOut,
    pub einstein: EinsteinOut,
    pub curvature_status: SymmetryStatusOut,
    pub local_symmetry: CheckOut,
    pub semi_symmetric: CheckOut,
    pub semi_symmetry_tuples: usize,
    pub closed_form_tuples: usize,
    pub ricci_semi_symmetric: CheckOut,
    pub implications: Vec<ImplicationOut>,
}

impl SymmetryReportOut {
    pub fn new<T: Scalar>(r: &SymmetryReport<T>) -> Self {
        let screen_conformal = match &r.screen_conformal {
            ScreenConformal::Factor(phi) => ScreenConformalOut { status: "factor", factor: Some(num(phi)), witness: None },
            ScreenConformal::Indeterminate => ScreenConformalOut { status: "indeterminate", factor: None, witness: None },
            ScreenConformal::NotConformal(w) => {
                ScreenConformalOut { status: "not-conformal", factor: None, witness: Some(WitnessOut::new(w)) }
            }
        };
        Self {
            totally_geodesic: CheckOut::new(&r.totally_geodesic),
            totally_umbilical: CheckOut::new(&r.totally_umbilical),
            rho: r.rho.as_ref().map(num),
            screen_umbilical: CheckOut::new(&r.screen_umbilical),
            lambda_screen: r.lambda_screen.as_ref().map(num),
            screen_conformal,
            osserman_constraint: CheckOut::new(&r.osserman_constraint),
            shape_xi_norm: num(&r.shape_xi_norm),
            ricci_symmetric: CheckOut::new(&r.ricci_symmetric),
            einstein: EinsteinOut::new(&r.einstein),
            curvature_status: (&r.curvature_status).into(),
            local_symmetry: CheckOut::new(&r.local_symmetry),
            semi_symmetric: CheckOut::new(&r.semi_symmetric),
            semi_symmetry_tuples: r.semi_symmetry_tuples,
            closed_form_tuples: r.closed_form_tuples,
            ricci_semi_symmetric: CheckOut::new(&r.ricci_semi_symmetric),
            implications: r.implications.iter().map(Into::into).collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SignatureOut {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

/// One structural property of the model, checked against the embedding.
#[derive(Clone, Debug, Serialize)]
pub struct FactOut {
    pub id: &'static str,
    pub statement: &'static str,
    pub holds: bool,
    pub detail: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GfhPointOut {
    pub point: Vec<String>,
    pub classification: &'static str,
    pub radical_rank: usize,
    pub signature: SignatureOut,
    pub frame: FrameOut,
    pub facts: Vec<FactOut>,
    pub curvature_status: SymmetryStatusOut,
    pub osserman: OssermanOut,
    pub einstein: EinsteinOut,
    /// Largest `|tr J − Σ η(R(x,ξ)x) + Ric(x,x)|` over the sampled directions.
    pub trace_identity_max_residual: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CurvatureOut {
    pub status: SymmetryStatusOut,
    /// Absent when the tensor fails the algebraic symmetries.
    pub osserman: Option<OssermanOut>,
    pub ricci: Option<Vec<Vec<String>>>,
    pub einstein: Option<EinsteinOut>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ModelOut {
    Gfh {
        p: usize,
        points: Vec<GfhPointOut>,
    },
    Hypersurface {
        m: usize,
        c: String,
        classification: &'static str,
        radical_rank: usize,
        frame: FrameOut,
        /// `B` and `A_N` in the adapted frame `(ξ, E_1..E_m)`.
        b_frame: Vec<Vec<String>>,
        a_n_frame: Vec<Vec<String>>,
        ricci: Vec<Vec<String>>,
        einstein: EinsteinOut,
        symmetry: SymmetryReportOut,
        osserman: Option<OssermanOut>,
    },
    RawMetric {
        dim: usize,
        codimension: usize,
        classification: &'static str,
        radical_rank: usize,
        frame: FrameOut,
        /// Frame components.
        frame_gram: Vec<Vec<String>>,
        gram_tilde: Vec<Vec<String>>,
        gram_tilde_inverse: Vec<Vec<String>>,
        /// Input coordinates.
        working_gram_tilde: Vec<Vec<String>>,
        curvature: Option<CurvatureOut>,
    },
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalyzeReport {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub mode: &'static str,
    pub seed: u64,
    pub samples_per_sign: usize,
    pub model: ModelOut,
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionOut {
    pub id: u32,
    pub title: &'static str,
    pub passed: bool,
    pub instances: usize,
    pub checks: usize,
    pub detail: String,
    /// First few failing instances with their witnesses.
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SelfTestReport {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub mode: &'static str,
    pub seed: u64,
    pub samples_per_sign: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mutation: Option<String>,
    pub passed: bool,
    pub criteria: Vec<CriterionOut>,
}

pub fn to_json<S: Serialize>(r: &S) -> String {
    let mut s = serde_json::to_string_pretty(r).expect("reports serialize");
    s.push('\n');
    s
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn osserman_text(out: &mut String, o: &OssermanOut, indent: &str) {
    let poly = o.char_poly.as_ref().map_or("-".to_string(), |p| p.text.clone());
    let _ = writeln!(out, "{indent}osserman: {} (char poly {poly})", yes(o.verdict));
    for s in &o.signs {
        let state = if s.empty { "empty".to_string() } else { format!("{} sampled, consistent {}", s.sampled, yes(s.consistent)) };
        let _ = writeln!(out, "{indent}  {}: {state}", s.sign);
    }
    if let Some(w) = &o.witness {
        let _ = writeln!(
            out,
            "{indent}  witness: {} direction [{}] has char poly {}",
            w.sample.sign,
            w.sample.direction.join(", "),
            w.char_poly.text
        );
    }
}

fn einstein_text(e: &EinsteinOut) -> String {
    match (&e.lambda, e.witness) {
        (Some(l), _) => format!("yes, λ = {l}"),
        (None, Some([i, j])) => format!("no (Ric ≠ λg at ({i},{j}))"),
        _ => "no".into(),
    }
}

fn check_text(c: &CheckOut) -> String {
    match &c.witness {
        None => yes(c.holds).into(),
        Some(w) => format!("{} (witness {:?} = {})", yes(c.holds), w.frame, w.value),
    }
}

fn status_text(s: &SymmetryStatusOut) -> String {
    match (s.violated_identity, s.indices) {
        (Some(id), Some(ix)) => format!("violated ({id} at {ix:?})"),
        _ if s.verified => "verified".into(),
        _ => "unverified".into(),
    }
}

/// Plain-text summary of an analysis.
pub fn analyze_text(r: &AnalyzeReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {} analyze ({} mode, seed {}, {} samples per sign)", r.tool, r.version, r.mode, r.seed, r.samples_per_sign);
    match &r.model {
        ModelOut::Gfh { p, points } => {
            let _ = writeln!(out, "kind: gfh, p = {p}, dimension {}", 2 * p + 2);
            for (k, pt) in points.iter().enumerate() {
                let _ = writeln!(out, "point {k}: ({})", pt.point.join(", "));
                let _ = writeln!(out, "  classification: {}, radical rank {}", pt.classification, pt.radical_rank);
                let s = &pt.signature;
                let _ = writeln!(out, "  signature: ({}, {}, {})", s.positive, s.negative, s.zero);
                for f in &pt.facts {
                    let detail = f.detail.as_ref().map_or(String::new(), |d| format!(" [{d}]"));
                    let _ = writeln!(out, "  {}: {}{detail}", f.statement, yes(f.holds));
                }
                let _ = writeln!(out, "  curvature: {}", status_text(&pt.curvature_status));
                osserman_text(&mut out, &pt.osserman, "  ");
                let _ = writeln!(out, "  einstein: {}", einstein_text(&pt.einstein));
                let _ = writeln!(out, "  trace identity max residual: {}", pt.trace_identity_max_residual);
            }
        }
        ModelOut::Hypersurface { m, c, classification, radical_rank, einstein, symmetry, osserman, .. } => {
            let _ = writeln!(out, "kind: hypersurface, m = {m}, c = {c}");
            let _ = writeln!(out, "classification: {classification}, radical rank {radical_rank}");
            let _ = writeln!(out, "curvature: {}", status_text(&symmetry.curvature_status));
            let _ = writeln!(out, "einstein: {}", einstein_text(einstein));
            let rows: [(&str, String); 9] = [
                ("totally geodesic", check_text(&symmetry.totally_geodesic)),
                ("totally umbilical", check_text(&symmetry.totally_umbilical)),
                ("screen umbilical", check_text(&symmetry.screen_umbilical)),
                ("B(A_N ξ, ·) = 0", check_text(&symmetry.osserman_constraint)),
                ("g(A_N ξ, A_N ξ)", symmetry.shape_xi_norm.clone()),
                ("local-symmetry obstruction vanishes", check_text(&symmetry.local_symmetry)),
                ("semi-symmetric", check_text(&symmetry.semi_symmetric)),
                ("ricci semi-symmetric", check_text(&symmetry.ricci_semi_symmetric)),
                ("screen conformal", match &symmetry.screen_conformal.factor {
                    Some(f) => format!("yes, φ = {f}"),
                    None => symmetry.screen_conformal.status.into(),
                }),
            ];
            for (k, v) in rows {
                let _ = writeln!(out, "{k}: {v}");
            }
            let _ = writeln!(out, "tuples checked: {} (closed form on {})", symmetry.semi_symmetry_tuples, symmetry.closed_form_tuples);
            for i in symmetry.implications.iter().filter(|i| i.applies) {
                let _ = writeln!(out, "implication [{}]: {}", i.statement, if i.holds { "holds" } else { "FAILS" });
            }
            if let Some(o) = osserman {
                osserman_text(&mut out, o, "");
            }
        }
        ModelOut::RawMetric { dim, codimension, classification, radical_rank, gram_tilde, curvature, .. } => {
            let _ = writeln!(out, "kind: raw-metric, dimension {dim}, codimension {codimension}");
            let _ = writeln!(out, "classification: {classification}, radical rank {radical_rank}");
            let _ = writeln!(out, "associated metric (frame components):");
            for row in gram_tilde {
                let _ = writeln!(out, "  [{}]", row.join(", "));
            }
            if let Some(c) = curvature {
                let _ = writeln!(out, "curvature: {}", status_text(&c.status));
                if let Some(o) = &c.osserman {
                    osserman_text(&mut out, o, "");
                }
                if let Some(e) = &c.einstein {
                    let _ = writeln!(out, "einstein: {}", einstein_text(e));
                }
            }
        }
    }
    out
}

/// Plain-text summary of a self-test run.
pub fn self_test_text(r: &SelfTestReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {} self-test ({} mode, seed {}, {} samples per sign)", r.tool, r.version, r.mode, r.seed, r.samples_per_sign);
    if let Some(m) = &r.mutation {
        let _ = writeln!(out, "mutation: {m}");
    }
    for c in &r.criteria {
        let _ = writeln!(
            out,
            "criterion {}: {} {} ({} instances, {} checks) {}",
            c.id,
            if c.passed { "PASS" } else { "FAIL" },
            c.title,
            c.instances,
            c.checks,
            c.detail
        );
        for f in &c.failures {
            let _ = writeln!(out, "  {f}");
        }
    }
    let _ = writeln!(out, "overall: {}", if r.passed { "PASS" } else { "FAIL" });
    out
}
