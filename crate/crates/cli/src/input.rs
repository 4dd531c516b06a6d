//! Model files: JSON documents tagged by `"kind"`. Every number that enters
//! the geometry is an exact rational.

use std::str::FromStr;

use num_bigint::BigInt;
use serde::Deserialize;

use lightlike_core::linalg::Matrix;
use lightlike_core::metric::FrameHint;
use lightlike_core::{Polynomial, Rational, Scalar};

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Float,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Self::Exact => "exact",
            Self::Float => "float",
        }
    }
}

/// Integer given as a JSON number or, for big values, a decimal string.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum IntJson {
    Small(i64),
    Big(String),
}

impl IntJson {
    fn to_bigint(&self) -> Result<BigInt, String> {
        match self {
            Self::Small(v) => Ok(BigInt::from(*v)),
            Self::Big(s) => BigInt::from_str(s.trim()).map_err(|_| format!("not an integer: {s:?}")),
        }
    }
}

/// `3`, `"-2/5"` or `{"num": -2, "den": 5}`.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum RationalJson {
    Int(i64),
    Text(String),
    Fraction { num: IntJson, den: IntJson },
}

impl RationalJson {
    pub fn to_rational(&self) -> Result<Rational, String> {
        let (num, den) = match self {
            Self::Int(v) => (BigInt::from(*v), BigInt::from(1)),
            Self::Text(s) => match s.split_once('/') {
                Some((n, d)) => (IntJson::Big(n.into()).to_bigint()?, IntJson::Big(d.into()).to_bigint()?),
                None => (IntJson::Big(s.clone()).to_bigint()?, BigInt::from(1)),
            },
            Self::Fraction { num, den } => (num.to_bigint()?, den.to_bigint()?),
        };
        if den == BigInt::from(0) {
            return Err("zero denominator".into());
        }
        Ok(Rational::from_big_ratio(num, den))
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonomialJson {
    pub exponents: Vec<u32>,
    #[serde(alias = "numerator")]
    pub num: IntJson,
    #[serde(default, alias = "denominator")]
    pub den: Option<IntJson>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OptionsJson {
    pub samples: Option<usize>,
    pub seed: Option<u64>,
    pub mode: Option<Mode>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrameJson {
    pub radical: Vec<Vec<RationalJson>>,
    pub screen: Vec<Vec<RationalJson>>,
    #[serde(default)]
    pub eta: Option<Vec<Vec<RationalJson>>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GfhJson {
    pub p: usize,
    pub f: Vec<MonomialJson>,
    pub h: Vec<MonomialJson>,
    /// Points `(x_0..x_p, y_0..y_p)`.
    pub points: Vec<Vec<RationalJson>>,
    #[serde(default)]
    pub options: OptionsJson,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HypersurfaceJson {
    /// Screen dimension; checked against `g` when present.
    #[serde(default)]
    pub m: Option<usize>,
    pub c: RationalJson,
    /// Gram matrix of the degenerate metric on the `(m+1)`-dimensional
    /// tangent space.
    pub g: Vec<Vec<RationalJson>>,
    #[serde(rename = "B")]
    pub b: Vec<Vec<RationalJson>>,
    /// Column `j` is the image of basis vector `j`.
    #[serde(rename = "A_N")]
    pub a_n: Vec<Vec<RationalJson>>,
    #[serde(default)]
    pub frame: Option<FrameJson>,
    #[serde(default)]
    pub options: OptionsJson,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawMetricJson {
    pub gram: Vec<Vec<RationalJson>>,
    /// Codimension `n`; defaults to the radical rank (at least 1).
    #[serde(default)]
    pub codimension: Option<usize>,
    #[serde(default)]
    pub frame: Option<FrameJson>,
    /// `R(e_a,e_b,e_c,e_d)` in the input coordinates, `dim⁴` entries in
    /// row-major order.
    #[serde(default)]
    pub curvature: Option<Vec<RationalJson>>,
    #[serde(default)]
    pub options: OptionsJson,
}

/// Raw file contents, keyed by the `"kind"` field.
#[derive(Clone, Debug)]
pub enum ModelJson {
    Gfh(GfhJson),
    Hypersurface(HypersurfaceJson),
    RawMetric(RawMetricJson),
}

pub const KINDS: [&str; 3] = ["gfh", "hypersurface", "raw-metric"];

fn typed<T: serde::de::DeserializeOwned>(value: serde_json::Value) -> Result<T, CliError> {
    serde_path_to_error::deserialize(value).map_err(|e| {
        let path = e.path().to_string();
        CliError::Input(format!("{}: {}", if path == "." { "<root>".into() } else { path }, e.inner()))
    })
}

impl ModelJson {
    /// Dispatches on `"kind"` before deserializing, so that errors keep their
    /// field path.
    pub fn from_value(mut value: serde_json::Value) -> Result<Self, CliError> {
        let obj = value.as_object_mut().ok_or_else(|| err("<root>", "expected a JSON object"))?;
        let kind = match obj.remove("kind") {
            Some(serde_json::Value::String(k)) => k,
            Some(_) => return Err(err("kind", "expected a string")),
            None => return Err(err("kind", format!("missing; expected one of {}", KINDS.join(", ")))),
        };
        match kind.as_str() {
            "gfh" => Ok(Self::Gfh(typed(value)?)),
            "hypersurface" => Ok(Self::Hypersurface(typed(value)?)),
            "raw-metric" => Ok(Self::RawMetric(typed(value)?)),
            other => Err(err("kind", format!("unknown kind {other:?}; expected one of {}", KINDS.join(", ")))),
        }
    }
}

/// Validated model with exact data.
#[derive(Clone, Debug)]
pub enum Model {
    Gfh { p: usize, f: Polynomial<Rational>, h: Polynomial<Rational>, points: Vec<Vec<Rational>> },
    Hypersurface { c: Rational, g: Matrix<Rational>, b: Matrix<Rational>, a: Matrix<Rational>, hint: Option<FrameHint<Rational>> },
    RawMetric { gram: Matrix<Rational>, codimension: Option<usize>, hint: Option<FrameHint<Rational>>, curvature: Option<Vec<Rational>> },
}

impl Model {
    pub fn kind(&self) -> &'static str {
        match self {
            Self::Gfh { .. } => "gfh",
            Self::Hypersurface { .. } => "hypersurface",
            Self::RawMetric { .. } => "raw-metric",
        }
    }
}

#[derive(Clone, Debug)]
pub struct ModelFile {
    pub model: Model,
    pub options: OptionsJson,
}

fn err(path: &str, msg: impl std::fmt::Display) -> CliError {
    CliError::Input(format!("{path}: {msg}"))
}

fn rational(path: &str, v: &RationalJson) -> Result<Rational, CliError> {
    v.to_rational().map_err(|e| err(path, e))
}

fn vector(path: &str, v: &[RationalJson]) -> Result<Vec<Rational>, CliError> {
    v.iter().enumerate().map(|(i, x)| rational(&format!("{path}[{i}]"), x)).collect()
}

fn matrix(path: &str, rows: &[Vec<RationalJson>], size: Option<usize>) -> Result<Matrix<Rational>, CliError> {
    let parsed: Vec<Vec<Rational>> =
        rows.iter().enumerate().map(|(i, r)| vector(&format!("{path}[{i}]"), r)).collect::<Result<_, _>>()?;
    let n = size.unwrap_or(parsed.len());
    if parsed.len() != n || parsed.iter().any(|r| r.len() != n) {
        return Err(err(path, format!("expected a {n}x{n} matrix")));
    }
    if n == 0 {
        return Err(err(path, "matrix is empty"));
    }
    Matrix::from_rows(parsed).map_err(|e| err(path, e))
}

fn polynomial(path: &str, vars: usize, terms: &[MonomialJson]) -> Result<Polynomial<Rational>, CliError> {
    let mut out = Vec::with_capacity(terms.len());
    for (i, t) in terms.iter().enumerate() {
        let here = format!("{path}[{i}]");
        if t.exponents.len() != vars {
            return Err(err(&format!("{here}.exponents"), format!("expected {vars} exponents, got {}", t.exponents.len())));
        }
        let num = t.num.to_bigint().map_err(|e| err(&format!("{here}.num"), e))?;
        let den = match &t.den {
            Some(d) => d.to_bigint().map_err(|e| err(&format!("{here}.den"), e))?,
            None => BigInt::from(1),
        };
        if den == BigInt::from(0) {
            return Err(err(&format!("{here}.den"), "zero denominator"));
        }
        out.push((t.exponents.clone(), Rational::from_big_ratio(num, den)));
    }
    Ok(Polynomial::from_terms(vars, out))
}

fn frame(path: &str, f: &FrameJson, dim: usize) -> Result<FrameHint<Rational>, CliError> {
    let vectors = |name: &str, vs: &[Vec<RationalJson>]| -> Result<Vec<Vec<Rational>>, CliError> {
        vs.iter()
            .enumerate()
            .map(|(i, v)| {
                let here = format!("{path}.{name}[{i}]");
                if v.len() != dim {
                    return Err(err(&here, format!("expected {dim} components, got {}", v.len())));
                }
                vector(&here, v)
            })
            .collect()
    };
    Ok(FrameHint {
        radical: vectors("radical", &f.radical)?,
        screen: vectors("screen", &f.screen)?,
        eta: f.eta.as_ref().map(|e| vectors("eta", e)).transpose()?,
    })
}

/// Parses and validates a model file. Errors name the offending field.
pub fn parse_model(text: &str) -> Result<ModelFile, CliError> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| CliError::Input(format!("invalid JSON: {e}")))?;
    let raw = ModelJson::from_value(value)?;
    match raw {
        ModelJson::Gfh(g) => {
            if g.p == 0 {
                return Err(err("p", "must be at least 1"));
            }
            if g.points.is_empty() {
                return Err(err("points", "at least one point is required"));
            }
            let dim = 2 * g.p + 2;
            let points = g
                .points
                .iter()
                .enumerate()
                .map(|(i, pt)| {
                    let here = format!("points[{i}]");
                    if pt.len() != dim {
                        return Err(err(&here, format!("expected {dim} coordinates (x_0..x_p, y_0..y_p), got {}", pt.len())));
                    }
                    vector(&here, pt)
                })
                .collect::<Result<_, _>>()?;
            let model = Model::Gfh { p: g.p, f: polynomial("f", g.p, &g.f)?, h: polynomial("h", g.p, &g.h)?, points };
            Ok(ModelFile { model, options: g.options })
        }
        ModelJson::Hypersurface(h) => {
            let g = matrix("g", &h.g, None)?;
            let n = g.rows();
            if let Some(m) = h.m {
                if m + 1 != n {
                    return Err(err("m", format!("g is {n}x{n}, so m must be {}", n - 1)));
                }
            }
            let model = Model::Hypersurface {
                c: rational("c", &h.c)?,
                b: matrix("B", &h.b, Some(n))?,
                a: matrix("A_N", &h.a_n, Some(n))?,
                hint: h.frame.as_ref().map(|f| frame("frame", f, n)).transpose()?,
                g,
            };
            Ok(ModelFile { model, options: h.options })
        }
        ModelJson::RawMetric(r) => {
            let gram = matrix("gram", &r.gram, None)?;
            let n = gram.rows();
            let curvature = match &r.curvature {
                None => None,
                Some(c) => {
                    if c.len() != n.pow(4) {
                        return Err(err("curvature", format!("expected {} entries, got {}", n.pow(4), c.len())));
                    }
                    Some(vector("curvature", c)?)
                }
            };
            let model = Model::RawMetric {
                codimension: r.codimension,
                hint: r.frame.as_ref().map(|f| frame("frame", f, n)).transpose()?,
                curvature,
                gram,
            };
            Ok(ModelFile { model, options: r.options })
        }
    }
}

pub fn read_model(path: &std::path::Path) -> Result<ModelFile, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    parse_model(&text)
}
