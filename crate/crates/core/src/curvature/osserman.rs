use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{jacobi_operator, CurvatureError, CurvatureTensor};
use crate::linalg::{char_poly, congruence_diagonalize, invert, CharPoly};
use crate::metric::{AdaptedFrame, AssociatedMetric, DegenerateForm, FrameSource, SubmanifoldKind};
use crate::scalar::Scalar;

/// Raw integer coordinates are drawn from `[-SAMPLE_BOX, SAMPLE_BOX]`.
pub const SAMPLE_BOX: i64 = 9;
pub const DEFAULT_SAMPLES: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CausalSign {
    Spacelike,
    Timelike,
}

impl CausalSign {
    pub const BOTH: [CausalSign; 2] = [CausalSign::Spacelike, CausalSign::Timelike];

    pub fn value(self) -> i8 {
        match self {
            Self::Spacelike => 1,
            Self::Timelike => -1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Spacelike => "spacelike",
            Self::Timelike => "timelike",
        }
    }

    fn stream(self) -> u64 {
        match self {
            Self::Spacelike => 1,
            Self::Timelike => 2,
        }
    }
}

impl fmt::Display for CausalSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Draws `n` vectors `x` with `sign(g(x,x)) = sign`.
///
/// Each draw is an integer vector from `[-9, 9]^m`. When its causal
/// character is wrong, it is repaired instead of discarded: writing
/// `x = C c` with `Cᵀ G C` diagonal, the components of `c` on the requested
/// sign's diagonal block are multiplied by the smallest integer that makes
/// that block dominate. Pure rejection almost never succeeds when the
/// diagonal entries differ by orders of magnitude. Draws whose requested
/// block is zero are discarded.
///
/// Vectors are not normalized; callers divide operators by `q = g(x,x)`
/// instead. Radical components are drawn like any other coordinate. The
/// sequence depends only on `(seed, sign)`.
pub fn sample_unit_directions<T: Scalar>(
    g: &DegenerateForm<T>,
    sign: CausalSign,
    n: usize,
    seed: u64,
) -> Result<Vec<(Vec<T>, T)>, CurvatureError> {
    let diag = congruence_diagonalize(g.gram())?;
    let scale = g.gram().max_abs();
    let want: Vec<bool> = diag.diagonal.iter().map(|d| d.sign_relative(&scale) == sign.value()).collect();
    let other: Vec<bool> = diag.diagonal.iter().map(|d| d.sign_relative(&scale) == -sign.value()).collect();
    if !want.iter().any(|&w| w) {
        return Err(CurvatureError::EmptyPseudoSphere { sign });
    }
    let to_diag = invert(&diag.basis)?;
    let m = g.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(sign.stream());
    let max_attempts = 10_000 + 1_000 * n;
    let mut out = Vec::with_capacity(n);
    let mut attempts = 0;
    while out.len() < n {
        if attempts == max_attempts {
            return Err(CurvatureError::SamplingExhausted { sign, attempts });
        }
        attempts += 1;
        let mut x: Vec<T> = (0..m).map(|_| T::from_int(rng.gen_range(-SAMPLE_BOX..=SAMPLE_BOX))).collect();
        let mut q = g.eval(&x, &x);
        if q.sign_relative(&scale) != sign.value() {
            let mut c = to_diag.mul_vec(&x);
            let block = |c: &[T], mask: &[bool]| {
                c.iter()
                    .zip(&diag.diagonal)
                    .zip(mask)
                    .filter(|(_, &k)| k)
                    .fold(T::zero(), |acc, ((ci, d), _)| acc + d.abs() * ci.clone() * ci.clone())
            };
            let (qw, qo) = (block(&c, &want), block(&c, &other));
            if qw.is_negligible(&scale) {
                continue;
            }
            let mut t = (qo.to_f64() / qw.to_f64()).sqrt().floor().max(0.0) as i64 + 1;
            while !(T::from_int(t * t) * qw.clone() - qo.clone()).is_positive() {
                t += 1;
            }
            for (ci, _) in c.iter_mut().zip(&want).filter(|(_, &k)| k) {
                *ci = ci.clone() * T::from_int(t);
            }
            x = diag.basis.mul_vec(&c);
            q = g.eval(&x, &x);
            if q.sign_relative(&scale) != sign.value() {
                continue;
            }
        }
        out.push((x, q));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub struct OssermanSample<T> {
    pub sign: CausalSign,
    /// Frame components of the direction.
    pub direction: Vec<T>,
    pub q: T,
    /// Characteristic polynomial of `(1/q) J_R(x)`.
    pub poly: CharPoly<T>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignSummary {
    pub sign: CausalSign,
    pub sampled: usize,
    /// No vector of this causal character exists.
    pub empty: bool,
    /// All polynomials of this sign coincide.
    pub consistent: bool,
}

#[derive(Clone, Debug)]
pub struct OssermanReport<T> {
    /// All normalized characteristic polynomials coincide.
    pub verdict: bool,
    /// Polynomial of the first sample.
    pub reference: Option<CharPoly<T>>,
    /// Index into `samples` of the first polynomial differing from the
    /// reference.
    pub witness: Option<usize>,
    pub samples: Vec<OssermanSample<T>>,
    pub signs: Vec<SignSummary>,
    pub frame_source: FrameSource,
    pub kind: SubmanifoldKind,
    pub radical_rank: usize,
    pub seed: u64,
    pub samples_per_sign: usize,
}

impl<T: Scalar> OssermanReport<T> {
    pub fn sign_summary(&self, sign: CausalSign) -> Option<&SignSummary> {
        self.signs.iter().find(|s| s.sign == sign)
    }
}

/// Compares the characteristic polynomials of `(1/q) J_R(x)` over sampled
/// spacelike and timelike directions in the frame.
pub fn osserman_test<T: Scalar>(
    r: &CurvatureTensor<T>,
    frame: &AdaptedFrame<T>,
    metric: &AssociatedMetric<T>,
    samples_per_sign: usize,
    seed: u64,
) -> Result<OssermanReport<T>, CurvatureError> {
    if !r.status().is_verified() {
        return Err(CurvatureError::NotVerified(r.status().clone()));
    }
    let frame_form = DegenerateForm::new(metric.frame_g().clone())?;
    let mut samples = Vec::new();
    let mut signs = Vec::new();
    for sign in CausalSign::BOTH {
        let dirs = match sample_unit_directions(&frame_form, sign, samples_per_sign, seed) {
            Ok(d) => d,
            Err(CurvatureError::EmptyPseudoSphere { .. }) => {
                signs.push(SignSummary { sign, sampled: 0, empty: true, consistent: true });
                continue;
            }
            Err(e) => return Err(e),
        };
        let computed: Result<Vec<OssermanSample<T>>, CurvatureError> = dirs
            .into_par_iter()
            .map(|(x, q)| {
                let j = jacobi_operator(r, metric, &x)?;
                let normalized = j.normalized().expect("sampled q is nonzero");
                Ok(OssermanSample { sign, direction: x, q, poly: char_poly(&normalized)? })
            })
            .collect();
        let computed = computed?;
        let consistent = computed.windows(2).all(|w| w[0].poly.approx_eq(&w[1].poly));
        signs.push(SignSummary { sign, sampled: computed.len(), empty: false, consistent });
        samples.extend(computed);
    }
    if samples.is_empty() {
        return Err(CurvatureError::NoCausalDirections);
    }
    let reference = samples[0].poly.clone();
    let witness = samples.iter().position(|s| !s.poly.approx_eq(&reference));
    Ok(OssermanReport {
        verdict: witness.is_none(),
        reference: Some(reference),
        witness,
        samples,
        signs,
        frame_source: frame.source(),
        kind: frame.kind(),
        radical_rank: frame.radical_rank(),
        seed,
        samples_per_sign,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;
    use crate::scalar::Rational;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn riemannian_form_has_no_timelike_vectors() {
        let g = DegenerateForm::new(Matrix::from_diagonal(&[q(1), q(0), q(2)])).unwrap();
        assert!(matches!(
            sample_unit_directions(&g, CausalSign::Timelike, 4, 7),
            Err(CurvatureError::EmptyPseudoSphere { sign: CausalSign::Timelike })
        ));
        let xs = sample_unit_directions(&g, CausalSign::Spacelike, 8, 7).unwrap();
        assert_eq!(xs.len(), 8);
        assert!(xs.iter().all(|(x, qv)| *qv > q(0) && g.eval(x, x) == *qv));
    }

    #[test]
    fn seeded_sampling_is_reproducible() {
        let g = DegenerateForm::new(Matrix::from_diagonal(&[q(1), q(-1)])).unwrap();
        let a = sample_unit_directions(&g, CausalSign::Timelike, 5, 11).unwrap();
        let b = sample_unit_directions(&g, CausalSign::Timelike, 5, 11).unwrap();
        let c = sample_unit_directions(&g, CausalSign::Timelike, 5, 12).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }
}
