//! Entropies of finite distributions and of dichotomic (±1) observables.
//!
//! All logarithms are base 2. For a ±1-valued observable with expectation
//! `e` the outcome distribution is `((1+e)/2, (1-e)/2)`, so any entropy is a
//! function of the squared expectation `x = e²`; that function is
//! [`EntropySpec::s_tilde`]. Uncertainty bounds for anticommuting observables
//! require it to be concave on `[0, 1]`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const SUM_TOLERANCE: f64 = 1e-12;
const BISECTION_TOLERANCE: f64 = 1e-12;
const BISECTION_MAX_ITER: usize = 200;

/// A validated finite probability distribution.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityDistribution(Vec<f64>);

impl ProbabilityDistribution {
    /// Accepts entries in `[0, 1]` summing to one within `1e-12`, then
    /// renormalizes. Entries within `1e-12` below zero are clamped.
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::InvalidDistribution("no outcomes".into()));
        }
        let mut probs = probs;
        for (i, p) in probs.iter_mut().enumerate() {
            if !p.is_finite() || *p < -SUM_TOLERANCE || *p > 1.0 + SUM_TOLERANCE {
                return Err(Error::InvalidDistribution(format!("entry {i} = {p}")));
            }
            *p = p.clamp(0.0, 1.0);
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > SUM_TOLERANCE {
            return Err(Error::InvalidDistribution(format!("sum = {sum}")));
        }
        probs.iter_mut().for_each(|p| *p /= sum);
        Ok(ProbabilityDistribution(probs))
    }

    /// Outcome distribution of a ±1 observable with the given expectation.
    pub fn dichotomic(expectation: f64) -> Result<Self> {
        if !(-1.0 - SUM_TOLERANCE..=1.0 + SUM_TOLERANCE).contains(&expectation) {
            return Err(Error::Domain(format!(
                "expectation {expectation} outside [-1, 1]"
            )));
        }
        let e = expectation.clamp(-1.0, 1.0);
        Ok(ProbabilityDistribution(vec![
            (1.0 + e) / 2.0,
            (1.0 - e) / 2.0,
        ]))
    }

    pub fn probs(&self) -> &[f64] {
        &self.0
    }
}

/// Which entropy to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum EntropySpec {
    Shannon,
    Min,
    Tsallis { q: f64 },
}

/// Shape of `s_tilde` on `[0, 1]` for a Tsallis entropy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConcavityClass {
    Concave,
    Linear,
    Convex,
}

impl EntropySpec {
    pub fn tsallis(q: f64) -> Result<Self> {
        let spec = EntropySpec::Tsallis { q };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            EntropySpec::Tsallis { q } if !(q > 1.0 && q.is_finite()) => Err(Error::Domain(
                format!("Tsallis parameter q = {q} must exceed 1"),
            )),
            _ => Ok(()),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            EntropySpec::Shannon => "shannon",
            EntropySpec::Min => "min",
            EntropySpec::Tsallis { .. } => "tsallis",
        }
    }

    pub fn q(&self) -> Option<f64> {
        match *self {
            EntropySpec::Tsallis { q } => Some(q),
            _ => None,
        }
    }

    pub fn entropy(&self, p: &ProbabilityDistribution) -> Result<f64> {
        self.validate()?;
        let probs = p.probs();
        let value = match *self {
            EntropySpec::Shannon => -probs
                .iter()
                .filter(|&&pi| pi > 0.0)
                .map(|&pi| pi * pi.log2())
                .sum::<f64>(),
            EntropySpec::Min => -probs.iter().cloned().fold(0.0, f64::max).log2(),
            EntropySpec::Tsallis { q } => {
                (1.0 - probs.iter().map(|&pi| pi.powf(q)).sum::<f64>()) / (q - 1.0)
            }
        };
        Ok(value.max(0.0))
    }

    /// `S_0`, the entropy of `(1/2, 1/2)`.
    pub fn flat_entropy(&self) -> Result<f64> {
        self.validate()?;
        Ok(match *self {
            EntropySpec::Shannon | EntropySpec::Min => 1.0,
            EntropySpec::Tsallis { q } => (1.0 - (1.0 - q).exp2()) / (q - 1.0),
        })
    }

    /// Entropy of a ±1 observable with expectation `e`.
    pub fn dichotomic_entropy(&self, e: f64) -> Result<f64> {
        self.entropy(&ProbabilityDistribution::dichotomic(e)?)
    }

    /// Entropy of `((1+√x)/2, (1-√x)/2)`.
    pub fn s_tilde(&self, x: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&x) {
            return Err(Error::Domain(format!(
                "squared expectation {x} outside [0, 1]"
            )));
        }
        self.dichotomic_entropy(x.sqrt())
    }

    /// Whether `s_tilde` is concave on `[0, 1]`.
    pub fn is_concave_in_squared_expectation(&self) -> Result<bool> {
        self.validate()?;
        Ok(match *self {
            EntropySpec::Shannon => true,
            EntropySpec::Min => false,
            EntropySpec::Tsallis { q } => tsallis_concavity_class(q)? != ConcavityClass::Convex,
        })
    }

    /// Errors unless `s_tilde` is concave.
    pub fn require_concave(&self) -> Result<()> {
        if self.is_concave_in_squared_expectation()? {
            return Ok(());
        }
        Err(Error::NotConcave(match *self {
            EntropySpec::Min => {
                "min-entropy: -log2((1+√x)/2) is convex in the squared expectation x".into()
            }
            EntropySpec::Tsallis { q } => format!(
                "Tsallis q = {q}: the entropy is convex in the squared expectation for 2 < q < 3 \
                 and concave only for 1 < q ≤ 2 and q ≥ 3"
            ),
            EntropySpec::Shannon => unreachable!(),
        }))
    }
}

impl fmt::Display for EntropySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EntropySpec::Tsallis { q } => write!(f, "tsallis(q={q})"),
            other => f.write_str(other.kind()),
        }
    }
}

/// Shannon, min or Tsallis entropy of `p`.
pub fn entropy(spec: &EntropySpec, p: &ProbabilityDistribution) -> Result<f64> {
    spec.entropy(p)
}

pub fn tsallis_concavity_class(q: f64) -> Result<ConcavityClass> {
    if !(q > 1.0 && q.is_finite()) {
        return Err(Error::Domain(format!(
            "Tsallis parameter q = {q} must exceed 1"
        )));
    }
    Ok(if q == 2.0 || q == 3.0 {
        ConcavityClass::Linear
    } else if !(2.0..=3.0).contains(&q) {
        ConcavityClass::Concave
    } else {
        ConcavityClass::Convex
    })
}

fn check_fq_domain(q: f64, y: f64) -> Result<()> {
    if q.is_nan() || q <= 1.0 {
        return Err(Error::Domain(format!("q = {q} must exceed 1")));
    }
    if !(y > 0.0 && y <= 1.0) {
        return Err(Error::Domain(format!("y = {y} outside (0, 1]")));
    }
    Ok(())
}

/// Sign-carrying factor of `d²/dx² s_tilde` for Tsallis entropies, with `y = √x`:
///
/// `f_q(y) = (1+y)^{q-2}[1 - y(q-2)] - (1-y)^{q-2}[1 + y(q-2)]`.
///
/// The omitted prefactor is positive, so `f_q < 0` on `(0, 1]` exactly when
/// `s_tilde` is concave. At `y = 1` the value is `-∞` for `q < 2`.
pub fn f_q(q: f64, y: f64) -> Result<f64> {
    check_fq_domain(q, y)?;
    let k = q - 2.0;
    Ok((1.0 + y).powf(k) * (1.0 - y * k) - (1.0 - y).powf(k) * (1.0 + y * k))
}

/// `f'_q(y) = -(q-2)(q-1) y [(1+y)^{q-3} - (1-y)^{q-3}]`.
pub fn f_q_prime(q: f64, y: f64) -> Result<f64> {
    check_fq_domain(q, y)?;
    Ok(-(q - 2.0) * (q - 1.0) * y * ((1.0 + y).powf(q - 3.0) - (1.0 - y).powf(q - 3.0)))
}

/// Bisection for the `t ∈ [0, 1]` with `f(t) = target`, `f` decreasing.
fn bisect_decreasing(f: impl Fn(f64) -> Result<f64>, target: f64) -> Result<f64> {
    if target >= f(0.0)? {
        return Ok(0.0);
    }
    if target <= f(1.0)? {
        return Ok(1.0);
    }
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..BISECTION_MAX_ITER {
        if hi - lo <= BISECTION_TOLERANCE {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if f(mid)? > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// First-quadrant points `(a1, a2)` of the curve `s̃(a1²) + s̃(a2²) = S_0`.
///
/// `a1` is sampled uniformly on `[0, 1]` (endpoints included) and `a2` found
/// by bisection. The other quadrants follow by sign symmetry; see
/// [`expand_quadrants`].
pub fn boundary_curve(spec: &EntropySpec, samples: usize) -> Result<Vec<(f64, f64)>> {
    spec.require_concave()?;
    if samples < 2 {
        return Err(Error::Domain(format!(
            "need at least 2 samples, got {samples}"
        )));
    }
    let s0 = spec.flat_entropy()?;
    (0..samples)
        .map(|i| {
            let a1 = i as f64 / (samples - 1) as f64;
            let target = s0 - spec.s_tilde(a1 * a1)?;
            let a2 = bisect_decreasing(|a| spec.s_tilde(a * a), target)?;
            Ok((a1, a2))
        })
        .collect()
}

/// The point `a1 = a2 = a` on the boundary curve.
pub fn symmetric_point(spec: &EntropySpec) -> Result<f64> {
    spec.require_concave()?;
    let s0 = spec.flat_entropy()?;
    bisect_decreasing(|a| spec.s_tilde(a * a), s0 / 2.0)
}

/// Mirrors first-quadrant points (ordered from `(0, 1)` to `(1, 0)`) into a
/// closed clockwise loop through all four quadrants, without repeating the
/// axis points.
pub fn expand_quadrants(points: &[(f64, f64)]) -> Vec<(f64, f64)> {
    // `0.0 - x` keeps negated zeros positive.
    let neg = |x: f64| 0.0 - x;
    let mut out = Vec::with_capacity(points.len() * 4);
    out.extend(points.iter().copied());
    out.extend(
        points
            .iter()
            .rev()
            .filter(|p| p.1 != 0.0)
            .map(|&(a1, a2)| (a1, neg(a2))),
    );
    out.extend(
        points
            .iter()
            .filter(|p| p.0 != 0.0)
            .map(|&(a1, a2)| (neg(a1), neg(a2))),
    );
    out.extend(
        points
            .iter()
            .rev()
            .filter(|p| p.0 != 0.0 && p.1 != 0.0)
            .map(|&(a1, a2)| (neg(a1), a2)),
    );
    out
}

/// Curve CSV with columns `a1,a2,entropy_kind,q` (`q` empty unless Tsallis).
pub fn curve_csv(spec: &EntropySpec, points: &[(f64, f64)]) -> String {
    let q = spec.q().map(|q| q.to_string()).unwrap_or_default();
    let mut out = String::from("a1,a2,entropy_kind,q\n");
    for (a1, a2) in points {
        out.push_str(&format!("{a1:.12},{a2:.12},{},{q}\n", spec.kind()));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dist(p: &[f64]) -> ProbabilityDistribution {
        ProbabilityDistribution::new(p.to_vec()).unwrap()
    }

    #[test]
    fn entropy_examples() {
        let flat = dist(&[0.5, 0.5]);
        assert_eq!(EntropySpec::Shannon.entropy(&flat).unwrap(), 1.0);
        assert_eq!(EntropySpec::Min.entropy(&flat).unwrap(), 1.0);
        assert_eq!(
            EntropySpec::tsallis(2.0)
                .unwrap()
                .entropy(&dist(&[1.0, 0.0]))
                .unwrap(),
            0.0
        );
        assert_eq!(
            EntropySpec::Shannon.entropy(&dist(&[1.0, 0.0])).unwrap(),
            0.0
        );
        let quarter = dist(&[0.25; 4]);
        assert!((EntropySpec::Shannon.entropy(&quarter).unwrap() - 2.0).abs() < 1e-15);
    }

    #[test]
    fn distribution_validation() {
        assert!(ProbabilityDistribution::new(vec![0.5, 0.6]).is_err());
        assert!(ProbabilityDistribution::new(vec![-0.1, 1.1]).is_err());
        assert!(ProbabilityDistribution::new(vec![]).is_err());
        assert!(ProbabilityDistribution::new(vec![f64::NAN, 1.0]).is_err());
        let p = ProbabilityDistribution::new(vec![0.5 + 4e-13, 0.5]).unwrap();
        assert!((p.probs().iter().sum::<f64>() - 1.0).abs() < 1e-15);
        assert!(EntropySpec::Tsallis { q: 1.0 }.entropy(&p).is_err());
    }

    #[test]
    fn flat_values() {
        assert_eq!(EntropySpec::Shannon.flat_entropy().unwrap(), 1.0);
        assert_eq!(
            EntropySpec::tsallis(2.0).unwrap().flat_entropy().unwrap(),
            0.5
        );
        assert_eq!(
            EntropySpec::tsallis(3.0).unwrap().flat_entropy().unwrap(),
            0.375
        );
    }

    #[test]
    fn s_tilde_examples() {
        for spec in [
            EntropySpec::Shannon,
            EntropySpec::Min,
            EntropySpec::tsallis(2.5).unwrap(),
        ] {
            assert_eq!(spec.s_tilde(1.0).unwrap(), 0.0);
            assert_eq!(spec.s_tilde(0.0).unwrap(), spec.flat_entropy().unwrap());
        }
        let t2 = EntropySpec::tsallis(2.0).unwrap();
        for x in [0.0, 0.1, 0.37, 0.9, 1.0] {
            assert!((t2.s_tilde(x).unwrap() - (1.0 - x) / 2.0).abs() < 1e-15);
        }
        assert!(EntropySpec::Shannon.s_tilde(1.5).is_err());
        assert!(EntropySpec::Shannon.s_tilde(-0.1).is_err());
    }

    #[test]
    fn concavity_classes() {
        assert_eq!(
            tsallis_concavity_class(1.5).unwrap(),
            ConcavityClass::Concave
        );
        assert_eq!(
            tsallis_concavity_class(2.0).unwrap(),
            ConcavityClass::Linear
        );
        assert_eq!(
            tsallis_concavity_class(2.5).unwrap(),
            ConcavityClass::Convex
        );
        assert_eq!(
            tsallis_concavity_class(3.0).unwrap(),
            ConcavityClass::Linear
        );
        assert_eq!(
            tsallis_concavity_class(4.0).unwrap(),
            ConcavityClass::Concave
        );
        assert!(tsallis_concavity_class(1.0).is_err());
    }

    #[test]
    fn f_q_values() {
        // f_q(0⁺) → 0
        for q in [1.5, 2.5, 4.0] {
            assert!(f_q(q, 1e-9).unwrap().abs() < 1e-8);
        }
        assert!(f_q_prime(1.5, 0.5).unwrap() < 0.0);
        assert!(f_q_prime(2.5, 0.5).unwrap() > 0.0);
        assert!(f_q_prime(4.0, 0.5).unwrap() < 0.0);
        for y in [0.1, 0.5, 1.0] {
            assert_eq!(f_q(2.0, y).unwrap(), 0.0);
        }
        assert!(f_q(1.5, 0.0).is_err());
        assert!(f_q(0.5, 0.5).is_err());
    }

    #[test]
    fn f_q_sign_follows_class() {
        for q in [1.1, 1.5, 1.9, 2.2, 2.5, 2.9, 3.5, 8.0] {
            let class = tsallis_concavity_class(q).unwrap();
            for k in 1..=19 {
                let y = k as f64 / 20.0;
                let f = f_q(q, y).unwrap();
                match class {
                    ConcavityClass::Concave => assert!(f < 0.0, "q={q} y={y} f={f}"),
                    ConcavityClass::Convex => assert!(f > 0.0, "q={q} y={y} f={f}"),
                    ConcavityClass::Linear => unreachable!(),
                }
            }
        }
    }

    #[test]
    fn f_q_prime_matches_finite_difference() {
        let h = 1e-6;
        for q in [1.5, 2.5, 4.0, 8.0] {
            for y in [0.2, 0.5, 0.8] {
                let fd = (f_q(q, y + h).unwrap() - f_q(q, y - h).unwrap()) / (2.0 * h);
                assert!((fd - f_q_prime(q, y).unwrap()).abs() < 1e-6, "q={q} y={y}");
            }
        }
    }

    #[test]
    fn circle_for_quadratic_tsallis() {
        for q in [2.0, 3.0] {
            let pts = boundary_curve(&EntropySpec::tsallis(q).unwrap(), 101).unwrap();
            for (a1, a2) in pts {
                assert!((a1 * a1 + a2 * a2 - 1.0).abs() < 1e-10, "q={q} ({a1},{a2})");
            }
        }
    }

    #[test]
    fn curve_endpoints_and_rejections() {
        let pts = boundary_curve(&EntropySpec::Shannon, 11).unwrap();
        assert_eq!(pts[0], (0.0, 1.0));
        assert_eq!(pts[10], (1.0, 0.0));
        assert!(matches!(
            boundary_curve(&EntropySpec::Min, 10),
            Err(Error::NotConcave(_))
        ));
        assert!(matches!(
            boundary_curve(&EntropySpec::tsallis(2.5).unwrap(), 10),
            Err(Error::NotConcave(_))
        ));
        assert!(boundary_curve(&EntropySpec::Shannon, 1).is_err());
    }

    #[test]
    fn symmetric_points() {
        // Frozen from an independent high-precision root solve.
        let a = symmetric_point(&EntropySpec::Shannon).unwrap();
        assert!((a - 0.779944271123281).abs() < 1e-11);
        let a8 = symmetric_point(&EntropySpec::tsallis(8.0).unwrap()).unwrap();
        assert!((a8 - 0.835793017052571).abs() < 1e-11);
    }

    #[test]
    fn quadrant_expansion() {
        let pts = vec![(0.0, 1.0), (0.6, 0.8), (1.0, 0.0)];
        let all = expand_quadrants(&pts);
        assert_eq!(all.len(), 8);
        assert!(all.contains(&(-1.0, 0.0)) && all.contains(&(0.0, -1.0)));
        assert!(all.contains(&(-0.6, -0.8)) && all.contains(&(0.6, -0.8)));
        assert_eq!(all[3], (0.6, -0.8));
        assert_eq!(all[7], (-0.6, 0.8));
        assert!(all.iter().all(|p| p.0.is_sign_positive() || p.0 != 0.0));
    }

    #[test]
    fn csv_columns() {
        let csv = curve_csv(&EntropySpec::tsallis(2.0).unwrap(), &[(1.0, 0.0)]);
        assert_eq!(
            csv,
            "a1,a2,entropy_kind,q\n1.000000000000,0.000000000000,tsallis,2\n"
        );
    }
}
