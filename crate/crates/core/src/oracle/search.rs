//! Heuristic minimization of averaged entropies over pure states.
//!
//! Seeded random starts refined by coordinate-wise random perturbation. The
//! value found is an upper bound on the true minimum, nothing more.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use super::{apply_pauli, check_orthonormal_basis, inner, DenseState};
use crate::entropy::{EntropySpec, ProbabilityDistribution};
use crate::error::{Error, Result};
use crate::pauli::PauliOperator;
use crate::random::{random_pure_vector, seeded};

/// What the averaged entropy is taken over.
#[derive(Debug, Clone)]
pub enum SearchTarget {
    /// `(1/L) Σ_k S(A_k|ψ)` for ±1-valued Paulis.
    Observables(Vec<PauliOperator>),
    /// `(1/L) Σ_k S(𝒜_k|ψ)` for orthonormal bases.
    Bases(Vec<Vec<DenseState>>),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchConfig {
    pub restarts: usize,
    pub seed: u64,
    pub initial_step: f64,
    pub shrink: f64,
    pub stagnation_limit: usize,
    pub min_step: f64,
    pub max_evaluations: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            restarts: 20,
            seed: 42,
            initial_step: 0.1,
            shrink: 0.5,
            stagnation_limit: 50,
            min_step: 1e-7,
            max_evaluations: 200_000,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SearchResult {
    pub min_value: f64,
    pub argmin: DenseState,
    /// False when some restart hit `max_evaluations` before the step schedule ended.
    pub converged: bool,
}

impl SearchTarget {
    fn dim(&self) -> Result<usize> {
        match self {
            SearchTarget::Observables(obs) => {
                let first = obs
                    .first()
                    .ok_or_else(|| Error::Domain("no observables".into()))?;
                if obs.iter().any(|o| o.n() != first.n()) {
                    return Err(Error::Domain(
                        "observables act on different qubit counts".into(),
                    ));
                }
                if let Some(bad) = obs.iter().find(|o| !o.is_hermitian()) {
                    return Err(Error::NotHermitian(bad.to_string()));
                }
                Ok(1 << first.n())
            }
            SearchTarget::Bases(bases) => {
                let first = bases
                    .first()
                    .ok_or_else(|| Error::Domain("no bases".into()))?;
                for b in bases {
                    check_orthonormal_basis(b)?;
                }
                if bases.iter().any(|b| b[0].dim() != first[0].dim()) {
                    return Err(Error::Domain("bases of different dimension".into()));
                }
                Ok(first.len())
            }
        }
    }

    /// The averaged entropy at a unit vector.
    pub fn evaluate(&self, spec: &EntropySpec, psi: &[Complex64]) -> Result<f64> {
        let (sum, count) = match self {
            SearchTarget::Observables(obs) => {
                let mut s = 0.0;
                for o in obs {
                    let e = inner(psi, &apply_pauli(o, psi)?).re;
                    s += spec.dichotomic_entropy(e.clamp(-1.0, 1.0))?;
                }
                (s, obs.len())
            }
            SearchTarget::Bases(bases) => {
                let mut s = 0.0;
                for b in bases {
                    let probs = b
                        .iter()
                        .map(|a| inner(a.vector().expect("validated pure"), psi).norm_sqr())
                        .collect();
                    s += spec.entropy(&ProbabilityDistribution::new(probs)?)?;
                }
                (s, bases.len())
            }
        };
        Ok(sum / count as f64)
    }
}

fn normalize(v: &mut [Complex64]) {
    let norm = v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    v.iter_mut().for_each(|a| *a /= norm);
}

fn descend(
    target: &SearchTarget,
    spec: &EntropySpec,
    dim: usize,
    config: &SearchConfig,
    seed: u64,
) -> Result<(f64, Vec<Complex64>, bool)> {
    let mut rng = seeded(seed);
    let mut best = random_pure_vector(dim, &mut rng);
    let mut best_value = target.evaluate(spec, &best)?;
    let mut step = config.initial_step;
    let mut stagnant = 0usize;
    let mut evaluations = 1usize;
    while step >= config.min_step {
        if evaluations >= config.max_evaluations {
            return Ok((best_value, best, false));
        }
        let k = rng.gen_range(0..dim);
        let mut trial = best.clone();
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        trial[k] += Complex64::new(re, im) * step;
        normalize(&mut trial);
        let value = target.evaluate(spec, &trial)?;
        evaluations += 1;
        if value < best_value {
            best = trial;
            best_value = value;
            stagnant = 0;
        } else {
            stagnant += 1;
            if stagnant >= config.stagnation_limit {
                step *= config.shrink;
                stagnant = 0;
            }
        }
    }
    Ok((best_value, best, true))
}

/// Best averaged entropy found over `config.restarts` independent descents.
///
/// Restart `i` is seeded with `config.seed + i`; restarts run in parallel and
/// the minimum is taken with ties going to the lowest index, so the result is
/// independent of thread count.
pub fn minimize_entropy_sum(
    target: &SearchTarget,
    spec: &EntropySpec,
    config: &SearchConfig,
) -> Result<SearchResult> {
    spec.validate()?;
    let dim = target.dim()?;
    if config.restarts == 0 {
        return Err(Error::Domain("restarts must be positive".into()));
    }
    let runs = (0..config.restarts as u64)
        .into_par_iter()
        .map(|i| descend(target, spec, dim, config, config.seed.wrapping_add(i)))
        .collect::<Result<Vec<_>>>()?;
    let converged = runs.iter().all(|r| r.2);
    let (value, psi, _) = runs
        .into_iter()
        .reduce(|a, b| if b.0 < a.0 { b } else { a })
        .expect("at least one restart");
    Ok(SearchResult {
        min_value: value,
        argmin: DenseState::pure_normalized(psi)?,
        converged,
    })
}
