//! Seeded sampling of states, Paulis, stabilizer groups and graphs.
//!
//! All randomness comes from SplitMix64 with its state initialized to the seed.
//! Each draw advances the state by `0x9E3779B97F4A7C15` and outputs
//!
//! ```text
//! z = state
//! z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//! z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//! out = z ^ (z >> 31)
//! ```
//!
//! with wrapping 64-bit arithmetic.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_distr::StandardNormal;
use rand_xoshiro::SplitMix64;

use crate::error::Result;
use crate::gf2::Gf2Basis;
use crate::graphstate::Graph;
use crate::oracle::DenseState;
use crate::pauli::{mask, PauliOperator};
use crate::stabgroup::StabilizerGroup;

pub type SeededRng = SplitMix64;

pub fn seeded(seed: u64) -> SeededRng {
    SplitMix64::seed_from_u64(seed)
}

/// Normalized vector of i.i.d. complex Gaussians (Haar-distributed direction).
pub fn random_pure_vector(dim: usize, rng: &mut impl Rng) -> Vec<Complex64> {
    loop {
        let mut v: Vec<Complex64> = (0..dim)
            .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        let norm = v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm > 0.0 {
            v.iter_mut().for_each(|a| *a /= norm);
            return v;
        }
    }
}

pub fn random_pure_state(n: usize, rng: &mut impl Rng) -> Result<DenseState> {
    DenseState::pure_normalized(random_pure_vector(1 << n, rng))
}

/// Uniform letters on every qubit and a uniform real sign.
pub fn random_pauli(n: usize, rng: &mut impl Rng) -> PauliOperator {
    let x = rng.gen::<u64>() & mask(n);
    let z = rng.gen::<u64>() & mask(n);
    let ys = (x & z).count_ones() as u8;
    let sign = if rng.gen::<bool>() { 2 } else { 0 };
    PauliOperator::from_raw(n, x, z, ys + sign)
}

/// Completes `initial` (independent, commuting, Hermitian) to a full group by
/// rejection sampling.
pub fn extend_to_group(
    n: usize,
    initial: Vec<PauliOperator>,
    rng: &mut impl Rng,
) -> Result<StabilizerGroup> {
    let mut gens = initial;
    let mut span = Gf2Basis::new();
    for (i, g) in gens.iter().enumerate() {
        let _ = span.insert(g.symplectic_key(), 1u128 << i);
    }
    while gens.len() < n {
        let cand = random_pauli(n, rng);
        if cand.is_identity_up_to_phase() || gens.iter().any(|g| !g.commutes_unchecked(&cand)) {
            continue;
        }
        if span
            .insert(cand.symplectic_key(), 1u128 << gens.len())
            .is_ok()
        {
            gens.push(cand);
        }
    }
    StabilizerGroup::new(gens)
}

pub fn random_stabilizer_group(n: usize, rng: &mut impl Rng) -> Result<StabilizerGroup> {
    extend_to_group(n, Vec::new(), rng)
}

/// Two groups sharing a random number of elements up to sign.
///
/// The second group is seeded with `k` independent random elements of the
/// first (`k` uniform in `0..=n`), each with a random sign, then completed at
/// random. Covers the whole range from mutually unbiased bases to identical
/// groups, with both zero and nonzero overlaps.
pub fn random_group_pair(
    n: usize,
    rng: &mut impl Rng,
) -> Result<(StabilizerGroup, StabilizerGroup)> {
    let s = random_stabilizer_group(n, rng)?;
    let k = rng.gen_range(0..=n);
    let mut shared = Vec::new();
    let mut span = Gf2Basis::new();
    while shared.len() < k {
        let m = rng.gen::<u64>() & mask(n);
        if m == 0 {
            continue;
        }
        let mut e = s.element(m);
        if span
            .insert(e.symplectic_key(), 1u128 << shared.len())
            .is_ok()
        {
            if rng.gen::<bool>() {
                e = e.negated();
            }
            shared.push(e);
        }
    }
    let t = extend_to_group(n, shared, rng)?;
    Ok((s, t))
}

/// Erdős–Rényi graph with edge probability `p`.
pub fn random_graph(n: usize, p: f64, rng: &mut impl Rng) -> Result<Graph> {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(n, &edges)
}
