//! Uncertainty relations: Maassen–Uffink bounds and their tightness for
//! stabilizer bases, the expectation-value constraint for anticommuting ±1
//! observables and the entropic bounds derived from it, and the relation for
//! the symmetric difference of two stabilizer groups.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::entropy::{EntropySpec, ProbabilityDistribution};
use crate::error::{Error, Result};
use crate::oracle::{
    self, check_orthonormal_basis, hermitian_eigenvalues, inner, pauli_expectation, CMatrix,
    DenseState,
};
use crate::pauli::PauliOperator;
use crate::random::{random_pure_state, seeded};
use crate::stabgroup::{BasisLabel, StabilizerGroup};

/// Slack allowed when checking that a value does not undercut a bound.
pub const BOUND_SLACK: f64 = 1e-9;
const EXPECTATION_TOLERANCE: f64 = 1e-10;

/// A list of Hermitian, non-identity Paulis (so each has eigenvalues ±1).
#[derive(Debug, Clone, PartialEq)]
pub struct ObservableSet {
    n: usize,
    ops: Vec<PauliOperator>,
}

impl ObservableSet {
    pub fn new(ops: Vec<PauliOperator>) -> Result<Self> {
        let n = ops
            .first()
            .map(|o| o.n())
            .ok_or_else(|| Error::Domain("empty observable set".into()))?;
        for o in &ops {
            if o.n() != n {
                return Err(Error::DimensionMismatch {
                    left: n,
                    right: o.n(),
                });
            }
            if !o.is_hermitian() {
                return Err(Error::NotHermitian(o.to_string()));
            }
            if o.is_identity_up_to_phase() {
                return Err(Error::Domain(format!("{o} is not dichotomic")));
            }
        }
        Ok(ObservableSet { n, ops })
    }

    pub fn from_strs(ops: &[&str]) -> Result<Self> {
        Self::new(ops.iter().map(|s| s.parse()).collect::<Result<_>>()?)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ops(&self) -> &[PauliOperator] {
        &self.ops
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    /// First pair `(k, l)` that commutes, if any.
    pub fn commuting_pair(&self) -> Option<(usize, usize)> {
        (0..self.ops.len())
            .flat_map(|k| (k + 1..self.ops.len()).map(move |l| (k, l)))
            .find(|&(k, l)| self.ops[k].commutes_unchecked(&self.ops[l]))
    }

    pub fn require_anticommuting(&self) -> Result<()> {
        match self.commuting_pair() {
            None => Ok(()),
            Some((k, l)) => Err(Error::Hypothesis(format!(
                "observables {k} ({}) and {l} ({}) commute",
                self.ops[k], self.ops[l]
            ))),
        }
    }
}

/// Outcome of evaluating an uncertainty relation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct URReport {
    pub bound: f64,
    /// Smallest averaged entropy among the evaluated states.
    pub achieved: f64,
    pub tight: bool,
    pub witness: String,
}

/// Entropy of the two-outcome measurement of `a` on `state`.
pub fn entropy_of_observable(
    a: &PauliOperator,
    state: &DenseState,
    spec: &EntropySpec,
) -> Result<f64> {
    if a.is_identity_up_to_phase() {
        return Err(Error::Domain(format!("{a} is not dichotomic")));
    }
    let e = pauli_expectation(a, state)?;
    spec.dichotomic_entropy(e)
}

/// Maassen–Uffink bound `-log2 max_{i,j} |⟨a_i|b_j⟩|` for two orthonormal bases.
pub fn mu_bound_general(basis_a: &[DenseState], basis_b: &[DenseState]) -> Result<f64> {
    check_orthonormal_basis(basis_a)?;
    check_orthonormal_basis(basis_b)?;
    if basis_a[0].dim() != basis_b[0].dim() {
        return Err(Error::DimensionMismatch {
            left: basis_a[0].n(),
            right: basis_b[0].n(),
        });
    }
    let mut r = 0.0f64;
    for a in basis_a {
        for b in basis_b {
            r = r.max(inner(a.vector().unwrap(), b.vector().unwrap()).norm());
        }
    }
    Ok(-r.log2())
}

/// One row of a tightness table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BasisStateEntry {
    /// `"s"` or `"t"`.
    pub basis: String,
    pub label: u64,
    /// `½[S(𝒮|ψ) + S(𝒯|ψ)]` from exact dyadic probabilities.
    pub average: f64,
    /// Same quantity through dense vectors.
    pub oracle_average: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TightnessReport {
    #[serde(flatten)]
    pub report: URReport,
    /// Every basis state of both bases attains the bound.
    pub all_attain: bool,
    /// Exact and dense routes agree to `1e-9` on every row.
    pub oracle_agreement: bool,
    pub states: Vec<BasisStateEntry>,
}

fn shannon_of(probs: Vec<f64>) -> Result<f64> {
    EntropySpec::Shannon.entropy(&ProbabilityDistribution::new(probs)?)
}

/// Checks that the Maassen–Uffink bound of two stabilizer bases is attained,
/// by evaluating the averaged Shannon entropy on every basis state of both.
///
/// Probabilities come from exact stabilizer overlaps and are cross-checked
/// against dense vectors; `max_n` caps the dense route.
pub fn check_tightness(
    s: &StabilizerGroup,
    t: &StabilizerGroup,
    max_n: usize,
) -> Result<TightnessReport> {
    let n = s.n();
    if t.n() != n {
        return Err(Error::DimensionMismatch {
            left: n,
            right: t.n(),
        });
    }
    if n > max_n.min(oracle::MAX_VECTOR_QUBITS) {
        return Err(Error::ResourceLimit(format!(
            "{n} qubits exceeds oracle limit {max_n}"
        )));
    }
    let bound = s.mu_bound_stabilizer(t)?;
    let dense_s = oracle::stabilizer_basis_dense(s)?;
    let dense_t = oracle::stabilizer_basis_dense(t)?;

    let mut states = Vec::new();
    for (name, own, other, own_dense, other_dense) in [
        ("s", s, t, &dense_s, &dense_t),
        ("t", t, s, &dense_t, &dense_s),
    ] {
        let other_groups: Vec<_> = BasisLabel::all(n)
            .map(|l| other.basis_state_group(l))
            .collect();
        for label in BasisLabel::all(n) {
            let g = own.basis_state_group(label);
            let exact = other_groups
                .iter()
                .map(|h| Ok(g.overlap_squared(h)?.overlap_squared.to_f64()))
                .collect::<Result<Vec<_>>>()?;
            // The state is an eigenstate of its own basis: that entropy is 0.
            let average = 0.5 * shannon_of(exact)?;
            let psi = &own_dense[label.0 as usize];
            let p_other = oracle::measure_distribution(other_dense, psi)?;
            let p_own = oracle::measure_distribution(own_dense, psi)?;
            let oracle_average = 0.5
                * (EntropySpec::Shannon.entropy(&p_own)?
                    + EntropySpec::Shannon.entropy(&p_other)?);
            states.push(BasisStateEntry {
                basis: name.into(),
                label: label.0,
                average,
                oracle_average,
            });
        }
    }
    let (best, achieved) = states.iter().enumerate().map(|(i, e)| (i, e.average)).fold(
        (0, f64::INFINITY),
        |acc, x| if x.1 < acc.1 { x } else { acc },
    );
    let tight = (achieved - bound).abs() <= BOUND_SLACK;
    let all_attain = states
        .iter()
        .all(|e| (e.average - bound).abs() <= BOUND_SLACK);
    let oracle_agreement = states
        .iter()
        .all(|e| (e.average - e.oracle_average).abs() <= BOUND_SLACK);
    let w = &states[best];
    Ok(TightnessReport {
        report: URReport {
            bound,
            achieved,
            tight,
            witness: format!("{}-basis state with label {}", w.basis, w.label),
        },
        all_attain,
        oracle_agreement,
        states,
    })
}

/// Result of checking `Σ_k ⟨A_k⟩² ≤ 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetaCheck {
    pub sum_sq: f64,
    pub holds: bool,
    /// `Σ_k Δ²(A_k) = L - Σ_k ⟨A_k⟩²`, at least `L - 1` when `holds`.
    pub variance_sum: f64,
}

pub fn meta_check(obs: &ObservableSet, state: &DenseState) -> Result<MetaCheck> {
    obs.require_anticommuting()?;
    let mut sum_sq = 0.0;
    for a in obs.ops() {
        let e = pauli_expectation(a, state)?;
        sum_sq += e * e;
    }
    Ok(MetaCheck {
        sum_sq,
        holds: sum_sq <= 1.0 + BOUND_SLACK,
        variance_sum: obs.len() as f64 - sum_sq,
    })
}

/// `ρ = (I + Σ_k a_k A_k)/d`, which has `tr(A_k ρ) = a_k` and is a valid
/// state whenever `Σ a_k² ≤ 1`.
pub fn state_from_expectations(obs: &ObservableSet, targets: &[f64]) -> Result<DenseState> {
    obs.require_anticommuting()?;
    if targets.len() != obs.len() {
        return Err(Error::Domain(format!(
            "{} targets for {} observables",
            targets.len(),
            obs.len()
        )));
    }
    let norm_sq: f64 = targets.iter().map(|a| a * a).sum();
    if norm_sq > 1.0 + 1e-12 {
        return Err(Error::Infeasible(format!("Σ a_k² = {norm_sq} exceeds 1")));
    }
    let d = 1usize << obs.n();
    let mut rho = CMatrix::identity(d);
    for (a, &t) in obs.ops().iter().zip(targets) {
        rho.add_scaled(&oracle::dense_pauli(a)?, Complex64::new(t, 0.0));
    }
    let mut scaled = CMatrix::zeros(d);
    scaled.add_scaled(&rho, Complex64::new(1.0 / d as f64, 0.0));
    let min = hermitian_eigenvalues(&scaled)?[0];
    if min < -EXPECTATION_TOLERANCE {
        return Err(Error::Internal(format!(
            "constructed state has eigenvalue {min}"
        )));
    }
    let state = DenseState::mixed(scaled)?;
    for (a, &t) in obs.ops().iter().zip(targets) {
        let got = pauli_expectation(a, &state)?;
        if (got - t).abs() > EXPECTATION_TOLERANCE {
            return Err(Error::Internal(format!(
                "expectation of {a} is {got}, wanted {t}"
            )));
        }
    }
    Ok(state)
}

/// `min_ρ (1/L) Σ_k S(A_k|ρ) = (L-1)/L · S_0` for `L` pairwise anticommuting
/// ±1 observables and an entropy concave in the squared expectation.
pub fn anticommuting_bound(l: usize, spec: &EntropySpec) -> Result<f64> {
    if l == 0 {
        return Err(Error::Domain("need at least one observable".into()));
    }
    spec.require_concave()?;
    Ok((l - 1) as f64 / l as f64 * spec.flat_entropy()?)
}

/// Number of elements of `g` anticommuting with `p`: `2^{n-1}` or `0`.
///
/// The map `s ↦ [s anticommutes with p]` is a homomorphism onto `Z_2`, so it
/// is either trivial or splits the group in half; it is trivial exactly when
/// every generator commutes with `p`.
pub fn anticommutation_count(g: &StabilizerGroup, p: &PauliOperator) -> Result<u64> {
    if p.n() != g.n() {
        return Err(Error::DimensionMismatch {
            left: g.n(),
            right: p.n(),
        });
    }
    let hit = g.generators().iter().any(|s| !s.commutes_unchecked(p));
    Ok(if hit { 1u64 << (g.n() - 1) } else { 0 })
}

/// [`anticommutation_count`] by enumerating the group.
pub fn anticommutation_count_exhaustive(g: &StabilizerGroup, p: &PauliOperator) -> Result<u64> {
    if p.n() != g.n() {
        return Err(Error::DimensionMismatch {
            left: g.n(),
            right: p.n(),
        });
    }
    Ok(g.enumerate_elements()?
        .iter()
        .filter(|s| !s.commutes_unchecked(p))
        .count() as u64)
}

/// `M = (S \ T) ∪ (T \ S)` with membership decided up to sign.
///
/// Elements keep the sign they carry in their own group.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricDifference {
    s_only: Vec<PauliOperator>,
    t_only: Vec<PauliOperator>,
}

impl SymmetricDifference {
    pub fn s_only(&self) -> &[PauliOperator] {
        &self.s_only
    }

    pub fn t_only(&self) -> &[PauliOperator] {
        &self.t_only
    }

    pub fn len(&self) -> usize {
        self.s_only.len() + self.t_only.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `S \ T` followed by `T \ S`.
    pub fn observables(&self) -> Result<ObservableSet> {
        ObservableSet::new(self.s_only.iter().chain(&self.t_only).cloned().collect())
    }
}

pub fn symmetric_difference(
    s: &StabilizerGroup,
    t: &StabilizerGroup,
) -> Result<SymmetricDifference> {
    if s.n() != t.n() {
        return Err(Error::DimensionMismatch {
            left: s.n(),
            right: t.n(),
        });
    }
    if s.intersect(t)?.c == s.n() {
        return Err(Error::Hypothesis("groups coincide up to signs".into()));
    }
    let only = |a: &StabilizerGroup, b: &StabilizerGroup| -> Result<Vec<PauliOperator>> {
        Ok(a.enumerate_elements()?
            .into_iter()
            .filter(|e| !b.contains_up_to_sign(e))
            .collect())
    };
    Ok(SymmetricDifference {
        s_only: only(s, t)?,
        t_only: only(t, s)?,
    })
}

/// Disjoint anticommuting pairs covering a symmetric difference.
///
/// Indices refer to [`SymmetricDifference::observables`]: `S \ T` first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchingResult {
    pub pairs: Vec<(usize, usize)>,
}

impl MatchingResult {
    /// Index-pair CSV with header `k,l`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("k,l\n");
        for (k, l) in &self.pairs {
            out.push_str(&format!("{k},{l}\n"));
        }
        out
    }
}

/// Kuhn's augmenting-path search for a perfect matching; `adj[u]` lists the
/// right vertices adjacent to left vertex `u`.
fn kuhn_perfect_matching(adj: &[Vec<usize>], right: usize) -> Option<Vec<usize>> {
    fn augment(
        u: usize,
        adj: &[Vec<usize>],
        seen: &mut [bool],
        match_r: &mut [Option<usize>],
    ) -> bool {
        for &v in &adj[u] {
            if seen[v] {
                continue;
            }
            seen[v] = true;
            if match_r[v].is_none_or(|w| augment(w, adj, seen, match_r)) {
                match_r[v] = Some(u);
                return true;
            }
        }
        false
    }

    if adj.len() != right {
        return None;
    }
    let mut match_r: Vec<Option<usize>> = vec![None; right];
    for u in 0..adj.len() {
        let mut seen = vec![false; right];
        if !augment(u, adj, &mut seen, &mut match_r) {
            return None;
        }
    }
    let mut match_l = vec![0; adj.len()];
    for (v, u) in match_r.into_iter().enumerate() {
        match_l[u?] = v;
    }
    Some(match_l)
}

/// Pairs every element of `S \ T` with an anticommuting element of `T \ S`.
pub fn perfect_matching(m: &SymmetricDifference) -> Result<MatchingResult> {
    let adj: Vec<Vec<usize>> = m
        .s_only
        .iter()
        .map(|a| {
            (0..m.t_only.len())
                .filter(|&j| !a.commutes_unchecked(&m.t_only[j]))
                .collect()
        })
        .collect();
    let matched = kuhn_perfect_matching(&adj, m.t_only.len())
        .ok_or_else(|| Error::Internal("no perfect anticommutation matching".into()))?;
    let offset = m.s_only.len();
    Ok(MatchingResult {
        pairs: matched
            .into_iter()
            .enumerate()
            .map(|(i, j)| (i, offset + j))
            .collect(),
    })
}

/// Outcome of checking the symmetric-difference relation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupURReport {
    #[serde(flatten)]
    pub report: URReport,
    /// `L = |M|`.
    pub size: usize,
    pub matching: MatchingResult,
    /// Every basis state of both groups gives exactly `½ S_0`.
    pub basis_states_attain: bool,
    /// Smallest average over the random states (infinite when none sampled).
    pub random_min: f64,
    pub random_samples: usize,
    /// Average at the maximally mixed state, i.e. `S_0`.
    pub maximally_mixed: f64,
}

fn average_from_expectations(
    spec: &EntropySpec,
    expectations: impl Iterator<Item = f64>,
) -> Result<f64> {
    let mut sum = 0.0;
    let mut count = 0usize;
    for e in expectations {
        sum += spec.dichotomic_entropy(e)?;
        count += 1;
    }
    Ok(sum / count as f64)
}

/// Checks `(1/L) Σ_{A ∈ M} S(A|ρ) ≥ ½ S_0` on every basis state of both groups
/// (exactly, through stabilizer expectations) and on `samples` seeded random
/// pure states.
pub fn group_ur_verify(
    s: &StabilizerGroup,
    t: &StabilizerGroup,
    spec: &EntropySpec,
    samples: usize,
    seed: u64,
) -> Result<GroupURReport> {
    spec.require_concave()?;
    let m = symmetric_difference(s, t)?;
    let matching = perfect_matching(&m)?;
    let obs = m.observables()?;
    for &(k, l) in &matching.pairs {
        if obs.ops()[k].commutes_unchecked(&obs.ops()[l]) {
            return Err(Error::Internal(format!("matched pair ({k},{l}) commutes")));
        }
    }
    let bound = 0.5 * spec.flat_entropy()?;

    let mut basis_values = Vec::new();
    for (name, g) in [("s", s), ("t", t)] {
        for label in BasisLabel::all(g.n()) {
            let state = g.basis_state_group(label);
            let exps = obs
                .ops()
                .iter()
                .map(|a| state.stabilizer_expectation(a).map(f64::from))
                .collect::<Result<Vec<_>>>()?;
            let avg = average_from_expectations(spec, exps.into_iter())?;
            basis_values.push((name, label.0, avg));
        }
    }
    let basis_states_attain = basis_values.iter().all(|v| (v.2 - bound).abs() <= 1e-12);

    let n = s.n();
    let random_values = if samples > 0 {
        if n > oracle::MAX_VECTOR_QUBITS {
            return Err(Error::ResourceLimit(format!(
                "{n} qubits exceeds oracle limit"
            )));
        }
        (0..samples as u64)
            .into_par_iter()
            .map(|i| {
                let mut rng = seeded(seed.wrapping_add(i));
                let psi = random_pure_state(n, &mut rng)?;
                let exps = obs
                    .ops()
                    .iter()
                    .map(|a| pauli_expectation(a, &psi))
                    .collect::<Result<Vec<_>>>()?;
                average_from_expectations(spec, exps.into_iter())
            })
            .collect::<Result<Vec<_>>>()?
    } else {
        Vec::new()
    };
    let random_min = random_values.iter().cloned().fold(f64::INFINITY, f64::min);
    let maximally_mixed = average_from_expectations(spec, std::iter::repeat_n(0.0, obs.len()))?;

    let (name, label, best_basis) = basis_values.iter().cloned().fold(
        ("s", 0, f64::INFINITY),
        |a, b| if b.2 < a.2 { b } else { a },
    );
    let achieved = best_basis.min(random_min);
    let tight = basis_states_attain && random_min >= bound - BOUND_SLACK;
    Ok(GroupURReport {
        report: URReport {
            bound,
            achieved,
            tight,
            witness: format!("{name}-basis state with label {label}"),
        },
        size: m.len(),
        matching,
        basis_states_attain,
        random_min,
        random_samples: samples,
        maximally_mixed,
    })
}

/// `-log2[(1 + r(L-1))/L]` for `L` stabilizer bases, `r` the largest overlap
/// between states of two different bases. Bounds the averaged min-entropy.
pub fn min_entropy_multibasis_bound(bases: &[StabilizerGroup]) -> Result<f64> {
    if bases.len() < 2 {
        return Err(Error::Domain(format!(
            "need at least 2 bases, got {}",
            bases.len()
        )));
    }
    let mut r = 0.0f64;
    for k in 0..bases.len() {
        for l in k + 1..bases.len() {
            r = r.max(bases[k].max_overlap(&bases[l])?);
        }
    }
    let l = bases.len() as f64;
    Ok(-((1.0 + r * (l - 1.0)) / l).log2())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entropy::EntropySpec;
    use crate::oracle::graph_state_dense;
    use crate::Graph;

    fn p(s: &str) -> PauliOperator {
        s.parse().unwrap()
    }

    fn g(gens: &[&str]) -> StabilizerGroup {
        StabilizerGroup::from_strs(gens).unwrap()
    }

    fn fig_a() -> StabilizerGroup {
        Graph::complete(4).unwrap().stabilizer_group().unwrap()
    }

    fn fig_b() -> StabilizerGroup {
        Graph::path(4).unwrap().stabilizer_group().unwrap()
    }

    #[test]
    fn observable_entropies() {
        let zero = DenseState::basis(1, 0).unwrap();
        let plus = graph_state_dense(&Graph::empty(1).unwrap()).unwrap();
        assert_eq!(
            entropy_of_observable(&p("Z"), &zero, &EntropySpec::Shannon).unwrap(),
            0.0
        );
        assert!(
            (entropy_of_observable(&p("Z"), &plus, &EntropySpec::Shannon).unwrap() - 1.0).abs()
                < 1e-12
        );
        let mixed = DenseState::maximally_mixed(1).unwrap();
        let t2 = EntropySpec::tsallis(2.0).unwrap();
        assert_eq!(entropy_of_observable(&p("X"), &mixed, &t2).unwrap(), 0.5);
        assert!(entropy_of_observable(&p("I"), &mixed, &t2).is_err());
        assert!(entropy_of_observable(&p("XX"), &mixed, &t2).is_err());
    }

    #[test]
    fn general_mu_bounds() {
        let comp: Vec<_> = (0..2).map(|i| DenseState::basis(1, i).unwrap()).collect();
        let had = oracle::stabilizer_basis_dense(&g(&["+X"])).unwrap();
        assert_eq!(mu_bound_general(&comp, &comp).unwrap(), 0.0);
        assert!((mu_bound_general(&comp, &had).unwrap() - 0.5).abs() < 1e-12);
        // Computational vs. Fourier-type basis on two qubits: (1/2) log2 4 = 1.
        let hh = oracle::stabilizer_basis_dense(&StabilizerGroup::hadamard(2).unwrap()).unwrap();
        let zz: Vec<_> = (0..4).map(|i| DenseState::basis(2, i).unwrap()).collect();
        assert!((mu_bound_general(&zz, &hh).unwrap() - 1.0).abs() < 1e-12);
        assert!(mu_bound_general(&comp, &comp[..1]).is_err());
    }

    #[test]
    fn tightness_examples() {
        let s = g(&["+XX", "+ZZ"]);
        let r = check_tightness(&s, &s, 10).unwrap();
        assert_eq!(r.report.bound, 0.0);
        assert!(r.report.tight && r.all_attain && r.oracle_agreement);

        let r = check_tightness(&g(&["+X"]), &g(&["+Z"]), 10).unwrap();
        assert_eq!(r.report.bound, 0.5);
        assert!(r.report.tight && r.all_attain);
        assert_eq!(r.report.witness, "s-basis state with label 0");

        let r = check_tightness(&fig_a(), &fig_b(), 10).unwrap();
        assert_eq!(r.report.bound, 2.0);
        assert!(r.report.tight && r.all_attain && r.oracle_agreement);
        assert_eq!(r.states.len(), 32);
        assert!(check_tightness(&fig_a(), &fig_b(), 3).is_err());
    }

    #[test]
    fn meta_examples() {
        let xyz = ObservableSet::from_strs(&["X", "Y", "Z"]).unwrap();
        let r = meta_check(&xyz, &DenseState::basis(1, 0).unwrap()).unwrap();
        assert!((r.sum_sq - 1.0).abs() < 1e-12 && r.holds);
        assert!((r.variance_sum - 2.0).abs() < 1e-12);
        let r = meta_check(&xyz, &DenseState::maximally_mixed(1).unwrap()).unwrap();
        assert_eq!(r.sum_sq, 0.0);
        let xy = ObservableSet::from_strs(&["X", "Y"]).unwrap();
        let plus = graph_state_dense(&Graph::empty(1).unwrap()).unwrap();
        assert!((meta_check(&xy, &plus).unwrap().sum_sq - 1.0).abs() < 1e-12);
        let bad = ObservableSet::from_strs(&["XX", "ZZ"]).unwrap();
        assert!(matches!(meta_check(&bad, &plus), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn reverse_construction() {
        let xyz = ObservableSet::from_strs(&["X", "Y", "Z"]).unwrap();
        let rho = state_from_expectations(&xyz, &[0.0, 0.0, 0.0]).unwrap();
        assert!(
            rho.density_matrix()
                .max_abs_diff(&DenseState::maximally_mixed(1).unwrap().density_matrix())
                < 1e-15
        );
        let rho = state_from_expectations(&xyz, &[1.0, 0.0, 0.0]).unwrap();
        let plus = graph_state_dense(&Graph::empty(1).unwrap()).unwrap();
        assert!(rho.density_matrix().max_abs_diff(&plus.density_matrix()) < 1e-12);
        let pair = ObservableSet::from_strs(&["XX", "YX"]).unwrap();
        let rho = state_from_expectations(&pair, &[0.6, 0.8]).unwrap();
        assert_eq!(rho.dim(), 4);
        assert!((pauli_expectation(&p("XX"), &rho).unwrap() - 0.6).abs() < 1e-10);
        assert!(matches!(
            state_from_expectations(&pair, &[0.8, 0.8]),
            Err(Error::Infeasible(_))
        ));
        assert!(state_from_expectations(&pair, &[0.8]).is_err());
    }

    #[test]
    fn anticommuting_bounds() {
        assert!((anticommuting_bound(3, &EntropySpec::Shannon).unwrap() - 2.0 / 3.0).abs() < 1e-15);
        assert_eq!(
            anticommuting_bound(2, &EntropySpec::tsallis(2.0).unwrap()).unwrap(),
            0.25
        );
        assert_eq!(anticommuting_bound(1, &EntropySpec::Shannon).unwrap(), 0.0);
        assert!(matches!(
            anticommuting_bound(2, &EntropySpec::tsallis(2.5).unwrap()),
            Err(Error::NotConcave(_))
        ));
        assert!(anticommuting_bound(2, &EntropySpec::Min).is_err());
    }

    #[test]
    fn anticommutation_counts() {
        assert_eq!(anticommutation_count(&g(&["+X"]), &p("Z")).unwrap(), 1);
        assert_eq!(anticommutation_count(&fig_a(), &p("ZIII")).unwrap(), 8);
        assert_eq!(
            anticommutation_count_exhaustive(&fig_a(), &p("ZIII")).unwrap(),
            8
        );
        assert_eq!(anticommutation_count(&fig_a(), &p("XZZZ")).unwrap(), 0);
    }

    #[test]
    fn symmetric_differences() {
        let m = symmetric_difference(&g(&["+X"]), &g(&["+Z"])).unwrap();
        assert_eq!(m.len(), 2);
        let m = symmetric_difference(&fig_a(), &fig_b()).unwrap();
        assert!((16..=30).contains(&m.len()));
        assert_eq!(m.len(), 30);
        // Share ±ZZ: a subgroup of size 2^{n-1}.
        let m = symmetric_difference(&g(&["+XX", "+ZZ"]), &g(&["+ZI", "-ZZ"])).unwrap();
        assert_eq!(m.len(), 4);
        assert!(matches!(
            symmetric_difference(&g(&["+XX", "+ZZ"]), &g(&["-XX", "+ZZ"])),
            Err(Error::Hypothesis(_))
        ));
    }

    #[test]
    fn matchings() {
        for (s, t) in [
            (g(&["+X"]), g(&["+Z"])),
            (g(&["+XX", "+ZZ"]), g(&["+XI", "+IX"])),
            (fig_a(), fig_b()),
        ] {
            let m = symmetric_difference(&s, &t).unwrap();
            let res = perfect_matching(&m).unwrap();
            assert_eq!(res.pairs.len(), m.len() / 2);
            let obs = m.observables().unwrap();
            let mut used = vec![false; m.len()];
            for &(k, l) in &res.pairs {
                assert!(!obs.ops()[k].commutes(&obs.ops()[l]).unwrap());
                assert!(!used[k] && !used[l]);
                used[k] = true;
                used[l] = true;
            }
            assert!(used.into_iter().all(|u| u));
        }
        assert_eq!(
            MatchingResult {
                pairs: vec![(0, 1)]
            }
            .to_csv(),
            "k,l\n0,1\n"
        );
    }

    #[test]
    fn kuhn_rejects_imperfect() {
        assert_eq!(kuhn_perfect_matching(&[vec![0], vec![0]], 2), None);
        assert_eq!(
            kuhn_perfect_matching(&[vec![0, 1], vec![0]], 2),
            Some(vec![1, 0])
        );
    }

    #[test]
    fn group_relation() {
        let r = group_ur_verify(&fig_a(), &fig_b(), &EntropySpec::Shannon, 50, 42).unwrap();
        assert_eq!(r.report.bound, 0.5);
        assert_eq!(r.report.achieved, 0.5);
        assert!(r.basis_states_attain && r.report.tight);
        assert_eq!(r.maximally_mixed, 1.0);
        let t2 = EntropySpec::tsallis(2.0).unwrap();
        let r = group_ur_verify(&g(&["+X"]), &g(&["+Z"]), &t2, 100, 1).unwrap();
        assert_eq!(r.report.bound, 0.25);
        assert!(r.report.tight);
        assert!(group_ur_verify(&fig_a(), &fig_a(), &EntropySpec::Shannon, 0, 0).is_err());
        assert!(group_ur_verify(&fig_a(), &fig_b(), &EntropySpec::Min, 0, 0).is_err());
    }

    #[test]
    fn multibasis_bound() {
        let x = g(&["+X"]);
        let y = g(&["+Y"]);
        let z = g(&["+Z"]);
        // Frozen from a high-precision evaluation of the formula.
        let two = min_entropy_multibasis_bound(&[x.clone(), z.clone()]).unwrap();
        assert!((two - 0.228446696836388).abs() < 1e-14);
        let three = min_entropy_multibasis_bound(&[x.clone(), y, z]).unwrap();
        assert!((three - 0.313409197557544).abs() < 1e-14);
        assert_eq!(
            min_entropy_multibasis_bound(&[x.clone(), x.clone()]).unwrap(),
            0.0
        );
        assert!(min_entropy_multibasis_bound(&[x]).is_err());
    }
}
