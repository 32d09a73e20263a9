//! Stabilizer groups, their bases, and exact overlaps between stabilizer states.
//!
//! A group is held as `n` signed generators. Everything here works on the
//! binary symplectic rows of those generators plus exact phase-tracked
//! products; no `2^n`-dimensional vectors are formed. Enumeration of all
//! `2^n` elements is available but only used as a cross-check.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::gf2::Gf2Basis;
use crate::pauli::PauliOperator;

/// Largest `n` for which full element enumeration is permitted.
pub const MAX_ENUMERATION_QUBITS: usize = 24;

/// A validated stabilizer group on `n` qubits.
#[derive(Debug, Clone)]
pub struct StabilizerGroup {
    n: usize,
    generators: Vec<PauliOperator>,
    rows: Gf2Basis,
}

impl PartialEq for StabilizerGroup {
    fn eq(&self, other: &Self) -> bool {
        self.generators == other.generators
    }
}

/// Which generators of a group carry a flipped sign; bit `i` is generator `i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BasisLabel(pub u64);

impl BasisLabel {
    /// All `2^n` labels in ascending order.
    pub fn all(n: usize) -> impl Iterator<Item = BasisLabel> {
        (0..1u64 << n).map(BasisLabel)
    }
}

/// The sign-aware intersection of two groups.
///
/// `basis` spans `S ∩ ±T` (signs ignored); each entry holds the element as it
/// appears in `S` and as it appears in `T`. Those agree on the symplectic part
/// and may differ by a sign.
#[derive(Debug, Clone)]
pub struct Intersection {
    pub c: usize,
    pub basis: Vec<(PauliOperator, PauliOperator)>,
    n: usize,
}

impl Intersection {
    /// `log2 |S⁺|`, where `S⁺` is the set of elements shared with equal sign.
    ///
    /// The sign comparison is a homomorphism onto `{±1}`, so `S⁺` is either the
    /// whole intersection or an index-two subgroup of it.
    pub fn p(&self) -> usize {
        let all_agree = self.basis.iter().all(|(s, t)| s == t);
        if all_agree {
            self.c
        } else {
            self.c - 1
        }
    }

    /// `log2 |S⁺ ∪ S⁻|`; equal to `c`.
    pub fn q(&self) -> usize {
        self.c
    }

    fn elements(&self, want_equal: bool) -> Result<Vec<PauliOperator>> {
        if self.c > MAX_ENUMERATION_QUBITS {
            return Err(Error::ResourceLimit(format!(
                "intersection of dimension {} too large to enumerate",
                self.c
            )));
        }
        let mut out = Vec::new();
        for mask in 0..1u64 << self.c {
            let mut s = PauliOperator::from_raw(self.n, 0, 0, 0);
            let mut t = s.clone();
            for (k, (bs, bt)) in self.basis.iter().enumerate() {
                if (mask >> k) & 1 == 1 {
                    s = s.mul_unchecked(bs);
                    t = t.mul_unchecked(bt);
                }
            }
            if (s == t) == want_equal {
                out.push(s);
            }
        }
        Ok(out)
    }

    /// `S⁺ = S ∩ T` with signs compared.
    pub fn plus_elements(&self) -> Result<Vec<PauliOperator>> {
        self.elements(true)
    }

    /// `S⁻ = S ∩ -T`: elements of `S` whose negation lies in `T`.
    pub fn minus_elements(&self) -> Result<Vec<PauliOperator>> {
        self.elements(false)
    }
}

/// `|⟨S|T⟩|²` together with the subgroup sizes it was computed from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OverlapReport {
    pub p: usize,
    pub q: usize,
    pub overlap_squared: Dyadic,
}

impl StabilizerGroup {
    /// Validates `generators` as an independent, commuting, Hermitian set of
    /// `n` operators on `n` qubits whose group does not contain `-I`.
    pub fn new(generators: Vec<PauliOperator>) -> Result<Self> {
        let n = match generators.first() {
            Some(g) => g.n(),
            None => {
                return Err(Error::GeneratorCount {
                    expected: 1,
                    found: 0,
                })
            }
        };
        for g in &generators {
            if g.n() != n {
                return Err(Error::DimensionMismatch {
                    left: n,
                    right: g.n(),
                });
            }
        }
        if generators.len() != n {
            return Err(Error::GeneratorCount {
                expected: n,
                found: generators.len(),
            });
        }
        for g in &generators {
            if !g.is_hermitian() {
                return Err(Error::NotHermitian(g.to_string()));
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if !generators[i].commutes_unchecked(&generators[j]) {
                    return Err(Error::NotCommuting(i, j));
                }
            }
        }
        let mut rows = Gf2Basis::new();
        for (i, g) in generators.iter().enumerate() {
            if let Err(combo) = rows.insert(g.symplectic_key(), 1u128 << i) {
                // g_i equals ± the product of earlier generators; the sign decides
                // whether the set is merely redundant or generates -I.
                let mut prod = g.clone();
                for (k, h) in generators.iter().enumerate() {
                    if (combo >> k) & 1 == 1 {
                        prod = prod.mul_unchecked(h);
                    }
                }
                return Err(if prod.phase() == 2 {
                    Error::ContainsMinusIdentity
                } else {
                    Error::DependentGenerator(i)
                });
            }
        }
        Ok(StabilizerGroup {
            n,
            generators,
            rows,
        })
    }

    /// Parses one signed Pauli string per line; `#` starts a comment.
    pub fn parse_generators(text: &str) -> Result<Vec<PauliOperator>> {
        let mut gens = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let p = PauliOperator::parse(line).map_err(|e| Error::AtLine {
                line: idx + 1,
                source: Box::new(e),
            })?;
            gens.push(p);
        }
        Ok(gens)
    }

    pub fn from_text(text: &str) -> Result<Self> {
        Self::new(Self::parse_generators(text)?)
    }

    /// Convenience constructor from Pauli strings.
    pub fn from_strs(gens: &[&str]) -> Result<Self> {
        let ops = gens
            .iter()
            .map(|s| PauliOperator::parse(s))
            .collect::<Result<Vec<_>>>()?;
        Self::new(ops)
    }

    /// `{+Z_i}`, stabilizing `|0…0⟩`.
    pub fn computational(n: usize) -> Result<Self> {
        Self::new(
            (0..n)
                .map(|i| PauliOperator::from_raw(n, 0, 1 << i, 0))
                .collect(),
        )
    }

    /// `{+X_i}`, stabilizing `|+…+⟩`.
    pub fn hadamard(n: usize) -> Result<Self> {
        Self::new(
            (0..n)
                .map(|i| PauliOperator::from_raw(n, 1 << i, 0, 0))
                .collect(),
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[PauliOperator] {
        &self.generators
    }

    /// Product of the generators selected by `mask`.
    pub fn element(&self, mask: u64) -> PauliOperator {
        let mut acc = PauliOperator::from_raw(self.n, 0, 0, 0);
        for (k, g) in self.generators.iter().enumerate() {
            if (mask >> k) & 1 == 1 {
                acc = acc.mul_unchecked(g);
            }
        }
        acc
    }

    /// All `2^n` elements, indexed by generator mask.
    pub fn enumerate_elements(&self) -> Result<Vec<PauliOperator>> {
        if self.n > MAX_ENUMERATION_QUBITS {
            return Err(Error::ResourceLimit(format!(
                "cannot enumerate 2^{} group elements",
                self.n
            )));
        }
        // Gray-code walk: one multiplication per element.
        let size = 1usize << self.n;
        let mut out = vec![PauliOperator::from_raw(self.n, 0, 0, 0); size];
        let mut acc = out[0].clone();
        for i in 1..size {
            let flip = i.trailing_zeros() as usize;
            acc = acc.mul_unchecked(&self.generators[flip]);
            let gray = i ^ (i >> 1);
            out[gray] = acc.clone();
        }
        Ok(out)
    }

    /// Generator mask of the element equal to `±p`, if any.
    pub fn find_up_to_sign(&self, p: &PauliOperator) -> Option<u64> {
        if p.n() != self.n {
            return None;
        }
        self.rows.decompose(p.symplectic_key()).map(|c| c as u64)
    }

    pub fn contains_up_to_sign(&self, p: &PauliOperator) -> bool {
        self.find_up_to_sign(p).is_some()
    }

    /// True when `p` itself, sign included, is a group element.
    pub fn contains(&self, p: &PauliOperator) -> bool {
        self.find_up_to_sign(p)
            .is_some_and(|m| self.element(m) == *p)
    }

    /// The group of the basis state selected by `label`.
    pub fn basis_state_group(&self, label: BasisLabel) -> StabilizerGroup {
        let generators = self
            .generators
            .iter()
            .enumerate()
            .map(|(i, g)| {
                if (label.0 >> i) & 1 == 1 {
                    g.negated()
                } else {
                    g.clone()
                }
            })
            .collect();
        StabilizerGroup {
            n: self.n,
            generators,
            rows: self.rows.clone(),
        }
    }

    /// `tr(a·ρ)` for the stabilizer state `ρ` of this group.
    ///
    /// `±1` when `±a` is an element, else `0`.
    pub fn stabilizer_expectation(&self, a: &PauliOperator) -> Result<i8> {
        self.check_n(a.n())?;
        if !a.is_hermitian() {
            return Err(Error::NotHermitian(a.to_string()));
        }
        Ok(match self.find_up_to_sign(a) {
            None => 0,
            Some(mask) => {
                if self.element(mask) == *a {
                    1
                } else {
                    -1
                }
            }
        })
    }

    fn check_n(&self, other: usize) -> Result<()> {
        if other != self.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: other,
            });
        }
        Ok(())
    }

    /// The intersection `S ∩ ±T` via row reduction of the stacked generators.
    pub fn intersect(&self, other: &StabilizerGroup) -> Result<Intersection> {
        self.check_n(other.n)?;
        let n = self.n;
        // Rows 0..n are S, n..2n are T. Every dependency among the stacked rows
        // has the form ΣS = ΣT and names one intersection element.
        let mut stacked = Gf2Basis::new();
        let mut basis = Vec::new();
        for (i, g) in self.generators.iter().chain(&other.generators).enumerate() {
            if let Err(combo) = stacked.insert(g.symplectic_key(), 1u128 << i) {
                let combo = combo ^ (1u128 << i);
                let s_mask = (combo & ((1u128 << n) - 1)) as u64;
                let t_mask = (combo >> n) as u64;
                basis.push((self.element(s_mask), other.element(t_mask)));
            }
        }
        for (s, t) in &basis {
            if !s.same_up_to_sign(t) {
                return Err(Error::Internal("intersection rows disagree".into()));
            }
        }
        Ok(Intersection {
            c: basis.len(),
            basis,
            n,
        })
    }

    /// `|⟨S|T⟩|² = (|S⁺| - |S⁻|) / 2^n` for the stabilizer states of both groups.
    pub fn overlap_squared(&self, other: &StabilizerGroup) -> Result<OverlapReport> {
        let inter = self.intersect(other)?;
        let (p, q) = (inter.p(), inter.q());
        if p + 1 < q {
            return Err(Error::Internal(format!("p = {p} < q - 1 = {}", q - 1)));
        }
        let value = Dyadic::pow2(p as i32 + 1) - Dyadic::pow2(q as i32);
        Ok(OverlapReport {
            p,
            q,
            overlap_squared: value.scale_down(self.n as u32),
        })
    }

    /// Same quantity as [`overlap_squared`](Self::overlap_squared), found by
    /// enumerating both groups. Exponential; a cross-check only.
    pub fn overlap_squared_by_enumeration(&self, other: &StabilizerGroup) -> Result<OverlapReport> {
        self.check_n(other.n)?;
        let t_elems: HashMap<u128, PauliOperator> = other
            .enumerate_elements()?
            .into_iter()
            .map(|e| (e.symplectic_key(), e))
            .collect();
        let (mut plus, mut minus) = (0i64, 0i64);
        for s in self.enumerate_elements()? {
            if let Some(t) = t_elems.get(&s.symplectic_key()) {
                if *t == s {
                    plus += 1;
                } else {
                    minus += 1;
                }
            }
        }
        let p = plus.trailing_zeros() as usize;
        let q = (plus + minus).trailing_zeros() as usize;
        Ok(OverlapReport {
            p,
            q,
            overlap_squared: Dyadic::new(plus - minus, self.n as u32),
        })
    }

    /// `r = max |⟨s_i|t_j⟩| = 2^{-(n-c)/2}` over the two stabilizer bases.
    pub fn max_overlap(&self, other: &StabilizerGroup) -> Result<f64> {
        Ok((-self.mu_bound_stabilizer(other)?).exp2())
    }

    /// Maassen–Uffink bound `-log2 r = (n - c)/2` bits for the two bases.
    pub fn mu_bound_stabilizer(&self, other: &StabilizerGroup) -> Result<f64> {
        let c = self.intersect(other)?.c;
        Ok((self.n - c) as f64 / 2.0)
    }
}
