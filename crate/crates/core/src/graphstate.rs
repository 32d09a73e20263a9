//! Graph states and the overlaps between graph-state bases.
//!
//! The overlap between the bases of two graphs `G1` and `G2` only depends on
//! their edge-wise XOR, so everything reduces to the amplitudes
//!
//! ```text
//! R_n(y, A) = ⟨y|H^{⊗n}|G_A⟩ = 2^{-n} Σ_x (-1)^{y·x + Σ_{i<j} x_i A_ij x_j}
//! ```
//!
//! of one graph state against the `X`-eigenbasis. With both states carrying the
//! `2^{-n/2}` normalization the prefactor is exactly `2^{-n}`, the vector over
//! `y` has unit norm, and `R_0 = 1` starts the recurrence. Two independent
//! routes compute `R_n`: a vertex-peeling recurrence and a Walsh–Hadamard
//! butterfly over the quadratic-form sign vector.

use std::collections::HashMap;
use std::fmt;

use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::pauli::{check_n, mask, PauliOperator};
use crate::stabgroup::StabilizerGroup;

/// Default qubit limit for full amplitude tables.
pub const MAX_AMPLITUDE_QUBITS: usize = 20;

/// A simple undirected graph; row `i` of `adj` has bit `j` set for edge `i–j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl Graph {
    pub fn empty(n: usize) -> Result<Self> {
        check_n(n)?;
        Ok(Graph { n, adj: vec![0; n] })
    }

    pub fn complete(n: usize) -> Result<Self> {
        check_n(n)?;
        let full = mask(n);
        Ok(Graph {
            n,
            adj: (0..n).map(|i| full & !(1 << i)).collect(),
        })
    }

    /// The path `0 – 1 – … – n-1` (linear cluster).
    pub fn path(n: usize) -> Result<Self> {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_edges(n, &edges)
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for &(i, j) in edges {
            g.add_edge(i, j)?;
        }
        Ok(g)
    }

    /// Validates a symmetric adjacency with zero diagonal.
    pub fn from_adjacency(adj: Vec<u64>) -> Result<Self> {
        let n = adj.len();
        check_n(n)?;
        for (i, &row) in adj.iter().enumerate() {
            if row & !mask(n) != 0 {
                return Err(Error::InvalidGraph(format!("row {i} has bits beyond n")));
            }
            if (row >> i) & 1 == 1 {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {i}")));
            }
            for (j, &other) in adj.iter().enumerate() {
                if (row >> j) & 1 != (other >> i) & 1 {
                    return Err(Error::InvalidGraph(format!("asymmetric entry ({i},{j})")));
                }
            }
        }
        Ok(Graph { n, adj })
    }

    fn add_edge(&mut self, i: usize, j: usize) -> Result<()> {
        if i >= self.n || j >= self.n {
            return Err(Error::InvalidGraph(format!("edge ({i},{j}) out of range")));
        }
        if i == j {
            return Err(Error::InvalidGraph(format!("self-loop at vertex {i}")));
        }
        self.adj[i] |= 1 << j;
        self.adj[j] |= 1 << i;
        Ok(())
    }

    /// Reads `n` on the first line, then one 0-indexed `i j` edge per line.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(k, l)| (k + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let at = |line: usize, e: Error| Error::AtLine {
            line,
            source: Box::new(e),
        };
        let (first, head) = lines
            .next()
            .ok_or_else(|| Error::InvalidGraph("missing vertex count".into()))?;
        let n: usize = head.parse().map_err(|_| {
            at(
                first,
                Error::InvalidGraph(format!("bad vertex count {head:?}")),
            )
        })?;
        let mut g = Self::empty(n).map_err(|e| at(first, e))?;
        for (line, body) in lines {
            let parts: Vec<&str> = body.split_whitespace().collect();
            let parsed = match parts.as_slice() {
                [a, b] => a.parse::<usize>().ok().zip(b.parse::<usize>().ok()),
                _ => None,
            };
            let (i, j) = parsed.ok_or_else(|| {
                at(
                    line,
                    Error::InvalidGraph(format!("expected \"i j\", got {body:?}")),
                )
            })?;
            g.add_edge(i, j).map_err(|e| at(line, e))?;
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn adjacency(&self) -> &[u64] {
        &self.adj
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        (self.adj[i] >> j) & 1 == 1
    }

    /// Edges `(i, j)` with `i < j`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.has_edge(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// `K_i = X_i ∏_{j ∈ N(i)} Z_j`, all with sign `+`.
    pub fn generators(&self) -> Vec<PauliOperator> {
        (0..self.n)
            .map(|i| PauliOperator::from_raw(self.n, 1 << i, self.adj[i], 0))
            .collect()
    }

    pub fn stabilizer_group(&self) -> Result<StabilizerGroup> {
        StabilizerGroup::new(self.generators())
    }

    /// Edge-wise XOR of the adjacency matrices.
    pub fn graph_sum(&self, other: &Graph) -> Result<Graph> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let adj = self
            .adj
            .iter()
            .zip(&other.adj)
            .map(|(a, b)| a ^ b)
            .collect();
        Ok(Graph { n: self.n, adj })
    }

    /// Parity of `Σ_{i<j} x_i A_ij x_j` (the number of edges inside `x`).
    pub fn edge_parity(&self, x: u64) -> bool {
        let mut parity = 0u32;
        let mut rest = x;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            parity ^= (self.adj[i] & rest).count_ones() & 1;
        }
        parity == 1
    }

    /// `(-1)^{Σ_{i<j} x_i A_ij x_j}` for every `x`, as `+1` / `-1`.
    fn quadratic_signs(&self) -> Vec<i64> {
        let size = 1usize << self.n;
        let mut parity = vec![0u8; size];
        for x in 1..size {
            let i = x.trailing_zeros() as usize;
            let rest = x & (x - 1);
            parity[x] = parity[rest] ^ ((self.adj[i] & rest as u64).count_ones() & 1) as u8;
        }
        parity
            .into_iter()
            .map(|b| if b == 0 { 1 } else { -1 })
            .collect()
    }
}

impl fmt::Display for Graph {
    /// The graph file format.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.n)?;
        for (i, j) in self.edges() {
            writeln!(f, "{i} {j}")?;
        }
        Ok(())
    }
}

/// Renders `y` with qubit 0 first.
pub fn bit_string(y: u64, n: usize) -> String {
    (0..n)
        .map(|q| if (y >> q) & 1 == 1 { '1' } else { '0' })
        .collect()
}

/// All amplitudes `R_n(y, A)` of one graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AmplitudeTable {
    n: usize,
    values: Vec<Dyadic>,
    r_max: Dyadic,
    attaining: Vec<u64>,
}

impl AmplitudeTable {
    fn from_values(n: usize, values: Vec<Dyadic>) -> Self {
        let r_max = values.iter().map(|v| v.abs()).max().unwrap_or(Dyadic::ZERO);
        let attaining = (0..values.len() as u64)
            .filter(|&y| values[y as usize].abs() == r_max)
            .collect();
        AmplitudeTable {
            n,
            values,
            r_max,
            attaining,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn value(&self, y: u64) -> Dyadic {
        self.values[y as usize]
    }

    /// Values indexed by `y` (bit `j` of the index is qubit `j`).
    pub fn values(&self) -> &[Dyadic] {
        &self.values
    }

    /// `r_A = max_y |R_n(y, A)|`.
    pub fn r_max(&self) -> Dyadic {
        self.r_max
    }

    /// Every `y` with `|R_n(y, A)| = r_A`, ascending.
    pub fn attaining(&self) -> &[u64] {
        &self.attaining
    }

    /// CSV with columns `y,numerator,log2_denominator,sign`; the numerator is
    /// the magnitude and `sign` is `-1`, `0` or `1`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("y,numerator,log2_denominator,sign\n");
        for (y, v) in self.values.iter().enumerate() {
            out.push_str(&format!(
                "{},{},{},{}\n",
                bit_string(y as u64, self.n),
                v.num.abs(),
                v.log2_den,
                v.signum()
            ));
        }
        out
    }
}

/// Full amplitude table by an in-place Walsh–Hadamard butterfly.
pub fn amplitude_transform(g: &Graph) -> Result<AmplitudeTable> {
    amplitude_transform_with_limit(g, MAX_AMPLITUDE_QUBITS)
}

pub fn amplitude_transform_with_limit(g: &Graph, limit: usize) -> Result<AmplitudeTable> {
    if g.n > limit {
        return Err(Error::ResourceLimit(format!(
            "amplitude table for n = {} exceeds limit {limit}",
            g.n
        )));
    }
    let mut v = g.quadratic_signs();
    let mut half = 1usize;
    while half < v.len() {
        for block in v.chunks_mut(2 * half) {
            let (lo, hi) = block.split_at_mut(half);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (s, d) = (*a + *b, *a - *b);
                *a = s;
                *b = d;
            }
        }
        half *= 2;
    }
    let n = g.n as u32;
    let values = v.into_iter().map(|s| Dyadic::new(s, n)).collect();
    Ok(AmplitudeTable::from_values(g.n, values))
}

/// Memoized vertex-peeling evaluation of `R_n(y, A)`.
///
/// Peeling vertex `k` (with `υ = y_k` and `a'` the edges from `k` to later
/// vertices) gives `2^{n-k} R = 2^{n-k-1} R'(y') + (-1)^υ 2^{n-k-1} R'(y' ⊕ a')`.
/// The peeling order is fixed, so the remaining subgraph is determined by the
/// depth `k` and the memo key is `(k, remaining y)`. Values are carried as
/// integers `2^{n-k} R`.
#[derive(Debug)]
pub struct AmplitudeRecurrence<'g> {
    graph: &'g Graph,
    memo: HashMap<(usize, u64), i64>,
}

impl<'g> AmplitudeRecurrence<'g> {
    pub fn new(graph: &'g Graph) -> Self {
        AmplitudeRecurrence {
            graph,
            memo: HashMap::new(),
        }
    }

    fn scaled(&mut self, k: usize, y: u64) -> i64 {
        if k == self.graph.n {
            return 1;
        }
        if let Some(&v) = self.memo.get(&(k, y)) {
            return v;
        }
        let upsilon = (y >> k) & 1;
        let rest = y & !(1u64 << k);
        let later = !mask(k + 1);
        let a = self.graph.adj[k] & later;
        let first = self.scaled(k + 1, rest);
        let second = self.scaled(k + 1, rest ^ a);
        let v = if upsilon == 0 {
            first + second
        } else {
            first - second
        };
        self.memo.insert((k, y), v);
        v
    }

    pub fn amplitude(&mut self, y: u64) -> Result<Dyadic> {
        if y & !mask(self.graph.n) != 0 {
            return Err(Error::Domain(format!(
                "y has bits beyond n = {}",
                self.graph.n
            )));
        }
        Ok(Dyadic::new(self.scaled(0, y), self.graph.n as u32))
    }

    /// The full table through the recurrence.
    pub fn table(&mut self) -> Result<AmplitudeTable> {
        if self.graph.n > MAX_AMPLITUDE_QUBITS {
            return Err(Error::ResourceLimit(format!(
                "amplitude table for n = {} exceeds limit {MAX_AMPLITUDE_QUBITS}",
                self.graph.n
            )));
        }
        let values = (0..1u64 << self.graph.n)
            .map(|y| self.amplitude(y))
            .collect::<Result<Vec<_>>>()?;
        Ok(AmplitudeTable::from_values(self.graph.n, values))
    }
}

/// One amplitude through the recurrence.
pub fn amplitude_recurrence(y: u64, g: &Graph) -> Result<Dyadic> {
    AmplitudeRecurrence::new(g).amplitude(y)
}

/// Maassen–Uffink bound in bits for the bases of `g1` and `g2`.
pub fn mu_bound_graphs(g1: &Graph, g2: &Graph) -> Result<f64> {
    let table = amplitude_transform(&g1.graph_sum(g2)?)?;
    let r = table.r_max();
    Ok(match r.exact_log2() {
        Some(e) => -e as f64,
        None => -r.to_f64().log2(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fig_a() -> Graph {
        Graph::complete(4).unwrap()
    }

    fn fig_b() -> Graph {
        Graph::path(4).unwrap()
    }

    #[test]
    fn generators_of_examples() {
        let s: Vec<String> = Graph::empty(1)
            .unwrap()
            .generators()
            .iter()
            .map(|p| p.to_string())
            .collect();
        assert_eq!(s, ["+X"]);
        let s: Vec<String> = fig_a().generators().iter().map(|p| p.to_string()).collect();
        assert_eq!(s, ["+XZZZ", "+ZXZZ", "+ZZXZ", "+ZZZX"]);
        let s: Vec<String> = fig_b().generators().iter().map(|p| p.to_string()).collect();
        assert_eq!(s, ["+XZII", "+ZXZI", "+IZXZ", "+IIZX"]);
        fig_a().stabilizer_group().unwrap();
    }

    #[test]
    fn sums() {
        let g = fig_a();
        assert_eq!(g.graph_sum(&g).unwrap(), Graph::empty(4).unwrap());
        assert_eq!(g.graph_sum(&Graph::empty(4).unwrap()).unwrap(), g);
        let c = fig_a().graph_sum(&fig_b()).unwrap();
        assert_eq!(c.edges(), vec![(0, 2), (0, 3), (1, 3)]);
        assert!(g.graph_sum(&Graph::empty(3).unwrap()).is_err());
    }

    #[test]
    fn one_qubit_amplitudes() {
        let g = Graph::empty(1).unwrap();
        assert_eq!(amplitude_recurrence(0, &g).unwrap(), Dyadic::ONE);
        assert_eq!(amplitude_recurrence(1, &g).unwrap(), Dyadic::ZERO);
        let t = amplitude_transform(&g).unwrap();
        assert_eq!(t.values(), &[Dyadic::ONE, Dyadic::ZERO]);
    }

    #[test]
    fn single_edge() {
        let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let t = amplitude_transform(&g).unwrap();
        assert_eq!(t.r_max(), Dyadic::pow2(-1));
        assert_eq!(
            t.values(),
            &[
                Dyadic::pow2(-1),
                Dyadic::pow2(-1),
                Dyadic::pow2(-1),
                -Dyadic::pow2(-1)
            ]
        );
        assert_eq!(mu_bound_graphs(&Graph::empty(2).unwrap(), &g).unwrap(), 1.0);
    }

    #[test]
    fn figure_graphs() {
        let c = fig_a().graph_sum(&fig_b()).unwrap();
        assert_eq!(amplitude_transform(&c).unwrap().r_max(), Dyadic::pow2(-2));
        assert_eq!(mu_bound_graphs(&fig_a(), &fig_b()).unwrap(), 2.0);
        assert_eq!(mu_bound_graphs(&fig_a(), &fig_a()).unwrap(), 0.0);
    }

    #[test]
    fn fully_connected_closed_forms() {
        for n in 2..=9usize {
            let g = Graph::complete(n).unwrap();
            let mut rec = AmplitudeRecurrence::new(&g);
            for y in 0..1u64 << n {
                let v = rec.amplitude(y).unwrap();
                if n % 2 == 0 {
                    assert_eq!(v.abs(), Dyadic::pow2(-(n as i32) / 2));
                } else {
                    assert!(v.is_zero() || v.abs() == Dyadic::pow2(-(n as i32 - 1) / 2));
                }
            }
        }
    }

    #[test]
    fn csv_export() {
        let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let csv = amplitude_transform(&g).unwrap().to_csv();
        assert_eq!(
            csv,
            "y,numerator,log2_denominator,sign\n00,1,1,1\n10,1,1,1\n01,1,1,1\n11,1,1,-1\n"
        );
    }

    #[test]
    fn file_format() {
        let g = Graph::parse("4\n0 1\n1 2 # middle\n2 3\n").unwrap();
        assert_eq!(g, fig_b());
        assert_eq!(Graph::parse(&g.to_string()).unwrap(), g);
        assert!(matches!(
            Graph::parse("3\n0 3\n"),
            Err(Error::AtLine { line: 2, .. })
        ));
        assert!(matches!(
            Graph::parse("3\n1 1\n"),
            Err(Error::AtLine { line: 2, .. })
        ));
        assert!(matches!(
            Graph::parse("x\n"),
            Err(Error::AtLine { line: 1, .. })
        ));
    }

    #[test]
    fn adjacency_validation() {
        assert!(Graph::from_adjacency(vec![0b10, 0b01]).is_ok());
        assert!(Graph::from_adjacency(vec![0b10, 0b00]).is_err());
        assert!(Graph::from_adjacency(vec![0b01, 0b00]).is_err());
    }

    #[test]
    fn limit_enforced() {
        let g = Graph::empty(6).unwrap();
        assert!(matches!(
            amplitude_transform_with_limit(&g, 5),
            Err(Error::ResourceLimit(_))
        ));
    }
}
