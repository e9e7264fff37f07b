//! Layered decoding graphs.
//!
//! The graph mirrors the matrix factorization rather than the collapsed
//! QPCM: syndrome nodes (rows of the M layer) connect to intermediate d
//! nodes (rows of H̃ / G̃), and every d node ties a parity constraint over
//! its error bits. Decoding over this product structure avoids the extra
//! cycles the collapsed matrix would introduce.

use super::{CssCode, NonCssCode, QuantumCode};

/// Syndrome node class: degree-1 doped nodes (A), regular nodes (B), and
/// degree-2 nodes bridging the X and Z sides of a non-CSS graph (C).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SNodeKind {
    A,
    B,
    C,
}

/// Layered bipartite decoding graph.
///
/// Indexing: d nodes 0..n are the X side and n..2n the Z side; error bits
/// 0..N are the x half (one per qubit) and N..2N the z half.
#[derive(Debug, Clone)]
pub struct FactorGraph {
    n_qubits: usize,
    n_d_per_side: usize,
    s_kind: Vec<SNodeKind>,
    s_adj: Vec<Vec<u32>>,
    d_adj: Vec<Vec<u32>>,
}

impl FactorGraph {
    pub fn from_css(code: &CssCode) -> Self {
        let n = code.ldgm().n();
        let mut s_kind = Vec::new();
        let mut s_adj = Vec::new();
        for (side, dm) in [(0usize, code.m1()), (1, code.m2())] {
            let offset = (side * n) as u32;
            for r in 0..dm.rows() {
                s_kind.push(if r < dm.t() { SNodeKind::A } else { SNodeKind::B });
                s_adj.push(dm.matrix().iter_row_ones(r).map(|c| offset + c as u32).collect());
            }
        }
        FactorGraph {
            n_qubits: 2 * n,
            n_d_per_side: n,
            s_kind,
            s_adj,
            d_adj: d_layer(code.ldgm()),
        }
    }

    pub fn from_noncss(code: &NonCssCode) -> Self {
        let n = code.ldgm().n();
        let rows = code.md_left().rows();
        let mut s_adj = Vec::with_capacity(rows);
        for r in 0..rows {
            let mut adj: Vec<u32> = code.md_left().iter_row_ones(r).map(|c| c as u32).collect();
            adj.extend(code.md_right().iter_row_ones(r).map(|c| (n + c) as u32));
            s_adj.push(adj);
        }
        FactorGraph {
            n_qubits: 2 * n,
            n_d_per_side: n,
            s_kind: code.kinds().to_vec(),
            s_adj,
            d_adj: d_layer(code.ldgm()),
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    /// Number of d nodes on each side (N/2).
    pub fn n_d_per_side(&self) -> usize {
        self.n_d_per_side
    }

    pub fn n_syndrome_nodes(&self) -> usize {
        self.s_adj.len()
    }

    pub fn s_kind(&self, s: usize) -> SNodeKind {
        self.s_kind[s]
    }

    /// d-node neighbors of syndrome node `s` (global d indices).
    pub fn s_neighbors(&self, s: usize) -> &[u32] {
        &self.s_adj[s]
    }

    /// Error-bit neighbors of d node `d` (global error-bit indices).
    pub fn d_neighbors(&self, d: usize) -> &[u32] {
        &self.d_adj[d]
    }

    pub fn n_d_nodes(&self) -> usize {
        self.d_adj.len()
    }

    /// Number of syndrome edges arriving at d node `d`.
    pub fn d_degree_upper(&self, d: usize) -> usize {
        self.s_adj.iter().filter(|adj| adj.contains(&(d as u32))).count()
    }

    /// True when no syndrome node connects both sides, i.e. the graph
    /// splits into two independent subgraphs.
    pub fn is_disconnected_css(&self) -> bool {
        let n = self.n_d_per_side as u32;
        self.s_adj
            .iter()
            .all(|adj| adj.iter().all(|&d| d < n) || adj.iter().all(|&d| d >= n))
    }

    /// Syndrome nodes with edges on both sides.
    pub fn bridging_nodes(&self) -> Vec<usize> {
        let n = self.n_d_per_side as u32;
        (0..self.s_adj.len())
            .filter(|&s| {
                let adj = &self.s_adj[s];
                adj.iter().any(|&d| d < n) && adj.iter().any(|&d| d >= n)
            })
            .collect()
    }

    /// Total edge count of the upper (syndrome) layer.
    pub fn upper_edge_count(&self) -> usize {
        self.s_adj.iter().map(Vec::len).sum()
    }

    /// Total edge count of the lower (d-to-error) layer.
    pub fn lower_edge_count(&self) -> usize {
        self.d_adj.iter().map(Vec::len).sum()
    }
}

fn d_layer(ldgm: &super::LdgmCode) -> Vec<Vec<u32>> {
    let n = ldgm.n();
    let big_n = 2 * n;
    let h = ldgm.pcm();
    let g = ldgm.generator();
    let mut d_adj = Vec::with_capacity(2 * n);
    for r in 0..n {
        d_adj.push(h.iter_row_ones(r).map(|c| c as u32).collect());
    }
    for r in 0..n {
        d_adj.push(g.iter_row_ones(r).map(|c| (big_n + c) as u32).collect());
    }
    d_adj
}

/// Builds the layered decoding graph for either code family.
pub fn build_factor_graph(code: &QuantumCode) -> FactorGraph {
    match code {
        QuantumCode::Css(c) => FactorGraph::from_css(c),
        QuantumCode::NonCss(c) => FactorGraph::from_noncss(c),
    }
}
