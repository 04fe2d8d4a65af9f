//! Directed weighted graphs and the constant-degree transform.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::labels::Vertex;

pub mod dimacs;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Edge {
    pub src: Vertex,
    pub dst: Vertex,
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GraphError {
    #[error("edge {edge}: negative weight {weight}")]
    NegativeWeight { edge: usize, weight: f64 },
    #[error("edge {edge}: weight {weight} is not finite")]
    NonFiniteWeight { edge: usize, weight: f64 },
    #[error("edge {edge}: vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { edge: usize, vertex: u64, n: usize },
    #[error("degree bound must be at least 3, got {0}")]
    InvalidDelta(usize),
    #[error("graph with {0} vertices does not fit 32-bit vertex ids")]
    TooManyVertices(usize),
}

/// Checks weights and vertex ranges of a raw edge list.
pub fn validate(n: usize, edges: &[Edge]) -> Result<(), GraphError> {
    if n > u32::MAX as usize {
        return Err(GraphError::TooManyVertices(n));
    }
    for (i, e) in edges.iter().enumerate() {
        for v in [e.src, e.dst] {
            if v as usize >= n {
                return Err(GraphError::VertexOutOfRange { edge: i, vertex: v as u64, n });
            }
        }
        if !e.weight.is_finite() {
            return Err(GraphError::NonFiniteWeight { edge: i, weight: e.weight });
        }
        if e.weight < 0.0 {
            return Err(GraphError::NegativeWeight { edge: i, weight: e.weight });
        }
    }
    Ok(())
}

/// Validated directed graph with a CSR out-adjacency index.
///
/// Edge ids are positions in [`Graph::edges`]; out-edges of a vertex are
/// listed in ascending edge id.
#[derive(Debug, Clone)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    offsets: Vec<usize>,
    adj_dst: Vec<Vertex>,
    adj_w: Vec<f64>,
    adj_id: Vec<u32>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
            && self.edges.len() == other.edges.len()
            && self
                .edges
                .iter()
                .zip(&other.edges)
                .all(|(a, b)| a.src == b.src && a.dst == b.dst && a.weight.to_bits() == b.weight.to_bits())
    }
}

impl Graph {
    pub fn new(n: usize, mut edges: Vec<Edge>) -> Result<Self, GraphError> {
        validate(n, &edges)?;
        for e in &mut edges {
            // fold -0.0 into +0.0 so bitwise comparisons of sums stay stable
            if e.weight == 0.0 {
                e.weight = 0.0;
            }
        }
        let mut offsets = vec![0usize; n + 1];
        for e in &edges {
            offsets[e.src as usize + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let m = edges.len();
        let mut cursor = offsets.clone();
        let mut adj_dst = vec![0; m];
        let mut adj_w = vec![0.0; m];
        let mut adj_id = vec![0; m];
        for (i, e) in edges.iter().enumerate() {
            let slot = &mut cursor[e.src as usize];
            adj_dst[*slot] = e.dst;
            adj_w[*slot] = e.weight;
            adj_id[*slot] = i as u32;
            *slot += 1;
        }
        Ok(Graph { n, edges, offsets, adj_dst, adj_w, adj_id })
    }

    pub fn from_tuples(n: usize, edges: &[(Vertex, Vertex, f64)]) -> Result<Self, GraphError> {
        Self::new(n, edges.iter().map(|&(src, dst, weight)| Edge { src, dst, weight }).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Out-edges of `u` as `(edge id, dst, weight)`.
    #[inline]
    pub fn out_edges(&self, u: Vertex) -> impl Iterator<Item = (u32, Vertex, f64)> + '_ {
        let (lo, hi) = (self.offsets[u as usize], self.offsets[u as usize + 1]);
        (lo..hi).map(move |i| (self.adj_id[i], self.adj_dst[i], self.adj_w[i]))
    }

    pub fn out_degree(&self, u: Vertex) -> usize {
        self.offsets[u as usize + 1] - self.offsets[u as usize]
    }

    pub fn in_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for e in &self.edges {
            deg[e.dst as usize] += 1;
        }
        deg
    }

    pub fn max_out_degree(&self) -> usize {
        (0..self.n as Vertex).map(|u| self.out_degree(u)).max().unwrap_or(0)
    }

    pub fn max_in_degree(&self) -> usize {
        self.in_degrees().into_iter().max().unwrap_or(0)
    }
}

/// Graph whose in- and out-degrees are bounded by `delta`, obtained by
/// replacing every vertex with a zero-weight cycle.
#[derive(Debug, Clone)]
pub struct ReducedGraph {
    pub inner: Graph,
    pub delta: usize,
    /// original vertex -> first vertex of its cycle
    pub rep: Vec<Vertex>,
    /// cycle vertex -> original vertex
    pub origin: Vec<Vertex>,
}

impl ReducedGraph {
    /// Cycle length of an original vertex.
    pub fn cycle_len(&self, v: Vertex) -> usize {
        let start = self.rep[v as usize] as usize;
        let end = self.rep.get(v as usize + 1).map_or(self.origin.len(), |&r| r as usize);
        end - start
    }
}

/// Replaces each vertex `v` of total degree `D` by a zero-weight cycle of
/// `max(1, ceil(D / (delta - 2)))` consecutive vertices. Incident edge slots
/// (incoming first, then outgoing, each by edge id) are dealt round-robin
/// over the cycle, and original edge `(u, v, w)` becomes an edge from `u`'s
/// outgoing slot to `v`'s incoming slot with the same weight.
pub fn reduce_degree(g: &Graph, delta: usize) -> Result<ReducedGraph, GraphError> {
    if delta < 3 {
        return Err(GraphError::InvalidDelta(delta));
    }
    let n = g.n();
    let per_vertex = delta - 2;
    let in_deg = g.in_degrees();
    let mut rep = Vec::with_capacity(n);
    let mut cycle_len = Vec::with_capacity(n);
    let mut total = 0usize;
    for (v, &din) in in_deg.iter().enumerate() {
        let d = din + g.out_degree(v as Vertex);
        let c = d.div_ceil(per_vertex).max(1);
        rep.push(total as Vertex);
        cycle_len.push(c);
        total += c;
    }
    if total > u32::MAX as usize {
        return Err(GraphError::TooManyVertices(total));
    }
    let mut origin = Vec::with_capacity(total);
    for (v, &c) in cycle_len.iter().enumerate() {
        origin.extend(std::iter::repeat_n(v as Vertex, c));
    }

    // Slot counters: incoming slots are numbered first, so the k-th incoming
    // edge of v takes slot k and the k-th outgoing edge takes slot in_deg + k.
    let mut next_in = vec![0usize; n];
    let mut next_out = vec![0usize; n];
    let slot_vertex = |v: usize, slot: usize| rep[v] + (slot % cycle_len[v]) as Vertex;

    let mut in_slot = vec![0 as Vertex; g.m()];
    for (i, e) in g.edges().iter().enumerate() {
        let v = e.dst as usize;
        in_slot[i] = slot_vertex(v, next_in[v]);
        next_in[v] += 1;
    }
    let mut edges = Vec::with_capacity(g.m() + total);
    for (i, e) in g.edges().iter().enumerate() {
        let u = e.src as usize;
        let from = slot_vertex(u, in_deg[u] + next_out[u]);
        next_out[u] += 1;
        edges.push(Edge { src: from, dst: in_slot[i], weight: e.weight });
    }
    for v in 0..n {
        let c = cycle_len[v];
        if c < 2 {
            continue;
        }
        for j in 0..c {
            edges.push(Edge { src: rep[v] + j as Vertex, dst: rep[v] + ((j + 1) % c) as Vertex, weight: 0.0 });
        }
    }
    let inner = Graph::new(total, edges)?;
    Ok(ReducedGraph { inner, delta, rep, origin })
}
