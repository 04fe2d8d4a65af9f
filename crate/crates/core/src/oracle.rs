//! Reference Dijkstra over the same label algebra, plus the target-set
//! oracle used by the frame-level debug checks.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::graph::Graph;
use crate::labels::{Bound, DistLabel, LabelStore, Vertex};

#[derive(Debug, Clone)]
pub struct OracleResult {
    pub labels: Vec<Option<DistLabel>>,
    /// Vertices in the order they were settled.
    pub order: Vec<Vertex>,
    /// Relaxations that reproduced an existing tuple exactly; zero in every
    /// run so far, since distinct predecessors always differ in `pred`.
    pub tie_anomalies: u64,
}

impl OracleResult {
    pub fn length(&self, v: Vertex) -> Option<f64> {
        self.labels[v as usize].map(|l| l.length())
    }

    pub fn lengths(&self) -> Vec<Option<f64>> {
        self.labels.iter().map(|l| l.map(|l| l.length())).collect()
    }
}

/// Textbook Dijkstra with lazy deletion, relaxing with `B = Infinity`.
pub fn dijkstra(g: &Graph, source: Vertex) -> OracleResult {
    let n = g.n();
    let mut store = LabelStore::with_source(n, source);
    let mut settled = vec![false; n];
    let mut heap = BinaryHeap::new();
    let mut order = Vec::new();
    heap.push(Reverse(DistLabel::source(source)));
    while let Some(Reverse(top)) = heap.pop() {
        let u = top.curr();
        if settled[u as usize] || !top.same_as(store.get(u)) {
            continue;
        }
        settled[u as usize] = true;
        order.push(u);
        for (_, v, w) in g.out_edges(u) {
            if settled[v as usize] {
                continue;
            }
            if store.relax(u, v, w, &Bound::Infinity) {
                heap.push(Reverse(*store.get(v)));
            }
        }
    }
    let tie_anomalies = store.relax_equal;
    OracleResult { labels: store.into_labels(), order, tie_anomalies }
}

/// `targets(B, S)`: vertices strictly below `bound` whose canonical
/// shortest-path chain visits a vertex of `sources`.
pub fn true_targets(oracle: &OracleResult, bound: &Bound, sources: &[Vertex]) -> Vec<Vertex> {
    let mut hits = vec![false; oracle.labels.len()];
    chain_hits(oracle, sources, &mut hits);
    let mut out: Vec<Vertex> = oracle
        .order
        .iter()
        .copied()
        .filter(|&v| hits[v as usize])
        .filter(|&v| bound.admits(oracle.labels[v as usize].as_ref().unwrap()))
        .collect();
    out.sort_unstable();
    out
}

/// Marks every reachable vertex whose canonical chain passes through one of
/// `marks`. Relies on predecessors being settled before their successors.
pub fn chain_hits(oracle: &OracleResult, marks: &[Vertex], hits: &mut [bool]) {
    hits.iter_mut().for_each(|h| *h = false);
    for &s in marks {
        hits[s as usize] = true;
    }
    for &v in &oracle.order {
        if let Some(p) = oracle.labels[v as usize].and_then(|l| l.pred()) {
            if hits[p as usize] {
                hits[v as usize] = true;
            }
        }
    }
}
