//! Bounded multi-source shortest paths and the top-level solver.
//!
//! A call at level `l` with bound `B` and frontier `S` settles every vertex
//! below some `B' <= B` whose shortest path passes through `S`, delegating
//! to level `l - 1` in batches pulled from a block structure of block size
//! `t * 2^((l-1) t)`. Level 0 is a truncated Dijkstra.

mod checks;
mod params;
mod stats;

use rustc_hash::FxHashMap;
use serde::Serialize;
use thiserror::Error;

pub use checks::{DebugReport, ORACLE_LIMIT};
pub use params::{choose_params, FallbackMode, FallbackReason, ParamChoice, SolveConfig, SolveParams};
pub use stats::ExecStats;

use crate::dstruct::BlockStructure;
use crate::graph::{reduce_degree, Graph, GraphError};
use crate::labels::{extend, op_counts, quiet_cmp, Bound, LabelStore, Vertex};
use crate::pivots::{find_pivots, PivotGroup, SearchScratch};
use crate::scratch::{IndexedHeap, StampSet};
use checks::FrameChecker;

/// Audited constant of the per-call heap budget
/// `c * (pieces + |Q|) * k * (delta + log2 k)`.
pub const PIVOT_HEAP_BUDGET: f64 = 8.0;

#[derive(Debug, Error)]
pub enum SolveError {
    #[error("source {vertex} is not a vertex of a graph with {n} vertices")]
    SourceOutOfRange { vertex: u64, n: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "reason")]
pub enum Method {
    Bmssp,
    Dijkstra(FallbackReason),
}

#[derive(Debug, Clone, Serialize)]
pub struct Solution {
    /// Distance per vertex, `None` when unreachable.
    pub dist: Vec<Option<f64>>,
    pub method: Method,
    pub choice: ParamChoice,
    /// Present when the recursion ran.
    pub params: Option<SolveParams>,
    pub stats: ExecStats,
    pub debug: Option<DebugReport>,
}

/// Solves single-source shortest paths from `source`.
pub fn solve(g: &Graph, source: Vertex, cfg: &SolveConfig) -> Result<Solution, SolveError> {
    if source as usize >= g.n() {
        return Err(SolveError::SourceOutOfRange { vertex: source as u64, n: g.n() });
    }
    let choice = choose_params(g.n(), g.m(), cfg);
    let before = op_counts();
    let mut sol = match choice.fallback {
        Some(reason) => {
            let (store, heap_ops) = dijkstra_heap(g, source);
            let stats = ExecStats {
                relax_total: store.relax_total,
                relax_valid: store.relax_valid,
                relax_equal: store.relax_equal,
                fallback_heap_ops: heap_ops,
                ..Default::default()
            };
            let dist = (0..g.n() as Vertex).map(|v| store.label(v).map(|l| l.length())).collect();
            Solution { dist, method: Method::Dijkstra(reason), choice, params: None, stats, debug: None }
        }
        None => {
            let reduced = reduce_degree(g, choice.delta)?;
            let inner = &reduced.inner;
            let params = SolveParams::new(choice.t, choice.k, choice.delta, inner.n());
            let root = reduced.rep[source as usize];
            let mut solver = Solver::new(inner, params, cfg, root);
            let out = solver.run(Bound::Infinity, vec![root], params.l_max, 0);
            solver.stats.ds.absorb(out.d.stats());
            if let Some(ch) = solver.checker.as_mut() {
                if !out.b_prime.is_infinite() || !out.d.is_empty() {
                    ch.fail("top-level call ended as a partial execution".into());
                }
            }
            let Solver { store, mut stats, checker, edge_hits, .. } = solver;
            stats.relax_total = store.relax_total;
            stats.relax_valid = store.relax_valid;
            stats.relax_equal = store.relax_equal;
            stats.reduced_vertices = inner.n();
            stats.reduced_edges = inner.m();
            stats.max_direct_inserts_per_edge = edge_hits.map(|h| h.into_iter().max().unwrap_or(0));
            let dist = reduced.rep.iter().map(|&r| store.label(r).map(|l| l.length())).collect();
            Solution {
                dist,
                method: Method::Bmssp,
                choice,
                params: Some(params),
                stats,
                debug: checker.map(|c| c.report),
            }
        }
    };
    let ops = op_counts().since(before);
    sol.stats.comparisons = ops.comparisons;
    sol.stats.additions = ops.additions;
    Ok(sol)
}

/// Dijkstra with an indexed heap; the fallback path of [`solve`].
fn dijkstra_heap(g: &Graph, source: Vertex) -> (LabelStore, u64) {
    let mut store = LabelStore::with_source(g.n(), source);
    let mut heap = IndexedHeap::new(g.n());
    heap.push_or_decrease(*store.get(source));
    while let Some(top) = heap.pop() {
        let u = top.curr();
        for (_, v, w) in g.out_edges(u) {
            if store.relax(u, v, w, &Bound::Infinity) {
                heap.push_or_decrease(*store.get(v));
            }
        }
    }
    (store, heap.ops)
}

/// Result of one call: the new bound, the settled set and the leftovers.
pub(crate) struct FrameOut {
    pub(crate) b_prime: Bound,
    pub(crate) u: Vec<Vertex>,
    pub(crate) d: BlockStructure,
}

/// Live pivot groups of one call.
struct Groups {
    members: Vec<Vec<Vertex>>,
    pivot: Vec<Option<Vertex>>,
    queued: Vec<bool>,
    slot: FxHashMap<Vertex, (u32, u32)>,
}

impl Groups {
    fn new(groups: Vec<PivotGroup>) -> Self {
        let mut slot = FxHashMap::default();
        let mut members = Vec::with_capacity(groups.len());
        for (j, g) in groups.into_iter().enumerate() {
            for (i, &v) in g.members.iter().enumerate() {
                slot.insert(v, (j as u32, i as u32));
            }
            members.push(g.members);
        }
        let n = members.len();
        Groups { members, pivot: vec![None; n], queued: vec![false; n], slot }
    }

    fn group_of(&self, v: Vertex) -> Option<usize> {
        self.slot.get(&v).map(|&(j, _)| j as usize)
    }

    fn argmin(&self, j: usize, store: &LabelStore) -> Option<Vertex> {
        self.members[j].iter().copied().min_by(|&a, &b| store.get(a).cmp(store.get(b)))
    }

    /// Removes `u` from its group; returns the group if `u` was its pivot.
    fn remove(&mut self, u: Vertex) -> Option<usize> {
        let (j, i) = self.slot.remove(&u)?;
        let (j, i) = (j as usize, i as usize);
        let list = &mut self.members[j];
        list.swap_remove(i);
        if let Some(&moved) = list.get(i) {
            self.slot.insert(moved, (j as u32, i as u32));
        }
        (self.pivot[j] == Some(u)).then(|| {
            self.pivot[j] = None;
            j
        })
    }
}

struct Solver<'a> {
    g: &'a Graph,
    params: SolveParams,
    store: LabelStore,
    scratch: SearchScratch,
    seen: StampSet,
    /// Id of the call whose settled set currently holds the vertex.
    in_u: Vec<u32>,
    next_frame: u32,
    edge_hits: Option<Vec<u32>>,
    stats: ExecStats,
    checker: Option<FrameChecker>,
}

impl<'a> Solver<'a> {
    fn new(g: &'a Graph, params: SolveParams, cfg: &SolveConfig, source: Vertex) -> Self {
        let n = g.n();
        Solver {
            g,
            params,
            store: LabelStore::with_source(n, source),
            scratch: SearchScratch::new(n),
            seen: StampSet::new(n),
            in_u: vec![0; n],
            next_frame: 0,
            edge_hits: cfg.track_edge_relaxations.then(|| vec![0; g.m()]),
            stats: ExecStats::default(),
            checker: cfg.debug_checks.then(|| FrameChecker::new(g, source)),
        }
    }

    fn new_frame(&mut self) -> u32 {
        self.next_frame += 1;
        self.next_frame
    }

    fn run(&mut self, b: Bound, s: Vec<Vertex>, level: u32, depth: u32) -> FrameOut {
        self.stats.max_depth = self.stats.max_depth.max(depth);
        if let Some(ch) = self.checker.as_mut() {
            ch.entry(&self.store, &b, &s, level);
        }
        let out = if level == 0 { self.base_case(b, &s) } else { self.recurse(b, &s, level, depth) };
        let full = out.d.is_empty();
        self.stats.record_exit(level, full);
        if !full {
            let ratio = out.u.len() as f64 / self.params.u_cap(level) as f64;
            self.stats.max_partial_u_ratio = self.stats.max_partial_u_ratio.max(ratio);
        }
        if let Some(ch) = self.checker.as_mut() {
            ch.exit(&self.store, &b, &s, &out, level);
        }
        out
    }

    fn base_case(&mut self, b: Bound, s: &[Vertex]) -> FrameOut {
        self.stats.base_case_calls += 1;
        let frame = self.new_frame();
        let cap = self.params.u_cap(0);
        let mut d = BlockStructure::new(1, b);
        for &x in s {
            d.insert(x, *self.store.get(x));
        }
        let mut u = Vec::new();
        while !d.is_empty() && u.len() <= cap {
            let (keys, _) = d.pull();
            let x = keys[0];
            u.push(x);
            self.in_u[x as usize] = frame;
            for (_, v, w) in self.g.out_edges(x) {
                if self.store.relax(x, v, w, &b) {
                    d.insert(v, *self.store.get(v));
                }
            }
        }
        // Relaxations after the last pull may have inserted labels below the
        // bound that pull reported, so separate at the smallest remaining one.
        let b_prime = d.min_value().map_or(b, Bound::Finite);
        FrameOut { b_prime, u, d }
    }

    fn recurse(&mut self, b: Bound, s: &[Vertex], level: u32, depth: u32) -> FrameOut {
        let frame = self.new_frame();
        let k = self.params.k as usize;
        let m_l = self.params.block_size(level);
        let mut d = BlockStructure::new(m_l, b);

        let piv = find_pivots(self.g, &mut self.store, &b, s, k, &mut self.scratch);
        self.stats.find_pivots_calls += 1;
        self.stats.pivot_searches += piv.searches as u64;
        self.stats.pivot_heap_ops += piv.heap_ops;
        let budget = PIVOT_HEAP_BUDGET
            * (piv.pieces + piv.q.len()) as f64
            * k as f64
            * (self.params.delta as f64 + (k as f64).log2());
        if piv.heap_ops as f64 > budget {
            self.stats.pivot_budget_exceeded += 1;
            if let Some(ch) = self.checker.as_mut() {
                ch.fail(format!("pivot search used {} heap operations, budget {budget}", piv.heap_ops));
            }
        }
        if let Some(ch) = self.checker.as_mut() {
            ch.pivots(&self.store, &b, s, &piv, k);
        }
        let w = piv.w;
        let mut groups = Groups::new(piv.groups);

        let mut b_prime = b;
        for j in 0..groups.members.len() {
            let p = groups.argmin(j, &self.store).expect("groups are non-empty");
            groups.pivot[j] = Some(p);
            let lp = *self.store.get(p);
            d.insert(p, lp);
            if b_prime.admits(&lp) {
                b_prime = Bound::Finite(lp);
            }
        }

        let u_cap = self.params.u_cap(level);
        let mut u_all: Vec<Vertex> = Vec::new();
        let mut requeue: Vec<usize> = Vec::new();
        while u_all.len() <= u_cap && !d.is_empty() {
            let (pulled, bi) = d.pull();
            if let Some(ch) = self.checker.as_mut() {
                if quiet_cmp(&b_prime, &bi).is_gt() || quiet_cmp(&bi, &b).is_gt() {
                    ch.fail(format!("level {level}: pulled bound {bi:?} outside [{b_prime:?}, {b:?}]"));
                }
            }

            self.seen.clear();
            let mut si = Vec::with_capacity(pulled.len());
            for x in pulled {
                if self.in_u[x as usize] == frame {
                    self.stats.stale_pulls += 1;
                } else if self.seen.insert(x) {
                    si.push(x);
                }
            }
            for idx in 0..si.len() {
                let x = si[idx];
                let Some(j) = groups.group_of(x) else { continue };
                if groups.pivot[j] != Some(x) {
                    continue;
                }
                for &v in &groups.members[j] {
                    if bi.admits(self.store.get(v)) && self.seen.insert(v) {
                        si.push(v);
                    }
                }
            }
            let ratio = si.len() as f64 / (k * m_l) as f64;
            self.stats.max_pull_expansion_ratio = self.stats.max_pull_expansion_ratio.max(ratio);
            if let Some(ch) = self.checker.as_mut() {
                if si.len() > 3 * k * m_l {
                    ch.fail(format!("level {level}: expanded batch of {} exceeds 3kM = {}", si.len(), 3 * k * m_l));
                }
            }

            let sub = self.run(bi, si, level - 1, depth + 1);
            self.stats.ds.absorb(sub.d.stats());
            if let Some(ch) = self.checker.as_mut() {
                if let Some(&u) = sub.u.iter().find(|&&u| self.in_u[u as usize] == frame) {
                    ch.fail(format!("level {level}: vertex {u} settled by two sub-calls"));
                }
                if quiet_cmp(&sub.b_prime, &b_prime).is_lt() {
                    ch.fail(format!("level {level}: B' decreased to {:?}", sub.b_prime));
                }
            }
            d.merge(sub.d, false).expect("unchecked merge");

            for &u in &sub.u {
                self.in_u[u as usize] = frame;
                if let Some(j) = groups.remove(u) {
                    if !groups.members[j].is_empty() && !groups.queued[j] {
                        groups.queued[j] = true;
                        requeue.push(j);
                    }
                }
            }
            for &u in &sub.u {
                let du = *self.store.get(u);
                for (eid, v, wt) in self.g.out_edges(u) {
                    let cand = extend(&du, v, wt);
                    if !self.store.relax_candidate(cand, &b) || bi.admits(&cand) {
                        continue;
                    }
                    d.insert(v, cand);
                    self.stats.direct_inserts += 1;
                    if let Some(hits) = self.edge_hits.as_mut() {
                        hits[eid as usize] += 1;
                    }
                    if let Some(j) = groups.group_of(v) {
                        if !groups.queued[j] {
                            if let Some(p) = groups.pivot[j] {
                                if self.store.get(p) > &cand {
                                    groups.pivot[j] = Some(v);
                                }
                            }
                        }
                    }
                }
            }
            for j in requeue.drain(..) {
                groups.queued[j] = false;
                if let Some(p) = groups.argmin(j, &self.store) {
                    groups.pivot[j] = Some(p);
                    d.insert(p, *self.store.get(p));
                }
            }
            b_prime = sub.b_prime;
            u_all.extend(sub.u);
        }

        for &x in s {
            let lx = *self.store.get(x);
            if !b_prime.admits(&lx) && b.admits(&lx) {
                d.insert(x, lx);
            }
        }

        for &x in &w {
            if self.in_u[x as usize] == frame || !b_prime.admits(self.store.get(x)) {
                continue;
            }
            let dx = *self.store.get(x);
            for (eid, v, wt) in self.g.out_edges(x) {
                let cand = extend(&dx, v, wt);
                if self.store.relax_candidate(cand, &b) && !b_prime.admits(&cand) {
                    d.insert(v, cand);
                    self.stats.w_prime_inserts += 1;
                    if let Some(hits) = self.edge_hits.as_mut() {
                        hits[eid as usize] += 1;
                    }
                }
            }
            self.in_u[x as usize] = frame;
            u_all.push(x);
        }
        FrameOut { b_prime, u: u_all, d }
    }
}

/// Reference Dijkstra distances, for comparison with [`Solution::dist`].
pub fn reference_distances(g: &Graph, source: Vertex) -> Vec<Option<f64>> {
    crate::oracle::dijkstra(g, source).lengths()
}

/// Convenience check used by tests and the CLI: bitwise equality of two
/// distance vectors, returning the first differing vertex.
pub fn first_mismatch(a: &[Option<f64>], b: &[Option<f64>]) -> Option<usize> {
    if a.len() != b.len() {
        return Some(a.len().min(b.len()));
    }
    a.iter().zip(b).position(|(x, y)| x.map(f64::to_bits) != y.map(f64::to_bits))
}
