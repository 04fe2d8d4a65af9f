use serde::Serialize;

use crate::dstruct::DsStats;

/// Counters gathered during one solve.
#[derive(Debug, Clone, Default, Serialize)]
pub struct ExecStats {
    pub reduced_vertices: usize,
    pub reduced_edges: usize,
    pub relax_total: u64,
    pub relax_valid: u64,
    /// Valid relaxations that rewrote an identical label.
    pub relax_equal: u64,
    /// Insertions through the `[B_i, B)` window after a sub-call.
    pub direct_inserts: u64,
    /// Insertions from relaxing `W'` at call exit.
    pub w_prime_inserts: u64,
    /// Largest per-edge direct-insert count; only with edge tracking.
    pub max_direct_inserts_per_edge: Option<u32>,
    pub ds: DsStats,
    pub find_pivots_calls: u64,
    pub pivot_searches: u64,
    pub pivot_heap_ops: u64,
    pub pivot_budget_exceeded: u64,
    pub base_case_calls: u64,
    /// Pulled keys dropped because the vertex was already settled in the
    /// same call (its stored value had gone stale).
    pub stale_pulls: u64,
    pub full_per_level: Vec<u64>,
    pub partial_per_level: Vec<u64>,
    pub max_depth: u32,
    /// Largest `|U| / (t^3 2^(l t))` over partial executions.
    pub max_partial_u_ratio: f64,
    /// Largest `|S_i| / (k M(l))` after pivot-group expansion.
    pub max_pull_expansion_ratio: f64,
    /// Heap operations of the Dijkstra fallback.
    pub fallback_heap_ops: u64,
    pub comparisons: u64,
    pub additions: u64,
}

impl ExecStats {
    pub(crate) fn record_exit(&mut self, level: u32, full: bool) {
        let l = level as usize;
        if self.full_per_level.len() <= l {
            self.full_per_level.resize(l + 1, 0);
            self.partial_per_level.resize(l + 1, 0);
        }
        if full {
            self.full_per_level[l] += 1;
        } else {
            self.partial_per_level[l] += 1;
        }
    }
}
