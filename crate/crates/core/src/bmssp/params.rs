//! Parameter selection for the recursion.

use serde::{Deserialize, Serialize};

/// When to bypass the recursion in favour of plain Dijkstra.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FallbackMode {
    /// Use Dijkstra for tiny, dense or shallow instances.
    #[default]
    Auto,
    /// Always run the recursion.
    Never,
    /// Always run Dijkstra.
    Always,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FallbackReason {
    /// Fewer than 2^10 vertices.
    Tiny,
    /// `m >= n log2 n`.
    Dense,
    /// `t < 4`.
    ShallowT,
    /// Requested through [`FallbackMode::Always`].
    Requested,
}

#[derive(Debug, Clone, Default)]
pub struct SolveConfig {
    /// Run frame-level invariant checks (oracle-backed on small graphs).
    pub debug_checks: bool,
    /// Count direct-insert relaxations per edge.
    pub track_edge_relaxations: bool,
    pub force_t: Option<u32>,
    pub force_k: Option<u32>,
    pub force_delta: Option<usize>,
    pub fallback: FallbackMode,
}

/// Formula outputs plus the fallback verdict, before degree reduction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ParamChoice {
    pub delta: usize,
    pub t: u32,
    pub k: u32,
    /// `delta > log2 k`. Not a fallback trigger: with `delta >= 3` it holds
    /// for every realistic `n`, and only the time bound depends on it.
    pub delta_exceeds_log_k: bool,
    pub fallback: Option<FallbackReason>,
}

/// Parameters of one recursive solve on the degree-reduced graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SolveParams {
    pub t: u32,
    pub k: u32,
    pub delta: usize,
    pub l_max: u32,
}

const CAP: usize = usize::MAX / 8;

fn pow2_times(base: usize, exp: u64) -> usize {
    if exp >= 60 {
        return CAP;
    }
    base.saturating_mul(1usize << exp).min(CAP)
}

impl SolveParams {
    /// Top level `ceil(log2(n_reduced) / t)`; the top call then always has
    /// room for every vertex.
    pub fn new(t: u32, k: u32, delta: usize, n_reduced: usize) -> Self {
        let log_n = (n_reduced.max(1) as f64).log2();
        let l_max = (log_n / t as f64).ceil() as u32;
        SolveParams { t, k, delta, l_max }
    }

    /// Block size `t * 2^((l-1) t)` of the structure at level `l >= 1`.
    pub fn block_size(&self, l: u32) -> usize {
        debug_assert!(l >= 1);
        pow2_times(self.t as usize, (l as u64 - 1) * self.t as u64)
    }

    /// Settled-vertex budget `t^3 * 2^(l t)` of a call at level `l`.
    pub fn u_cap(&self, l: u32) -> usize {
        let t = self.t as usize;
        pow2_times(t * t * t, l as u64 * self.t as u64)
    }

    /// Frontier-size bound `t^2 * 2^(l t)` for a call at level `l`.
    pub fn s_cap(&self, l: u32) -> usize {
        let t = self.t as usize;
        pow2_times(t * t, l as u64 * self.t as u64)
    }
}

/// Evaluates the parameter formulas for a graph with `n` vertices and `m`
/// edges and decides whether to fall back to Dijkstra.
pub fn choose_params(n: usize, m: usize, cfg: &SolveConfig) -> ParamChoice {
    let nf = n.max(1) as f64;
    let log_n = nf.log2();
    let loglog = log_n.log2();
    let ratio = m as f64 / nf;
    // f64::min ignores a NaN operand; log2 of 0 is -inf and floors away
    let quarter = (0.25 * ratio.min(loglog)).floor();
    let delta = match cfg.force_delta {
        Some(d) => d,
        None if quarter.is_finite() && quarter > 3.0 => quarter as usize,
        None => 3,
    };
    let t_raw = (log_n * loglog / delta as f64).sqrt().ceil();
    let t_formula = if t_raw.is_finite() && t_raw >= 1.0 { t_raw as u32 } else { 1 };
    let t = cfg.force_t.unwrap_or(t_formula).max(2);
    let k = cfg.force_k.unwrap_or_else(|| {
        let tf = t as f64;
        (tf / tf.log2()).ceil() as u32
    });
    let k = k.max(1);
    let delta_exceeds_log_k = delta as f64 > (k as f64).log2();

    let fallback = match cfg.fallback {
        FallbackMode::Always => Some(FallbackReason::Requested),
        FallbackMode::Never => None,
        FallbackMode::Auto => {
            if n < 1 << 10 {
                Some(FallbackReason::Tiny)
            } else if m as f64 >= nf * log_n {
                Some(FallbackReason::Dense)
            } else if cfg.force_t.unwrap_or(t_formula) < 4 {
                Some(FallbackReason::ShallowT)
            } else {
                None
            }
        }
    };
    ParamChoice { delta, t, k, delta_exceeds_log_k, fallback }
}
