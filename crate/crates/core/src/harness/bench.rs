//! Benchmark matrix runner with CSV and JSON output.

use std::io::Write;
use std::time::Instant;

use serde::Serialize;
use thiserror::Error;

use super::gen::{generate, GenError, GenSpec};
use crate::bmssp::{first_mismatch, reference_distances, solve, Method, SolveConfig, SolveError};

#[derive(Debug, Error)]
pub enum BenchError {
    #[error(transparent)]
    Gen(#[from] GenError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// One solved cell. Field order is the CSV column order.
#[derive(Debug, Clone, Serialize)]
pub struct BenchRecord {
    pub family: String,
    pub n: usize,
    pub m: usize,
    pub weights: String,
    pub seed: u64,
    pub rep: u32,
    pub method: String,
    pub t: Option<u32>,
    pub k: Option<u32>,
    pub delta: Option<usize>,
    pub l_max: Option<u32>,
    pub reduced_n: usize,
    pub wall_ms: f64,
    pub relax_total: u64,
    pub relax_valid: u64,
    pub direct_inserts: u64,
    pub ds_inserts: u64,
    pub ds_pulls: u64,
    pub ds_merges: u64,
    pub find_pivots_calls: u64,
    pub max_depth: u32,
    pub comparisons: u64,
    pub additions: u64,
    /// `(comparisons + additions) / m`.
    pub ops_per_edge: f64,
    /// Empty when verification was skipped.
    pub oracle_match: Option<bool>,
}

/// Solves every spec `reps` times; repetition `r` uses seed `spec.seed + r`.
pub fn run_bench(
    specs: &[GenSpec],
    reps: u32,
    cfg: &SolveConfig,
    verify: bool,
) -> Result<Vec<BenchRecord>, BenchError> {
    let mut out = Vec::with_capacity(specs.len() * reps as usize);
    for spec in specs {
        for rep in 0..reps {
            let cell = GenSpec { seed: spec.seed.wrapping_add(rep as u64), ..*spec };
            out.push(run_cell(&cell, rep, cfg, verify)?);
        }
    }
    Ok(out)
}

pub fn run_cell(spec: &GenSpec, rep: u32, cfg: &SolveConfig, verify: bool) -> Result<BenchRecord, BenchError> {
    let g = generate(spec)?;
    let start = Instant::now();
    let sol = solve(&g, 0, cfg)?;
    let wall_ms = start.elapsed().as_secs_f64() * 1e3;
    let oracle_match = verify.then(|| first_mismatch(&sol.dist, &reference_distances(&g, 0)).is_none());
    let s = &sol.stats;
    let method = match sol.method {
        Method::Bmssp => "bmssp".to_string(),
        Method::Dijkstra(reason) => format!("dijkstra-{}", serde_json::to_value(reason)?.as_str().unwrap_or("")),
    };
    Ok(BenchRecord {
        family: spec.family.to_string(),
        n: g.n(),
        m: g.m(),
        weights: spec.weights.to_string(),
        seed: spec.seed,
        rep,
        method,
        t: sol.params.map(|p| p.t),
        k: sol.params.map(|p| p.k),
        delta: sol.params.map(|p| p.delta),
        l_max: sol.params.map(|p| p.l_max),
        reduced_n: s.reduced_vertices,
        wall_ms,
        relax_total: s.relax_total,
        relax_valid: s.relax_valid,
        direct_inserts: s.direct_inserts,
        ds_inserts: s.ds.inserts,
        ds_pulls: s.ds.pulls,
        ds_merges: s.ds.merges,
        find_pivots_calls: s.find_pivots_calls,
        max_depth: s.max_depth,
        comparisons: s.comparisons,
        additions: s.additions,
        ops_per_edge: (s.comparisons + s.additions) as f64 / g.m().max(1) as f64,
        oracle_match,
    })
}

pub fn write_csv<W: Write>(records: &[BenchRecord], out: W) -> Result<(), BenchError> {
    let mut w = csv::Writer::from_writer(out);
    for r in records {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_json<W: Write>(records: &[BenchRecord], out: W) -> Result<(), BenchError> {
    serde_json::to_writer_pretty(out, records)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::gen::{Family, WeightModel};

    #[test]
    fn one_cell_one_record() {
        let spec = GenSpec {
            family: Family::Grid,
            n: 64,
            m: None,
            weights: WeightModel::UniformInt { lo: 1, hi: 9 },
            seed: 5,
        };
        let recs = run_bench(&[spec], 1, &SolveConfig::default(), true).unwrap();
        assert_eq!(recs.len(), 1);
        assert_eq!(recs[0].oracle_match, Some(true));
        let mut buf = Vec::new();
        write_csv(&recs, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("family,n,m,weights,seed,rep,method,"));
        assert_eq!(text.lines().count(), 2);
    }
}
