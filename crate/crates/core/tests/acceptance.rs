//! Acceptance gate. Runs without the libtest harness so that every criterion
//! prints exactly one PASS/FAIL line; exits non-zero if any criterion fails.

mod common;

use std::fs::File;
use std::time::Instant;

use ssspx_core::bmssp::{first_mismatch, reference_distances, Method};
use ssspx_core::graph::reduce_degree;
use ssspx_core::harness::bench::{run_cell, write_csv};
use ssspx_core::harness::{generate, Family, GenSpec, SeededRng, WeightModel};
use ssspx_core::oracle::dijkstra;
use ssspx_core::treepart::partition_tree;
use ssspx_core::{solve, FallbackMode, SolveConfig};

const EQUIV_GRAPHS: usize = 1_000;
const EQUIV_MAX_N: usize = 5_000;
const EQUIV_LIMIT_S: f64 = 60.0;
const DESK_N: usize = 100_000;
const DESK_M: usize = 400_000;
const DESK_LIMIT_S: f64 = 10.0;
const DS_SEQUENCES: usize = 10_000;
const DS_MAX_LEN: u64 = 1_000;
const DS_SIZES: [usize; 5] = [2, 4, 8, 16, 64];
const TREES: usize = 1_000;
const TREE_MAX_N: f64 = 1e5;
/// Audited bound on partition steps per vertex. The walk takes `2n - 1`
/// steps; copies total `n` plus one re-pushed root per group, and a group
/// holds at least `s - 1 >= 1` edges, so steps stay below `4n - 1`.
const TREE_STEPS_PER_VERTEX: f64 = 4.0;
const REDUCE_GRAPHS: usize = 200;
const REDUCE_MAX_N: usize = 500;
const FRAME_GRAPHS: usize = 250;
const FRAME_MAX_N: usize = 200;
const SCALING_EXPONENTS: std::ops::RangeInclusive<u32> = 10..=20;

struct Outcome {
    pass: bool,
    detail: String,
}

fn forced(t: Option<u32>) -> SolveConfig {
    SolveConfig { track_edge_relaxations: true, force_t: t, fallback: FallbackMode::Never, ..SolveConfig::default() }
}

/// Shared between criteria 1 and 5.
#[derive(Default)]
struct EdgeAudit {
    runs: usize,
    worst: u32,
}

fn oracle_equivalence(audit: &mut EdgeAudit) -> Outcome {
    let start = Instant::now();
    let mut rng = SeededRng::new(0xacce_0001);
    let mut mismatches = Vec::new();
    let (mut min_n, mut max_n, mut max_ratio) = (usize::MAX, 0, 0.0f64);
    for i in 0..EQUIV_GRAPHS {
        let mut spec = common::random_spec(&mut rng, EQUIV_MAX_N, i);
        // pin both ends of the size range
        if i < 2 {
            spec.n = [1, EQUIV_MAX_N][i];
            spec.m = Some(if i == 0 { 0 } else { 8 * EQUIV_MAX_N });
        }
        let g = generate(&spec).unwrap();
        min_n = min_n.min(g.n());
        max_n = max_n.max(g.n());
        max_ratio = max_ratio.max(g.m() as f64 / g.n() as f64);
        let source = rng.below(g.n() as u64) as u32;
        let want = reference_distances(&g, source);
        let t = [None, Some(4), Some(2)][i % 3];
        for cfg in [SolveConfig::default(), forced(t)] {
            let sol = solve(&g, source, &cfg).unwrap();
            if let Some(v) = first_mismatch(&sol.dist, &want) {
                mismatches.push(format!("{spec:?} source {source} vertex {v}"));
            }
            if let Some(w) = sol.stats.max_direct_inserts_per_edge {
                audit.runs += 1;
                audit.worst = audit.worst.max(w);
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    Outcome {
        pass: mismatches.is_empty() && secs < EQUIV_LIMIT_S,
        detail: format!(
            "{EQUIV_GRAPHS} graphs x 2 configs, n in [{min_n}, {max_n}], max m/n {max_ratio:.2}, \
             {} mismatches{}, {secs:.1} s (limit {EQUIV_LIMIT_S} s)",
            mismatches.len(),
            mismatches.first().map_or(String::new(), |m| format!(" first: {m}")),
        ),
    }
}

fn desk_scale() -> Outcome {
    let spec = GenSpec {
        family: Family::RandomM,
        n: DESK_N,
        m: Some(DESK_M),
        weights: WeightModel::UniformReal { lo: 0.0, hi: 1.0 },
        seed: 2024,
    };
    let g = generate(&spec).unwrap();
    let start = Instant::now();
    let sol = solve(&g, 0, &SolveConfig::default()).unwrap();
    let secs = start.elapsed().as_secs_f64();
    let exact = first_mismatch(&sol.dist, &reference_distances(&g, 0)).is_none();
    Outcome {
        pass: exact && secs < DESK_LIMIT_S && sol.method == Method::Bmssp,
        detail: format!(
            "n={DESK_N} m={DESK_M} method {:?} params {:?}, exact {exact}, {secs:.2} s (limit {DESK_LIMIT_S} s)",
            sol.method, sol.params
        ),
    }
}

fn ds_model() -> Outcome {
    let mut rng = SeededRng::new(0xacce_0003);
    let mut ops = 0;
    let mut failures = Vec::new();
    for i in 0..DS_SEQUENCES {
        let m = DS_SIZES[i % DS_SIZES.len()];
        let len = 1 + rng.below(DS_MAX_LEN) as usize;
        match common::ds_sequence(&mut rng, m, len) {
            Ok(n) => ops += n,
            Err(e) => failures.push(format!("sequence {i} M={m}: {e}")),
        }
    }
    Outcome {
        pass: failures.is_empty(),
        detail: format!(
            "{DS_SEQUENCES} sequences, {ops} operations, M in {DS_SIZES:?}, {} failures{}",
            failures.len(),
            failures.first().map_or(String::new(), |f| format!(" first: {f}")),
        ),
    }
}

fn tree_partition() -> Outcome {
    let mut rng = SeededRng::new(0xacce_0004);
    let mut bad = Vec::new();
    let mut worst_steps = 0.0f64;
    let mut biggest = 0;
    for i in 0..TREES {
        let n = ((rng.unit() * TREE_MAX_N.ln()).exp() as usize).clamp(1, TREE_MAX_N as usize);
        let n = if i == 0 { TREE_MAX_N as usize } else { n };
        biggest = biggest.max(n);
        let tree = common::random_tree(&mut rng, n);
        let s = (2 + rng.below(63) as usize).min(n);
        let part = partition_tree(&tree, s).unwrap();
        let sizes_ok = part.groups.iter().all(|g| g.vertices.len() >= s && g.vertices.len() < 3 * s);
        let edges: usize = part.groups.iter().map(|g| g.vertices.len() - 1).sum();
        worst_steps = worst_steps.max(part.steps as f64 / n as f64);
        if !sizes_ok || edges != n - 1 {
            bad.push(format!("tree {i} n={n} s={s}"));
        }
    }
    Outcome {
        pass: bad.is_empty() && worst_steps <= TREE_STEPS_PER_VERTEX,
        detail: format!(
            "{TREES} trees up to n={biggest}, {} bad partitions, max steps/n {worst_steps:.3} (c = {TREE_STEPS_PER_VERTEX})",
            bad.len()
        ),
    }
}

fn once_per_edge(audit: &EdgeAudit) -> Outcome {
    Outcome {
        pass: audit.runs > 0 && audit.worst <= 1,
        detail: format!("{} tracked runs, max direct inserts on one edge {}", audit.runs, audit.worst),
    }
}

fn degree_reduction() -> Outcome {
    let mut rng = SeededRng::new(0xacce_0006);
    let mut bad = Vec::new();
    let mut checked = 0usize;
    for i in 0..REDUCE_GRAPHS {
        let spec = common::random_spec(&mut rng, REDUCE_MAX_N, i);
        let g = generate(&spec).unwrap();
        let source = rng.below(g.n() as u64) as u32;
        let want = dijkstra(&g, source).lengths();
        for delta in [3, 4, 5] {
            let r = reduce_degree(&g, delta).unwrap();
            if r.inner.max_in_degree() > delta || r.inner.max_out_degree() > delta {
                bad.push(format!("{spec:?} delta {delta}: degree"));
            }
            let got = dijkstra(&r.inner, r.rep[source as usize]);
            for (v, w) in want.iter().enumerate() {
                checked += 1;
                if got.length(r.rep[v]).map(f64::to_bits) != w.map(f64::to_bits) {
                    bad.push(format!("{spec:?} delta {delta}: vertex {v}"));
                    break;
                }
            }
        }
    }
    Outcome {
        pass: bad.is_empty(),
        detail: format!(
            "{REDUCE_GRAPHS} graphs n<={REDUCE_MAX_N}, delta in {{3,4,5}}, {checked} vertex distances compared, {} failures",
            bad.len()
        ),
    }
}

fn frame_invariants() -> Outcome {
    let mut rng = SeededRng::new(0xacce_0007);
    let (mut frames, mut runs, mut oracle_frames, mut violations) = (0u64, 0u64, 0u64, 0u64);
    let mut first = None;
    let mut deepest = 0;
    for i in 0..FRAME_GRAPHS {
        let spec = common::random_spec(&mut rng, FRAME_MAX_N, i);
        let g = generate(&spec).unwrap();
        let source = rng.below(g.n() as u64) as u32;
        for t in [2, 4] {
            let cfg = SolveConfig { debug_checks: true, ..forced(Some(t)) };
            let sol = solve(&g, source, &cfg).unwrap();
            let report = sol.debug.expect("debug report requested");
            frames += report.frames_checked;
            oracle_frames += u64::from(report.oracle_checked);
            runs += 1;
            violations += report.violation_count;
            deepest = deepest.max(sol.stats.max_depth);
            if first.is_none() {
                first = report.violations.first().map(|v| format!("{spec:?} t={t}: {v}"));
            }
        }
    }
    Outcome {
        pass: violations == 0 && frames > 0 && oracle_frames == runs,
        detail: format!(
            "{FRAME_GRAPHS} graphs n<={FRAME_MAX_N} x t in {{2,4}}, {frames} frames over {runs} runs ({oracle_frames} oracle-checked), \
             depth up to {deepest}, {violations} violations{}",
            first.map_or(String::new(), |f| format!(" first: {f}"))
        ),
    }
}

fn scaling_trend() -> Outcome {
    let cfg = forced(None);
    let mut records = Vec::new();
    for e in SCALING_EXPONENTS {
        let n = 1usize << e;
        let spec = GenSpec {
            family: Family::Path,
            n,
            m: Some(2 * n),
            weights: WeightModel::UniformReal { lo: 0.0, hi: 1.0 },
            seed: 8,
        };
        records.push(run_cell(&spec, 0, &cfg, e <= 16).unwrap());
    }
    let path = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join("scaling_path.csv");
    write_csv(&records, File::create(&path).unwrap()).unwrap();
    let (lo, hi) = (&records[0], &records[records.len() - 1]);
    let growth = hi.ops_per_edge / lo.ops_per_edge;
    let limit = (hi.n as f64).log2() / 4.0;
    let verified = records.iter().all(|r| r.oracle_match != Some(false));
    Outcome {
        pass: growth < limit && verified,
        detail: format!(
            "ops/m {:.1} at n=2^{} -> {:.1} at n=2^{}, growth {growth:.2} (limit {limit:.2}), csv {}",
            lo.ops_per_edge,
            SCALING_EXPONENTS.start(),
            hi.ops_per_edge,
            SCALING_EXPONENTS.end(),
            path.display()
        ),
    }
}

fn main() {
    let mut audit = EdgeAudit::default();
    let mut failed = 0;
    let mut report = |id: u32, name: &str, run: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let o = run();
        if !o.pass {
            failed += 1;
        }
        let verdict = if o.pass { "PASS" } else { "FAIL" };
        println!("[{verdict}] {id} {name}: {} [{:.1} s]", o.detail, start.elapsed().as_secs_f64());
    };
    report(1, "oracle equivalence", &mut || oracle_equivalence(&mut audit));
    report(2, "desk-scale run", &mut desk_scale);
    report(3, "block structure vs sorted model", &mut ds_model);
    report(4, "tree partition", &mut tree_partition);
    report(5, "once-per-edge direct insert", &mut || once_per_edge(&audit));
    report(6, "degree reduction", &mut degree_reduction);
    report(7, "frame invariants", &mut frame_invariants);
    report(8, "per-edge work scaling", &mut scaling_trend);
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
