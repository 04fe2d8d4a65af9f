mod common;

use proptest::prelude::*;
use ssspx_core::bmssp::{first_mismatch, reference_distances};
use ssspx_core::harness::{generate, SeededRng};
use ssspx_core::{solve, FallbackMode, Graph, SolveConfig};

fn forced(t: u32) -> SolveConfig {
    SolveConfig {
        debug_checks: true,
        track_edge_relaxations: true,
        force_t: Some(t),
        fallback: FallbackMode::Never,
        ..SolveConfig::default()
    }
}

fn check(g: &Graph, source: u32, cfg: &SolveConfig) -> Result<(), String> {
    let sol = solve(g, source, cfg).map_err(|e| e.to_string())?;
    let want = reference_distances(g, source);
    if let Some(v) = first_mismatch(&sol.dist, &want) {
        return Err(format!("vertex {v}: got {:?}, want {:?}", sol.dist[v], want[v]));
    }
    if let Some(report) = &sol.debug {
        if report.frames_checked == 0 {
            return Err("debug checks inspected no frame".into());
        }
        if !report.is_clean() {
            return Err(format!("debug violations: {:?}", report.violations));
        }
    }
    if let Some(max) = sol.stats.max_direct_inserts_per_edge {
        if max > 1 {
            return Err(format!("an edge took {max} direct inserts"));
        }
    }
    Ok(())
}

#[test]
fn generated_graphs_match_oracle_with_checks() {
    let mut rng = SeededRng::new(0x5eed);
    let mut deepest = 0;
    for i in 0..300 {
        let spec = common::random_spec(&mut rng, 400, i);
        let g = generate(&spec).unwrap();
        let source = rng.below(g.n() as u64) as u32;
        for t in [2, 3, 4] {
            if let Err(e) = check(&g, source, &forced(t)) {
                panic!("{spec:?} source {source} t {t}: {e}");
            }
        }
        deepest = deepest.max(solve(&g, source, &forced(2)).unwrap().stats.max_depth);
    }
    assert!(deepest >= 3, "recursion never went deeper than {deepest}");
}

#[test]
fn default_config_matches_oracle() {
    let mut rng = SeededRng::new(17);
    for i in 0..40 {
        let spec = common::random_spec(&mut rng, 3000, i);
        let g = generate(&spec).unwrap();
        let sol = solve(&g, 0, &SolveConfig::default()).unwrap();
        assert_eq!(first_mismatch(&sol.dist, &reference_distances(&g, 0)), None, "{spec:?}");
    }
}

fn arb_graph() -> impl Strategy<Value = Graph> {
    (1usize..40).prop_flat_map(|n| {
        let edge = (0..n as u32, 0..n as u32, prop_oneof![Just(0.0), 0.0f64..5.0, (0u32..4).prop_map(f64::from)]);
        prop::collection::vec(edge, 0..6 * n).prop_map(move |edges| Graph::from_tuples(n, &edges).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn arbitrary_multigraphs_match_oracle(g in arb_graph(), s in any::<prop::sample::Index>(), t in 2u32..6) {
        let source = s.index(g.n()) as u32;
        prop_assert_eq!(check(&g, source, &forced(t)), Ok(()));
    }
}
