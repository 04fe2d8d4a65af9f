//! Frame-level invariant checks, backed by a Dijkstra oracle on the reduced
//! graph when it is small enough.

use std::cmp::Ordering;

use serde::Serialize;

use crate::graph::Graph;
use crate::labels::{quiet_cmp, Bound, LabelStore, Vertex};
use crate::oracle::{chain_hits, dijkstra, true_targets, OracleResult};
use crate::pivots::PivotOutput;

use super::FrameOut;

/// Oracle checks are skipped above this many reduced vertices.
pub const ORACLE_LIMIT: usize = 50_000;
const KEPT_MESSAGES: usize = 32;

#[derive(Debug, Clone, Default, Serialize)]
pub struct DebugReport {
    pub frames_checked: u64,
    pub oracle_checked: bool,
    pub violation_count: u64,
    /// The first few violation messages.
    pub violations: Vec<String>,
}

impl DebugReport {
    pub fn is_clean(&self) -> bool {
        self.violation_count == 0
    }
}

fn push(report: &mut DebugReport, msg: String) {
    report.violation_count += 1;
    if report.violations.len() < KEPT_MESSAGES {
        report.violations.push(msg);
    }
}

pub(crate) struct FrameChecker {
    oracle: Option<OracleResult>,
    hits: Vec<bool>,
    pub(crate) report: DebugReport,
}

impl FrameChecker {
    pub(crate) fn new(g: &Graph, source: Vertex) -> Self {
        let oracle = (g.n() <= ORACLE_LIMIT).then(|| dijkstra(g, source));
        let report = DebugReport { oracle_checked: oracle.is_some(), ..Default::default() };
        FrameChecker { hits: vec![false; g.n()], oracle, report }
    }

    pub(crate) fn fail(&mut self, msg: String) {
        push(&mut self.report, msg);
    }

    fn complete(oracle: &OracleResult, store: &LabelStore, v: Vertex) -> bool {
        match (store.label(v), oracle.labels[v as usize]) {
            (Some(a), Some(b)) => a.same_as(&b),
            _ => false,
        }
    }

    /// `<{}, S>` must be a frontier for `targets(B, S)`.
    pub(crate) fn entry(&mut self, store: &LabelStore, b: &Bound, s: &[Vertex], level: u32) {
        let Some(oracle) = &self.oracle else { return };
        let marks: Vec<Vertex> = s.iter().copied().filter(|&x| Self::complete(oracle, store, x)).collect();
        chain_hits(oracle, &marks, &mut self.hits);
        let missing = true_targets(oracle, b, s).into_iter().find(|&v| !self.hits[v as usize]);
        if let Some(v) = missing {
            push(&mut self.report, format!("level {level}: target {v} has no complete frontier vertex on entry"));
        }
    }

    pub(crate) fn pivots(&mut self, store: &LabelStore, b: &Bound, s: &[Vertex], piv: &PivotOutput, k: usize) {
        let assigned: usize = piv.groups.iter().map(|g| g.members.len()).sum();
        if assigned + piv.q.len() != s.len() {
            push(
                &mut self.report,
                format!("pivot groups and Q cover {} of {} frontier vertices", assigned + piv.q.len(), s.len()),
            );
        }
        if piv.groups.len() > s.len() {
            push(&mut self.report, format!("{} pivot groups for {} frontier vertices", piv.groups.len(), s.len()));
        }
        if let Some(g) = piv.groups.iter().find(|g| g.members.len() >= 3 * k) {
            push(&mut self.report, format!("pivot group of {} members with k = {k}", g.members.len()));
        }
        if piv.w.len() > (k + 1) * piv.q.len() {
            push(&mut self.report, format!("|W| = {} exceeds (k+1)|Q| = {}", piv.w.len(), (k + 1) * piv.q.len()));
        }
        let Some(oracle) = &self.oracle else { return };
        let marks: Vec<Vertex> = piv
            .groups
            .iter()
            .flat_map(|g| g.members.iter().copied())
            .filter(|&x| Self::complete(oracle, store, x))
            .collect();
        chain_hits(oracle, &marks, &mut self.hits);
        let mut in_w = vec![false; self.hits.len()];
        for &w in &piv.w {
            in_w[w as usize] = true;
        }
        let bad = true_targets(oracle, b, s)
            .into_iter()
            .find(|&v| !self.hits[v as usize] && !(in_w[v as usize] && Self::complete(oracle, store, v)));
        if let Some(v) = bad {
            push(&mut self.report, format!("target {v} covered by neither W nor a complete pivot-group vertex"));
        }
    }

    pub(crate) fn exit(&mut self, store: &LabelStore, b: &Bound, s: &[Vertex], out: &FrameOut, level: u32) {
        self.report.frames_checked += 1;
        let at_bound = out.b_prime.same_as(b);
        if at_bound != out.d.is_empty() {
            push(
                &mut self.report,
                format!("level {level}: B' {:?} vs B {:?} with {} entries left", out.b_prime, b, out.d.len()),
            );
        }
        if quiet_cmp(&out.b_prime, b) == Ordering::Greater {
            push(&mut self.report, format!("level {level}: B' above B"));
        }
        let mut u = out.u.clone();
        u.sort_unstable();
        if u.windows(2).any(|w| w[0] == w[1]) {
            push(&mut self.report, format!("level {level}: U holds a vertex twice"));
        }
        let Some(oracle) = &self.oracle else { return };
        let expected = true_targets(oracle, &out.b_prime, s);
        if u != expected {
            let extra: Vec<_> = u.iter().filter(|v| expected.binary_search(v).is_err()).take(5).collect();
            let lost: Vec<_> = expected.iter().filter(|v| u.binary_search(v).is_err()).take(5).collect();
            push(
                &mut self.report,
                format!("level {level}: U differs from targets(B', S): extra {extra:?}, missing {lost:?}"),
            );
        }
        if let Some(&v) = out.u.iter().find(|&&v| !Self::complete(oracle, store, v)) {
            push(&mut self.report, format!("level {level}: settled vertex {v} is not complete"));
        }
        // <U, D> is a frontier for targets(B, S)
        let mut marks: Vec<Vertex> =
            out.d.entries().map(|(k, _)| k).filter(|&x| Self::complete(oracle, store, x)).collect();
        marks.sort_unstable();
        chain_hits(oracle, &marks, &mut self.hits);
        let bad =
            true_targets(oracle, b, s).into_iter().find(|&v| !self.hits[v as usize] && u.binary_search(&v).is_err());
        if let Some(v) = bad {
            push(&mut self.report, format!("level {level}: target {v} neither settled nor behind a complete entry"));
        }
    }
}
