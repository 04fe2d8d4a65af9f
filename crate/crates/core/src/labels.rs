//! Distance labels under the comparison-addition model.
//!
//! A label is the tuple `(length, hops, curr, pred)` compared lexicographically.
//! Carrying the edge count, the vertex itself and its predecessor makes every
//! label of a distinct vertex distinct and keeps ties between equal-length
//! paths consistent, so the shortest-path tree stays well defined even with
//! zero-weight edges.
//!
//! Every comparison and addition on labels goes through this module and is
//! counted in thread-local counters (see [`op_counts`]).

use std::cell::Cell;
use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

pub type Vertex = u32;

thread_local! {
    static COMPARISONS: Cell<u64> = const { Cell::new(0) };
    static ADDITIONS: Cell<u64> = const { Cell::new(0) };
}

/// Label comparisons and additions performed on this thread so far.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OpCounts {
    pub comparisons: u64,
    pub additions: u64,
}

impl OpCounts {
    pub fn since(self, earlier: OpCounts) -> OpCounts {
        OpCounts { comparisons: self.comparisons - earlier.comparisons, additions: self.additions - earlier.additions }
    }
}

pub fn op_counts() -> OpCounts {
    OpCounts { comparisons: COMPARISONS.with(Cell::get), additions: ADDITIONS.with(Cell::get) }
}

#[inline]
fn count_comparison() {
    COMPARISONS.with(|c| c.set(c.get() + 1));
}

#[inline]
fn count_addition() {
    ADDITIONS.with(|c| c.set(c.get() + 1));
}

/// Predecessor encoding: 0 means "no predecessor" and sorts before every
/// real vertex, otherwise the stored value is `pred + 1`.
const NO_PRED: u32 = 0;

#[derive(Clone, Copy)]
pub struct DistLabel {
    length: f64,
    hops: u32,
    curr: Vertex,
    pred_code: u32,
}

impl DistLabel {
    /// Label of a source vertex: `(0, 0, s, none)`.
    pub fn source(s: Vertex) -> Self {
        DistLabel { length: 0.0, hops: 0, curr: s, pred_code: NO_PRED }
    }

    /// Builds an arbitrary label. Mostly useful for tests and bounds.
    pub fn new(length: f64, hops: u32, curr: Vertex, pred: Option<Vertex>) -> Self {
        DistLabel { length, hops, curr, pred_code: pred.map_or(NO_PRED, |p| p + 1) }
    }

    /// Placeholder for a vertex that has not been reached yet.
    fn unset(v: Vertex) -> Self {
        DistLabel { length: f64::INFINITY, hops: u32::MAX, curr: v, pred_code: u32::MAX }
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn hops(&self) -> u32 {
        self.hops
    }

    pub fn curr(&self) -> Vertex {
        self.curr
    }

    pub fn pred(&self) -> Option<Vertex> {
        match self.pred_code {
            NO_PRED => None,
            p => Some(p - 1),
        }
    }

    pub fn is_set(&self) -> bool {
        self.length.is_finite()
    }

    /// Bitwise tuple identity (no counting); used by checks and tests.
    pub fn same_as(&self, other: &DistLabel) -> bool {
        self.length.to_bits() == other.length.to_bits()
            && self.hops == other.hops
            && self.curr == other.curr
            && self.pred_code == other.pred_code
    }

    #[inline]
    fn raw_cmp(&self, other: &DistLabel) -> Ordering {
        // Lengths are never NaN: weights are validated finite and non-negative.
        self.length
            .partial_cmp(&other.length)
            .unwrap_or(Ordering::Equal)
            .then(self.hops.cmp(&other.hops))
            .then(self.curr.cmp(&other.curr))
            .then(self.pred_code.cmp(&other.pred_code))
    }
}

impl PartialEq for DistLabel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for DistLabel {}

impl PartialOrd for DistLabel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for DistLabel {
    #[inline]
    fn cmp(&self, other: &Self) -> Ordering {
        count_comparison();
        self.raw_cmp(other)
    }
}

impl fmt::Debug for DistLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.is_set() {
            return write!(f, "(unset {})", self.curr);
        }
        match self.pred() {
            Some(p) => write!(f, "({}, {}, {}, {})", self.length, self.hops, self.curr, p),
            None => write!(f, "({}, {}, {}, -)", self.length, self.hops, self.curr),
        }
    }
}

/// Upper bound for relaxations: a full label tuple, or infinity.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Bound {
    Finite(DistLabel),
    Infinity,
}

impl Bound {
    /// True iff `label` lies strictly below this bound.
    #[inline]
    pub fn admits(&self, label: &DistLabel) -> bool {
        match self {
            Bound::Infinity => {
                count_comparison();
                true
            }
            Bound::Finite(b) => label < b,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Bound::Infinity)
    }

    pub fn label(&self) -> Option<&DistLabel> {
        match self {
            Bound::Finite(l) => Some(l),
            Bound::Infinity => None,
        }
    }

    /// Identity without touching the counters.
    pub fn same_as(&self, other: &Bound) -> bool {
        match (self, other) {
            (Bound::Infinity, Bound::Infinity) => true,
            (Bound::Finite(a), Bound::Finite(b)) => a.same_as(b),
            _ => false,
        }
    }
}

impl From<DistLabel> for Bound {
    fn from(l: DistLabel) -> Self {
        Bound::Finite(l)
    }
}

impl fmt::Debug for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Finite(l) => write!(f, "{l:?}"),
            Bound::Infinity => f.write_str("inf"),
        }
    }
}

/// Lexicographic comparison of two labels or bounds.
pub fn compare(a: &Bound, b: &Bound) -> Ordering {
    a.cmp(b)
}

/// Same ordering as [`compare`] but not counted; for assertions and checks.
pub fn quiet_cmp(a: &Bound, b: &Bound) -> Ordering {
    match (a, b) {
        (Bound::Finite(x), Bound::Finite(y)) => x.raw_cmp(y),
        (Bound::Finite(_), Bound::Infinity) => Ordering::Less,
        (Bound::Infinity, Bound::Finite(_)) => Ordering::Greater,
        (Bound::Infinity, Bound::Infinity) => Ordering::Equal,
    }
}

/// Extends the label of `u` along edge `(u, v, w)`.
#[inline]
pub fn extend(du: &DistLabel, v: Vertex, w: f64) -> DistLabel {
    count_addition();
    DistLabel { length: du.length + w, hops: du.hops + 1, curr: v, pred_code: du.curr + 1 }
}

/// Global per-vertex labels `d[]` for one solver run, plus relaxation counters.
#[derive(Clone)]
pub struct LabelStore {
    labels: Vec<DistLabel>,
    pub relax_total: u64,
    pub relax_valid: u64,
    /// Valid relaxations that re-wrote an identical tuple.
    pub relax_equal: u64,
}

impl LabelStore {
    pub fn new(n: usize) -> Self {
        LabelStore {
            labels: (0..n as Vertex).map(DistLabel::unset).collect(),
            relax_total: 0,
            relax_valid: 0,
            relax_equal: 0,
        }
    }

    pub fn with_source(n: usize, s: Vertex) -> Self {
        let mut store = Self::new(n);
        store.labels[s as usize] = DistLabel::source(s);
        store
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    #[inline]
    pub fn get(&self, v: Vertex) -> &DistLabel {
        &self.labels[v as usize]
    }

    pub fn label(&self, v: Vertex) -> Option<DistLabel> {
        let l = self.labels[v as usize];
        l.is_set().then_some(l)
    }

    pub fn is_set(&self, v: Vertex) -> bool {
        self.labels[v as usize].is_set()
    }

    /// Overwrites `d[v]`; the label's `curr` must be `v`.
    pub fn set(&mut self, v: Vertex, label: DistLabel) {
        debug_assert_eq!(label.curr, v);
        self.labels[v as usize] = label;
    }

    /// Relaxes `(u, v, w)` under `bound`: with `c = d[u] + w`, sets `d[v] = c`
    /// iff `c <= d[v]` and `c < bound`.
    #[inline]
    pub fn relax(&mut self, u: Vertex, v: Vertex, w: f64, bound: &Bound) -> bool {
        let cand = extend(&self.labels[u as usize], v, w);
        self.relax_candidate(cand, bound)
    }

    /// Same as [`relax`](Self::relax) with a precomputed candidate label.
    #[inline]
    pub fn relax_candidate(&mut self, cand: DistLabel, bound: &Bound) -> bool {
        self.relax_total += 1;
        let v = cand.curr as usize;
        let ord = cand.cmp(&self.labels[v]);
        if ord != Ordering::Greater && bound.admits(&cand) {
            self.relax_valid += 1;
            if ord == Ordering::Equal {
                self.relax_equal += 1;
            }
            self.labels[v] = cand;
            true
        } else {
            false
        }
    }

    pub fn into_labels(self) -> Vec<Option<DistLabel>> {
        self.labels.into_iter().map(|l| l.is_set().then_some(l)).collect()
    }
}

/// Walks the predecessor chain of `v` back to the source (inclusive, in
/// source-to-`v` order). Returns `None` if `v` is unset or the chain is broken.
pub fn pred_chain(labels: &[Option<DistLabel>], v: Vertex) -> Option<Vec<Vertex>> {
    let mut chain = vec![v];
    let mut cur = labels.get(v as usize)?.as_ref()?;
    while let Some(p) = cur.pred() {
        if chain.len() > labels.len() {
            return None;
        }
        chain.push(p);
        cur = labels.get(p as usize)?.as_ref()?;
    }
    chain.reverse();
    Some(chain)
}
