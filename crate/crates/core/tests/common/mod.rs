//! Helpers shared by the integration and acceptance tests.
#![allow(dead_code)]

use ssspx_core::dstruct::BlockStructure;
use ssspx_core::harness::{Family, GenSpec, SeededRng, WeightModel};
use ssspx_core::labels::{quiet_cmp, Bound, DistLabel, Vertex};
use ssspx_core::treepart::RootedTree;

pub const WEIGHT_MODELS: [WeightModel; 3] = [
    WeightModel::UniformInt { lo: 0, hi: 20 },
    WeightModel::UniformReal { lo: 0.0, hi: 1.0 },
    WeightModel::ZeroHeavy { p_zero: 0.5 },
];

/// A spec with `n` log-uniform in `[1, max_n]` and `m` uniform in `[0, 8n]`
/// (capped at `n(n-1)` for random-m).
pub fn random_spec(rng: &mut SeededRng, max_n: usize, i: usize) -> GenSpec {
    let log_max = (max_n as f64).ln();
    let n = ((rng.unit() * log_max).exp() as usize).clamp(1, max_n);
    let family = Family::ALL[rng.below(Family::ALL.len() as u64) as usize];
    let mut m = rng.below(8 * n as u64 + 1) as usize;
    if family == Family::RandomM {
        m = m.min(n * (n - 1));
    } else if n == 1 {
        m = 0;
    }
    GenSpec { family, n, m: Some(m), weights: WEIGHT_MODELS[i % 3], seed: rng.next_u64() }
}

/// Sorted-list reference for the block structure.
pub struct SortedModel {
    pub m: usize,
    pub bound: Bound,
    pub items: Vec<(DistLabel, Vertex)>,
}

impl SortedModel {
    pub fn new(m: usize, bound: Bound) -> Self {
        SortedModel { m, bound, items: Vec::new() }
    }

    fn pos(&self, v: &DistLabel) -> usize {
        self.items.partition_point(|(x, _)| quiet_cmp(&Bound::Finite(*x), &Bound::Finite(*v)).is_lt())
    }

    pub fn insert(&mut self, key: Vertex, value: DistLabel) {
        if let Some(i) = self.items.iter().position(|(_, k)| *k == key) {
            let old = self.items[i].0;
            if quiet_cmp(&Bound::Finite(old), &Bound::Finite(value)).is_le() {
                return;
            }
            self.items.remove(i);
        }
        let p = self.pos(&value);
        self.items.insert(p, (value, key));
    }

    pub fn pull(&mut self) -> (Vec<Vertex>, Bound) {
        let take = self.m.min(self.items.len());
        let mut keys: Vec<Vertex> = self.items.drain(..take).map(|(_, k)| k).collect();
        keys.sort_unstable();
        let x = self.items.first().map_or(self.bound, |(v, _)| Bound::Finite(*v));
        (keys, x)
    }

    pub fn min(&self) -> Option<DistLabel> {
        self.items.first().map(|(v, _)| *v)
    }
}

/// Runs one random operation sequence against both implementations.
/// Returns the number of operations or a description of the first mismatch.
pub fn ds_sequence(rng: &mut SeededRng, m: usize, len: usize) -> Result<usize, String> {
    let key_space = (len as u64 / 2).max(4);
    let bound = if rng.below(2) == 0 { Bound::Infinity } else { Bound::Finite(DistLabel::new(1e6, 0, 0, None)) };
    let mut d = BlockStructure::new(m, bound);
    let mut model = SortedModel::new(m, bound);
    // values drawn from a small range so that length ties are common
    let label = |rng: &mut SeededRng, key: Vertex, lo: f64, hi: f64| {
        let len = (rng.real_in(lo, hi) * 4.0).floor() / 4.0;
        DistLabel::new(len, rng.below(3) as u32, key, Some(rng.below(4) as u32))
    };
    for step in 0..len {
        let op = rng.below(10);
        if op < 6 {
            let key = rng.below(key_space) as Vertex;
            let v = label(rng, key, 0.0, 1000.0);
            d.insert(key, v);
            model.insert(key, v);
        } else if op < 9 {
            let (mut got, x) = d.pull();
            got.sort_unstable();
            let (want, y) = model.pull();
            if got != want || !x.same_as(&y) {
                return Err(format!("step {step}: pull gave {got:?} / {x:?}, model {want:?} / {y:?}"));
            }
        } else {
            // merge a batch lying strictly below everything present
            let top = model.min().map_or(1000.0, |v| v.length());
            let small_m = if m >= 4 { 1 + rng.below(((m - 1) / 3) as u64) as usize } else { 1 };
            let mut other = BlockStructure::new(small_m, bound);
            let count = rng.below((m as u64 * 2).max(2)) as usize;
            let mut batch = Vec::new();
            for _ in 0..count {
                let key = rng.below(key_space) as Vertex;
                let v = label(rng, key, top - 60.0, top - 1.0);
                other.insert(key, v);
                batch.push((key, v));
            }
            let checked = 3 * small_m < m;
            d.merge(other, checked).map_err(|e| format!("step {step}: {e}"))?;
            for (k, v) in batch {
                model.insert(k, v);
            }
        }
        if d.len() != model.items.len() {
            return Err(format!("step {step}: size {} vs model {}", d.len(), model.items.len()));
        }
        d.check_invariants().map_err(|e| format!("step {step}: {e}"))?;
    }
    Ok(len)
}

/// Random tree on `n` vertices: each vertex picks a parent among the
/// earlier ones, biased toward deep chains on some draws. Ids are shuffled.
pub fn random_tree(rng: &mut SeededRng, n: usize) -> RootedTree {
    let chainy = rng.below(3) == 0;
    let mut order: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.below(i as u64 + 1) as usize;
        order.swap(i, j);
    }
    let mut parent = vec![None; n];
    for i in 1..n {
        let p = if chainy { i - 1 - rng.below(i.min(3) as u64) as usize } else { rng.below(i as u64) as usize };
        parent[order[i]] = Some(order[p]);
    }
    RootedTree::from_parents(parent).expect("random parents form a tree")
}
