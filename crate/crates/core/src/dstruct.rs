//! Partial-sorting frontier container.
//!
//! Key/value pairs live in blocks of at most `M` unsorted entries; the blocks
//! themselves partition the value range `[minimal, B)` and are kept in an
//! ordered index keyed by each block's lower bound. Inserting touches one
//! block, pulling removes whole blocks from the front and uses linear-time
//! selection to split off exactly the `M` smallest entries.
//!
//! `M = 1` selects a plain ordered map, used by the Dijkstra base case.
//!
//! Values must be pairwise distinct across keys. This holds for distance
//! labels stored under their own vertex, since `curr` differs.

use std::collections::BTreeMap;

use rustc_hash::FxHashMap;
use serde::Serialize;
use thiserror::Error;

use crate::labels::{Bound, DistLabel, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DsError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("merge precondition violated: {0}")]
    MergePreconditionViolated(String),
}

/// Operation counters used for the amortized-cost budgets.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct DsStats {
    pub inserts: u64,
    pub merges: u64,
    pub merged_items: u64,
    pub pulls: u64,
    pub pulled_items: u64,
    /// Lookups and updates of the ordered block index.
    pub index_ops: u64,
    /// Entries relocated by splits, joins, pulls and merges.
    pub items_moved: u64,
}

impl DsStats {
    pub fn absorb(&mut self, o: &DsStats) {
        self.inserts += o.inserts;
        self.merges += o.merges;
        self.merged_items += o.merged_items;
        self.pulls += o.pulls;
        self.pulled_items += o.pulled_items;
        self.index_ops += o.index_ops;
        self.items_moved += o.items_moved;
    }
}

type Entry = (Vertex, DistLabel);

#[derive(Debug, Clone)]
pub struct BlockStructure {
    repr: Repr,
    stats: DsStats,
}

#[derive(Debug, Clone)]
enum Repr {
    Blocks(Blocked),
    Base(BaseMap),
}

impl BlockStructure {
    /// Creates an empty structure, checking `M >= log2(n_hint / M)` for `M > 1`.
    pub fn with_hint(m: usize, bound: Bound, n_hint: usize) -> Result<Self, DsError> {
        if m == 0 {
            return Err(DsError::InvalidParameter("block size M must be at least 1".into()));
        }
        if m > 1 && n_hint > m {
            let need = (n_hint as f64 / m as f64).log2();
            if (m as f64) < need {
                return Err(DsError::InvalidParameter(format!(
                    "M = {m} is below log2(N/M) = {need:.2} for N = {n_hint}"
                )));
            }
        }
        Ok(Self::new(m, bound))
    }

    /// Creates an empty structure without the size-hint check.
    pub fn new(m: usize, bound: Bound) -> Self {
        assert!(m >= 1, "block size must be positive");
        let repr = if m == 1 { Repr::Base(BaseMap::new(bound)) } else { Repr::Blocks(Blocked::new(m, bound)) };
        BlockStructure { repr, stats: DsStats::default() }
    }

    pub fn m(&self) -> usize {
        match &self.repr {
            Repr::Blocks(b) => b.m,
            Repr::Base(_) => 1,
        }
    }

    pub fn bound(&self) -> Bound {
        match &self.repr {
            Repr::Blocks(b) => b.bound,
            Repr::Base(b) => b.bound,
        }
    }

    pub fn is_base(&self) -> bool {
        matches!(self.repr, Repr::Base(_))
    }

    pub fn len(&self) -> usize {
        match &self.repr {
            Repr::Blocks(b) => b.count,
            Repr::Base(b) => b.by_key.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn value(&self, key: Vertex) -> Option<DistLabel> {
        match &self.repr {
            Repr::Blocks(b) => b.locator.get(&key).map(|&(blk, slot)| b.slab[blk as usize].items[slot as usize].1),
            Repr::Base(b) => b.by_key.get(&key).copied(),
        }
    }

    pub fn contains(&self, key: Vertex) -> bool {
        match &self.repr {
            Repr::Blocks(b) => b.locator.contains_key(&key),
            Repr::Base(b) => b.by_key.contains_key(&key),
        }
    }

    pub fn stats(&self) -> &DsStats {
        &self.stats
    }

    /// Number of blocks (1 for the base map).
    pub fn block_count(&self) -> usize {
        match &self.repr {
            Repr::Blocks(b) => b.index.len(),
            Repr::Base(_) => 1,
        }
    }

    /// Smallest stored value, by linear scan of the first block.
    pub fn min_value(&self) -> Option<DistLabel> {
        match &self.repr {
            Repr::Blocks(b) => b.min_value(),
            Repr::Base(b) => b.by_value.keys().next().copied(),
        }
    }

    /// Inserts `(key, value)`; an existing key keeps the smaller value.
    pub fn insert(&mut self, key: Vertex, value: DistLabel) {
        self.stats.inserts += 1;
        match &mut self.repr {
            Repr::Blocks(b) => b.insert(key, value, &mut self.stats),
            Repr::Base(b) => b.insert(key, value),
        }
    }

    /// Returns up to `M` keys holding the smallest values together with a
    /// separating bound: the `(M+1)`-th smallest value, or `B` if nothing
    /// remains.
    pub fn pull(&mut self) -> (Vec<Vertex>, Bound) {
        self.stats.pulls += 1;
        let (keys, x) = match &mut self.repr {
            Repr::Blocks(b) => b.pull(&mut self.stats),
            Repr::Base(b) => b.pull(),
        };
        self.stats.pulled_items += keys.len() as u64;
        (keys, x)
    }

    /// Moves every pair of `other` into `self`, keeping the smaller value for
    /// duplicate keys. `other` must use a smaller block size and hold only
    /// values below everything in `self`; with `checked` set both conditions
    /// are verified.
    pub fn merge(&mut self, other: BlockStructure, checked: bool) -> Result<(), DsError> {
        if checked {
            self.check_merge(&other)?;
        }
        self.stats.merges += 1;
        self.stats.merged_items += other.len() as u64;
        if other.is_empty() {
            return Ok(());
        }
        let chunks = other.into_ascending_chunks();
        match &mut self.repr {
            Repr::Blocks(b) => b.merge_chunks(chunks, &mut self.stats),
            Repr::Base(b) => {
                for (k, v) in chunks.into_iter().flatten() {
                    b.insert(k, v);
                }
            }
        }
        Ok(())
    }

    fn check_merge(&self, other: &BlockStructure) -> Result<(), DsError> {
        if other.is_empty() {
            return Ok(());
        }
        if 3 * other.m() >= self.m() {
            return Err(DsError::MergePreconditionViolated(format!(
                "merged block size {} is not below {}/3",
                other.m(),
                self.m()
            )));
        }
        let their_max = other.entries().map(|(_, v)| v).max();
        if let (Some(hi), Some(lo)) = (their_max, self.min_value()) {
            if hi >= lo {
                return Err(DsError::MergePreconditionViolated(format!(
                    "merged value {hi:?} is not below existing minimum {lo:?}"
                )));
            }
        }
        Ok(())
    }

    /// All stored pairs, in no particular order.
    pub fn entries(&self) -> Box<dyn Iterator<Item = Entry> + '_> {
        match &self.repr {
            Repr::Blocks(b) => Box::new(b.index.values().flat_map(move |&id| b.slab[id].items.iter().copied())),
            Repr::Base(b) => Box::new(b.by_value.iter().map(|(v, k)| (*k, *v))),
        }
    }

    /// Drains into groups whose value ranges ascend; entries inside a group
    /// are unordered.
    fn into_ascending_chunks(self) -> Vec<Vec<Entry>> {
        match self.repr {
            Repr::Blocks(mut b) => {
                let ids: Vec<usize> = b.index.values().copied().collect();
                ids.into_iter().map(|id| std::mem::take(&mut b.slab[id].items)).collect()
            }
            Repr::Base(b) => vec![b.by_value.into_iter().map(|(v, k)| (k, v)).collect()],
        }
    }

    /// Verifies interval ordering, locator consistency and block-size windows.
    pub fn check_invariants(&self) -> Result<(), String> {
        match &self.repr {
            Repr::Blocks(b) => b.check(),
            Repr::Base(b) => b.check(),
        }
    }
}

#[derive(Debug, Clone)]
struct Block {
    /// `None` for the first block, whose interval starts at the minimum.
    lo: Option<DistLabel>,
    items: Vec<Entry>,
}

#[derive(Debug, Clone)]
struct Blocked {
    m: usize,
    min_fill: usize,
    bound: Bound,
    slab: Vec<Block>,
    free: Vec<usize>,
    index: BTreeMap<Option<DistLabel>, usize>,
    locator: FxHashMap<Vertex, (u32, u32)>,
    count: usize,
}

impl Blocked {
    fn new(m: usize, bound: Bound) -> Self {
        let mut b = Blocked {
            m,
            min_fill: m.div_ceil(3),
            bound,
            slab: Vec::new(),
            free: Vec::new(),
            index: BTreeMap::new(),
            locator: FxHashMap::default(),
            count: 0,
        };
        let id = b.alloc(None, Vec::new());
        b.index.insert(None, id);
        b
    }

    fn alloc(&mut self, lo: Option<DistLabel>, items: Vec<Entry>) -> usize {
        let block = Block { lo, items };
        match self.free.pop() {
            Some(id) => {
                self.slab[id] = block;
                id
            }
            None => {
                self.slab.push(block);
                self.slab.len() - 1
            }
        }
    }

    fn release(&mut self, id: usize) {
        self.slab[id].items = Vec::new();
        self.free.push(id);
    }

    fn min_value(&self) -> Option<DistLabel> {
        let (_, &first) = self.index.first_key_value()?;
        self.slab[first].items.iter().map(|e| e.1).min()
    }

    fn locate_block(&self, value: &DistLabel, stats: &mut DsStats) -> usize {
        stats.index_ops += 1;
        let (_, &id) = self.index.range(..=Some(*value)).next_back().expect("first block covers the minimum");
        id
    }

    fn relocate(&mut self, id: usize, from: usize) {
        for (slot, e) in self.slab[id].items.iter().enumerate().skip(from) {
            self.locator.insert(e.0, (id as u32, slot as u32));
        }
    }

    fn push(&mut self, id: usize, e: Entry) {
        let slot = self.slab[id].items.len();
        self.slab[id].items.push(e);
        self.locator.insert(e.0, (id as u32, slot as u32));
        self.count += 1;
    }

    /// Removes the entry at `(id, slot)` without normalizing.
    fn remove_at(&mut self, id: usize, slot: usize) -> Entry {
        let items = &mut self.slab[id].items;
        let e = items.swap_remove(slot);
        if slot < items.len() {
            let moved = items[slot].0;
            self.locator.insert(moved, (id as u32, slot as u32));
        }
        self.locator.remove(&e.0);
        self.count -= 1;
        e
    }

    fn insert(&mut self, key: Vertex, value: DistLabel, stats: &mut DsStats) {
        debug_assert!(self.bound.admits(&value), "value {value:?} not below {:?}", self.bound);
        if let Some(&(id, slot)) = self.locator.get(&key) {
            let (id, slot) = (id as usize, slot as usize);
            if self.slab[id].items[slot].1 <= value {
                return;
            }
            self.remove_at(id, slot);
            self.normalize(id, stats);
        }
        let id = self.locate_block(&value, stats);
        self.push(id, (key, value));
        self.normalize(id, stats);
    }

    /// Restores the size window of block `id`: split when above `M`, join
    /// with a neighbour when below `ceil(M/3)` while other blocks exist.
    fn normalize(&mut self, id: usize, stats: &mut DsStats) {
        let len = self.slab[id].items.len();
        if len > self.m {
            self.split(id, stats);
        } else if len < self.min_fill && self.index.len() > 1 {
            self.join(id, stats);
        }
    }

    fn split(&mut self, id: usize, stats: &mut DsStats) {
        let len = self.slab[id].items.len();
        let half = len / 2;
        let items = &mut self.slab[id].items;
        items.select_nth_unstable_by(half, |a, b| a.1.cmp(&b.1));
        let upper = items.split_off(half);
        let lo = upper[0].1;
        stats.items_moved += upper.len() as u64;
        let new_id = self.alloc(Some(lo), upper);
        stats.index_ops += 1;
        self.index.insert(Some(lo), new_id);
        self.relocate(id, 0);
        self.relocate(new_id, 0);
        // halves of an oversized block may still be oversized after a bulk merge
        self.normalize(id, stats);
        self.normalize(new_id, stats);
    }

    fn join(&mut self, id: usize, stats: &mut DsStats) {
        stats.index_ops += 2;
        let key = self.slab[id].lo;
        let next = self.index.range((std::ops::Bound::Excluded(key), std::ops::Bound::Unbounded)).next();
        let (keep, absorb) = match next {
            Some((_, &succ)) => (id, succ),
            None => {
                let (_, &pred) = self.index.range(..key).next_back().expect("more than one block");
                (pred, id)
            }
        };
        let absorbed_key = self.slab[absorb].lo;
        self.index.remove(&absorbed_key);
        let moved = std::mem::take(&mut self.slab[absorb].items);
        self.release(absorb);
        stats.items_moved += moved.len() as u64;
        let start = self.slab[keep].items.len();
        self.slab[keep].items.extend(moved);
        self.relocate(keep, start);
        if self.slab[keep].items.len() > self.m {
            self.split(keep, stats);
        }
    }

    fn pull(&mut self, stats: &mut DsStats) -> (Vec<Vertex>, Bound) {
        if self.count <= self.m {
            let mut keys = Vec::with_capacity(self.count);
            for (_, id) in std::mem::take(&mut self.index) {
                keys.extend(self.slab[id].items.iter().map(|e| e.0));
            }
            stats.index_ops += 1;
            self.slab.clear();
            self.free.clear();
            self.locator.clear();
            self.count = 0;
            let id = self.alloc(None, Vec::new());
            self.index.insert(None, id);
            return (keys, self.bound);
        }

        let mut taken: Vec<Entry> = Vec::with_capacity(2 * self.m);
        while taken.len() <= self.m {
            stats.index_ops += 1;
            let (_, id) = self.index.pop_first().expect("count exceeds M");
            taken.append(&mut self.slab[id].items);
            self.release(id);
        }
        stats.items_moved += taken.len() as u64;
        taken.select_nth_unstable_by(self.m, |a, b| a.1.cmp(&b.1));
        let rest = taken.split_off(self.m);
        let x = rest[0].1;
        for e in &taken {
            self.locator.remove(&e.0);
        }
        self.count -= taken.len();

        // leftovers join the new first block, which now starts at the minimum
        stats.index_ops += 2;
        let first = match self.index.pop_first() {
            Some((_, id)) => {
                self.slab[id].lo = None;
                id
            }
            None => self.alloc(None, Vec::new()),
        };
        self.index.insert(None, first);
        let start = self.slab[first].items.len();
        self.slab[first].items.extend(rest);
        self.relocate(first, start);
        self.normalize(first, stats);

        (taken.into_iter().map(|e| e.0).collect(), Bound::Finite(x))
    }

    fn merge_chunks(&mut self, chunks: Vec<Vec<Entry>>, stats: &mut DsStats) {
        // drop stale copies first so the block layout is settled before prepending
        let mut incoming: Vec<Vec<Entry>> = Vec::with_capacity(chunks.len());
        let mut total = 0;
        for chunk in chunks {
            let mut kept = Vec::with_capacity(chunk.len());
            for (k, v) in chunk {
                if let Some(&(id, slot)) = self.locator.get(&k) {
                    let (id, slot) = (id as usize, slot as usize);
                    if self.slab[id].items[slot].1 <= v {
                        continue;
                    }
                    self.remove_at(id, slot);
                    self.normalize(id, stats);
                }
                kept.push((k, v));
            }
            total += kept.len();
            if !kept.is_empty() {
                incoming.push(kept);
            }
        }
        if total == 0 {
            return;
        }
        stats.items_moved += total as u64;

        if total < self.m {
            stats.index_ops += 1;
            let (_, &first) = self.index.first_key_value().expect("non-empty index");
            for e in incoming.into_iter().flatten() {
                self.push(first, e);
            }
            self.normalize(first, stats);
            return;
        }

        // group the ascending chunks into blocks of at least ceil(M/3) entries
        let mut groups: Vec<Vec<Entry>> = Vec::new();
        let mut cur: Vec<Entry> = Vec::new();
        for chunk in incoming {
            cur.extend(chunk);
            if cur.len() >= self.min_fill {
                groups.push(std::mem::take(&mut cur));
            }
        }
        if !cur.is_empty() {
            match groups.last_mut() {
                Some(last) => last.extend(cur),
                None => groups.push(cur),
            }
        }

        stats.index_ops += 1;
        let (_, old_first) = self.index.pop_first().expect("non-empty index");
        let old_empty = self.slab[old_first].items.is_empty();
        if old_empty {
            self.release(old_first);
        } else {
            let lo = self.slab[old_first].items.iter().map(|e| e.1).min();
            self.slab[old_first].lo = lo;
            stats.index_ops += 1;
            self.index.insert(lo, old_first);
        }

        let mut ids = Vec::with_capacity(groups.len());
        for (i, group) in groups.into_iter().enumerate() {
            let lo = if i == 0 { None } else { group.iter().map(|e| e.1).min() };
            let id = self.alloc(lo, Vec::new());
            stats.index_ops += 1;
            self.index.insert(lo, id);
            for e in group {
                self.push(id, e);
            }
            ids.push(id);
        }
        // splits never release blocks, so the saved ids stay valid
        for id in ids {
            if self.slab[id].items.len() > self.m {
                self.split(id, stats);
            }
        }
        if !old_empty {
            self.normalize(old_first, stats);
        }
    }

    fn check(&self) -> Result<(), String> {
        let mut total = 0;
        let mut prev_lo: Option<Option<DistLabel>> = None;
        let ids: Vec<usize> = self.index.values().copied().collect();
        let multi = ids.len() > 1;
        for (pos, (&key, &id)) in self.index.iter().enumerate() {
            let block = &self.slab[id];
            if block.lo.map(|l| l.same_as(&key.unwrap())) == Some(false) || block.lo.is_some() != key.is_some() {
                return Err(format!("block {id} key/lo mismatch"));
            }
            if pos == 0 && key.is_some() {
                return Err("first block does not start at the minimum".into());
            }
            if let Some(p) = prev_lo {
                if p >= key {
                    return Err("block lower bounds not increasing".into());
                }
            }
            prev_lo = Some(key);
            let len = block.items.len();
            if len > self.m {
                return Err(format!("block {id} holds {len} > M = {}", self.m));
            }
            if multi && len < self.min_fill {
                return Err(format!("block {id} holds {len} < ceil(M/3) = {}", self.min_fill));
            }
            let hi = ids.get(pos + 1).map(|&n| self.slab[n].lo.unwrap());
            for (slot, (k, v)) in block.items.iter().enumerate() {
                if let Some(lo) = block.lo {
                    if *v < lo {
                        return Err(format!("value {v:?} below block lower bound {lo:?}"));
                    }
                }
                if let Some(hi) = hi {
                    if *v >= hi {
                        return Err(format!("value {v:?} not below next block bound {hi:?}"));
                    }
                }
                if !self.bound.admits(v) {
                    return Err(format!("value {v:?} not below B"));
                }
                if self.locator.get(k) != Some(&(id as u32, slot as u32)) {
                    return Err(format!("locator entry for key {k} is stale"));
                }
            }
            total += len;
        }
        if total != self.count || self.locator.len() != total {
            return Err(format!("count {} / locator {} / blocks {total}", self.count, self.locator.len()));
        }
        Ok(())
    }
}

/// Ordered map for the `M = 1` case.
#[derive(Debug, Clone)]
struct BaseMap {
    bound: Bound,
    by_value: BTreeMap<DistLabel, Vertex>,
    by_key: FxHashMap<Vertex, DistLabel>,
}

impl BaseMap {
    fn new(bound: Bound) -> Self {
        BaseMap { bound, by_value: BTreeMap::new(), by_key: FxHashMap::default() }
    }

    fn insert(&mut self, key: Vertex, value: DistLabel) {
        debug_assert!(self.bound.admits(&value));
        if let Some(old) = self.by_key.get(&key) {
            if *old <= value {
                return;
            }
            self.by_value.remove(old);
        }
        self.by_key.insert(key, value);
        self.by_value.insert(value, key);
    }

    fn pull(&mut self) -> (Vec<Vertex>, Bound) {
        match self.by_value.pop_first() {
            None => (Vec::new(), self.bound),
            Some((_, key)) => {
                self.by_key.remove(&key);
                let x = self.by_value.keys().next().map_or(self.bound, |v| Bound::Finite(*v));
                (vec![key], x)
            }
        }
    }

    fn check(&self) -> Result<(), String> {
        if self.by_key.len() != self.by_value.len() {
            return Err("base map indexes disagree".into());
        }
        for (v, k) in &self.by_value {
            if !self.by_key.get(k).is_some_and(|x| x.same_as(v)) {
                return Err(format!("key {k} maps to a different value"));
            }
            if !self.bound.admits(v) {
                return Err(format!("value {v:?} not below B"));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lab(v: Vertex, len: f64) -> DistLabel {
        DistLabel::new(len, 1, v, Some(0))
    }

    #[test]
    fn new_examples() {
        let d = BlockStructure::with_hint(4, Bound::Infinity, 64).unwrap();
        assert!(d.is_empty());
        assert_eq!(d.block_count(), 1);
        assert!(BlockStructure::with_hint(1, Bound::Infinity, 1 << 20).unwrap().is_base());
        assert!(matches!(BlockStructure::with_hint(2, Bound::Infinity, 1 << 20), Err(DsError::InvalidParameter(_))));
        assert!(BlockStructure::with_hint(0, Bound::Infinity, 1).is_err());
    }

    #[test]
    fn insert_keeps_smaller() {
        let mut d = BlockStructure::new(4, Bound::Infinity);
        d.insert(7, lab(7, 1.0));
        assert_eq!(d.len(), 1);
        d.insert(7, lab(7, 2.0));
        assert!(d.value(7).unwrap().same_as(&lab(7, 1.0)));
        d.insert(7, lab(7, 0.5));
        assert!(d.value(7).unwrap().same_as(&lab(7, 0.5)));
        assert_eq!(d.len(), 1);
    }

    #[test]
    fn pull_examples() {
        let b = Bound::Finite(lab(0, 100.0));
        let mut d = BlockStructure::new(4, b);
        let (keys, x) = d.pull();
        assert!(keys.is_empty() && x.same_as(&b));

        for v in 1..=3 {
            d.insert(v, lab(v, v as f64));
        }
        let (mut keys, x) = d.pull();
        keys.sort();
        assert_eq!(keys, vec![1, 2, 3]);
        assert!(x.same_as(&b));

        for v in 1..=10 {
            d.insert(v, lab(v, (11 - v) as f64));
        }
        let (mut keys, x) = d.pull();
        keys.sort();
        assert_eq!(keys, vec![7, 8, 9, 10]);
        assert!(x.same_as(&Bound::Finite(lab(6, 5.0))));
        d.check_invariants().unwrap();
        let (mut keys, _) = d.pull();
        keys.sort();
        assert_eq!(keys, vec![3, 4, 5, 6]);
    }

    #[test]
    fn base_map_pulls_one() {
        let mut d = BlockStructure::new(1, Bound::Infinity);
        d.insert(3, lab(3, 2.0));
        d.insert(4, lab(4, 1.0));
        let (keys, x) = d.pull();
        assert_eq!(keys, vec![4]);
        assert!(x.same_as(&Bound::Finite(lab(3, 2.0))));
        let (keys, x) = d.pull();
        assert_eq!(keys, vec![3]);
        assert!(x.is_infinite());
    }

    #[test]
    fn merge_examples() {
        let mut d = BlockStructure::new(16, Bound::Infinity);
        for v in 10..20 {
            d.insert(v, lab(v, v as f64));
        }
        d.merge(BlockStructure::new(2, Bound::Infinity), true).unwrap();
        assert_eq!(d.len(), 10);

        let mut small = BlockStructure::new(1, Bound::Infinity);
        small.insert(1, lab(1, 1.0));
        small.insert(12, lab(12, 2.0));
        d.merge(small, true).unwrap();
        assert_eq!(d.len(), 11);
        assert!(d.value(12).unwrap().same_as(&lab(12, 2.0)));
        d.check_invariants().unwrap();
    }

    #[test]
    fn merge_checks_preconditions() {
        let mut d = BlockStructure::new(6, Bound::Infinity);
        d.insert(1, lab(1, 1.0));
        let mut big = BlockStructure::new(2, Bound::Infinity);
        big.insert(2, lab(2, 0.5));
        assert!(matches!(d.merge(big, true), Err(DsError::MergePreconditionViolated(_))));

        let mut d = BlockStructure::new(16, Bound::Infinity);
        d.insert(1, lab(1, 1.0));
        let mut above = BlockStructure::new(1, Bound::Infinity);
        above.insert(2, lab(2, 5.0));
        assert!(matches!(d.merge(above, true), Err(DsError::MergePreconditionViolated(_))));
    }

    #[test]
    fn bulk_merge_builds_blocks() {
        let mut d = BlockStructure::new(9, Bound::Infinity);
        for v in 1000..1020 {
            d.insert(v, lab(v, v as f64));
        }
        let mut src = BlockStructure::new(2, Bound::Infinity);
        for v in 0..100 {
            src.insert(v, lab(v, v as f64));
        }
        d.merge(src, true).unwrap();
        d.check_invariants().unwrap();
        assert_eq!(d.len(), 120);
        let (mut keys, x) = d.pull();
        keys.sort();
        assert_eq!(keys, (0..9).collect::<Vec<_>>());
        assert!(x.same_as(&Bound::Finite(lab(9, 9.0))));
    }
}
