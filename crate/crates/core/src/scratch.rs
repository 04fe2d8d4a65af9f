//! Epoch-stamped per-vertex scratch arrays and an indexed binary heap.
//!
//! Clearing bumps an epoch instead of touching the arrays, so a search that
//! visits a handful of vertices costs nothing proportional to `n`.

use crate::labels::{DistLabel, Vertex};

#[derive(Debug, Clone)]
pub struct StampSet {
    stamp: Vec<u32>,
    epoch: u32,
}

impl StampSet {
    pub fn new(n: usize) -> Self {
        StampSet { stamp: vec![0; n], epoch: 1 }
    }

    pub fn clear(&mut self) {
        if self.epoch == u32::MAX {
            self.stamp.fill(0);
            self.epoch = 0;
        }
        self.epoch += 1;
    }

    #[inline]
    pub fn contains(&self, v: Vertex) -> bool {
        self.stamp[v as usize] == self.epoch
    }

    /// Returns true if `v` was not yet present.
    #[inline]
    pub fn insert(&mut self, v: Vertex) -> bool {
        let s = &mut self.stamp[v as usize];
        let fresh = *s != self.epoch;
        *s = self.epoch;
        fresh
    }

    #[inline]
    pub fn remove(&mut self, v: Vertex) {
        if self.contains(v) {
            self.stamp[v as usize] = 0;
        }
    }
}

#[derive(Debug, Clone)]
pub struct StampMap<T> {
    keys: StampSet,
    vals: Vec<T>,
}

impl<T: Copy + Default> StampMap<T> {
    pub fn new(n: usize) -> Self {
        StampMap { keys: StampSet::new(n), vals: vec![T::default(); n] }
    }

    pub fn clear(&mut self) {
        self.keys.clear();
    }

    #[inline]
    pub fn get(&self, v: Vertex) -> Option<T> {
        self.keys.contains(v).then(|| self.vals[v as usize])
    }

    #[inline]
    pub fn set(&mut self, v: Vertex, val: T) {
        self.keys.insert(v);
        self.vals[v as usize] = val;
    }

    #[inline]
    pub fn contains(&self, v: Vertex) -> bool {
        self.keys.contains(v)
    }
}

/// Outcome of [`IndexedHeap::push_or_decrease`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HeapUpdate {
    Inserted,
    Decreased,
    Unchanged,
}

/// Binary min-heap of labels keyed by `label.curr()`, with decrease-key.
#[derive(Debug, Clone)]
pub struct IndexedHeap {
    items: Vec<DistLabel>,
    pos: StampMap<u32>,
    /// Insertions, extractions and decrease-keys performed.
    pub ops: u64,
}

impl IndexedHeap {
    pub fn new(n: usize) -> Self {
        IndexedHeap { items: Vec::new(), pos: StampMap::new(n), ops: 0 }
    }

    pub fn clear(&mut self) {
        self.items.clear();
        self.pos.clear();
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    #[inline]
    pub fn contains(&self, v: Vertex) -> bool {
        self.pos.get(v).is_some_and(|p| p != u32::MAX)
    }

    pub fn push_or_decrease(&mut self, label: DistLabel) -> HeapUpdate {
        let v = label.curr();
        match self.pos.get(v) {
            Some(p) if p != u32::MAX => {
                let p = p as usize;
                if label < self.items[p] {
                    self.ops += 1;
                    self.items[p] = label;
                    self.sift_up(p);
                    HeapUpdate::Decreased
                } else {
                    HeapUpdate::Unchanged
                }
            }
            _ => {
                self.ops += 1;
                self.items.push(label);
                let p = self.items.len() - 1;
                self.pos.set(v, p as u32);
                self.sift_up(p);
                HeapUpdate::Inserted
            }
        }
    }

    pub fn pop(&mut self) -> Option<DistLabel> {
        if self.items.is_empty() {
            return None;
        }
        self.ops += 1;
        let top = self.items.swap_remove(0);
        self.pos.set(top.curr(), u32::MAX);
        if !self.items.is_empty() {
            self.pos.set(self.items[0].curr(), 0);
            self.sift_down(0);
        }
        Some(top)
    }

    fn sift_up(&mut self, mut i: usize) {
        while i > 0 {
            let parent = (i - 1) / 2;
            if self.items[i] < self.items[parent] {
                self.swap(i, parent);
                i = parent;
            } else {
                break;
            }
        }
    }

    fn sift_down(&mut self, mut i: usize) {
        let n = self.items.len();
        loop {
            let l = 2 * i + 1;
            if l >= n {
                break;
            }
            let r = l + 1;
            let c = if r < n && self.items[r] < self.items[l] { r } else { l };
            if self.items[c] < self.items[i] {
                self.swap(i, c);
                i = c;
            } else {
                break;
            }
        }
    }

    fn swap(&mut self, a: usize, b: usize) {
        self.items.swap(a, b);
        self.pos.set(self.items[a].curr(), a as u32);
        self.pos.set(self.items[b].curr(), b as u32);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stamps_reset_on_clear() {
        let mut s = StampSet::new(4);
        assert!(s.insert(2));
        assert!(!s.insert(2));
        s.clear();
        assert!(!s.contains(2));
        let mut m = StampMap::<u32>::new(3);
        m.set(1, 9);
        assert_eq!(m.get(1), Some(9));
        m.clear();
        assert_eq!(m.get(1), None);
    }

    #[test]
    fn heap_sorts_and_decreases() {
        let mut h = IndexedHeap::new(6);
        for (v, len) in [(0, 5.0), (1, 3.0), (2, 4.0), (3, 1.0)] {
            assert_eq!(h.push_or_decrease(DistLabel::new(len, 1, v, None)), HeapUpdate::Inserted);
        }
        assert_eq!(h.push_or_decrease(DistLabel::new(0.5, 1, 0, None)), HeapUpdate::Decreased);
        assert_eq!(h.push_or_decrease(DistLabel::new(9.0, 1, 1, None)), HeapUpdate::Unchanged);
        let order: Vec<_> = std::iter::from_fn(|| h.pop()).map(|l| l.curr()).collect();
        assert_eq!(order, vec![0, 3, 1, 2]);
        assert!(!h.contains(0));
        // a popped vertex may be pushed again
        assert_eq!(h.push_or_decrease(DistLabel::new(2.0, 1, 0, None)), HeapUpdate::Inserted);
    }
}
