//! Pivot selection: bounded local Dijkstra searches from every frontier
//! vertex, grouping frontier vertices that share large search trees.
//!
//! A search from `x` stops after collecting `k` vertices (the tree becomes a
//! new forest component), when it touches an existing component (it is
//! merged in), or when its heap runs dry (the tree is kept as an arborescence
//! in `W` and `x` goes to `Q`). Components are then cut into pieces of
//! `[k, 3k)` vertices; the frontier vertices of each piece form one group.
//!
//! A merged search is attached through the edge that reached the existing
//! component, which may give that vertex a second tree edge. Component edges
//! are therefore kept undirected, and each component is re-rooted at the
//! vertex that started it before partitioning.

use crate::graph::Graph;
use crate::labels::{Bound, LabelStore, Vertex};
use crate::scratch::{HeapUpdate, IndexedHeap, StampMap, StampSet};
use crate::treepart::{partition_tree, RootedTree};

/// Per-vertex buffers reused across calls.
#[derive(Debug, Clone)]
pub struct SearchScratch {
    heap: IndexedHeap,
    component: StampMap<u32>,
    search_parent: StampMap<Vertex>,
    in_s: StampSet,
    in_q: StampSet,
    in_w: StampSet,
    assigned: StampSet,
    local: StampMap<u32>,
}

impl SearchScratch {
    pub fn new(n: usize) -> Self {
        SearchScratch {
            heap: IndexedHeap::new(n),
            component: StampMap::new(n),
            search_parent: StampMap::new(n),
            in_s: StampSet::new(n),
            in_q: StampSet::new(n),
            in_w: StampSet::new(n),
            assigned: StampSet::new(n),
            local: StampMap::new(n),
        }
    }
}

/// One frontier group `P_j` and the edges of the piece `F_j` holding it.
#[derive(Debug, Clone, Default)]
pub struct PivotGroup {
    pub members: Vec<Vertex>,
    pub edges: Vec<(Vertex, Vertex)>,
}

#[derive(Debug, Clone, Default)]
pub struct PivotOutput {
    /// Groups with at least one frontier vertex, in piece order.
    pub groups: Vec<PivotGroup>,
    /// Roots of the failed searches.
    pub q: Vec<Vertex>,
    /// Vertices of the failed searches, without repeats.
    pub w: Vec<Vertex>,
    /// Number of pieces produced by partitioning, empty groups included.
    pub pieces: usize,
    pub searches: usize,
    pub heap_ops: u64,
}

#[derive(Debug, Default)]
struct Component {
    root: Vertex,
    vertices: Vec<Vertex>,
    edges: Vec<(Vertex, Vertex)>,
}

/// Runs the local searches from `s` (in the given order) under `bound`.
/// Every vertex of `s` must carry a label below `bound`.
pub fn find_pivots(
    g: &Graph,
    store: &mut LabelStore,
    bound: &Bound,
    s: &[Vertex],
    k: usize,
    scratch: &mut SearchScratch,
) -> PivotOutput {
    let k = k.max(1);
    let ops_before = scratch.heap.ops;
    let mut out = PivotOutput::default();
    let mut components: Vec<Component> = Vec::new();
    scratch.component.clear();
    scratch.in_s.clear();
    scratch.in_q.clear();
    scratch.in_w.clear();
    for &x in s {
        scratch.in_s.insert(x);
    }

    let mut found: Vec<Vertex> = Vec::with_capacity(2 * k);
    for &x in s {
        if scratch.component.contains(x) {
            continue;
        }
        out.searches += 1;
        debug_assert!(bound.admits(store.get(x)), "frontier vertex {x} not below bound");
        let heap = &mut scratch.heap;
        heap.clear();
        scratch.search_parent.clear();
        found.clear();
        heap.push_or_decrease(*store.get(x));
        scratch.search_parent.set(x, x);
        found.push(x);

        let mut touched: Option<(u32, Vertex, Vertex)> = None;
        'search: while found.len() < k {
            let Some(top) = heap.pop() else { break };
            let u = top.curr();
            for (_, v, w) in g.out_edges(u) {
                if !store.relax(u, v, w, bound) {
                    continue;
                }
                if let Some(c) = scratch.component.get(v) {
                    touched = Some((c, u, v));
                    break 'search;
                }
                let fresh = !scratch.search_parent.contains(v);
                scratch.search_parent.set(v, u);
                match heap.push_or_decrease(*store.get(v)) {
                    HeapUpdate::Inserted => {
                        debug_assert!(fresh, "vertex {v} re-entered the heap after extraction");
                        found.push(v);
                    }
                    HeapUpdate::Decreased | HeapUpdate::Unchanged => {}
                }
            }
        }

        let tree_edges = found.iter().filter(|&&v| v != x).map(|&v| (scratch.search_parent.get(v).unwrap(), v));
        if let Some((c, u, v)) = touched {
            let comp = &mut components[c as usize];
            comp.edges.extend(tree_edges);
            comp.edges.push((u, v));
            for &y in &found {
                scratch.component.set(y, c);
                comp.vertices.push(y);
            }
        } else if found.len() >= k {
            let c = components.len() as u32;
            let edges = tree_edges.collect();
            for &y in &found {
                scratch.component.set(y, c);
            }
            components.push(Component { root: x, vertices: found.clone(), edges });
        } else {
            out.q.push(x);
            scratch.in_q.insert(x);
            for &y in &found {
                if scratch.in_w.insert(y) {
                    out.w.push(y);
                }
            }
        }
    }

    scratch.assigned.clear();
    for comp in &components {
        split_component(comp, k, scratch, &mut out);
    }
    out.heap_ops = scratch.heap.ops - ops_before;
    out
}

fn split_component(comp: &Component, k: usize, scratch: &mut SearchScratch, out: &mut PivotOutput) {
    let n = comp.vertices.len();
    debug_assert_eq!(comp.edges.len() + 1, n, "component is not a tree");
    scratch.local.clear();
    for (i, &v) in comp.vertices.iter().enumerate() {
        scratch.local.set(v, i as u32);
    }
    let mut off = vec![0usize; n + 1];
    for &(a, b) in &comp.edges {
        off[scratch.local.get(a).unwrap() as usize + 1] += 1;
        off[scratch.local.get(b).unwrap() as usize + 1] += 1;
    }
    for i in 0..n {
        off[i + 1] += off[i];
    }
    let mut fill = off.clone();
    let mut adj = vec![0usize; 2 * comp.edges.len()];
    for &(a, b) in &comp.edges {
        let (a, b) = (scratch.local.get(a).unwrap() as usize, scratch.local.get(b).unwrap() as usize);
        adj[fill[a]] = b;
        fill[a] += 1;
        adj[fill[b]] = a;
        fill[b] += 1;
    }

    let root = scratch.local.get(comp.root).unwrap() as usize;
    let mut parent: Vec<Option<usize>> = vec![None; n];
    let mut seen = vec![false; n];
    let mut stack = vec![root];
    seen[root] = true;
    while let Some(a) = stack.pop() {
        for &b in &adj[off[a]..off[a + 1]] {
            if !seen[b] {
                seen[b] = true;
                parent[b] = Some(a);
                stack.push(b);
            }
        }
    }
    let tree = RootedTree::new(comp.vertices.clone(), parent).expect("search forest component is a tree");
    let part = partition_tree(&tree, k.min(n)).expect("component holds at least k vertices");

    for piece in part.groups {
        out.pieces += 1;
        let mut group = PivotGroup::default();
        for &v in &piece.vertices {
            if v != piece.root {
                let lv = scratch.local.get(v).unwrap() as usize;
                let pv = tree.parent(lv).expect("non-root vertex has a parent");
                group.edges.push((comp.vertices[pv], v));
            }
            if scratch.in_s.contains(v) && !scratch.in_q.contains(v) && scratch.assigned.insert(v) {
                group.members.push(v);
            }
        }
        if !group.members.is_empty() {
            out.groups.push(group);
        }
    }
}
