//! Splits a rooted tree into edge-disjoint connected pieces of `[s, 3s)`
//! vertices. Edges are treated as undirected; pieces may share their root.

use thiserror::Error;

use crate::labels::Vertex;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreePartError {
    #[error("group size {s} outside 1..={n}")]
    InvalidSize { s: usize, n: usize },
    #[error("malformed tree: {0}")]
    Malformed(String),
}

/// A tree over arbitrary vertex ids, stored by local position.
#[derive(Debug, Clone)]
pub struct RootedTree {
    ids: Vec<Vertex>,
    parent: Vec<Option<usize>>,
    root: usize,
    child_off: Vec<usize>,
    children: Vec<usize>,
}

impl RootedTree {
    /// `parent[i]` is the local position of node `i`'s parent; exactly one
    /// node has none. Children are ordered by ascending vertex id.
    pub fn new(ids: Vec<Vertex>, parent: Vec<Option<usize>>) -> Result<Self, TreePartError> {
        let n = ids.len();
        if parent.len() != n {
            return Err(TreePartError::Malformed("id and parent lists differ in length".into()));
        }
        let mut root = None;
        let mut child_off = vec![0usize; n + 1];
        for (i, p) in parent.iter().enumerate() {
            match *p {
                None if root.is_some() => return Err(TreePartError::Malformed("several roots".into())),
                None => root = Some(i),
                Some(p) if p >= n || p == i => {
                    return Err(TreePartError::Malformed(format!("bad parent {p} for node {i}")))
                }
                Some(p) => child_off[p + 1] += 1,
            }
        }
        let root = root.ok_or_else(|| TreePartError::Malformed("no root".into()))?;
        for i in 0..n {
            child_off[i + 1] += child_off[i];
        }
        let mut fill = child_off.clone();
        let mut children = vec![0usize; n.saturating_sub(1)];
        for (i, p) in parent.iter().enumerate() {
            if let Some(p) = *p {
                children[fill[p]] = i;
                fill[p] += 1;
            }
        }
        for i in 0..n {
            children[child_off[i]..child_off[i + 1]].sort_unstable_by_key(|&c| ids[c]);
        }
        let tree = RootedTree { ids, parent, root, child_off, children };
        if tree.reachable() != n {
            return Err(TreePartError::Malformed("parent links contain a cycle".into()));
        }
        Ok(tree)
    }

    /// Tree over ids `0..parent.len()`.
    pub fn from_parents(parent: Vec<Option<usize>>) -> Result<Self, TreePartError> {
        let ids = (0..parent.len() as Vertex).collect();
        Self::new(ids, parent)
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn root(&self) -> Vertex {
        self.ids[self.root]
    }

    pub fn ids(&self) -> &[Vertex] {
        &self.ids
    }

    pub fn parent(&self, i: usize) -> Option<usize> {
        self.parent[i]
    }

    fn children(&self, i: usize) -> &[usize] {
        &self.children[self.child_off[i]..self.child_off[i + 1]]
    }

    fn reachable(&self) -> usize {
        let mut stack = vec![self.root];
        let mut seen = 0;
        while let Some(v) = stack.pop() {
            seen += 1;
            if seen > self.len() {
                break;
            }
            stack.extend_from_slice(self.children(v));
        }
        seen
    }
}

/// A connected piece: `root` is its top-most vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeGroup {
    pub root: Vertex,
    pub vertices: Vec<Vertex>,
}

#[derive(Debug, Clone)]
pub struct Partition {
    pub groups: Vec<TreeGroup>,
    /// Elementary steps taken (stack moves plus vertex copies).
    pub steps: u64,
}

/// Bottom-up grouping: each vertex gathers the leftovers of its children and
/// reports a group whenever it holds at least `s` vertices, keeping only
/// itself afterwards. What remains at the root joins the last group.
pub fn partition_tree(tree: &RootedTree, s: usize) -> Result<Partition, TreePartError> {
    let n = tree.len();
    if s == 0 || s > n {
        return Err(TreePartError::InvalidSize { s, n });
    }
    let mut groups: Vec<TreeGroup> = Vec::new();
    let mut steps = 0u64;
    // leftovers of all open frames, each frame's part starting at its mark
    let mut pending: Vec<usize> = Vec::with_capacity(n);
    // (node, mark, next child index)
    let mut stack: Vec<(usize, usize, usize)> = vec![(tree.root, 0, 0)];
    pending.push(tree.root);

    while let Some(top) = stack.last_mut() {
        steps += 1;
        let (v, mark, next) = *top;
        let kids = tree.children(v);
        if next < kids.len() {
            top.2 += 1;
            let c = kids[next];
            stack.push((c, pending.len(), 0));
            pending.push(c);
            continue;
        }
        stack.pop();
        if let Some(parent) = stack.last() {
            // the finished child's leftovers now belong to the parent frame
            let (p, pmark, _) = *parent;
            if pending.len() - pmark >= s {
                steps += (pending.len() - pmark) as u64;
                let vertices = pending.drain(pmark..).map(|i| tree.ids[i]).collect();
                groups.push(TreeGroup { root: tree.ids[p], vertices });
                pending.push(p);
            }
        } else {
            debug_assert_eq!(mark, 0);
        }
    }

    steps += pending.len() as u64;
    match groups.last_mut() {
        None => groups.push(TreeGroup { root: tree.root(), vertices: pending.iter().map(|&i| tree.ids[i]).collect() }),
        Some(last) => {
            if pending.len() > 1 {
                // the last group's root is among the leftovers; skip the copy
                let shared = last.root;
                last.vertices.extend(pending.iter().map(|&i| tree.ids[i]).filter(|&x| x != shared));
                last.root = tree.root();
            }
        }
    }
    Ok(Partition { groups, steps })
}
