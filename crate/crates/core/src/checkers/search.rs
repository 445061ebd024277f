use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::graph::{EdgeId, Graph, Node};
use crate::potential::{PartialTree, Potential};
use crate::weight::Weight;
use crate::weights::WeightAssignment;

/// Min-heap entry ordered by `(key, node)`.
#[derive(Clone, Copy, Debug)]
pub(crate) struct HeapEntry<W> {
    pub key: W,
    pub node: Node,
}

impl<W: Weight> PartialEq for HeapEntry<W> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl<W: Weight> Eq for HeapEntry<W> {}

impl<W: Weight> PartialOrd for HeapEntry<W> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<W: Weight> Ord for HeapEntry<W> {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .key
            .total_cmp(&self.key)
            .then_with(|| other.node.cmp(&self.node))
    }
}

/// Per-chain Dijkstra scratch. Labels are invalidated by bumping a
/// generation counter instead of clearing O(n) arrays.
#[derive(Clone, Debug)]
pub(crate) struct SearchSpace<W> {
    dist: Vec<W>,
    labeled: Vec<u32>,
    settled: Vec<u32>,
    generation: u32,
    pub heap: BinaryHeap<HeapEntry<W>>,
    /// Settled nodes with their final distance, in settling order.
    pub tree: Vec<(Node, W)>,
    pub stack: Vec<Node>,
}

impl<W: Weight> SearchSpace<W> {
    pub fn new(n: usize) -> Self {
        Self {
            dist: vec![W::zero(); n],
            labeled: vec![0; n],
            settled: vec![0; n],
            generation: 0,
            heap: BinaryHeap::new(),
            tree: Vec::new(),
            stack: Vec::new(),
        }
    }

    pub fn reset(&mut self) {
        self.generation = self.generation.wrapping_add(1);
        if self.generation == 0 {
            self.labeled.fill(0);
            self.settled.fill(0);
            self.generation = 1;
        }
        self.heap.clear();
        self.tree.clear();
        self.stack.clear();
    }

    #[inline]
    pub fn label(&self, x: Node) -> Option<W> {
        (self.labeled[x] == self.generation).then(|| self.dist[x])
    }

    #[inline]
    pub fn is_settled(&self, x: Node) -> bool {
        self.settled[x] == self.generation
    }

    /// Lowers the label of `x` to `d` and queues it. Returns `true` if an
    /// entry was pushed.
    #[inline]
    pub fn relax(&mut self, x: Node, d: W) -> bool {
        if self.is_settled(x) {
            return false;
        }
        if let Some(old) = self.label(x) {
            if d >= old {
                return false;
            }
        }
        self.labeled[x] = self.generation;
        self.dist[x] = d;
        self.heap.push(HeapEntry { key: d, node: x });
        true
    }

    #[inline]
    pub fn settle(&mut self, x: Node, d: W) {
        self.labeled[x] = self.generation;
        self.settled[x] = self.generation;
        self.dist[x] = d;
        self.tree.push((x, d));
    }

    /// Drops stale and already-settled entries from the top of the heap.
    #[inline]
    fn discard_stale(&mut self) {
        while let Some(top) = self.heap.peek() {
            if self.is_settled(top.node) || self.label(top.node).is_some_and(|d| top.key > d) {
                self.heap.pop();
            } else {
                break;
            }
        }
    }

    /// Smallest live key, or `None` if the queue is exhausted.
    #[inline]
    pub fn min_key(&mut self) -> Option<W> {
        self.discard_stale();
        self.heap.peek().map(|e| e.key)
    }

    #[inline]
    pub fn pop_min(&mut self) -> Option<(Node, W)> {
        self.discard_stale();
        self.heap.pop().map(|e| (e.node, e.key))
    }
}

#[inline]
pub(crate) fn reduced<W: Weight>(g: &Graph, w: &[W], phi: &[W], e: usize) -> W {
    let edge = g.edges()[e];
    let r = w[e] + phi[edge.target] - phi[edge.source];
    debug_assert!(
        !W::DISCRETE || !r.is_negative(),
        "infeasible potential on edge {e}"
    );
    r
}

/// Every node whose reduced distance from `root` is below `radius`.
pub fn forward_tree<W: Weight>(
    g: &Graph,
    w: &WeightAssignment<W>,
    phi: &Potential<W>,
    root: Node,
    radius: W,
) -> PartialTree<W> {
    pruned_tree(g, w, phi, root, radius, Direction::Forward)
}

/// Every node whose reduced distance to `root` is below `radius`.
pub fn backward_tree<W: Weight>(
    g: &Graph,
    w: &WeightAssignment<W>,
    phi: &Potential<W>,
    root: Node,
    radius: W,
) -> PartialTree<W> {
    pruned_tree(g, w, phi, root, radius, Direction::Backward)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Direction {
    Forward,
    Backward,
}

fn pruned_tree<W: Weight>(
    g: &Graph,
    w: &WeightAssignment<W>,
    phi: &Potential<W>,
    root: Node,
    radius: W,
    dir: Direction,
) -> PartialTree<W> {
    let mut space = SearchSpace::new(g.n());
    space.reset();
    if W::zero() < radius {
        space.relax(root, W::zero());
    }
    while let Some((x, d)) = space.pop_min() {
        space.settle(x, d);
        for_each_arc(g, x, dir, |e, y| {
            let nd = d + reduced(g, w.values(), phi.values(), e.index());
            if nd < radius {
                space.relax(y, nd);
            }
        });
    }
    PartialTree {
        root,
        entries: space.tree,
    }
}

/// Calls `f(edge, other endpoint)` for out-arcs (forward) or in-arcs (backward) of `x`.
#[inline]
pub(crate) fn for_each_arc<F: FnMut(EdgeId, Node)>(g: &Graph, x: Node, dir: Direction, mut f: F) {
    match dir {
        Direction::Forward => {
            for i in g.out_range(x) {
                f(EdgeId(i), g.edges()[i].target);
            }
        }
        Direction::Backward => {
            for &e in g.in_edge_ids(x) {
                f(e, g.edges()[e.0].source);
            }
        }
    }
}
