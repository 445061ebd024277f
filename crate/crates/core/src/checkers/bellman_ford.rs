use std::collections::VecDeque;

use super::Outcome;
use crate::graph::{EdgeId, Graph, Node};
use crate::weight::Weight;
use crate::weights::WeightAssignment;

/// Scratch for the queue-based (SPFA) Bellman–Ford.
#[derive(Clone, Debug)]
pub(crate) struct SpfaSpace<W> {
    dist: Vec<W>,
    labeled: Vec<u32>,
    in_queue: Vec<u32>,
    generation: u32,
    queue: VecDeque<Node>,
}

impl<W: Weight> SpfaSpace<W> {
    pub fn new(n: usize) -> Self {
        Self {
            dist: vec![W::zero(); n],
            labeled: vec![0; n],
            in_queue: vec![0; n],
            generation: 0,
            queue: VecDeque::new(),
        }
    }

    fn reset(&mut self) {
        self.generation = self.generation.wrapping_add(1);
        if self.generation == 0 {
            self.labeled.fill(0);
            self.in_queue.fill(0);
            self.generation = 1;
        }
        self.queue.clear();
    }
}

/// Decides a proposal `w(u, v) <- new_weight` on raw weights: the update
/// closes a negative cycle iff some `v -> u` path is shorter than
/// `-new_weight`. Increases are accepted without searching.
pub(crate) fn spfa_decide<W: Weight>(
    g: &Graph,
    w: &WeightAssignment<W>,
    space: &mut SpfaSpace<W>,
    e: EdgeId,
    new_weight: W,
) -> Outcome {
    if new_weight >= w.get(e) {
        return Outcome::trivial_accept();
    }
    let edge = g.edge(e);
    let (u, v) = (edge.source, edge.target);
    let threshold = -new_weight;
    let weights = w.values();

    space.reset();
    let gen = space.generation;
    space.dist[v] = W::zero();
    space.labeled[v] = gen;
    space.in_queue[v] = gen;
    space.queue.push_back(v);
    let mut out = Outcome {
        accepted: true,
        insertions: 1,
        settled: 0,
        searched: true,
    };

    while let Some(x) = space.queue.pop_front() {
        space.in_queue[x] = 0;
        out.settled += 1;
        let dx = space.dist[x];
        for i in g.out_range(x) {
            let y = g.edges()[i].target;
            let nd = dx + weights[i];
            if space.labeled[y] == gen && nd >= space.dist[y] {
                continue;
            }
            space.labeled[y] = gen;
            space.dist[y] = nd;
            if y == u && nd < threshold {
                out.accepted = false;
                return out;
            }
            if space.in_queue[y] != gen {
                space.in_queue[y] = gen;
                space.queue.push_back(y);
                out.insertions += 1;
            }
        }
    }
    out
}

/// Single-source distances by SPFA with negative-cycle detection.
///
/// Returns `None` if a negative cycle is reachable from `source`.
/// Unreachable nodes get [`Weight::infinity`].
pub fn spfa_distances<W: Weight>(
    g: &Graph,
    w: &WeightAssignment<W>,
    source: Node,
) -> Option<Vec<W>> {
    let n = g.n();
    let inf = W::infinity();
    let mut dist = vec![inf; n];
    let mut reached = vec![false; n];
    let mut in_queue = vec![false; n];
    let mut relaxed = vec![0usize; n];
    let mut queue = VecDeque::new();
    dist[source] = W::zero();
    reached[source] = true;
    in_queue[source] = true;
    queue.push_back(source);

    while let Some(x) = queue.pop_front() {
        in_queue[x] = false;
        for i in g.out_range(x) {
            let y = g.edges()[i].target;
            let nd = dist[x] + w.values()[i];
            if reached[y] && nd >= dist[y] {
                continue;
            }
            reached[y] = true;
            dist[y] = nd;
            relaxed[y] += 1;
            // a shortest path has at most n - 1 edges, so a node can only
            // improve n - 1 times without a negative cycle
            if relaxed[y] >= n {
                return None;
            }
            if !in_queue[y] {
                in_queue[y] = true;
                queue.push_back(y);
            }
        }
    }
    Some(dist)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_graph, gen_cycle};

    #[test]
    fn spfa_on_small_graph() {
        let g = build_graph(&[(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap();
        let w = WeightAssignment::new(vec![4i64, 1, -2, 3]);
        // edges sorted: (0,1)=4 (0,2)=1 (1,2)=-2 (2,3)=3
        let d = spfa_distances(&g, &w, 0).unwrap();
        assert_eq!(d, vec![0, 4, 1, 4]);
        let d = spfa_distances(&g, &w, 3).unwrap();
        assert_eq!(d, vec![i64::MAX, i64::MAX, i64::MAX, 0]);
    }

    #[test]
    fn spfa_detects_negative_cycle() {
        let g = gen_cycle(3).unwrap();
        let w = WeightAssignment::new(vec![-1i64, -1, 1]);
        assert!(spfa_distances(&g, &w, 0).is_none());
    }
}
