use std::ops::Range;

use crate::error::{Error, Result};

pub type Node = usize;

/// Position of an edge in the flat edge array of a [`Graph`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeId(pub usize);

impl EdgeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub source: Node,
    pub target: Node,
}

/// Immutable directed graph in compressed-sparse-row form.
///
/// Edges are stored with both endpoints in one flat array sorted by
/// `(source, target)`, so a uniformly random edge is a uniformly random
/// index. A second index groups edge ids by target for backward searches.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    offsets: Vec<usize>,
    rev_offsets: Vec<usize>,
    rev_index: Vec<EdgeId>,
    labels: Option<Vec<u64>>,
}

/// Builds a graph on nodes `0..=max id`. Duplicates and self-loops are dropped.
pub fn build_graph(edge_list: &[(Node, Node)]) -> Result<Graph> {
    if edge_list.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let n = edge_list.iter().map(|&(u, v)| u.max(v)).max().unwrap() + 1;
    Graph::from_edges(n, edge_list.iter().copied())
}

impl Graph {
    /// Builds a graph with exactly `n` nodes. Node ids must be below `n`.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Node, Node)>,
    {
        let mut list: Vec<Edge> = Vec::new();
        for (source, target) in edges {
            if source >= n || target >= n {
                return Err(Error::InvalidArgument(format!(
                    "edge ({source}, {target}) out of range for {n} nodes"
                )));
            }
            if source != target {
                list.push(Edge { source, target });
            }
        }
        list.sort_unstable();
        list.dedup();

        let mut offsets = vec![0usize; n + 1];
        for e in &list {
            offsets[e.source + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }

        // counting sort by target; stable, so in-edges stay ascending by source
        let mut rev_offsets = vec![0usize; n + 1];
        for e in &list {
            rev_offsets[e.target + 1] += 1;
        }
        for i in 0..n {
            rev_offsets[i + 1] += rev_offsets[i];
        }
        let mut cursor = rev_offsets.clone();
        let mut rev_index = vec![EdgeId(0); list.len()];
        for (i, e) in list.iter().enumerate() {
            rev_index[cursor[e.target]] = EdgeId(i);
            cursor[e.target] += 1;
        }

        Ok(Self {
            n,
            edges: list,
            offsets,
            rev_offsets,
            rev_index,
            labels: None,
        })
    }

    /// Attaches external node labels (one per node), e.g. ids from an input file.
    pub fn with_labels(mut self, labels: Vec<u64>) -> Self {
        assert_eq!(labels.len(), self.n, "one label per node");
        self.labels = Some(labels);
        self
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    #[inline]
    pub fn edge(&self, e: EdgeId) -> Edge {
        self.edges[e.0]
    }

    pub fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    pub fn reverse_offsets(&self) -> &[usize] {
        &self.rev_offsets
    }

    pub fn reverse_index(&self) -> &[EdgeId] {
        &self.rev_index
    }

    /// Range of edge ids leaving `u`.
    #[inline]
    pub fn out_range(&self, u: Node) -> Range<usize> {
        self.offsets[u]..self.offsets[u + 1]
    }

    /// Edge ids entering `v`, ascending by source.
    #[inline]
    pub fn in_edge_ids(&self, v: Node) -> &[EdgeId] {
        &self.rev_index[self.rev_offsets[v]..self.rev_offsets[v + 1]]
    }

    pub fn out_edges(&self, u: Node) -> impl Iterator<Item = (EdgeId, Node)> + '_ {
        self.out_range(u)
            .map(move |i| (EdgeId(i), self.edges[i].target))
    }

    pub fn in_edges(&self, v: Node) -> impl Iterator<Item = (EdgeId, Node)> + '_ {
        self.in_edge_ids(v)
            .iter()
            .map(move |&e| (e, self.edges[e.0].source))
    }

    pub fn out_degree(&self, u: Node) -> usize {
        self.offsets[u + 1] - self.offsets[u]
    }

    pub fn in_degree(&self, v: Node) -> usize {
        self.rev_offsets[v + 1] - self.rev_offsets[v]
    }

    pub fn edge_id(&self, u: Node, v: Node) -> Option<EdgeId> {
        let range = self.out_range(u);
        let start = range.start;
        self.edges[range]
            .binary_search_by_key(&v, |e| e.target)
            .ok()
            .map(|i| EdgeId(start + i))
    }

    pub fn labels(&self) -> Option<&[u64]> {
        self.labels.as_deref()
    }

    /// External id of `x`; the node id itself when no labels are attached.
    #[inline]
    pub fn label(&self, x: Node) -> u64 {
        match &self.labels {
            Some(l) => l[x],
            None => x as u64,
        }
    }

    /// Subgraph induced by `nodes` with ids remapped to `0..nodes.len()` in
    /// the given order. Labels of the result refer to this graph's labels.
    pub fn induced_subgraph(&self, nodes: &[Node]) -> Graph {
        const ABSENT: usize = usize::MAX;
        let mut map = vec![ABSENT; self.n];
        for (i, &x) in nodes.iter().enumerate() {
            map[x] = i;
        }
        let edges = self.edges.iter().filter_map(|e| {
            let (s, t) = (map[e.source], map[e.target]);
            (s != ABSENT && t != ABSENT).then_some((s, t))
        });
        let sub = Graph::from_edges(nodes.len(), edges).expect("remapped ids are in range");
        sub.with_labels(nodes.iter().map(|&x| self.label(x)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn doubly_linked_path() {
        let g = build_graph(&[(0, 1), (1, 0)]).unwrap();
        assert_eq!((g.n(), g.m()), (2, 2));
    }

    #[test]
    fn duplicates_and_self_loops_removed() {
        let g = build_graph(&[(0, 1), (0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(g.m(), 3);
        let g = build_graph(&[(0, 1), (1, 1), (1, 0)]).unwrap();
        assert_eq!(g.m(), 2);
    }

    #[test]
    fn three_cycle_offsets() {
        let g = build_graph(&[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(g.offsets(), &[0, 1, 2, 3]);
        assert_eq!(g.reverse_offsets(), &[0, 1, 2, 3]);
        assert_eq!(g.reverse_index(), &[EdgeId(2), EdgeId(0), EdgeId(1)]);
    }

    #[test]
    fn empty_edge_list() {
        assert!(matches!(build_graph(&[]), Err(Error::EmptyGraph)));
    }

    #[test]
    fn targets_ascending_within_bucket() {
        let g = build_graph(&[(0, 3), (0, 1), (0, 2), (1, 0)]).unwrap();
        let t: Vec<_> = g.out_edges(0).map(|(_, v)| v).collect();
        assert_eq!(t, vec![1, 2, 3]);
        assert_eq!(g.edge_id(0, 2), Some(EdgeId(1)));
        assert_eq!(g.edge_id(2, 0), None);
    }

    #[test]
    fn out_of_range_ids() {
        assert!(Graph::from_edges(2, [(0, 2)]).is_err());
    }

    #[test]
    fn induced_subgraph_keeps_labels() {
        let g = build_graph(&[(0, 1), (1, 2), (2, 1), (2, 3)]).unwrap();
        let sub = g.induced_subgraph(&[1, 2]);
        assert_eq!(sub.m(), 2);
        assert_eq!(sub.labels(), Some(&[1u64, 2][..]));
    }
}
