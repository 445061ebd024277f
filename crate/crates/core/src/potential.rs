//! Johnson potentials: reduced weights, feasibility and the repair rules
//! that restore feasibility after a weight decrease.
//!
//! The reduced (potential) weight of `(u, v)` is `w(u, v) + phi(v) - phi(u)`.
//! A potential is feasible if every reduced weight is non-negative, which
//! certifies that the weights contain no negative cycle.

use std::ops::Index;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, Node};
use crate::weight::Weight;
use crate::weights::{super_source_distances, WeightAssignment};

#[derive(Clone, Debug, PartialEq)]
pub struct Potential<W>(Vec<W>);

impl<W: Weight> Potential<W> {
    pub fn zero(n: usize) -> Self {
        Self(vec![W::zero(); n])
    }

    pub fn new(values: Vec<W>) -> Self {
        Self(values)
    }

    pub fn values(&self) -> &[W] {
        &self.0
    }

    pub(crate) fn values_mut(&mut self) -> &mut [W] {
        &mut self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl<W> Index<Node> for Potential<W> {
    type Output = W;
    fn index(&self, x: Node) -> &W {
        &self.0[x]
    }
}

#[inline]
pub fn potential_weight<W: Weight>(
    g: &Graph,
    w: &WeightAssignment<W>,
    phi: &Potential<W>,
    e: EdgeId,
) -> W {
    let edge = g.edge(e);
    w.get(e) + phi.0[edge.target] - phi.0[edge.source]
}

pub fn first_infeasible_edge<W: Weight>(
    g: &Graph,
    w: &WeightAssignment<W>,
    phi: &Potential<W>,
) -> Option<EdgeId> {
    (0..g.m())
        .map(EdgeId)
        .find(|&e| potential_weight(g, w, phi, e).is_negative())
}

pub fn is_feasible<W: Weight>(g: &Graph, w: &WeightAssignment<W>, phi: &Potential<W>) -> bool {
    first_infeasible_edge(g, w, phi).is_none()
}

pub(crate) fn ensure_feasible<W: Weight>(
    g: &Graph,
    w: &WeightAssignment<W>,
    phi: &Potential<W>,
) -> Result<()> {
    match first_infeasible_edge(g, w, phi) {
        None => Ok(()),
        Some(e) => {
            let edge = g.edge(e);
            Err(Error::InfeasiblePotential {
                edge: e.0,
                source_node: edge.source,
                target_node: edge.target,
            })
        }
    }
}

/// Johnson's initialisation: minus the distances from a virtual source.
/// `None` iff the weights contain a negative cycle.
pub fn feasible_potential<W: Weight>(g: &Graph, w: &WeightAssignment<W>) -> Option<Potential<W>> {
    super_source_distances(g, w).map(|d| Potential(d.into_iter().map(|x| -x).collect()))
}

/// How far the reduced weight of an updated edge falls below zero:
/// `-(new_weight + phi(v) - phi(u))`. Repair is needed iff positive.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BreakAmount<W>(pub W);

impl<W: Weight> BreakAmount<W> {
    pub fn of(g: &Graph, phi: &Potential<W>, e: EdgeId, new_weight: W) -> Self {
        let edge = g.edge(e);
        BreakAmount(-(new_weight + phi.0[edge.target] - phi.0[edge.source]))
    }

    #[inline]
    pub fn value(self) -> W {
        self.0
    }

    #[inline]
    pub fn needs_repair(self) -> bool {
        self.0 > W::zero()
    }
}

/// Settled part of a pruned Dijkstra search: every node whose distance from
/// (or, for backward trees, to) `root` is below the search radius, with its
/// exact distance w.r.t. the reduced weights.
#[derive(Clone, Debug, PartialEq)]
pub struct PartialTree<W> {
    pub root: Node,
    pub entries: Vec<(Node, W)>,
}

impl<W: Weight> PartialTree<W> {
    pub fn distance(&self, x: Node) -> Option<W> {
        self.entries.iter().find(|&&(y, _)| y == x).map(|&(_, d)| d)
    }
}

/// `phi(x) += max(0, radius - D(x))` over the tree entries.
pub(crate) fn raise<W>(phi: &mut [W], radius: W, entries: &[(Node, W)])
where
    W: Weight,
{
    for &(x, d) in entries {
        if d < radius {
            phi[x] += radius - d;
        }
    }
}

/// `phi(x) -= max(0, radius - D(x))` over the tree entries.
pub(crate) fn lower<W>(phi: &mut [W], radius: W, entries: &[(Node, W)])
where
    W: Weight,
{
    for &(x, d) in entries {
        if d < radius {
            phi[x] -= radius - d;
        }
    }
}

/// Repairs `phi` after setting `e = (u, v)` to `new_weight` by raising
/// potentials around `v`: `phi'(x) = phi(x) + max(0, B - D(x))` where `D` are
/// distances from `v` in `tree` and `B` is the break amount.
///
/// `tree` must hold every node with `D(x) < B`. Fails if `u` is among them,
/// because then the update closes a negative cycle.
pub fn repair_forward<W: Weight>(
    g: &Graph,
    phi: &Potential<W>,
    e: EdgeId,
    new_weight: W,
    tree: &PartialTree<W>,
) -> Result<Potential<W>> {
    let edge = g.edge(e);
    let b = BreakAmount::of(g, phi, e, new_weight);
    if !b.needs_repair() {
        return Ok(phi.clone());
    }
    check_root(tree, edge.target)?;
    if tree.distance(edge.source).is_some_and(|d| d < b.0) {
        return Err(Error::NegativeCycle);
    }
    let mut out = phi.clone();
    raise(&mut out.0, b.0, &tree.entries);
    Ok(out)
}

/// Mirror of [`repair_forward`]: lowers potentials around `u` using
/// distances *to* `u`, `phi'(x) = phi(x) - max(0, B - D(x))`.
pub fn repair_backward<W: Weight>(
    g: &Graph,
    phi: &Potential<W>,
    e: EdgeId,
    new_weight: W,
    tree: &PartialTree<W>,
) -> Result<Potential<W>> {
    let edge = g.edge(e);
    let b = BreakAmount::of(g, phi, e, new_weight);
    if !b.needs_repair() {
        return Ok(phi.clone());
    }
    check_root(tree, edge.source)?;
    if tree.distance(edge.target).is_some_and(|d| d < b.0) {
        return Err(Error::NegativeCycle);
    }
    let mut out = phi.clone();
    lower(&mut out.0, b.0, &tree.entries);
    Ok(out)
}

/// Splits the break amount `B` into `delta_v` raised around `v` and
/// `B - delta_v` lowered around `u`.
///
/// `forward` must hold every node with distance from `v` below `delta_v`,
/// `backward` every node with distance to `u` below `B - delta_v`, and no
/// `v -> u` path may be shorter than `B`.
pub fn repair_split<W: Weight>(
    g: &Graph,
    phi: &Potential<W>,
    e: EdgeId,
    new_weight: W,
    forward: &PartialTree<W>,
    backward: &PartialTree<W>,
    delta_v: W,
) -> Result<Potential<W>> {
    let edge = g.edge(e);
    let b = BreakAmount::of(g, phi, e, new_weight);
    if !b.needs_repair() {
        return Ok(phi.clone());
    }
    if delta_v.is_negative() || delta_v > b.0 {
        return Err(Error::InvalidArgument(format!(
            "split {delta_v} outside [0, {}]",
            b.0
        )));
    }
    check_root(forward, edge.target)?;
    check_root(backward, edge.source)?;
    let mut out = phi.clone();
    raise(&mut out.0, delta_v, &forward.entries);
    lower(&mut out.0, b.0 - delta_v, &backward.entries);
    Ok(out)
}

fn check_root<W>(tree: &PartialTree<W>, expected: Node) -> Result<()> {
    if tree.root != expected {
        return Err(Error::InvalidArgument(format!(
            "search tree rooted at {} but the repair needs root {expected}",
            tree.root
        )));
    }
    Ok(())
}
