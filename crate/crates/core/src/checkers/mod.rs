//! Consistency checks for a single proposal `w(e) <- c`.
//!
//! Three interchangeable strategies decide whether the updated weights
//! still contain no negative cycle:
//!
//! * [`CheckerKind::BellmanFord`]: SPFA from the head of the edge on raw
//!   weights, rejecting once the tail is closer than `-c`.
//! * [`CheckerKind::Dijkstra`]: pruned Dijkstra on reduced weights of a
//!   maintained feasible potential, repairing the potential on accept.
//! * [`CheckerKind::BiDijkstra`]: the same with alternating forward and
//!   backward searches and the repair split across both endpoints.
//!
//! All three agree on every verdict; only the work done and the maintained
//! potential differ.

mod bellman_ford;
mod bidijkstra;
mod dijkstra;
mod search;

use std::fmt;
use std::str::FromStr;

pub use bellman_ford::spfa_distances;
pub(crate) use search::SearchSpace;
pub use search::{backward_tree, forward_tree};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph};
use crate::potential::{ensure_feasible, Potential};
use crate::weight::Weight;
use crate::weights::WeightAssignment;
use bellman_ford::{spfa_decide, SpfaSpace};
use bidijkstra::bidijkstra_decide;
use dijkstra::dijkstra_decide;

/// One MCMC move: set `edge` to `new_weight`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Proposal<W> {
    pub edge: EdgeId,
    pub new_weight: W,
}

/// Work counters of one decision.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub accepted: bool,
    /// Queue insertions (SPFA enqueues or priority-queue pushes).
    pub insertions: u64,
    /// Nodes popped (SPFA) or settled (Dijkstra).
    pub settled: u64,
    /// `false` if the proposal was decided without any search.
    pub searched: bool,
}

impl Outcome {
    pub(crate) fn trivial_accept() -> Self {
        Outcome {
            accepted: true,
            insertions: 0,
            settled: 0,
            searched: false,
        }
    }
}

/// Result of a stateless check.
#[derive(Clone, Debug, PartialEq)]
pub struct Verdict<W> {
    pub accepted: bool,
    /// Repaired potential; present for potential-based checkers on accept.
    pub new_potential: Option<Potential<W>>,
    pub insertions: u64,
    pub settled: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CheckerKind {
    BellmanFord,
    Dijkstra,
    BiDijkstra,
}

impl CheckerKind {
    pub const ALL: [CheckerKind; 3] = [
        CheckerKind::BellmanFord,
        CheckerKind::Dijkstra,
        CheckerKind::BiDijkstra,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckerKind::BellmanFord => "bf",
            CheckerKind::Dijkstra => "dijkstra",
            CheckerKind::BiDijkstra => "bidijkstra",
        }
    }

    pub fn uses_potential(self) -> bool {
        !matches!(self, CheckerKind::BellmanFord)
    }
}

impl fmt::Display for CheckerKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CheckerKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "bf" | "bellman-ford" | "bellmanford" | "spfa" => Ok(Self::BellmanFord),
            "dijkstra" => Ok(Self::Dijkstra),
            "bidijkstra" | "bi-dijkstra" => Ok(Self::BiDijkstra),
            _ => Err(Error::InvalidArgument(format!("unknown checker `{s}`"))),
        }
    }
}

/// Stateful checker owned by one chain: keeps the potential (for the
/// Dijkstra variants) and reusable scratch buffers.
///
/// The potential is only modified when a proposal is accepted.
#[derive(Clone, Debug)]
pub struct Checker<W> {
    kind: CheckerKind,
    potential: Option<Potential<W>>,
    fwd: SearchSpace<W>,
    bwd: SearchSpace<W>,
    spfa: SpfaSpace<W>,
}

impl<W: Weight> Checker<W> {
    /// A checker with the all-zero potential, which is feasible for any
    /// non-negative starting weights.
    pub fn new(kind: CheckerKind, g: &Graph) -> Self {
        let potential = kind.uses_potential().then(|| Potential::zero(g.n()));
        Self::build(kind, g, potential)
    }

    /// A checker resuming from `phi`, which must be feasible for `w`.
    pub fn with_potential(
        kind: CheckerKind,
        g: &Graph,
        w: &WeightAssignment<W>,
        phi: Potential<W>,
    ) -> Result<Self> {
        if kind.uses_potential() {
            ensure_feasible(g, w, &phi)?;
        }
        Ok(Self::build(kind, g, kind.uses_potential().then_some(phi)))
    }

    fn build(kind: CheckerKind, g: &Graph, potential: Option<Potential<W>>) -> Self {
        let n = g.n();
        let (fwd_n, bwd_n, spfa_n) = match kind {
            CheckerKind::BellmanFord => (0, 0, n),
            CheckerKind::Dijkstra => (n, 0, 0),
            CheckerKind::BiDijkstra => (n, n, 0),
        };
        Self {
            kind,
            potential,
            fwd: SearchSpace::new(fwd_n),
            bwd: SearchSpace::new(bwd_n),
            spfa: SpfaSpace::new(spfa_n),
        }
    }

    pub fn kind(&self) -> CheckerKind {
        self.kind
    }

    pub fn potential(&self) -> Option<&Potential<W>> {
        self.potential.as_ref()
    }

    /// Resets the maintained potential to zero (e.g. when a chain restarts
    /// from non-negative weights).
    pub fn reset_potential(&mut self) {
        if let Some(p) = &mut self.potential {
            p.values_mut().fill(W::zero());
        }
    }

    /// Decides `p` against the current weights `w` (which must be
    /// consistent). On accept the internal potential is repaired for the
    /// updated weights; `w` itself is left to the caller.
    pub fn decide(&mut self, g: &Graph, w: &WeightAssignment<W>, p: Proposal<W>) -> Outcome {
        match self.kind {
            CheckerKind::BellmanFord => spfa_decide(g, w, &mut self.spfa, p.edge, p.new_weight),
            CheckerKind::Dijkstra => {
                let phi = self.potential.as_mut().expect("potential").values_mut();
                dijkstra_decide(g, w, phi, &mut self.fwd, p.edge, p.new_weight)
            }
            CheckerKind::BiDijkstra => {
                let phi = self.potential.as_mut().expect("potential").values_mut();
                bidijkstra_decide(
                    g,
                    w,
                    phi,
                    &mut self.fwd,
                    &mut self.bwd,
                    p.edge,
                    p.new_weight,
                )
            }
        }
    }
}

/// Stateless SPFA check; `(g, w)` must be consistent.
pub fn check_bellman_ford<W: Weight>(
    g: &Graph,
    w: &WeightAssignment<W>,
    p: Proposal<W>,
) -> Verdict<W> {
    let mut space = SpfaSpace::new(g.n());
    let o = spfa_decide(g, w, &mut space, p.edge, p.new_weight);
    Verdict {
        accepted: o.accepted,
        new_potential: None,
        insertions: o.insertions,
        settled: o.settled,
    }
}

/// Stateless pruned-Dijkstra check. Fails if `phi` is not feasible for `w`.
pub fn check_dijkstra<W: Weight>(
    g: &Graph,
    w: &WeightAssignment<W>,
    phi: &Potential<W>,
    p: Proposal<W>,
) -> Result<Verdict<W>> {
    check_with_potential(CheckerKind::Dijkstra, g, w, phi, p)
}

/// Stateless bidirectional check. Fails if `phi` is not feasible for `w`.
pub fn check_bidijkstra<W: Weight>(
    g: &Graph,
    w: &WeightAssignment<W>,
    phi: &Potential<W>,
    p: Proposal<W>,
) -> Result<Verdict<W>> {
    check_with_potential(CheckerKind::BiDijkstra, g, w, phi, p)
}

fn check_with_potential<W: Weight>(
    kind: CheckerKind,
    g: &Graph,
    w: &WeightAssignment<W>,
    phi: &Potential<W>,
    p: Proposal<W>,
) -> Result<Verdict<W>> {
    let mut checker = Checker::with_potential(kind, g, w, phi.clone())?;
    let o = checker.decide(g, w, p);
    Ok(Verdict {
        accepted: o.accepted,
        new_potential: o
            .accepted
            .then(|| checker.potential.take().expect("potential")),
        insertions: o.insertions,
        settled: o.settled,
    })
}

#[cfg(test)]
mod tests;
