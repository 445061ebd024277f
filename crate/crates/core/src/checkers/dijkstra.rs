use super::search::{reduced, SearchSpace};
use super::Outcome;
use crate::graph::{EdgeId, Graph};
use crate::potential::raise;
use crate::weight::Weight;
use crate::weights::WeightAssignment;

/// Pruned Dijkstra from `v` on reduced weights with radius `B`, the break
/// amount of the proposal. Rejects once `u` is settled (then `D(u) < B`);
/// otherwise raises the potentials of the settled tree and accepts.
///
/// Zero-weight arcs out of a settled node are followed depth-first and
/// settled on the spot instead of going through the queue.
pub(crate) fn dijkstra_decide<W: Weight>(
    g: &Graph,
    w: &WeightAssignment<W>,
    phi: &mut [W],
    space: &mut SearchSpace<W>,
    e: EdgeId,
    new_weight: W,
) -> Outcome {
    let edge = g.edge(e);
    let (u, v) = (edge.source, edge.target);
    let radius = -(new_weight + phi[v] - phi[u]);
    if new_weight >= w.get(e) || radius <= W::zero() {
        return Outcome::trivial_accept();
    }

    let weights = w.values();
    space.reset();
    space.relax(v, W::zero());
    let mut out = Outcome {
        accepted: true,
        insertions: 1,
        settled: 0,
        searched: true,
    };

    while let Some((x, d)) = space.pop_min() {
        space.settle(x, d);
        out.settled += 1;
        if x == u {
            out.accepted = false;
            return out;
        }
        space.stack.push(x);
        while let Some(y) = space.stack.pop() {
            for i in g.out_range(y) {
                let z = g.edges()[i].target;
                if space.is_settled(z) {
                    continue;
                }
                let r = reduced(g, weights, phi, i);
                if r.is_zero() {
                    // d is the global minimum, so z is final at d
                    space.settle(z, d);
                    out.settled += 1;
                    if z == u {
                        out.accepted = false;
                        return out;
                    }
                    space.stack.push(z);
                    continue;
                }
                let nd = d + r;
                if nd < radius && space.relax(z, nd) {
                    out.insertions += 1;
                }
            }
        }
    }

    raise(phi, radius, &space.tree);
    out
}
