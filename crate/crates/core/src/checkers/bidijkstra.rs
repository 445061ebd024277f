use super::search::{for_each_arc, reduced, Direction, SearchSpace};
use super::Outcome;
use crate::graph::{EdgeId, Graph};
use crate::potential::{lower, raise};
use crate::weight::Weight;
use crate::weights::WeightAssignment;

/// Bidirectional variant: a forward search from `v` and a backward search
/// from `u` settle one node per turn, strictly alternating.
///
/// Rejects as soon as a forward label and a backward label meet with a sum
/// below `B`. Accepts once `min forward key + min backward key >= B` or a
/// queue runs dry; the forward radius `delta_v = min(forward key, B)` is then
/// raised around `v` and the remainder `B - delta_v` lowered around `u`.
pub(crate) fn bidijkstra_decide<W: Weight>(
    g: &Graph,
    w: &WeightAssignment<W>,
    phi: &mut [W],
    fwd: &mut SearchSpace<W>,
    bwd: &mut SearchSpace<W>,
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
    fwd.reset();
    bwd.reset();
    fwd.relax(v, W::zero());
    bwd.relax(u, W::zero());
    let mut out = Outcome {
        accepted: true,
        insertions: 2,
        settled: 0,
        searched: true,
    };
    let mut forward_turn = true;

    let delta_v = loop {
        let (Some(min_f), Some(min_b)) = (fwd.min_key(), bwd.min_key()) else {
            // an exhausted side has settled everything below B
            break match fwd.min_key() {
                Some(k) if k < radius => k,
                _ => radius,
            };
        };
        if min_f + min_b >= radius {
            break if min_f < radius { min_f } else { radius };
        }

        let (this, other, dir) = if forward_turn {
            (&mut *fwd, &*bwd, Direction::Forward)
        } else {
            (&mut *bwd, &*fwd, Direction::Backward)
        };
        forward_turn = !forward_turn;

        let (x, d) = this.pop_min().expect("queue checked non-empty");
        this.settle(x, d);
        out.settled += 1;

        let mut met = false;
        let mut pushed = 0;
        for_each_arc(g, x, dir, |arc, y| {
            if met || this.is_settled(y) {
                return;
            }
            let nd = d + reduced(g, weights, phi, arc.index());
            if let Some(od) = other.label(y) {
                if nd + od < radius {
                    met = true;
                    return;
                }
            }
            if nd < radius && this.relax(y, nd) {
                pushed += 1;
            }
        });
        out.insertions += pushed;
        if met {
            out.accepted = false;
            return out;
        }
    };

    let delta_u = radius - delta_v;
    raise(phi, delta_v, &fwd.tree);
    lower(phi, delta_u, &bwd.tree);
    out
}
