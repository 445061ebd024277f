//! Single-source shortest paths for arbitrary weights by reinserting the
//! negative edges one head node at a time, keeping a feasible potential,
//! and finishing with one Dijkstra on the reduced weights.
//!
//! Runs in `O(n_neg (m + n log n))`, where `n_neg` counts nodes with an
//! incoming negative edge.

use std::io::Write;

use crate::checkers::SearchSpace;
use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, Node};
use crate::potential::{raise, Potential};
use crate::report::write_params;
use crate::weight::Weight;
use crate::weights::WeightAssignment;

#[derive(Clone, Debug, PartialEq)]
pub enum SsspOutcome<W> {
    /// Distance per node; unreachable nodes get [`Weight::infinity`].
    Distances(Vec<W>),
    NegativeCycleFound,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SsspStats {
    /// Nodes with at least one incoming negative edge.
    pub negative_heads: usize,
    /// Heads whose reinsertion broke at least one edge and needed a search.
    pub searches: usize,
    pub insertions: u64,
    pub settled: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SsspRun<W> {
    pub outcome: SsspOutcome<W>,
    pub stats: SsspStats,
    /// Final potential, feasible for `w`; `None` on a negative cycle.
    pub potential: Option<Potential<W>>,
}

fn reduced<W: Weight>(g: &Graph, w: &[W], phi: &[W], e: usize) -> W {
    let edge = g.edges()[e];
    w[e] + phi[edge.target] - phi[edge.source]
}

/// Shortest distances from `source`, or [`SsspOutcome::NegativeCycleFound`].
///
/// Negative edges start at weight zero with the zero potential. For every
/// head `v` in ascending order, all negative edges into `v` are restored at
/// once: a Dijkstra from `v` pruned at the largest break amount `B` finds
/// every node within reduced distance below `B`; an edge `(u, v)` closes a
/// negative cycle iff `D(u)` is below its own break amount. Otherwise the
/// potential is raised by `max(0, B - D(x))`, which keeps it feasible.
pub fn sssp_general<W: Weight>(
    g: &Graph,
    w: &WeightAssignment<W>,
    source: Node,
) -> Result<SsspRun<W>> {
    let n = g.n();
    if source >= n {
        return Err(Error::InvalidArgument(format!(
            "source {source} out of range for {n} nodes"
        )));
    }
    if w.len() != g.m() {
        return Err(Error::InvalidArgument(format!(
            "{} weights for {} edges",
            w.len(),
            g.m()
        )));
    }

    let mut work: Vec<W> = w
        .values()
        .iter()
        .map(|&x| if x < W::zero() { W::zero() } else { x })
        .collect();
    let mut phi = vec![W::zero(); n];
    let mut space = SearchSpace::new(n);
    let mut stats = SsspStats::default();
    let mut negative: Vec<(EdgeId, W)> = Vec::new();

    for v in 0..n {
        negative.clear();
        negative.extend(
            g.in_edge_ids(v)
                .iter()
                .map(|&e| (e, w.get(e)))
                .filter(|&(_, x)| x < W::zero()),
        );
        if negative.is_empty() {
            continue;
        }
        stats.negative_heads += 1;

        let mut radius = W::zero();
        for &(e, x) in &negative {
            let b = -(x + phi[v] - phi[g.edge(e).source]);
            if b > radius {
                radius = b;
            }
        }
        if radius > W::zero() {
            stats.searches += 1;
            pruned_search(g, &work, &phi, &mut space, v, radius, &mut stats);
            for &(e, x) in &negative {
                let u = g.edge(e).source;
                let b = -(x + phi[v] - phi[u]);
                if space.is_settled(u) && space.label(u).is_some_and(|d| d < b) {
                    return Ok(SsspRun {
                        outcome: SsspOutcome::NegativeCycleFound,
                        stats,
                        potential: None,
                    });
                }
            }
            raise(&mut phi, radius, &space.tree);
        }
        for &(e, x) in &negative {
            work[e.index()] = x;
        }
    }

    let phi_s = phi[source];
    pruned_search(
        g,
        &work,
        &phi,
        &mut space,
        source,
        W::infinity(),
        &mut stats,
    );
    let mut dist = vec![W::infinity(); n];
    for &(x, d) in &space.tree {
        dist[x] = d - phi[x] + phi_s;
    }
    Ok(SsspRun {
        outcome: SsspOutcome::Distances(dist),
        stats,
        potential: Some(Potential::new(phi)),
    })
}

/// Dijkstra from `root` on reduced weights, settling every node with
/// distance below `radius` into `space.tree`.
fn pruned_search<W: Weight>(
    g: &Graph,
    work: &[W],
    phi: &[W],
    space: &mut SearchSpace<W>,
    root: Node,
    radius: W,
    stats: &mut SsspStats,
) {
    space.reset();
    space.relax(root, W::zero());
    stats.insertions += 1;
    while let Some((x, d)) = space.pop_min() {
        space.settle(x, d);
        stats.settled += 1;
        for i in g.out_range(x) {
            let y = g.edges()[i].target;
            if space.is_settled(y) {
                continue;
            }
            let nd = d + reduced(g, work, phi, i);
            if nd < radius && space.relax(y, nd) {
                stats.insertions += 1;
            }
        }
    }
}

/// `node,distance` rows (labels as node ids, `inf` when unreachable), or
/// the single line `NEGATIVE_CYCLE`.
pub fn write_distances_csv<W: Weight, O: Write>(
    g: &Graph,
    outcome: &SsspOutcome<W>,
    params: &[(&str, String)],
    out: &mut O,
) -> Result<()> {
    write_params(out, params)?;
    match outcome {
        SsspOutcome::NegativeCycleFound => writeln!(out, "NEGATIVE_CYCLE")?,
        SsspOutcome::Distances(d) => {
            writeln!(out, "node,distance")?;
            for (x, &dx) in d.iter().enumerate() {
                if dx == W::infinity() {
                    writeln!(out, "{},inf", g.label(x))?;
                } else {
                    writeln!(out, "{},{}", g.label(x), dx)?;
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::checkers::spfa_distances;
    use crate::graph::{build_graph, gen_cycle, gen_gnp};
    use crate::potential::is_feasible;
    use crate::weights::is_consistent_oracle;
    use rand::{Rng, SeedableRng};
    use rand_pcg::Pcg64;

    fn distances(run: SsspRun<i64>) -> Vec<i64> {
        match run.outcome {
            SsspOutcome::Distances(d) => d,
            SsspOutcome::NegativeCycleFound => panic!("unexpected negative cycle"),
        }
    }

    #[test]
    fn non_negative_weights_match_spfa() {
        let g = build_graph(&[(0, 1), (0, 2), (2, 1), (1, 3), (2, 3)]).unwrap();
        // edges sort to (0,1) (0,2) (1,3) (2,1) (2,3)
        let w = WeightAssignment::new(vec![4i64, 1, 5, 2, 8]);
        let run = sssp_general(&g, &w, 0).unwrap();
        assert_eq!(run.stats.negative_heads, 0);
        assert_eq!(distances(run), vec![0, 3, 1, 8]);
    }

    #[test]
    fn negative_triangle_is_found() {
        let g = gen_cycle(3).unwrap();
        let w = WeightAssignment::new(vec![-1i64, -1, 1]);
        let run = sssp_general(&g, &w, 0).unwrap();
        assert_eq!(run.outcome, SsspOutcome::NegativeCycleFound);
        assert!(run.potential.is_none());
    }

    #[test]
    fn zero_cycle_is_not_negative() {
        let g = gen_cycle(3).unwrap();
        let w = WeightAssignment::new(vec![-1i64, -1, 2]);
        let run = sssp_general(&g, &w, 1).unwrap();
        assert_eq!(distances(run), vec![1, 0, -1]);
    }

    #[test]
    fn unreachable_nodes_are_infinite() {
        let g = build_graph(&[(0, 1), (2, 0)]).unwrap();
        let w = WeightAssignment::new(vec![-5i64, -2]);
        let run = sssp_general(&g, &w, 0).unwrap();
        assert_eq!(distances(run), vec![0, -5, i64::MAX]);
    }

    #[test]
    fn batched_heads_use_individual_thresholds() {
        // two negative edges into node 0: (1,0) is harmless, (2,0) closes a
        // negative cycle 0 -> 2 -> 0 of weight -1
        let g = build_graph(&[(0, 1), (1, 0), (0, 2), (2, 0)]).unwrap();
        // edges sort to (0,1) (0,2) (1,0) (2,0)
        let w = WeightAssignment::new(vec![10i64, 2, -5, -3]);
        assert!(!is_consistent_oracle(&g, &w));
        assert_eq!(
            sssp_general(&g, &w, 0).unwrap().outcome,
            SsspOutcome::NegativeCycleFound
        );
        let w = WeightAssignment::new(vec![10i64, 3, -5, -3]);
        let run = sssp_general(&g, &w, 0).unwrap();
        assert!(is_feasible(&g, &w, run.potential.as_ref().unwrap()));
        assert_eq!(distances(run), vec![0, 10, 3]);
    }

    #[test]
    fn random_instances_agree_with_spfa() {
        let mut rng = Pcg64::seed_from_u64(21);
        for _ in 0..100 {
            let g = gen_gnp(25, 3.0, &mut rng).unwrap();
            let w = WeightAssignment::new((0..g.m()).map(|_| rng.random_range(-3..=10)).collect());
            let src = rng.random_range(0..g.n());
            let run = sssp_general(&g, &w, src).unwrap();
            if !is_consistent_oracle(&g, &w) {
                // also when the cycle is unreachable from src
                assert_eq!(run.outcome, SsspOutcome::NegativeCycleFound);
                continue;
            }
            assert!(is_feasible(&g, &w, run.potential.as_ref().unwrap()));
            assert_eq!(Some(distances(run)), spfa_distances(&g, &w, src));
        }
    }

    #[test]
    fn real_weights() {
        let g = gen_cycle(4).unwrap();
        let w = WeightAssignment::new(vec![-0.5f64, 0.25, 0.25, 0.5]);
        let run = sssp_general(&g, &w, 0).unwrap();
        match run.outcome {
            SsspOutcome::Distances(d) => {
                assert_eq!(d, vec![0.0, -0.5, -0.25, 0.0]);
            }
            SsspOutcome::NegativeCycleFound => panic!(),
        }
    }

    #[test]
    fn csv_output() {
        let g = build_graph(&[(0, 1), (2, 0)]).unwrap();
        let w = WeightAssignment::new(vec![-5i64, -2]);
        let run = sssp_general(&g, &w, 0).unwrap();
        let mut buf = Vec::new();
        write_distances_csv(&g, &run.outcome, &[("source", "0".into())], &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "# source=0\nnode,distance\n0,0\n1,-5\n2,inf\n"
        );
        let mut buf = Vec::new();
        write_distances_csv::<i64, _>(&g, &SsspOutcome::NegativeCycleFound, &[], &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "NEGATIVE_CYCLE\n");
    }

    #[test]
    fn bad_arguments() {
        let g = gen_cycle(3).unwrap();
        let w = WeightAssignment::new(vec![1i64, 1, 1]);
        assert!(sssp_general(&g, &w, 3).is_err());
        assert!(sssp_general(&g, &WeightAssignment::new(vec![1i64]), 0).is_err());
    }
}
