//! Random and deterministic graph generators.
//!
//! All generators are deterministic functions of their parameters and the
//! state of the supplied RNG.

use rand::Rng;

use super::{Graph, Node};
use crate::error::{Error, Result};

/// Gilbert's G(n, p) digraph with `p = avg_deg / n`.
///
/// Every ordered pair `(u, v)` with `u != v` is present independently.
/// Runs in time proportional to the output by skipping geometrically
/// distributed gaps over the `n (n - 1)` candidate pairs.
pub fn gen_gnp<R: Rng + ?Sized>(n: usize, avg_deg: f64, rng: &mut R) -> Result<Graph> {
    if n < 2 || !(avg_deg > 0.0 && avg_deg < n as f64) {
        return Err(Error::InvalidArgument(format!(
            "gnp needs n >= 2 and 0 < avg_deg < n (got n={n}, avg_deg={avg_deg})"
        )));
    }
    let p = avg_deg / n as f64;
    let pairs = n as u64 * (n as u64 - 1);
    let log_q = (1.0 - p).ln();
    let mut edges = Vec::with_capacity((pairs as f64 * p * 1.1) as usize + 16);

    let mut k: u64 = 0;
    loop {
        let u: f64 = rng.random();
        // number of failures before the next success
        let skip = ((1.0 - u).ln() / log_q).floor();
        if !skip.is_finite() || skip >= (pairs - k) as f64 {
            break;
        }
        k += skip as u64;
        let source = (k / (n as u64 - 1)) as Node;
        let r = (k % (n as u64 - 1)) as Node;
        let target = if r < source { r } else { r + 1 };
        edges.push((source, target));
        k += 1;
        if k >= pairs {
            break;
        }
    }
    Graph::from_edges(n, edges)
}

/// Parameters of the directed scale-free model of Bollobás, Borgs, Chayes
/// and Riordan.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DsfParams {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub delta_in: f64,
    pub delta_out: f64,
}

impl DsfParams {
    /// `alpha = gamma = (1 - beta) / 2` with the given offsets.
    pub fn symmetric(beta: f64, delta_in: f64, delta_out: f64) -> Self {
        Self {
            alpha: (1.0 - beta) / 2.0,
            beta,
            gamma: (1.0 - beta) / 2.0,
            delta_in,
            delta_out,
        }
    }
}

/// Directed preferential-attachment graph grown from a 3-cycle until it has
/// `n` nodes. Multi-edges and self-loops are dropped afterwards.
pub fn gen_dsf<R: Rng + ?Sized>(
    n: usize,
    beta: f64,
    delta_in: f64,
    delta_out: f64,
    rng: &mut R,
) -> Result<Graph> {
    gen_dsf_with(n, DsfParams::symmetric(beta, delta_in, delta_out), rng)
}

pub fn gen_dsf_with<R: Rng + ?Sized>(n: usize, params: DsfParams, rng: &mut R) -> Result<Graph> {
    let DsfParams {
        alpha,
        beta,
        gamma,
        delta_in,
        delta_out,
    } = params;
    if n < 3
        || !(beta > 0.0 && beta < 1.0)
        || alpha < 0.0
        || gamma < 0.0
        || ((alpha + beta + gamma) - 1.0).abs() > 1e-9
        || alpha + gamma <= 0.0
        || delta_in < 0.0
        || delta_out < 0.0
    {
        return Err(Error::InvalidArgument(format!(
            "dsf needs n >= 3, 0 < beta < 1 and alpha + beta + gamma = 1 (got {params:?}, n={n})"
        )));
    }

    let mut sources: Vec<Node> = vec![0, 1, 2];
    let mut targets: Vec<Node> = vec![1, 2, 0];
    let mut nodes = 3usize;

    // degree-plus-offset preferential choice among the current nodes
    let pick = |ends: &[Node], delta: f64, nodes: usize, rng: &mut R| -> Node {
        let total = ends.len() as f64 + delta * nodes as f64;
        let r = rng.random::<f64>() * total;
        if r < ends.len() as f64 {
            ends[rng.random_range(0..ends.len())]
        } else {
            rng.random_range(0..nodes)
        }
    };

    while nodes < n {
        let r: f64 = rng.random();
        let (s, t) = if r < alpha {
            let t = pick(&targets, delta_in, nodes, rng);
            nodes += 1;
            (nodes - 1, t)
        } else if r < alpha + beta {
            let s = pick(&sources, delta_out, nodes, rng);
            let t = pick(&targets, delta_in, nodes, rng);
            (s, t)
        } else {
            let s = pick(&sources, delta_out, nodes, rng);
            nodes += 1;
            (s, nodes - 1)
        };
        sources.push(s);
        targets.push(t);
    }

    Graph::from_edges(n, sources.into_iter().zip(targets))
}

/// The directed `n`-cycle `0 -> 1 -> ... -> n-1 -> 0`.
pub fn gen_cycle(n: usize) -> Result<Graph> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "cycle needs n >= 2 (got {n})"
        )));
    }
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
}

/// Path on `k + 1` nodes with an edge in both directions between neighbours.
pub fn gen_doubly_linked_path(k: usize) -> Result<Graph> {
    if k < 1 {
        return Err(Error::InvalidArgument(
            "doubly-linked path needs k >= 1".into(),
        ));
    }
    Graph::from_edges(k + 1, (0..k).flat_map(|i| [(i, i + 1), (i + 1, i)]))
}
