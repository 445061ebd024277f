//! The sampling chain: propose a uniform edge and a uniform weight, keep the
//! change iff the weights stay free of negative cycles.

use std::collections::HashSet;
use std::io::Write;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_pcg::Pcg64;
use rayon::prelude::*;

use crate::checkers::{Checker, CheckerKind, Outcome, Proposal};
use crate::error::{Error, Result};
use crate::graph::{strongly_connected_components, EdgeId, Graph};
use crate::potential::{feasible_potential, Potential};
use crate::report::{write_params, RNG_NAME};
use crate::weight::Weight;
use crate::weights::{initial_weights, InitStrategy, WeightAssignment, WeightDomain};

/// Work and verdict of one step.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct StepStats {
    pub accepted: bool,
    /// The proposal lowered the edge weight. Only these can be rejected and
    /// only these enter the insertion means.
    pub decrease: bool,
    pub insertions: u64,
    pub settled: u64,
}

#[derive(Clone, Copy, Debug, Default)]
struct Counters {
    steps: u64,
    accepted: u64,
    accepted_decreases: u64,
    rejected: u64,
    ins_accepted: u64,
    ins_rejected: u64,
}

/// One telemetry row. Counts are cumulative since the chain was created or
/// last restarted.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Checkpoint {
    pub steps: u64,
    pub accepted: u64,
    pub acc_rate: f64,
    pub mean_weight: f64,
    pub frac_negative: f64,
    /// Mean insertions over accepted weight decreases.
    pub mean_ins_accepted: f64,
    /// Mean insertions over rejected proposals.
    pub mean_ins_rejected: f64,
    /// Wall-clock per step over the interval since the previous checkpoint.
    pub ns_per_step: f64,
}

impl Checkpoint {
    /// Equality ignoring the wall-clock column.
    pub fn same_counts(&self, other: &Checkpoint) -> bool {
        Checkpoint {
            ns_per_step: 0.0,
            ..*self
        } == Checkpoint {
            ns_per_step: 0.0,
            ..*other
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunStats {
    pub checker: CheckerKind,
    pub seed: u64,
    pub strongly_connected: bool,
    pub records: Vec<Checkpoint>,
}

impl RunStats {
    pub fn last(&self) -> Option<&Checkpoint> {
        self.records.last()
    }

    pub fn same_counts(&self, other: &RunStats) -> bool {
        self.checker == other.checker
            && self.seed == other.seed
            && self.records.len() == other.records.len()
            && self
                .records
                .iter()
                .zip(&other.records)
                .all(|(a, b)| a.same_counts(b))
    }
}

/// Step counts at which a checkpoint is recorded. The final step is always
/// included.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub enum Schedule {
    #[default]
    PowersOfTwo,
    At(Vec<u64>),
    /// Only the final step.
    End,
}

impl Schedule {
    pub fn points(&self, total: u64) -> Vec<u64> {
        let mut pts: Vec<u64> = match self {
            Schedule::PowersOfTwo => (0..64)
                .map(|i| 1u64 << i)
                .take_while(|&p| p < total)
                .collect(),
            Schedule::At(v) => v.iter().copied().filter(|&p| p < total).collect(),
            Schedule::End => Vec::new(),
        };
        pts.push(total);
        pts.sort_unstable();
        pts.dedup();
        pts
    }
}

/// Chain state: current consistent weights, the checker (with its feasible
/// potential when it keeps one) and the generator.
#[derive(Clone, Debug)]
pub struct Chain<'g, W> {
    graph: &'g Graph,
    domain: WeightDomain<W>,
    weights: WeightAssignment<W>,
    checker: Checker<W>,
    rng: Pcg64,
    counters: Counters,
}

impl<'g, W: Weight> Chain<'g, W> {
    /// Seeds the generator, then draws the initial weights from it.
    pub fn new(
        g: &'g Graph,
        domain: WeightDomain<W>,
        init: InitStrategy,
        kind: CheckerKind,
        seed: u64,
    ) -> Result<Self> {
        ensure_edges(g)?;
        let mut rng = Pcg64::seed_from_u64(seed);
        let weights = initial_weights(g, &domain, init, &mut rng)?;
        Ok(Self {
            graph: g,
            domain,
            weights,
            checker: Checker::new(kind, g),
            rng,
            counters: Counters::default(),
        })
    }

    /// Resumes from given consistent weights. Without `potential` a feasible
    /// one is computed.
    pub fn from_state(
        g: &'g Graph,
        domain: WeightDomain<W>,
        weights: WeightAssignment<W>,
        potential: Option<Potential<W>>,
        kind: CheckerKind,
        seed: u64,
    ) -> Result<Self> {
        ensure_edges(g)?;
        check_state(g, &domain, &weights)?;
        let phi = match potential {
            Some(p) => p,
            None => feasible_potential(g, &weights).ok_or(Error::NegativeCycle)?,
        };
        let checker = Checker::with_potential(kind, g, &weights, phi)?;
        Ok(Self {
            graph: g,
            domain,
            weights,
            checker,
            rng: Pcg64::seed_from_u64(seed),
            counters: Counters::default(),
        })
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn domain(&self) -> &WeightDomain<W> {
        &self.domain
    }

    pub fn weights(&self) -> &WeightAssignment<W> {
        &self.weights
    }

    pub fn into_weights(self) -> WeightAssignment<W> {
        self.weights
    }

    pub fn checker(&self) -> &Checker<W> {
        &self.checker
    }

    pub fn potential(&self) -> Option<&Potential<W>> {
        self.checker.potential()
    }

    pub fn steps(&self) -> u64 {
        self.counters.steps
    }

    pub fn accepted(&self) -> u64 {
        self.counters.accepted
    }

    pub fn rng_mut(&mut self) -> &mut Pcg64 {
        &mut self.rng
    }

    /// Replaces the weights, recomputing the potential, and clears the
    /// counters. The generator keeps its stream.
    pub fn restart(&mut self, weights: WeightAssignment<W>) -> Result<()> {
        check_state(self.graph, &self.domain, &weights)?;
        if weights.values().iter().all(|&x| x >= W::zero()) {
            self.checker.reset_potential();
        } else {
            let phi = feasible_potential(self.graph, &weights).ok_or(Error::NegativeCycle)?;
            self.checker = Checker::with_potential(self.checker.kind(), self.graph, &weights, phi)?;
        }
        self.weights = weights;
        self.counters = Counters::default();
        Ok(())
    }

    /// Draws the edge index first, then the weight.
    pub fn propose(&mut self) -> Proposal<W> {
        let edge = EdgeId(self.rng.random_range(0..self.graph.m()));
        let new_weight = self.domain.sample(&mut self.rng);
        Proposal { edge, new_weight }
    }

    pub fn step(&mut self) -> StepStats {
        let p = self.propose();
        self.step_with(p)
    }

    /// Applies a given proposal; the generator is not touched.
    pub fn step_with(&mut self, p: Proposal<W>) -> StepStats {
        let decrease = p.new_weight < self.weights.get(p.edge);
        let Outcome {
            accepted,
            insertions,
            settled,
            ..
        } = self.checker.decide(self.graph, &self.weights, p);
        let c = &mut self.counters;
        c.steps += 1;
        if accepted {
            self.weights.set(p.edge, p.new_weight);
            c.accepted += 1;
            if decrease {
                c.accepted_decreases += 1;
                c.ins_accepted += insertions;
            }
        } else {
            c.rejected += 1;
            c.ins_rejected += insertions;
        }
        StepStats {
            accepted,
            decrease,
            insertions,
            settled,
        }
    }

    /// Runs `steps` steps, recording checkpoints at the schedule's offsets
    /// from the current step.
    pub fn run(&mut self, steps: u64, schedule: &Schedule, seed: u64) -> RunStats {
        let start = self.counters.steps;
        let mut records = Vec::new();
        let mut done = 0;
        for target in schedule.points(steps) {
            let t0 = Instant::now();
            for _ in done..target {
                self.step();
            }
            let ns = t0.elapsed().as_nanos() as f64;
            let ns_per_step = if target > done {
                ns / (target - done) as f64
            } else {
                0.0
            };
            debug_assert_eq!(self.counters.steps, start + target);
            records.push(self.checkpoint(ns_per_step));
            done = target;
        }
        RunStats {
            checker: self.checker.kind(),
            seed,
            strongly_connected: strongly_connected_components(self.graph).count <= 1,
            records,
        }
    }

    fn checkpoint(&self, ns_per_step: f64) -> Checkpoint {
        let c = &self.counters;
        Checkpoint {
            steps: c.steps,
            accepted: c.accepted,
            acc_rate: ratio(c.accepted, c.steps),
            mean_weight: self.weights.mean(),
            frac_negative: self.weights.fraction_negative(),
            mean_ins_accepted: ratio(c.ins_accepted, c.accepted_decreases),
            mean_ins_rejected: ratio(c.ins_rejected, c.rejected),
            ns_per_step,
        }
    }
}

fn ratio(a: u64, b: u64) -> f64 {
    if b == 0 {
        0.0
    } else {
        a as f64 / b as f64
    }
}

fn ensure_edges(g: &Graph) -> Result<()> {
    if g.m() == 0 {
        return Err(Error::InvalidArgument("graph has no edges".into()));
    }
    Ok(())
}

fn check_state<W: Weight>(
    g: &Graph,
    domain: &WeightDomain<W>,
    weights: &WeightAssignment<W>,
) -> Result<()> {
    if weights.len() != g.m() {
        return Err(Error::InvalidArgument(format!(
            "{} weights for {} edges",
            weights.len(),
            g.m()
        )));
    }
    if !weights.in_domain(domain) {
        return Err(Error::InvalidArgument(format!(
            "weights outside domain {domain}"
        )));
    }
    Ok(())
}

/// Runs one chain from scratch. A graph that is not strongly connected is
/// accepted but flagged in the stats, since edges outside every cycle never
/// constrain anything.
pub fn run_chain<W: Weight>(
    g: &Graph,
    domain: &WeightDomain<W>,
    steps: u64,
    kind: CheckerKind,
    init: InitStrategy,
    seed: u64,
    schedule: &Schedule,
) -> Result<(WeightAssignment<W>, RunStats)> {
    let mut chain = Chain::new(g, *domain, init, kind, seed)?;
    let stats = chain.run(steps, schedule, seed);
    Ok((chain.into_weights(), stats))
}

/// Independent chains, one per seed, run on up to `threads` workers
/// (`None` uses the global pool). Output order follows `seeds` and does not
/// depend on scheduling.
#[allow(clippy::too_many_arguments)]
pub fn run_ensemble<W: Weight>(
    g: &Graph,
    domain: &WeightDomain<W>,
    steps: u64,
    kind: CheckerKind,
    init: InitStrategy,
    seeds: &[u64],
    schedule: &Schedule,
    threads: Option<usize>,
) -> Result<Vec<(WeightAssignment<W>, RunStats)>> {
    let mut seen = HashSet::new();
    if let Some(dup) = seeds.iter().find(|s| !seen.insert(**s)) {
        return Err(Error::InvalidArgument(format!("duplicate seed {dup}")));
    }
    let job = || {
        seeds
            .par_iter()
            .map(|&s| run_chain(g, domain, steps, kind, init, s, schedule))
            .collect::<Result<Vec<_>>>()
    };
    match threads {
        None => job(),
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| Error::InvalidArgument(e.to_string()))?
            .install(job),
    }
}

pub const STATS_HEADER: &str =
    "steps,accepted,acc_rate,mean_weight,frac_negative,mean_ins_accepted,mean_ins_rejected,ns_per_step";

/// Writes the parameter lines (generator, seed, checker, then `extra`),
/// the header and one row per checkpoint.
pub fn write_stats_csv<O: Write>(
    stats: &RunStats,
    extra: &[(&str, String)],
    out: &mut O,
) -> Result<()> {
    write_params(
        out,
        &[
            ("rng", RNG_NAME.to_string()),
            ("seed", stats.seed.to_string()),
            ("checker", stats.checker.to_string()),
        ],
    )?;
    write_params(out, extra)?;
    writeln!(out, "{STATS_HEADER}")?;
    for r in &stats.records {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{:.1}",
            r.steps,
            r.accepted,
            r.acc_rate,
            r.mean_weight,
            r.frac_negative,
            r.mean_ins_accepted,
            r.mean_ins_rejected,
            r.ns_per_step
        )?;
    }
    Ok(())
}
