//! Weight domains, weight assignments and the ground-truth consistency oracle.

use std::fmt;
use std::io::{BufRead, BufReader, Read, Write};
use std::ops::{Index, IndexMut};
use std::str::FromStr;

use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph};
use crate::weight::Weight;

/// The closed range `[lo, hi]`; a set of integers for discrete weight
/// types, a real interval otherwise.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WeightDomain<W> {
    lo: W,
    hi: W,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DomainKind {
    DiscreteInteger,
    ContinuousReal,
}

impl<W: Weight> WeightDomain<W> {
    /// Rejects `lo > hi` and NaN bounds.
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    pub fn new(lo: W, hi: W) -> Result<Self> {
        if !(lo <= hi) {
            return Err(Error::InvalidDomain(format!("[{lo}, {hi}] is empty")));
        }
        Ok(Self { lo, hi })
    }

    #[inline]
    pub fn lo(&self) -> W {
        self.lo
    }

    #[inline]
    pub fn hi(&self) -> W {
        self.hi
    }

    pub fn kind(&self) -> DomainKind {
        if W::DISCRETE {
            DomainKind::DiscreteInteger
        } else {
            DomainKind::ContinuousReal
        }
    }

    #[inline]
    pub fn contains(&self, x: W) -> bool {
        self.lo <= x && x <= self.hi
    }

    /// Number of values of a discrete domain; `None` for real intervals.
    pub fn cardinality(&self) -> Option<u64> {
        if !W::DISCRETE {
            return None;
        }
        (self.hi - self.lo).to_u64().map(|d| d + 1)
    }

    /// Uniform draw from the domain.
    #[inline]
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> W {
        W::sample_uniform(self.lo, self.hi, rng)
    }
}

impl<W: Weight> fmt::Display for WeightDomain<W> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.lo, self.hi)
    }
}

/// Parses `"a:b"`.
impl<W: Weight> FromStr for WeightDomain<W> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (a, b) = s
            .split_once(':')
            .ok_or_else(|| Error::InvalidDomain(format!("expected `a:b`, got `{s}`")))?;
        let parse = |t: &str| {
            t.trim()
                .parse::<W>()
                .map_err(|_| Error::InvalidDomain(format!("bad bound `{t}` in `{s}`")))
        };
        Self::new(parse(a)?, parse(b)?)
    }
}

/// Uniform random weight from `domain`.
pub fn sample_weight<W: Weight, R: Rng + ?Sized>(domain: &WeightDomain<W>, rng: &mut R) -> W {
    domain.sample(rng)
}

/// One weight per edge, indexed by [`EdgeId`].
#[derive(Clone, Debug, PartialEq)]
pub struct WeightAssignment<W>(Vec<W>);

impl<W: Weight> WeightAssignment<W> {
    pub fn new(values: Vec<W>) -> Self {
        Self(values)
    }

    pub fn constant(m: usize, value: W) -> Self {
        Self(vec![value; m])
    }

    #[inline]
    pub fn get(&self, e: EdgeId) -> W {
        self.0[e.0]
    }

    #[inline]
    pub fn set(&mut self, e: EdgeId, value: W) {
        self.0[e.0] = value;
    }

    pub fn values(&self) -> &[W] {
        &self.0
    }

    pub fn into_values(self) -> Vec<W> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn in_domain(&self, domain: &WeightDomain<W>) -> bool {
        self.0.iter().all(|&x| domain.contains(x))
    }

    pub fn mean(&self) -> f64 {
        if self.0.is_empty() {
            return 0.0;
        }
        self.0.iter().map(|x| x.as_f64()).sum::<f64>() / self.0.len() as f64
    }

    pub fn fraction_negative(&self) -> f64 {
        if self.0.is_empty() {
            return 0.0;
        }
        self.0.iter().filter(|x| x.is_negative()).count() as f64 / self.0.len() as f64
    }
}

impl<W> Index<EdgeId> for WeightAssignment<W> {
    type Output = W;
    fn index(&self, e: EdgeId) -> &W {
        &self.0[e.0]
    }
}

impl<W> IndexMut<EdgeId> for WeightAssignment<W> {
    fn index_mut(&mut self, e: EdgeId) -> &mut W {
        &mut self.0[e.0]
    }
}

/// Consistent starting points for the sampler.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum InitStrategy {
    /// Every edge gets `max(domain)`.
    Maximum,
    /// Every edge gets `0`.
    Zero,
    /// Independent uniform draws from `[0, max(domain)]`.
    UniformNonNegative,
}

impl InitStrategy {
    pub fn name(self) -> &'static str {
        match self {
            InitStrategy::Maximum => "max",
            InitStrategy::Zero => "zero",
            InitStrategy::UniformNonNegative => "uniform",
        }
    }
}

impl FromStr for InitStrategy {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "max" | "maximum" => Ok(Self::Maximum),
            "zero" => Ok(Self::Zero),
            "uniform" | "uniform-nonnegative" => Ok(Self::UniformNonNegative),
            _ => Err(Error::InvalidArgument(format!(
                "unknown init strategy `{s}`"
            ))),
        }
    }
}

impl fmt::Display for InitStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Non-negative, hence consistent, initial weights.
///
/// `Maximum` requires `max(domain) >= 0`, `Zero` requires `0` in the domain
/// and `UniformNonNegative` requires `max(domain) >= 0`. Only the
/// non-negative part `[max(0, lo), hi]` is sampled from.
pub fn initial_weights<W: Weight, R: Rng + ?Sized>(
    g: &Graph,
    domain: &WeightDomain<W>,
    strategy: InitStrategy,
    rng: &mut R,
) -> Result<WeightAssignment<W>> {
    let infeasible = || Error::InfeasibleInit {
        strategy: strategy.name(),
        lo: domain.lo().to_string(),
        hi: domain.hi().to_string(),
    };
    let m = g.m();
    match strategy {
        InitStrategy::Maximum => {
            if domain.hi().is_negative() {
                return Err(infeasible());
            }
            Ok(WeightAssignment::constant(m, domain.hi()))
        }
        InitStrategy::Zero => {
            if !domain.contains(W::zero()) {
                return Err(infeasible());
            }
            Ok(WeightAssignment::constant(m, W::zero()))
        }
        InitStrategy::UniformNonNegative => {
            if domain.hi().is_negative() {
                return Err(infeasible());
            }
            let lo = if domain.lo().is_negative() {
                W::zero()
            } else {
                domain.lo()
            };
            let hi = domain.hi();
            Ok(WeightAssignment(
                (0..m).map(|_| W::sample_uniform(lo, hi, rng)).collect(),
            ))
        }
    }
}

/// Shortest distances from a virtual source with a zero-weight edge to
/// every node, by round-based Bellman–Ford. `None` iff there is a negative
/// cycle.
pub fn super_source_distances<W: Weight>(g: &Graph, w: &WeightAssignment<W>) -> Option<Vec<W>> {
    let n = g.n();
    let mut dist = vec![W::zero(); n];
    for _round in 0..=n {
        let mut changed = false;
        for (i, e) in g.edges().iter().enumerate() {
            let cand = dist[e.source] + w.0[i];
            if cand < dist[e.target] {
                dist[e.target] = cand;
                changed = true;
            }
        }
        if !changed {
            return Some(dist);
        }
    }
    None
}

/// Ground truth: `true` iff no directed cycle has negative total weight.
///
/// Independent of any maintained potential; every fast checker is tested
/// against this.
pub fn is_consistent_oracle<W: Weight>(g: &Graph, w: &WeightAssignment<W>) -> bool {
    super_source_distances(g, w).is_some()
}

/// Writes `edge_index,source,target,weight` rows (with header). Endpoints are
/// written as node labels.
pub fn write_weights_csv<W: Weight, O: Write>(
    g: &Graph,
    w: &WeightAssignment<W>,
    out: &mut O,
) -> Result<()> {
    writeln!(out, "edge_index,source,target,weight")?;
    for (i, e) in g.edges().iter().enumerate() {
        writeln!(
            out,
            "{},{},{},{}",
            i,
            g.label(e.source),
            g.label(e.target),
            w.0[i]
        )?;
    }
    Ok(())
}

/// Reads a weight dump written by [`write_weights_csv`] for the same graph.
/// Lines starting with `#` are skipped.
pub fn read_weights_csv<W: Weight, R: Read>(g: &Graph, reader: R) -> Result<WeightAssignment<W>> {
    let mut values: Vec<Option<W>> = vec![None; g.m()];
    let mut seen_header = false;
    for (i, line) in BufReader::new(reader).lines().enumerate() {
        let line = line?;
        let lineno = i + 1;
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        if !seen_header {
            seen_header = true;
            if t.starts_with("edge_index") {
                continue;
            }
        }
        let err = |msg: String| Error::Parse { line: lineno, msg };
        let cols: Vec<&str> = t.split(',').map(str::trim).collect();
        if cols.len() != 4 {
            return Err(err(format!("expected 4 columns, got {}", cols.len())));
        }
        let idx: usize = cols[0]
            .parse()
            .map_err(|_| err(format!("bad edge index `{}`", cols[0])))?;
        let s: u64 = cols[1]
            .parse()
            .map_err(|_| err(format!("bad source `{}`", cols[1])))?;
        let d: u64 = cols[2]
            .parse()
            .map_err(|_| err(format!("bad target `{}`", cols[2])))?;
        let x: W = cols[3]
            .parse()
            .map_err(|_| err(format!("bad weight `{}`", cols[3])))?;
        if idx >= g.m() {
            return Err(err(format!(
                "edge index {idx} out of range (m = {})",
                g.m()
            )));
        }
        let e = g.edges()[idx];
        if g.label(e.source) != s || g.label(e.target) != d {
            return Err(err(format!(
                "edge {idx} is ({}, {}) in the graph but ({s}, {d}) in the file",
                g.label(e.source),
                g.label(e.target)
            )));
        }
        values[idx] = Some(x);
    }
    values
        .into_iter()
        .enumerate()
        .map(|(i, v)| v.ok_or_else(|| Error::InvalidArgument(format!("no weight for edge {i}"))))
        .collect::<Result<Vec<_>>>()
        .map(WeightAssignment)
}
