//! Parsers for the small argument languages: graph specs and step counts.

use std::fmt;
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use negw_core::graph::{gen_cycle, gen_doubly_linked_path, gen_dsf, gen_gnp, largest_scc_subgraph};
use negw_core::Graph;
use rand::Rng;

#[derive(Clone, Debug, PartialEq)]
pub enum Model {
    Gnp {
        n: usize,
        deg: f64,
    },
    Dsf {
        n: usize,
        beta: f64,
        delta_in: f64,
        delta_out: f64,
    },
    Cycle {
        n: usize,
    },
    DoublyLinkedPath {
        k: usize,
    },
}

/// `model:key=value,...[,scc]`.
#[derive(Clone, Debug, PartialEq)]
pub struct GraphSpec {
    pub model: Model,
    pub scc: bool,
    text: String,
}

impl GraphSpec {
    pub fn generate<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<Graph> {
        let g = match self.model {
            Model::Gnp { n, deg } => gen_gnp(n, deg, rng)?,
            Model::Dsf {
                n,
                beta,
                delta_in,
                delta_out,
            } => gen_dsf(n, beta, delta_in, delta_out, rng)?,
            Model::Cycle { n } => gen_cycle(n)?,
            Model::DoublyLinkedPath { k } => gen_doubly_linked_path(k)?,
        };
        Ok(if self.scc {
            largest_scc_subgraph(&g)
        } else {
            g
        })
    }
}

impl fmt::Display for GraphSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

impl FromStr for GraphSpec {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, rest) = s
            .split_once(':')
            .ok_or_else(|| anyhow!("graph spec `{s}` lacks `model:`"))?;
        let mut scc = false;
        let mut params: Vec<(&str, &str)> = Vec::new();
        for part in rest.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            if part == "scc" {
                scc = true;
                continue;
            }
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| anyhow!("expected key=value, got `{part}`"))?;
            params.push((k, v));
        }
        let get = |key: &str| params.iter().find(|(k, _)| *k == key).map(|(_, v)| *v);
        let int = |key: &str| -> Result<usize> {
            get(key)
                .ok_or_else(|| anyhow!("`{name}` needs {key}="))?
                .parse()
                .with_context(|| format!("bad value for {key}"))
        };
        let real = |key: &str, default: Option<f64>| -> Result<f64> {
            match (get(key), default) {
                (Some(v), _) => v.parse().with_context(|| format!("bad value for {key}")),
                (None, Some(d)) => Ok(d),
                (None, None) => Err(anyhow!("`{name}` needs {key}=")),
            }
        };
        let (model, allowed): (Model, &[&str]) = match name {
            "gnp" => (
                Model::Gnp {
                    n: int("n")?,
                    deg: real("deg", None)?,
                },
                &["n", "deg"],
            ),
            "dsf" => (
                Model::Dsf {
                    n: int("n")?,
                    beta: real("beta", None)?,
                    delta_in: real("delta_in", Some(1.0))?,
                    delta_out: real("delta_out", Some(1.0))?,
                },
                &["n", "beta", "delta_in", "delta_out"],
            ),
            "cycle" => (Model::Cycle { n: int("n")? }, &["n"]),
            "dpath" => (Model::DoublyLinkedPath { k: int("k")? }, &["k"]),
            _ => bail!("unknown graph model `{name}` (gnp, dsf, cycle, dpath)"),
        };
        if let Some((k, _)) = params.iter().find(|(k, _)| !allowed.contains(k)) {
            bail!("`{name}` takes no parameter `{k}`");
        }
        Ok(GraphSpec {
            model,
            scc,
            text: s.to_string(),
        })
    }
}

/// A count given absolutely (`5000`) or relative to the graph (`100m`,
/// `0.5n`).
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Count {
    Abs(u64),
    PerEdge(f64),
    PerNode(f64),
}

impl Count {
    pub fn resolve(self, n: usize, m: usize) -> u64 {
        match self {
            Count::Abs(x) => x,
            Count::PerEdge(k) => (k * m as f64).round() as u64,
            Count::PerNode(k) => (k * n as f64).round() as u64,
        }
    }
}

impl FromStr for Count {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let factor = |t: &str| -> Result<f64> {
            let k: f64 = if t.is_empty() {
                1.0
            } else {
                t.parse().with_context(|| format!("bad count `{s}`"))?
            };
            if k < 0.0 || !k.is_finite() {
                bail!("bad count `{s}`");
            }
            Ok(k)
        };
        if let Some(t) = s.strip_suffix('m') {
            return Ok(Count::PerEdge(factor(t)?));
        }
        if let Some(t) = s.strip_suffix('n') {
            return Ok(Count::PerNode(factor(t)?));
        }
        s.parse()
            .map(Count::Abs)
            .with_context(|| format!("bad count `{s}`"))
    }
}

impl fmt::Display for Count {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Count::Abs(x) => write!(f, "{x}"),
            Count::PerEdge(k) => write!(f, "{k}m"),
            Count::PerNode(k) => write!(f, "{k}n"),
        }
    }
}

/// Comma-separated counts.
pub fn parse_counts(s: &str) -> Result<Vec<Count>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(str::parse)
        .collect()
}
