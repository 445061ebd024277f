use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("empty graph")]
    EmptyGraph,

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("invalid weight domain: {0}")]
    InvalidDomain(String),

    #[error("initial weight strategy `{strategy}` is infeasible for domain [{lo}, {hi}]")]
    InfeasibleInit {
        strategy: &'static str,
        lo: String,
        hi: String,
    },

    #[error("potential is infeasible on edge {edge} ({source_node} -> {target_node})")]
    InfeasiblePotential {
        edge: usize,
        source_node: usize,
        target_node: usize,
    },

    /// A potential repair was requested although the search found the tail
    /// of the updated edge within the break amount.
    #[error("repair requested for an update that closes a negative cycle")]
    NegativeCycle,

    #[error("arithmetic overflow: {0}")]
    Overflow(&'static str),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
