//! Directed graph topology: CSR storage, SCCs, generators and edge-list I/O.

mod csr;
mod generators;
mod io;
mod scc;

pub use csr::{build_graph, Edge, EdgeId, Graph, Node};
pub use generators::{
    gen_cycle, gen_doubly_linked_path, gen_dsf, gen_dsf_with, gen_gnp, DsfParams,
};
pub use io::{load_edge_list, read_edge_list, save_edge_list, write_edge_list};
pub use scc::{largest_scc_subgraph, strongly_connected_components, Components};
