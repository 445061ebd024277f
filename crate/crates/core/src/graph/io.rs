//! Plain-text edge lists: one `u v` pair per line, `#` starts a comment line.
//!
//! A comment of the form `# nodes <n>` pins the node count; ids are then
//! taken verbatim. Without it, external ids are compacted to `0..n` in
//! ascending order and kept as node labels.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use super::{Graph, Node};
use crate::error::{Error, Result};

pub fn load_edge_list(path: impl AsRef<Path>) -> Result<Graph> {
    read_edge_list(File::open(path)?)
}

pub fn save_edge_list(g: &Graph, path: impl AsRef<Path>) -> Result<()> {
    let mut out = BufWriter::new(File::create(path)?);
    write_edge_list(g, &mut out)?;
    out.flush()?;
    Ok(())
}

pub fn read_edge_list<R: Read>(reader: R) -> Result<Graph> {
    let mut pinned: Option<usize> = None;
    let mut raw: Vec<(u64, u64)> = Vec::new();

    for (i, line) in BufReader::new(reader).lines().enumerate() {
        let line = line?;
        let lineno = i + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(comment) = trimmed.strip_prefix('#') {
            let mut words = comment.split_whitespace();
            if words.next() == Some("nodes") {
                let n = words
                    .next()
                    .and_then(|w| w.parse().ok())
                    .ok_or_else(|| Error::Parse {
                        line: lineno,
                        msg: "malformed `# nodes` header".into(),
                    })?;
                pinned = Some(n);
            }
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        let (Some(a), Some(b), None) = (tokens.next(), tokens.next(), tokens.next()) else {
            return Err(Error::Parse {
                line: lineno,
                msg: format!("expected two node ids, got `{trimmed}`"),
            });
        };
        let parse = |tok: &str| {
            tok.parse::<u64>().map_err(|e| Error::Parse {
                line: lineno,
                msg: format!("bad node id `{tok}`: {e}"),
            })
        };
        raw.push((parse(a)?, parse(b)?));
    }

    if let Some(n) = pinned {
        let edges = raw.into_iter().map(|(u, v)| (u as Node, v as Node));
        return Graph::from_edges(n, edges);
    }
    if raw.is_empty() {
        return Err(Error::EmptyGraph);
    }

    let mut labels: Vec<u64> = raw.iter().flat_map(|&(u, v)| [u, v]).collect();
    labels.sort_unstable();
    labels.dedup();
    let id = |x: u64| labels.binary_search(&x).expect("label present");
    let edges: Vec<_> = raw.iter().map(|&(u, v)| (id(u), id(v))).collect();
    let identity = labels.iter().enumerate().all(|(i, &l)| i as u64 == l);
    let g = Graph::from_edges(labels.len(), edges)?;
    Ok(if identity { g } else { g.with_labels(labels) })
}

/// Writes internal node ids with a `# nodes` header so isolated nodes survive.
pub fn write_edge_list<W: Write>(g: &Graph, out: &mut W) -> Result<()> {
    writeln!(out, "# nodes {}", g.n())?;
    for e in g.edges() {
        writeln!(out, "{} {}", e.source, e.target)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::gen_cycle;

    #[test]
    fn reads_simple_file() {
        let g = read_edge_list("0 1\n1 0\n".as_bytes()).unwrap();
        assert_eq!((g.n(), g.m()), (2, 2));
        assert!(g.labels().is_none());
    }

    #[test]
    fn skips_comments() {
        let g = read_edge_list("# comment\n0 1\n\n# another\n1 0\n".as_bytes()).unwrap();
        assert_eq!(g.m(), 2);
    }

    #[test]
    fn compacts_sparse_ids() {
        let g = read_edge_list("10 30\n30 10\n30 20\n".as_bytes()).unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.labels(), Some(&[10u64, 20, 30][..]));
        assert_eq!(g.edge_id(2, 1).map(|e| g.edge(e).target), Some(1));
    }

    #[test]
    fn malformed_line_reports_line_number() {
        match read_edge_list("0 1\n1\n".as_bytes()) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
        match read_edge_list("0 1\n1 x\n".as_bytes()) {
            Err(Error::Parse { line, msg }) => {
                assert_eq!(line, 2);
                assert!(msg.contains("bad node id"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn round_trip_preserves_csr() {
        let g = gen_cycle(5).unwrap();
        let mut buf = Vec::new();
        write_edge_list(&g, &mut buf).unwrap();
        let h = read_edge_list(buf.as_slice()).unwrap();
        assert_eq!(g, h);
    }

    #[test]
    fn round_trip_with_isolated_node() {
        let g = Graph::from_edges(4, [(0, 1), (1, 0), (3, 0)]).unwrap();
        let mut buf = Vec::new();
        write_edge_list(&g, &mut buf).unwrap();
        assert_eq!(read_edge_list(buf.as_slice()).unwrap(), g);
    }
}
