use super::{Graph, Node};

/// Partition of the nodes into strongly connected components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Components {
    /// Component index of every node.
    pub component_of: Vec<usize>,
    pub count: usize,
}

impl Components {
    pub fn sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.count];
        for &c in &self.component_of {
            sizes[c] += 1;
        }
        sizes
    }

    /// Nodes of every component, ascending within each component.
    pub fn members(&self) -> Vec<Vec<Node>> {
        let mut out = vec![Vec::new(); self.count];
        for (x, &c) in self.component_of.iter().enumerate() {
            out[c].push(x);
        }
        out
    }
}

const UNVISITED: usize = usize::MAX;

/// Tarjan's algorithm with an explicit call stack.
///
/// Components are numbered in the order Tarjan completes them, i.e. in
/// reverse topological order of the condensation.
pub fn strongly_connected_components(g: &Graph) -> Components {
    let n = g.n();
    let mut index = vec![UNVISITED; n];
    let mut lowlink = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut component_of = vec![UNVISITED; n];
    let mut stack: Vec<Node> = Vec::new();
    // (node, next out-edge position)
    let mut call: Vec<(Node, usize)> = Vec::new();
    let mut next_index = 0;
    let mut count = 0;

    for root in 0..n {
        if index[root] != UNVISITED {
            continue;
        }
        index[root] = next_index;
        lowlink[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;
        call.push((root, g.out_range(root).start));

        while let Some(&mut (x, ref mut pos)) = call.last_mut() {
            let end = g.out_range(x).end;
            if *pos < end {
                let y = g.edges()[*pos].target;
                *pos += 1;
                if index[y] == UNVISITED {
                    index[y] = next_index;
                    lowlink[y] = next_index;
                    next_index += 1;
                    stack.push(y);
                    on_stack[y] = true;
                    call.push((y, g.out_range(y).start));
                } else if on_stack[y] {
                    lowlink[x] = lowlink[x].min(index[y]);
                }
                continue;
            }

            call.pop();
            if let Some(&(parent, _)) = call.last() {
                lowlink[parent] = lowlink[parent].min(lowlink[x]);
            }
            if lowlink[x] == index[x] {
                loop {
                    let y = stack.pop().expect("tarjan stack underflow");
                    on_stack[y] = false;
                    component_of[y] = count;
                    if y == x {
                        break;
                    }
                }
                count += 1;
            }
        }
    }

    Components {
        component_of,
        count,
    }
}

/// Subgraph induced by the largest SCC (ties broken by smallest member id).
/// Node ids are remapped to `0..size` in ascending order of the old ids.
pub fn largest_scc_subgraph(g: &Graph) -> Graph {
    let comps = strongly_connected_components(g);
    let members = comps.members();
    let best = members
        .iter()
        .enumerate()
        .max_by(|(_, a), (_, b)| a.len().cmp(&b.len()).then(b[0].cmp(&a[0])))
        .map(|(i, _)| i)
        .unwrap_or(0);
    match members.get(best) {
        Some(nodes) => g.induced_subgraph(nodes),
        None => g.induced_subgraph(&[]),
    }
}
