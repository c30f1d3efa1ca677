//! Strongly connected components over adjacency lists.

use alloc::vec;
use alloc::vec::Vec;

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};

/// Components of a directed graph, in topological order of the condensation
/// (a component only has edges to components that come after it). Members
/// of each component are sorted ascending.
#[derive(Clone, Debug)]
pub struct Components {
    pub members: Vec<Vec<usize>>,
    /// Component index of each node.
    pub of: Vec<usize>,
}

impl Components {
    pub fn compute<I>(nodes: usize, mut succ: impl FnMut(usize) -> I) -> Self
    where
        I: IntoIterator<Item = usize>,
    {
        let mut g: DiGraph<(), ()> = DiGraph::with_capacity(nodes, nodes);
        for _ in 0..nodes {
            g.add_node(());
        }
        for p in 0..nodes {
            for q in succ(p) {
                g.add_edge(NodeIndex::new(p), NodeIndex::new(q), ());
            }
        }
        // tarjan_scc yields reverse topological order.
        let mut members: Vec<Vec<usize>> = tarjan_scc(&g)
            .into_iter()
            .map(|c| {
                let mut v: Vec<usize> = c.into_iter().map(NodeIndex::index).collect();
                v.sort_unstable();
                v
            })
            .collect();
        members.reverse();
        let mut of = vec![0; nodes];
        for (ci, c) in members.iter().enumerate() {
            for &v in c {
                of[v] = ci;
            }
        }
        Components { members, of }
    }
}
