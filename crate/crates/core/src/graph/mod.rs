//! Simple undirected graphs on `{0..n-1}` and the structural predicates the
//! connectivity predictions consume.

mod canon;
mod connectivity;
mod io;
mod named;
mod structure;

pub use canon::{
    canonical_form, connected_graphs, enumerate_graphs, is_isomorphic, CanonicalForm,
    MAX_CANONICAL_ORDER,
};
pub use connectivity::{
    bridges, find_nontrivial_k_bridge, is_connected, local_connectivity, vertex_connectivity,
    BridgePath,
};
pub use io::{format_edge_list, parse_edge_list, parse_graph6, to_graph6};
pub use named::{build_named, NamedGraphSpec};
pub use structure::{
    is_bipartite, is_cycle_graph, shortest_cycle_through_edge, shortest_odd_cycle,
    shortest_path_between_sets, Bipartiteness,
};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph must have at least one vertex")]
    Empty,
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("vertex {vertex} out of range for a graph of order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("edge {0}-{1} is not in the graph")]
    MissingEdge(usize, usize),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("invalid graph parameters: {0}")]
    InvalidParameter(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// Simple undirected graph with sorted adjacency lists.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    size: usize,
}

impl Graph {
    /// Edgeless graph of order `n`.
    ///
    /// Panics if `n == 0`; use [`Graph::from_edges`] for fallible construction.
    pub fn empty(n: usize) -> Self {
        assert!(n >= 1, "graph order must be at least 1");
        Graph {
            adj: vec![Vec::new(); n],
            size: 0,
        }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    /// Number of edges.
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.order() && v < self.order() && self.adj[u].binary_search(&v).is_ok()
    }

    fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v >= self.order() {
            Err(GraphError::VertexOutOfRange {
                vertex: v,
                order: self.order(),
            })
        } else {
            Ok(())
        }
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        match self.adj[u].binary_search(&v) {
            Ok(_) => Err(GraphError::DuplicateEdge(u.min(v), u.max(v))),
            Err(i) => {
                self.adj[u].insert(i, v);
                let j = self.adj[v].binary_search(&u).unwrap_err();
                self.adj[v].insert(j, u);
                self.size += 1;
                Ok(())
            }
        }
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        if !self.has_edge(u, v) {
            return Err(GraphError::MissingEdge(u, v));
        }
        let i = self.adj[u].binary_search(&v).unwrap();
        self.adj[u].remove(i);
        let j = self.adj[v].binary_search(&u).unwrap();
        self.adj[v].remove(j);
        self.size -= 1;
        Ok(())
    }

    /// Copy of the graph with `{u, v}` added. Errors if it is already present.
    pub fn with_edge(&self, u: usize, v: usize) -> Result<Graph, GraphError> {
        let mut g = self.clone();
        g.add_edge(u, v)?;
        Ok(g)
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Non-edges `(u, v)` with `u < v`.
    pub fn non_edges(&self) -> Vec<(usize, usize)> {
        let n = self.order();
        let mut out = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if !self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn is_complete(&self) -> bool {
        let n = self.order();
        self.size == n * (n - 1) / 2
    }

    /// Replaces edge `{u, v}` by a path through `count` fresh vertices.
    /// The new vertices are numbered from `order()` upwards, starting at the `u` end.
    pub fn subdivide_edge(&self, u: usize, v: usize, count: usize) -> Result<Graph, GraphError> {
        let mut g = self.clone();
        g.remove_edge(u, v)?;
        let base = g.order();
        g.adj.extend(std::iter::repeat_with(Vec::new).take(count));
        let mut prev = u;
        for i in 0..count {
            g.add_edge(prev, base + i)?;
            prev = base + i;
        }
        g.add_edge(prev, v)?;
        Ok(g)
    }

    /// Disjoint union; vertices of `other` are shifted by `self.order()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.order();
        let mut g = self.clone();
        g.adj
            .extend(other.adj.iter().map(|ns| ns.iter().map(|&v| v + shift).collect()));
        g.size += other.size;
        g
    }

    /// Graph obtained by relabeling vertex `v` to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph, GraphError> {
        if perm.len() != self.order() {
            return Err(GraphError::InvalidParameter(format!(
                "relabeling has length {}, graph has order {}",
                perm.len(),
                self.order()
            )));
        }
        Graph::from_edges(self.order(), self.edges().map(|(u, v)| (perm[u], perm[v])))
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.order())?;
        for (i, (u, v)) in self.edges().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{u}-{v}")?;
        }
        write!(f, "])")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_loops_duplicates_and_range() {
        assert_eq!(
            Graph::from_edges(3, [(1, 1)]).unwrap_err(),
            GraphError::SelfLoop(1)
        );
        assert_eq!(
            Graph::from_edges(3, [(0, 1), (1, 0)]).unwrap_err(),
            GraphError::DuplicateEdge(0, 1)
        );
        assert!(matches!(
            Graph::from_edges(3, [(0, 3)]),
            Err(GraphError::VertexOutOfRange { vertex: 3, order: 3 })
        ));
        assert_eq!(Graph::from_edges(0, []).unwrap_err(), GraphError::Empty);
    }

    #[test]
    fn handshake() {
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4)]).unwrap();
        assert_eq!(g.degrees().iter().sum::<usize>(), 2 * g.size());
    }

    #[test]
    fn subdivision_adds_path() {
        let g = Graph::from_edges(2, [(0, 1)]).unwrap();
        let h = g.subdivide_edge(0, 1, 2).unwrap();
        assert_eq!(h.order(), 4);
        assert_eq!(h.edges().collect::<Vec<_>>(), vec![(0, 2), (1, 3), (2, 3)]);
    }
}
