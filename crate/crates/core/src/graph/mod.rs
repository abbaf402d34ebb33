//! Simple undirected connected graphs and the structural decompositions
//! used by the feasibility test and the planner.

mod cactus;
mod cycles;
mod skeleton;
mod tecc;
mod theta;

pub use cactus::{analyze_cactus, CactusInfo};
pub use cycles::{enumerate_disjoint_cycle_sets, signed_generator_count, simple_cycles, CycleSetError};
pub use skeleton::{skeleton_tree, NodeKind, SkeletonError, SkeletonTree};
pub use tecc::{bridges, tecc_decomposition, TeccDecomposition};
pub use theta::{find_theta, ThetaError, ThetaSubgraph};

use std::collections::VecDeque;

use thiserror::Error;

pub type Vertex = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop on vertex {0}")]
    SelfLoop(Vertex),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(Vertex, Vertex),
    #[error("vertex {vertex} out of range for a graph with {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("graph is not connected")]
    Disconnected,
    #[error("graph has no vertices")]
    Empty,
}

/// A simple, connected, undirected graph on vertices `0..n`.
///
/// Neighbor lists are sorted ascending and edges are stored once as `(u, v)`
/// with `u < v`, sorted lexicographically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adjacency: Vec<Vec<Vertex>>,
    edges: Vec<(Vertex, Vertex)>,
}

impl Graph {
    /// Builds and validates a graph. Connectivity is checked eagerly.
    pub fn new(n: usize, edge_list: &[(Vertex, Vertex)]) -> Result<Self, GraphError> {
        let g = Self::new_unchecked_connectivity(n, edge_list)?;
        if !g.is_connected() {
            return Err(GraphError::Disconnected);
        }
        Ok(g)
    }

    /// Like [`Graph::new`] but allows disconnected graphs. Used for
    /// subgraphs that are only ever inspected structurally.
    pub(crate) fn new_unchecked_connectivity(n: usize, edge_list: &[(Vertex, Vertex)]) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        let mut adjacency = vec![Vec::new(); n];
        let mut edges = Vec::with_capacity(edge_list.len());
        for &(u, v) in edge_list {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            let e = (u.min(v), u.max(v));
            edges.push(e);
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        edges.sort_unstable();
        if let Some(w) = edges.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(w[0].0, w[0].1));
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Self { n, adjacency, edges })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n && v < self.n && self.adjacency[u].binary_search(&v).is_ok()
    }

    pub fn is_connected(&self) -> bool {
        self.bfs_distances(0).iter().all(|d| d.is_some())
    }

    /// A connected graph with `n - 1` edges.
    pub fn is_tree(&self) -> bool {
        self.edges.len() + 1 == self.n
    }

    /// A connected graph in which every vertex has degree two.
    pub fn is_cycle(&self) -> bool {
        self.n >= 3 && self.adjacency.iter().all(|a| a.len() == 2)
    }

    /// Breadth-first distances from `source`; `None` for unreachable vertices.
    pub fn bfs_distances(&self, source: Vertex) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for &w in &self.adjacency[u] {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Shortest path from `from` to `to` through vertices accepted by
    /// `allowed` (endpoints are always allowed). Ties break toward smaller
    /// vertex indices.
    pub fn shortest_path_filtered(
        &self,
        from: Vertex,
        to: Vertex,
        allowed: impl Fn(Vertex) -> bool,
    ) -> Option<Vec<Vertex>> {
        if from == to {
            return Some(vec![from]);
        }
        let mut parent = vec![usize::MAX; self.n];
        parent[from] = from;
        let mut queue = VecDeque::from([from]);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adjacency[u] {
                if parent[w] != usize::MAX || (w != to && !allowed(w)) {
                    continue;
                }
                parent[w] = u;
                if w == to {
                    let mut path = vec![to];
                    let mut cur = to;
                    while cur != from {
                        cur = parent[cur];
                        path.push(cur);
                    }
                    path.reverse();
                    return Some(path);
                }
                queue.push_back(w);
            }
        }
        None
    }

    pub fn shortest_path(&self, from: Vertex, to: Vertex) -> Option<Vec<Vertex>> {
        self.shortest_path_filtered(from, to, |_| true)
    }

    /// BFS spanning tree rooted at `root`, as a graph on the same vertex set.
    pub fn bfs_spanning_tree(&self, root: Vertex) -> Graph {
        let mut seen = vec![false; self.n];
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        let mut tree_edges = Vec::with_capacity(self.n.saturating_sub(1));
        while let Some(u) = queue.pop_front() {
            for &w in &self.adjacency[u] {
                if !seen[w] {
                    seen[w] = true;
                    tree_edges.push((u, w));
                    queue.push_back(w);
                }
            }
        }
        Graph::new_unchecked_connectivity(self.n, &tree_edges).expect("spanning tree of a valid graph is valid")
    }

    /// Whether `cycle` is a simple cycle of this graph (length at least 3).
    pub fn is_graph_cycle(&self, cycle: &[Vertex]) -> bool {
        let k = cycle.len();
        if k < 3 || cycle.iter().any(|&v| v >= self.n) {
            return false;
        }
        let mut seen = vec![false; self.n];
        for &v in cycle {
            if std::mem::replace(&mut seen[v], true) {
                return false;
            }
        }
        (0..k).all(|i| self.has_edge(cycle[i], cycle[(i + 1) % k]))
    }
}

/// Rotates a cycle so that it starts at its smallest vertex, keeping its
/// direction.
pub fn normalize_cycle(cycle: &[Vertex]) -> Vec<Vertex> {
    let Some((start, _)) = cycle.iter().enumerate().min_by_key(|&(_, v)| *v) else {
        return Vec::new();
    };
    cycle[start..].iter().chain(&cycle[..start]).copied().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builds_triangle() {
        let g = Graph::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(g.edges(), &[(0, 1), (0, 2), (1, 2)]);
        assert_eq!(g.neighbors(2), &[0, 1]);
        assert!(g.is_cycle());
        assert!(!g.is_tree());
    }

    #[test]
    fn rejects_malformed_input() {
        assert_eq!(
            Graph::new(3, &[(0, 1), (1, 2), (0, 2), (0, 0)]),
            Err(GraphError::SelfLoop(0))
        );
        assert_eq!(Graph::new(4, &[(0, 1), (2, 3)]), Err(GraphError::Disconnected));
        assert_eq!(
            Graph::new(3, &[(0, 1), (1, 0), (1, 2)]),
            Err(GraphError::DuplicateEdge(0, 1))
        );
        assert_eq!(
            Graph::new(2, &[(0, 2)]),
            Err(GraphError::VertexOutOfRange { vertex: 2, n: 2 })
        );
    }

    #[test]
    fn shortest_path_prefers_small_indices() {
        // square 0-1-3-2-0: both routes from 0 to 3 have length 2
        let g = Graph::new(4, &[(0, 1), (1, 3), (3, 2), (2, 0)]).unwrap();
        assert_eq!(g.shortest_path(0, 3), Some(vec![0, 1, 3]));
        assert_eq!(g.shortest_path_filtered(0, 3, |v| v != 1), Some(vec![0, 2, 3]));
    }

    #[test]
    fn cycle_normalization() {
        assert_eq!(normalize_cycle(&[3, 1, 2]), vec![1, 2, 3]);
        assert_eq!(normalize_cycle(&[2, 0, 4, 1]), vec![0, 4, 1, 2]);
    }
}
