use thiserror::Error;

use super::{Graph, TeccDecomposition, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeKind {
    /// A single graph vertex outside every TECC.
    Ordinary(Vertex),
    /// A contracted TECC; the payload is the TECC index.
    Composite(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SkeletonError {
    #[error("contracted graph is not a tree")]
    NotATree,
}

/// The tree obtained by contracting every TECC into a single node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkeletonTree {
    pub nodes: Vec<NodeKind>,
    /// Vertex capacity of each node: 1 for ordinary, `|TECC|` for composite.
    pub capacity: Vec<usize>,
    pub adjacency: Vec<Vec<usize>>,
    /// Graph vertex to skeleton node.
    pub project: Vec<usize>,
}

impl SkeletonTree {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn is_composite(&self, node: usize) -> bool {
        matches!(self.nodes[node], NodeKind::Composite(_))
    }

    /// Ordinary node of degree at least three.
    pub fn is_fork(&self, node: usize) -> bool {
        !self.is_composite(node) && self.adjacency[node].len() >= 3
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Node path from `a` to `b` inclusive.
    pub fn path(&self, a: usize, b: usize) -> Vec<usize> {
        let mut parent = vec![usize::MAX; self.len()];
        parent[a] = a;
        let mut stack = vec![a];
        while let Some(u) = stack.pop() {
            if u == b {
                break;
            }
            for &w in &self.adjacency[u] {
                if parent[w] == usize::MAX {
                    parent[w] = u;
                    stack.push(w);
                }
            }
        }
        let mut path = vec![b];
        let mut cur = b;
        while cur != a {
            cur = parent[cur];
            path.push(cur);
        }
        path.reverse();
        path
    }
}

/// Contracts each TECC of `g` to a composite node. Nodes are ordered by
/// their smallest graph vertex.
pub fn skeleton_tree(g: &Graph, d: &TeccDecomposition) -> Result<SkeletonTree, SkeletonError> {
    let n = g.n();
    let mut project = vec![usize::MAX; n];
    let mut nodes = Vec::new();
    let mut capacity = Vec::new();
    for v in 0..n {
        if project[v] != usize::MAX {
            continue;
        }
        let id = nodes.len();
        match d.tecc_of[v] {
            Some(t) => {
                for &w in &d.teccs[t] {
                    project[w] = id;
                }
                nodes.push(NodeKind::Composite(t));
                capacity.push(d.teccs[t].len());
            }
            None => {
                project[v] = id;
                nodes.push(NodeKind::Ordinary(v));
                capacity.push(1);
            }
        }
    }
    let mut adjacency = vec![Vec::new(); nodes.len()];
    for &(u, v) in g.edges() {
        let (a, b) = (project[u], project[v]);
        if a != b {
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
    }
    for list in &mut adjacency {
        list.sort_unstable();
        let before = list.len();
        list.dedup();
        if list.len() != before {
            return Err(SkeletonError::NotATree);
        }
    }
    let tree = SkeletonTree {
        nodes,
        capacity,
        adjacency,
        project,
    };
    if tree.edge_count() + 1 != tree.len() {
        return Err(SkeletonError::NotATree);
    }
    Ok(tree)
}
