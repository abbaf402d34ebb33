use thiserror::Error;

use crate::config::{ConfigError, Configuration};
use crate::graph::{Graph, GraphError, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("start has {start} pebbles but goal has {goal}")]
    PebbleCountMismatch { start: usize, goal: usize },
    #[error("an instance needs at least one pebble")]
    NoPebbles,
}

/// A pebble motion instance `(G, S, D)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub graph: Graph,
    pub start: Configuration,
    pub goal: Configuration,
}

impl Instance {
    pub fn new(graph: Graph, start: Configuration, goal: Configuration) -> Result<Self, InstanceError> {
        let (ps, pd) = (start.pebble_count(), goal.pebble_count());
        if ps != pd {
            return Err(InstanceError::PebbleCountMismatch { start: ps, goal: pd });
        }
        if ps == 0 {
            return Err(InstanceError::NoPebbles);
        }
        let n = graph.n();
        Configuration::new(start.placement().to_vec(), n)?;
        Configuration::new(goal.placement().to_vec(), n)?;
        Ok(Self { graph, start, goal })
    }

    /// Builds an instance from raw vertex lists.
    pub fn from_parts(
        n: usize,
        edges: &[(Vertex, Vertex)],
        start: Vec<Vertex>,
        goal: Vec<Vertex>,
    ) -> Result<Self, InstanceError> {
        let graph = Graph::new(n, edges)?;
        let start = Configuration::new(start, n)?;
        let goal = Configuration::new(goal, n)?;
        Self::new(graph, start, goal)
    }

    pub fn p(&self) -> usize {
        self.start.pebble_count()
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    /// Applies the vertex relabeling `map[old] = new` to graph, start and goal.
    pub fn relabeled(&self, map: &[Vertex]) -> Self {
        let edges: Vec<_> = self.graph.edges().iter().map(|&(u, v)| (map[u], map[v])).collect();
        Self {
            graph: Graph::new(self.n(), &edges).expect("relabeling preserves validity"),
            start: self.start.relabeled(map),
            goal: self.goal.relabeled(map),
        }
    }
}
