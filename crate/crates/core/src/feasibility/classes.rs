use std::collections::VecDeque;

use crate::config::{Configuration, Pebble};
use crate::graph::{Graph, NodeKind, SkeletonTree, TeccDecomposition, Vertex};

/// Partition of pebbles into classes of mutually exchangeable pebbles,
/// relative to one configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceClasses {
    pub class_of_pebble: Vec<usize>,
    pub class_of_vertex: Vec<Option<usize>>,
}

impl EquivalenceClasses {
    /// Builds the partition induced by `uf` on the pebbles of `s`. Class ids
    /// are numbered in order of their smallest pebble.
    pub(crate) fn from_union_find(uf: &mut UnionFind, s: &Configuration, n: usize) -> Self {
        let p = s.pebble_count();
        let mut id = vec![usize::MAX; p];
        let mut next = 0;
        let mut class_of_pebble = vec![0; p];
        for (i, slot) in class_of_pebble.iter_mut().enumerate() {
            let r = uf.find(i);
            if id[r] == usize::MAX {
                id[r] = next;
                next += 1;
            }
            *slot = id[r];
        }
        let mut class_of_vertex = vec![None; n];
        for (i, &v) in s.placement().iter().enumerate() {
            class_of_vertex[v] = Some(class_of_pebble[i]);
        }
        Self {
            class_of_pebble,
            class_of_vertex,
        }
    }

    pub fn class_count(&self) -> usize {
        self.class_of_pebble.iter().max().map_or(0, |m| m + 1)
    }

    pub fn same_class(&self, a: Pebble, b: Pebble) -> bool {
        self.class_of_pebble[a] == self.class_of_pebble[b]
    }

    /// Pebbles of each class, sorted.
    pub fn members(&self) -> Vec<Vec<Pebble>> {
        let mut out = vec![Vec::new(); self.class_count()];
        for (i, &c) in self.class_of_pebble.iter().enumerate() {
            out[c].push(i);
        }
        out
    }

    /// Whether `goal` (on the same vertex set) keeps every pebble inside the
    /// class of the vertex it started on.
    pub fn admits(&self, goal: &Configuration) -> bool {
        goal.placement()
            .iter()
            .zip(&self.class_of_pebble)
            .all(|(&v, &c)| self.class_of_vertex[v] == Some(c))
    }
}

#[derive(Debug, Clone)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Classes for a configuration with exactly one empty vertex on a graph
/// that has at least one TECC.
///
/// For each TECC `H`, imagine sliding the hole into `H` along the unique
/// skeleton route. The pebbles then sitting on `H` or next to it can be
/// permuted arbitrarily; they are the pebbles on the closed neighborhood of
/// `H` now, minus the one the hole displaced on its last step before
/// entering `H`. Classes are unions of these groups; everything else is a
/// singleton.
pub fn classes_one_empty(
    g: &Graph,
    tecc: &TeccDecomposition,
    skeleton: &SkeletonTree,
    s: &Configuration,
) -> EquivalenceClasses {
    let n = g.n();
    let occupant = s.occupants(n);
    let hole = (0..n)
        .find(|&v| occupant[v].is_none())
        .expect("exactly one empty vertex");
    let root = skeleton.project[hole];
    let mut parent = vec![usize::MAX; skeleton.len()];
    parent[root] = root;
    let mut queue = VecDeque::from([root]);
    while let Some(x) = queue.pop_front() {
        for &y in &skeleton.adjacency[x] {
            if parent[y] == usize::MAX {
                parent[y] = x;
                queue.push_back(y);
            }
        }
    }

    let mut uf = UnionFind::new(s.pebble_count());
    for (node, kind) in skeleton.nodes.iter().enumerate() {
        let NodeKind::Composite(t) = *kind else {
            continue;
        };
        let members = &tecc.teccs[t];
        // the vertex the hole passes just before entering this TECC
        let entry_pred = (node != root).then(|| {
            let via = parent[node];
            members
                .iter()
                .flat_map(|&a| g.neighbors(a))
                .copied()
                .find(|&b| skeleton.project[b] == via)
                .expect("skeleton neighbors share an edge")
        });
        let mut group: Vec<Pebble> = Vec::new();
        let mut push = |v: Vertex| {
            if Some(v) != entry_pred {
                if let Some(i) = occupant[v] {
                    group.push(i);
                }
            }
        };
        for &a in members {
            push(a);
            for &b in g.neighbors(a) {
                if tecc.tecc_of[b] != Some(t) {
                    push(b);
                }
            }
        }
        for w in group.windows(2) {
            uf.union(w[0], w[1]);
        }
    }
    EquivalenceClasses::from_union_find(&mut uf, s, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{skeleton_tree, tecc_decomposition};

    fn classes(n: usize, edges: &[(usize, usize)], s: Vec<usize>) -> Vec<Vec<usize>> {
        let g = Graph::new(n, edges).unwrap();
        let d = tecc_decomposition(&g);
        let t = skeleton_tree(&g, &d).unwrap();
        let s = Configuration::new(s, n).unwrap();
        classes_one_empty(&g, &d, &t, &s).members()
    }

    #[test]
    fn tail_pebble_behind_the_hole_is_alone() {
        // triangle 0-1-2, tail 2-3-4, hole at 4
        let m = classes(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4)], vec![0, 1, 2, 3]);
        assert_eq!(m, vec![vec![0, 1, 2], vec![3]]);
    }

    #[test]
    fn hole_next_to_triangle() {
        // triangle 0-1-2, tail 2-3-4, hole at 3
        let m = classes(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4)], vec![0, 1, 2, 4]);
        assert_eq!(m, vec![vec![0, 1, 2], vec![3]]);
    }

    #[test]
    fn two_triangles_merge_through_the_bridge() {
        let e = [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (3, 5)];
        let m = classes(6, &e, vec![1, 2, 3, 4, 5]);
        assert_eq!(m, vec![vec![0, 1, 2, 3, 4]]);
    }
}
