use super::{Graph, Vertex};

/// Bridges and 2-edge-connected components (TECCs) of a connected graph.
///
/// Only components with at least three vertices are listed as TECCs; in a
/// simple graph every other bridgeless component is a single vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TeccDecomposition {
    pub bridges: Vec<(Vertex, Vertex)>,
    /// Sorted vertex sets, ordered by smallest member.
    pub teccs: Vec<Vec<Vertex>>,
    pub tecc_of: Vec<Option<usize>>,
    pub n_tecc_vertices: usize,
}

impl TeccDecomposition {
    pub fn is_tecc_vertex(&self, v: Vertex) -> bool {
        self.tecc_of[v].is_some()
    }
}

/// All bridges of `g` as `(u, v)` with `u < v`, sorted.
///
/// Iterative lowlink DFS; runs in `O(n + m)`.
pub fn bridges(g: &Graph) -> Vec<(Vertex, Vertex)> {
    let n = g.n();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut out = Vec::new();
    let mut time = 0;
    // (vertex, parent, next neighbor index)
    let mut stack: Vec<(Vertex, Vertex, usize)> = Vec::new();
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        stack.push((root, usize::MAX, 0));
        while let Some(frame) = stack.last_mut() {
            let (u, parent, idx) = *frame;
            if let Some(&w) = g.neighbors(u).get(idx) {
                frame.2 += 1;
                if w == parent {
                    continue;
                }
                if disc[w] == usize::MAX {
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    stack.push((w, u, 0));
                } else {
                    low[u] = low[u].min(disc[w]);
                }
            } else {
                stack.pop();
                if parent != usize::MAX {
                    low[parent] = low[parent].min(low[u]);
                    if low[u] > disc[parent] {
                        out.push((parent.min(u), parent.max(u)));
                    }
                }
            }
        }
    }
    out.sort_unstable();
    out
}

pub fn tecc_decomposition(g: &Graph) -> TeccDecomposition {
    let bridges = bridges(g);
    let n = g.n();
    let is_bridge = |u: Vertex, v: Vertex| bridges.binary_search(&(u.min(v), u.max(v))).is_ok();

    let mut comp = vec![usize::MAX; n];
    let mut components: Vec<Vec<Vertex>> = Vec::new();
    for start in 0..n {
        if comp[start] != usize::MAX {
            continue;
        }
        let id = components.len();
        comp[start] = id;
        let mut members = vec![start];
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for &w in g.neighbors(u) {
                if comp[w] == usize::MAX && !is_bridge(u, w) {
                    comp[w] = id;
                    members.push(w);
                    stack.push(w);
                }
            }
        }
        members.sort_unstable();
        components.push(members);
    }

    // Components are discovered in order of their smallest vertex already.
    let mut teccs = Vec::new();
    let mut tecc_of = vec![None; n];
    for members in components.into_iter().filter(|c| c.len() >= 3) {
        for &v in &members {
            tecc_of[v] = Some(teccs.len());
        }
        teccs.push(members);
    }
    let n_tecc_vertices = teccs.iter().map(Vec::len).sum();
    TeccDecomposition {
        bridges,
        teccs,
        tecc_of,
        n_tecc_vertices,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_has_one_tecc() {
        let g = Graph::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let d = tecc_decomposition(&g);
        assert!(d.bridges.is_empty());
        assert_eq!(d.teccs, vec![vec![0, 1, 2]]);
        assert_eq!(d.n_tecc_vertices, 3);
    }

    #[test]
    fn pan_has_pendant_bridge() {
        let g = Graph::new(4, &[(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap();
        let d = tecc_decomposition(&g);
        assert_eq!(d.bridges, vec![(2, 3)]);
        assert_eq!(d.teccs, vec![vec![0, 1, 2]]);
        assert_eq!(d.tecc_of[3], None);
    }

    #[test]
    fn path_has_no_teccs() {
        let g = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let d = tecc_decomposition(&g);
        assert_eq!(d.bridges, vec![(0, 1), (1, 2)]);
        assert!(d.teccs.is_empty());
        assert_eq!(d.n_tecc_vertices, 0);
    }

    #[test]
    fn two_triangles_joined_by_a_bridge() {
        let g = Graph::new(6, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (3, 5)]).unwrap();
        let d = tecc_decomposition(&g);
        assert_eq!(d.bridges, vec![(2, 3)]);
        assert_eq!(d.teccs, vec![vec![0, 1, 2], vec![3, 4, 5]]);
    }
}
