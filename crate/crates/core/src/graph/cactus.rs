use std::collections::VecDeque;

use super::{normalize_cycle, Graph, Vertex};

/// Cycle structure of a cactus TECC, rooted at a leaf cycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CactusInfo {
    /// Each cycle starts at its smallest vertex and continues toward the
    /// smaller of that vertex's two cycle neighbors. Sorted.
    pub cycles: Vec<Vec<Vertex>>,
    /// Parent-child pairs of the rooted dual tree.
    pub dual_edges: Vec<(usize, usize)>,
    pub root: usize,
    /// Root has distance -1, its neighbors 0, and so on.
    pub cycle_distance: Vec<i64>,
    pub has_even_cycle: bool,
    /// Dual-tree parent of each cycle; `None` for the root.
    pub parent: Vec<Option<usize>>,
    /// Vertex shared with the parent cycle; `None` for the root.
    pub attach: Vec<Option<Vertex>>,
    /// Cycles through each vertex of the TECC, keyed by graph vertex.
    pub cycles_at: Vec<Vec<usize>>,
}

impl CactusInfo {
    pub fn children(&self, c: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.cycles.len()).filter(move |&d| self.parent[d] == Some(c))
    }

    /// Cycles ordered by decreasing distance from the root.
    pub fn leaves_first(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.cycles.len()).collect();
        order.sort_by_key(|&c| (std::cmp::Reverse(self.cycle_distance[c]), c));
        order
    }
}

/// Decides whether the subgraph induced by `tecc` is a cactus (every edge on
/// exactly one cycle) and, if so, returns its rooted cycle tree.
///
/// Each non-tree edge of a DFS tree closes one cycle; the graph is a cactus
/// iff these cycles never share a tree edge.
pub fn analyze_cactus(g: &Graph, tecc: &[Vertex]) -> Option<CactusInfo> {
    let n = g.n();
    let mut inside = vec![false; n];
    for &v in tecc {
        inside[v] = true;
    }
    let &start = tecc.iter().min()?;

    let mut depth = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut covered = vec![false; n]; // tree edge (v, parent[v]) keyed by v
    let mut raw_cycles: Vec<Vec<Vertex>> = Vec::new();

    depth[start] = 0;
    let mut stack: Vec<(Vertex, usize)> = vec![(start, 0)];
    while let Some(frame) = stack.last_mut() {
        let (u, idx) = *frame;
        let Some(&w) = g.neighbors(u).get(idx) else {
            stack.pop();
            continue;
        };
        frame.1 += 1;
        if !inside[w] || w == parent[u] {
            continue;
        }
        if depth[w] == usize::MAX {
            depth[w] = depth[u] + 1;
            parent[w] = u;
            stack.push((w, 0));
        } else if depth[w] < depth[u] {
            // back edge u -> ancestor w
            let mut cycle = vec![u];
            let mut cur = u;
            while cur != w {
                if std::mem::replace(&mut covered[cur], true) {
                    return None;
                }
                cur = parent[cur];
                cycle.push(cur);
            }
            raw_cycles.push(cycle);
        }
    }

    let mut cycles: Vec<Vec<Vertex>> = raw_cycles.iter().map(|c| canonical_cycle(c)).collect();
    cycles.sort();
    let k = cycles.len();
    if k == 0 {
        return None;
    }

    let mut cycles_at = vec![Vec::new(); n];
    for (i, c) in cycles.iter().enumerate() {
        for &v in c {
            cycles_at[v].push(i);
        }
    }
    let shared_count = |c: &Vec<Vertex>| c.iter().filter(|&&v| cycles_at[v].len() > 1).count();
    let root = (0..k).find(|&i| shared_count(&cycles[i]) <= 1).unwrap_or(0);

    let mut cycle_distance = vec![i64::MIN; k];
    let mut dual_parent = vec![None; k];
    let mut attach = vec![None; k];
    let mut dual_edges = Vec::new();
    cycle_distance[root] = -1;
    let mut queue = VecDeque::from([root]);
    while let Some(c) = queue.pop_front() {
        for &v in &cycles[c] {
            for &d in &cycles_at[v] {
                if cycle_distance[d] == i64::MIN {
                    cycle_distance[d] = cycle_distance[c] + 1;
                    dual_parent[d] = Some(c);
                    attach[d] = Some(v);
                    dual_edges.push((c, d));
                    queue.push_back(d);
                }
            }
        }
    }
    let has_even_cycle = cycles.iter().any(|c| c.len() % 2 == 0);
    Some(CactusInfo {
        cycles,
        dual_edges,
        root,
        cycle_distance,
        has_even_cycle,
        parent: dual_parent,
        attach,
        cycles_at,
    })
}

/// Starts at the smallest vertex and walks toward its smaller neighbor.
fn canonical_cycle(cycle: &[Vertex]) -> Vec<Vertex> {
    let c = normalize_cycle(cycle);
    if c.len() > 2 && c[c.len() - 1] < c[1] {
        let mut r = vec![c[0]];
        r.extend(c[1..].iter().rev());
        r
    } else {
        c
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bowtie() -> Graph {
        Graph::new(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).unwrap()
    }

    #[test]
    fn bowtie_is_odd_cactus() {
        let info = analyze_cactus(&bowtie(), &[0, 1, 2, 3, 4]).unwrap();
        assert_eq!(info.cycles, vec![vec![0, 1, 2], vec![2, 3, 4]]);
        assert_eq!(info.dual_edges.len(), 1);
        assert!(!info.has_even_cycle);
        assert_eq!(info.root, 0);
        assert_eq!(info.cycle_distance, vec![-1, 0]);
        assert_eq!(info.attach[1], Some(2));
    }

    #[test]
    fn triangle_square_has_even_cycle() {
        let g = Graph::new(6, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (5, 2)]).unwrap();
        let info = analyze_cactus(&g, &[0, 1, 2, 3, 4, 5]).unwrap();
        assert_eq!(info.cycles.len(), 2);
        assert!(info.has_even_cycle);
        assert_eq!(info.cycles[1], vec![2, 3, 4, 5]);
    }

    #[test]
    fn k4_is_not_a_cactus() {
        let g = Graph::new(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert!(analyze_cactus(&g, &[0, 1, 2, 3]).is_none());
    }

    #[test]
    fn chain_of_three_triangles_distances() {
        let g = Graph::new(
            7,
            &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4), (4, 5), (5, 6), (4, 6)],
        )
        .unwrap();
        let info = analyze_cactus(&g, &[0, 1, 2, 3, 4, 5, 6]).unwrap();
        assert_eq!(info.cycle_distance, vec![-1, 0, 1]);
        assert_eq!(info.leaves_first(), vec![2, 1, 0]);
    }
}
