use std::collections::VecDeque;

use crate::config::{Configuration, Move, Plan};
use crate::graph::{Graph, TeccDecomposition, Vertex};

/// Moves the pebbles of `s` onto `targets` using simple moves along the tree
/// `tree`, by repeatedly peeling leaves.
///
/// A target leaf pulls in the nearest pebble; a non-target leaf pushes its
/// pebble inward along the path to the nearest hole. Either way the leaf is
/// then deleted. Requires `|targets| = p`.
pub fn reconfigure_to_target_set(tree: &Graph, s: &Configuration, targets: &[Vertex]) -> (Configuration, Plan) {
    let n = tree.n();
    assert_eq!(targets.len(), s.pebble_count(), "target count must equal pebble count");
    let mut is_target = vec![false; n];
    for &t in targets {
        is_target[t] = true;
    }
    let mut occupant = s.occupants(n);
    if (0..n).all(|v| occupant[v].is_some() == is_target[v]) {
        return (s.clone(), Plan::default());
    }
    let mut removed = vec![false; n];
    let mut degree: Vec<usize> = (0..n).map(|v| tree.degree(v)).collect();
    let mut leaves: Vec<Vertex> = (0..n).filter(|&v| degree[v] <= 1).collect();
    let mut moves = Vec::new();
    let mut parent = vec![usize::MAX; n];
    while let Some(leaf) = leaves.pop() {
        if removed[leaf] {
            continue;
        }
        let wanted = is_target[leaf];
        if wanted != occupant[leaf].is_some() {
            // nearest vertex (in the remaining tree) with the opposite state
            let path = nearest(tree, leaf, &removed, &mut parent, |v| occupant[v].is_some() == wanted);
            if wanted {
                // interior is empty: slide the pebble along
                for w in path.windows(2) {
                    moves.push(Move::simple(w[0], w[1]));
                    occupant[w[1]] = occupant[w[0]].take();
                }
            } else {
                // interior is full: shift every pebble one step toward the hole
                for w in path.windows(2) {
                    moves.push(Move::simple(w[1], w[0]));
                    occupant[w[0]] = occupant[w[1]].take();
                }
            }
        }
        removed[leaf] = true;
        for &w in tree.neighbors(leaf) {
            if !removed[w] {
                degree[w] -= 1;
                if degree[w] <= 1 {
                    leaves.push(w);
                }
            }
        }
    }
    let mut placement = vec![0; s.pebble_count()];
    for (v, o) in occupant.iter().enumerate() {
        if let Some(i) = o {
            placement[*i] = v;
        }
    }
    (Configuration::from_vec_unchecked(placement), Plan::new(moves))
}

/// BFS from `from` over non-removed vertices. Returns the path from the
/// first vertex satisfying `hit` back to `from`.
fn nearest(
    tree: &Graph,
    from: Vertex,
    removed: &[bool],
    parent: &mut [usize],
    hit: impl Fn(Vertex) -> bool,
) -> Vec<Vertex> {
    let mut queue = VecDeque::from([from]);
    let mut touched = vec![from];
    parent[from] = from;
    let mut found = None;
    'bfs: while let Some(u) = queue.pop_front() {
        for &w in tree.neighbors(u) {
            if removed[w] || parent[w] != usize::MAX {
                continue;
            }
            parent[w] = u;
            touched.push(w);
            if hit(w) {
                found = Some(w);
                break 'bfs;
            }
            queue.push_back(w);
        }
    }
    let mut cur = found.expect("a counting argument guarantees a match");
    let mut path = vec![cur];
    while cur != from {
        cur = parent[cur];
        path.push(cur);
    }
    for v in touched {
        parent[v] = usize::MAX;
    }
    path
}

/// A PPR instance in which every TECC vertex is occupied, together with the
/// simple-move prefixes that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RppInstance {
    pub start: Configuration,
    pub goal: Configuration,
    /// Moves taking the original start to `start`.
    pub start_moves: Plan,
    /// Moves taking the original goal to `goal`.
    pub goal_moves: Plan,
}

/// Fills every TECC in both `s` and `d` (which must share a vertex set).
///
/// The common target set keeps the non-TECC vertices of `s` with the
/// smallest indices. Requires `p >= N(TECCs)`.
pub fn make_rpp(g: &Graph, tecc: &TeccDecomposition, s: &Configuration, d: &Configuration) -> RppInstance {
    let p = s.pebble_count();
    assert!(p >= tecc.n_tecc_vertices, "not enough pebbles to fill the TECCs");
    let occupied = s.vertex_set();
    let mut targets: Vec<Vertex> = (0..g.n()).filter(|&v| tecc.is_tecc_vertex(v)).collect();
    let extra = p - targets.len();
    targets.extend(
        occupied
            .iter()
            .copied()
            .filter(|&v| !tecc.is_tecc_vertex(v))
            .take(extra),
    );
    if targets.len() < p {
        let mut chosen = vec![false; g.n()];
        for &t in &targets {
            chosen[t] = true;
        }
        let missing = p - targets.len();
        targets.extend((0..g.n()).filter(|&v| !chosen[v]).take(missing));
    }
    let tree = g.bfs_spanning_tree(0);
    let (start, start_moves) = reconfigure_to_target_set(&tree, s, &targets);
    let (goal, goal_moves) = reconfigure_to_target_set(&tree, d, &targets);
    RppInstance {
        start,
        goal,
        start_moves,
        goal_moves,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::verify_plan;
    use crate::graph::tecc_decomposition;

    fn conf(v: Vec<usize>) -> Configuration {
        Configuration::from_vec_unchecked(v)
    }

    #[test]
    fn path_pull() {
        let path = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let (s, plan) = reconfigure_to_target_set(&path, &conf(vec![0]), &[2]);
        assert_eq!(s.placement(), &[2]);
        assert_eq!(plan.moves, vec![Move::simple(0, 1), Move::simple(1, 2)]);
    }

    #[test]
    fn identity_when_already_on_targets() {
        let path = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let (s, plan) = reconfigure_to_target_set(&path, &conf(vec![2, 0]), &[0, 2]);
        assert_eq!(s.placement(), &[2, 0]);
        assert!(plan.is_empty());
    }

    #[test]
    fn star_plan_verifies() {
        let star = Graph::new(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let s = conf(vec![1, 2]);
        let (t, plan) = reconfigure_to_target_set(&star, &s, &[1, 3]);
        assert_eq!(t.vertex_set(), vec![1, 3]);
        assert!(verify_plan(&star, &s, &t, &plan).is_verified());
    }

    #[test]
    fn rpp_fills_the_triangle() {
        // PAN5: triangle 0-1-2 with tail 2-3-4
        let g = Graph::new(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4)]).unwrap();
        let d = tecc_decomposition(&g);
        let s = conf(vec![0, 3, 4]);
        let rpp = make_rpp(&g, &d, &s, &s);
        assert_eq!(rpp.start.vertex_set(), vec![0, 1, 2]);
        assert!(verify_plan(&g, &s, &rpp.start, &rpp.start_moves).is_verified());
    }

    #[test]
    fn rpp_with_pendant() {
        // bowtie plus a pendant vertex 5 on vertex 4
        let g = Graph::new(6, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4), (4, 5)]).unwrap();
        let d = tecc_decomposition(&g);
        let s = conf(vec![0, 1, 2, 3, 5]);
        let rpp = make_rpp(&g, &d, &s, &s);
        assert_eq!(rpp.start.vertex_set(), vec![0, 1, 2, 3, 4]);
        assert!(verify_plan(&g, &s, &rpp.start, &rpp.start_moves).is_verified());
    }
}
