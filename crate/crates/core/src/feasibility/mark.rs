use std::cmp::Reverse;
use std::collections::VecDeque;

use super::classes::{EquivalenceClasses, UnionFind};
use super::reduce::reconfigure_to_target_set;
use crate::config::{Configuration, Pebble};
use crate::graph::{Graph, SkeletonTree, Vertex};

/// Hole counts for every directed skeleton edge.
///
/// `holes(u, v)` counts empty vertices in the component of the tree minus
/// `u` that contains `v`; a composite node contributes its capacity minus
/// its occupancy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubtreeStats {
    /// Pebbles on each node.
    pub occupancy: Vec<usize>,
    pub total_holes: usize,
    parent: Vec<usize>,
    down_holes: Vec<usize>,
}

impl SubtreeStats {
    pub fn node_holes(&self, t: &SkeletonTree, x: usize) -> usize {
        t.capacity[x] - self.occupancy[x]
    }

    /// Holes in `T(u, v)` for adjacent nodes `u`, `v`.
    pub fn holes(&self, u: usize, v: usize) -> usize {
        if self.parent[v] == u {
            self.down_holes[v]
        } else {
            debug_assert_eq!(self.parent[u], v);
            self.total_holes - self.down_holes[u]
        }
    }
}

/// Rooted at node 0; one pass down for parents, one pass up for sums.
pub fn subtree_stats(t: &SkeletonTree, s: &Configuration) -> SubtreeStats {
    let m = t.len();
    let mut occupancy = vec![0; m];
    for &v in s.placement() {
        occupancy[t.project[v]] += 1;
    }
    let mut parent = vec![usize::MAX; m];
    let mut order = Vec::with_capacity(m);
    parent[0] = 0;
    let mut queue = VecDeque::from([0]);
    while let Some(x) = queue.pop_front() {
        order.push(x);
        for &y in &t.adjacency[x] {
            if parent[y] == usize::MAX {
                parent[y] = x;
                queue.push_back(y);
            }
        }
    }
    let mut down_holes: Vec<usize> = (0..m).map(|x| t.capacity[x] - occupancy[x]).collect();
    for &x in order.iter().rev() {
        if x != 0 {
            down_holes[parent[x]] += down_holes[x];
        }
    }
    SubtreeStats {
        occupancy,
        total_holes: down_holes[0],
        parent,
        down_holes,
    }
}

fn is_special(t: &SkeletonTree, x: usize) -> bool {
    t.is_composite(x) || t.is_fork(x)
}

/// Walks from `u` through its neighbor `next` along degree-two ordinary
/// nodes; returns the first fork or composite node and its distance from
/// `u`, or `None` if the walk ends at a leaf.
fn nearest_special(t: &SkeletonTree, u: usize, mut next: usize) -> Option<(usize, usize)> {
    let mut prev = u;
    let mut dist = 1;
    loop {
        if is_special(t, next) {
            return Some((next, dist));
        }
        let adj = &t.adjacency[next];
        let step = adj.iter().copied().find(|&y| y != prev)?;
        prev = next;
        next = step;
        dist += 1;
    }
}

/// Whether the pebbles on occupied nodes `u` and `v` can trade places with
/// no net effect on other pebbles, given that no pebble lies strictly
/// between them.
pub fn adjacent_equivalent(t: &SkeletonTree, stats: &SubtreeStats, u: usize, v: usize) -> bool {
    equivalent_along(t, stats, &t.path(u, v))
}

fn equivalent_along(t: &SkeletonTree, stats: &SubtreeStats, path: &[usize]) -> bool {
    let k = path.len();
    debug_assert!(k >= 2);
    let (u, v) = (path[0], path[k - 1]);

    // a fork strictly between the two pebbles
    for i in 1..k - 1 {
        let w = path[i];
        if !t.is_fork(w) {
            continue;
        }
        let toward_u = stats.holes(w, path[i - 1]);
        let toward_v = stats.holes(w, path[i + 1]);
        let others = stats.total_holes - toward_u - toward_v - stats.node_holes(t, w);
        if (toward_u > 0 && toward_v > 0) || others > 0 {
            return true;
        }
    }
    end_condition(t, stats, u, path[1]) || end_condition(t, stats, v, path[k - 2])
}

/// Conditions anchored at one endpoint `u`, whose neighbor on the way to
/// the other pebble is `toward`.
fn end_condition(t: &SkeletonTree, stats: &SubtreeStats, u: usize, toward: usize) -> bool {
    let outside = stats.total_holes - stats.holes(u, toward);
    if t.is_composite(u) {
        return outside > 0;
    }
    let sides = t.adjacency[u].iter().copied().filter(|&x| x != toward);
    if t.is_fork(u) && outside >= 2 {
        let nonfull = sides.clone().filter(|&x| stats.holes(u, x) > 0).count();
        if nonfull >= 2 || stats.holes(u, toward) > 0 {
            return true;
        }
    }
    sides.into_iter().any(|away| match nearest_special(t, u, away) {
        Some((w, d)) => {
            let need = if t.is_composite(w) { d + 1 } else { d + 2 };
            stats.holes(u, away) >= need
        }
        None => false,
    })
}

/// Equivalence classes on a tree-like instance.
///
/// Pebbles inside one composite node are merged outright, and every pair of
/// pebbles with no pebble between them is tested with
/// [`adjacent_equivalent`]. A pebble parked on a fork can hide an exchange
/// between its neighbors, so the test is repeated on one extra
/// configuration per fork or composite node, reached from `s` by pushing
/// every pebble as far from that node as possible. Equivalence does not
/// change along moves, so the union over all of them is the partition of
/// `s`.
pub fn mark_classes(g: &Graph, t: &SkeletonTree, s: &Configuration) -> EquivalenceClasses {
    let n = g.n();
    let p = s.pebble_count();
    let mut uf = UnionFind::new(p);
    mark_adjacent(t, s, &mut uf);
    if p > 0 && p < n {
        let tree = g.bfs_spanning_tree(0);
        for w in 0..t.len() {
            if is_special(t, w) {
                let pushed = push_away_from(&tree, t, s, w);
                mark_adjacent(t, &pushed, &mut uf);
            }
        }
    }
    EquivalenceClasses::from_union_find(&mut uf, s, n)
}

/// A configuration reachable from `s` whose pebbles sit on the vertices
/// farthest (in `tree`) from skeleton node `w`.
fn push_away_from(tree: &Graph, t: &SkeletonTree, s: &Configuration, w: usize) -> Configuration {
    let n = tree.n();
    let mut dist = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    for (v, d) in dist.iter_mut().enumerate() {
        if t.project[v] == w {
            *d = 0;
            queue.push_back(v);
        }
    }
    while let Some(x) = queue.pop_front() {
        for &y in tree.neighbors(x) {
            if dist[y] == usize::MAX {
                dist[y] = dist[x] + 1;
                queue.push_back(y);
            }
        }
    }
    let mut order: Vec<Vertex> = (0..n).collect();
    order.sort_by_key(|&v| (Reverse(dist[v]), v));
    reconfigure_to_target_set(tree, s, &order[..s.pebble_count()]).0
}

fn mark_adjacent(t: &SkeletonTree, s: &Configuration, uf: &mut UnionFind) {
    let stats = subtree_stats(t, s);
    let m = t.len();
    let mut first: Vec<Option<Pebble>> = vec![None; m];
    for (i, &v) in s.placement().iter().enumerate() {
        let x = t.project[v];
        match first[x] {
            Some(j) => uf.union(i, j),
            None => first[x] = Some(i),
        }
    }
    let mut parent = vec![usize::MAX; m];
    let mut touched = Vec::new();
    for u in 0..m {
        let Some(pu) = first[u] else { continue };
        // search the empty region around u for the next pebbles
        parent[u] = u;
        touched.push(u);
        let mut queue = VecDeque::from([u]);
        while let Some(x) = queue.pop_front() {
            for &y in &t.adjacency[x] {
                if parent[y] != usize::MAX {
                    continue;
                }
                parent[y] = x;
                touched.push(y);
                match first[y] {
                    Some(pv) => {
                        if y > u && uf.find(pu) != uf.find(pv) {
                            let mut path = vec![y];
                            let mut cur = y;
                            while cur != u {
                                cur = parent[cur];
                                path.push(cur);
                            }
                            path.reverse();
                            if equivalent_along(t, &stats, &path) {
                                uf.union(pu, pv);
                            }
                        }
                    }
                    None => queue.push_back(y),
                }
            }
        }
        for x in touched.drain(..) {
            parent[x] = usize::MAX;
        }
    }
}
