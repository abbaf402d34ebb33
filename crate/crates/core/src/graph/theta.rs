use std::collections::{HashSet, VecDeque};

use thiserror::Error;

use super::{Graph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ThetaError {
    #[error("vertices {0} and {1} do not share a 2-connected block")]
    NotInSameBlock(Vertex, Vertex),
    #[error("the block containing {0} and {1} is a bare cycle or an edge")]
    NoTheta(Vertex, Vertex),
    #[error("endpoints must be distinct")]
    SameVertex,
}

/// Two cycles sharing a path: three internally disjoint paths between the
/// branch vertices `b_1` and `b_{n2}`.
///
/// Rotation direction is given by vertex order: the pebble on `cycle[i]`
/// moves to `cycle[i + 1]`.
/// * left  = `b_1 .. b_{n2}, a_{n1} .. a_1`
/// * right = `c_1 .. c_{n3}, b_{n2} .. b_1`
/// * outer = `b_1, c_1 .. c_{n3}, b_{n2}, a_{n1} .. a_1`
///
/// With these directions `right ∘ left ∘ outer⁻¹` (outer reversed applied
/// first) transposes the pebbles on `b_1` and `c_1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThetaSubgraph {
    pub a_part: Vec<Vertex>,
    pub shared_path: Vec<Vertex>,
    pub c_part: Vec<Vertex>,
    pub left_cycle: Vec<Vertex>,
    pub right_cycle: Vec<Vertex>,
    pub outer_cycle: Vec<Vertex>,
    pub part_sizes: (usize, usize, usize),
}

impl ThetaSubgraph {
    /// Builds the theta from three internally disjoint paths that all run
    /// from the same start vertex to the same end vertex. The path with the
    /// fewest interior vertices becomes the shared path.
    pub fn from_paths(mut paths: [Vec<Vertex>; 3]) -> Self {
        paths.sort_by_key(|p| (p.len(), p.get(1).copied()));
        let [shared, x, y] = paths;
        let (a_path, c_path) = if x[1] <= y[1] { (x, y) } else { (y, x) };
        let a_part = a_path[1..a_path.len() - 1].to_vec();
        let c_part = c_path[1..c_path.len() - 1].to_vec();
        let b1 = shared[0];
        let bn = *shared.last().unwrap();

        let mut left_cycle = shared.clone();
        left_cycle.extend(a_part.iter().rev());
        let mut right_cycle = c_part.clone();
        right_cycle.extend(shared.iter().rev());
        let mut outer_cycle = vec![b1];
        outer_cycle.extend(&c_part);
        outer_cycle.push(bn);
        outer_cycle.extend(a_part.iter().rev());
        let part_sizes = (a_part.len(), shared.len(), c_part.len());
        Self {
            a_part,
            shared_path: shared,
            c_part,
            left_cycle,
            right_cycle,
            outer_cycle,
            part_sizes,
        }
    }

    pub fn vertices(&self) -> Vec<Vertex> {
        let mut v: Vec<Vertex> = self
            .a_part
            .iter()
            .chain(&self.shared_path)
            .chain(&self.c_part)
            .copied()
            .collect();
        v.sort_unstable();
        v
    }

    pub fn b1(&self) -> Vertex {
        self.shared_path[0]
    }

    pub fn c1(&self) -> Vertex {
        self.c_part[0]
    }
}

/// Edge-partition of `g` into 2-connected blocks (bridges are single-edge
/// blocks). Each block is returned as its sorted vertex set and edge count.
pub(crate) fn blocks(g: &Graph) -> Vec<(Vec<Vertex>, usize)> {
    let n = g.n();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut time = 0;
    let mut edge_stack: Vec<(Vertex, Vertex)> = Vec::new();
    let mut out = Vec::new();
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
                    edge_stack.push((u, w));
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    stack.push((w, u, 0));
                } else if disc[w] < disc[u] {
                    edge_stack.push((u, w));
                    low[u] = low[u].min(disc[w]);
                }
            } else {
                stack.pop();
                if parent != usize::MAX {
                    low[parent] = low[parent].min(low[u]);
                    if low[u] >= disc[parent] {
                        let mut verts = Vec::new();
                        let mut count = 0;
                        while let Some(e) = edge_stack.pop() {
                            verts.push(e.0);
                            verts.push(e.1);
                            count += 1;
                            if e == (parent, u) {
                                break;
                            }
                        }
                        verts.sort_unstable();
                        verts.dedup();
                        out.push((verts, count));
                    }
                }
            }
        }
    }
    out.sort();
    out
}

/// Finds a theta subgraph containing `u` and `v`, which must lie in a common
/// 2-connected block that is not a single cycle.
///
/// Two internally disjoint `u`-`v` paths give a cycle; an ear of the block
/// attached to that cycle completes the theta.
pub fn find_theta(g: &Graph, u: Vertex, v: Vertex) -> Result<ThetaSubgraph, ThetaError> {
    if u == v {
        return Err(ThetaError::SameVertex);
    }
    let block = blocks(g)
        .into_iter()
        .find(|(vs, _)| vs.binary_search(&u).is_ok() && vs.binary_search(&v).is_ok())
        .ok_or(ThetaError::NotInSameBlock(u, v))?;
    let (verts, edge_count) = block;
    if edge_count <= verts.len() {
        return Err(ThetaError::NoTheta(u, v));
    }
    let mut in_block = vec![false; g.n()];
    for &w in &verts {
        in_block[w] = true;
    }
    let (p1, p2) = two_disjoint_paths(g, &in_block, u, v).ok_or(ThetaError::NoTheta(u, v))?;
    // cycle = p1 forward, then p2 backward without endpoints
    let mut cycle = p1.clone();
    cycle.extend(p2[1..p2.len() - 1].iter().rev());
    let (ear_start, ear) = find_ear(g, &in_block, &cycle).ok_or(ThetaError::NoTheta(u, v))?;
    let ear_end = *ear.last().unwrap();

    // split the cycle at the two ear endpoints
    let k = cycle.len();
    let i = cycle.iter().position(|&w| w == ear_start).unwrap();
    let j = cycle.iter().position(|&w| w == ear_end).unwrap();
    let mut arc1 = Vec::new();
    let mut idx = i;
    loop {
        arc1.push(cycle[idx]);
        if idx == j {
            break;
        }
        idx = (idx + 1) % k;
    }
    let mut arc2 = Vec::new();
    let mut idx = i;
    loop {
        arc2.push(cycle[idx]);
        if idx == j {
            break;
        }
        idx = (idx + k - 1) % k;
    }
    let (s, t) = (ear_start.min(ear_end), ear_start.max(ear_end));
    let orient = |mut p: Vec<Vertex>| {
        if p[0] != s {
            p.reverse();
        }
        debug_assert_eq!(*p.last().unwrap(), t);
        p
    };
    Ok(ThetaSubgraph::from_paths([orient(ear), orient(arc1), orient(arc2)]))
}

/// Two internally vertex-disjoint paths via two rounds of augmentation on
/// the vertex-split unit-capacity network.
fn two_disjoint_paths(g: &Graph, in_block: &[bool], s: Vertex, t: Vertex) -> Option<(Vec<Vertex>, Vec<Vertex>)> {
    let n = g.n();
    // node 2v = v_in, 2v+1 = v_out; arcs carrying flow are kept in a set
    let mut flow: HashSet<(usize, usize)> = HashSet::new();
    let arcs_from = |x: usize| -> Vec<usize> {
        let v = x / 2;
        if x.is_multiple_of(2) {
            // v_in -> v_out
            vec![2 * v + 1]
        } else {
            g.neighbors(v)
                .iter()
                .filter(|&&w| in_block[w])
                .map(|&w| 2 * w)
                .collect()
        }
    };
    let source = 2 * s + 1;
    let sink = 2 * t;
    for _ in 0..2 {
        let mut prev = vec![usize::MAX; 2 * n];
        prev[source] = source;
        let mut queue = VecDeque::from([source]);
        while let Some(x) = queue.pop_front() {
            if x == sink {
                break;
            }
            let mut next: Vec<usize> = arcs_from(x).into_iter().filter(|&y| !flow.contains(&(x, y))).collect();
            // reverse residual arcs
            next.extend(
                flow.iter()
                    .filter(|&&(a, b)| b == x && !flow.contains(&(b, a)))
                    .map(|&(a, _)| a),
            );
            next.sort_unstable();
            for y in next {
                let internal_ok = y / 2 != s || y == source;
                if prev[y] == usize::MAX && internal_ok {
                    prev[y] = x;
                    queue.push_back(y);
                }
            }
        }
        if prev[sink] == usize::MAX {
            return None;
        }
        let mut y = sink;
        while y != source {
            let x = prev[y];
            if !flow.remove(&(y, x)) {
                flow.insert((x, y));
            }
            y = x;
        }
    }
    // decompose flow into two paths
    let mut paths = Vec::new();
    let starts: Vec<usize> = flow.iter().filter(|&&(a, _)| a == source).map(|&(_, b)| b).collect();
    let mut starts = starts;
    starts.sort_unstable();
    for first in starts {
        let mut path = vec![s];
        let mut x = first;
        loop {
            let v = x / 2;
            path.push(v);
            if v == t {
                break;
            }
            let out = 2 * v + 1;
            let next = flow.iter().find(|&&(a, _)| a == out).map(|&(_, b)| b)?;
            x = next;
        }
        paths.push(path);
    }
    if paths.len() != 2 {
        return None;
    }
    let p2 = paths.pop().unwrap();
    let p1 = paths.pop().unwrap();
    Some((p1, p2))
}

/// Returns `(start, path)` where `path` runs from a cycle vertex `start`
/// through off-cycle block vertices (possibly none, for a chord) to another
/// cycle vertex.
fn find_ear(g: &Graph, in_block: &[bool], cycle: &[Vertex]) -> Option<(Vertex, Vec<Vertex>)> {
    let n = g.n();
    let k = cycle.len();
    let mut pos = vec![usize::MAX; n];
    for (i, &v) in cycle.iter().enumerate() {
        pos[v] = i;
    }
    let mut order: Vec<Vertex> = cycle.to_vec();
    order.sort_unstable();
    for &a in &order {
        for &w in g.neighbors(a) {
            if !in_block[w] {
                continue;
            }
            if pos[w] != usize::MAX {
                let d = (pos[w] + k - pos[a]) % k;
                if d != 1 && d != k - 1 {
                    return Some((a, vec![a, w]));
                }
                continue;
            }
            // BFS through off-cycle vertices until some vertex touches the
            // cycle at a vertex other than `a`.
            let mut parent = vec![usize::MAX; n];
            parent[w] = a;
            let mut queue = VecDeque::from([w]);
            while let Some(x) = queue.pop_front() {
                for &y in g.neighbors(x) {
                    if !in_block[y] {
                        continue;
                    }
                    if pos[y] != usize::MAX {
                        if y != a {
                            let mut path = vec![y, x];
                            let mut cur = x;
                            while cur != w {
                                cur = parent[cur];
                                path.push(cur);
                            }
                            path.push(a);
                            path.reverse();
                            return Some((a, path));
                        }
                    } else if parent[y] == usize::MAX {
                        parent[y] = x;
                        queue.push_back(y);
                    }
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn theta4() -> Graph {
        Graph::new(4, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    fn check(g: &Graph, t: &ThetaSubgraph) {
        assert!(g.is_graph_cycle(&t.left_cycle));
        assert!(g.is_graph_cycle(&t.right_cycle));
        assert!(g.is_graph_cycle(&t.outer_cycle));
        let (n1, n2, n3) = t.part_sizes;
        assert_eq!(t.left_cycle.len(), n1 + n2);
        assert_eq!(t.right_cycle.len(), n3 + n2);
        assert_eq!(t.outer_cycle.len(), n1 + n3 + 2);
    }

    #[test]
    fn theta4_is_the_whole_graph() {
        let g = theta4();
        let t = find_theta(&g, 1, 3).unwrap();
        check(&g, &t);
        assert_eq!(t.vertices(), vec![0, 1, 2, 3]);
        assert_eq!(t.shared_path, vec![1, 2]);
        assert_eq!(t.part_sizes, (1, 2, 1));
    }

    #[test]
    fn k4_theta_contains_endpoints() {
        let g = Graph::new(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let t = find_theta(&g, 0, 3).unwrap();
        check(&g, &t);
        let vs = t.vertices();
        assert!(vs.contains(&0) && vs.contains(&3));
        assert_eq!(vs.len(), 4);
    }

    #[test]
    fn cycle_has_no_theta() {
        let g = Graph::new(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        assert_eq!(find_theta(&g, 0, 2), Err(ThetaError::NoTheta(0, 2)));
    }

    #[test]
    fn vertices_in_different_blocks() {
        let g = Graph::new(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).unwrap();
        assert_eq!(find_theta(&g, 0, 4), Err(ThetaError::NotInSameBlock(0, 4)));
    }

    #[test]
    fn blocks_of_bowtie_with_tail() {
        let g = Graph::new(6, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4), (4, 5)]).unwrap();
        let b = blocks(&g);
        assert_eq!(b, vec![(vec![0, 1, 2], 3), (vec![2, 3, 4], 3), (vec![4, 5], 1)]);
    }
}
