use std::collections::HashSet;

use super::search::{image, Occupancy};
use crate::config::Move;
use crate::graph::{find_theta, normalize_cycle, Graph, TeccDecomposition, ThetaSubgraph, Vertex};

/// One shortest cycle through every non-bridge edge, deduplicated, each
/// starting at its smallest vertex.
pub(crate) fn covering_cycles(g: &Graph, tecc: &TeccDecomposition) -> Vec<Vec<Vertex>> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for &(u, v) in g.edges() {
        let Some(t) = tecc.tecc_of[u] else { continue };
        if tecc.tecc_of[v] != Some(t) {
            continue;
        }
        let path = detour(g, u, v, |w| tecc.tecc_of[w] == Some(t));
        if let Some(cycle) = path {
            push_unique(&mut seen, &mut out, cycle);
        }
    }
    out
}

/// Shortest `u`-`v` path that does not use the edge `(u, v)` itself.
fn detour(g: &Graph, u: Vertex, v: Vertex, allowed: impl Fn(Vertex) -> bool) -> Option<Vec<Vertex>> {
    g.neighbors(u)
        .iter()
        .filter(|&&w| w != v && allowed(w))
        .filter_map(|&w| {
            g.shortest_path_filtered(w, v, |x| x != u && allowed(x)).map(|mut p| {
                p.insert(0, u);
                p
            })
        })
        .min_by_key(|p| p.len())
}

pub(crate) fn push_unique(seen: &mut HashSet<Vec<Vertex>>, out: &mut Vec<Vec<Vertex>>, cycle: Vec<Vertex>) {
    let forward = normalize_cycle(&cycle);
    let backward = normalize_cycle(&cycle.iter().rev().copied().collect::<Vec<_>>());
    let key = forward.clone().min(backward);
    if seen.insert(key) {
        out.push(forward);
    }
}

/// One theta per TECC that has one, found from the first vertex of degree
/// at least three inside the TECC that sits in a non-cycle block.
pub(crate) fn thetas(g: &Graph, tecc: &TeccDecomposition) -> Vec<ThetaSubgraph> {
    let mut out = Vec::new();
    for (t, members) in tecc.teccs.iter().enumerate() {
        let found = members.iter().find_map(|&u| {
            let inside: Vec<Vertex> = g
                .neighbors(u)
                .iter()
                .copied()
                .filter(|&w| tecc.tecc_of[w] == Some(t))
                .collect();
            if inside.len() < 3 {
                return None;
            }
            inside.iter().find_map(|&v| find_theta(g, u, v).ok())
        });
        out.extend(found);
    }
    out
}

/// Rotations, in application order, that transpose the pebbles on `b_1`
/// and `c_1` of a fully occupied theta.
pub(crate) fn theta_moves(theta: &ThetaSubgraph) -> Vec<Move> {
    vec![
        Move::rotation(theta.outer_cycle.iter().rev().copied().collect()),
        Move::rotation(theta.left_cycle.clone()),
        Move::rotation(theta.right_cycle.clone()),
    ]
}

/// Vertex-level swap gadgets usable when the tracked pebbles sit on `x` and
/// `y`. Returns the local move sequence exchanging them, if any applies.
pub(crate) struct SwapGadgets<'a> {
    pub g: &'a Graph,
    pub cycles: &'a [Vec<Vertex>],
    pub cycles_at: Vec<Vec<usize>>,
    pub thetas: &'a [ThetaSubgraph],
}

impl<'a> SwapGadgets<'a> {
    pub(crate) fn new(g: &'a Graph, cycles: &'a [Vec<Vertex>], thetas: &'a [ThetaSubgraph]) -> Self {
        let mut cycles_at = vec![Vec::new(); g.n()];
        for (i, c) in cycles.iter().enumerate() {
            for &v in c {
                cycles_at[v].push(i);
            }
        }
        Self {
            g,
            cycles,
            cycles_at,
            thetas,
        }
    }

    pub(crate) fn find(&self, occ: &Occupancy, x: Vertex, y: Vertex) -> Option<Vec<Move>> {
        self.fork(occ, x, y)
            .or_else(|| self.cycle_with_hole(occ, x, y))
            .or_else(|| self.theta(occ, x, y))
    }

    /// Common empty neighbor `w` of degree at least three with a further
    /// empty neighbor `c`: park one pebble on `c`, pass the other through.
    fn fork(&self, occ: &Occupancy, x: Vertex, y: Vertex) -> Option<Vec<Move>> {
        for &w in self.g.neighbors(x) {
            if occ.full(w) || self.g.degree(w) < 3 || !self.g.has_edge(w, y) {
                continue;
            }
            let Some(&c) = self.g.neighbors(w).iter().find(|&&c| c != x && c != y && occ.empty(c)) else {
                continue;
            };
            return Some(vec![
                Move::simple(x, w),
                Move::simple(w, c),
                Move::simple(y, w),
                Move::simple(w, x),
                Move::simple(c, w),
                Move::simple(w, y),
            ]);
        }
        None
    }

    /// Full cycle `c_0 c_1 .. c_{k-1}` through the edge `x y` with an empty
    /// vertex `z` off the cycle next to `c_0`. Parking `c_0`'s pebble on `z`
    /// and walking the hole once around shifts the other `k - 1` pebbles
    /// back by one; after returning the parked pebble, one rotation forward
    /// leaves only `c_0` and `c_1` exchanged.
    fn cycle_with_hole(&self, occ: &Occupancy, x: Vertex, y: Vertex) -> Option<Vec<Move>> {
        if !self.g.has_edge(x, y) {
            return None;
        }
        for &ci in &self.cycles_at[x] {
            let cycle = &self.cycles[ci];
            if !cycle.iter().all(|&v| occ.full(v)) {
                continue;
            }
            let k = cycle.len();
            let i = cycle.iter().position(|&v| v == x).unwrap();
            let oriented: Vec<Vertex> = if cycle[(i + 1) % k] == y {
                (0..k).map(|j| cycle[(i + j) % k]).collect()
            } else if cycle[(i + k - 1) % k] == y {
                (0..k).map(|j| cycle[(i + k - j) % k]).collect()
            } else {
                continue;
            };
            for c in [oriented.clone(), swap_front(&oriented)] {
                let z = self
                    .g
                    .neighbors(c[0])
                    .iter()
                    .copied()
                    .find(|&z| occ.empty(z) && !c.contains(&z));
                if let Some(z) = z {
                    let mut moves = vec![Move::simple(c[0], z)];
                    for j in 1..k {
                        moves.push(Move::simple(c[j], c[j - 1]));
                    }
                    moves.push(Move::simple(c[0], c[k - 1]));
                    moves.push(Move::simple(z, c[0]));
                    moves.push(Move::rotation(c.clone()));
                    return Some(moves);
                }
            }
        }
        None
    }

    fn theta(&self, occ: &Occupancy, x: Vertex, y: Vertex) -> Option<Vec<Move>> {
        self.thetas
            .iter()
            .find(|t| {
                let (b, c) = (t.b1(), t.c1());
                ((x, y) == (b, c) || (x, y) == (c, b)) && t.vertices().iter().all(|&v| occ.full(v))
            })
            .map(theta_moves)
    }
}

/// The same cycle traversed from `c[1]` backwards, so that `c[0]` and
/// `c[1]` trade roles.
fn swap_front(c: &[Vertex]) -> Vec<Vertex> {
    let k = c.len();
    (0..k).map(|j| c[(1 + k - j) % k]).collect()
}

/// A fixed rotation sequence that cycles the pebbles on `positions`
/// (`positions[0]`'s pebble goes to `positions[1]`, and so on) and fixes
/// every other pebble.
#[derive(Debug, Clone)]
pub(crate) struct ThreeCycle {
    pub positions: [Vertex; 3],
    pub moves: Vec<Move>,
}

/// Commutators of rotations on cycles that share exactly one vertex; each is
/// a 3-cycle.
pub(crate) fn commutator_three_cycles(cycles: &[Vec<Vertex>]) -> Vec<ThreeCycle> {
    let mut out = Vec::new();
    for (i, a) in cycles.iter().enumerate() {
        for b in &cycles[i + 1..] {
            if a.iter().filter(|v| b.contains(v)).count() != 1 {
                continue;
            }
            let ar: Vec<Vertex> = a.iter().rev().copied().collect();
            let br: Vec<Vertex> = b.iter().rev().copied().collect();
            for (l, r) in [(a, b), (a, &br), (&ar, b), (&ar, &br)] {
                let moves = vec![
                    Move::rotation(l.clone()),
                    Move::rotation(r.clone()),
                    Move::rotation(l.iter().rev().copied().collect()),
                    Move::rotation(r.iter().rev().copied().collect()),
                ];
                if let Some(positions) = as_three_cycle(&moves) {
                    out.push(ThreeCycle { positions, moves });
                }
            }
        }
    }
    out
}

fn as_three_cycle(moves: &[Move]) -> Option<[Vertex; 3]> {
    let mut support: Vec<Vertex> = Vec::new();
    for m in moves {
        if let Move::Rotation { cycle } = m {
            support.extend(cycle);
        }
    }
    support.sort_unstable();
    support.dedup();
    let dest = |v: Vertex| moves.iter().fold(v, |acc, m| image(m, acc));
    let moved: Vec<Vertex> = support.iter().copied().filter(|&v| dest(v) != v).collect();
    if moved.len() != 3 {
        return None;
    }
    let a = moved[0];
    Some([a, dest(a), dest(dest(a))])
}

/// Shortest sequence of rotations of `cycles` (either direction) whose
/// combined vertex map satisfies `goal`. Breadth-first over the group they
/// generate; gives up once `cap` elements have been seen. Returns the moves
/// and the vertex map (where the pebble on `v` ends up).
pub(crate) fn shortest_word(
    cycles: &[Vec<Vertex>],
    cap: usize,
    goal: impl Fn(&dyn Fn(Vertex) -> Vertex) -> bool,
) -> Option<(Vec<Move>, impl Fn(Vertex) -> Vertex)> {
    let mut points: Vec<Vertex> = cycles.iter().flatten().copied().collect();
    points.sort_unstable();
    points.dedup();
    let local = |v: Vertex| points.binary_search(&v).ok();
    let mut gens: Vec<(Move, Vec<u16>)> = Vec::new();
    for c in cycles {
        for m in [
            Move::rotation(c.clone()),
            Move::rotation(c.iter().rev().copied().collect()),
        ] {
            let step: Vec<u16> = points.iter().map(|&v| local(image(&m, v)).unwrap() as u16).collect();
            gens.push((m, step));
        }
    }
    let identity: Vec<u16> = (0..points.len() as u16).collect();
    let mut index = std::collections::HashMap::from([(identity.clone(), 0usize)]);
    let mut nodes: Vec<(Vec<u16>, usize, Option<usize>)> = vec![(identity, 0, None)];
    let mut head = 0;
    while head < nodes.len() {
        let perm = nodes[head].0.clone();
        let as_map = |v: Vertex| local(v).map_or(v, |i| points[perm[i] as usize]);
        if goal(&as_map) {
            let mut word = Vec::new();
            let mut cur = head;
            while let Some(gi) = nodes[cur].2 {
                word.push(gens[gi].0.clone());
                cur = nodes[cur].1;
            }
            word.reverse();
            let pts = points.clone();
            return Some((word, move |v: Vertex| {
                pts.binary_search(&v).map_or(v, |i| pts[perm[i] as usize])
            }));
        }
        for (gi, (_, step)) in gens.iter().enumerate() {
            let next: Vec<u16> = perm.iter().map(|&p| step[p as usize]).collect();
            if index.contains_key(&next) {
                continue;
            }
            if nodes.len() >= cap {
                return None;
            }
            index.insert(next.clone(), nodes.len());
            nodes.push((next, head, Some(gi)));
        }
        head += 1;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{Configuration, State};
    use crate::graph::tecc_decomposition;

    fn run(g: &Graph, c: &Configuration, moves: &[Move]) -> Configuration {
        let mut st = State::new(c, g.n());
        for m in moves {
            st.apply(g, m).unwrap();
        }
        st.configuration()
    }

    #[test]
    fn theta4_transposition_is_three_rotations() {
        let g = Graph::new(4, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]).unwrap();
        let t = find_theta(&g, 1, 3).unwrap();
        let c = Configuration::new(vec![0, 1, 2, 3], 4).unwrap();
        let out = run(&g, &c, &theta_moves(&t));
        let mut want = c.placement().to_vec();
        want.swap(t.b1(), t.c1());
        assert_eq!(out.placement(), &want[..]);
    }

    #[test]
    fn theta_with_long_arms() {
        // b-path 0-1-2, a-arm 0-3-4-2, c-arm 0-5-6-2
        let e = [(0, 1), (1, 2), (0, 3), (3, 4), (4, 2), (0, 5), (5, 6), (6, 2)];
        let g = Graph::new(7, &e).unwrap();
        let t = find_theta(&g, 0, 2).unwrap();
        let c = Configuration::new((0..7).collect(), 7).unwrap();
        let out = run(&g, &c, &theta_moves(&t));
        let mut want: Vec<Vertex> = (0..7).collect();
        want.swap(t.b1(), t.c1());
        assert_eq!(out.placement(), &want[..]);
    }

    #[test]
    fn cycle_gadget_swaps_neighbors() {
        // C5 with pendant 5 on vertex 0
        let g = Graph::new(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4), (0, 5)]).unwrap();
        let d = tecc_decomposition(&g);
        let cycles = covering_cycles(&g, &d);
        let gadgets = SwapGadgets::new(&g, &cycles, &[]);
        let c = Configuration::new(vec![0, 1, 2, 3, 4], 6).unwrap();
        let occ = Occupancy::of(&c, 6);
        for (x, y) in [(0, 1), (4, 0)] {
            let moves = gadgets.find(&occ, x, y).unwrap();
            let out = run(&g, &c, &moves);
            let mut want = c.placement().to_vec();
            want.swap(x, y);
            assert_eq!(out.placement(), &want[..]);
        }
    }

    #[test]
    fn bowtie_commutators_are_three_cycles() {
        let g = Graph::new(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).unwrap();
        let d = tecc_decomposition(&g);
        let cycles = covering_cycles(&g, &d);
        assert_eq!(cycles.len(), 2);
        let three = commutator_three_cycles(&cycles);
        assert_eq!(three.len(), 4);
        let c = Configuration::new((0..5).collect(), 5).unwrap();
        for t in &three {
            let out = run(&g, &c, &t.moves);
            let [a, b, cc] = t.positions;
            assert_eq!(out.vertex_of(a), b);
            assert_eq!(out.vertex_of(b), cc);
            assert_eq!(out.vertex_of(cc), a);
        }
    }
}
