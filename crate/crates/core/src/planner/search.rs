use std::collections::HashSet;

use crate::config::{Configuration, Move};
use crate::graph::{Graph, Vertex};

/// Occupancy bitset over the vertices of a graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub(crate) struct Occupancy {
    words: Vec<u64>,
}

impl Occupancy {
    pub(crate) fn of(c: &Configuration, n: usize) -> Self {
        let mut words = vec![0; n.div_ceil(64)];
        for &v in c.placement() {
            words[v / 64] |= 1 << (v % 64);
        }
        Self { words }
    }

    pub(crate) fn full(&self, v: Vertex) -> bool {
        self.words[v / 64] >> (v % 64) & 1 == 1
    }

    pub(crate) fn empty(&self, v: Vertex) -> bool {
        !self.full(v)
    }

    fn flip(&mut self, v: Vertex) {
        self.words[v / 64] ^= 1 << (v % 64);
    }
}

/// Move generators available to the search: simple moves (optional) and
/// rotations of a fixed cycle list, in both directions.
pub(crate) struct MoveSpace<'a> {
    pub g: &'a Graph,
    pub cycles: &'a [Vec<Vertex>],
    pub simple: bool,
}

impl MoveSpace<'_> {
    fn successors(&self, occ: &Occupancy, mut visit: impl FnMut(Move)) {
        if self.simple {
            for v in 0..self.g.n() {
                if occ.full(v) {
                    for &u in self.g.neighbors(v) {
                        if occ.empty(u) {
                            visit(Move::simple(v, u));
                        }
                    }
                }
            }
        }
        for c in self.cycles {
            if c.iter().all(|&v| occ.full(v)) {
                visit(Move::rotation(c.clone()));
                visit(Move::rotation(c.iter().rev().copied().collect()));
            }
        }
    }
}

/// Where `m` sends whatever sits on `v`.
pub(crate) fn image(m: &Move, v: Vertex) -> Vertex {
    match m {
        Move::Simple { from, to } => {
            if v == *from {
                *to
            } else {
                v
            }
        }
        Move::Rotation { cycle } => match cycle.iter().position(|&x| x == v) {
            Some(i) => cycle[(i + 1) % cycle.len()],
            None => v,
        },
        Move::CompoundRotation { rotations } => rotations
            .iter()
            .find_map(|c| c.iter().position(|&x| x == v).map(|i| c[(i + 1) % c.len()]))
            .unwrap_or(v),
    }
}

fn step(occ: &Occupancy, m: &Move) -> Occupancy {
    let mut next = occ.clone();
    if let Move::Simple { from, to } = m {
        next.flip(*from);
        next.flip(*to);
    }
    next
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum SearchOutcome<T> {
    Found { prefix: Vec<Move>, hit: T },
    Exhausted,
    LimitReached,
}

/// Breadth-first search over (occupancy, positions of the tracked pebbles).
/// Every other pebble is anonymous. Stops at the first state for which
/// `goal` returns `Some`, yielding the move prefix that reaches it.
pub(crate) fn conjugating_search<T>(
    space: &MoveSpace<'_>,
    start: Occupancy,
    tracked: &[Vertex],
    max_states: usize,
    mut goal: impl FnMut(&Occupancy, &[Vertex]) -> Option<T>,
) -> SearchOutcome<T> {
    let mut states: Vec<(Occupancy, Vec<Vertex>)> = vec![(start.clone(), tracked.to_vec())];
    let mut parent: Vec<(usize, Option<Move>)> = vec![(0, None)];
    let mut seen: HashSet<(Occupancy, Vec<Vertex>)> = HashSet::new();
    seen.insert((start, tracked.to_vec()));
    let mut head = 0;
    while head < states.len() {
        let (occ, pos) = states[head].clone();
        if let Some(hit) = goal(&occ, &pos) {
            let mut prefix = Vec::new();
            let mut cur = head;
            while let (prev, Some(m)) = &parent[cur] {
                prefix.push(m.clone());
                cur = *prev;
            }
            prefix.reverse();
            return SearchOutcome::Found { prefix, hit };
        }
        let mut limit = false;
        space.successors(&occ, |m| {
            if limit {
                return;
            }
            let next_occ = step(&occ, &m);
            let next_pos: Vec<Vertex> = pos.iter().map(|&v| image(&m, v)).collect();
            let key = (next_occ, next_pos);
            if seen.contains(&key) {
                return;
            }
            if states.len() >= max_states {
                limit = true;
                return;
            }
            seen.insert(key.clone());
            states.push(key);
            parent.push((head, Some(m)));
        });
        if limit {
            return SearchOutcome::LimitReached;
        }
        head += 1;
    }
    SearchOutcome::Exhausted
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_a_route_on_a_path() {
        let g = Graph::new(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let c = Configuration::new(vec![0], 4).unwrap();
        let space = MoveSpace {
            g: &g,
            cycles: &[],
            simple: true,
        };
        let out = conjugating_search(&space, Occupancy::of(&c, 4), &[0], 100, |_, pos| {
            (pos[0] == 3).then_some(())
        });
        match out {
            SearchOutcome::Found { prefix, .. } => assert_eq!(prefix.len(), 3),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn rotation_images_follow_the_cycle() {
        let m = Move::rotation(vec![2, 5, 7]);
        assert_eq!(image(&m, 7), 2);
        assert_eq!(image(&m, 3), 3);
    }
}
