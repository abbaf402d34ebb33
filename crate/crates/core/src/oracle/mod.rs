//! Brute-force ground truth: breadth-first search over configuration space.
//!
//! Everything here is exponential and meant for graphs with a handful of
//! vertices. States are packed positionally (vertex of pebble `i` in a fixed
//! bit field), so the visited sets are exact.

mod atlas;
mod group;

pub use atlas::ReachabilityAtlas;
pub use group::{group_stats, Classification, GeneratorMode, GroupStats};

use std::collections::{HashMap, HashSet, VecDeque};

use thiserror::Error;

use crate::config::{Configuration, Move, Plan};
use crate::feasibility::Instance;
use crate::graph::{simple_cycles, CycleSetError, Graph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("state space exceeds the limit of {0} states")]
    StateSpaceTooLarge(usize),
    #[error(transparent)]
    Cycles(#[from] CycleSetError),
}

/// Which moves the search may use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MoveSet {
    SimpleOnly,
    WithRotations,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_states: usize,
    pub max_cycles: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            max_states: 5_000_000,
            max_cycles: 10_000,
        }
    }
}

/// Positional bit packing of a placement.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Packer {
    bits: u32,
    p: usize,
}

impl Packer {
    pub(crate) fn new(n: usize, p: usize) -> Option<Self> {
        let bits = usize::BITS - (n.max(2) - 1).leading_zeros();
        (bits as usize * p <= 128).then_some(Self { bits, p })
    }

    pub(crate) fn pack(&self, placement: &[Vertex]) -> u128 {
        placement
            .iter()
            .enumerate()
            .fold(0u128, |acc, (i, &v)| acc | (v as u128) << (self.bits as usize * i))
    }

    pub(crate) fn unpack(&self, key: u128, out: &mut Vec<Vertex>) {
        let mask = (1u128 << self.bits) - 1;
        out.clear();
        out.extend((0..self.p).map(|i| ((key >> (self.bits as usize * i)) & mask) as Vertex));
    }
}

/// Successor generator over placements.
pub(crate) struct Expander<'a> {
    g: &'a Graph,
    cycles: Vec<Vec<Vertex>>,
    moves: MoveSet,
    occupant: Vec<usize>,
}

const EMPTY: usize = usize::MAX;

impl<'a> Expander<'a> {
    pub(crate) fn new(g: &'a Graph, moves: MoveSet, limits: &Limits) -> Result<Self, OracleError> {
        let cycles = match moves {
            MoveSet::SimpleOnly => Vec::new(),
            MoveSet::WithRotations => simple_cycles(g, limits.max_cycles)?,
        };
        Ok(Self {
            g,
            cycles,
            moves,
            occupant: vec![EMPTY; g.n()],
        })
    }

    /// Calls `visit(next_placement, move)` for each legal successor.
    pub(crate) fn for_each(&mut self, placement: &[Vertex], mut visit: impl FnMut(&[Vertex], Move)) {
        self.occupant.iter_mut().for_each(|o| *o = EMPTY);
        for (i, &v) in placement.iter().enumerate() {
            self.occupant[v] = i;
        }
        let mut next = placement.to_vec();
        for (i, &v) in placement.iter().enumerate() {
            for &w in self.g.neighbors(v) {
                if self.occupant[w] == EMPTY {
                    next[i] = w;
                    visit(&next, Move::simple(v, w));
                    next[i] = v;
                }
            }
        }
        if self.moves == MoveSet::SimpleOnly {
            return;
        }
        for c in &self.cycles {
            if c.iter().any(|&v| self.occupant[v] == EMPTY) {
                continue;
            }
            let k = c.len();
            for dir in [1, k - 1] {
                for j in 0..k {
                    next[self.occupant[c[j]]] = c[(j + dir) % k];
                }
                let cycle = if dir == 1 {
                    c.clone()
                } else {
                    c.iter().rev().copied().collect()
                };
                visit(&next, Move::rotation(cycle));
                for &v in c {
                    next[self.occupant[v]] = v;
                }
            }
        }
    }
}

/// True iff `inst.goal` is reachable from `inst.start` using simple moves and
/// single-cycle rotations.
pub fn oracle_decide(inst: &Instance, limits: &Limits) -> Result<bool, OracleError> {
    oracle_decide_with(inst, MoveSet::WithRotations, limits)
}

pub fn oracle_decide_with(inst: &Instance, moves: MoveSet, limits: &Limits) -> Result<bool, OracleError> {
    Ok(oracle_search(inst, moves, limits, false)?.is_some())
}

/// Shortest plan from start to goal, if one exists.
pub fn oracle_plan(inst: &Instance, moves: MoveSet, limits: &Limits) -> Result<Option<Plan>, OracleError> {
    oracle_search(inst, moves, limits, true)
}

fn oracle_search(
    inst: &Instance,
    moves: MoveSet,
    limits: &Limits,
    want_plan: bool,
) -> Result<Option<Plan>, OracleError> {
    let g = &inst.graph;
    let packer = Packer::new(g.n(), inst.p()).ok_or(OracleError::StateSpaceTooLarge(limits.max_states))?;
    let start = packer.pack(inst.start.placement());
    let goal = packer.pack(inst.goal.placement());
    if start == goal {
        return Ok(Some(Plan::default()));
    }
    let mut expander = Expander::new(g, moves, limits)?;
    let mut parents: HashMap<u128, (u128, Move)> = HashMap::new();
    let mut seen: HashSet<u128> = HashSet::from([start]);
    let mut queue = VecDeque::from([start]);
    let mut buf = Vec::new();
    while let Some(key) = queue.pop_front() {
        packer.unpack(key, &mut buf);
        let mut found = false;
        expander.for_each(&buf, |next, m| {
            if found {
                return;
            }
            let k = packer.pack(next);
            if seen.insert(k) {
                if want_plan {
                    parents.insert(k, (key, m));
                }
                if k == goal {
                    found = true;
                }
                queue.push_back(k);
            }
        });
        if found {
            if !want_plan {
                return Ok(Some(Plan::default()));
            }
            let mut moves = Vec::new();
            let mut cur = goal;
            while cur != start {
                let (prev, m) = parents.remove(&cur).unwrap();
                moves.push(m);
                cur = prev;
            }
            moves.reverse();
            return Ok(Some(Plan::new(moves)));
        }
        if seen.len() > limits.max_states {
            return Err(OracleError::StateSpaceTooLarge(limits.max_states));
        }
    }
    Ok(None)
}

/// Every configuration reachable from `start`.
pub fn reachable_set(
    g: &Graph,
    start: &Configuration,
    moves: MoveSet,
    limits: &Limits,
) -> Result<Vec<Configuration>, OracleError> {
    let packer = Packer::new(g.n(), start.pebble_count()).ok_or(OracleError::StateSpaceTooLarge(limits.max_states))?;
    let mut expander = Expander::new(g, moves, limits)?;
    let first = packer.pack(start.placement());
    let mut seen: HashSet<u128> = HashSet::from([first]);
    let mut order = vec![first];
    let mut head = 0;
    let mut buf = Vec::new();
    while head < order.len() {
        packer.unpack(order[head], &mut buf);
        head += 1;
        expander.for_each(&buf, |next, _| {
            let k = packer.pack(next);
            if seen.insert(k) {
                order.push(k);
            }
        });
        if seen.len() > limits.max_states {
            return Err(OracleError::StateSpaceTooLarge(limits.max_states));
        }
    }
    Ok(order
        .into_iter()
        .map(|k| {
            packer.unpack(k, &mut buf);
            Configuration::from_vec_unchecked(buf.clone())
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst(n: usize, edges: &[(usize, usize)], s: Vec<usize>, d: Vec<usize>) -> Instance {
        Instance::from_parts(n, edges, s, d).unwrap()
    }

    const C4: &[(usize, usize)] = &[(0, 1), (1, 2), (2, 3), (3, 0)];
    const BOWTIE: &[(usize, usize)] = &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)];

    #[test]
    fn cycle_shift_is_one_rotation() {
        let i = inst(4, C4, vec![0, 1, 2, 3], vec![1, 2, 3, 0]);
        assert!(oracle_decide(&i, &Limits::default()).unwrap());
        let plan = oracle_plan(&i, MoveSet::WithRotations, &Limits::default())
            .unwrap()
            .unwrap();
        assert_eq!(plan.move_count(), 1);
    }

    #[test]
    fn bowtie_transposition_is_unreachable() {
        let i = inst(5, BOWTIE, vec![0, 1, 2, 3, 4], vec![1, 0, 2, 3, 4]);
        assert!(!oracle_decide(&i, &Limits::default()).unwrap());
        let all = reachable_set(&i.graph, &i.start, MoveSet::WithRotations, &Limits::default()).unwrap();
        assert_eq!(all.len(), 60);
    }

    #[test]
    fn path_swap_is_unreachable() {
        let i = inst(3, &[(0, 1), (1, 2)], vec![0, 1], vec![1, 0]);
        assert!(!oracle_decide(&i, &Limits::default()).unwrap());
    }

    #[test]
    fn limit_is_enforced() {
        let i = inst(5, BOWTIE, vec![0, 1, 2, 3, 4], vec![1, 0, 2, 3, 4]);
        let limits = Limits {
            max_states: 10,
            ..Limits::default()
        };
        assert_eq!(oracle_decide(&i, &limits), Err(OracleError::StateSpaceTooLarge(10)));
    }

    #[test]
    fn packer_roundtrip() {
        let p = Packer::new(10, 4).unwrap();
        let mut out = Vec::new();
        p.unpack(p.pack(&[9, 0, 3, 7]), &mut out);
        assert_eq!(out, vec![9, 0, 3, 7]);
    }
}
