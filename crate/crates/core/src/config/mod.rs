//! Pebble configurations, moves, plans, and the plan verifier.
//!
//! Pebbles are numbered from zero internally; the text formats shift them to
//! `1..=p`.

mod permutation;

pub use permutation::{parity, permutation_between, Parity, Permutation, PermutationError};

use thiserror::Error;

use crate::graph::{normalize_cycle, Graph, Vertex};

pub type Pebble = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("vertex {vertex} holds more than one pebble")]
    NotInjective { vertex: Vertex },
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("{p} pebbles do not fit on {n} vertices")]
    TooManyPebbles { p: usize, n: usize },
}

/// Injective placement of pebbles: `placement[i]` is the vertex of pebble `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Configuration {
    placement: Vec<Vertex>,
}

impl Configuration {
    pub fn new(placement: Vec<Vertex>, n: usize) -> Result<Self, ConfigError> {
        if placement.len() > n {
            return Err(ConfigError::TooManyPebbles { p: placement.len(), n });
        }
        let mut seen = vec![false; n];
        for &v in &placement {
            if v >= n {
                return Err(ConfigError::VertexOutOfRange { vertex: v, n });
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(ConfigError::NotInjective { vertex: v });
            }
        }
        Ok(Self { placement })
    }

    pub(crate) fn from_vec_unchecked(placement: Vec<Vertex>) -> Self {
        Self { placement }
    }

    pub fn pebble_count(&self) -> usize {
        self.placement.len()
    }

    pub fn vertex_of(&self, pebble: Pebble) -> Vertex {
        self.placement[pebble]
    }

    pub fn placement(&self) -> &[Vertex] {
        &self.placement
    }

    /// Occupant of every vertex of an `n`-vertex graph.
    pub fn occupants(&self, n: usize) -> Vec<Option<Pebble>> {
        let mut occ = vec![None; n];
        for (i, &v) in self.placement.iter().enumerate() {
            occ[v] = Some(i);
        }
        occ
    }

    /// Sorted occupied vertex set.
    pub fn vertex_set(&self) -> Vec<Vertex> {
        let mut v = self.placement.clone();
        v.sort_unstable();
        v
    }

    /// Applies a vertex relabeling `map[old] = new`.
    pub fn relabeled(&self, map: &[Vertex]) -> Self {
        Self {
            placement: self.placement.iter().map(|&v| map[v]).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Move {
    /// A pebble slides along an edge into an empty vertex.
    Simple { from: Vertex, to: Vertex },
    /// The pebble on `cycle[i]` moves to `cycle[(i + 1) % k]`; the cycle must
    /// be fully occupied.
    Rotation { cycle: Vec<Vertex> },
    /// Simultaneous rotations on pairwise vertex-disjoint cycles. Only the
    /// oracle uses these; plans never contain them.
    CompoundRotation { rotations: Vec<Vec<Vertex>> },
}

impl Move {
    pub fn simple(from: Vertex, to: Vertex) -> Self {
        Move::Simple { from, to }
    }

    pub fn rotation(cycle: Vec<Vertex>) -> Self {
        Move::Rotation { cycle }
    }

    /// The move that undoes this one.
    pub fn inverse(&self) -> Self {
        match self {
            Move::Simple { from, to } => Move::Simple { from: *to, to: *from },
            Move::Rotation { cycle } => Move::Rotation {
                cycle: reversed_cycle(cycle),
            },
            Move::CompoundRotation { rotations } => Move::CompoundRotation {
                rotations: rotations.iter().map(|c| reversed_cycle(c)).collect(),
            },
        }
    }

    /// Same move with rotation cycles starting at their smallest vertex.
    pub fn normalized(&self) -> Self {
        match self {
            Move::Rotation { cycle } => Move::Rotation {
                cycle: normalize_cycle(cycle),
            },
            Move::CompoundRotation { rotations } => Move::CompoundRotation {
                rotations: rotations.iter().map(|c| normalize_cycle(c)).collect(),
            },
            m => m.clone(),
        }
    }

    pub fn is_rotation(&self) -> bool {
        !matches!(self, Move::Simple { .. })
    }
}

fn reversed_cycle(cycle: &[Vertex]) -> Vec<Vertex> {
    cycle.iter().rev().copied().collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("target vertex {0} is occupied")]
    TargetOccupied(Vertex),
    #[error("{0}-{1} is not an edge")]
    NotAnEdge(Vertex, Vertex),
    #[error("source vertex {0} is empty")]
    SourceEmpty(Vertex),
    #[error("cycle vertex {0} is empty")]
    CycleNotFull(Vertex),
    #[error("vertex sequence is not a simple cycle of the graph")]
    NotACycle,
    #[error("compound rotation cycles overlap at vertex {0}")]
    CyclesOverlap(Vertex),
}

/// Mutable configuration with an occupancy index, for applying long move
/// sequences without reallocating.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct State {
    placement: Vec<Vertex>,
    occupant: Vec<Option<Pebble>>,
}

impl State {
    pub fn new(c: &Configuration, n: usize) -> Self {
        Self {
            placement: c.placement.clone(),
            occupant: c.occupants(n),
        }
    }

    pub fn configuration(&self) -> Configuration {
        Configuration {
            placement: self.placement.clone(),
        }
    }

    pub fn occupant(&self, v: Vertex) -> Option<Pebble> {
        self.occupant[v]
    }

    pub fn is_empty(&self, v: Vertex) -> bool {
        self.occupant[v].is_none()
    }

    pub fn vertex_of(&self, pebble: Pebble) -> Vertex {
        self.placement[pebble]
    }

    pub fn occupants(&self) -> &[Option<Pebble>] {
        &self.occupant
    }

    /// Checks legality, then applies. On error the state is unchanged.
    pub fn apply(&mut self, g: &Graph, m: &Move) -> Result<(), MoveError> {
        self.check(g, m)?;
        self.apply_unchecked(m);
        Ok(())
    }

    pub fn check(&self, g: &Graph, m: &Move) -> Result<(), MoveError> {
        match m {
            Move::Simple { from, to } => {
                if !g.has_edge(*from, *to) {
                    return Err(MoveError::NotAnEdge(*from, *to));
                }
                if self.occupant[*from].is_none() {
                    return Err(MoveError::SourceEmpty(*from));
                }
                if self.occupant[*to].is_some() {
                    return Err(MoveError::TargetOccupied(*to));
                }
                Ok(())
            }
            Move::Rotation { cycle } => self.check_cycle(g, cycle),
            Move::CompoundRotation { rotations } => {
                let mut used = vec![false; g.n()];
                for cycle in rotations {
                    self.check_cycle(g, cycle)?;
                    for &v in cycle {
                        if std::mem::replace(&mut used[v], true) {
                            return Err(MoveError::CyclesOverlap(v));
                        }
                    }
                }
                Ok(())
            }
        }
    }

    fn check_cycle(&self, g: &Graph, cycle: &[Vertex]) -> Result<(), MoveError> {
        if !g.is_graph_cycle(cycle) {
            return Err(MoveError::NotACycle);
        }
        match cycle.iter().find(|&&v| self.occupant[v].is_none()) {
            Some(&v) => Err(MoveError::CycleNotFull(v)),
            None => Ok(()),
        }
    }

    pub fn apply_unchecked(&mut self, m: &Move) {
        match m {
            Move::Simple { from, to } => {
                let p = self.occupant[*from].take().expect("source occupied");
                self.occupant[*to] = Some(p);
                self.placement[p] = *to;
            }
            Move::Rotation { cycle } => self.rotate(cycle),
            Move::CompoundRotation { rotations } => {
                for c in rotations {
                    self.rotate(c);
                }
            }
        }
    }

    fn rotate(&mut self, cycle: &[Vertex]) {
        let k = cycle.len();
        let moved: Vec<Option<Pebble>> = cycle.iter().map(|&v| self.occupant[v]).collect();
        for i in 0..k {
            let to = cycle[(i + 1) % k];
            self.occupant[to] = moved[i];
            if let Some(p) = moved[i] {
                self.placement[p] = to;
            }
        }
    }
}

/// Applies one move, returning the new configuration.
pub fn apply_move(g: &Graph, c: &Configuration, m: &Move) -> Result<Configuration, MoveError> {
    let mut s = State::new(c, g.n());
    s.apply(g, m)?;
    Ok(s.configuration())
}

/// An ordered sequence of moves.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Plan {
    pub moves: Vec<Move>,
}

impl Plan {
    pub fn new(moves: Vec<Move>) -> Self {
        Self { moves }
    }

    pub fn move_count(&self) -> usize {
        self.moves.len()
    }

    pub fn rotation_count(&self) -> usize {
        self.moves.iter().filter(|m| m.is_rotation()).count()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    /// The plan that undoes this one.
    pub fn inverse(&self) -> Plan {
        Plan {
            moves: self.moves.iter().rev().map(Move::inverse).collect(),
        }
    }

    pub fn extend(&mut self, other: Plan) {
        self.moves.extend(other.moves);
    }

    pub fn normalized(&self) -> Plan {
        Plan {
            moves: self.moves.iter().map(Move::normalized).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RejectReason {
    Illegal(MoveError),
    /// Every move was legal but the final configuration differs from the goal.
    WrongFinal,
    /// Start and goal disagree on the number of pebbles.
    PebbleCountMismatch,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verification {
    Verified,
    /// `step` is the index of the offending move, or the plan length for a
    /// wrong final configuration.
    Rejected {
        step: usize,
        reason: RejectReason,
    },
}

impl Verification {
    pub fn is_verified(&self) -> bool {
        matches!(self, Verification::Verified)
    }
}

/// Replays `plan` from `s` and checks that every move is legal and that it
/// ends exactly at `d`.
pub fn verify_plan(g: &Graph, s: &Configuration, d: &Configuration, plan: &Plan) -> Verification {
    if s.pebble_count() != d.pebble_count() {
        return Verification::Rejected {
            step: 0,
            reason: RejectReason::PebbleCountMismatch,
        };
    }
    let mut state = State::new(s, g.n());
    for (step, m) in plan.moves.iter().enumerate() {
        if let Err(e) = state.apply(g, m) {
            return Verification::Rejected {
                step,
                reason: RejectReason::Illegal(e),
            };
        }
    }
    if state.placement == d.placement {
        Verification::Verified
    } else {
        Verification::Rejected {
            step: plan.moves.len(),
            reason: RejectReason::WrongFinal,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tri() -> Graph {
        Graph::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    fn c4() -> Graph {
        Graph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap()
    }

    #[test]
    fn rotation_shifts_along_the_cycle() {
        let s = Configuration::new(vec![0, 1, 2], 3).unwrap();
        let t = apply_move(&tri(), &s, &Move::rotation(vec![0, 1, 2])).unwrap();
        assert_eq!(t.placement(), &[1, 2, 0]);
    }

    #[test]
    fn illegal_moves_are_reported() {
        let s = Configuration::new(vec![0, 1], 4).unwrap();
        assert_eq!(
            apply_move(&c4(), &s, &Move::simple(0, 1)),
            Err(MoveError::TargetOccupied(1))
        );
        assert_eq!(
            apply_move(&c4(), &s, &Move::simple(0, 2)),
            Err(MoveError::NotAnEdge(0, 2))
        );
        assert_eq!(
            apply_move(&c4(), &s, &Move::simple(3, 2)),
            Err(MoveError::SourceEmpty(3))
        );
        let s = Configuration::new(vec![0, 1], 3).unwrap();
        assert_eq!(
            apply_move(&tri(), &s, &Move::rotation(vec![0, 1, 2])),
            Err(MoveError::CycleNotFull(2))
        );
        let full = Configuration::new(vec![0, 1, 2, 3], 4).unwrap();
        assert_eq!(
            apply_move(&c4(), &full, &Move::rotation(vec![0, 1, 3, 2])),
            Err(MoveError::NotACycle)
        );
    }

    #[test]
    fn compound_rotation_rejects_overlap() {
        let bowtie = Graph::new(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).unwrap();
        let s = Configuration::new(vec![0, 1, 2, 3, 4], 5).unwrap();
        let m = Move::CompoundRotation {
            rotations: vec![vec![0, 1, 2], vec![2, 3, 4]],
        };
        assert_eq!(apply_move(&bowtie, &s, &m), Err(MoveError::CyclesOverlap(2)));
    }

    #[test]
    fn verify_plan_examples() {
        let g = tri();
        let s = Configuration::new(vec![0, 1, 2], 3).unwrap();
        assert!(verify_plan(&g, &s, &s, &Plan::default()).is_verified());
        let d = Configuration::new(vec![1, 2, 0], 3).unwrap();
        let plan = Plan::new(vec![Move::rotation(vec![0, 1, 2])]);
        assert!(verify_plan(&g, &s, &d, &plan).is_verified());
        assert_eq!(
            verify_plan(&g, &s, &s, &plan),
            Verification::Rejected {
                step: 1,
                reason: RejectReason::WrongFinal
            }
        );

        let holey = Configuration::new(vec![0, 1], 3).unwrap();
        assert_eq!(
            verify_plan(&g, &holey, &holey, &plan),
            Verification::Rejected {
                step: 0,
                reason: RejectReason::Illegal(MoveError::CycleNotFull(2))
            }
        );
    }

    #[test]
    fn inverse_move_restores() {
        let g = c4();
        let s = Configuration::new(vec![0, 1, 2], 4).unwrap();
        let m = Move::simple(2, 3);
        let t = apply_move(&g, &s, &m).unwrap();
        assert_eq!(apply_move(&g, &t, &m.inverse()).unwrap(), s);

        let full = Configuration::new(vec![3, 1, 0, 2], 4).unwrap();
        let r = Move::rotation(vec![0, 1, 2, 3]);
        let t = apply_move(&g, &full, &r).unwrap();
        assert_eq!(apply_move(&g, &t, &r.inverse()).unwrap(), full);
    }

    #[test]
    fn configuration_validation() {
        assert_eq!(
            Configuration::new(vec![0, 0], 3),
            Err(ConfigError::NotInjective { vertex: 0 })
        );
        assert_eq!(
            Configuration::new(vec![5], 3),
            Err(ConfigError::VertexOutOfRange { vertex: 5, n: 3 })
        );
    }
}
