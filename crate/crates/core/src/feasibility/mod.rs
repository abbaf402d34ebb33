//! Polynomial-time feasibility test.
//!
//! [`decide`] dispatches on the shape of the graph and the number of
//! pebbles: trees and cycles have direct tests, fully occupied graphs split
//! into independent TECC groups, and everything else is first reduced to a
//! permutation problem on a fixed vertex set and then decided through
//! equivalence classes of exchangeable pebbles.

mod classes;
mod instance;
mod mark;
mod reduce;

pub use classes::{classes_one_empty, EquivalenceClasses};
pub use instance::{Instance, InstanceError};
pub use mark::{adjacent_equivalent, mark_classes, subtree_stats, SubtreeStats};
pub use reduce::{make_rpp, reconfigure_to_target_set, RppInstance};

use crate::config::{Configuration, Parity};
use crate::graph::{analyze_cactus, skeleton_tree, tecc_decomposition, Graph, TeccDecomposition, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InfeasibleReason {
    /// A vertex outside every TECC holds different pebbles in start and goal
    /// of a fully occupied graph.
    BranchPebbleMismatch,
    /// Some TECC holds different pebble sets in start and goal.
    TeccMembershipMismatch,
    /// The permutation on an all-odd cactus TECC is odd.
    ParityMismatch,
    /// The goal is not a cyclic shift of the start along a cycle.
    CyclicOrderMismatch,
    /// Some pebble must end in a different equivalence class.
    ClassMismatch,
    /// A fully occupied tree cannot move at all.
    FrozenTreeMismatch,
}

impl InfeasibleReason {
    pub fn name(self) -> &'static str {
        match self {
            InfeasibleReason::BranchPebbleMismatch => "BranchPebbleMismatch",
            InfeasibleReason::TeccMembershipMismatch => "TeccMembershipMismatch",
            InfeasibleReason::ParityMismatch => "ParityMismatch",
            InfeasibleReason::CyclicOrderMismatch => "CyclicOrderMismatch",
            InfeasibleReason::ClassMismatch => "ClassMismatch",
            InfeasibleReason::FrozenTreeMismatch => "FrozenTreeMismatch",
        }
    }
}

impl std::fmt::Display for InfeasibleReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Feasible,
    Infeasible(InfeasibleReason),
}

/// Which test settled the instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    Tree,
    Cycle,
    Full,
    OneEmpty,
    FewPebbles,
    Rearranged,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decision {
    pub verdict: Verdict,
    pub route: Route,
    /// Classes of the reduced start configuration, when computed.
    pub classes: Option<EquivalenceClasses>,
    /// Parity of the offending TECC permutation for parity failures.
    pub parity: Option<Parity>,
}

impl Decision {
    fn new(verdict: Verdict, route: Route) -> Self {
        Self {
            verdict,
            route,
            classes: None,
            parity: None,
        }
    }

    pub fn is_feasible(&self) -> bool {
        self.verdict == Verdict::Feasible
    }

    pub fn reason(&self) -> Option<InfeasibleReason> {
        match self.verdict {
            Verdict::Feasible => None,
            Verdict::Infeasible(r) => Some(r),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TeccClass {
    Cycle,
    CactusAllOdd,
    CactusWithEven,
    Other,
}

pub fn classify_tecc(g: &Graph, tecc: &[Vertex]) -> TeccClass {
    let mut inside = vec![false; g.n()];
    for &v in tecc {
        inside[v] = true;
    }
    if tecc
        .iter()
        .all(|&v| g.neighbors(v).iter().filter(|&&w| inside[w]).count() == 2)
    {
        return TeccClass::Cycle;
    }
    match analyze_cactus(g, tecc) {
        Some(info) if info.has_even_cycle => TeccClass::CactusWithEven,
        Some(_) => TeccClass::CactusAllOdd,
        None => TeccClass::Other,
    }
}

pub fn decide(inst: &Instance) -> Decision {
    let g = &inst.graph;
    let (n, p) = (inst.n(), inst.p());
    let (s, d) = (&inst.start, &inst.goal);

    if g.is_cycle() {
        let order = cycle_order(g, &(0..n).collect::<Vec<_>>());
        let verdict = if same_cyclic_order(&order, s, d, n) {
            Verdict::Feasible
        } else {
            Verdict::Infeasible(InfeasibleReason::CyclicOrderMismatch)
        };
        return Decision::new(verdict, Route::Cycle);
    }
    if p == n {
        return decide_full(inst);
    }

    let tecc = tecc_decomposition(g);
    let tree = g.bfs_spanning_tree(0);
    let (s1, _) = reconfigure_to_target_set(&tree, s, &d.vertex_set());
    let skeleton = skeleton_tree(g, &tecc).expect("contracting TECCs always yields a tree");

    let (route, classes, goal) = if g.is_tree() {
        (Route::Tree, mark_classes(g, &skeleton, &s1), d.clone())
    } else if p + 1 == n {
        (Route::OneEmpty, classes_one_empty(g, &tecc, &skeleton, &s1), d.clone())
    } else if p < tecc.n_tecc_vertices {
        return Decision::new(Verdict::Feasible, Route::FewPebbles);
    } else {
        let rpp = make_rpp(g, &tecc, &s1, d);
        (Route::Rearranged, mark_classes(g, &skeleton, &rpp.start), rpp.goal)
    };
    let verdict = if classes.admits(&goal) {
        Verdict::Feasible
    } else {
        Verdict::Infeasible(InfeasibleReason::ClassMismatch)
    };
    Decision {
        verdict,
        route,
        classes: Some(classes),
        parity: None,
    }
}

/// Fully occupied graphs: pebbles off the TECCs are frozen and each TECC
/// permutes its own pebbles according to its structure.
pub fn decide_full(inst: &Instance) -> Decision {
    let g = &inst.graph;
    let n = g.n();
    let (s, d) = (&inst.start, &inst.goal);
    let tecc = tecc_decomposition(g);
    let route = if g.is_tree() { Route::Tree } else { Route::Full };
    let so = s.occupants(n);
    let dof = d.occupants(n);
    if g.is_tree() {
        let verdict = if s == d {
            Verdict::Feasible
        } else {
            Verdict::Infeasible(InfeasibleReason::FrozenTreeMismatch)
        };
        return Decision::new(verdict, route);
    }
    if (0..n).any(|v| !tecc.is_tecc_vertex(v) && so[v] != dof[v]) {
        return Decision::new(Verdict::Infeasible(InfeasibleReason::BranchPebbleMismatch), route);
    }
    if !same_tecc_membership(&tecc, s, d) {
        return Decision::new(Verdict::Infeasible(InfeasibleReason::TeccMembershipMismatch), route);
    }
    for members in &tecc.teccs {
        match classify_tecc(g, members) {
            TeccClass::Cycle => {
                let order = cycle_order(g, members);
                if !same_cyclic_order(&order, s, d, n) {
                    return Decision::new(Verdict::Infeasible(InfeasibleReason::CyclicOrderMismatch), route);
                }
            }
            TeccClass::CactusAllOdd => {
                let parity = restricted_parity(members, s, d, n);
                if parity == Parity::Odd {
                    let mut dec = Decision::new(Verdict::Infeasible(InfeasibleReason::ParityMismatch), route);
                    dec.parity = Some(parity);
                    return dec;
                }
            }
            TeccClass::CactusWithEven | TeccClass::Other => {}
        }
    }
    Decision::new(Verdict::Feasible, route)
}

fn same_tecc_membership(tecc: &TeccDecomposition, s: &Configuration, d: &Configuration) -> bool {
    s.placement()
        .iter()
        .zip(d.placement())
        .all(|(&a, &b)| tecc.tecc_of[a] == tecc.tecc_of[b])
}

/// Vertices of a cycle (given as its vertex set) in walking order, starting
/// at the smallest vertex toward its smaller cycle neighbor.
pub(crate) fn cycle_order(g: &Graph, members: &[Vertex]) -> Vec<Vertex> {
    let mut inside = vec![false; g.n()];
    for &v in members {
        inside[v] = true;
    }
    let start = *members.iter().min().expect("nonempty cycle");
    let mut order = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    loop {
        let next = g
            .neighbors(cur)
            .iter()
            .copied()
            .find(|&w| inside[w] && w != prev && (order.len() > 1 || w != start))
            .expect("cycle vertices have two cycle neighbors");
        if next == start {
            break;
        }
        order.push(next);
        prev = cur;
        cur = next;
        if order.len() > members.len() {
            break;
        }
    }
    order
}

/// Whether the pebbles met along `order` in `d` are a cyclic shift of those
/// met in `s`.
fn same_cyclic_order(order: &[Vertex], s: &Configuration, d: &Configuration, n: usize) -> bool {
    let so = s.occupants(n);
    let dof = d.occupants(n);
    let a: Vec<usize> = order.iter().filter_map(|&v| so[v]).collect();
    let b: Vec<usize> = order.iter().filter_map(|&v| dof[v]).collect();
    if a.len() != b.len() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    let Some(k) = b.iter().position(|&x| x == a[0]) else {
        return false;
    };
    (0..a.len()).all(|j| a[j] == b[(j + k) % b.len()])
}

/// Parity of the vertex permutation `v ↦ D(S⁻¹(v))` restricted to `members`.
pub(crate) fn restricted_parity(members: &[Vertex], s: &Configuration, d: &Configuration, n: usize) -> Parity {
    let so = s.occupants(n);
    let mut seen = vec![false; n];
    let mut transpositions = 0;
    for &v in members {
        if seen[v] {
            continue;
        }
        let mut len = 0;
        let mut cur = v;
        while !seen[cur] {
            seen[cur] = true;
            len += 1;
            cur = d.vertex_of(so[cur].expect("fully occupied"));
        }
        transpositions += len - 1;
    }
    if transpositions % 2 == 0 {
        Parity::Even
    } else {
        Parity::Odd
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const C4: &[(usize, usize)] = &[(0, 1), (1, 2), (2, 3), (3, 0)];
    const BOWTIE: &[(usize, usize)] = &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)];
    const PAN4: &[(usize, usize)] = &[(0, 1), (1, 2), (0, 2), (2, 3)];

    fn dec(n: usize, e: &[(usize, usize)], s: Vec<usize>, d: Vec<usize>) -> Decision {
        decide(&Instance::from_parts(n, e, s, d).unwrap())
    }

    #[test]
    fn cycle_shift() {
        assert!(dec(4, C4, vec![0, 1, 2, 3], vec![1, 2, 3, 0]).is_feasible());
        assert_eq!(
            dec(4, C4, vec![0, 1, 2, 3], vec![1, 0, 2, 3]).reason(),
            Some(InfeasibleReason::CyclicOrderMismatch)
        );
        assert!(dec(4, C4, vec![0, 1], vec![3, 2]).is_feasible());
    }

    #[test]
    fn bowtie_parity() {
        assert_eq!(
            dec(5, BOWTIE, vec![0, 1, 2, 3, 4], vec![1, 0, 2, 3, 4]).reason(),
            Some(InfeasibleReason::ParityMismatch)
        );
        assert!(dec(5, BOWTIE, vec![0, 1, 2, 3, 4], vec![1, 2, 0, 3, 4]).is_feasible());
    }

    #[test]
    fn pan4_branch_mismatch() {
        assert_eq!(
            dec(4, PAN4, vec![0, 1, 2, 3], vec![0, 1, 3, 2]).reason(),
            Some(InfeasibleReason::BranchPebbleMismatch)
        );
    }

    #[test]
    fn frozen_tree() {
        assert_eq!(
            dec(3, &[(0, 1), (1, 2)], vec![0, 1, 2], vec![1, 0, 2]).reason(),
            Some(InfeasibleReason::FrozenTreeMismatch)
        );
    }

    #[test]
    fn classify() {
        let k4 = Graph::new(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(classify_tecc(&k4, &[0, 1, 2, 3]), TeccClass::Other);
        let bowtie = Graph::new(5, BOWTIE).unwrap();
        assert_eq!(classify_tecc(&bowtie, &[0, 1, 2, 3, 4]), TeccClass::CactusAllOdd);
        let c4 = Graph::new(4, C4).unwrap();
        assert_eq!(classify_tecc(&c4, &[0, 1, 2, 3]), TeccClass::Cycle);
    }
}
