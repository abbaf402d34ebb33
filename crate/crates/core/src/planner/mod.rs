//! Plan synthesis mirroring the feasibility dispatch.
//!
//! Every exchange is built the same way: a short search moves the pebbles
//! of interest onto a small gadget (a fork with room, a full cycle with a
//! hole beside it, a full theta, or a pair of cycles sharing a vertex), the
//! gadget's fixed move sequence permutes them, and the search prefix is
//! undone. Moves act on vertices, so undoing the prefix restores every
//! other pebble exactly.

mod gadgets;
mod search;

use std::collections::HashSet;

use thiserror::Error;

use crate::config::Parity;
use crate::config::{verify_plan, Configuration, Move, Pebble, Plan, State, Verification};
use crate::feasibility::{
    classify_tecc, cycle_order, decide, reconfigure_to_target_set, restricted_parity, EquivalenceClasses,
    InfeasibleReason, Instance, TeccClass,
};
use crate::graph::{analyze_cactus, tecc_decomposition, CactusInfo, Graph, TeccDecomposition, ThetaSubgraph, Vertex};

use gadgets::{
    commutator_three_cycles, covering_cycles, push_unique, shortest_word, theta_moves, thetas, SwapGadgets, ThreeCycle,
};
use search::{conjugating_search, MoveSpace, Occupancy, SearchOutcome};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlanError {
    #[error("instance is infeasible: {0}")]
    NotFeasible(InfeasibleReason),
    #[error("an exchange needs two distinct pebbles")]
    InvalidPair,
    #[error("no cycle of the cactus is adjacent to the one holding both pebbles")]
    NoAdjacentCycle,
    #[error("pebble {0} is not on the theta")]
    PebbleOffTheta(Pebble),
    #[error("pebbles {0} and {1} are not equivalent")]
    NotEquivalent(Pebble, Pebble),
    #[error("target cycles cannot all be satisfied at once")]
    InconsistentTargets,
    #[error("the subgraph used for the exchange is not fully occupied")]
    NotFullyOccupied,
    #[error("no empty vertex to exchange with")]
    NoEmptyVertex,
    #[error("start and goal occupy different vertex sets")]
    VertexSetMismatch,
    #[error("exchange search gave up after {0} states")]
    SearchLimit(usize),
    #[error("no exchange gadget is reachable for the pebbles on {0} and {1}")]
    NoGadget(Vertex, Vertex),
    #[error("internal error: synthesized plan failed verification at step {0}")]
    Unverified(usize),
}

/// Bounds on the exchange search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PlanLimits {
    pub max_states: usize,
}

impl Default for PlanLimits {
    fn default() -> Self {
        Self { max_states: 500_000 }
    }
}

/// The three rotations of a theta, each with its inverse available through
/// [`Move::inverse`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RotationGenerators {
    pub left: Move,
    pub right: Move,
    pub outer: Move,
}

impl RotationGenerators {
    pub fn of_theta(theta: &ThetaSubgraph) -> Self {
        Self {
            left: Move::rotation(theta.left_cycle.clone()),
            right: Move::rotation(theta.right_cycle.clone()),
            outer: Move::rotation(theta.outer_cycle.clone()),
        }
    }

    /// `outer⁻¹`, `left`, `right` in application order: transposes the
    /// pebbles on `b_1` and `c_1`.
    pub fn junction_transposition(&self) -> Vec<Move> {
        vec![self.outer.inverse(), self.left.clone(), self.right.clone()]
    }
}

/// Largest group explored when looking for a shortest exchange word.
const WORD_CAP: usize = 400_000;

/// Shared per-graph data for the planner.
struct Context<'a> {
    g: &'a Graph,
    tecc: TeccDecomposition,
    cycles: Vec<Vec<Vertex>>,
    thetas: Vec<ThetaSubgraph>,
    limits: PlanLimits,
}

impl<'a> Context<'a> {
    fn new(g: &'a Graph, limits: PlanLimits) -> Self {
        let tecc = tecc_decomposition(g);
        let thetas = thetas(g, &tecc);
        let mut cycles = covering_cycles(g, &tecc);
        let mut seen: HashSet<Vec<Vertex>> = HashSet::new();
        for c in &cycles {
            seen.insert(canonical(c));
        }
        for t in &thetas {
            for c in [&t.left_cycle, &t.right_cycle, &t.outer_cycle] {
                push_unique(&mut seen, &mut cycles, c.clone());
            }
        }
        Self {
            g,
            tecc,
            cycles,
            thetas,
            limits,
        }
    }

    /// Moves exchanging the pebbles on `a` and `b` (vertices), leaving every
    /// other pebble in place.
    fn swap(
        &self,
        c: &Configuration,
        a: Vertex,
        b: Vertex,
        cycles: &[Vec<Vertex>],
        simple: bool,
    ) -> Result<Vec<Move>, PlanError> {
        let gadgets = SwapGadgets::new(self.g, cycles, &self.thetas);
        let space = MoveSpace {
            g: self.g,
            cycles,
            simple,
        };
        let out = conjugating_search(
            &space,
            Occupancy::of(c, self.g.n()),
            &[a, b],
            self.limits.max_states,
            |occ, pos| gadgets.find(occ, pos[0], pos[1]),
        );
        conjugate(out, self.limits, (a, b))
    }

    /// Moves cycling the pebbles on `q` (`q[0]`'s pebble to `q[1]` and so
    /// on) with rotations only.
    fn three_cycle(
        &self,
        c: &Configuration,
        q: [Vertex; 3],
        cycles: &[Vec<Vertex>],
        table: &[ThreeCycle],
    ) -> Result<Vec<Move>, PlanError> {
        let space = MoveSpace {
            g: self.g,
            cycles,
            simple: false,
        };
        let out = conjugating_search(
            &space,
            Occupancy::of(c, self.g.n()),
            &q,
            self.limits.max_states,
            |_, pos| {
                table
                    .iter()
                    .find(|t| (0..3).any(|r| (0..3).all(|i| t.positions[(i + r) % 3] == pos[i])))
                    .map(|t| t.moves.clone())
            },
        );
        conjugate(out, self.limits, (q[0], q[1]))
    }

    fn cycles_within(&self, members: &[Vertex]) -> Vec<Vec<Vertex>> {
        let inside: HashSet<Vertex> = members.iter().copied().collect();
        self.cycles
            .iter()
            .filter(|c| c.iter().all(|v| inside.contains(v)))
            .cloned()
            .collect()
    }
}

fn canonical(c: &[Vertex]) -> Vec<Vertex> {
    let f = crate::graph::normalize_cycle(c);
    let b = crate::graph::normalize_cycle(&c.iter().rev().copied().collect::<Vec<_>>());
    f.min(b)
}

fn conjugate(out: SearchOutcome<Vec<Move>>, limits: PlanLimits, at: (Vertex, Vertex)) -> Result<Vec<Move>, PlanError> {
    match out {
        SearchOutcome::Found { prefix, hit } => {
            let mut moves = prefix.clone();
            moves.extend(hit);
            moves.extend(prefix.iter().rev().map(Move::inverse));
            Ok(moves)
        }
        SearchOutcome::Exhausted => Err(PlanError::NoGadget(at.0, at.1)),
        SearchOutcome::LimitReached => Err(PlanError::SearchLimit(limits.max_states)),
    }
}

/// Applies `moves` (known legal) to `c`.
fn advance(c: &Configuration, n: usize, moves: &[Move]) -> Configuration {
    let mut st = State::new(c, n);
    for m in moves {
        st.apply_unchecked(m);
    }
    st.configuration()
}

/// A verified plan taking the start of `inst` to its goal.
pub fn plan(inst: &Instance) -> Result<Plan, PlanError> {
    plan_with(inst, PlanLimits::default())
}

pub fn plan_with(inst: &Instance, limits: PlanLimits) -> Result<Plan, PlanError> {
    if let Some(reason) = decide(inst).reason() {
        return Err(PlanError::NotFeasible(reason));
    }
    let g = &inst.graph;
    let (s, d) = (&inst.start, &inst.goal);
    if s == d {
        return Ok(Plan::default());
    }
    let moves = if g.is_cycle() {
        plan_on_cycle(g, s, d)
    } else {
        let ctx = Context::new(g, limits);
        if inst.p() == inst.n() {
            full_plan(&ctx, s, d)?
        } else {
            let tree = g.bfs_spanning_tree(0);
            let (s1, prefix) = reconfigure_to_target_set(&tree, s, &d.vertex_set());
            let mut moves = prefix.moves;
            let cycles = ctx.cycles.clone();
            moves.extend(realize_permutation(g, &s1, d, |c, a, b| ctx.swap(c, a, b, &cycles, true))?.moves);
            moves
        }
    };
    let plan = Plan::new(moves).normalized();
    match verify_plan(g, s, d, &plan) {
        Verification::Verified => Ok(plan),
        Verification::Rejected { step, .. } => Err(PlanError::Unverified(step)),
    }
}

/// Turns `s` into `d` (same vertex set) one transposition at a time:
/// the largest misplaced pebble is swapped onto its goal vertex with
/// whatever pebble sits there, using `exchange(current, a, b)` to build the
/// moves that trade the pebbles on vertices `a` and `b`.
pub fn realize_permutation(
    g: &Graph,
    s: &Configuration,
    d: &Configuration,
    mut exchange: impl FnMut(&Configuration, Vertex, Vertex) -> Result<Vec<Move>, PlanError>,
) -> Result<Plan, PlanError> {
    if s.vertex_set() != d.vertex_set() {
        return Err(PlanError::VertexSetMismatch);
    }
    let n = g.n();
    let mut cur = s.clone();
    let mut moves = Vec::new();
    while let Some(i) = (0..cur.pebble_count())
        .rev()
        .find(|&i| cur.vertex_of(i) != d.vertex_of(i))
    {
        let fragment = exchange(&cur, cur.vertex_of(i), d.vertex_of(i))?;
        cur = advance(&cur, n, &fragment);
        moves.extend(fragment);
    }
    Ok(Plan::new(moves))
}

/// Cycle graph: pebbles keep their cyclic order. Advance the whole
/// configuration one vertex at a time until its linear order along the
/// path `order[0] .. order[n-1]` matches the goal's, then slide into place.
fn plan_on_cycle(g: &Graph, s: &Configuration, d: &Configuration) -> Vec<Move> {
    let n = g.n();
    let order = cycle_order(g, &(0..n).collect::<Vec<_>>());
    if s.pebble_count() == n {
        let k = (0..n)
            .find(|&k| (0..n).all(|i| d.vertex_of(s_occupant(s, order[i], n)) == order[(i + k) % n]))
            .unwrap_or(0);
        return if k <= n - k {
            vec![Move::rotation(order.clone()); k]
        } else {
            vec![Move::rotation(order.iter().rev().copied().collect()); n - k]
        };
    }
    let linear = |c: &Configuration| -> Vec<Pebble> {
        let occ = c.occupants(n);
        order.iter().filter_map(|&v| occ[v]).collect()
    };
    let target = linear(d);
    let mut cur = s.clone();
    let mut moves = Vec::new();
    while linear(&cur) != target {
        let step = advance_all(&order, &cur, n);
        cur = advance(&cur, n, &step);
        moves.extend(step);
    }
    let path_edges: Vec<(Vertex, Vertex)> = order.windows(2).map(|w| (w[0], w[1])).collect();
    let path = Graph::new(n, &path_edges).expect("a cycle minus an edge is a path");
    let (_, tail) = reconfigure_to_target_set(&path, &cur, &d.vertex_set());
    moves.extend(tail.moves);
    moves
}

fn s_occupant(s: &Configuration, v: Vertex, n: usize) -> Pebble {
    s.occupants(n)[v].expect("fully occupied")
}

/// Every pebble steps once along `order`, starting behind a hole.
fn advance_all(order: &[Vertex], c: &Configuration, n: usize) -> Vec<Move> {
    let occ = c.occupants(n);
    let k = order.len();
    let h = (0..k).find(|&i| occ[order[i]].is_none()).expect("a hole exists");
    let mut moves = Vec::new();
    for back in 1..k {
        let i = (h + k - back) % k;
        if occ[order[i]].is_some() {
            moves.push(Move::simple(order[i], order[(i + 1) % k]));
        }
    }
    moves
}

/// p = n: only rotations, each TECC on its own.
fn full_plan(ctx: &Context<'_>, s: &Configuration, d: &Configuration) -> Result<Vec<Move>, PlanError> {
    let g = ctx.g;
    let n = g.n();
    let mut cur = s.clone();
    let mut moves = Vec::new();
    for members in &ctx.tecc.teccs {
        let fragment = match classify_tecc(g, members) {
            TeccClass::Cycle => rotate_cycle_tecc(g, members, &cur, d),
            TeccClass::Other => {
                let cycles = ctx.cycles_within(members);
                realize_on(members, &cur, d, n, |c, a, b| ctx.swap(c, a, b, &cycles, false))?
            }
            TeccClass::CactusAllOdd | TeccClass::CactusWithEven => {
                let info = analyze_cactus(g, members).expect("cactus");
                cactus_permutation(ctx, &info, members, &cur, d)?
            }
        };
        cur = advance(&cur, n, &fragment);
        moves.extend(fragment);
    }
    Ok(moves)
}

/// Transposition loop restricted to the pebbles on `members`.
fn realize_on(
    members: &[Vertex],
    s: &Configuration,
    d: &Configuration,
    n: usize,
    mut exchange: impl FnMut(&Configuration, Vertex, Vertex) -> Result<Vec<Move>, PlanError>,
) -> Result<Vec<Move>, PlanError> {
    let mut cur = s.clone();
    let mut moves = Vec::new();
    while let Some(i) = misplaced(members, &cur, d, n).last().copied() {
        let fragment = exchange(&cur, cur.vertex_of(i), d.vertex_of(i))?;
        cur = advance(&cur, n, &fragment);
        moves.extend(fragment);
    }
    Ok(moves)
}

/// Pebbles on `members` whose goal vertex differs, ascending.
fn misplaced(members: &[Vertex], c: &Configuration, d: &Configuration, n: usize) -> Vec<Pebble> {
    let occ = c.occupants(n);
    let mut out: Vec<Pebble> = members
        .iter()
        .filter_map(|&v| occ[v])
        .filter(|&i| c.vertex_of(i) != d.vertex_of(i))
        .collect();
    out.sort_unstable();
    out
}

fn rotate_cycle_tecc(g: &Graph, members: &[Vertex], s: &Configuration, d: &Configuration) -> Vec<Move> {
    let order = cycle_order(g, members);
    let k = order.len();
    let occ = s.occupants(g.n());
    let shift = (0..k)
        .find(|&r| (0..k).all(|i| d.vertex_of(occ[order[i]].expect("full")) == order[(i + r) % k]))
        .expect("feasible cycle TECCs are shifts");
    if shift <= k - shift {
        vec![Move::rotation(order.clone()); shift]
    } else {
        vec![Move::rotation(order.iter().rev().copied().collect()); k - shift]
    }
}

/// Fully occupied cactus: fix parity with one even-cycle rotation if
/// needed, then place pebbles with conjugated commutator 3-cycles.
fn cactus_permutation(
    ctx: &Context<'_>,
    info: &CactusInfo,
    members: &[Vertex],
    s: &Configuration,
    d: &Configuration,
) -> Result<Vec<Move>, PlanError> {
    let n = ctx.g.n();
    let mut moves = Vec::new();
    let mut cur = s.clone();
    if restricted_parity(members, &cur, d, n) == Parity::Odd {
        let even = info
            .cycles
            .iter()
            .find(|c| c.len() % 2 == 0)
            .ok_or(PlanError::NotFeasible(InfeasibleReason::ParityMismatch))?;
        moves.push(Move::rotation(even.clone()));
        cur = advance(&cur, n, &moves);
    }
    let table = commutator_three_cycles(&info.cycles);
    loop {
        let wrong = misplaced(members, &cur, d, n);
        let Some(&i) = wrong.last() else { break };
        let (a, b) = (cur.vertex_of(i), d.vertex_of(i));
        let j = cur.occupants(n)[b].expect("full");
        let c = if d.vertex_of(j) != a {
            d.vertex_of(j)
        } else {
            wrong
                .iter()
                .map(|&w| cur.vertex_of(w))
                .find(|&v| v != a && v != b)
                .expect("an even permutation never leaves a lone transposition")
        };
        let fragment = ctx.three_cycle(&cur, [a, b, c], &info.cycles, &table)?;
        cur = advance(&cur, n, &fragment);
        moves.extend(fragment);
    }
    Ok(moves)
}

/// Exchanges pebbles `x` and `y`, which must lie on one cycle of a fully
/// occupied cactus. A single transposition is impossible when every cycle
/// is odd, so two helper pebbles on an adjacent cycle are exchanged as
/// well; they are returned alongside the moves.
pub fn cactus_exchange_pair(
    g: &Graph,
    cactus: &CactusInfo,
    s: &Configuration,
    x: Pebble,
    y: Pebble,
) -> Result<(Plan, (Pebble, Pebble)), PlanError> {
    if x == y {
        return Err(PlanError::InvalidPair);
    }
    let n = g.n();
    let (px, py) = (s.vertex_of(x), s.vertex_of(y));
    let occ = s.occupants(n);
    if cactus.cycles.iter().flatten().any(|&v| occ[v].is_none()) {
        return Err(PlanError::NotFullyOccupied);
    }
    let home = cactus
        .cycles
        .iter()
        .position(|c| c.contains(&px) && c.contains(&py))
        .ok_or(PlanError::InvalidPair)?;
    let neighbor = cactus
        .dual_edges
        .iter()
        .find_map(|&(a, b)| {
            if a == home {
                Some(b)
            } else if b == home {
                Some(a)
            } else {
                None
            }
        })
        .ok_or(PlanError::NoAdjacentCycle)?;
    let shared: Vec<Vertex> = cactus.cycles[home].clone();
    let helpers: Vec<Vertex> = cactus.cycles[neighbor]
        .iter()
        .copied()
        .filter(|v| !shared.contains(v))
        .collect();
    let pair = [cactus.cycles[home].clone(), cactus.cycles[neighbor].clone()];
    let is_target = |a: Vertex, b: Vertex| helpers.contains(&a) && helpers.contains(&b);
    let direct = shortest_word(&pair, WORD_CAP, |image| {
        if image(px) != py || image(py) != px {
            return false;
        }
        let moved: Vec<Vertex> = pair
            .iter()
            .flatten()
            .copied()
            .filter(|&v| v != px && v != py && image(v) != v)
            .collect();
        moved.len() == 2 && image(moved[0]) == moved[1] && is_target(moved[0], moved[1])
    });
    let (moves, h1, h2) = match direct {
        Some((word, image)) => {
            let h = helpers
                .iter()
                .copied()
                .find(|&v| image(v) != v)
                .expect("two helpers move");
            (word, h, image(h))
        }
        None => {
            let (h1, h2) = (helpers[0], helpers[1]);
            let ctx = Context::new(g, PlanLimits::default());
            let table = commutator_three_cycles(&cactus.cycles);
            // (x y)(h1 h2) = (x y h1) after (y h1 h2)
            let mut moves = ctx.three_cycle(s, [py, h1, h2], &cactus.cycles, &table)?;
            let mid = advance(s, n, &moves);
            moves.extend(ctx.three_cycle(&mid, [px, py, h1], &cactus.cycles, &table)?);
            (moves, h1, h2)
        }
    };
    Ok((Plan::new(moves), (occ[h1].unwrap(), occ[h2].unwrap())))
}

/// Moves every listed pebble onto a vertex of its target cycle
/// (`targets` holds `(pebble, cycle index)` pairs); the cactus must be
/// fully occupied. Other cactus pebbles may move.
pub fn cactus_arrange(
    g: &Graph,
    cactus: &CactusInfo,
    s: &Configuration,
    targets: &[(Pebble, usize)],
) -> Result<Plan, PlanError> {
    let n = g.n();
    let occ = s.occupants(n);
    let mut members: Vec<Vertex> = cactus.cycles.iter().flatten().copied().collect();
    members.sort_unstable();
    members.dedup();
    if members.iter().any(|&v| occ[v].is_none()) {
        return Err(PlanError::NotFullyOccupied);
    }
    let pebbles: Vec<Pebble> = members.iter().map(|&v| occ[v].unwrap()).collect();
    let mut allowed: Vec<Vec<Vertex>> = vec![members.clone(); pebbles.len()];
    for &(pebble, cycle) in targets {
        let idx = pebbles
            .iter()
            .position(|&q| q == pebble)
            .ok_or(PlanError::InconsistentTargets)?;
        let c = cactus.cycles.get(cycle).ok_or(PlanError::InconsistentTargets)?;
        allowed[idx].retain(|v| c.contains(v));
    }
    let current: Vec<Vertex> = pebbles.iter().map(|&q| s.vertex_of(q)).collect();
    let assignment = match_vertices(&allowed, &current).ok_or(PlanError::InconsistentTargets)?;
    let mut placement = s.placement().to_vec();
    for (k, &q) in pebbles.iter().enumerate() {
        placement[q] = assignment[k];
    }
    let mut goal = Configuration::new(placement, n).expect("matching is injective");
    if !cactus.has_even_cycle && restricted_parity(&members, s, &goal, n) == Parity::Odd {
        // trade two pebbles whose goal vertices suit each other
        let k = pebbles.len();
        let pair = (0..k)
            .flat_map(|a| (a + 1..k).map(move |b| (a, b)))
            .find(|&(a, b)| allowed[a].contains(&assignment[b]) && allowed[b].contains(&assignment[a]))
            .ok_or(PlanError::InconsistentTargets)?;
        let mut placement = goal.placement().to_vec();
        placement.swap(pebbles[pair.0], pebbles[pair.1]);
        goal = Configuration::new(placement, n).expect("swap keeps injectivity");
    }
    let ctx = Context::new(g, PlanLimits::default());
    Ok(Plan::new(cactus_permutation(&ctx, cactus, &members, s, &goal)?))
}

/// Bipartite matching of item `k` to one of `allowed[k]`, preferring the
/// current vertex.
fn match_vertices(allowed: &[Vec<Vertex>], current: &[Vertex]) -> Option<Vec<Vertex>> {
    let mut owner: std::collections::HashMap<Vertex, usize> = std::collections::HashMap::new();
    let mut assigned: Vec<Option<Vertex>> = vec![None; allowed.len()];
    fn augment(
        k: usize,
        allowed: &[Vec<Vertex>],
        owner: &mut std::collections::HashMap<Vertex, usize>,
        assigned: &mut [Option<Vertex>],
        seen: &mut HashSet<Vertex>,
    ) -> bool {
        for &v in &allowed[k] {
            if !seen.insert(v) {
                continue;
            }
            let free = match owner.get(&v) {
                None => true,
                Some(&other) => augment(other, allowed, owner, assigned, seen),
            };
            if free {
                owner.insert(v, k);
                assigned[k] = Some(v);
                return true;
            }
        }
        false
    }
    let mut order: Vec<Vec<Vertex>> = allowed.to_vec();
    for (k, list) in order.iter_mut().enumerate() {
        if let Some(i) = list.iter().position(|&v| v == current[k]) {
            list.swap(0, i);
        }
    }
    for k in 0..order.len() {
        if !augment(k, &order, &mut owner, &mut assigned, &mut HashSet::new()) {
            return None;
        }
    }
    assigned.into_iter().collect()
}

/// Transposes pebbles `x` and `y` on a fully occupied theta: three
/// rotations when they sit on `b_1` and `c_1`, otherwise the same three
/// conjugated by rotations of the theta's cycles.
pub fn theta_transposition(
    g: &Graph,
    theta: &ThetaSubgraph,
    s: &Configuration,
    x: Pebble,
    y: Pebble,
) -> Result<Plan, PlanError> {
    if x == y {
        return Err(PlanError::InvalidPair);
    }
    let on = theta.vertices();
    for q in [x, y] {
        if !on.contains(&s.vertex_of(q)) {
            return Err(PlanError::PebbleOffTheta(q));
        }
    }
    let occ = s.occupants(g.n());
    if on.iter().any(|&v| occ[v].is_none()) {
        return Err(PlanError::NotFullyOccupied);
    }
    let (a, b) = (s.vertex_of(x), s.vertex_of(y));
    if (a, b) == (theta.b1(), theta.c1()) || (b, a) == (theta.b1(), theta.c1()) {
        return Ok(Plan::new(theta_moves(theta)));
    }
    let cycles = vec![
        theta.left_cycle.clone(),
        theta.right_cycle.clone(),
        theta.outer_cycle.clone(),
    ];
    let space = MoveSpace {
        g,
        cycles: &cycles,
        simple: false,
    };
    let (tb, tc) = (theta.b1(), theta.c1());
    let out = conjugating_search(
        &space,
        Occupancy::of(s, g.n()),
        &[a, b],
        PlanLimits::default().max_states,
        |_, pos| ((pos[0], pos[1]) == (tb, tc) || (pos[0], pos[1]) == (tc, tb)).then(|| theta_moves(theta)),
    );
    Ok(Plan::new(conjugate(out, PlanLimits::default(), (a, b))?))
}

/// Exchanges two equivalent pebbles when at least one vertex is empty.
pub fn exchange_with_empty(
    g: &Graph,
    s: &Configuration,
    x: Pebble,
    y: Pebble,
    classes: &EquivalenceClasses,
) -> Result<Plan, PlanError> {
    if x == y {
        return Err(PlanError::InvalidPair);
    }
    if !classes.same_class(x, y) {
        return Err(PlanError::NotEquivalent(x, y));
    }
    if s.pebble_count() >= g.n() {
        return Err(PlanError::NoEmptyVertex);
    }
    let ctx = Context::new(g, PlanLimits::default());
    let cycles = ctx.cycles.clone();
    Ok(Plan::new(ctx.swap(s, s.vertex_of(x), s.vertex_of(y), &cycles, true)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::permutation_between;

    fn inst(n: usize, edges: &[(usize, usize)], s: Vec<usize>, d: Vec<usize>) -> Instance {
        let g = Graph::new(n, edges).unwrap();
        Instance::new(g, Configuration::new(s, n).unwrap(), Configuration::new(d, n).unwrap()).unwrap()
    }

    const BOWTIE: [(usize, usize); 6] = [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)];

    #[test]
    fn identity_is_empty() {
        let i = inst(3, &[(0, 1), (1, 2), (0, 2)], vec![0, 1], vec![0, 1]);
        assert!(plan(&i).unwrap().is_empty());
    }

    #[test]
    fn c4_shift_is_one_rotation() {
        let i = inst(4, &[(0, 1), (1, 2), (2, 3), (0, 3)], vec![0, 1, 2, 3], vec![1, 2, 3, 0]);
        assert_eq!(plan(&i).unwrap().moves, vec![Move::rotation(vec![0, 1, 2, 3])]);
    }

    #[test]
    fn bowtie_three_cycle() {
        let i = inst(5, &BOWTIE, vec![0, 1, 2, 3, 4], vec![1, 2, 0, 3, 4]);
        assert!(plan(&i).unwrap().rotation_count() > 0);
    }

    #[test]
    fn infeasible_is_reported() {
        let i = inst(5, &BOWTIE, vec![0, 1, 2, 3, 4], vec![1, 0, 2, 3, 4]);
        assert_eq!(plan(&i), Err(PlanError::NotFeasible(InfeasibleReason::ParityMismatch)));
    }

    #[test]
    fn cycle_with_holes_keeps_order() {
        let e = [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)];
        let i = inst(5, &e, vec![0, 2, 3], vec![4, 1, 2]);
        let p = plan(&i).unwrap();
        assert!(p.moves.iter().all(|m| !m.is_rotation()));
    }

    #[test]
    fn bowtie_exchange_pair_swaps_helpers_too() {
        let g = Graph::new(5, &BOWTIE).unwrap();
        let info = analyze_cactus(&g, &[0, 1, 2, 3, 4]).unwrap();
        let s = Configuration::new(vec![0, 1, 2, 3, 4], 5).unwrap();
        let (p, (h1, h2)) = cactus_exchange_pair(&g, &info, &s, 3, 4).unwrap();
        let end = advance(&s, 5, &p.moves);
        let sigma = permutation_between(&s, &end).unwrap();
        assert_eq!(sigma.cycles().len(), 2);
        assert_eq!(end.vertex_of(3), 4);
        assert_eq!(end.vertex_of(h1), s.vertex_of(h2));
        assert!(p.rotation_count() <= 10);
    }

    #[test]
    fn theta4_junction_uses_three_rotations() {
        let g = Graph::new(4, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]).unwrap();
        let t = crate::graph::find_theta(&g, 1, 3).unwrap();
        let s = Configuration::new(vec![0, 1, 2, 3], 4).unwrap();
        let x = s.occupants(4)[t.b1()].unwrap();
        let y = s.occupants(4)[t.c1()].unwrap();
        let p = theta_transposition(&g, &t, &s, x, y).unwrap();
        assert_eq!(p.rotation_count(), 3);
        assert_eq!(p.moves, RotationGenerators::of_theta(&t).junction_transposition());
    }

    #[test]
    fn pan4_swap_with_empty_pendant() {
        let g = Graph::new(4, &[(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap();
        let s = Configuration::new(vec![0, 1, 2], 4).unwrap();
        let classes = decide(&Instance::new(g.clone(), s.clone(), s.clone()).unwrap())
            .classes
            .unwrap();
        let p = exchange_with_empty(&g, &s, 0, 1, &classes).unwrap();
        let d = Configuration::new(vec![1, 0, 2], 4).unwrap();
        assert!(verify_plan(&g, &s, &d, &p).is_verified());
    }

    #[test]
    fn arrange_moves_pebbles_onto_their_cycles() {
        let g = Graph::new(5, &BOWTIE).unwrap();
        let info = analyze_cactus(&g, &[0, 1, 2, 3, 4]).unwrap();
        let s = Configuration::new(vec![0, 1, 2, 3, 4], 5).unwrap();
        let right = info.cycles.iter().position(|c| c.contains(&3)).unwrap();
        let p = cactus_arrange(&g, &info, &s, &[(0, right), (1, right)]).unwrap();
        let end = advance(&s, 5, &p.moves);
        assert!(info.cycles[right].contains(&end.vertex_of(0)));
        assert!(info.cycles[right].contains(&end.vertex_of(1)));
    }
}
