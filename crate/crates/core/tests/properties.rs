use pmr::config::{verify_plan, Configuration, Move, State};
use pmr::feasibility::{decide, Instance};
use pmr::io::{gen_instance, parse_instance, parse_plan, serialize_instance, serialize_plan, GenKind};
use pmr::oracle::{oracle_decide_with, Limits, MoveSet};
use pmr::planner::plan;
use proptest::prelude::*;
use proptest::sample::Index;

fn kind() -> impl Strategy<Value = GenKind> {
    prop_oneof![Just(GenKind::Cycle), Just(GenKind::Cactus), Just(GenKind::Random)]
}

/// Small generated instance; half the time the goal reuses the start's vertex set.
fn instance() -> impl Strategy<Value = Instance> {
    (kind(), 3usize..=8, any::<Index>(), any::<u64>(), any::<bool>()).prop_map(|(kind, n, p, seed, same_set)| {
        let p = p.index(n) + 1;
        let mut inst = gen_instance(kind, n, p, seed).unwrap();
        if same_set {
            let mut verts = inst.start.placement().to_vec();
            verts.rotate_left((seed % p as u64) as usize);
            verts.swap(0, (seed as usize / 7) % p);
            inst.goal = Configuration::new(verts, n).unwrap();
        }
        inst
    })
}

fn shuffled(n: usize, keys: &[u64]) -> Vec<usize> {
    let mut map: Vec<usize> = (0..n).collect();
    map.sort_by_key(|&v| keys[v % keys.len()].wrapping_mul(v as u64 + 1));
    map
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn instance_text_round_trips(inst in instance()) {
        let text = serialize_instance(&inst);
        prop_assert_eq!(parse_instance(&text).unwrap(), inst);
    }

    #[test]
    fn decide_ignores_vertex_names(inst in instance(), keys in prop::collection::vec(any::<u64>(), 8)) {
        let map = shuffled(inst.n(), &keys);
        prop_assert_eq!(decide(&inst).verdict, decide(&inst.relabeled(&map)).verdict);
    }

    #[test]
    fn decide_matches_oracle(inst in instance()) {
        let truth = oracle_decide_with(&inst, MoveSet::WithRotations, &Limits::default()).unwrap();
        prop_assert_eq!(decide(&inst).is_feasible(), truth);
    }

    #[test]
    fn feasible_instances_get_verified_plans(inst in instance()) {
        if decide(&inst).is_feasible() {
            let p = plan(&inst).unwrap();
            prop_assert!(verify_plan(&inst.graph, &inst.start, &inst.goal, &p).is_verified());
            let reparsed = parse_plan(&serialize_plan(&p)).unwrap();
            prop_assert!(verify_plan(&inst.graph, &inst.start, &inst.goal, &reparsed).is_verified());
        } else {
            prop_assert!(plan(&inst).is_err());
        }
    }

    #[test]
    fn simple_moves_never_beat_decide(inst in instance(), picks in prop::collection::vec(any::<Index>(), 0..25)) {
        let g = &inst.graph;
        let mut state = State::new(&inst.start, g.n());
        for pick in picks {
            let options: Vec<Move> = (0..g.n())
                .filter(|&v| !state.is_empty(v))
                .flat_map(|v| g.neighbors(v).iter().filter(|&&u| state.is_empty(u)).map(move |&u| Move::simple(v, u)))
                .collect();
            if !options.is_empty() {
                state.apply(g, pick.get(&options)).unwrap();
            }
        }
        let walked = Instance::new(inst.graph.clone(), inst.start.clone(), state.configuration()).unwrap();
        prop_assert!(decide(&walked).is_feasible());
    }
}
