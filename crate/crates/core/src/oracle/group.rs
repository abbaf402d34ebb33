use std::collections::{HashSet, VecDeque};

use super::{Limits, OracleError, Packer};
use crate::graph::{enumerate_disjoint_cycle_sets, simple_cycles, Graph, Vertex};

/// How a "move" is counted when measuring the diameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorMode {
    /// One rotation of a single cycle, either direction.
    SimpleSerialized,
    /// One simultaneous signed rotation of a set of disjoint cycles.
    Compound,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    Trivial,
    Cyclic,
    Alternating,
    Symmetric,
    Product,
}

impl std::fmt::Display for Classification {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Classification::Trivial => "Trivial",
            Classification::Cyclic => "Cyclic",
            Classification::Alternating => "Alternating",
            Classification::Symmetric => "Symmetric",
            Classification::Product => "Product",
        };
        f.write_str(s)
    }
}

/// The permutation group generated by rotations on a fully occupied graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupStats {
    pub order: usize,
    pub classification: Classification,
    pub diameter: usize,
    /// Vertex orbits of size at least two.
    pub orbits: Vec<Vec<Vertex>>,
}

/// Enumerates the group by BFS from the identity placement.
pub fn group_stats(g: &Graph, mode: GeneratorMode, limits: &Limits) -> Result<GroupStats, OracleError> {
    let n = g.n();
    let generators: Vec<Vec<Vertex>> = match mode {
        GeneratorMode::SimpleSerialized => simple_cycles(g, limits.max_cycles)?
            .iter()
            .flat_map(|c| signed_maps(n, std::slice::from_ref(c)))
            .collect(),
        GeneratorMode::Compound => enumerate_disjoint_cycle_sets(g, limits.max_cycles)?
            .iter()
            .flat_map(|set| signed_maps(n, set))
            .collect(),
    };
    let packer = Packer::new(n, n).ok_or(OracleError::StateSpaceTooLarge(limits.max_states))?;
    let identity: Vec<Vertex> = (0..n).collect();
    let mut seen = HashSet::from([packer.pack(&identity)]);
    let mut frontier = VecDeque::from([(identity, 0usize)]);
    let mut diameter = 0;
    while let Some((placement, depth)) = frontier.pop_front() {
        diameter = diameter.max(depth);
        for f in &generators {
            let next: Vec<Vertex> = placement.iter().map(|&v| f[v]).collect();
            if seen.insert(packer.pack(&next)) {
                if seen.len() > limits.max_states {
                    return Err(OracleError::StateSpaceTooLarge(limits.max_states));
                }
                frontier.push_back((next, depth + 1));
            }
        }
    }
    let orbits = orbits(n, &generators);
    let order = seen.len();
    Ok(GroupStats {
        order,
        classification: classify(order, &orbits),
        diameter,
        orbits,
    })
}

/// Vertex maps for all `2^k` direction choices on a set of disjoint cycles.
fn signed_maps(n: usize, set: &[Vec<Vertex>]) -> Vec<Vec<Vertex>> {
    (0..1usize << set.len())
        .map(|signs| {
            let mut f: Vec<Vertex> = (0..n).collect();
            for (i, c) in set.iter().enumerate() {
                let k = c.len();
                let step = if signs >> i & 1 == 0 { 1 } else { k - 1 };
                for j in 0..k {
                    f[c[j]] = c[(j + step) % k];
                }
            }
            f
        })
        .collect()
}

fn orbits(n: usize, generators: &[Vec<Vertex>]) -> Vec<Vec<Vertex>> {
    let mut comp: Vec<usize> = (0..n).collect();
    fn find(comp: &mut [usize], mut x: usize) -> usize {
        while comp[x] != x {
            comp[x] = comp[comp[x]];
            x = comp[x];
        }
        x
    }
    for f in generators {
        for (v, &w) in f.iter().enumerate() {
            let (a, b) = (find(&mut comp, v), find(&mut comp, w));
            comp[a.max(b)] = a.min(b);
        }
    }
    let mut groups: Vec<Vec<Vertex>> = vec![Vec::new(); n];
    for v in 0..n {
        let r = find(&mut comp, v);
        groups[r].push(v);
    }
    groups.retain(|o| o.len() >= 2);
    groups
}

fn classify(order: usize, orbits: &[Vec<Vertex>]) -> Classification {
    if order == 1 {
        return Classification::Trivial;
    }
    let [orbit] = orbits else {
        return Classification::Product;
    };
    let k = orbit.len();
    let factorial: usize = (1..=k).product();
    if order == k {
        Classification::Cyclic
    } else if order == factorial {
        Classification::Symmetric
    } else if order * 2 == factorial {
        Classification::Alternating
    } else {
        Classification::Product
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        let e: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::new(n, &e).unwrap()
    }

    #[test]
    fn c5_is_cyclic() {
        let s = group_stats(&cycle(5), GeneratorMode::Compound, &Limits::default()).unwrap();
        assert_eq!((s.order, s.classification, s.diameter), (5, Classification::Cyclic, 2));
    }

    #[test]
    fn k4_and_bowtie() {
        let k4 = Graph::new(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let s = group_stats(&k4, GeneratorMode::Compound, &Limits::default()).unwrap();
        assert_eq!((s.order, s.classification), (24, Classification::Symmetric));

        let bowtie = Graph::new(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).unwrap();
        let s = group_stats(&bowtie, GeneratorMode::Compound, &Limits::default()).unwrap();
        assert_eq!((s.order, s.classification), (60, Classification::Alternating));
    }

    #[test]
    fn tree_is_trivial() {
        let path = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let s = group_stats(&path, GeneratorMode::Compound, &Limits::default()).unwrap();
        assert_eq!((s.order, s.classification, s.diameter), (1, Classification::Trivial, 0));
    }

    #[test]
    fn serialized_mode_has_same_order() {
        let bowtie = Graph::new(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).unwrap();
        let a = group_stats(&bowtie, GeneratorMode::Compound, &Limits::default()).unwrap();
        let b = group_stats(&bowtie, GeneratorMode::SimpleSerialized, &Limits::default()).unwrap();
        assert_eq!(a.order, b.order);
        assert!(a.diameter <= b.diameter);
    }
}
