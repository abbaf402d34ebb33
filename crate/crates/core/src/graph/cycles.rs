use thiserror::Error;

use super::{Graph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycleSetError {
    #[error("more than {0} cycles or cycle sets")]
    CapExceeded(usize),
}

/// All simple cycles of `g`, each listed once, starting at its smallest
/// vertex and heading toward the smaller of its two neighbors on the cycle.
/// Sorted lexicographically.
pub fn simple_cycles(g: &Graph, cap: usize) -> Result<Vec<Vec<Vertex>>, CycleSetError> {
    let n = g.n();
    let mut out = Vec::new();
    let mut on_path = vec![false; n];
    for s in 0..n {
        let mut path = vec![s];
        on_path[s] = true;
        // stack of neighbor cursors, one per path vertex
        let mut cursor = vec![0usize];
        while let Some(&u) = path.last() {
            let depth = path.len() - 1;
            let idx = cursor[depth];
            match g.neighbors(u).get(idx) {
                None => {
                    on_path[u] = false;
                    path.pop();
                    cursor.pop();
                }
                Some(&w) => {
                    cursor[depth] += 1;
                    if w == s && path.len() >= 3 && path[1] < path[path.len() - 1] {
                        out.push(path.clone());
                        if out.len() > cap {
                            on_path.iter_mut().for_each(|b| *b = false);
                            return Err(CycleSetError::CapExceeded(cap));
                        }
                    } else if w > s && !on_path[w] {
                        on_path[w] = true;
                        path.push(w);
                        cursor.push(0);
                    }
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Every nonempty set of pairwise vertex-disjoint simple cycles of `g`.
/// Each set yields `2^|set|` signed compound rotations.
pub fn enumerate_disjoint_cycle_sets(g: &Graph, cap: usize) -> Result<Vec<Vec<Vec<Vertex>>>, CycleSetError> {
    let cycles = simple_cycles(g, cap)?;
    let mut out = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();
    let mut used = vec![false; g.n()];
    extend_sets(&cycles, 0, &mut chosen, &mut used, &mut out, cap)?;
    Ok(out)
}

fn extend_sets(
    cycles: &[Vec<Vertex>],
    from: usize,
    chosen: &mut Vec<usize>,
    used: &mut Vec<bool>,
    out: &mut Vec<Vec<Vec<Vertex>>>,
    cap: usize,
) -> Result<(), CycleSetError> {
    for i in from..cycles.len() {
        if cycles[i].iter().any(|&v| used[v]) {
            continue;
        }
        chosen.push(i);
        for &v in &cycles[i] {
            used[v] = true;
        }
        out.push(chosen.iter().map(|&c| cycles[c].clone()).collect());
        if out.len() > cap {
            return Err(CycleSetError::CapExceeded(cap));
        }
        extend_sets(cycles, i + 1, chosen, used, out, cap)?;
        for &v in &cycles[i] {
            used[v] = false;
        }
        chosen.pop();
    }
    Ok(())
}

/// Number of signed generators produced by a family of cycle sets.
pub fn signed_generator_count(sets: &[Vec<Vec<Vertex>>]) -> usize {
    sets.iter().map(|s| 1usize << s.len()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fig3() -> Graph {
        let mut e = vec![(4, 5)];
        for base in [0, 5] {
            for i in 0..5 {
                e.push((base + i, base + (i + 1) % 5));
            }
        }
        Graph::new(10, &e).unwrap()
    }

    #[test]
    fn two_disjoint_pentagons() {
        let sets = enumerate_disjoint_cycle_sets(&fig3(), 1000).unwrap();
        assert_eq!(sets.len(), 3);
        assert_eq!(signed_generator_count(&sets), 8);
    }

    #[test]
    fn triangle_and_bowtie() {
        let tri = Graph::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let sets = enumerate_disjoint_cycle_sets(&tri, 10).unwrap();
        assert_eq!(sets, vec![vec![vec![0, 1, 2]]]);
        assert_eq!(signed_generator_count(&sets), 2);

        let bowtie = Graph::new(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).unwrap();
        let sets = enumerate_disjoint_cycle_sets(&bowtie, 10).unwrap();
        assert_eq!(sets.len(), 2);
        assert_eq!(signed_generator_count(&sets), 4);
    }

    #[test]
    fn k4_has_seven_cycles() {
        let k4 = Graph::new(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let cycles = simple_cycles(&k4, 100).unwrap();
        assert_eq!(cycles.len(), 7);
        assert!(cycles.iter().all(|c| k4.is_graph_cycle(c)));
    }

    #[test]
    fn cap_is_enforced() {
        let k4 = Graph::new(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(simple_cycles(&k4, 3), Err(CycleSetError::CapExceeded(3)));
    }
}
