use super::{Expander, Limits, MoveSet, OracleError};
use crate::config::Configuration;
use crate::graph::{Graph, Vertex};

/// Connected-component labels for every placement of `p` pebbles on `g`.
///
/// Answers any number of reachability queries for one `(g, p)` after a
/// single sweep of the whole configuration space. Placements are ranked as
/// partial permutations, so the table is dense (`n!/(n-p)!` entries).
#[derive(Debug, Clone)]
pub struct ReachabilityAtlas {
    n: usize,
    p: usize,
    labels: Vec<u32>,
    component_sizes: Vec<usize>,
}

const UNSEEN: u32 = u32::MAX;

impl ReachabilityAtlas {
    pub fn build(g: &Graph, p: usize, moves: MoveSet, limits: &Limits) -> Result<Self, OracleError> {
        let n = g.n();
        let too_large = OracleError::StateSpaceTooLarge(limits.max_states);
        if n > 32 || p > n {
            return Err(too_large);
        }
        let mut total: usize = 1;
        for i in 0..p {
            total = total.checked_mul(n - i).ok_or(too_large.clone())?;
            if total > limits.max_states {
                return Err(too_large);
            }
        }
        let mut expander = Expander::new(g, moves, limits)?;
        let mut labels = vec![UNSEEN; total];
        let mut component_sizes = Vec::new();
        let mut stack = Vec::new();
        let mut buf = Vec::with_capacity(p);
        for seed in 0..total {
            if labels[seed] != UNSEEN {
                continue;
            }
            let label = component_sizes.len() as u32;
            labels[seed] = label;
            let mut size = 1;
            stack.push(seed);
            while let Some(r) = stack.pop() {
                unrank(n, p, r, &mut buf);
                expander.for_each(&buf, |next, _| {
                    let k = rank(n, next);
                    if labels[k] == UNSEEN {
                        labels[k] = label;
                        size += 1;
                        stack.push(k);
                    }
                });
            }
            component_sizes.push(size);
        }
        Ok(Self {
            n,
            p,
            labels,
            component_sizes,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn state_count(&self) -> usize {
        self.labels.len()
    }

    pub fn component_count(&self) -> usize {
        self.component_sizes.len()
    }

    pub fn component_of(&self, c: &Configuration) -> usize {
        self.labels[rank(self.n, c.placement())] as usize
    }

    /// Number of configurations reachable from `c`, including `c`.
    pub fn reachable_count(&self, c: &Configuration) -> usize {
        self.component_sizes[self.component_of(c)]
    }

    pub fn reachable(&self, s: &Configuration, d: &Configuration) -> bool {
        self.component_of(s) == self.component_of(d)
    }

    /// The configuration with the given dense index.
    pub fn configuration(&self, index: usize) -> Configuration {
        let mut buf = Vec::with_capacity(self.p);
        unrank(self.n, self.p, index, &mut buf);
        Configuration::from_vec_unchecked(buf)
    }
}

/// Mixed-radix rank of a partial permutation of `0..n`.
fn rank(n: usize, placement: &[Vertex]) -> usize {
    let mut used: u32 = 0;
    let mut r = 0;
    for (i, &v) in placement.iter().enumerate() {
        let below = (used & ((1u32 << v) - 1)).count_ones() as usize;
        r = r * (n - i) + (v - below);
        used |= 1 << v;
    }
    r
}

fn unrank(n: usize, p: usize, mut r: usize, out: &mut Vec<Vertex>) {
    let mut digits = [0usize; 32];
    for i in (0..p).rev() {
        digits[i] = r % (n - i);
        r /= n - i;
    }
    out.clear();
    let mut used: u32 = 0;
    for &d in &digits[..p] {
        let mut skip = d;
        let mut v = 0;
        loop {
            if used & (1 << v) == 0 {
                if skip == 0 {
                    break;
                }
                skip -= 1;
            }
            v += 1;
        }
        used |= 1 << v;
        out.push(v);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_is_a_bijection() {
        let (n, p) = (5, 3);
        let mut buf = Vec::new();
        for r in 0..60 {
            unrank(n, p, r, &mut buf);
            assert_eq!(rank(n, &buf), r);
        }
    }

    #[test]
    fn bowtie_full_splits_by_parity() {
        let g = Graph::new(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).unwrap();
        let atlas = ReachabilityAtlas::build(&g, 5, MoveSet::WithRotations, &Limits::default()).unwrap();
        assert_eq!(atlas.state_count(), 120);
        assert_eq!(atlas.component_count(), 2);
        let s = Configuration::new(vec![0, 1, 2, 3, 4], 5).unwrap();
        assert_eq!(atlas.reachable_count(&s), 60);
    }

    #[test]
    fn path_keeps_order() {
        let g = Graph::new(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let atlas = ReachabilityAtlas::build(&g, 2, MoveSet::SimpleOnly, &Limits::default()).unwrap();
        assert_eq!(atlas.component_count(), 2);
    }
}
