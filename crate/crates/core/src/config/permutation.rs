use thiserror::Error;

use super::{Configuration, Pebble};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermutationError {
    #[error("configurations occupy different vertex sets")]
    VertexSetMismatch,
}

/// A permutation of pebbles `0..p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    image: Vec<Pebble>,
}

impl Permutation {
    pub fn identity(p: usize) -> Self {
        Self {
            image: (0..p).collect(),
        }
    }

    /// `image` must be a bijection on `0..image.len()`.
    pub fn from_image(image: Vec<Pebble>) -> Option<Self> {
        let mut seen = vec![false; image.len()];
        for &i in &image {
            if i >= image.len() || std::mem::replace(&mut seen[i], true) {
                return None;
            }
        }
        Some(Self { image })
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    pub fn apply(&self, i: Pebble) -> Pebble {
        self.image[i]
    }

    pub fn image(&self) -> &[Pebble] {
        &self.image
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation {
            image: other.image.iter().map(|&j| self.image[j]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.image.len()];
        for (i, &j) in self.image.iter().enumerate() {
            inv[j] = i;
        }
        Permutation { image: inv }
    }

    /// Disjoint cycles of length at least two, each starting at its largest
    /// element; cycles are listed by decreasing largest element.
    pub fn cycles(&self) -> Vec<Vec<Pebble>> {
        let mut seen = vec![false; self.image.len()];
        let mut out = Vec::new();
        for start in (0..self.image.len()).rev() {
            if seen[start] || self.image[start] == start {
                seen[start] = true;
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut cur = self.image[start];
            while cur != start {
                seen[cur] = true;
                cycle.push(cur);
                cur = self.image[cur];
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_count(&self) -> usize {
        let mut seen = vec![false; self.image.len()];
        let mut count = 0;
        for start in 0..self.image.len() {
            if seen[start] {
                continue;
            }
            count += 1;
            let mut cur = start;
            while !seen[cur] {
                seen[cur] = true;
                cur = self.image[cur];
            }
        }
        count
    }

    pub fn transposition(p: usize, a: Pebble, b: Pebble) -> Self {
        let mut image: Vec<Pebble> = (0..p).collect();
        image.swap(a, b);
        Self { image }
    }
}

/// Even iff `p - #cycles` is even.
pub fn parity(perm: &Permutation) -> Parity {
    if (perm.len() - perm.cycle_count()).is_multiple_of(2) {
        Parity::Even
    } else {
        Parity::Odd
    }
}

/// `σ(i) = s⁻¹(t(i))`: the pebble that, in `s`, sits where pebble `i` sits
/// in `t`.
pub fn permutation_between(s: &Configuration, t: &Configuration) -> Result<Permutation, PermutationError> {
    if s.pebble_count() != t.pebble_count() {
        return Err(PermutationError::VertexSetMismatch);
    }
    let n = s.placement().iter().chain(t.placement()).max().map_or(0, |&v| v + 1);
    let occ = s.occupants(n);
    let image = t
        .placement()
        .iter()
        .map(|&v| occ[v].ok_or(PermutationError::VertexSetMismatch))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Permutation { image })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn conf(v: Vec<usize>) -> Configuration {
        Configuration::from_vec_unchecked(v)
    }

    #[test]
    fn identity_swap_and_rotation() {
        let s = conf(vec![0, 1, 2]);
        let id = permutation_between(&s, &s).unwrap();
        assert!(id.is_identity());
        assert_eq!(parity(&id), Parity::Even);

        let swapped = conf(vec![1, 0, 2]);
        let t = permutation_between(&s, &swapped).unwrap();
        assert_eq!(t.image(), &[1, 0, 2]);
        assert_eq!(parity(&t), Parity::Odd);

        let rotated = conf(vec![1, 2, 0]);
        let r = permutation_between(&s, &rotated).unwrap();
        assert_eq!(r.cycles().len(), 1);
        assert_eq!(parity(&r), Parity::Even);
    }

    #[test]
    fn parity_of_products() {
        assert_eq!(parity(&Permutation::identity(5)), Parity::Even);
        assert_eq!(parity(&Permutation::transposition(5, 1, 3)), Parity::Odd);
        let two = Permutation::from_image(vec![1, 0, 3, 2]).unwrap();
        assert_eq!(parity(&two), Parity::Even);
    }

    #[test]
    fn vertex_set_mismatch() {
        let s = conf(vec![0, 1]);
        let t = conf(vec![0, 2]);
        assert_eq!(permutation_between(&s, &t), Err(PermutationError::VertexSetMismatch));
    }

    fn perm_strategy() -> impl Strategy<Value = Vec<usize>> {
        (1usize..9).prop_flat_map(shuffled)
    }

    fn shuffled(p: usize) -> impl Strategy<Value = Vec<usize>> {
        Just((0..p).collect::<Vec<_>>()).prop_shuffle()
    }

    fn perm_pair() -> impl Strategy<Value = (Vec<usize>, Vec<usize>)> {
        (1usize..9).prop_flat_map(|p| (shuffled(p), shuffled(p)))
    }

    proptest! {
        #[test]
        fn between_is_inverse_of_reverse((v, w) in perm_pair()) {
            let s = conf(v);
            let t = conf(w);
            let a = permutation_between(&s, &t).unwrap();
            let b = permutation_between(&t, &s).unwrap();
            prop_assert!(a.compose(&b).is_identity());
        }

        #[test]
        fn transposition_flips_parity(v in perm_strategy(), i in 0usize..8, j in 0usize..8) {
            let p = v.len();
            prop_assume!(i < p && j < p && i != j);
            let perm = Permutation::from_image(v).unwrap();
            let flipped = perm.compose(&Permutation::transposition(p, i, j));
            prop_assert_ne!(parity(&perm), parity(&flipped));
        }
    }
}
