use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::config::Configuration;
use crate::feasibility::Instance;
use crate::graph::{Graph, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenKind {
    /// The cycle `C_n`.
    Cycle,
    /// Random cactus: cycles of length 3 to 6 (the last may reach 7) glued at single vertices.
    Cactus,
    /// `w × h` grid with `w` the largest divisor of `n` not above `√n`.
    Grid,
    /// Random spanning tree plus about `n/4` chords.
    Random,
}

impl std::str::FromStr for GenKind {
    type Err = GenError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "cycle" => Ok(GenKind::Cycle),
            "cactus" => Ok(GenKind::Cactus),
            "grid" => Ok(GenKind::Grid),
            "random" => Ok(GenKind::Random),
            other => Err(GenError::InvalidParams(format!("unknown kind `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
}

/// Seeded instance generator. Start and goal are independent uniform
/// placements of `p` pebbles; the same arguments always give the same instance.
pub fn gen_instance(kind: GenKind, n: usize, p: usize, seed: u64) -> Result<Instance, GenError> {
    if p == 0 || p > n {
        return Err(GenError::InvalidParams(format!("need 1 <= p <= n, got p={p} n={n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges = match kind {
        GenKind::Cycle => {
            if n < 3 {
                return Err(GenError::InvalidParams("a cycle needs n >= 3".into()));
            }
            (0..n).map(|v| (v, (v + 1) % n)).collect()
        }
        GenKind::Cactus => {
            if n < 3 {
                return Err(GenError::InvalidParams("a cactus needs n >= 3".into()));
            }
            cactus_edges(n, &mut rng)
        }
        GenKind::Grid => grid_edges(n)?,
        GenKind::Random => random_edges(n, &mut rng),
    };
    let graph = Graph::new(n, &edges).map_err(|e| GenError::InvalidParams(e.to_string()))?;
    let mut vertices: Vec<Vertex> = (0..n).collect();
    vertices.shuffle(&mut rng);
    let start = Configuration::new(vertices[..p].to_vec(), n).expect("distinct vertices");
    vertices.shuffle(&mut rng);
    let goal = Configuration::new(vertices[..p].to_vec(), n).expect("distinct vertices");
    Ok(Instance::new(graph, start, goal).expect("generated instance is valid"))
}

fn cactus_edges(n: usize, rng: &mut ChaCha8Rng) -> Vec<(Vertex, Vertex)> {
    let mut edges = Vec::new();
    let mut next = 1;
    while next < n {
        let remaining = n - next;
        let mut fresh = rng.gen_range(2..=5);
        if remaining == fresh + 1 {
            fresh += 1;
        }
        fresh = fresh.min(remaining);
        let at = rng.gen_range(0..next);
        let mut prev = at;
        for v in next..next + fresh {
            edges.push((prev, v));
            prev = v;
        }
        edges.push((prev, at));
        next += fresh;
    }
    edges
}

fn grid_edges(n: usize) -> Result<Vec<(Vertex, Vertex)>, GenError> {
    let w = (1..=n.isqrt()).rev().find(|w| n.is_multiple_of(*w)).unwrap_or(1);
    if w < 2 {
        return Err(GenError::InvalidParams(format!("{n} is not a w×h grid with w, h >= 2")));
    }
    let h = n / w;
    let mut edges = Vec::with_capacity(2 * n);
    for r in 0..h {
        for c in 0..w {
            let v = r * w + c;
            if c + 1 < w {
                edges.push((v, v + 1));
            }
            if r + 1 < h {
                edges.push((v, v + w));
            }
        }
    }
    Ok(edges)
}

fn random_edges(n: usize, rng: &mut ChaCha8Rng) -> Vec<(Vertex, Vertex)> {
    let mut edges: Vec<(Vertex, Vertex)> = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
    if n >= 3 {
        for _ in 0..n / 4 {
            let a = rng.gen_range(0..n);
            let b = rng.gen_range(0..n);
            if a != b {
                edges.push((a.min(b), a.max(b)));
            }
        }
    }
    edges.sort_unstable();
    edges.dedup();
    edges
}
