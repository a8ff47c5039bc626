//! Seeded random instances for property tests, acceptance runs and
//! benchmarks.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graphs::Graph;
use crate::ideals::{MonomialIdeal, SquareFreeMonomial, VariableUniverse};
use crate::resolution::{classify, Verdict};

pub type Rand = ChaCha8Rng;

pub fn rng(seed: u64) -> Rand {
    ChaCha8Rng::seed_from_u64(seed)
}

/// An ideal on `n` variables with at most `max_generators` generators,
/// each a nonempty random subset. Never the unit ideal.
pub fn random_ideal<R: Rng>(rng: &mut R, n: usize, max_generators: usize) -> MonomialIdeal {
    let universe = VariableUniverse::indexed(n).expect("n within cap");
    let count = if n == 0 { 0 } else { rng.gen_range(0..=max_generators) };
    let gens: Vec<SquareFreeMonomial> = (0..count)
        .map(|_| {
            let bits = loop {
                let b = rng.gen::<u64>() & crate::ideals::low_mask(n);
                if b != 0 {
                    break b;
                }
            };
            SquareFreeMonomial::from_bits(bits)
        })
        .collect();
    MonomialIdeal::new(universe, gens).expect("generators lie in the universe")
}

/// A random ideal with `1..=max_n` variables that the greedy resolution
/// classifies as spherical.
pub fn random_spherical_ideal<R: Rng>(rng: &mut R, max_n: usize, max_generators: usize) -> MonomialIdeal {
    loop {
        let n = rng.gen_range(1..=max_n);
        let i = random_ideal(rng, n, max_generators);
        if classify(&i).is_ok_and(|c| c.verdict == Verdict::Spherical) {
            return i;
        }
    }
}

/// A random forest on `n` vertices: each vertex after the first joins a
/// uniformly chosen earlier vertex with probability `attach`, and the
/// labels are shuffled.
pub fn random_forest<R: Rng>(rng: &mut R, n: usize, attach: f64) -> Graph {
    let mut labels: Vec<usize> = (0..n).collect();
    labels.shuffle(rng);
    let mut edges = Vec::new();
    for v in 1..n {
        if rng.gen_bool(attach) {
            edges.push((labels[rng.gen_range(0..v)], labels[v]));
        }
    }
    Graph::indexed(n, &edges).expect("forest edges are simple")
}

/// `G(n, p)`.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|_| rng.gen_bool(p))
        .collect();
    Graph::indexed(n, &edges).expect("simple by construction")
}

/// A connected graph with exactly one cycle: a random tree on `n ≥ 3`
/// vertices plus one edge between two non-adjacent vertices.
pub fn random_unicyclic<R: Rng>(rng: &mut R, n: usize) -> Graph {
    assert!(n >= 3, "a cycle needs three vertices");
    loop {
        let tree = random_forest(rng, n, 1.0);
        let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if u == v || tree.neighbors(u).contains_var(v) {
            continue;
        }
        let mut edges = tree.edges().to_vec();
        edges.push((u, v));
        return Graph::indexed(n, &edges).expect("new edge");
    }
}
