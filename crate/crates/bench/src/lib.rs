//! Fixed inputs for the benchmarks, built from seed 0.

use domcore::gen;
use domcore::graphs::{cycle, reference_tree};
use domcore::{Graph, MonomialIdeal, VariableUniverse};

pub fn seven_variable_ideal() -> MonomialIdeal {
    let u = VariableUniverse::indexed(7).expect("small universe");
    MonomialIdeal::parse(u, &["x1 x2", "x3 x7", "x5 x6", "x5 x7", "x1 x3 x4", "x2 x3 x4"]).expect("valid generators")
}

pub fn tree() -> Graph {
    reference_tree().graph
}

pub fn long_cycle() -> Graph {
    cycle(15)
}

/// Random ideals on ten variables with up to twelve generators.
pub fn random_ideals(count: usize) -> Vec<MonomialIdeal> {
    let mut rng = gen::rng(0);
    (0..count).map(|_| gen::random_ideal(&mut rng, 10, 12)).collect()
}

/// Random forests on at most fourteen vertices.
pub fn random_forests(count: usize) -> Vec<Graph> {
    let mut rng = gen::rng(0);
    (0..count).map(|k| gen::random_forest(&mut rng, 8 + k % 7, 0.8)).collect()
}
