//! Named graphs and exhaustive tree enumeration.

use std::collections::BTreeSet;

use crate::ideals::VariableUniverse;

use super::Graph;

/// `x1 - x2 - ... - xn`.
pub fn path(n: usize) -> Graph {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::indexed(n, &edges).expect("path is simple")
}

/// The cycle on `n ≥ 3` vertices.
pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "cycles need three vertices");
    let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    edges.push((0, n - 1));
    Graph::indexed(n, &edges).expect("cycle is simple")
}

/// `x1` joined to `k` leaves.
pub fn star(k: usize) -> Graph {
    let edges: Vec<_> = (1..=k).map(|i| (0, i)).collect();
    Graph::indexed(k + 1, &edges).expect("star is simple")
}

pub fn complete(n: usize) -> Graph {
    let edges: Vec<_> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    Graph::indexed(n, &edges).expect("complete graph is simple")
}

/// `n` vertices, no edges.
pub fn empty(n: usize) -> Graph {
    Graph::indexed(n, &[]).expect("no edges")
}

/// `n` disjoint copies of a graph on `m` vertices given by its edges.
fn disjoint_copies(n: usize, m: usize, edges: &[(usize, usize)]) -> Graph {
    let all: Vec<_> = (0..n)
        .flat_map(|c| edges.iter().map(move |&(u, v)| (c * m + u, c * m + v)))
        .collect();
    Graph::indexed(n * m, &all).expect("copies are disjoint")
}

/// `T^(n)`: `n` disjoint triangles.
pub fn disjoint_triangles(n: usize) -> Graph {
    disjoint_copies(n, 3, &[(0, 1), (1, 2), (0, 2)])
}

/// `P^(n)`: `n` disjoint edges.
pub fn disjoint_edges(n: usize) -> Graph {
    disjoint_copies(n, 2, &[(0, 1)])
}

/// Two adjacent centres `c1, c2`, each carrying `k + 1` leaves. Its edge
/// ideal is conical, `γ = 2` and `i = k + 2`.
pub fn double_spider(k: usize) -> Graph {
    let mut names = vec!["c1".to_string(), "c2".to_string()];
    let mut edges = vec![(0, 1)];
    for c in 0..2 {
        for j in 1..=k + 1 {
            names.push(format!("l{}_{j}", c + 1));
            edges.push((c, names.len() - 1));
        }
    }
    Graph::new(VariableUniverse::new(names).expect("distinct names"), &edges).expect("tree")
}

/// The fourteen-vertex reference tree together with the two labelled
/// maximal resolutions used as golden data.
#[derive(Debug, Clone)]
pub struct ReferenceTree {
    pub graph: Graph,
    /// Resolution of the edge ideal: `(a1, b1), (a2, d1), (a3, p9)`.
    pub independence_pairs: Vec<(usize, usize)>,
    /// Resolution of the star ideal: `(a1, b1), (p9, a3), (p8, p7), (a2, d1)`.
    pub dominance_pairs: Vec<(usize, usize)>,
}

/// `a1` carries the leaves `b1, c1..c4` and the path `a1 - p7 - p8`; `p8`
/// carries `p9 - a3` and `a2`, which carries the leaves `d1..d3`.
pub fn reference_tree() -> ReferenceTree {
    let names = [
        "a1", "b1", "c1", "c2", "c3", "c4", "p7", "p8", "p9", "a3", "a2", "d1", "d2", "d3",
    ];
    let u = VariableUniverse::new(names).expect("distinct names");
    let ix = |s: &str| u.index_of(s).expect("named vertex");
    let pairs = [
        ("a1", "b1"),
        ("a1", "c1"),
        ("a1", "c2"),
        ("a1", "c3"),
        ("a1", "c4"),
        ("a1", "p7"),
        ("p7", "p8"),
        ("p8", "p9"),
        ("p9", "a3"),
        ("p8", "a2"),
        ("a2", "d1"),
        ("a2", "d2"),
        ("a2", "d3"),
    ];
    let edges: Vec<_> = pairs.iter().map(|&(a, b)| (ix(a), ix(b))).collect();
    let independence_pairs = vec![(ix("a1"), ix("b1")), (ix("a2"), ix("d1")), (ix("a3"), ix("p9"))];
    let dominance_pairs = vec![
        (ix("a1"), ix("b1")),
        (ix("p9"), ix("a3")),
        (ix("p8"), ix("p7")),
        (ix("a2"), ix("d1")),
    ];
    ReferenceTree {
        graph: Graph::new(u.clone(), &edges).expect("tree"),
        independence_pairs,
        dominance_pairs,
    }
}

/// Canonical string of a rooted tree: sorted children codes in brackets.
fn rooted_code(adj: &[Vec<usize>], v: usize, parent: usize) -> String {
    let mut kids: Vec<String> = adj[v]
        .iter()
        .filter(|&&w| w != parent)
        .map(|&w| rooted_code(adj, w, v))
        .collect();
    kids.sort_unstable();
    format!("({})", kids.concat())
}

/// Isomorphism-invariant code of a tree: the least rooted code over its
/// centres.
fn tree_code(n: usize, edges: &[(usize, usize)]) -> String {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut degree: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut remaining = n;
    let mut layer: Vec<usize> = (0..n).filter(|&v| degree[v] <= 1).collect();
    while remaining > 2 {
        remaining -= layer.len();
        let mut next = Vec::new();
        for &v in &layer {
            for &w in &adj[v] {
                degree[w] -= 1;
                if degree[w] == 1 {
                    next.push(w);
                }
            }
        }
        layer = next;
    }
    layer
        .iter()
        .map(|&c| rooted_code(&adj, c, usize::MAX))
        .min()
        .unwrap_or_default()
}

/// Every tree on `n` vertices up to isomorphism, by attaching a leaf to
/// each vertex of each tree on `n - 1` vertices and keeping new codes.
pub fn trees(n: usize) -> Vec<Graph> {
    let mut level: Vec<Vec<(usize, usize)>> = if n == 0 { Vec::new() } else { vec![Vec::new()] };
    for m in 2..=n {
        let mut seen = BTreeSet::new();
        let mut next = Vec::new();
        for edges in &level {
            for v in 0..m - 1 {
                let mut e = edges.clone();
                e.push((v, m - 1));
                if seen.insert(tree_code(m, &e)) {
                    next.push(e);
                }
            }
        }
        level = next;
    }
    level
        .into_iter()
        .map(|e| Graph::indexed(n, &e).expect("tree"))
        .collect()
}

/// All trees with `1..=max_n` vertices up to isomorphism.
pub fn trees_up_to(max_n: usize) -> Vec<Graph> {
    (1..=max_n).flat_map(trees).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tree_counts_match_the_known_sequence() {
        let counts: Vec<usize> = (1..=9).map(|n| trees(n).len()).collect();
        assert_eq!(counts, [1, 1, 1, 2, 3, 6, 11, 23, 47]);
        assert_eq!(trees_up_to(9).len(), 95);
    }

    #[test]
    fn families_have_expected_sizes() {
        assert_eq!(path(4).size(), 3);
        assert_eq!(cycle(5).size(), 5);
        assert_eq!(star(3).order(), 4);
        assert_eq!(complete(4).size(), 6);
        assert_eq!(disjoint_triangles(2).size(), 6);
        assert_eq!(disjoint_edges(3).order(), 6);
        let s = double_spider(2);
        assert_eq!((s.order(), s.size()), (8, 7));
    }

    #[test]
    fn reference_tree_shape() {
        let t = reference_tree();
        assert_eq!((t.graph.order(), t.graph.size()), (14, 13));
        assert!(t.graph.structure().is_forest);
        assert_eq!(t.graph.structure().components, 1);
    }
}
