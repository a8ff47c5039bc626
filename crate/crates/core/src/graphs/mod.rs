//! Simple graphs over a variable universe, their edge and star ideals, and
//! exact classical invariants.

mod families;
mod reports;

pub use families::*;
pub use reports::*;

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideals::{MonomialIdeal, SquareFreeMonomial, Universe, VariableUniverse};
use crate::polynomial::UnivariatePolynomial;

pub const DEFAULT_MAX_VERTICES: usize = 20;
pub const DEFAULT_MAX_EDGES: usize = 24;

/// A finite simple graph whose vertices are the variables of a universe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    universe: Universe,
    adj: Vec<u64>,
    edges: Vec<(usize, usize)>,
}

/// Vertex sets are square-free monomials; internally plain bit masks.
fn mask(s: SquareFreeMonomial) -> u64 {
    s.bits()
}

fn set(bits: u64) -> SquareFreeMonomial {
    SquareFreeMonomial::from_bits(bits)
}

fn bits(m: u64) -> impl Iterator<Item = usize> {
    set(m).iter()
}

impl Graph {
    /// Edges are unordered pairs of distinct vertices, each listed once.
    pub fn new(universe: Universe, edges: &[(usize, usize)]) -> Result<Self> {
        let n = universe.len();
        let mut adj = vec![0u64; n];
        let mut list = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::VariableOutOfRange(u.max(v)));
            }
            if u == v {
                return Err(Error::Precondition(format!("loop at {}", universe.name(u))));
            }
            if adj[u] >> v & 1 == 1 {
                return Err(Error::Precondition(format!(
                    "duplicate edge {} {}",
                    universe.name(u),
                    universe.name(v)
                )));
            }
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
            list.push((u.min(v), u.max(v)));
        }
        list.sort_unstable();
        Ok(Graph {
            universe,
            adj,
            edges: list,
        })
    }

    /// A graph on `x1, ..., xn`.
    pub fn indexed(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        Self::new(VariableUniverse::indexed(n)?, edges)
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn order(&self) -> usize {
        self.universe.len()
    }

    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn vertices(&self) -> SquareFreeMonomial {
        self.universe.top()
    }

    pub fn neighbors(&self, v: usize) -> SquareFreeMonomial {
        set(self.adj[v])
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn isolated_vertices(&self) -> SquareFreeMonomial {
        set((0..self.order()).filter(|&v| self.adj[v] == 0).fold(0, |m, v| m | 1 << v))
    }

    fn closed_mask(&self, s: u64) -> u64 {
        bits(s).fold(s, |acc, v| acc | self.adj[v])
    }

    /// `N[S]`: `S` together with every neighbour of a vertex of `S`.
    pub fn closed_neighborhood(&self, s: SquareFreeMonomial) -> Result<SquareFreeMonomial> {
        self.universe.check(s)?;
        Ok(set(self.closed_mask(mask(s))))
    }

    /// The induced subgraph on the remaining vertices, over the smaller
    /// universe.
    pub fn delete(&self, s: SquareFreeMonomial) -> Result<Graph> {
        self.universe.check(s)?;
        let (universe, map) = self.universe.without(s)?;
        let edges: Vec<(usize, usize)> = self
            .edges
            .iter()
            .filter(|&&(u, v)| !s.contains_var(u) && !s.contains_var(v))
            .map(|&(u, v)| {
                let image = |x| map.apply(SquareFreeMonomial::var(x)).expect("kept").iter().next().expect("one variable");
                (image(u), image(v))
            })
            .collect();
        Graph::new(universe, &edges)
    }

    /// `(x_i x_j : {x_i, x_j} ∈ E)`.
    pub fn edge_ideal(&self) -> MonomialIdeal {
        let gens = self
            .edges
            .iter()
            .map(|&(u, v)| SquareFreeMonomial::from_vars([u, v]));
        MonomialIdeal::new(self.universe.clone(), gens).expect("edges lie in the universe")
    }

    /// `(Π_{x ∈ N[x_i]} x : i)`, minimalized.
    pub fn star_ideal(&self) -> MonomialIdeal {
        let gens = (0..self.order()).map(|v| set(self.adj[v] | 1 << v));
        MonomialIdeal::new(self.universe.clone(), gens).expect("neighbourhoods lie in the universe")
    }

    pub fn is_independent(&self, s: SquareFreeMonomial) -> bool {
        bits(mask(s)).all(|v| self.adj[v] & mask(s) == 0)
    }

    pub fn is_dominating(&self, s: SquareFreeMonomial) -> bool {
        self.closed_mask(mask(s)) == mask(self.vertices())
    }

    pub fn is_vertex_cover(&self, s: SquareFreeMonomial) -> bool {
        self.edges
            .iter()
            .all(|&(u, v)| s.contains_var(u) || s.contains_var(v))
    }

    fn check_order(&self, max_vertices: usize) -> Result<()> {
        if self.order() > max_vertices {
            return Err(Error::BudgetExceeded {
                what: "vertex",
                limit: max_vertices,
            });
        }
        Ok(())
    }

    /// Smallest `|S|` over vertex sets satisfying `pred`, searching sizes
    /// in increasing order.
    fn min_subset<F: Fn(SquareFreeMonomial) -> bool>(&self, pred: F) -> usize {
        let n = self.order();
        for k in 0..=n {
            if k_subsets(n, k).any(|s| pred(set(s))) {
                return k;
            }
        }
        unreachable!("the full vertex set satisfies every predicate used here")
    }

    /// `γ(G)`.
    pub fn domination_number(&self, max_vertices: usize) -> Result<usize> {
        self.check_order(max_vertices)?;
        Ok(self.min_subset(|s| self.is_dominating(s)))
    }

    /// `i(G)`.
    pub fn independent_domination_number(&self, max_vertices: usize) -> Result<usize> {
        self.check_order(max_vertices)?;
        Ok(self.min_subset(|s| self.is_independent(s) && self.is_dominating(s)))
    }

    /// `α_0(G)`.
    pub fn vertex_cover_number(&self, max_vertices: usize) -> Result<usize> {
        self.check_order(max_vertices)?;
        Ok(self.min_subset(|s| self.is_vertex_cover(s)))
    }

    /// `β_1(G)`, by branching on the lowest vertex with a neighbour.
    pub fn matching_number(&self, max_vertices: usize) -> Result<usize> {
        self.check_order(max_vertices)?;
        let mut memo = HashMap::new();
        Ok(self.max_matching(mask(self.vertices()), &mut memo))
    }

    fn max_matching(&self, live: u64, memo: &mut HashMap<u64, usize>) -> usize {
        let Some(v) = bits(live).find(|&v| self.adj[v] & live != 0) else {
            return 0;
        };
        if let Some(&m) = memo.get(&live) {
            return m;
        }
        let rest = live & !(1 << v);
        let mut best = self.max_matching(rest, memo);
        for u in bits(self.adj[v] & live) {
            best = best.max(1 + self.max_matching(rest & !(1 << u), memo));
        }
        memo.insert(live, best);
        best
    }

    /// `α_1(G)`, or `None` when some vertex is isolated.
    pub fn edge_cover_number(&self, max_vertices: usize) -> Result<Option<usize>> {
        self.check_order(max_vertices)?;
        if !self.isolated_vertices().is_one() {
            return Ok(None);
        }
        let mut best = self.order();
        self.cover_search(mask(self.vertices()), 0, &mut best);
        Ok(Some(best))
    }

    /// Branch and bound: the lowest uncovered vertex must be covered by one
    /// of its edges; each edge covers at most two new vertices.
    fn cover_search(&self, uncovered: u64, used: usize, best: &mut usize) {
        if uncovered == 0 {
            *best = (*best).min(used);
            return;
        }
        if used + (uncovered.count_ones() as usize).div_ceil(2) >= *best {
            return;
        }
        let v = uncovered.trailing_zeros() as usize;
        for u in bits(self.adj[v]) {
            self.cover_search(uncovered & !(1 << v) & !(1 << u), used + 1, best);
        }
    }

    /// All five classical invariants.
    pub fn invariants(&self, max_vertices: usize) -> Result<Invariants> {
        Ok(Invariants {
            gamma: self.domination_number(max_vertices)?,
            i: self.independent_domination_number(max_vertices)?,
            alpha0: self.vertex_cover_number(max_vertices)?,
            alpha1: self.edge_cover_number(max_vertices)?,
            beta1: self.matching_number(max_vertices)?,
        })
    }

    /// `cov_G(t) = Σ_{S edge cover} t^|S|`; zero when a vertex is isolated.
    pub fn edge_cover_polynomial(&self, max_edges: usize) -> Result<UnivariatePolynomial> {
        if self.size() > max_edges {
            return Err(Error::BudgetExceeded {
                what: "edge",
                limit: max_edges,
            });
        }
        let edge_masks: Vec<u64> = self.edges.iter().map(|&(u, v)| 1 << u | 1 << v).collect();
        let mut suffix = vec![0u64; edge_masks.len() + 1];
        for i in (0..edge_masks.len()).rev() {
            suffix[i] = suffix[i + 1] | edge_masks[i];
        }
        let all = mask(self.vertices());
        let mut counts = vec![0i64; edge_masks.len() + 1];
        fn go(i: usize, covered: u64, size: usize, e: &[u64], suffix: &[u64], all: u64, counts: &mut [i64]) {
            if covered | suffix[i] != all {
                return;
            }
            if i == e.len() {
                counts[size] += 1;
                return;
            }
            go(i + 1, covered, size, e, suffix, all, counts);
            go(i + 1, covered | e[i], size + 1, e, suffix, all, counts);
        }
        go(0, 0, 0, &edge_masks, &suffix, all, &mut counts);
        Ok(UnivariatePolynomial::from_i64(&counts))
    }

    /// `Σ_{S dominating} (-1)^|S|` by enumerating all vertex subsets.
    pub fn dominating_sign_sum(&self, max_vertices: usize) -> Result<i64> {
        self.check_order(max_vertices)?;
        let n = self.order();
        let all = mask(self.vertices());
        let mut sum = 0i64;
        for s in 0..(1u64 << n) {
            if self.closed_mask(s) == all {
                sum += if s.count_ones() % 2 == 0 { 1 } else { -1 };
            }
        }
        Ok(sum)
    }

    /// Connected components as vertex sets, ordered by smallest vertex.
    pub fn components(&self) -> Vec<SquareFreeMonomial> {
        let mut seen = 0u64;
        let mut out = Vec::new();
        for v in 0..self.order() {
            if seen >> v & 1 == 1 {
                continue;
            }
            let mut comp = 1u64 << v;
            let mut frontier = comp;
            while frontier != 0 {
                let next = bits(frontier).fold(0, |acc, w| acc | self.adj[w]) & !comp;
                comp |= next;
                frontier = next;
            }
            seen |= comp;
            out.push(set(comp));
        }
        out
    }

    /// Components, first Betti number and, when it is one, the cycle.
    pub fn structure(&self) -> Structure {
        let components = self.components().len();
        let h1 = components as i64 + self.size() as i64 - self.order() as i64;
        let cycle = (h1 == 1).then(|| self.unique_cycle());
        Structure {
            components,
            h1,
            is_forest: h1 == 0,
            cycle,
        }
    }

    /// Strip vertices of degree at most one until none is left; what
    /// remains of a graph with one independent cycle is that cycle, listed
    /// in walking order from its smallest vertex.
    fn unique_cycle(&self) -> Vec<usize> {
        let mut live = mask(self.vertices());
        loop {
            let strip = bits(live)
                .filter(|&v| (self.adj[v] & live).count_ones() <= 1)
                .fold(0u64, |m, v| m | 1 << v);
            if strip == 0 {
                break;
            }
            live &= !strip;
        }
        let Some(start) = bits(live).next() else {
            return Vec::new();
        };
        let mut cycle = vec![start];
        let mut prev = usize::MAX;
        let mut cur = start;
        loop {
            let next = bits(self.adj[cur] & live)
                .find(|&w| w != prev)
                .expect("cycle vertices have two cycle neighbours");
            if next == start {
                break;
            }
            cycle.push(next);
            prev = cur;
            cur = next;
        }
        cycle
    }
}

/// Iterate the `k`-subsets of `{0, ..., n-1}` as bit masks.
pub(crate) fn k_subsets(n: usize, k: usize) -> impl Iterator<Item = u64> {
    let limit = if n >= 64 { u64::MAX } else { 1u64 << n };
    let first = if k == 0 {
        Some(0)
    } else if k > n {
        None
    } else if k == 64 {
        Some(u64::MAX)
    } else {
        Some((1u64 << k) - 1)
    };
    std::iter::successors(first, move |&s| {
        if s == 0 || (n < 64 && s >= limit) {
            return None;
        }
        // Gosper's hack: next integer with the same number of set bits.
        let c = s & s.wrapping_neg();
        let r = s.checked_add(c)?;
        let next = (((r ^ s) >> 2) / c) | r;
        (n >= 64 || next < limit).then_some(next)
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Invariants {
    pub gamma: usize,
    pub i: usize,
    pub alpha0: usize,
    /// Undefined in the presence of isolated vertices.
    pub alpha1: Option<usize>,
    pub beta1: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Structure {
    pub components: usize,
    pub h1: i64,
    pub is_forest: bool,
    pub cycle: Option<Vec<usize>>,
}
