//! Forest, unicyclic and homology-bound reports for graphs.
//!
//! Each report bundles the computed quantities with named pass/fail checks.

use std::collections::HashMap;

use num_traits::ToPrimitive;
use serde::Serialize;

use crate::analysis::{analyze, AnalysisOptions, Budgets, IdealAnalysis};
use crate::complexes::SimplicialComplex;
use crate::error::{Error, Result};
use crate::homology::{reduced_homology, HomologySize};
use crate::ideals::SquareFreeMonomial;
use crate::resolution::{classify, Verdict};

use super::{bits, mask, set, Graph, Invariants};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
}

fn check(name: &'static str, passed: bool) -> Check {
    Check { name, passed }
}

/// The nine equivalent descriptions of a conical forest, each evaluated
/// independently.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ForestConditions {
    pub conical: bool,
    pub contractible: bool,
    pub euler_even: bool,
    pub cov_at_minus_one_zero: bool,
    pub cov_at_one_even: bool,
    pub some_sequence_isolates: bool,
    pub every_maximal_sequence_isolates: bool,
    pub some_vertex_agrees: bool,
    pub every_vertex_agrees: bool,
}

impl ForestConditions {
    pub fn agree(&self) -> bool {
        let v = [
            self.conical,
            self.contractible,
            self.euler_even,
            self.cov_at_minus_one_zero,
            self.cov_at_one_even,
            self.some_sequence_isolates,
            self.every_maximal_sequence_isolates,
            self.some_vertex_agrees,
            self.every_vertex_agrees,
        ];
        v.iter().all(|&x| x == v[0])
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ForestReport {
    pub vertices: usize,
    pub edges: usize,
    pub invariants: Invariants,
    pub independence: IdealAnalysis,
    pub dominance: IdealAnalysis,
    pub edge_cover_polynomial: String,
    pub cov_at_minus_one: i64,
    pub cov_at_one: i64,
    pub conditions: ForestConditions,
    pub dominating_sign_sum: i64,
    pub checks: Vec<Check>,
}

impl ForestReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&'static str> {
        self.checks.iter().filter(|c| !c.passed).map(|c| c.name).collect()
    }
}

fn contractible(g: &Graph, budgets: &Budgets) -> Result<bool> {
    let complex = SimplicialComplex::realize(&g.edge_ideal(), budgets.max_faces)?;
    Ok(reduced_homology(&complex)?.is_zero())
}

/// Vertices adjacent to a leaf of the induced subgraph on `live`.
fn leaf_supports(g: &Graph, live: u64) -> u64 {
    bits(live)
        .filter(|&v| (g.adj[v] & live).count_ones() == 1)
        .fold(0, |acc, leaf| acc | (g.adj[leaf] & live))
}

fn has_isolated(g: &Graph, live: u64) -> bool {
    bits(live).any(|v| g.adj[v] & live == 0)
}

/// Leaf-stripping sequences: `F_1 = F`, `F_{i+1} = F_i \ N[a_i]` with
/// `a_i` adjacent to a leaf of `F_i`. Returns whether some sequence reaches
/// a graph with an isolated vertex, and whether every maximal one passes
/// through such a graph.
fn stripping_sequences(g: &Graph) -> (bool, bool) {
    fn some(g: &Graph, live: u64, memo: &mut HashMap<u64, bool>) -> bool {
        if has_isolated(g, live) {
            return true;
        }
        if let Some(&r) = memo.get(&live) {
            return r;
        }
        let r = bits(leaf_supports(g, live)).any(|a| some(g, live & !g.closed_mask(1 << a), memo));
        memo.insert(live, r);
        r
    }
    fn every(g: &Graph, live: u64, memo: &mut HashMap<u64, bool>) -> bool {
        if has_isolated(g, live) {
            return true;
        }
        if let Some(&r) = memo.get(&live) {
            return r;
        }
        let moves = leaf_supports(g, live);
        let r = moves != 0 && bits(moves).all(|a| every(g, live & !g.closed_mask(1 << a), memo));
        memo.insert(live, r);
        r
    }
    let all = mask(g.vertices());
    (some(g, all, &mut HashMap::new()), every(g, all, &mut HashMap::new()))
}

/// `(some v, every v)` for which `G \ v` and `G \ N[v]` have independence
/// complexes that are both contractible or both not.
fn vertex_agreement(g: &Graph, budgets: &Budgets) -> Result<(bool, bool)> {
    let mut some = false;
    let mut every = true;
    for v in 0..g.order() {
        let vset = SquareFreeMonomial::var(v);
        let deleted = contractible(&g.delete(vset)?, budgets)?;
        let removed = contractible(&g.delete(g.closed_neighborhood(vset)?)?, budgets)?;
        let agree = deleted == removed;
        some |= agree;
        every &= agree;
    }
    Ok((some, every && g.order() > 0))
}

/// Whether the faces of the dominance complex are exactly the complements
/// of the dominating sets, by enumerating every vertex subset.
pub fn dominance_faces_are_complements(g: &Graph, budgets: &Budgets) -> Result<bool> {
    g.check_order(budgets.max_vertices)?;
    let complex = SimplicialComplex::realize(&g.star_ideal(), budgets.max_faces)?;
    let all = mask(g.vertices());
    Ok((0..=all).all(|s| complex.contains(set(s)) == g.is_dominating(set(all & !s))))
}

fn sign(k: usize) -> i64 {
    if k.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn small(x: num_bigint::BigInt) -> Result<i64> {
    x.to_i64().ok_or_else(|| Error::Internal("edge cover count exceeds i64".into()))
}

pub fn forest_report(g: &Graph, budgets: &Budgets) -> Result<ForestReport> {
    if !g.structure().is_forest {
        return Err(Error::NotAForest);
    }
    let options = AnalysisOptions {
        witness: true,
        generator: true,
        all_resolutions: false,
    };
    let inv = g.invariants(budgets.max_vertices)?;
    let independence = analyze(&g.edge_ideal(), budgets, options)?;
    let dominance = analyze(&g.star_ideal(), budgets, options)?;
    let cov = g.edge_cover_polynomial(budgets.max_edges)?;
    let cov_m1 = small(cov.eval(-1))?;
    let cov_1 = small(cov.eval(1))?;
    let (some_seq, every_seq) = stripping_sequences(g);
    let (some_v, every_v) = vertex_agreement(g, budgets)?;
    let conditions = ForestConditions {
        conical: independence.verdict == Verdict::Conical,
        contractible: independence.homology.is_zero(),
        euler_even: independence.euler.enumeration % 2 == 0,
        cov_at_minus_one_zero: cov_m1 == 0,
        cov_at_one_even: cov_1 % 2 == 0,
        some_sequence_isolates: some_seq,
        every_maximal_sequence_isolates: every_seq,
        some_vertex_agrees: some_v,
        every_vertex_agrees: every_v,
    };
    let sign_sum = g.dominating_sign_sum(budgets.max_vertices)?;
    let n = g.order();
    let spherical = independence.verdict == Verdict::Spherical;
    let mut checks = vec![
        check("independence_consistent", independence.consistent()),
        check("independence_simple_when_spherical", !spherical || independence.simple),
        check("depth_equals_independent_domination", !spherical || independence.depth == Some(inv.i)),
        check("domination_equals_independent_domination", !spherical || inv.gamma == inv.i),
        check("forest_conditions_agree", conditions.agree()),
        check("dominance_consistent", dominance.consistent()),
        check("dominance_simple", dominance.verdict == Verdict::Spherical && dominance.simple),
        check(
            "dominance_depth_equals_matching",
            dominance.depth == Some(inv.beta1) && inv.beta1 == inv.alpha0,
        ),
        check(
            "dominance_homology_is_sphere",
            dominance.homology.is_sphere(inv.beta1 as i64 - 1),
        ),
        check("konig", inv.alpha0 == inv.beta1),
        check("gallai", inv.alpha1.is_none_or(|a1| a1 + inv.beta1 == n)),
        check("dominating_sign_identity", sign_sum == sign(inv.beta1 + n)),
        check(
            "independence_depth_at_most_dominance_depth",
            !spherical || independence.depth <= dominance.depth,
        ),
    ];
    if spherical {
        checks.push(check("independence_generator", independence.generator.as_ref().is_some_and(|g| g.generates)));
    }
    checks.push(check("dominance_generator", dominance.generator.as_ref().is_some_and(|g| g.generates)));
    if n <= 10 {
        checks.push(check("dominance_faces_are_complements", dominance_faces_are_complements(g, budgets)?));
    }
    Ok(ForestReport {
        vertices: n,
        edges: g.size(),
        invariants: inv,
        independence,
        dominance,
        edge_cover_polynomial: cov.to_string(),
        cov_at_minus_one: cov_m1,
        cov_at_one: cov_1,
        conditions,
        dominating_sign_sum: sign_sum,
        checks,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum HomotopyClass {
    Contractible,
    Sphere,
    Wedge,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnicyclicReport {
    pub cycle: Vec<String>,
    pub cycle_length: usize,
    pub independence: IdealAnalysis,
    pub edge_cover_polynomial: String,
    pub cov_at_minus_one: i64,
    /// Predicted from `|ẽ|`.
    pub class: Option<HomotopyClass>,
    /// Tentacle roots on the cycle and whether each tentacle's edge ideal
    /// is conical.
    pub tentacles: Vec<(String, bool)>,
    pub checks: Vec<Check>,
}

impl UnicyclicReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Trees hanging off the cycle, each given with its root on the cycle
/// (a leaf of the tentacle) and the induced subgraph.
fn tentacles(g: &Graph, cycle: &[usize]) -> Result<Vec<(usize, Graph)>> {
    let on_cycle = cycle.iter().fold(0u64, |m, &v| m | 1 << v);
    let off = mask(g.vertices()) & !on_cycle;
    let mut out = Vec::new();
    for &v in cycle {
        for w in bits(g.adj[v] & off) {
            let mut comp = 1u64 << w;
            let mut frontier = comp;
            while frontier != 0 {
                let next = bits(frontier).fold(0, |acc, x| acc | g.adj[x]) & off & !comp;
                comp |= next;
                frontier = next;
            }
            let keep = comp | 1 << v;
            let sub = g.delete(set(mask(g.vertices()) & !keep))?;
            let root = (0..v).filter(|&x| keep >> x & 1 == 1).count();
            out.push((root, sub));
        }
    }
    Ok(out)
}

/// Homology check of the class predicted by `|ẽ|`.
fn matches_class(class: Option<HomotopyClass>, size: &HomologySize, a: &IdealAnalysis) -> bool {
    let single_degree = a.homology.groups().len() == 1 && !a.homology.has_torsion();
    match class {
        Some(HomotopyClass::Contractible) => a.homology.is_zero(),
        Some(HomotopyClass::Sphere) => single_degree && size.h == 1,
        Some(HomotopyClass::Wedge) => single_degree && size.h == 2,
        None => false,
    }
}

/// The cycle table: `C_{3n-1}` and `C_{3n+1}` are `(n-1)`-spheres and
/// `C_{3n}` a wedge of two.
pub fn cycle_table_expectation(k: usize) -> (usize, i64) {
    match k % 3 {
        0 => (2, (k / 3) as i64 - 1),
        1 => (1, ((k - 1) / 3) as i64 - 1),
        _ => (1, ((k + 1) / 3) as i64 - 1),
    }
}

pub fn unicyclic_report(g: &Graph, budgets: &Budgets) -> Result<UnicyclicReport> {
    let s = g.structure();
    let Some(cycle) = s.cycle else {
        return Err(Error::NotUnicyclic(s.h1));
    };
    let n = cycle.len();
    let options = AnalysisOptions {
        witness: true,
        generator: false,
        all_resolutions: false,
    };
    let independence = analyze(&g.edge_ideal(), budgets, options)?;
    let cov = g.edge_cover_polynomial(budgets.max_edges)?;
    let cov_m1 = small(cov.eval(-1))?;
    let e = independence.euler.covers;
    let class = match e.abs() {
        0 => Some(HomotopyClass::Contractible),
        1 => Some(HomotopyClass::Sphere),
        2 => Some(HomotopyClass::Wedge),
        _ => None,
    };
    let mut tentacle_flags = Vec::new();
    let mut any_spherical_tentacle = false;
    for (root, t) in tentacles(g, &cycle)? {
        let conical = classify(&t.edge_ideal())?.verdict == Verdict::Conical;
        any_spherical_tentacle |= !conical;
        tentacle_flags.push((t.universe().name(root).to_string(), conical));
    }
    let size = independence.size;
    let wedge_observed = independence.homology.groups().len() == 1 && size.h == 2;
    let core_edges: Vec<SquareFreeMonomial> = independence
        .resolution
        .core
        .iter()
        .map(|s| g.universe().parse_monomial(s))
        .collect::<Result<_>>()?;
    let mut cycle_edges: Vec<SquareFreeMonomial> = (0..n)
        .map(|i| SquareFreeMonomial::from_vars([cycle[i], cycle[(i + 1) % n]]))
        .collect();
    cycle_edges.sort_unstable();
    let mut core_quadratic: Vec<SquareFreeMonomial> =
        core_edges.iter().copied().filter(|m| m.degree() >= 2).collect();
    core_quadratic.sort_unstable();
    let mut checks = vec![
        check("independence_consistent", independence.consistent()),
        check("euler_class_matches_homology", matches_class(class, &size, &independence)),
        check(
            "cov_at_minus_one_matches_euler",
            cov_m1.abs() == e.abs(),
        ),
        check(
            "wedge_needs_conical_tentacles_and_length_divisible_by_three",
            !wedge_observed || (tentacle_flags.iter().all(|t| t.1) && n % 3 == 0),
        ),
        // A spherical tentacle rules out the cycle as core; the ideal may
        // still be conical when a suspension step isolates a vertex.
        check(
            "spherical_tentacle_excludes_cycle_core",
            !any_spherical_tentacle || independence.simple || independence.verdict == Verdict::Conical,
        ),
        check(
            "simple_or_core_is_the_cycle",
            independence.simple || independence.verdict == Verdict::Conical || core_quadratic == cycle_edges,
        ),
        check(
            "top_degree_bound",
            size.hd.is_none_or(|hd| 2 * hd + 2 <= g.order() as i64),
        ),
        check("total_rank_bound", size.h <= 2),
    ];
    if g.order() == n {
        let (rank, degree) = cycle_table_expectation(n);
        checks.push(check(
            "cycle_table",
            independence.homology.groups().len() == 1
                && independence.homology.rank(degree) == rank
                && !independence.homology.has_torsion(),
        ));
    }
    Ok(UnicyclicReport {
        cycle: cycle.iter().map(|&v| g.universe().name(v).to_string()).collect(),
        cycle_length: n,
        independence,
        edge_cover_polynomial: cov.to_string(),
        cov_at_minus_one: cov_m1,
        class,
        tentacles: tentacle_flags,
        checks,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundsReport {
    pub vertices: usize,
    pub h1: i64,
    pub size: HomologySize,
    /// `2^h1`.
    pub rank_bound: u128,
    pub rank_bound_holds: bool,
    /// `hd ≤ |V|/2 - 1`, vacuous when all homology vanishes.
    pub degree_bound_holds: bool,
}

impl BoundsReport {
    pub fn holds(&self) -> bool {
        self.rank_bound_holds && self.degree_bound_holds
    }
}

pub fn bounds_check(g: &Graph, budgets: &Budgets) -> Result<BoundsReport> {
    let complex = SimplicialComplex::realize(&g.edge_ideal(), budgets.max_faces)?;
    let size = reduced_homology(&complex)?.size();
    let h1 = g.structure().h1;
    let rank_bound = 1u128.checked_shl(h1 as u32).unwrap_or(u128::MAX);
    Ok(BoundsReport {
        vertices: g.order(),
        h1,
        size,
        rank_bound,
        rank_bound_holds: (size.h as u128) <= rank_bound,
        degree_bound_holds: size.hd.is_none_or(|hd| 2 * hd + 2 <= g.order() as i64),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{cycle, disjoint_edges, disjoint_triangles, double_spider, path, reference_tree};

    #[test]
    fn reference_tree_golden_values() {
        let t = reference_tree();
        let r = forest_report(&t.graph, &Budgets::default()).unwrap();
        assert!(r.passed(), "{:?}", r.failures());
        assert_eq!((r.invariants.gamma, r.invariants.i), (3, 3));
        assert_eq!((r.invariants.beta1, r.invariants.alpha0), (4, 4));
        assert_eq!(r.independence.depth, Some(3));
        assert!(r.independence.homology.is_sphere(2));
        assert_eq!(r.dominance.depth, Some(4));
        assert!(r.dominance.homology.is_sphere(3));
    }

    #[test]
    fn spiders_separate_domination_numbers() {
        for k in 0..=3 {
            let r = forest_report(&double_spider(k), &Budgets::default()).unwrap();
            assert!(r.passed(), "{:?}", r.failures());
            assert_eq!(r.invariants.i - r.invariants.gamma, k);
            assert_eq!(r.independence.verdict, Verdict::Conical);
        }
    }

    #[test]
    fn paths_pass_every_check() {
        for n in 1..=8 {
            let r = forest_report(&path(n), &Budgets::default()).unwrap();
            assert!(r.passed(), "P{n}: {:?}", r.failures());
        }
    }

    #[test]
    fn cycles_follow_the_table() {
        for k in 3..=9 {
            let r = unicyclic_report(&cycle(k), &Budgets::default()).unwrap();
            assert!(r.passed(), "C{k}: {:?}", r.checks);
        }
        let c6 = unicyclic_report(&cycle(6), &Budgets::default()).unwrap();
        assert_eq!(c6.class, Some(HomotopyClass::Wedge));
        assert_eq!(c6.independence.homology.rank(1), 2);
    }

    #[test]
    fn tadpole_tentacles() {
        let g = Graph::indexed(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4)]).unwrap();
        let r = unicyclic_report(&g, &Budgets::default()).unwrap();
        assert_eq!(r.tentacles.len(), 1);
        assert_eq!(r.tentacles[0].0, "x3");
        assert!(r.passed(), "{:?}", r.checks);
    }

    #[test]
    fn spherical_tentacle_can_leave_the_ideal_conical() {
        // Triangle x1 x2 x5 with leaves x3 on x1 and x4 on x2.
        let g = Graph::indexed(5, &[(0, 1), (0, 2), (0, 4), (1, 3), (1, 4)]).unwrap();
        let r = unicyclic_report(&g, &Budgets::default()).unwrap();
        assert!(r.tentacles.iter().all(|t| !t.1));
        assert_eq!(r.independence.verdict, Verdict::Conical);
        assert!(r.independence.homology.is_zero());
        assert!(r.passed(), "{:?}", r.checks);
    }

    #[test]
    fn sharpness_families() {
        let b = Budgets::default();
        assert_eq!(bounds_check(&disjoint_triangles(2), &b).unwrap().size.h, 4);
        let p3 = bounds_check(&disjoint_edges(3), &b).unwrap();
        assert_eq!(p3.size.hd, Some(2));
        assert!(p3.holds());
        let single = bounds_check(&Graph::indexed(1, &[]).unwrap(), &b).unwrap();
        assert_eq!((single.size.h, single.size.hd), (0, None));
        assert!(single.holds());
    }

    #[test]
    fn rejects_wrong_shapes() {
        assert!(matches!(forest_report(&cycle(3), &Budgets::default()), Err(Error::NotAForest)));
        assert!(matches!(unicyclic_report(&path(3), &Budgets::default()), Err(Error::NotUnicyclic(0))));
    }
}
