//! The acceptance criteria as runnable checks, shared by the acceptance
//! test target and the `verify` subcommand.

use std::fmt;
use std::time::{Duration, Instant};

use rand::Rng;
use serde::Serialize;

use crate::analysis::{analyze, witness_outcome, AnalysisOptions, Budgets};
use crate::complexes::SimplicialComplex;
use crate::covers::{euler_via_covers, hilbert_identity_check};
use crate::error::Result;
use crate::gen;
use crate::graphs::{
    bounds_check, cycle, cycle_table_expectation, disjoint_edges, disjoint_triangles, dominance_faces_are_complements,
    forest_report, reference_tree, trees_up_to, unicyclic_report, ForestReport, Graph,
};
use crate::homology::{generates_top_class, reduced_homology};
use crate::ideals::{MonomialIdeal, VariableUniverse};
use crate::resolution::{
    classify, find_resolution, generator_cycle, permutation_equivalence, survey_cores, Resolution, ResolutionStep,
    Strategy, Verdict,
};

/// Number of distinct failures kept in an outcome.
const KEPT_FAILURES: usize = 5;

#[derive(Debug, Clone, Serialize)]
pub struct CriterionOutcome {
    pub number: u8,
    pub title: &'static str,
    pub passed: bool,
    pub instances: usize,
    pub failures: Vec<String>,
    pub elapsed_ms: u128,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub limit_ms: Option<u128>,
}

impl fmt::Display for CriterionOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "criterion {:>2} {} {}: {} instances, {:.2}s",
            self.number,
            if self.passed { "PASS" } else { "FAIL" },
            self.title,
            self.instances,
            self.elapsed_ms as f64 / 1000.0
        )?;
        for failure in &self.failures {
            write!(f, "\n    {failure}")?;
        }
        Ok(())
    }
}

/// Collects instance results for one criterion.
struct Tally {
    number: u8,
    title: &'static str,
    instances: usize,
    failed: usize,
    failures: Vec<String>,
    start: Instant,
    extra: Duration,
    limit: Option<Duration>,
}

impl Tally {
    fn new(number: u8, title: &'static str, limit: Option<Duration>) -> Self {
        Tally {
            number,
            title,
            instances: 0,
            failed: 0,
            failures: Vec::new(),
            start: Instant::now(),
            extra: Duration::ZERO,
            limit,
        }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < KEPT_FAILURES {
                self.failures.push(describe());
            }
        }
    }

    /// An error aborting one instance counts as a failure of it.
    fn record_result(&mut self, r: Result<bool>, describe: impl FnOnce() -> String) {
        match r {
            Ok(ok) => self.record(ok, describe),
            Err(e) => self.record(false, || format!("{}: {e}", describe())),
        }
    }

    fn finish(mut self) -> CriterionOutcome {
        let elapsed = self.start.elapsed() + self.extra;
        let in_time = self.limit.is_none_or(|l| elapsed < l);
        if !in_time {
            self.failures.push(format!(
                "runtime {:.1}s exceeds {:.0}s",
                elapsed.as_secs_f64(),
                self.limit.map_or(0.0, |l| l.as_secs_f64())
            ));
        }
        if self.failed > self.failures.len() {
            self.failures.push(format!("... {} failures in total", self.failed));
        }
        CriterionOutcome {
            number: self.number,
            title: self.title,
            passed: self.failed == 0 && in_time && self.instances > 0,
            instances: self.instances,
            failures: self.failures,
            elapsed_ms: elapsed.as_millis(),
            limit_ms: self.limit.map(|l| l.as_millis()),
        }
    }
}

const MINUTE: Duration = Duration::from_secs(60);

fn indexed_ideal(n: usize, gens: &[&str]) -> MonomialIdeal {
    MonomialIdeal::parse(VariableUniverse::indexed(n).expect("small"), gens).expect("valid generators")
}

/// Euler characteristic from covers against face enumeration.
pub fn euler_via_covers_criterion(seed: u64, budgets: &Budgets) -> CriterionOutcome {
    let mut t = Tally::new(1, "euler characteristic via covers", Some(MINUTE));
    let c3 = indexed_ideal(3, &["x1 x2", "x1 x3", "x2 x3"]);
    t.record(euler_via_covers(&c3) == 2, || "triangle edge ideal: expected 2".into());
    let mut rng = gen::rng(seed);
    for k in 0..500 {
        let n = rng.gen_range(1..=10);
        let i = gen::random_ideal(&mut rng, n, 12);
        let r = SimplicialComplex::realize(&i, budgets.max_faces).map(|c| c.reduced_euler() == euler_via_covers(&i));
        t.record_result(r, || format!("instance {k}: {i}"));
    }
    t.finish()
}

/// `C_{B ∪ squares} = F · Π (1 - x_s)`.
pub fn hilbert_identity_criterion(seed: u64, budgets: &Budgets) -> CriterionOutcome {
    let mut t = Tally::new(2, "hilbert series identity", Some(MINUTE));
    let mut rng = gen::rng(seed.wrapping_add(1));
    for k in 0..200 {
        let n = rng.gen_range(1..=6);
        let i = gen::random_ideal(&mut rng, n, 8);
        let r = hilbert_identity_check(&i, budgets.max_factors, budgets.max_faces).map(|c| c.holds());
        t.record_result(r, || format!("instance {k}: {i}"));
    }
    t.finish()
}

/// The forest corpus and its reports.
pub struct ForestCorpus {
    pub graphs: Vec<Graph>,
    pub reports: Vec<Result<ForestReport>>,
    pub elapsed: Duration,
}

/// All trees with at most nine vertices up to isomorphism and 300 random
/// forests with at most fourteen vertices.
pub fn forest_corpus_graphs(seed: u64) -> Vec<Graph> {
    let mut graphs = trees_up_to(9);
    let mut rng = gen::rng(seed.wrapping_add(3));
    for _ in 0..300 {
        let n = rng.gen_range(1..=14);
        let attach = rng.gen_range(0.6..=1.0);
        graphs.push(gen::random_forest(&mut rng, n, attach));
    }
    graphs
}

pub fn forest_corpus(seed: u64, budgets: &Budgets) -> ForestCorpus {
    let start = Instant::now();
    let graphs = forest_corpus_graphs(seed);
    let reports = graphs.iter().map(|g| forest_report(g, budgets)).collect();
    ForestCorpus {
        graphs,
        reports,
        elapsed: start.elapsed(),
    }
}

fn edge_list(g: &Graph) -> String {
    let u = g.universe();
    let e: Vec<String> = g.edges().iter().map(|&(a, b)| format!("{}-{}", u.name(a), u.name(b))).collect();
    format!("{} vertices [{}]", g.order(), e.join(" "))
}

fn over_corpus<F>(t: &mut Tally, corpus: &ForestCorpus, check: F)
where
    F: Fn(&ForestReport) -> bool,
{
    t.extra = corpus.elapsed;
    for (g, r) in corpus.graphs.iter().zip(&corpus.reports) {
        match r {
            Ok(r) => t.record(check(r), || edge_list(g)),
            Err(e) => t.record(false, || format!("{}: {e}", edge_list(g))),
        }
    }
}

/// Independence complexes of forests: classification against homology and
/// depth against both domination numbers.
pub fn forest_independence_criterion(corpus: &ForestCorpus) -> CriterionOutcome {
    let mut t = Tally::new(3, "forest independence classification", Some(5 * MINUTE));
    over_corpus(&mut t, corpus, |r| {
        let a = &r.independence;
        match a.verdict {
            Verdict::Conical => a.homology.is_zero(),
            Verdict::Spherical => {
                let d = a.depth.unwrap_or(usize::MAX);
                a.homology.is_sphere(d as i64 - 1) && d == r.invariants.i && d == r.invariants.gamma
            }
        }
    });
    t.finish()
}

/// Dominance complexes of forests: simple spheres of dimension `β1 - 1`.
pub fn forest_dominance_criterion(corpus: &ForestCorpus) -> CriterionOutcome {
    let mut t = Tally::new(4, "forest dominance classification", Some(5 * MINUTE));
    over_corpus(&mut t, corpus, |r| {
        let a = &r.dominance;
        let inv = &r.invariants;
        a.verdict == Verdict::Spherical
            && a.simple
            && a.depth == Some(inv.beta1)
            && inv.beta1 == inv.alpha0
            && a.homology.is_sphere(inv.beta1 as i64 - 1)
            && inv.alpha1.is_none_or(|a1| a1 + inv.beta1 == r.vertices)
    });
    t.finish()
}

fn labelled_resolution(ideal: &MonomialIdeal, pairs: &[(usize, usize)]) -> Result<Resolution> {
    let steps = pairs.iter().map(|&(a, b)| ResolutionStep::dominates(a, b)).collect();
    Resolution::from_steps(ideal, steps)
}

/// A labelled resolution is maximal and spherical, its cycle generates top
/// homology and the complex is the expected sphere.
fn golden_labelled(ideal: &MonomialIdeal, pairs: &[(usize, usize)], budgets: &Budgets) -> Result<bool> {
    let res = labelled_resolution(ideal, pairs)?;
    let complex = SimplicialComplex::realize(ideal, budgets.max_faces)?;
    let k = pairs.len() as i64 - 1;
    let z = generator_cycle(&res, &complex)?;
    Ok(res.is_maximal()
        && res.is_spherical()
        && res.has_trivial_core()
        && reduced_homology(&complex)?.is_sphere(k)
        && generates_top_class(&z, &complex, k)?)
}

/// The worked examples.
pub fn golden_instances_criterion(budgets: &Budgets) -> CriterionOutcome {
    let mut t = Tally::new(5, "golden instances", None);

    let seven = indexed_ideal(7, &["x1 x2", "x3 x7", "x5 x6", "x5 x7", "x1 x3 x4", "x2 x3 x4"]);
    let r = (|| -> Result<bool> {
        let a1 = Resolution::from_sequence(&seven, &[4, 3])?;
        let a2 = Resolution::from_sequence(&seven, &[2, 5])?;
        let survey = survey_cores(&seven, budgets.max_resolutions)?;
        Ok(a1.core().generator_strings() == ["x4", "x5", "x6", "x7", "x1 x2", "x1 x3", "x2 x3"]
            && a2.core().generator_strings() == ["x3", "x5", "x6", "x7", "x1 x2", "x1 x4", "x2 x4"]
            && a1.is_maximal()
            && a2.is_maximal()
            && permutation_equivalence(a1.core(), a2.core()).is_some()
            && survey.consistent()
            && survey.depths.iter().eq([2].iter()))
    })();
    t.record_result(r, || "seven-variable ideal: cores differ from (x4, x5, x6, x7, x1x2, x1x3, x2x3) / (x3, ...)".into());

    let hybrid = indexed_ideal(5, &["x1 x2", "x3 x4 x5"]);
    let r = (|| -> Result<bool> {
        let steps = vec![
            ResolutionStep::dominates(0, 1),
            ResolutionStep::dominates(2, 4),
            ResolutionStep::dominates(3, 4),
        ];
        let res = Resolution::from_steps(&hybrid, steps)?;
        let a = analyze(&hybrid, budgets, AnalysisOptions::everything())?;
        Ok(res.depth() == 3 && res.is_maximal() && a.depth == Some(3) && a.homology.is_sphere(2) && a.consistent())
    })();
    t.record_result(r, || "shared-variable ideal (x1x2, x3x4x5): depth 3 expected".into());

    let tree = reference_tree();
    let report = forest_report(&tree.graph, budgets);
    let r = report.as_ref().map_err(Clone::clone).and_then(|rep| {
        Ok(rep.passed()
            && rep.independence.depth == Some(3)
            && rep.independence.homology.is_sphere(2)
            && rep.invariants.gamma == 3
            && rep.invariants.i == 3
            && golden_labelled(&tree.graph.edge_ideal(), &tree.independence_pairs, budgets)?)
    });
    t.record_result(r, || "reference tree, independence complex: depth 3, S^2, gamma = i = 3".into());
    let r = report.as_ref().map_err(Clone::clone).and_then(|rep| {
        Ok(rep.dominance.depth == Some(4)
            && rep.dominance.homology.is_sphere(3)
            && rep.invariants.beta1 == 4
            && rep.invariants.alpha0 == 4
            && golden_labelled(&tree.graph.star_ideal(), &tree.dominance_pairs, budgets)?)
    });
    t.record_result(r, || "reference tree, dominance complex: depth 4, S^3, beta1 = alpha0 = 4".into());
    t.finish()
}

/// Independence complexes of cycles `C_3 ... C_12`.
pub fn cycle_table_criterion(budgets: &Budgets) -> CriterionOutcome {
    let mut t = Tally::new(6, "cycle table", Some(MINUTE));
    for k in 3..=12 {
        let (rank, degree) = cycle_table_expectation(k);
        let r = SimplicialComplex::realize(&cycle(k).edge_ideal(), budgets.max_faces)
            .and_then(|c| reduced_homology(&c))
            .and_then(|h| {
                let report = unicyclic_report(&cycle(k), budgets)?;
                Ok(h.groups().len() == 1 && h.rank(degree) == rank && !h.has_torsion() && report.passed())
            });
        t.record_result(r, || format!("C{k}: expected rank {rank} in degree {degree}"));
    }
    t.finish()
}

/// Every witness plan of the forest corpus and the worked examples verifies.
pub fn collapse_witness_criterion(corpus: &ForestCorpus, budgets: &Budgets) -> CriterionOutcome {
    let mut t = Tally::new(7, "collapse witnesses", None);
    over_corpus(&mut t, corpus, |r| {
        [&r.independence, &r.dominance]
            .iter()
            .all(|a| a.witness.as_ref().is_some_and(|w| w.valid))
    });
    let golden = [
        indexed_ideal(7, &["x1 x2", "x3 x7", "x5 x6", "x5 x7", "x1 x3 x4", "x2 x3 x4"]),
        indexed_ideal(5, &["x1 x2", "x3 x4 x5"]),
        reference_tree().graph.edge_ideal(),
        reference_tree().graph.star_ideal(),
        indexed_ideal(3, &["x1 x2 x3"]),
        indexed_ideal(4, &["x1 x2", "x3 x4"]),
    ];
    for i in &golden {
        let r = (|| -> Result<bool> {
            let class = classify(i)?;
            let complex = SimplicialComplex::realize(i, budgets.max_faces)?;
            Ok(witness_outcome(&class, &complex, budgets.max_faces)?.valid)
        })();
        t.record_result(r, || format!("witness for {i}"));
    }
    t.finish()
}

/// `Π (a_i - b_i)` generates top homology on the spherical forest cases.
pub fn generator_cycle_criterion(corpus: &ForestCorpus) -> CriterionOutcome {
    let mut t = Tally::new(8, "generator cycles", None);
    over_corpus(&mut t, corpus, |r| {
        let generates = |a: &crate::analysis::IdealAnalysis| a.generator.as_ref().is_some_and(|g| g.generates);
        (r.independence.verdict == Verdict::Conical || generates(&r.independence)) && generates(&r.dominance)
    });
    t.finish()
}

/// Homology bounds on random graphs and the two sharpness families.
pub fn bounds_criterion(seed: u64, budgets: &Budgets) -> CriterionOutcome {
    let mut t = Tally::new(9, "homology bounds and sharpness", None);
    for g in random_small_graphs(seed) {
        t.record_result(bounds_check(&g, budgets).map(|b| b.holds()), || edge_list(&g));
    }
    for n in 1..=3 {
        let r = bounds_check(&disjoint_triangles(n), budgets).map(|b| b.holds() && b.size.h == 1 << n);
        t.record_result(r, || format!("T^({n}): expected h = {}", 1 << n));
    }
    for n in 1..=5 {
        let g = disjoint_edges(n);
        let r = bounds_check(&g, budgets).and_then(|b| {
            let d = classify(&g.edge_ideal())?.depth();
            Ok(b.holds() && b.size.hd == Some(n as i64 - 1) && d == Some(n))
        });
        t.record_result(r, || format!("P^({n}): expected hd = {}", n - 1));
    }
    t.finish()
}

/// 200 graphs with at most ten vertices and random edge density.
pub fn random_small_graphs(seed: u64) -> Vec<Graph> {
    let mut rng = gen::rng(seed.wrapping_add(9));
    (0..200)
        .map(|_| {
            let n = rng.gen_range(1..=10);
            let p = rng.gen_range(0.1..=0.7);
            gen::random_graph(&mut rng, n, p)
        })
        .collect()
}

/// The dominating-set sign identity and the complement description of the
/// dominance complex.
pub fn sign_identity_criterion(corpus: &ForestCorpus, seed: u64, budgets: &Budgets) -> CriterionOutcome {
    let mut t = Tally::new(10, "dominating set identities", None);
    over_corpus(&mut t, corpus, |r| {
        let expected = if (r.invariants.beta1 + r.vertices) % 2 == 0 { 1 } else { -1 };
        r.dominating_sign_sum == expected
    });
    let small = corpus.graphs.iter().filter(|g| g.order() <= 10).cloned();
    for g in small.chain(random_small_graphs(seed)) {
        t.record_result(dominance_faces_are_complements(&g, budgets), || edge_list(&g));
    }
    t.finish()
}

/// Exhaustive enumeration of maximal resolutions on random spherical
/// ideals, and agreement of greedy strategies on random ideals.
pub fn core_uniqueness_criterion(seed: u64, budgets: &Budgets) -> CriterionOutcome {
    let mut t = Tally::new(11, "core uniqueness", Some(5 * MINUTE));
    let mut rng = gen::rng(seed.wrapping_add(11));
    for k in 0..100 {
        let i = gen::random_spherical_ideal(&mut rng, 8, 10);
        let r = survey_cores(&i, budgets.max_resolutions).map(|s| {
            s.consistent() && s.spherical_count == s.resolutions.len() && !s.saw_cone && !s.resolutions.is_empty()
        });
        t.record_result(r, || format!("spherical instance {k}: {i}"));
    }
    for k in 0..100 {
        let n = rng.gen_range(1..=8);
        let i = gen::random_ideal(&mut rng, n, 10);
        let r = (|| -> Result<bool> {
            let s = survey_cores(&i, budgets.max_resolutions)?;
            let verdicts: Vec<(bool, Option<usize>)> = [Strategy::Smallest, Strategy::Largest, Strategy::Seeded(k)]
                .into_iter()
                .map(|st| find_resolution(&i, st).map(|r| (r.first_cone().is_none(), r.first_cone().is_none().then(|| r.depth()))))
                .collect::<Result<_>>()?;
            let spherical = verdicts[0].0;
            let exclusive = !(s.spherical_count > 0 && s.saw_cone);
            Ok(exclusive && s.consistent() && verdicts.iter().all(|v| *v == verdicts[0]) && spherical == (s.spherical_count > 0))
        })();
        t.record_result(r, || format!("instance {k}: {i}"));
    }
    t.finish()
}

/// Every criterion in order.
pub fn run_all(seed: u64, budgets: &Budgets) -> Vec<CriterionOutcome> {
    let mut out = vec![
        euler_via_covers_criterion(seed, budgets),
        hilbert_identity_criterion(seed, budgets),
    ];
    let corpus = forest_corpus(seed, budgets);
    out.push(forest_independence_criterion(&corpus));
    out.push(forest_dominance_criterion(&corpus));
    out.push(golden_instances_criterion(budgets));
    out.push(cycle_table_criterion(budgets));
    out.push(collapse_witness_criterion(&corpus, budgets));
    out.push(generator_cycle_criterion(&corpus));
    out.push(bounds_criterion(seed, budgets));
    out.push(sign_identity_criterion(&corpus, seed, budgets));
    out.push(core_uniqueness_criterion(seed, budgets));
    out
}
