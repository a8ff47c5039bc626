//! One-stop analysis of an ideal: greedy classification checked against
//! the homology oracle, both Euler characteristic routes, an explicit
//! collapse witness and the generator cycle.

use serde::Serialize;

use crate::complexes::{verify_collapse_sequence, SimplicialComplex, DEFAULT_MAX_FACES};
use crate::covers::{euler_via_covers, DEFAULT_MAX_FACTORS};
use crate::error::{Error, Result};
use crate::homology::{generates_top_class, reduced_homology, HomologyGroup, HomologyProfile, HomologySize};
use crate::ideals::{MonomialIdeal, SquareFreeMonomial};
use crate::resolution::{
    classify, collapse_target, find_distinct_resolution, generator_cycle, survey_cores, witness_collapse_to_core, Classification,
    ResolutionReport, Verdict, DEFAULT_RESOLUTION_BUDGET,
};

/// Size limits for every exponential search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budgets {
    pub max_faces: usize,
    pub max_resolutions: usize,
    pub max_factors: usize,
    pub max_vertices: usize,
    pub max_edges: usize,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            max_faces: DEFAULT_MAX_FACES,
            max_resolutions: DEFAULT_RESOLUTION_BUDGET,
            max_factors: DEFAULT_MAX_FACTORS,
            max_vertices: crate::graphs::DEFAULT_MAX_VERTICES,
            max_edges: crate::graphs::DEFAULT_MAX_EDGES,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct AnalysisOptions {
    pub witness: bool,
    pub generator: bool,
    pub all_resolutions: bool,
}

impl AnalysisOptions {
    pub fn everything() -> Self {
        AnalysisOptions {
            witness: true,
            generator: true,
            all_resolutions: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EulerComparison {
    pub enumeration: i64,
    pub covers: i64,
    pub agree: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessOutcome {
    pub steps: usize,
    pub valid: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failed_step: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

/// Whether `Π (a_i - b_i)` over `pairs` generates top homology.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeneratorOutcome {
    pub pairs: Vec<(String, String)>,
    pub generates: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurveyReport {
    pub resolutions: Vec<ResolutionReport>,
    pub depths: Vec<usize>,
    /// One core per permutation class.
    pub cores: Vec<Vec<String>>,
    pub consistent: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdealAnalysis {
    pub verdict: Verdict,
    pub depth: Option<usize>,
    pub simple: bool,
    pub resolution: ResolutionReport,
    pub faces: usize,
    pub homology: HomologyProfile,
    pub size: HomologySize,
    /// Zero when conical, the core's homology shifted up by the depth when
    /// spherical.
    pub expected_homology: HomologyProfile,
    pub homology_matches: bool,
    pub euler: EulerComparison,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessOutcome>,
    /// Absent unless the ideal is simple and has a resolution with
    /// pairwise distinct variables.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generator: Option<GeneratorOutcome>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub survey: Option<SurveyReport>,
}

impl IdealAnalysis {
    /// Every check that was run passed.
    pub fn consistent(&self) -> bool {
        self.homology_matches
            && self.euler.agree
            && self.witness.as_ref().is_none_or(|w| w.valid)
            && self.generator.as_ref().is_none_or(|g| g.generates)
            && self.survey.as_ref().is_none_or(|s| s.consistent)
    }
}

fn shift(profile: &HomologyProfile, by: i64) -> HomologyProfile {
    HomologyProfile::from_groups(
        profile
            .groups()
            .iter()
            .map(|g| HomologyGroup {
                degree: g.degree + by,
                ..g.clone()
            })
            .collect(),
    )
}

fn expected_homology(class: &Classification, max_faces: usize) -> Result<HomologyProfile> {
    match class.verdict {
        Verdict::Conical => Ok(HomologyProfile::default()),
        Verdict::Spherical => {
            let core = SimplicialComplex::realize(class.core(), max_faces)?;
            Ok(shift(&reduced_homology(&core)?, class.resolution.depth() as i64))
        }
    }
}

/// Collapse plan from `R(I)` to the target the classification predicts,
/// checked step by step.
pub fn witness_outcome(class: &Classification, complex: &SimplicialComplex, max_faces: usize) -> Result<WitnessOutcome> {
    let res = &class.resolution;
    let plan = witness_collapse_to_core(res, max_faces)?;
    let target = match res.first_cone() {
        Some(k) => {
            let apex = SquareFreeMonomial::var(res.steps()[k].a);
            SimplicialComplex::from_faces(complex.universe().clone(), [SquareFreeMonomial::ONE, apex])?
        }
        None => collapse_target(res, max_faces)?,
    };
    let check = verify_collapse_sequence(complex, &plan, &target);
    Ok(WitnessOutcome {
        steps: plan.len(),
        valid: check.valid,
        failed_step: check.failed_step,
        reason: check.reason,
    })
}

/// The generator check runs on the greedy resolution when its variables
/// are pairwise distinct, and otherwise on a searched resolution that has
/// this property.
fn generator_outcome(
    class: &Classification,
    complex: &SimplicialComplex,
    budgets: &Budgets,
) -> Result<Option<GeneratorOutcome>> {
    if !class.is_simple() {
        return Ok(None);
    }
    let searched;
    let res = if pairwise_distinct(&class.resolution.pairs()) {
        &class.resolution
    } else {
        match find_distinct_resolution(class.resolution.ideal(), budgets.max_resolutions)? {
            Some(r) => {
                searched = r;
                &searched
            }
            None => return Ok(None),
        }
    };
    let z = generator_cycle(res, complex)?;
    let k = res.depth() as i64 - 1;
    let u = complex.universe();
    Ok(Some(GeneratorOutcome {
        pairs: res
            .pairs()
            .iter()
            .map(|&(a, b)| (u.name(a).to_string(), u.name(b).to_string()))
            .collect(),
        generates: generates_top_class(&z, complex, k)?,
    }))
}

fn pairwise_distinct(pairs: &[(usize, usize)]) -> bool {
    let mut seen = 0u64;
    for &(a, b) in pairs {
        for v in [a, b] {
            if seen >> v & 1 == 1 {
                return false;
            }
            seen |= 1 << v;
        }
    }
    true
}

pub fn analyze(ideal: &MonomialIdeal, budgets: &Budgets, options: AnalysisOptions) -> Result<IdealAnalysis> {
    let class = classify(ideal)?;
    let complex = SimplicialComplex::realize(ideal, budgets.max_faces)?;
    let homology = reduced_homology(&complex)?;
    let expected = expected_homology(&class, budgets.max_faces)?;
    let enumeration = complex.reduced_euler();
    let covers = if ideal.generators().len() <= budgets.max_factors {
        euler_via_covers(ideal)
    } else {
        return Err(Error::BudgetExceeded {
            what: "star-product factor",
            limit: budgets.max_factors,
        });
    };
    let witness = if options.witness {
        Some(witness_outcome(&class, &complex, budgets.max_faces)?)
    } else {
        None
    };
    let generator = if options.generator {
        generator_outcome(&class, &complex, budgets)?
    } else {
        None
    };
    let survey = if options.all_resolutions {
        let s = survey_cores(ideal, budgets.max_resolutions)?;
        Some(SurveyReport {
            resolutions: s.resolutions.iter().map(|r| r.report()).collect(),
            depths: s.depths.iter().copied().collect(),
            cores: s.core_classes.iter().map(MonomialIdeal::generator_strings).collect(),
            consistent: s.consistent() && (s.spherical_count > 0) == (class.verdict == Verdict::Spherical),
        })
    } else {
        None
    };
    Ok(IdealAnalysis {
        verdict: class.verdict,
        depth: class.depth(),
        simple: class.is_simple(),
        resolution: class.resolution.report(),
        faces: complex.len(),
        size: homology.size(),
        homology_matches: homology == expected,
        homology,
        expected_homology: expected,
        euler: EulerComparison {
            enumeration,
            covers,
            agree: enumeration == covers,
        },
        witness,
        generator,
        survey,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideals::VariableUniverse;

    fn ideal(n: usize, gens: &[&str]) -> MonomialIdeal {
        MonomialIdeal::parse(VariableUniverse::indexed(n).unwrap(), gens).unwrap()
    }

    #[test]
    fn square_is_a_simple_circle() {
        let a = analyze(&ideal(4, &["x1 x2", "x3 x4"]), &Budgets::default(), AnalysisOptions::everything()).unwrap();
        assert_eq!(a.verdict, Verdict::Spherical);
        assert_eq!(a.depth, Some(2));
        assert!(a.simple);
        assert!(a.homology.is_sphere(1));
        assert!(a.generator.as_ref().unwrap().generates);
        assert_eq!(a.witness.as_ref().map(|w| w.steps), Some(0));
        assert!(a.consistent());
    }

    #[test]
    fn conical_ideal_collapses_to_a_point() {
        let a = analyze(&ideal(3, &["x1 x2"]), &Budgets::default(), AnalysisOptions::everything()).unwrap();
        assert_eq!(a.verdict, Verdict::Conical);
        assert_eq!(a.depth, None);
        assert!(a.homology.is_zero());
        assert!(a.witness.as_ref().unwrap().valid);
        assert!(a.consistent());
    }

    #[test]
    fn non_simple_core_shifts_homology() {
        // The triangle's edge ideal: no domination, core is the ideal itself.
        let a = analyze(&ideal(3, &["x1 x2", "x1 x3", "x2 x3"]), &Budgets::default(), AnalysisOptions::everything())
            .unwrap();
        assert_eq!(a.verdict, Verdict::Spherical);
        assert_eq!(a.depth, Some(0));
        assert!(!a.simple);
        assert_eq!(a.homology.rank(0), 2);
        assert_eq!(a.euler.covers, 2);
        assert_eq!(a.generator, None);
        assert!(a.consistent());
    }

    #[test]
    fn shared_variable_resolutions_are_replaced_for_the_generator() {
        // Star ideal of the path x4 - x2 - x1 - x3 - x5: greedily x2 and x3
        // both dominate x1, which is not a leaf.
        let a = analyze(&ideal(5, &["x2 x4", "x3 x5", "x1 x2 x3"]), &Budgets::default(), AnalysisOptions::everything())
            .unwrap();
        assert_eq!(a.resolution.steps[1].b.as_deref(), Some("x1"));
        let g = a.generator.unwrap();
        assert!(g.generates);
        let mut used: Vec<&String> = g.pairs.iter().flat_map(|(a, b)| [a, b]).collect();
        used.sort();
        used.dedup();
        assert_eq!(used.len(), 2 * g.pairs.len());
    }

    #[test]
    fn hybrid_suspension_has_no_generator_check() {
        let a = analyze(&ideal(5, &["x1 x2", "x3 x4 x5"]), &Budgets::default(), AnalysisOptions::everything()).unwrap();
        assert_eq!(a.depth, Some(3));
        assert!(a.homology.is_sphere(2));
        assert_eq!(a.generator, None);
        assert!(a.consistent());
    }
}
