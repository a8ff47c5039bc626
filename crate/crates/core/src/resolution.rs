//! Domination, resolutions and cores.
//!
//! A resolution of `I` is a sequence of variables `a1, ..., ar` such that,
//! writing `I_i = (I : a1 ... a_{i-1})`, each `a_i` is not in `I_i` and either
//! `R(I_i)` is a cone with apex `a_i` or `a_i` dominates some `b_i` in `I_i`.
//! Ideals are never canonicalized here: variables that fall into the ideal
//! stay in the universe as degree-one generators, so cores print in the
//! original variables.

use std::collections::{BTreeSet, HashSet};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::complexes::{CollapseStep, SimplicialComplex};
use crate::error::{Error, Result};
use crate::homology::Chain;
use crate::ideals::{MonomialIdeal, SquareFreeMonomial};

pub const DEFAULT_RESOLUTION_BUDGET: usize = 1 << 20;

fn require_live(ideal: &MonomialIdeal, v: usize) -> Result<()> {
    let m = SquareFreeMonomial::var(v);
    if ideal.contains(m)? {
        return Err(Error::VariableInIdeal(ideal.universe().name(v).to_string()));
    }
    Ok(())
}

/// `R(I)` is a cone with apex `a` iff `a` divides no minimal generator.
pub fn is_cone_apex(ideal: &MonomialIdeal, a: usize) -> Result<bool> {
    require_live(ideal, a)?;
    Ok(cone_apex_unchecked(ideal, a))
}

fn cone_apex_unchecked(ideal: &MonomialIdeal, a: usize) -> bool {
    !ideal.generators().iter().any(|g| g.contains_var(a))
}

/// `a` dominates `b`: some minimal generator is divisible by `b`, and all of
/// them that are, are divisible by `a`.
pub fn dominates(ideal: &MonomialIdeal, a: usize, b: usize) -> Result<bool> {
    if a == b {
        return Err(Error::Precondition("a variable cannot dominate itself".into()));
    }
    require_live(ideal, a)?;
    require_live(ideal, b)?;
    Ok(dominates_unchecked(ideal, a, b))
}

fn dominates_unchecked(ideal: &MonomialIdeal, a: usize, b: usize) -> bool {
    let mut any = false;
    for g in ideal.generators() {
        if g.contains_var(b) {
            if !g.contains_var(a) {
                return false;
            }
            any = true;
        }
    }
    any
}

/// Variables `b` dominated by `a`, ascending.
pub fn dominated_by(ideal: &MonomialIdeal, a: usize) -> Vec<usize> {
    let live = ideal.live_variables();
    if !live.contains_var(a) {
        return Vec::new();
    }
    live.iter()
        .filter(|&b| b != a && dominates_unchecked(ideal, a, b))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StepKind {
    Dominates(usize),
    ConeApex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ResolutionStep {
    pub a: usize,
    pub kind: StepKind,
}

impl ResolutionStep {
    pub fn dominates(a: usize, b: usize) -> Self {
        ResolutionStep {
            a,
            kind: StepKind::Dominates(b),
        }
    }

    pub fn cone(a: usize) -> Self {
        ResolutionStep {
            a,
            kind: StepKind::ConeApex,
        }
    }

    pub fn b(&self) -> Option<usize> {
        match self.kind {
            StepKind::Dominates(b) => Some(b),
            StepKind::ConeApex => None,
        }
    }
}

/// Validate one step at the ideal `stage`.
fn check_step(stage: &MonomialIdeal, step: &ResolutionStep) -> Result<()> {
    require_live(stage, step.a)?;
    let name = |v| stage.universe().name(v).to_string();
    match step.kind {
        StepKind::ConeApex => {
            if !cone_apex_unchecked(stage, step.a) {
                return Err(Error::Precondition(format!("{} is not a cone apex", name(step.a))));
            }
        }
        StepKind::Dominates(b) => {
            if !dominates(stage, step.a, b)? {
                return Err(Error::Precondition(format!(
                    "{} does not dominate {}",
                    name(step.a),
                    name(b)
                )));
            }
        }
    }
    Ok(())
}

/// Every step available at `stage`: cone apexes first, then dominating
/// pairs, each ascending.
fn available_steps(stage: &MonomialIdeal) -> (Vec<ResolutionStep>, Vec<ResolutionStep>) {
    let live = stage.live_variables();
    let cones = live
        .iter()
        .filter(|&a| cone_apex_unchecked(stage, a))
        .map(ResolutionStep::cone)
        .collect();
    let mut doms = Vec::new();
    for a in live.iter() {
        for b in live.iter() {
            if a != b && dominates_unchecked(stage, a, b) {
                doms.push(ResolutionStep::dominates(a, b));
            }
        }
    }
    (cones, doms)
}

/// A validated resolution together with its intermediate ideals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Resolution {
    steps: Vec<ResolutionStep>,
    /// `stages[i]` is `I_{i+1}`; the last entry is the core.
    stages: Vec<MonomialIdeal>,
}

impl Resolution {
    pub fn from_steps(ideal: &MonomialIdeal, steps: Vec<ResolutionStep>) -> Result<Self> {
        if ideal.is_unit() {
            return Err(Error::Precondition("the unit ideal has no resolutions".into()));
        }
        let mut stages = vec![ideal.clone()];
        for step in &steps {
            let stage = stages.last().expect("nonempty");
            check_step(stage, step)?;
            let next = stage.colon(SquareFreeMonomial::var(step.a))?;
            stages.push(next);
        }
        Ok(Resolution { steps, stages })
    }

    /// Build from the `a_i` alone, choosing the smallest witness `b_i`
    /// (or a cone step when `R(I_i)` is a cone with apex `a_i`).
    pub fn from_sequence(ideal: &MonomialIdeal, apexes: &[usize]) -> Result<Self> {
        let mut steps = Vec::with_capacity(apexes.len());
        let mut stage = ideal.clone();
        for &a in apexes {
            require_live(&stage, a)?;
            let step = if cone_apex_unchecked(&stage, a) {
                ResolutionStep::cone(a)
            } else {
                let b = *dominated_by(&stage, a).first().ok_or_else(|| {
                    Error::Precondition(format!(
                        "{} neither dominates nor is a cone apex",
                        stage.universe().name(a)
                    ))
                })?;
                ResolutionStep::dominates(a, b)
            };
            stage = stage.colon(SquareFreeMonomial::var(a))?;
            steps.push(step);
        }
        Self::from_steps(ideal, steps)
    }

    pub fn ideal(&self) -> &MonomialIdeal {
        &self.stages[0]
    }

    pub fn steps(&self) -> &[ResolutionStep] {
        &self.steps
    }

    pub fn depth(&self) -> usize {
        self.steps.len()
    }

    /// `I_{i+1} = (I : a_1 ... a_i)`.
    pub fn stage(&self, i: usize) -> &MonomialIdeal {
        &self.stages[i]
    }

    /// The core `c(A) = (I : a_1 ... a_r)`.
    pub fn core(&self) -> &MonomialIdeal {
        self.stages.last().expect("nonempty")
    }

    /// The `(a_i, b_i)` of the dominating steps.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.steps
            .iter()
            .filter_map(|s| s.b().map(|b| (s.a, b)))
            .collect()
    }

    /// Index of the first cone step, if any.
    pub fn first_cone(&self) -> Option<usize> {
        self.steps.iter().position(|s| s.kind == StepKind::ConeApex)
    }

    /// No further step is possible at the core.
    pub fn is_maximal(&self) -> bool {
        let (cones, doms) = available_steps(self.core());
        cones.is_empty() && doms.is_empty()
    }

    /// No step is a cone step and the core is not a cone.
    pub fn is_spherical(&self) -> bool {
        let core = self.core();
        self.first_cone().is_none()
            && !core
                .live_variables()
                .iter()
                .any(|a| cone_apex_unchecked(core, a))
    }

    /// The core is the ideal of all variables, i.e. `R(c(A)) = {1}`.
    pub fn has_trivial_core(&self) -> bool {
        self.core().live_variables().is_one() && !self.core().is_unit()
    }

    pub fn report(&self) -> ResolutionReport {
        let u = self.ideal().universe();
        ResolutionReport {
            steps: self
                .steps
                .iter()
                .map(|s| StepReport {
                    a: u.name(s.a).to_string(),
                    b: s.b().map(|b| u.name(b).to_string()),
                    cone: s.kind == StepKind::ConeApex,
                })
                .collect(),
            depth: self.depth(),
            spherical: self.is_spherical(),
            maximal: self.is_maximal(),
            core: self.core().generator_strings(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StepReport {
    pub a: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<String>,
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub cone: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResolutionReport {
    pub steps: Vec<StepReport>,
    pub depth: usize,
    pub spherical: bool,
    pub maximal: bool,
    pub core: Vec<String>,
}

/// Tie-breaking rule of the greedy construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Smallest `a`, then smallest `b`.
    #[default]
    Smallest,
    /// Largest `a`, then largest `b`.
    Largest,
    /// Uniformly random among the available steps.
    Seeded(u64),
}

/// Greedy resolution. A cone apex is taken as soon as one exists and ends
/// the construction; otherwise a dominating pair is chosen by `strategy`
/// until none is left.
pub fn find_resolution(ideal: &MonomialIdeal, strategy: Strategy) -> Result<Resolution> {
    if ideal.is_unit() {
        return Err(Error::Precondition("the unit ideal has no resolutions".into()));
    }
    let mut rng = match strategy {
        Strategy::Seeded(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        _ => None,
    };
    let mut steps = Vec::new();
    let mut stages = vec![ideal.clone()];
    loop {
        let stage = stages.last().expect("nonempty");
        let (cones, doms) = available_steps(stage);
        let pick = |v: &[ResolutionStep], rng: &mut Option<ChaCha8Rng>| -> Option<ResolutionStep> {
            match (strategy, rng) {
                (Strategy::Smallest, _) => v.first().copied(),
                (Strategy::Largest, _) => v.last().copied(),
                (Strategy::Seeded(_), Some(r)) => v.choose(r).copied(),
                (Strategy::Seeded(_), None) => unreachable!(),
            }
        };
        let (step, last) = if let Some(s) = pick(&cones, &mut rng) {
            (s, true)
        } else if let Some(s) = pick(&doms, &mut rng) {
            (s, false)
        } else {
            break;
        };
        let next = stage.colon(SquareFreeMonomial::var(step.a))?;
        steps.push(step);
        stages.push(next);
        if last {
            break;
        }
    }
    Ok(Resolution { steps, stages })
}

/// Every maximal resolution, by depth-first search over all sequences.
/// Resolutions differing only in the witnesses `b_i` are identified.
pub fn all_maximal_resolutions(ideal: &MonomialIdeal, budget: usize) -> Result<Vec<Resolution>> {
    Ok(explore(ideal, budget)?.maximal)
}

struct Exploration {
    maximal: Vec<Resolution>,
    saw_cone: bool,
}

fn explore(ideal: &MonomialIdeal, budget: usize) -> Result<Exploration> {
    if ideal.is_unit() {
        return Err(Error::Precondition("the unit ideal has no resolutions".into()));
    }
    let mut out = Exploration {
        maximal: Vec::new(),
        saw_cone: false,
    };
    let mut nodes = 0usize;
    let mut steps = Vec::new();
    let mut stages = vec![ideal.clone()];
    dfs(&mut steps, &mut stages, &mut nodes, budget, &mut out)?;
    Ok(out)
}

fn dfs(
    steps: &mut Vec<ResolutionStep>,
    stages: &mut Vec<MonomialIdeal>,
    nodes: &mut usize,
    budget: usize,
    out: &mut Exploration,
) -> Result<()> {
    *nodes += 1;
    if *nodes > budget {
        return Err(Error::BudgetExceeded {
            what: "resolution",
            limit: budget,
        });
    }
    let stage = stages.last().expect("nonempty").clone();
    let (cones, doms) = available_steps(&stage);
    out.saw_cone |= !cones.is_empty();
    // One child per apex `a`, with the smallest witness.
    let mut children: Vec<ResolutionStep> = cones;
    let mut seen: BTreeSet<usize> = children.iter().map(|s| s.a).collect();
    for s in doms {
        if seen.insert(s.a) {
            children.push(s);
        }
    }
    children.sort_by_key(|s| s.a);
    if children.is_empty() {
        out.maximal.push(Resolution {
            steps: steps.clone(),
            stages: stages.clone(),
        });
        return Ok(());
    }
    for step in children {
        stages.push(stage.colon(SquareFreeMonomial::var(step.a))?);
        steps.push(step);
        dfs(steps, stages, nodes, budget, out)?;
        steps.pop();
        stages.pop();
    }
    Ok(())
}

/// A maximal spherical resolution whose variables `a_1, b_1, ..., a_r, b_r`
/// are pairwise distinct, if one exists. Depth-first over dominating pairs,
/// remembering failed states.
pub fn find_distinct_resolution(ideal: &MonomialIdeal, budget: usize) -> Result<Option<Resolution>> {
    if ideal.is_unit() {
        return Err(Error::Precondition("the unit ideal has no resolutions".into()));
    }
    struct Search {
        nodes: usize,
        budget: usize,
        failed: HashSet<(Vec<SquareFreeMonomial>, u64)>,
    }
    fn go(
        steps: &mut Vec<ResolutionStep>,
        stages: &mut Vec<MonomialIdeal>,
        used: u64,
        search: &mut Search,
    ) -> Result<bool> {
        search.nodes += 1;
        if search.nodes > search.budget {
            return Err(Error::BudgetExceeded {
                what: "resolution",
                limit: search.budget,
            });
        }
        let stage = stages.last().expect("nonempty").clone();
        let key = (stage.generators().to_vec(), used);
        if search.failed.contains(&key) {
            return Ok(false);
        }
        let (cones, doms) = available_steps(&stage);
        if !cones.is_empty() {
            search.failed.insert(key);
            return Ok(false);
        }
        if doms.is_empty() {
            return Ok(true);
        }
        for step in doms {
            let b = step.b().expect("dominating step");
            if used >> step.a & 1 == 1 || used >> b & 1 == 1 {
                continue;
            }
            stages.push(stage.colon(SquareFreeMonomial::var(step.a))?);
            steps.push(step);
            if go(steps, stages, used | 1 << step.a | 1 << b, search)? {
                return Ok(true);
            }
            steps.pop();
            stages.pop();
        }
        search.failed.insert(key);
        Ok(false)
    }
    let mut search = Search {
        nodes: 0,
        budget,
        failed: HashSet::new(),
    };
    let mut steps = Vec::new();
    let mut stages = vec![ideal.clone()];
    Ok(go(&mut steps, &mut stages, 0, &mut search)?.then_some(Resolution { steps, stages }))
}

/// A relabelling `perm` of the variables (`perm[i]` is the image of `i`)
/// carrying the generators of `i1` onto those of `i2`, if one exists.
pub fn permutation_equivalence(i1: &MonomialIdeal, i2: &MonomialIdeal) -> Option<Vec<usize>> {
    let n = i1.nvars();
    if n != i2.nvars() || i1.generators().len() != i2.generators().len() {
        return None;
    }
    let profile = |ideal: &MonomialIdeal, v: usize| -> Vec<usize> {
        let mut p: Vec<usize> = ideal
            .generators()
            .iter()
            .filter(|g| g.contains_var(v))
            .map(|g| g.degree())
            .collect();
        p.sort_unstable();
        p
    };
    let p1: Vec<_> = (0..n).map(|v| profile(i1, v)).collect();
    let p2: Vec<_> = (0..n).map(|v| profile(i2, v)).collect();
    let target: BTreeSet<SquareFreeMonomial> = i2.generators().iter().copied().collect();
    let mut perm = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn extend(
        v: usize,
        perm: &mut Vec<usize>,
        used: &mut Vec<bool>,
        p1: &[Vec<usize>],
        p2: &[Vec<usize>],
        gens: &[SquareFreeMonomial],
        target: &BTreeSet<SquareFreeMonomial>,
    ) -> bool {
        let n = perm.len();
        if v == n {
            return true;
        }
        for w in 0..n {
            if used[w] || p1[v] != p2[w] {
                continue;
            }
            perm[v] = w;
            used[w] = true;
            // Generators whose largest variable is v are now fully mapped.
            let consistent = gens
                .iter()
                .filter(|g| !g.is_one() && 63 - g.bits().leading_zeros() as usize == v)
                .all(|g| {
                    let image = SquareFreeMonomial::from_vars(g.iter().map(|x| perm[x]));
                    target.contains(&image)
                });
            if consistent && extend(v + 1, perm, used, p1, p2, gens, target) {
                return true;
            }
            used[w] = false;
        }
        perm[v] = usize::MAX;
        false
    }
    if extend(0, &mut perm, &mut used, &p1, &p2, i1.generators(), &target) {
        Some(perm)
    } else {
        None
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Conical,
    Spherical,
}

/// Outcome of the greedy classification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub verdict: Verdict,
    /// The greedy resolution; for conical ideals it ends with a cone step.
    pub resolution: Resolution,
}

impl Classification {
    /// `d(I)`; not defined for conical ideals.
    pub fn depth(&self) -> Option<usize> {
        (self.verdict == Verdict::Spherical).then(|| self.resolution.depth())
    }

    pub fn core(&self) -> &MonomialIdeal {
        self.resolution.core()
    }

    /// Spherical with the ideal of all variables as core.
    pub fn is_simple(&self) -> bool {
        self.verdict == Verdict::Spherical && self.resolution.has_trivial_core()
    }
}

pub fn classify(ideal: &MonomialIdeal) -> Result<Classification> {
    let resolution = find_resolution(ideal, Strategy::Smallest)?;
    let verdict = if resolution.first_cone().is_some() {
        Verdict::Conical
    } else {
        Verdict::Spherical
    };
    Ok(Classification {
        verdict,
        resolution,
    })
}

/// Summary of the exhaustive enumeration of maximal resolutions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoreSurvey {
    pub resolutions: Vec<Resolution>,
    pub depths: BTreeSet<usize>,
    /// One representative per permutation class of spherical cores.
    pub core_classes: Vec<MonomialIdeal>,
    /// Some stage of some resolution admitted a cone step.
    pub saw_cone: bool,
    pub spherical_count: usize,
}

impl CoreSurvey {
    /// The uniqueness statement: if one maximal resolution is spherical,
    /// then no resolution meets a cone, all maximal resolutions have the
    /// same depth and all cores agree up to permutation.
    pub fn consistent(&self) -> bool {
        if self.spherical_count == 0 {
            return true;
        }
        !self.saw_cone
            && self.spherical_count == self.resolutions.len()
            && self.depths.len() == 1
            && self.core_classes.len() == 1
    }
}

pub fn survey_cores(ideal: &MonomialIdeal, budget: usize) -> Result<CoreSurvey> {
    let exploration = explore(ideal, budget)?;
    let mut depths = BTreeSet::new();
    let mut classes: Vec<MonomialIdeal> = Vec::new();
    let mut spherical_count = 0;
    for r in &exploration.maximal {
        if !r.is_spherical() {
            continue;
        }
        spherical_count += 1;
        depths.insert(r.depth());
        if !classes
            .iter()
            .any(|c| permutation_equivalence(c, r.core()).is_some())
        {
            classes.push(r.core().clone());
        }
    }
    Ok(CoreSurvey {
        resolutions: exploration.maximal,
        depths,
        core_classes: classes,
        saw_cone: exploration.saw_cone,
        spherical_count,
    })
}

/// `join({1,a_1,b_1}, ..., {1,a_r,b_r}, R(c(A)))` for a spherical resolution.
pub fn collapse_target(resolution: &Resolution, max_faces: usize) -> Result<SimplicialComplex> {
    if !resolution.is_spherical() {
        return Err(Error::Precondition("resolution is not spherical".into()));
    }
    let u = resolution.ideal().universe();
    let sigma = crate::complexes::cross_polytope_boundary(u, &resolution.pairs())?;
    let core = SimplicialComplex::realize(resolution.core(), max_faces)?;
    SimplicialComplex::join(u, &[&sigma, &core])
}

/// Explicit elementary collapses from `R(I)` to [`collapse_target`] when
/// the resolution is spherical, or to the single point `{1, a}` when its
/// first cone step has apex `a`.
pub fn witness_collapse_to_core(resolution: &Resolution, max_faces: usize) -> Result<Vec<CollapseStep>> {
    match resolution.first_cone() {
        None => {
            if !resolution.is_spherical() {
                return Err(Error::Precondition(
                    "core is a cone; extend the resolution by a cone step".into(),
                ));
            }
            suspension_plan(resolution, 0, resolution.depth(), max_faces)
        }
        Some(k) => {
            let mut plan = suspension_plan(resolution, 0, k, max_faces)?;
            let u = resolution.ideal().universe();
            let prefix = crate::complexes::cross_polytope_boundary(u, &resolution.pairs()[..k])?;
            let base = SimplicialComplex::realize(resolution.stage(k), max_faces)?;
            let cone = SimplicialComplex::join(u, &[&prefix, &base])?;
            plan.extend(cone_to_point(&cone, resolution.steps()[k].a)?);
            Ok(plan)
        }
    }
}

/// Collapses from `R(I_from)` onto the join of the suspensions for steps
/// `from..to` with `R(I_to)`.
fn suspension_plan(
    resolution: &Resolution,
    from: usize,
    to: usize,
    max_faces: usize,
) -> Result<Vec<CollapseStep>> {
    if from == to {
        return Ok(Vec::new());
    }
    let step = resolution.steps()[from];
    let b = step.b().expect("dominating step");
    let a = SquareFreeMonomial::var(step.a);
    let b = SquareFreeMonomial::var(b);
    let complex = SimplicialComplex::realize(resolution.stage(from), max_faces)?;
    let link = SimplicialComplex::realize(resolution.stage(from + 1), max_faces)?;
    let target = link.suspension(a, b)?;
    let mut plan = domination_collapses(complex, &target, b)?;
    for s in suspension_plan(resolution, from + 1, to, max_faces)? {
        lift_through_suspension(&s, a, b, &mut plan);
    }
    Ok(plan)
}

/// Collapse `complex` onto `target` by removing `(σ/b, σ)` for the faces
/// `σ` outside the target that contain `b`, from the top degree down.
fn domination_collapses(
    mut complex: SimplicialComplex,
    target: &SimplicialComplex,
    b: SquareFreeMonomial,
) -> Result<Vec<CollapseStep>> {
    let mut outside: Vec<SquareFreeMonomial> = complex
        .faces()
        .filter(|&f| b.divides(f) && !target.contains(f))
        .collect();
    outside.sort_by(|x, y| y.graded_cmp(*x));
    let mut plan = Vec::with_capacity(outside.len());
    for sigma in outside {
        let step = CollapseStep::new(sigma.strip(b), sigma)?;
        complex
            .collapse(&step)
            .map_err(|e| Error::Internal(format!("domination collapse failed: {e}")))?;
        plan.push(step);
    }
    if &complex != target {
        return Err(Error::Internal(
            "domination collapses did not reach the suspension".into(),
        ));
    }
    Ok(plan)
}

/// Lift a collapse of `Δ` to `join(Δ, {1, x, y})`, where `x` is not a
/// vertex of any complex involved.
fn lift_through_suspension(
    s: &CollapseStep,
    x: SquareFreeMonomial,
    y: SquareFreeMonomial,
    plan: &mut Vec<CollapseStep>,
) {
    let (tau, sigma) = (s.tau, s.sigma);
    let with = |t: SquareFreeMonomial| CollapseStep {
        tau: tau.lcm(t),
        sigma: sigma.lcm(t),
    };
    if !y.divides(sigma) {
        plan.push(with(x));
        plan.push(with(y));
        plan.push(*s);
    } else if !y.divides(tau) {
        plan.push(with(x));
        plan.push(*s);
    } else {
        plan.push(with(x));
    }
}

/// Collapse a cone with apex `a` onto `{1, a}`.
fn cone_to_point(cone: &SimplicialComplex, a: usize) -> Result<Vec<CollapseStep>> {
    let apex = SquareFreeMonomial::var(a);
    if !cone.is_cone_with_apex(a) {
        return Err(Error::Internal("expected a cone".into()));
    }
    let mut base: Vec<SquareFreeMonomial> = cone
        .faces()
        .filter(|&f| !f.is_one() && !apex.divides(f))
        .collect();
    base.sort_by(|x, y| y.graded_cmp(*x));
    Ok(base
        .into_iter()
        .map(|tau| CollapseStep {
            tau,
            sigma: tau.lcm(apex),
        })
        .collect())
}

/// `z = (a_1 - b_1) ... (a_r - b_r)` as a chain of `R(I)`, each product
/// `c_1 ... c_r` read as the simplex oriented by `c_1, ..., c_r`.
///
/// Requires a spherical maximal resolution with trivial core and pairwise
/// distinct `a_i, b_i`.
pub fn generator_cycle(resolution: &Resolution, complex: &SimplicialComplex) -> Result<Chain> {
    if !resolution.is_spherical() || !resolution.is_maximal() || !resolution.has_trivial_core() {
        return Err(Error::Precondition(
            "generator cycles need a maximal spherical resolution with trivial core".into(),
        ));
    }
    let pairs = resolution.pairs();
    let mut seen = SquareFreeMonomial::ONE;
    for &(a, b) in &pairs {
        for v in [a, b] {
            if seen.contains_var(v) {
                return Err(Error::Precondition(
                    "resolution pairs share a variable".into(),
                ));
            }
            seen = seen.lcm(SquareFreeMonomial::var(v));
        }
    }
    let r = pairs.len();
    let mut z = Chain::zero(r);
    for choice in 0u64..(1u64 << r) {
        let vars: Vec<usize> = (0..r)
            .map(|i| if choice >> i & 1 == 0 { pairs[i].0 } else { pairs[i].1 })
            .collect();
        let face = SquareFreeMonomial::from_vars(vars.iter().copied());
        if !complex.contains(face) {
            return Err(Error::Internal(format!(
                "{} is not a face",
                complex.universe().format_monomial(face)
            )));
        }
        let sign = if choice.count_ones() % 2 == 0 { 1 } else { -1 };
        z.add(face, sign * permutation_sign(&vars))?;
    }
    Ok(z)
}

/// Sign of the permutation sorting `v` increasingly (entries distinct).
fn permutation_sign(v: &[usize]) -> i64 {
    let mut inversions = 0;
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            if v[i] > v[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::{verify_collapse_sequence, DEFAULT_MAX_FACES};
    use crate::homology::{generates_top_class, is_cycle, reduced_homology, HomologyProfile};
    use crate::ideals::{Universe, VariableUniverse};

    fn u(n: usize) -> Universe {
        VariableUniverse::indexed(n).unwrap()
    }

    fn ideal(u: &Universe, gens: &[&str]) -> MonomialIdeal {
        MonomialIdeal::parse(u.clone(), gens).unwrap()
    }

    fn idx(u: &Universe, name: &str) -> usize {
        u.index_of(name).unwrap()
    }

    fn seven() -> MonomialIdeal {
        ideal(
            &u(7),
            &["x1 x2", "x3 x7", "x5 x6", "x5 x7", "x1 x3 x4", "x2 x3 x4"],
        )
    }

    #[test]
    fn cone_apexes() {
        let u3 = u(3);
        let i = ideal(&u3, &["x1 x2"]);
        assert!(is_cone_apex(&i, 2).unwrap());
        assert!(!is_cone_apex(&i, 0).unwrap());
        let j = ideal(&u3, &["x1"]);
        assert_eq!(is_cone_apex(&j, 0), Err(Error::VariableInIdeal("x1".into())));
    }

    #[test]
    fn domination_examples() {
        let u3 = u(3);
        let i = ideal(&u3, &["x1 x2 x3"]);
        assert!(dominates(&i, 2, 0).unwrap());
        let u4 = u(4);
        let j = ideal(&u4, &["x1 x2", "x3 x4"]);
        assert!(dominates(&j, 2, 3).unwrap());
        assert!(!dominates(&j, 0, 2).unwrap());
        let k = ideal(&u(2), &["x1 x2"]);
        assert!(dominates(&k, 0, 1).unwrap() && dominates(&k, 1, 0).unwrap());
        assert!(dominates(&k, 0, 0).is_err());
    }

    #[test]
    fn domination_matches_cone_definition() {
        // a dominates b iff R(I) is not a cone with apex b but R(I, a) is.
        let i = seven();
        let n = i.nvars();
        for a in 0..n {
            for b in 0..n {
                if a == b {
                    continue;
                }
                let ia = i.add(SquareFreeMonomial::var(a)).unwrap();
                let expected = !cone_apex_unchecked(&i, b) && cone_apex_unchecked(&ia, b);
                assert_eq!(dominates(&i, a, b).unwrap(), expected, "a={a} b={b}");
            }
        }
    }

    #[test]
    fn single_edge_resolution() {
        let i = ideal(&u(2), &["x1 x2"]);
        let r = find_resolution(&i, Strategy::Smallest).unwrap();
        assert_eq!(r.steps(), &[ResolutionStep::dominates(0, 1)]);
        assert_eq!(r.core().generator_strings(), ["x1", "x2"]);
        assert!(r.has_trivial_core() && r.is_maximal() && r.is_spherical());
    }

    #[test]
    fn seven_variable_cores() {
        let i = seven();
        let u7 = i.universe().clone();
        let a1 = Resolution::from_sequence(&i, &[idx(&u7, "x5"), idx(&u7, "x4")]).unwrap();
        let a2 = Resolution::from_sequence(&i, &[idx(&u7, "x3"), idx(&u7, "x6")]).unwrap();
        assert_eq!(
            a1.core().generator_strings(),
            ["x4", "x5", "x6", "x7", "x1 x2", "x1 x3", "x2 x3"]
        );
        assert_eq!(
            a2.core().generator_strings(),
            ["x3", "x5", "x6", "x7", "x1 x2", "x1 x4", "x2 x4"]
        );
        for r in [&a1, &a2] {
            assert!(r.is_maximal() && r.is_spherical());
        }
        let perm = permutation_equivalence(a1.core(), a2.core()).unwrap();
        assert_eq!(a1.core().permute(&crate::ideals::VariableMap::permutation(&perm).unwrap()).unwrap(), *a2.core());
        let survey = survey_cores(&i, DEFAULT_RESOLUTION_BUDGET).unwrap();
        assert!(survey.consistent());
        assert_eq!(survey.depths, BTreeSet::from([2]));
        let c = classify(&i).unwrap();
        assert_eq!(c.verdict, Verdict::Spherical);
        assert_eq!(c.depth(), Some(2));
        assert!(!c.is_simple());
        assert_eq!(c.resolution.steps()[0].a, idx(&u7, "x3"));
    }

    #[test]
    fn hybrid_resolution_has_depth_three() {
        let u5 = u(5);
        let i = ideal(&u5, &["x1 x2", "x3 x4 x5"]);
        let labelled = Resolution::from_steps(
            &i,
            vec![
                ResolutionStep::dominates(0, 1),
                ResolutionStep::dominates(2, 4),
                ResolutionStep::dominates(3, 4),
            ],
        )
        .unwrap();
        assert!(labelled.is_maximal() && labelled.has_trivial_core());
        let c = classify(&i).unwrap();
        assert_eq!(c.depth(), Some(3));
        assert!(c.is_simple());
    }

    #[test]
    fn invalid_steps_are_rejected() {
        let i = ideal(&u(4), &["x1 x2", "x3 x4"]);
        assert!(Resolution::from_steps(&i, vec![ResolutionStep::dominates(0, 2)]).is_err());
        assert!(Resolution::from_steps(&i, vec![ResolutionStep::cone(0)]).is_err());
        assert!(Resolution::from_steps(
            &i,
            vec![ResolutionStep::dominates(0, 1), ResolutionStep::dominates(0, 1)]
        )
        .is_err());
        assert!(find_resolution(&MonomialIdeal::unit(u(2)), Strategy::Smallest).is_err());
    }

    #[test]
    fn square_free_cycle_has_no_steps() {
        let c4 = ideal(&u(4), &["x1 x2", "x2 x3", "x3 x4", "x1 x4"]);
        let all = all_maximal_resolutions(&c4, 100).unwrap();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].depth(), 0);
        assert!(all[0].is_spherical());
    }

    #[test]
    fn full_simplex_is_conical() {
        let i = MonomialIdeal::zero(u(3));
        let c = classify(&i).unwrap();
        assert_eq!(c.verdict, Verdict::Conical);
        assert_eq!(c.depth(), None);
        let survey = survey_cores(&i, 1000).unwrap();
        assert_eq!(survey.spherical_count, 0);
        assert!(survey.saw_cone);
    }

    #[test]
    fn path_three_is_zero_sphere() {
        let i = ideal(&u(3), &["x1 x2", "x2 x3"]);
        let c = classify(&i).unwrap();
        assert_eq!(c.resolution.steps(), &[ResolutionStep::dominates(1, 0)]);
        assert!(c.is_simple());
        let d = SimplicialComplex::realize(&i, DEFAULT_MAX_FACES).unwrap();
        assert_eq!(reduced_homology(&d).unwrap(), HomologyProfile::sphere(0));
    }

    #[test]
    fn witnesses_verify() {
        let cases: Vec<MonomialIdeal> = vec![
            ideal(&u(3), &["x1 x2 x3"]),
            ideal(&u(4), &["x1 x2", "x3 x4"]),
            ideal(&u(5), &["x1 x2", "x3 x4 x5"]),
            ideal(&u(4), &["x1 x2", "x2 x3", "x3 x4"]),
            seven(),
            MonomialIdeal::zero(u(3)),
            ideal(&u(4), &["x1 x2", "x2 x3"]),
        ];
        for i in cases {
            let r = classify(&i).unwrap().resolution;
            let plan = witness_collapse_to_core(&r, DEFAULT_MAX_FACES).unwrap();
            let from = SimplicialComplex::realize(&i, DEFAULT_MAX_FACES).unwrap();
            let to = match r.first_cone() {
                None => collapse_target(&r, DEFAULT_MAX_FACES).unwrap(),
                Some(k) => SimplicialComplex::from_faces(
                    i.universe().clone(),
                    [SquareFreeMonomial::ONE, SquareFreeMonomial::var(r.steps()[k].a)],
                )
                .unwrap(),
            };
            let check = verify_collapse_sequence(&from, &plan, &to);
            assert!(check.valid, "{i}: {check:?}");
        }
    }

    #[test]
    fn square_witness_is_trivial_after_first_step() {
        let i = ideal(&u(4), &["x1 x2", "x3 x4"]);
        let r = classify(&i).unwrap().resolution;
        let target = collapse_target(&r, DEFAULT_MAX_FACES).unwrap();
        assert_eq!(target, SimplicialComplex::realize(&i, DEFAULT_MAX_FACES).unwrap());
        assert!(witness_collapse_to_core(&r, DEFAULT_MAX_FACES).unwrap().is_empty());
    }

    #[test]
    fn cross_polytope_generator() {
        let i = ideal(&u(4), &["x1 x2", "x3 x4"]);
        let r = classify(&i).unwrap().resolution;
        let d = SimplicialComplex::realize(&i, DEFAULT_MAX_FACES).unwrap();
        let z = generator_cycle(&r, &d).unwrap();
        assert_eq!(z.len(), 4);
        assert!(is_cycle(&z, &d).unwrap());
        assert!(generates_top_class(&z, &d, 1).unwrap());
    }

    #[test]
    fn permutation_signs() {
        assert_eq!(permutation_sign(&[0, 1, 2]), 1);
        assert_eq!(permutation_sign(&[1, 0, 2]), -1);
        assert_eq!(permutation_sign(&[2, 0, 1]), 1);
    }

    #[test]
    fn seeded_strategy_is_reproducible() {
        let i = seven();
        let a = find_resolution(&i, Strategy::Seeded(7)).unwrap();
        let b = find_resolution(&i, Strategy::Seeded(7)).unwrap();
        assert_eq!(a, b);
        assert!(a.is_maximal());
    }
}
