//! Explicit simplicial complexes `R(I)`: enumeration, links, joins, face
//! polynomials and elementary collapses.

use std::collections::HashSet;
use std::fmt;
use std::hash::{BuildHasherDefault, Hasher};
use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::ideals::{MonomialIdeal, SquareFreeMonomial, Universe};
use crate::polynomial::{square_free_exponents, MultigradedPolynomial, UnivariatePolynomial};

pub const DEFAULT_MAX_FACES: usize = 1 << 20;

/// Multiplicative hasher for face bit sets.
#[derive(Default, Clone, Copy)]
pub struct FaceHasher(u64);

impl Hasher for FaceHasher {
    fn finish(&self) -> u64 {
        self.0
    }

    fn write(&mut self, bytes: &[u8]) {
        for &b in bytes {
            self.0 = (self.0.rotate_left(5) ^ u64::from(b)).wrapping_mul(0x51_7c_c1_b7_27_22_0a_95);
        }
    }

    fn write_u64(&mut self, n: u64) {
        self.0 = (self.0.rotate_left(5) ^ n).wrapping_mul(0x9e37_79b9_7f4a_7c15);
    }
}

pub type FaceSet = HashSet<SquareFreeMonomial, BuildHasherDefault<FaceHasher>>;

/// A finite downward-closed set of square-free monomials.
///
/// The empty set of faces is the (-1)-simplex; `{1}` is the (-1)-sphere.
#[derive(Clone)]
pub struct SimplicialComplex {
    universe: Universe,
    faces: FaceSet,
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.same_universe(other) && self.faces == other.faces
    }
}

impl Eq for SimplicialComplex {}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let faces: Vec<String> = self
            .sorted_faces()
            .into_iter()
            .map(|m| self.universe.format_monomial(m))
            .collect();
        f.debug_struct("SimplicialComplex").field("faces", &faces).finish()
    }
}

/// Remove `tau` and `sigma = a * tau`, where `sigma` is the unique face
/// properly containing `tau`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CollapseStep {
    pub tau: SquareFreeMonomial,
    pub sigma: SquareFreeMonomial,
}

impl CollapseStep {
    pub fn new(tau: SquareFreeMonomial, sigma: SquareFreeMonomial) -> Result<Self> {
        if !tau.divides(sigma) || sigma.degree() != tau.degree() + 1 {
            return Err(Error::InvalidCollapse(
                "sigma must be tau times exactly one variable".into(),
            ));
        }
        Ok(CollapseStep { tau, sigma })
    }

    /// The variable `a` with `sigma = a * tau`.
    pub fn apex(&self) -> SquareFreeMonomial {
        self.sigma.strip(self.tau)
    }
}

/// Outcome of checking a claimed collapse sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CollapseCheck {
    pub valid: bool,
    /// Index of the first invalid step, if a step failed.
    pub failed_step: Option<usize>,
    pub reason: Option<String>,
}

impl CollapseCheck {
    fn ok() -> Self {
        CollapseCheck {
            valid: true,
            failed_step: None,
            reason: None,
        }
    }
}

impl SimplicialComplex {
    /// The (-1)-simplex: no faces at all.
    pub fn void(universe: Universe) -> Self {
        SimplicialComplex {
            universe,
            faces: FaceSet::default(),
        }
    }

    /// The (-1)-sphere `{1}`.
    pub fn point_sphere(universe: Universe) -> Self {
        let mut faces = FaceSet::default();
        faces.insert(SquareFreeMonomial::ONE);
        SimplicialComplex { universe, faces }
    }

    /// Build from a face list, which must already be downward closed.
    pub fn from_faces<I>(universe: Universe, faces: I) -> Result<Self>
    where
        I: IntoIterator<Item = SquareFreeMonomial>,
    {
        let mut set = FaceSet::default();
        for f in faces {
            universe.check(f)?;
            set.insert(f);
        }
        let complex = SimplicialComplex {
            universe,
            faces: set,
        };
        if !complex.is_downward_closed() {
            return Err(Error::Precondition("face set is not downward closed".into()));
        }
        Ok(complex)
    }

    /// The smallest complex containing the given faces.
    pub fn from_facets<I>(universe: Universe, facets: I) -> Result<Self>
    where
        I: IntoIterator<Item = SquareFreeMonomial>,
    {
        let mut set = FaceSet::default();
        for f in facets {
            universe.check(f)?;
            let bits = f.bits();
            // Enumerate all subsets of the facet.
            let mut sub = bits;
            loop {
                set.insert(SquareFreeMonomial::from_bits(sub));
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & bits;
            }
        }
        Ok(SimplicialComplex {
            universe,
            faces: set,
        })
    }

    /// `R(I)`: all square-free monomials outside `I`, enumerated by
    /// increasing degree. Supersets of non-faces are never visited.
    pub fn realize(ideal: &MonomialIdeal, max_faces: usize) -> Result<Self> {
        let universe = ideal.universe().clone();
        let mut faces = FaceSet::default();
        if ideal.is_unit() {
            return Ok(SimplicialComplex { universe, faces });
        }
        let live: Vec<usize> = ideal.live_variables().iter().collect();
        let mut level = vec![SquareFreeMonomial::ONE];
        while !level.is_empty() {
            if faces.len() + level.len() > max_faces {
                return Err(Error::BudgetExceeded {
                    what: "face",
                    limit: max_faces,
                });
            }
            let mut next = Vec::new();
            for &f in &level {
                faces.insert(f);
                let top = 64 - f.bits().leading_zeros() as usize;
                for &v in live.iter().filter(|&&v| v >= top) {
                    let g = f.lcm(SquareFreeMonomial::var(v));
                    if !ideal.contains_unchecked(g) {
                        next.push(g);
                    }
                }
            }
            level = next;
        }
        Ok(SimplicialComplex { universe, faces })
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn same_universe(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.universe, &other.universe) || self.universe == other.universe
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    /// True for the (-1)-simplex.
    pub fn is_void(&self) -> bool {
        self.faces.is_empty()
    }

    /// Same as [`SimplicialComplex::is_void`].
    pub fn is_empty(&self) -> bool {
        self.is_void()
    }

    pub fn contains(&self, m: SquareFreeMonomial) -> bool {
        self.faces.contains(&m)
    }

    pub fn faces(&self) -> impl Iterator<Item = SquareFreeMonomial> + '_ {
        self.faces.iter().copied()
    }

    /// Faces in graded order: by degree, then lexicographically.
    pub fn sorted_faces(&self) -> Vec<SquareFreeMonomial> {
        let mut v: Vec<_> = self.faces.iter().copied().collect();
        v.sort_by(|a, b| a.graded_cmp(*b));
        v
    }

    /// `out[d]` lists the faces of degree `d` (dimension `d - 1`), sorted.
    pub fn faces_by_degree(&self) -> Vec<Vec<SquareFreeMonomial>> {
        let mut out: Vec<Vec<SquareFreeMonomial>> = Vec::new();
        for f in self.sorted_faces() {
            let d = f.degree();
            if out.len() <= d {
                out.resize(d + 1, Vec::new());
            }
            out[d].push(f);
        }
        out
    }

    /// Dimension; `None` for the void complex, `Some(-1)` for `{1}`.
    pub fn dimension(&self) -> Option<i64> {
        self.faces.iter().map(|f| f.degree() as i64 - 1).max()
    }

    pub fn vertices(&self) -> SquareFreeMonomial {
        self.faces
            .iter()
            .filter(|f| f.degree() == 1)
            .fold(SquareFreeMonomial::ONE, |acc, &f| acc.lcm(f))
    }

    pub fn is_downward_closed(&self) -> bool {
        self.faces.iter().all(|&f| {
            f.iter()
                .all(|v| self.faces.contains(&f.strip(SquareFreeMonomial::var(v))))
        })
    }

    pub fn is_maximal(&self, f: SquareFreeMonomial) -> bool {
        self.contains(f)
            && (0..self.universe.len())
                .filter(|&v| !f.contains_var(v))
                .all(|v| !self.contains(f.lcm(SquareFreeMonomial::var(v))))
    }

    pub fn facets(&self) -> Vec<SquareFreeMonomial> {
        let mut v: Vec<_> = self.faces().filter(|&f| self.is_maximal(f)).collect();
        v.sort_by(|a, b| a.graded_cmp(*b));
        v
    }

    /// Whether `R` is a cone with apex `a`: `a` is a vertex and `a*f` is a
    /// face for every face `f`.
    pub fn is_cone_with_apex(&self, a: usize) -> bool {
        let av = SquareFreeMonomial::var(a);
        self.contains(av) && self.faces.iter().all(|&f| self.contains(f.lcm(av)))
    }

    /// The Stanley-Reisner ideal: generated by the minimal non-faces.
    pub fn stanley_reisner_ideal(&self) -> Result<MonomialIdeal> {
        if self.is_void() {
            return Ok(MonomialIdeal::unit(self.universe.clone()));
        }
        let mut gens = Vec::new();
        for &f in &self.faces {
            for v in (0..self.universe.len()).filter(|&v| !f.contains_var(v)) {
                let g = f.lcm(SquareFreeMonomial::var(v));
                if !self.contains(g)
                    && g.iter().all(|u| self.contains(g.strip(SquareFreeMonomial::var(u))))
                {
                    gens.push(g);
                }
            }
        }
        MonomialIdeal::new(self.universe.clone(), gens)
    }

    /// `(Δ : x) = { m in Δ : x m in Δ }`.
    pub fn link(&self, x: SquareFreeMonomial) -> Result<Self> {
        self.universe.check(x)?;
        let faces = self
            .faces
            .iter()
            .copied()
            .filter(|&m| m.is_coprime(x) && self.contains(m.lcm(x)))
            .collect();
        Ok(SimplicialComplex {
            universe: self.universe.clone(),
            faces,
        })
    }

    /// `(Δ, x) = { m in Δ : x does not divide m }`.
    pub fn deletion(&self, x: SquareFreeMonomial) -> Result<Self> {
        self.universe.check(x)?;
        let faces = self
            .faces
            .iter()
            .copied()
            .filter(|&m| !x.divides(m))
            .collect();
        Ok(SimplicialComplex {
            universe: self.universe.clone(),
            faces,
        })
    }

    /// `join(Δ1, ..., Δk) = { lcm(m1, ..., mk) : mi in Δi }`. The empty
    /// join is `{1}`.
    pub fn join(universe: &Universe, parts: &[&SimplicialComplex]) -> Result<Self> {
        let mut acc = SimplicialComplex::point_sphere(universe.clone());
        for part in parts {
            if !acc.same_universe(part) {
                return Err(Error::UniverseMismatch);
            }
            let mut faces = FaceSet::default();
            for &f in &acc.faces {
                for &g in &part.faces {
                    faces.insert(f.lcm(g));
                }
            }
            acc.faces = faces;
        }
        Ok(acc)
    }

    /// `join(Δ, {1, x})`.
    pub fn cone(&self, x: SquareFreeMonomial) -> Result<Self> {
        let tip = SimplicialComplex::from_faces(self.universe.clone(), [SquareFreeMonomial::ONE, x])?;
        Self::join(&self.universe, &[self, &tip])
    }

    /// `join(Δ, {1, x, y})`.
    pub fn suspension(&self, x: SquareFreeMonomial, y: SquareFreeMonomial) -> Result<Self> {
        let poles = SimplicialComplex::from_faces(
            self.universe.clone(),
            [SquareFreeMonomial::ONE, x, y],
        )?;
        Self::join(&self.universe, &[self, &poles])
    }

    /// Cone on `Δ` with apex the variable `x`, which must not be a vertex.
    pub fn coprime_cone(&self, x: usize) -> Result<Self> {
        if self.vertices().contains_var(x) {
            return Err(Error::Precondition("cone apex is a vertex of the base".into()));
        }
        self.cone(SquareFreeMonomial::var(x))
    }

    /// Suspension of `Δ` with distinct poles that are not vertices.
    pub fn coprime_suspension(&self, x: usize, y: usize) -> Result<Self> {
        let verts = self.vertices();
        if x == y || verts.contains_var(x) || verts.contains_var(y) {
            return Err(Error::Precondition(
                "suspension poles must be distinct non-vertices".into(),
            ));
        }
        self.suspension(SquareFreeMonomial::var(x), SquareFreeMonomial::var(y))
    }

    /// Whether `Δ = A_x(Δ : x) ∪ (Δ, x)` as face sets.
    pub fn decompose_check(&self, x: SquareFreeMonomial) -> Result<bool> {
        let link = self.link(x)?;
        let deletion = self.deletion(x)?;
        let cone = if link.is_void() { link } else { link.cone(x)? };
        let mut union: FaceSet = cone.faces;
        union.extend(deletion.faces.iter().copied());
        Ok(union == self.faces)
    }

    /// The multigraded face polynomial: the sum of all faces.
    pub fn face_polynomial(&self) -> MultigradedPolynomial {
        let n = self.universe.len();
        let mut p = MultigradedPolynomial::zero(n);
        for &f in &self.faces {
            p.add_term(square_free_exponents(f, n), BigInt::from(1));
        }
        p
    }

    /// `F(t) = sum over faces of t^deg`.
    pub fn f_polynomial(&self) -> UnivariatePolynomial {
        let mut counts = vec![0i64; 66];
        for f in &self.faces {
            counts[f.degree()] += 1;
        }
        UnivariatePolynomial::from_i64(&counts)
    }

    /// `-F(-1)`.
    pub fn reduced_euler(&self) -> i64 {
        -self
            .faces
            .iter()
            .map(|f| if f.degree() % 2 == 0 { 1i64 } else { -1 })
            .sum::<i64>()
    }

    /// Check that `step` is an elementary collapse of the current complex.
    pub fn check_collapse(&self, step: &CollapseStep) -> Result<()> {
        let CollapseStep { tau, sigma } = *step;
        let name = |m| self.universe.format_monomial(m);
        if !tau.divides(sigma) || sigma.degree() != tau.degree() + 1 {
            return Err(Error::InvalidCollapse(format!(
                "{} is not a facet-codimension-one subface of {}",
                name(tau),
                name(sigma)
            )));
        }
        if !self.contains(sigma) || !self.contains(tau) {
            return Err(Error::InvalidCollapse(format!(
                "pair ({}, {}) is not in the complex",
                name(tau),
                name(sigma)
            )));
        }
        if !self.is_maximal(sigma) {
            return Err(Error::InvalidCollapse(format!("{} is not maximal", name(sigma))));
        }
        let a = step.apex();
        let other = (0..self.universe.len())
            .map(SquareFreeMonomial::var)
            .filter(|&v| v != a && !v.divides(tau))
            .find(|&v| self.contains(tau.lcm(v)));
        if let Some(v) = other {
            return Err(Error::InvalidCollapse(format!(
                "{} is also contained in {}",
                name(tau),
                name(tau.lcm(v))
            )));
        }
        Ok(())
    }

    /// Apply an elementary collapse in place.
    pub fn collapse(&mut self, step: &CollapseStep) -> Result<()> {
        self.check_collapse(step)?;
        self.faces.remove(&step.sigma);
        self.faces.remove(&step.tau);
        Ok(())
    }

    /// `Δ \ {sigma, tau}` for a valid elementary collapse.
    pub fn apply_collapse(&self, step: &CollapseStep) -> Result<Self> {
        let mut out = self.clone();
        out.collapse(step)?;
        Ok(out)
    }

    /// The first pair `(tau, sigma)` that can be collapsed, in graded order
    /// of `sigma`, if any.
    pub fn free_pairs(&self) -> Vec<CollapseStep> {
        let mut out = Vec::new();
        for sigma in self.facets() {
            for v in sigma.iter() {
                let step = CollapseStep {
                    tau: sigma.strip(SquareFreeMonomial::var(v)),
                    sigma,
                };
                if self.check_collapse(&step).is_ok() {
                    out.push(step);
                }
            }
        }
        out
    }

    /// Render one face per line in graded order, `()` for the empty face.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        for f in self.sorted_faces() {
            s.push_str(&self.universe.format_monomial(f));
            s.push('\n');
        }
        s
    }

    /// Inverse of [`SimplicialComplex::dump`].
    pub fn parse_dump(universe: Universe, text: &str) -> Result<Self> {
        let mut faces = Vec::new();
        for (k, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let f = universe
                .parse_monomial(line)
                .map_err(|e| Error::parse(k + 1, e.to_string()))?;
            faces.push(f);
        }
        Self::from_faces(universe, faces)
    }
}

/// Apply `steps` to `from` and compare with `to`.
pub fn verify_collapse_sequence(
    from: &SimplicialComplex,
    steps: &[CollapseStep],
    to: &SimplicialComplex,
) -> CollapseCheck {
    let mut current = from.clone();
    for (i, step) in steps.iter().enumerate() {
        if let Err(e) = current.collapse(step) {
            return CollapseCheck {
                valid: false,
                failed_step: Some(i),
                reason: Some(e.to_string()),
            };
        }
    }
    if &current != to {
        return CollapseCheck {
            valid: false,
            failed_step: None,
            reason: Some(format!(
                "final complex has {} faces, target has {}",
                current.len(),
                to.len()
            )),
        };
    }
    CollapseCheck::ok()
}

/// `join({1, a1, b1}, ..., {1, ar, br})`: the boundary of the cross-polytope
/// when all variables are distinct, a simplex boundary or a hybrid when the
/// `b`s repeat.
pub fn cross_polytope_boundary(universe: &Universe, pairs: &[(usize, usize)]) -> Result<SimplicialComplex> {
    let n = universe.len();
    for (i, &(a, b)) in pairs.iter().enumerate() {
        if a >= n || b >= n {
            return Err(Error::VariableOutOfRange(a.max(b)));
        }
        if pairs[..i].iter().any(|&(aj, _)| aj == a) {
            return Err(Error::Precondition(format!(
                "variable {} repeats among the apexes",
                universe.name(a)
            )));
        }
        if pairs[..=i].iter().any(|&(aj, _)| aj == b) {
            return Err(Error::Precondition(format!(
                "pole {} coincides with an earlier apex",
                universe.name(b)
            )));
        }
    }
    let parts = pairs
        .iter()
        .map(|&(a, b)| {
            SimplicialComplex::from_faces(
                universe.clone(),
                [
                    SquareFreeMonomial::ONE,
                    SquareFreeMonomial::var(a),
                    SquareFreeMonomial::var(b),
                ],
            )
        })
        .collect::<Result<Vec<_>>>()?;
    let refs: Vec<&SimplicialComplex> = parts.iter().collect();
    SimplicialComplex::join(universe, &refs)
}
