//! Reduced integer homology of the augmented chain complex.
//!
//! A face of degree `d` is a simplex of dimension `d - 1`; the empty face
//! spans the chains of dimension `-1`. Simplices are oriented by the order of
//! the variable universe.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::complexes::SimplicialComplex;
use crate::error::{Error, Result};
use crate::ideals::SquareFreeMonomial;
use crate::snf::{smith_summary, SparseColumn};

/// An integer combination of faces of one common degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chain {
    face_degree: usize,
    coefficients: BTreeMap<SquareFreeMonomial, i64>,
}

impl Chain {
    pub fn zero(face_degree: usize) -> Self {
        Chain {
            face_degree,
            coefficients: BTreeMap::new(),
        }
    }

    pub fn from_terms<I>(face_degree: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (SquareFreeMonomial, i64)>,
    {
        let mut c = Chain::zero(face_degree);
        for (f, k) in terms {
            c.add(f, k)?;
        }
        Ok(c)
    }

    /// Add `k * face`.
    pub fn add(&mut self, face: SquareFreeMonomial, k: i64) -> Result<()> {
        if face.degree() != self.face_degree {
            return Err(Error::Precondition(format!(
                "face of degree {} in a chain of degree {}",
                face.degree(),
                self.face_degree
            )));
        }
        if k == 0 {
            return Ok(());
        }
        let entry = self.coefficients.entry(face).or_insert(0);
        *entry = entry
            .checked_add(k)
            .ok_or_else(|| Error::Internal("chain coefficient overflow".into()))?;
        if *entry == 0 {
            self.coefficients.remove(&face);
        }
        Ok(())
    }

    /// Degree of the faces; the simplicial dimension is one less.
    pub fn face_degree(&self) -> usize {
        self.face_degree
    }

    pub fn dimension(&self) -> i64 {
        self.face_degree as i64 - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn coefficient(&self, face: SquareFreeMonomial) -> i64 {
        self.coefficients.get(&face).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (SquareFreeMonomial, i64)> + '_ {
        self.coefficients.iter().map(|(&f, &k)| (f, k))
    }

    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }
}

/// `(-1)^i` for the `i`-th variable of `face` in universe order.
fn faces_of_boundary(face: SquareFreeMonomial) -> impl Iterator<Item = (SquareFreeMonomial, i64)> {
    face.iter().enumerate().map(move |(i, v)| {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        (face.strip(SquareFreeMonomial::var(v)), sign)
    })
}

/// The simplicial boundary, with `∂(vertex) = ()`.
pub fn boundary(chain: &Chain, complex: &SimplicialComplex) -> Result<Chain> {
    if chain.face_degree == 0 {
        if let Some((f, _)) = chain.terms().find(|(f, _)| !complex.contains(*f)) {
            return Err(Error::Precondition(format!(
                "face {} is not in the complex",
                complex.universe().format_monomial(f)
            )));
        }
        return Ok(Chain::zero(0));
    }
    let mut out = Chain::zero(chain.face_degree - 1);
    for (face, k) in chain.terms() {
        if !complex.contains(face) {
            return Err(Error::Precondition(format!(
                "face {} is not in the complex",
                complex.universe().format_monomial(face)
            )));
        }
        for (g, sign) in faces_of_boundary(face) {
            let term = k
                .checked_mul(sign)
                .ok_or_else(|| Error::Internal("chain coefficient overflow".into()))?;
            out.add(g, term)?;
        }
    }
    Ok(out)
}

pub fn is_cycle(z: &Chain, complex: &SimplicialComplex) -> Result<bool> {
    Ok(boundary(z, complex)?.is_zero())
}

/// One nonzero reduced homology group `Z^rank ⊕ ⊕ Z/t`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomologyGroup {
    pub degree: i64,
    pub rank: usize,
    pub torsion: Vec<u64>,
}

/// The nonzero reduced homology groups, by increasing degree.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
#[serde(transparent)]
pub struct HomologyProfile {
    groups: Vec<HomologyGroup>,
}

/// Total rank and top degree of a homology profile.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HomologySize {
    /// Sum of free ranks.
    pub h_free: usize,
    /// Free ranks plus the number of torsion summands.
    pub h: usize,
    /// Highest degree with a nonzero group; `None` stands for `-∞`.
    pub hd: Option<i64>,
}

impl HomologyProfile {
    pub fn from_groups(mut groups: Vec<HomologyGroup>) -> Self {
        groups.retain(|g| g.rank > 0 || !g.torsion.is_empty());
        groups.sort_by_key(|g| g.degree);
        HomologyProfile { groups }
    }

    /// The profile of a sphere of dimension `k` (`k = -1` allowed).
    pub fn sphere(k: i64) -> Self {
        Self::from_groups(vec![HomologyGroup {
            degree: k,
            rank: 1,
            torsion: Vec::new(),
        }])
    }

    pub fn groups(&self) -> &[HomologyGroup] {
        &self.groups
    }

    pub fn rank(&self, k: i64) -> usize {
        self.groups.iter().find(|g| g.degree == k).map_or(0, |g| g.rank)
    }

    pub fn torsion(&self, k: i64) -> &[u64] {
        self.groups
            .iter()
            .find(|g| g.degree == k)
            .map_or(&[], |g| g.torsion.as_slice())
    }

    pub fn is_zero(&self) -> bool {
        self.groups.is_empty()
    }

    pub fn has_torsion(&self) -> bool {
        self.groups.iter().any(|g| !g.torsion.is_empty())
    }

    /// Whether this is the homology of a `k`-sphere: `Z` in degree `k` only.
    pub fn is_sphere(&self, k: i64) -> bool {
        *self == Self::sphere(k)
    }

    /// `Σ (-1)^k rank_k`, which equals the reduced Euler characteristic.
    pub fn euler_characteristic(&self) -> i64 {
        self.groups
            .iter()
            .map(|g| if g.degree.rem_euclid(2) == 0 { g.rank as i64 } else { -(g.rank as i64) })
            .sum()
    }

    pub fn size(&self) -> HomologySize {
        HomologySize {
            h_free: self.groups.iter().map(|g| g.rank).sum(),
            h: self.groups.iter().map(|g| g.rank + g.torsion.len()).sum(),
            hd: self.groups.last().map(|g| g.degree),
        }
    }
}

/// `h` and `hd` of a profile.
pub fn h_and_hd(profile: &HomologyProfile) -> HomologySize {
    profile.size()
}

/// Faces of each degree together with their positions.
struct Levels {
    faces: Vec<Vec<SquareFreeMonomial>>,
    index: Vec<HashMap<SquareFreeMonomial, u32>>,
}

impl Levels {
    fn new(complex: &SimplicialComplex) -> Self {
        let faces = complex.faces_by_degree();
        let index = faces
            .iter()
            .map(|level| level.iter().enumerate().map(|(i, &f)| (f, i as u32)).collect())
            .collect();
        Levels { faces, index }
    }

    fn count(&self, d: usize) -> usize {
        self.faces.get(d).map_or(0, Vec::len)
    }

    /// Columns of the boundary map from degree `d` to degree `d - 1`.
    fn boundary_columns(&self, d: usize) -> Vec<SparseColumn> {
        if d == 0 || d >= self.faces.len() {
            return Vec::new();
        }
        self.faces[d]
            .iter()
            .map(|&f| self.chain_column(d - 1, faces_of_boundary(f)))
            .collect()
    }

    fn chain_column<I>(&self, d: usize, terms: I) -> SparseColumn
    where
        I: IntoIterator<Item = (SquareFreeMonomial, i64)>,
    {
        let mut col: SparseColumn = terms
            .into_iter()
            .map(|(g, k)| (self.index[d][&g], k))
            .collect();
        col.sort_unstable();
        col
    }
}

fn torsion_u64(t: Vec<BigInt>) -> Result<Vec<u64>> {
    t.into_iter()
        .map(|x| {
            x.to_u64()
                .ok_or_else(|| Error::Internal("torsion coefficient exceeds u64".into()))
        })
        .collect()
}

/// Exact reduced homology of the augmented chain complex.
pub fn reduced_homology(complex: &SimplicialComplex) -> Result<HomologyProfile> {
    if complex.is_void() {
        return Ok(HomologyProfile::default());
    }
    let levels = Levels::new(complex);
    let top = levels.faces.len();
    // snf[d] describes the map from degree d to degree d - 1.
    let mut snf = Vec::with_capacity(top + 1);
    for d in 0..=top {
        snf.push(smith_summary(levels.count(d.saturating_sub(1)), levels.boundary_columns(d)));
    }
    let mut groups = Vec::new();
    for d in 0..top {
        let rank = levels.count(d) - snf[d].rank - snf[d + 1].rank;
        groups.push(HomologyGroup {
            degree: d as i64 - 1,
            rank,
            torsion: torsion_u64(snf[d + 1].torsion.clone())?,
        });
    }
    Ok(HomologyProfile::from_groups(groups))
}

/// Whether `z` represents a generator of `H̃_k(Δ) ≅ Z`, the only nonzero
/// reduced homology group.
///
/// With `H̃_k` free, the boundaries `B_k` form a direct summand of the chains
/// and `Z_k` has rank one more than `B_k`. So `[z]` generates exactly when
/// the lattice spanned by `B_k` and `z` has rank one more and is saturated,
/// i.e. when `[∂_{k+1} | z]` has all invariant factors equal to one.
pub fn generates_top_class(z: &Chain, complex: &SimplicialComplex, k: i64) -> Result<bool> {
    let profile = reduced_homology(complex)?;
    if !profile.is_sphere(k) {
        return Err(Error::Precondition(format!(
            "reduced homology is not Z concentrated in degree {k}"
        )));
    }
    if z.dimension() != k {
        return Err(Error::Precondition(format!(
            "chain has dimension {}, expected {k}",
            z.dimension()
        )));
    }
    if !is_cycle(z, complex)? {
        return Ok(false);
    }
    let levels = Levels::new(complex);
    let d = z.face_degree();
    let boundaries = levels.boundary_columns(d + 1);
    let base = smith_summary(levels.count(d), boundaries.clone());
    let mut extended = boundaries;
    extended.push(levels.chain_column(d, z.terms()));
    let with_z = smith_summary(levels.count(d), extended);
    Ok(with_z.rank == base.rank + 1 && with_z.torsion.is_empty())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::DEFAULT_MAX_FACES;
    use crate::ideals::{MonomialIdeal, Universe, VariableUniverse};

    fn u(n: usize) -> Universe {
        VariableUniverse::indexed(n).unwrap()
    }

    fn realize(u: &Universe, gens: &[&str]) -> SimplicialComplex {
        let i = MonomialIdeal::parse(u.clone(), gens).unwrap();
        SimplicialComplex::realize(&i, DEFAULT_MAX_FACES).unwrap()
    }

    fn m(u: &Universe, s: &str) -> SquareFreeMonomial {
        u.parse_monomial(s).unwrap()
    }

    #[test]
    fn boundary_signs() {
        let u3 = u(3);
        let simplex = realize(&u3, &[]);
        let edge = Chain::from_terms(2, [(m(&u3, "x1 x2"), 1)]).unwrap();
        let b = boundary(&edge, &simplex).unwrap();
        assert_eq!(b.coefficient(m(&u3, "x2")), 1);
        assert_eq!(b.coefficient(m(&u3, "x1")), -1);
        let vertex = Chain::from_terms(1, [(m(&u3, "x1"), 1)]).unwrap();
        let b = boundary(&vertex, &simplex).unwrap();
        assert_eq!(b.coefficient(SquareFreeMonomial::ONE), 1);
        let tri = Chain::from_terms(3, [(m(&u3, "x1 x2 x3"), 1)]).unwrap();
        let bb = boundary(&boundary(&tri, &simplex).unwrap(), &simplex).unwrap();
        assert!(bb.is_zero());
    }

    #[test]
    fn boundary_rejects_foreign_faces() {
        let u3 = u(3);
        let d = realize(&u3, &["x1 x2"]);
        let edge = Chain::from_terms(2, [(m(&u3, "x1 x2"), 1)]).unwrap();
        assert!(boundary(&edge, &d).is_err());
    }

    #[test]
    fn homology_of_standard_complexes() {
        let u4 = u(4);
        let square = realize(&u4, &["x1 x2", "x3 x4"]);
        assert_eq!(reduced_homology(&square).unwrap(), HomologyProfile::sphere(1));
        let simplex = realize(&u(3), &[]);
        assert!(reduced_homology(&simplex).unwrap().is_zero());
        let void = SimplicialComplex::void(u(2));
        assert!(reduced_homology(&void).unwrap().is_zero());
        let point = SimplicialComplex::point_sphere(u(2));
        assert_eq!(reduced_homology(&point).unwrap(), HomologyProfile::sphere(-1));
    }

    #[test]
    fn hexagon_independence_complex_is_a_wedge() {
        let u6 = u(6);
        let c6 = realize(&u6, &["x1 x2", "x2 x3", "x3 x4", "x4 x5", "x5 x6", "x1 x6"]);
        let p = reduced_homology(&c6).unwrap();
        assert_eq!(p.rank(1), 2);
        assert_eq!(p.groups().len(), 1);
        let s = h_and_hd(&p);
        assert_eq!((s.h, s.hd), (2, Some(1)));
    }

    #[test]
    fn projective_plane_has_torsion() {
        // Six-vertex triangulation of the real projective plane.
        let u6 = u(6);
        let facets = [
            "x1 x2 x3", "x1 x3 x4", "x1 x4 x5", "x1 x5 x6", "x1 x2 x6", "x2 x3 x5", "x3 x4 x6",
            "x2 x4 x5", "x2 x4 x6", "x3 x5 x6",
        ];
        let rp2 = SimplicialComplex::from_facets(u6.clone(), facets.iter().map(|f| m(&u6, f))).unwrap();
        let p = reduced_homology(&rp2).unwrap();
        assert_eq!(p.torsion(1), &[2]);
        assert_eq!(p.rank(1), 0);
        assert_eq!(p.rank(2), 0);
        let s = p.size();
        assert_eq!((s.h_free, s.h, s.hd), (0, 1, Some(1)));
    }

    #[test]
    fn euler_poincare_on_square() {
        let u4 = u(4);
        let square = realize(&u4, &["x1 x2", "x3 x4"]);
        let p = reduced_homology(&square).unwrap();
        assert_eq!(p.euler_characteristic(), square.reduced_euler());
    }

    #[test]
    fn zero_sphere_generators() {
        let u2 = u(2);
        let s0 = realize(&u2, &["x1 x2"]);
        let z = Chain::from_terms(1, [(m(&u2, "x1"), 1), (m(&u2, "x2"), -1)]).unwrap();
        assert!(is_cycle(&z, &s0).unwrap());
        assert!(generates_top_class(&z, &s0, 0).unwrap());
        let z2 = Chain::from_terms(1, [(m(&u2, "x1"), 2), (m(&u2, "x2"), -2)]).unwrap();
        assert!(!generates_top_class(&z2, &s0, 0).unwrap());
    }

    #[test]
    fn square_cycle_generates() {
        let u4 = u(4);
        let square = realize(&u4, &["x1 x2", "x3 x4"]);
        let z = Chain::from_terms(
            2,
            [
                (m(&u4, "x1 x3"), 1),
                (m(&u4, "x1 x4"), -1),
                (m(&u4, "x2 x3"), -1),
                (m(&u4, "x2 x4"), 1),
            ],
        )
        .unwrap();
        assert!(is_cycle(&z, &square).unwrap());
        assert!(generates_top_class(&z, &square, 1).unwrap());
        let edge = Chain::from_terms(2, [(m(&u4, "x1 x3"), 1)]).unwrap();
        assert!(!is_cycle(&edge, &square).unwrap());
        assert!(generates_top_class(&z, &square, 0).is_err());
    }

    #[test]
    fn minus_one_sphere_generator() {
        let point = SimplicialComplex::point_sphere(u(1));
        let z = Chain::from_terms(0, [(SquareFreeMonomial::ONE, 1)]).unwrap();
        assert!(generates_top_class(&z, &point, -1).unwrap());
    }
}
