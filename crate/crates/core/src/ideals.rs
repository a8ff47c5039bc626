//! Square-free monomials and monomial ideals containing every square.
//!
//! A monomial ideal `I` over variables `x1..xn` that contains all squares
//! `xi^2` is determined by its minimal square-free generators. Only those are
//! stored; the squares are implicit. The complement of `I` among square-free
//! monomials is the simplicial complex `R(I)`.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Hard cap on the number of variables: a monomial is one machine word.
pub const MAX_VARIABLES: usize = 64;

/// An ordered list of distinct variable names.
///
/// The order is significant: it fixes the orientation of simplices and hence
/// the signs of boundary maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VariableUniverse {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

pub type Universe = Arc<VariableUniverse>;

impl VariableUniverse {
    pub fn new<I, S>(names: I) -> Result<Universe>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.len() > MAX_VARIABLES {
            return Err(Error::TooManyVariables(names.len()));
        }
        let mut index = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() || name.chars().any(char::is_whitespace) || name == "()" {
                return Err(Error::Precondition(format!("invalid variable name {name:?}")));
            }
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::DuplicateVariable(name.clone()));
            }
        }
        Ok(Arc::new(VariableUniverse { names, index }))
    }

    /// The universe `x1, ..., xn`.
    pub fn indexed(n: usize) -> Result<Universe> {
        Self::new((1..=n).map(|i| format!("x{i}")))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn var(&self, name: &str) -> Result<SquareFreeMonomial> {
        self.index_of(name).map(SquareFreeMonomial::var)
    }

    /// The product of all variables.
    pub fn top(&self) -> SquareFreeMonomial {
        SquareFreeMonomial::from_bits(low_mask(self.len()))
    }

    pub fn check(&self, m: SquareFreeMonomial) -> Result<()> {
        let extra = m.bits() & !low_mask(self.len());
        if extra == 0 {
            Ok(())
        } else {
            Err(Error::VariableOutOfRange(extra.trailing_zeros() as usize))
        }
    }

    /// Parse a space-separated list of variable names; `()` or the empty
    /// string is the monomial 1.
    pub fn parse_monomial(&self, text: &str) -> Result<SquareFreeMonomial> {
        let text = text.trim();
        if text == "()" {
            return Ok(SquareFreeMonomial::ONE);
        }
        let mut m = SquareFreeMonomial::ONE;
        for name in text.split_whitespace() {
            m = m.lcm(self.var(name)?);
        }
        Ok(m)
    }

    /// Space-separated variable names, `()` for the monomial 1.
    pub fn format_monomial(&self, m: SquareFreeMonomial) -> String {
        if m.is_one() {
            return "()".to_string();
        }
        m.iter().map(|i| self.names[i].as_str()).collect::<Vec<_>>().join(" ")
    }

    /// The sub-universe obtained by deleting the variables in `removed`,
    /// together with a map sending monomials of `self` avoiding `removed` to
    /// monomials of the sub-universe.
    pub fn without(&self, removed: SquareFreeMonomial) -> Result<(Universe, VariableMap)> {
        let mut target = vec![None; self.len()];
        let mut names = Vec::new();
        for (i, name) in self.names.iter().enumerate() {
            if !removed.contains_var(i) {
                target[i] = Some(names.len());
                names.push(name.clone());
            }
        }
        Ok((VariableUniverse::new(names)?, VariableMap { target }))
    }
}

/// A partial map between variable index sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VariableMap {
    target: Vec<Option<usize>>,
}

impl VariableMap {
    /// A bijection of `0..n`, given as `perm[i] = image of i`.
    pub fn permutation(perm: &[usize]) -> Result<Self> {
        let mut seen = vec![false; perm.len()];
        for &p in perm {
            if p >= perm.len() || std::mem::replace(&mut seen[p], true) {
                return Err(Error::Precondition("not a permutation".into()));
            }
        }
        Ok(VariableMap {
            target: perm.iter().map(|&p| Some(p)).collect(),
        })
    }

    /// Image of a monomial; `None` if it uses an unmapped variable.
    pub fn apply(&self, m: SquareFreeMonomial) -> Option<SquareFreeMonomial> {
        let mut out = 0u64;
        for i in m.iter() {
            out |= 1u64 << (*self.target.get(i)?)?;
        }
        Some(SquareFreeMonomial(out))
    }
}

/// A square-free monomial, i.e. a finite set of variable indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SquareFreeMonomial(u64);

impl SquareFreeMonomial {
    pub const ONE: SquareFreeMonomial = SquareFreeMonomial(0);

    pub fn from_bits(bits: u64) -> Self {
        SquareFreeMonomial(bits)
    }

    pub fn var(i: usize) -> Self {
        assert!(i < MAX_VARIABLES, "variable index {i} out of range");
        SquareFreeMonomial(1u64 << i)
    }

    pub fn from_vars<I: IntoIterator<Item = usize>>(vars: I) -> Self {
        vars.into_iter()
            .fold(Self::ONE, |m, i| m.lcm(Self::var(i)))
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_one(self) -> bool {
        self.0 == 0
    }

    pub fn divides(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn contains_var(self, i: usize) -> bool {
        i < MAX_VARIABLES && self.0 >> i & 1 == 1
    }

    pub fn lcm(self, other: Self) -> Self {
        SquareFreeMonomial(self.0 | other.0)
    }

    pub fn gcd(self, other: Self) -> Self {
        SquareFreeMonomial(self.0 & other.0)
    }

    /// `self / gcd(self, other)`.
    pub fn strip(self, other: Self) -> Self {
        SquareFreeMonomial(self.0 & !other.0)
    }

    pub fn is_coprime(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    /// Variable indices in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }

    /// Order by degree, then lexicographically by sorted variable indices.
    pub fn graded_cmp(self, other: Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let diff = self.0 ^ other.0;
            if diff == 0 {
                Ordering::Equal
            } else if self.0 & diff & diff.wrapping_neg() != 0 {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        })
    }
}

pub fn divides(m: SquareFreeMonomial, m2: SquareFreeMonomial) -> bool {
    m.divides(m2)
}

/// Least common multiple of a collection; the empty collection gives 1.
pub fn lcm_set<I: IntoIterator<Item = SquareFreeMonomial>>(ms: I) -> SquareFreeMonomial {
    ms.into_iter().fold(SquareFreeMonomial::ONE, SquareFreeMonomial::lcm)
}

/// Reduce to the divisibility-minimal elements, sorted in graded order.
pub fn minimalize(mut gens: Vec<SquareFreeMonomial>) -> Vec<SquareFreeMonomial> {
    gens.sort_by(|a, b| a.graded_cmp(*b));
    gens.dedup();
    let mut out: Vec<SquareFreeMonomial> = Vec::with_capacity(gens.len());
    for g in gens {
        // Sorted by degree, so only earlier entries can divide g.
        if !out.iter().any(|h| h.divides(g)) {
            out.push(g);
        }
    }
    out
}

/// A monomial ideal of `Z[X]` containing `x1^2, ..., xn^2`, stored through
/// its minimal square-free generators.
#[derive(Debug, Clone)]
pub struct MonomialIdeal {
    universe: Universe,
    generators: Vec<SquareFreeMonomial>,
}

impl PartialEq for MonomialIdeal {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.universe, &other.universe) || self.universe == other.universe)
            && self.generators == other.generators
    }
}

impl Eq for MonomialIdeal {}

impl MonomialIdeal {
    pub fn new<I>(universe: Universe, generators: I) -> Result<Self>
    where
        I: IntoIterator<Item = SquareFreeMonomial>,
    {
        let generators: Vec<_> = generators.into_iter().collect();
        for &g in &generators {
            universe.check(g)?;
        }
        Ok(MonomialIdeal {
            universe,
            generators: minimalize(generators),
        })
    }

    /// Build from generator strings such as `"x1 x2"`.
    pub fn parse<S: AsRef<str>>(universe: Universe, generators: &[S]) -> Result<Self> {
        let gens = generators
            .iter()
            .map(|g| universe.parse_monomial(g.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(universe, gens)
    }

    /// Only the squares: `R(I)` is the full simplex on the universe.
    pub fn zero(universe: Universe) -> Self {
        MonomialIdeal {
            universe,
            generators: Vec::new(),
        }
    }

    /// The whole ring: `R(I)` is the empty complex.
    pub fn unit(universe: Universe) -> Self {
        MonomialIdeal {
            universe,
            generators: vec![SquareFreeMonomial::ONE],
        }
    }

    /// The ideal generated by every variable: `R(I) = {1}`.
    pub fn maximal(universe: Universe) -> Self {
        let gens = (0..universe.len()).map(SquareFreeMonomial::var).collect();
        MonomialIdeal {
            universe,
            generators: gens,
        }
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn nvars(&self) -> usize {
        self.universe.len()
    }

    /// The minimal square-free generators, in graded order.
    pub fn generators(&self) -> &[SquareFreeMonomial] {
        &self.generators
    }

    pub fn is_unit(&self) -> bool {
        self.generators.first() == Some(&SquareFreeMonomial::ONE)
    }

    pub fn same_universe(&self, other: &MonomialIdeal) -> bool {
        Arc::ptr_eq(&self.universe, &other.universe) || self.universe == other.universe
    }

    /// Membership of a square-free monomial. Squares never divide a
    /// square-free monomial, so only the stored generators matter.
    pub fn contains(&self, m: SquareFreeMonomial) -> Result<bool> {
        self.universe.check(m)?;
        Ok(self.contains_unchecked(m))
    }

    pub(crate) fn contains_unchecked(&self, m: SquareFreeMonomial) -> bool {
        self.generators.iter().any(|g| g.divides(m))
    }

    /// Variables lying in the ideal, i.e. those that are not vertices.
    pub fn dead_variables(&self) -> SquareFreeMonomial {
        if self.is_unit() {
            return self.universe.top();
        }
        lcm_set(self.generators.iter().copied().filter(|g| g.degree() == 1))
    }

    /// Variables not in the ideal: the vertices of `R(I)`.
    pub fn live_variables(&self) -> SquareFreeMonomial {
        self.universe.top().strip(self.dead_variables())
    }

    /// `(I : x)`.
    pub fn colon(&self, x: SquareFreeMonomial) -> Result<MonomialIdeal> {
        self.universe.check(x)?;
        let mut gens: Vec<_> = self.generators.iter().map(|g| g.strip(x)).collect();
        // x_v^2 : x = x_v for every v dividing x.
        gens.extend(x.iter().map(SquareFreeMonomial::var));
        Ok(MonomialIdeal {
            universe: self.universe.clone(),
            generators: minimalize(gens),
        })
    }

    /// `(I, x)`.
    pub fn add(&self, x: SquareFreeMonomial) -> Result<MonomialIdeal> {
        self.universe.check(x)?;
        let mut gens = self.generators.clone();
        gens.push(x);
        Ok(MonomialIdeal {
            universe: self.universe.clone(),
            generators: minimalize(gens),
        })
    }

    /// Drop every variable that is itself a generator. The complex `R(I)` is
    /// unchanged up to renaming of the surviving variables.
    pub fn canonicalize(&self) -> Result<(MonomialIdeal, Universe)> {
        if self.is_unit() {
            return Ok((self.clone(), self.universe.clone()));
        }
        let dead = self.dead_variables();
        let (universe, map) = self.universe.without(dead)?;
        let generators = self
            .generators
            .iter()
            .filter(|g| g.degree() > 1)
            .map(|&g| map.apply(g).expect("minimal generators avoid dead variables"))
            .collect();
        let ideal = MonomialIdeal {
            universe: universe.clone(),
            generators: minimalize(generators),
        };
        Ok((ideal, universe))
    }

    /// Image under a relabelling of the variables within the same universe.
    pub fn permute(&self, map: &VariableMap) -> Result<MonomialIdeal> {
        let gens = self
            .generators
            .iter()
            .map(|&g| {
                map.apply(g)
                    .ok_or_else(|| Error::Precondition("relabelling is not total".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        MonomialIdeal::new(self.universe.clone(), gens)
    }

    /// Generators rendered as strings, in graded order.
    pub fn generator_strings(&self) -> Vec<String> {
        self.generators
            .iter()
            .map(|&g| self.universe.format_monomial(g))
            .collect()
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.generator_strings().join(", "))
    }
}

pub(crate) fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(n: usize) -> Universe {
        VariableUniverse::indexed(n).unwrap()
    }

    fn m(u: &Universe, s: &str) -> SquareFreeMonomial {
        u.parse_monomial(s).unwrap()
    }

    fn ideal(u: &Universe, gens: &[&str]) -> MonomialIdeal {
        MonomialIdeal::parse(u.clone(), gens).unwrap()
    }

    #[test]
    fn divides_examples() {
        let u = u(3);
        assert!(divides(m(&u, "x1"), m(&u, "x1 x2")));
        assert!(!divides(m(&u, "x1 x3"), m(&u, "x1 x2")));
        for s in ["()", "x1", "x2 x3", "x1 x2 x3"] {
            assert!(divides(SquareFreeMonomial::ONE, m(&u, s)));
        }
    }

    #[test]
    fn lcm_examples() {
        let u = u(3);
        assert_eq!(lcm_set([m(&u, "x1 x2"), m(&u, "x2 x3")]), m(&u, "x1 x2 x3"));
        assert_eq!(lcm_set([]), SquareFreeMonomial::ONE);
        assert_eq!(lcm_set([m(&u, "x1 x2 x3")]), m(&u, "x1 x2 x3"));
    }

    #[test]
    fn contains_examples() {
        let u = u(3);
        let i = ideal(&u, &["x1 x2"]);
        assert!(i.contains(m(&u, "x1 x2 x3")).unwrap());
        assert!(!i.contains(m(&u, "x1 x3")).unwrap());
        assert!(MonomialIdeal::unit(u.clone()).contains(SquareFreeMonomial::ONE).unwrap());
        assert_eq!(
            i.contains(SquareFreeMonomial::var(5)),
            Err(Error::VariableOutOfRange(5))
        );
    }

    #[test]
    fn colon_examples() {
        let u3 = u(3);
        let i = ideal(&u3, &["x1 x2 x3"]);
        assert_eq!(i.colon(m(&u3, "x3")).unwrap(), ideal(&u3, &["x1 x2", "x3"]));
        assert_eq!(i.colon(SquareFreeMonomial::ONE).unwrap(), i);

        let u4 = u(4);
        let j = ideal(&u4, &["x1 x2", "x3 x4"]);
        assert_eq!(
            j.colon(m(&u4, "x3")).unwrap(),
            ideal(&u4, &["x1 x2", "x4", "x3"])
        );
    }

    #[test]
    fn add_examples() {
        let u3 = u(3);
        let i = ideal(&u3, &["x1 x2"]);
        assert_eq!(i.add(m(&u3, "x1")).unwrap(), ideal(&u3, &["x1"]));
        assert_eq!(i.add(m(&u3, "x3")).unwrap(), ideal(&u3, &["x1 x2", "x3"]));
        assert_eq!(i.add(m(&u3, "x1 x2 x3")).unwrap(), i);

        let xyuv = VariableUniverse::new(["x", "y", "u", "v"]).unwrap();
        let i = ideal(&xyuv, &["x y", "y u"]);
        assert_eq!(
            i.add(m(&xyuv, "x v")).unwrap(),
            ideal(&xyuv, &["x y", "y u", "x v"])
        );
    }

    #[test]
    fn canonicalize_examples() {
        let u3 = u(3);
        let (c, cu) = ideal(&u3, &["x1", "x2 x3"]).canonicalize().unwrap();
        assert_eq!(cu.names(), ["x2", "x3"]);
        assert_eq!(c.generator_strings(), ["x2 x3"]);

        let i = ideal(&u3, &["x1 x2"]);
        assert_eq!(i.canonicalize().unwrap().0, i);

        let (c, cu) = MonomialIdeal::maximal(u3).canonicalize().unwrap();
        assert!(cu.is_empty());
        assert!(c.generators().is_empty());
    }

    #[test]
    fn graded_order_is_degree_then_lex() {
        let u = u(4);
        let mut v = [m(&u, "x2 x3"), m(&u, "x4"), m(&u, "x1 x3"), m(&u, "()"), m(&u, "x1 x4")];
        v.sort_by(|a, b| a.graded_cmp(*b));
        let names: Vec<_> = v.iter().map(|&x| u.format_monomial(x)).collect();
        assert_eq!(names, ["()", "x4", "x1 x3", "x1 x4", "x2 x3"]);
    }

    #[test]
    fn universe_rejects_bad_names() {
        assert!(matches!(
            VariableUniverse::new(["a", "a"]),
            Err(Error::DuplicateVariable(_))
        ));
        assert!(VariableUniverse::new(["a b"]).is_err());
        assert!(matches!(
            VariableUniverse::indexed(65),
            Err(Error::TooManyVariables(65))
        ));
    }
}
