//! Multigraded polynomials with integer coefficients, and small univariate
//! polynomials used for face counts.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::ideals::SquareFreeMonomial;

/// Exponent vector of a (not necessarily square-free) monomial.
pub type Exponents = Vec<u32>;

/// Exponent vector of a square-free monomial in `n` variables.
pub fn square_free_exponents(m: SquareFreeMonomial, n: usize) -> Exponents {
    (0..n).map(|i| u32::from(m.contains_var(i))).collect()
}

/// `lcm` of two exponent vectors: componentwise maximum.
pub fn lcm_exponents(a: &[u32], b: &[u32]) -> Exponents {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

pub fn exponents_divide(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// A polynomial in `Z[x1, ..., xn]` stored as a map from exponent vectors to
/// nonzero coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultigradedPolynomial {
    nvars: usize,
    terms: BTreeMap<Exponents, BigInt>,
}

impl MultigradedPolynomial {
    pub fn zero(nvars: usize) -> Self {
        MultigradedPolynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::term(vec![0; nvars], BigInt::one())
    }

    pub fn term(exponents: Exponents, coefficient: BigInt) -> Self {
        let mut p = Self::zero(exponents.len());
        p.add_term(exponents, coefficient);
        p
    }

    /// `1 - m`.
    pub fn one_minus(exponents: Exponents) -> Self {
        let mut p = Self::one(exponents.len());
        p.add_term(exponents, -BigInt::one());
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &BigInt)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, exponents: Exponents, coefficient: BigInt) {
        assert_eq!(exponents.len(), self.nvars, "exponent vector length");
        if coefficient.is_zero() {
            return;
        }
        let entry = self.terms.entry(exponents);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coefficient);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coefficient;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn coefficient(&self, exponents: &[u32]) -> BigInt {
        self.terms.get(exponents).cloned().unwrap_or_default()
    }

    /// The bilinear product with `m * m' = lcm(m, m')` on monomials.
    pub fn star(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = Self::zero(self.nvars);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(lcm_exponents(a, b), ca * cb);
            }
        }
        out
    }

    /// Substitute `t` for every variable.
    pub fn diagonal(&self) -> UnivariatePolynomial {
        let mut coeffs: Vec<BigInt> = Vec::new();
        for (e, c) in &self.terms {
            let d = e.iter().map(|&x| x as usize).sum::<usize>();
            if coeffs.len() <= d {
                coeffs.resize(d + 1, BigInt::zero());
            }
            coeffs[d] += c;
        }
        UnivariatePolynomial::new(coeffs)
    }
}

impl Add for &MultigradedPolynomial {
    type Output = MultigradedPolynomial;

    fn add(self, rhs: Self) -> MultigradedPolynomial {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Neg for &MultigradedPolynomial {
    type Output = MultigradedPolynomial;

    fn neg(self) -> MultigradedPolynomial {
        MultigradedPolynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Sub for &MultigradedPolynomial {
    type Output = MultigradedPolynomial;

    fn sub(self, rhs: Self) -> MultigradedPolynomial {
        self + &(-rhs)
    }
}

impl Mul for &MultigradedPolynomial {
    type Output = MultigradedPolynomial;

    fn mul(self, rhs: Self) -> MultigradedPolynomial {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = MultigradedPolynomial::zero(self.nvars);
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                let e = a.iter().zip(b).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for MultigradedPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else if k > 0 { "+" } else { "" };
            let mag = c.abs();
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(|(i, &x)| if x == 1 { format!("x{}", i + 1) } else { format!("x{}^{x}", i + 1) })
                .collect();
            if k > 0 {
                write!(f, " {sign} ")?;
            } else {
                write!(f, "{sign}")?;
            }
            match (mono.is_empty(), mag.is_one()) {
                (true, _) => write!(f, "{mag}")?,
                (false, true) => write!(f, "{}", mono.join("*"))?,
                (false, false) => write!(f, "{mag}*{}", mono.join("*"))?,
            }
        }
        Ok(())
    }
}

/// A polynomial in one variable `t`; `coeffs[k]` is the coefficient of `t^k`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct UnivariatePolynomial {
    coeffs: Vec<BigInt>,
}

impl UnivariatePolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UnivariatePolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, t: i64) -> BigInt {
        let t = BigInt::from(t);
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * &t + c)
    }
}

impl fmt::Display for UnivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let sign = match (c.is_negative(), first) {
                (true, true) => "-",
                (true, false) => " - ",
                (false, true) => "",
                (false, false) => " + ",
            };
            let mag = c.abs();
            let coeff = if mag.is_one() && k > 0 { String::new() } else { mag.to_string() };
            let power = match k {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{k}"),
            };
            write!(f, "{sign}{coeff}{power}")?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
