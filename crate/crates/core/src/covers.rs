//! Covering polynomials and cover coefficients.
//!
//! A cover of a monomial `p` by a set `M` is a subset of `M` whose lcm is
//! `p`; the empty subset covers `1`. The cover coefficient `c_M(p)` is the
//! signed count `Σ (-1)^|S|` over covers, and the covering polynomial is
//! `Σ_p c_M(p) p`, equal to the lcm-product of the factors `1 - m`.

use num_bigint::BigInt;

use crate::complexes::SimplicialComplex;
use crate::error::{Error, Result};
use crate::ideals::{MonomialIdeal, SquareFreeMonomial};
use crate::polynomial::{exponents_divide, lcm_exponents, square_free_exponents, Exponents, MultigradedPolynomial};

pub const DEFAULT_MAX_FACTORS: usize = 24;

/// `(1 - m_1) ⋆ ... ⋆ (1 - m_r)` where `⋆` multiplies monomials by lcm.
pub fn covering_polynomial(monomials: &[Exponents], nvars: usize, max_factors: usize) -> Result<MultigradedPolynomial> {
    covering_polynomial_capped(monomials, nvars, max_factors, None)
}

/// As [`covering_polynomial`], with every exponent truncated at `cap`. This
/// preserves the coefficients of monomials whose exponents are all below
/// `cap`.
pub fn covering_polynomial_capped(
    monomials: &[Exponents],
    nvars: usize,
    max_factors: usize,
    cap: Option<u32>,
) -> Result<MultigradedPolynomial> {
    if monomials.len() > max_factors {
        return Err(Error::BudgetExceeded {
            what: "star-product factor",
            limit: max_factors,
        });
    }
    let mut acc = MultigradedPolynomial::one(nvars);
    for m in monomials {
        if m.len() != nvars {
            return Err(Error::UniverseMismatch);
        }
        let m: Exponents = match cap {
            Some(c) => m.iter().map(|&e| e.min(c)).collect(),
            None => m.clone(),
        };
        acc = acc.star(&MultigradedPolynomial::one_minus(m));
    }
    Ok(acc)
}

/// `c_M(p)` by enumerating the subsets of the elements of `M` dividing `p`.
pub fn cover_coefficient(monomials: &[Exponents], p: &[u32]) -> BigInt {
    let divisors: Vec<&Exponents> = monomials.iter().filter(|m| exponents_divide(m, p)).collect();
    let n = p.len();
    // suffix[i] = lcm of divisors[i..]; a branch dies once it cannot reach p.
    let mut suffix = vec![vec![0u32; n]; divisors.len() + 1];
    for i in (0..divisors.len()).rev() {
        suffix[i] = lcm_exponents(&suffix[i + 1], divisors[i]);
    }
    fn go(i: usize, cur: &[u32], parity: bool, d: &[&Exponents], suffix: &[Vec<u32>], p: &[u32]) -> i64 {
        if lcm_exponents(cur, &suffix[i]) != p {
            return 0;
        }
        if i == d.len() {
            return if parity { -1 } else { 1 };
        }
        go(i + 1, cur, parity, d, suffix, p) + go(i + 1, &lcm_exponents(cur, d[i]), !parity, d, suffix, p)
    }
    BigInt::from(go(0, &vec![0; n], false, &divisors, &suffix, p))
}

/// `c_B(p)` for square-free data, on machine words.
pub fn cover_coefficient_square_free(monomials: &[SquareFreeMonomial], p: SquareFreeMonomial) -> i64 {
    let divisors: Vec<u64> = monomials.iter().filter(|m| m.divides(p)).map(|m| m.bits()).collect();
    let mut suffix = vec![0u64; divisors.len() + 1];
    for i in (0..divisors.len()).rev() {
        suffix[i] = suffix[i + 1] | divisors[i];
    }
    fn go(i: usize, cur: u64, parity: bool, d: &[u64], suffix: &[u64], p: u64) -> i64 {
        if cur | suffix[i] != p {
            return 0;
        }
        if i == d.len() {
            return if parity { -1 } else { 1 };
        }
        go(i + 1, cur, parity, d, suffix, p) + go(i + 1, cur | d[i], !parity, d, suffix, p)
    }
    go(0, 0, false, &divisors, &suffix, p.bits())
}

/// Unsigned number of covers of `p`, for the parity check.
pub fn count_covers_square_free(monomials: &[SquareFreeMonomial], p: SquareFreeMonomial) -> u64 {
    let divisors: Vec<u64> = monomials.iter().filter(|m| m.divides(p)).map(|m| m.bits()).collect();
    let mut suffix = vec![0u64; divisors.len() + 1];
    for i in (0..divisors.len()).rev() {
        suffix[i] = suffix[i + 1] | divisors[i];
    }
    fn go(i: usize, cur: u64, d: &[u64], suffix: &[u64], p: u64) -> u64 {
        if cur | suffix[i] != p {
            return 0;
        }
        if i == d.len() {
            return 1;
        }
        go(i + 1, cur, d, suffix, p) + go(i + 1, cur | d[i], d, suffix, p)
    }
    go(0, 0, &divisors, &suffix, p.bits())
}

/// `ẽ(R(I)) = (-1)^(n-1) c_B(x_1 ... x_n)`.
pub fn euler_via_covers(ideal: &MonomialIdeal) -> i64 {
    let top = ideal.universe().top();
    let c = cover_coefficient_square_free(ideal.generators(), top);
    if ideal.nvars() % 2 == 1 {
        c
    } else {
        -c
    }
}

/// Both sides of the Hilbert-series identity
/// `C_{B ∪ squares} = F_{R(I)} · Π (1 - x_s)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertCheck {
    pub covering: MultigradedPolynomial,
    pub product: MultigradedPolynomial,
}

impl HilbertCheck {
    pub fn holds(&self) -> bool {
        self.covering == self.product
    }
}

pub fn hilbert_identity_check(ideal: &MonomialIdeal, max_factors: usize, max_faces: usize) -> Result<HilbertCheck> {
    let n = ideal.nvars();
    let mut m: Vec<Exponents> = ideal
        .generators()
        .iter()
        .map(|&g| square_free_exponents(g, n))
        .collect();
    for s in 0..n {
        let mut e = vec![0; n];
        e[s] = 2;
        m.push(e);
    }
    let covering = covering_polynomial(&m, n, max_factors)?;
    let complex = SimplicialComplex::realize(ideal, max_faces)?;
    let mut product = complex.face_polynomial();
    for s in 0..n {
        let mut e = vec![0; n];
        e[s] = 1;
        product = &product * &MultigradedPolynomial::one_minus(e);
    }
    Ok(HilbertCheck { covering, product })
}
