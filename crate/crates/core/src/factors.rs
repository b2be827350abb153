//! Exceptional linear factors of `g(X) - g(Y)` for a Laurent polynomial `g`:
//! the diagonal family `X - alpha Y` (value-preserving scalings
//! `g(alpha x) = g(x)`) and the antidiagonal family `XY - alpha`
//! (`g(alpha / x) = g(x)`), together with the exact count of collision pairs
//! these lines account for.
//!
//! Detection works on the coefficient/exponent data through the functional
//! identities, never by bivariate polynomial division; for these two linear
//! shapes the conditions are equivalent.

use crate::bitset::BitSet;
use crate::field;
use crate::poly::LaurentPoly;
use alloc::vec::Vec;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExceptionalFactors {
    /// All `alpha` with `X - alpha Y` dividing `g(X) - g(Y)`, ascending.
    /// Always contains 1 (the factor `X - Y`).
    pub diag: Vec<u64>,
    /// All `alpha` with `XY - alpha` dividing `g(X) - g(Y)`, ascending.
    pub anti: Vec<u64>,
    /// `gcd(m_1, ..., m_t, p-1)`: the diagonal set is exactly the subgroup
    /// of this order.
    pub diag_subgroup_order: u64,
    /// Smallest antidiagonal element, when any exists; the antidiagonal set
    /// is a single coset of the diagonal subgroup.
    pub anti_coset_rep: Option<u64>,
    /// Collision pairs lying on the exceptional lines, counted exactly.
    pub n0: u64,
}

/// Canonical form on units: balanced exponents, collided terms merged.
/// Both identities below are statements about `g` as a function on
/// `F_p^*`, and the canonical form is exactly the polynomial for which
/// coefficient equations and pointwise equations coincide.
fn canonical(g: &LaurentPoly) -> LaurentPoly {
    g.normalize_exponents()
        .expect("factor scans need g nonconstant as a function on units")
}

/// The subgroup order `gcd(m_1, ..., m_t, p-1)` determining the diagonal
/// set, computed on the canonical exponents.
pub fn diagonal_subgroup_order(g: &LaurentPoly) -> u64 {
    let g = canonical(g);
    let mut acc = g.p().units();
    for term in g.terms() {
        acc = field::gcd(acc as i64, term.exp);
    }
    acc
}

/// All units `alpha` with `g(alpha X) = g(X)` identically. The condition is
/// `b_i alpha^{m_i} = b_i` for every term, i.e. `alpha^{m_i} = 1` for all
/// `i`, so the set is the subgroup `{alpha : alpha^G = 1}` with
/// `G = gcd(m_1, ..., m_t, p-1)`; the algebraic test is used directly
/// instead of pointwise sampling.
pub fn diagonal_factors(g: &LaurentPoly) -> Vec<u64> {
    let p = g.p();
    let order = diagonal_subgroup_order(g);
    let out: Vec<u64> = (1..p.get())
        .filter(|&alpha| field::pow_mod(alpha, order, p) == 1)
        .collect();
    debug_assert_eq!(out.len() as u64, order);
    out
}

/// All units `alpha` with `g(alpha / X) = g(X)` identically. Empty unless
/// the canonical exponent multiset is symmetric under negation mod `p - 1`;
/// otherwise `alpha` must satisfy `b_i alpha^{m_i} = b_j` for every
/// exponent pair `m_j = -m_i` (the matching convention is fixed by the
/// functional identity and validated against brute-force scans).
pub fn antidiagonal_factors(g: &LaurentPoly) -> Vec<u64> {
    let g = canonical(g);
    let p = g.p();
    let modulus = p.units();
    let terms = g.terms();
    // mirror coefficient for each exponent, or bail out; the exponent
    // (p-1)/2 is its own mirror
    let mut mirrored: Vec<(i64, u64, u64)> = Vec::with_capacity(terms.len());
    for t in terms {
        let mirror_exp = field::signed_residue(-(t.exp as i128), modulus);
        match terms.iter().find(|u| u.exp == mirror_exp) {
            Some(u) => mirrored.push((t.exp, t.coeff, u.coeff)),
            None => return Vec::new(),
        }
    }
    (1..p.get())
        .filter(|&alpha| {
            mirrored.iter().all(|&(exp, b_i, b_j)| {
                let e = (exp as i128).rem_euclid(modulus as i128) as u64;
                field::mul_mod(b_i, field::pow_mod(alpha, e, p), p) == b_j
            })
        })
        .collect()
}

/// Exact number of unit pairs `(x, y)` with `g(x) = g(y)` lying on an
/// exceptional line. Every pair of each line is a collision by the
/// functional identity, so this is line counting with inclusion-exclusion
/// on diagonal/antidiagonal crossings: a pair on `x = alpha y` and
/// `xy = beta` exists for each solution of `alpha y^2 = beta`.
pub fn exceptional_contribution(g: &LaurentPoly, diag: &[u64], anti: &[u64]) -> u64 {
    let p = g.p();
    let units = p.units();
    let line_pairs = (diag.len() as u64 + anti.len() as u64) * units;
    if anti.is_empty() || diag.is_empty() {
        return line_pairs;
    }
    // square table once, then each (alpha, beta) crossing contributes the
    // number of solutions of y^2 = beta / alpha: 2 if a square, else 0
    let mut squares = BitSet::new(p.get());
    for y in 1..p.get() {
        squares.insert(field::mul_mod(y, y, p));
    }
    let mut overlap = 0u64;
    for &alpha in diag {
        let inv_alpha = field::inv_mod(alpha, p.get()).expect("alpha is a unit");
        for &beta in anti {
            if squares.contains(field::mul_mod(beta, inv_alpha, p)) {
                overlap += 2;
            }
        }
    }
    line_pairs - overlap
}

/// Runs both factor scans and the exact line count.
pub fn scan(g: &LaurentPoly) -> ExceptionalFactors {
    let diag = diagonal_factors(g);
    let anti = antidiagonal_factors(g);
    let n0 = exceptional_contribution(g, &diag, &anti);
    ExceptionalFactors {
        diag_subgroup_order: diagonal_subgroup_order(g),
        anti_coset_rep: anti.first().copied(),
        n0,
        diag,
        anti,
    }
}

/// `min(p / m_t, sqrt(m_t) / t)`: the degree floor for irreducible factors
/// of `g(X) - g(Y)` other than the exceptional lines (formula evaluation
/// only; nothing is factored, and the implied constant is dropped).
pub fn deg_bound_quantity(g: &LaurentPoly) -> f64 {
    let m_t = g.max_abs_exp() as f64;
    let t = g.t() as f64;
    (g.p().get() as f64 / m_t).min(libm::sqrt(m_t) / t)
}
