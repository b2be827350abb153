//! Sparse and Laurent polynomial representations over `F_p`, plus exact
//! brute-force value-set and collision statistics.
//!
//! Exponents are literal integers and are never silently reduced mod `p - 1`:
//! the degree-based bounds depend on the polynomial exactly as given. The
//! explicit [`SparsePoly::normalize_exponents`] helper performs the reduction
//! when a caller wants it.

use crate::bitset::BitSet;
use crate::field::{self, Prime};
use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyError {
    /// After reduction and collection no monomial term is left.
    NoTerms,
    /// A sparse exponent lies outside `[1, p-2]` (and `raw` was not requested).
    ExponentOutOfRange { exp: u64 },
    /// A sparse exponent of zero; constant mass belongs in `a0`.
    ZeroExponent,
    /// Too many factors for the expansion helper.
    TooManyFactors { got: usize, max: usize },
}

impl fmt::Display for PolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyError::NoTerms => write!(f, "polynomial has no monomial terms"),
            PolyError::ExponentOutOfRange { exp } => {
                write!(f, "exponent {exp} outside [1, p-2]; use a raw polynomial")
            }
            PolyError::ZeroExponent => write!(f, "exponent 0 is the constant term"),
            PolyError::TooManyFactors { got, max } => {
                write!(f, "{got} factors exceed the expansion limit of {max}")
            }
        }
    }
}

impl core::error::Error for PolyError {}

/// One monomial `coeff * X^exp` with `coeff` in canonical form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Term {
    pub coeff: u64,
    pub exp: u64,
}

/// `a0 + sum a_i X^{n_i}` over `F_p` with nonzero `a_i` and strictly
/// increasing exponents `n_i >= 1`. Ordinary polynomials keep every exponent
/// in `[1, p-2]`; `raw` polynomials may carry larger literal exponents
/// (constructions such as `X - X^{(p+1)/2}` over `F_3` need them).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparsePoly {
    p: Prime,
    a0: u64,
    terms: Vec<Term>,
    raw: bool,
}

impl SparsePoly {
    /// Builds a polynomial from `(coeff, exp)` pairs. Coefficients are
    /// reduced mod `p`, like exponents are collected, and vanishing terms are
    /// dropped; at least one term must survive.
    pub fn new(p: Prime, a0: u64, terms: &[(u64, u64)]) -> Result<Self, PolyError> {
        Self::build(p, a0, terms, false)
    }

    /// Like [`SparsePoly::new`] but allows exponents beyond `p - 2`.
    pub fn new_raw(p: Prime, a0: u64, terms: &[(u64, u64)]) -> Result<Self, PolyError> {
        Self::build(p, a0, terms, true)
    }

    fn build(p: Prime, a0: u64, terms: &[(u64, u64)], raw: bool) -> Result<Self, PolyError> {
        let mut collected: BTreeMap<u64, u64> = BTreeMap::new();
        for &(coeff, exp) in terms {
            if exp == 0 {
                return Err(PolyError::ZeroExponent);
            }
            if !raw && exp > p.get() - 2 {
                return Err(PolyError::ExponentOutOfRange { exp });
            }
            let entry = collected.entry(exp).or_insert(0);
            *entry = field::add_mod(*entry, coeff % p.get(), p);
        }
        let terms: Vec<Term> = collected
            .into_iter()
            .filter(|&(_, coeff)| coeff != 0)
            .map(|(exp, coeff)| Term { coeff, exp })
            .collect();
        if terms.is_empty() {
            return Err(PolyError::NoTerms);
        }
        Ok(SparsePoly {
            p,
            a0: a0 % p.get(),
            terms,
            raw,
        })
    }

    pub fn p(&self) -> Prime {
        self.p
    }

    pub fn a0(&self) -> u64 {
        self.a0
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    /// Number of monomial terms, the sparsity parameter.
    pub fn t(&self) -> usize {
        self.terms.len()
    }

    /// Literal degree: the largest exponent as given, unreduced.
    pub fn degree(&self) -> u64 {
        self.terms.last().unwrap().exp
    }

    pub fn is_raw(&self) -> bool {
        self.raw
    }

    pub fn exponents(&self) -> Vec<u64> {
        self.terms.iter().map(|t| t.exp).collect()
    }

    /// `a0 + sum coeff * x^exp` with `0^exp = 0` for `exp >= 1`.
    pub fn eval(&self, x: u64) -> u64 {
        let mut acc = self.a0;
        for t in &self.terms {
            acc = field::add_mod(
                acc,
                field::mul_mod(t.coeff, field::pow_mod(x, t.exp, self.p), self.p),
                self.p,
            );
        }
        acc
    }

    /// Exact statistics over all of `F_p`.
    pub fn value_set(&self) -> ValueSetStats {
        ValueSetStats::compute(self.p, Domain::FullField, |x| self.eval(x))
    }

    /// Exact statistics over `F_p^*` only.
    pub fn value_set_units(&self) -> ValueSetStats {
        ValueSetStats::compute(self.p, Domain::Units, |x| self.eval(x))
    }

    /// Reduces every exponent to the representative in `[1, p-1]` congruent
    /// mod `p - 1`, collecting collided terms. Evaluation is preserved at
    /// every point of `F_p` (including 0, which is why the target range is
    /// `[1, p-1]` and not `[0, p-2]`). Fails if all terms cancel.
    pub fn normalize_exponents(&self) -> Result<SparsePoly, PolyError> {
        let modulus = self.p.units();
        let reduced: Vec<(u64, u64)> = self
            .terms
            .iter()
            .map(|t| (t.coeff, (t.exp - 1) % modulus + 1))
            .collect();
        // The bucket p-1 is outside the ordinary [1, p-2] window.
        if reduced.iter().any(|&(_, exp)| exp > self.p.get() - 2) {
            Self::new_raw(self.p, self.a0, &reduced)
        } else {
            Self::new(self.p, self.a0, &reduced)
        }
    }
}

/// `a0 + sum b_i X^{m_i}` with nonzero `b_i` and distinct nonzero integer
/// exponents, evaluated on units only. The constant term keeps substitution
/// results exact when part of an exponent vector reduces to zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    p: Prime,
    a0: u64,
    terms: Vec<LaurentTerm>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LaurentTerm {
    pub coeff: u64,
    pub exp: i64,
}

impl LaurentPoly {
    /// Builds from `(coeff, exp)` pairs; zero exponents fold into `a0`,
    /// coefficients reduce mod `p`, like exponents collect. At least one
    /// nonconstant term must survive (a collapsed polynomial is a constant,
    /// which callers represent separately).
    pub fn new(p: Prime, a0: u64, terms: &[(u64, i64)]) -> Result<Self, PolyError> {
        let mut collected: BTreeMap<i64, u64> = BTreeMap::new();
        let mut a0 = a0 % p.get();
        for &(coeff, exp) in terms {
            if exp == i64::MIN {
                // not negatable; nothing at desk scale gets near it
                return Err(PolyError::ExponentOutOfRange {
                    exp: exp.unsigned_abs(),
                });
            }
            if exp == 0 {
                a0 = field::add_mod(a0, coeff % p.get(), p);
            } else {
                let entry = collected.entry(exp).or_insert(0);
                *entry = field::add_mod(*entry, coeff % p.get(), p);
            }
        }
        let terms: Vec<LaurentTerm> = collected
            .into_iter()
            .filter(|&(_, coeff)| coeff != 0)
            .map(|(exp, coeff)| LaurentTerm { coeff, exp })
            .collect();
        if terms.is_empty() {
            return Err(PolyError::NoTerms);
        }
        Ok(LaurentPoly { p, a0, terms })
    }

    pub fn p(&self) -> Prime {
        self.p
    }

    pub fn a0(&self) -> u64 {
        self.a0
    }

    pub fn terms(&self) -> &[LaurentTerm] {
        &self.terms
    }

    pub fn t(&self) -> usize {
        self.terms.len()
    }

    /// Largest exponent magnitude, the normalization degree `m_t`.
    pub fn max_abs_exp(&self) -> u64 {
        self.terms.iter().map(|t| t.exp.unsigned_abs()).max().unwrap()
    }

    pub fn exponents(&self) -> Vec<i64> {
        self.terms.iter().map(|t| t.exp).collect()
    }

    /// Evaluation at a unit `x`. Negative exponents reduce mod `p - 1`,
    /// which is valid exactly because `x` is a unit.
    pub fn eval_unit(&self, x: u64) -> u64 {
        assert!(
            x != 0 && x < self.p.get(),
            "Laurent polynomials are defined on units only"
        );
        let modulus = self.p.units() as i128;
        let mut acc = self.a0;
        for t in &self.terms {
            let e = (t.exp as i128).rem_euclid(modulus) as u64;
            acc = field::add_mod(
                acc,
                field::mul_mod(t.coeff, field::pow_mod(x, e, self.p), self.p),
                self.p,
            );
        }
        acc
    }

    /// Exact statistics over `F_p^*`.
    pub fn value_set(&self) -> ValueSetStats {
        ValueSetStats::compute(self.p, Domain::Units, |x| self.eval_unit(x))
    }

    /// The polynomial `g(X^{-1})`: every exponent negated.
    pub fn flip_variable(&self) -> LaurentPoly {
        let terms: Vec<(u64, i64)> = self.terms.iter().map(|t| (t.coeff, -t.exp)).collect();
        LaurentPoly::new(self.p, self.a0, &terms).expect("flip preserves the term count")
    }

    /// Reduces every exponent to its balanced residue mod `p - 1` and
    /// collects collided terms (mass at exponent zero folds into `a0`).
    /// The result is the canonical representative of `g` as a function on
    /// units: two Laurent polynomials agree pointwise on `F_p^*` exactly
    /// when their canonical forms coincide. Fails with `NoTerms` when `g`
    /// is constant as a function.
    pub fn normalize_exponents(&self) -> Result<LaurentPoly, PolyError> {
        let modulus = self.p.units();
        let terms: Vec<(u64, i64)> = self
            .terms
            .iter()
            .map(|t| (t.coeff, field::signed_residue(t.exp as i128, modulus)))
            .collect();
        LaurentPoly::new(self.p, self.a0, &terms)
    }
}

/// Which inputs were enumerated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    FullField,
    Units,
}

/// Exact value-set statistics from one enumeration pass: the number of
/// distinct values `V`, the collision count `N` (ordered pairs mapping to
/// the same value, i.e. the sum of squared preimage sizes), and the full
/// preimage-size histogram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValueSetStats {
    p: u64,
    domain: Domain,
    v: u64,
    n: u64,
    counts: Vec<u32>,
}

impl ValueSetStats {
    /// Single pass over the domain: a p-bit membership set for the distinct
    /// count plus a preimage-size counting array. `N` is maintained
    /// incrementally (growing a preimage from `k` to `k+1` adds `2k+1`).
    pub fn compute(p: Prime, domain: Domain, mut f: impl FnMut(u64) -> u64) -> ValueSetStats {
        let size = p.get();
        let mut seen = BitSet::new(size);
        let mut counts = alloc::vec![0u32; size as usize];
        let mut v = 0u64;
        let mut n = 0u64;
        let start = match domain {
            Domain::FullField => 0,
            Domain::Units => 1,
        };
        for x in start..size {
            let y = f(x);
            debug_assert!(y < size);
            if seen.insert(y) {
                v += 1;
            }
            let k = counts[y as usize];
            n += 2 * k as u64 + 1;
            counts[y as usize] = k + 1;
        }
        ValueSetStats {
            p: size,
            domain,
            v,
            n,
            counts,
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn domain_size(&self) -> u64 {
        match self.domain {
            Domain::FullField => self.p,
            Domain::Units => self.p - 1,
        }
    }

    /// `V`: number of distinct values attained.
    pub fn distinct_values(&self) -> u64 {
        self.v
    }

    /// `N`: the number of ordered pairs `(x, y)` in the domain with
    /// `f(x) = f(y)`, equal to the sum of squared preimage sizes.
    pub fn collision_count(&self) -> u64 {
        self.n
    }

    pub fn preimage_size(&self, value: u64) -> u32 {
        self.counts[value as usize]
    }

    /// `(value, preimage size)` pairs for attained values, ascending.
    pub fn hist(&self) -> impl Iterator<Item = (u64, u32)> + '_ {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(v, &c)| (v as u64, c))
    }

    /// Preimage-size profile: size -> number of values with that size.
    pub fn profile(&self) -> BTreeMap<u32, u64> {
        let mut out = BTreeMap::new();
        for (_, c) in self.hist() {
            *out.entry(c).or_insert(0) += 1;
        }
        out
    }

    /// `ceil(domain^2 / N)`, the exact form of the Cauchy lower bound
    /// `V * N >= |domain|^2`.
    pub fn cauchy_lower_bound(&self) -> u64 {
        let d = self.domain_size() as u128;
        (d * d).div_ceil(self.n as u128) as u64
    }
}
