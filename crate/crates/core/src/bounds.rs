//! Lower-bound formulas for value-set sizes, hypothesis checks, and the
//! sparse-equation root bound, each next to the exact oracle it is compared
//! against.
//!
//! Bounds come in two kinds. Proof-level inequalities (the Cauchy bound, the
//! degree bound, `V >= d`, `V >= e`, the collision cap) are exact and are
//! asserted by the test suites. Theorem statements carry unspecified
//! implied constants; those quantities are evaluated and reported as ratios
//! against the exact oracle, never asserted.

use crate::field::{self, Prime};
use crate::poly::SparsePoly;
use alloc::vec::Vec;

pub const DEFAULT_ORACLE_LIMIT: u64 = 1 << 22;
/// Default threshold for the exponent-difference gcd hypothesis.
pub const DEFAULT_GCD_THRESHOLD: f64 = 0.1;

/// The gcd pair of a binomial `X + aX^n` and the minimal multiplier
/// witnesses from the value-set proof:
/// `r * n = d (mod p-1)` and `s * (n-1) = e (mod p-1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BinomialWitnesses {
    pub d: u64,
    pub e: u64,
    pub r: u64,
    pub s: u64,
}

impl BinomialWitnesses {
    /// `p * max(r, d)`: the cap on collisions of `u^r + a u^d` used when
    /// `d <= sqrt(p)`.
    pub fn collision_cap(&self, p: Prime) -> u64 {
        p.get() * self.r.max(self.d)
    }
}

/// Computes `d = gcd(n, p-1)`, `e = gcd(n-1, p-1)` and the minimal positive
/// `r <= (p-1)/d`, `s <= (p-1)/e` with `r n/d = 1 (mod (p-1)/d)` and
/// `s (n-1)/e = 1 (mod (p-1)/e)`. Existence is guaranteed by the gcd
/// construction, so this is total for `2 <= n <= p-1`.
pub fn binomial_r_s_witnesses(n: u64, p: Prime) -> BinomialWitnesses {
    assert!(n >= 2 && n <= p.units(), "binomial exponent out of range");
    let pm1 = p.units();
    let d = field::gcd(n as i64, pm1 as i64);
    let e = field::gcd(n as i64 - 1, pm1 as i64);
    let r = minimal_multiplier(n / d, pm1 / d);
    let s = minimal_multiplier((n - 1) / e, pm1 / e);
    debug_assert_eq!((r as u128 * n as u128) % pm1 as u128, (d % pm1) as u128);
    debug_assert_eq!(
        (s as u128 * (n - 1) as u128) % pm1 as u128,
        (e % pm1) as u128
    );
    BinomialWitnesses { d, e, r, s }
}

/// Least positive `r` with `r * a = 1 (mod m)`; `m = 1` gives 1.
fn minimal_multiplier(a: u64, m: u64) -> u64 {
    if m == 1 {
        return 1;
    }
    field::inv_mod(a % m, m).expect("a/gcd is coprime to m/gcd")
}

/// Inputs of the sparse-equation root bound for
/// `sum c_i x^{k_i} = 0` over `F_p^*`.
#[derive(Debug, Clone, PartialEq)]
pub struct RootBoundInput {
    p: Prime,
    coeffs: Vec<u64>,
    exps: Vec<i64>,
    /// `min_i max_{j != i} gcd(k_j - k_i, p-1)`.
    d_param: u64,
}

impl RootBoundInput {
    pub fn new(p: Prime, coeffs: &[u64], exps: &[i64]) -> Self {
        assert_eq!(coeffs.len(), exps.len());
        assert!(coeffs.len() >= 2, "the root bound needs r >= 2 terms");
        assert!(
            coeffs.iter().all(|&c| c % p.get() != 0),
            "coefficients must be units"
        );
        let mut d_param = u64::MAX;
        for i in 0..exps.len() {
            let mut row_max = 0u64;
            for j in 0..exps.len() {
                if i != j {
                    assert!(exps[i] != exps[j], "exponents must be distinct");
                    let g = field::gcd(exps[j] - exps[i], p.units() as i64);
                    row_max = row_max.max(g);
                }
            }
            d_param = d_param.min(row_max);
        }
        RootBoundInput {
            p,
            coeffs: coeffs.iter().map(|&c| c % p.get()).collect(),
            exps: exps.to_vec(),
            d_param,
        }
    }

    pub fn p(&self) -> Prime {
        self.p
    }

    pub fn r(&self) -> usize {
        self.coeffs.len()
    }

    pub fn d_param(&self) -> u64 {
        self.d_param
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn exps(&self) -> &[i64] {
        &self.exps
    }
}

/// The two terms of the root bound, kept separate because the second one
/// carries an unspecified constant: `main = 2 p^{1-1/(r-1)} D^{1/(r-1)}`,
/// `secondary = p^{1-2/(r-1)} D^{2/(r-1)}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootBoundTerms {
    pub main: f64,
    pub secondary: f64,
}

pub fn sparse_root_bound(input: &RootBoundInput) -> RootBoundTerms {
    let p = input.p.get() as f64;
    let d = input.d_param as f64;
    let rm1 = (input.r() - 1) as f64;
    RootBoundTerms {
        main: 2.0 * libm::pow(p, 1.0 - 1.0 / rm1) * libm::pow(d, 1.0 / rm1),
        secondary: libm::pow(p, 1.0 - 2.0 / rm1) * libm::pow(d, 2.0 / rm1),
    }
}

/// Exhaustive count of `x` in `F_p^*` with `sum c_i x^{k_i} = 0`: the oracle
/// the root bound is checked against. Exponents reduce mod `p - 1` because
/// only units are enumerated.
pub fn exact_root_count(p: Prime, coeffs: &[u64], exps: &[i64]) -> u64 {
    assert_eq!(coeffs.len(), exps.len());
    assert!(!coeffs.is_empty());
    let modulus = p.units() as i128;
    let terms: Vec<(u64, u64)> = coeffs
        .iter()
        .zip(exps)
        .map(|(&c, &e)| (c % p.get(), (e as i128).rem_euclid(modulus) as u64))
        .collect();
    let mut count = 0;
    for x in 1..p.get() {
        let mut acc = 0u64;
        for &(c, e) in &terms {
            acc = field::add_mod(acc, field::mul_mod(c, field::pow_mod(x, e, p), p), p);
        }
        if acc == 0 {
            count += 1;
        }
    }
    count
}

/// The two hypotheses of the sparse value-set theorem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HypothesisCheck {
    /// `max_{i<j} gcd(n_j - n_i, p-1) <= c_t * p`.
    pub hyp_i: bool,
    pub hyp_i_ratio: f64,
    /// `gcd(n_1, ..., n_t, p-1) = 1`.
    pub hyp_ii: bool,
}

pub fn check_sparse_hypotheses(f: &SparsePoly, c_t: f64) -> HypothesisCheck {
    assert!(f.t() >= 2, "hypothesis checks need at least two terms");
    let pm1 = f.p().units() as i64;
    let exps = f.exponents();
    let mut max_gcd = 0u64;
    for i in 0..exps.len() {
        for j in i + 1..exps.len() {
            max_gcd = max_gcd.max(field::gcd(exps[j] as i64 - exps[i] as i64, pm1));
        }
    }
    let mut g_all = f.p().units();
    for n in &exps {
        g_all = field::gcd(g_all as i64, *n as i64);
    }
    let ratio = max_gcd as f64 / f.p().get() as f64;
    HypothesisCheck {
        hyp_i: ratio <= c_t,
        hyp_i_ratio: ratio,
        hyp_ii: g_all == 1,
    }
}

/// Every bound quantity applicable to `f`, with the exact oracle values when
/// the field is within the enumeration limit.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub p: u64,
    pub t: usize,
    /// Literal (unreduced) degree.
    pub deg: u64,
    /// `ceil(p / deg)`: every fiber of a degree-`deg` map has at most `deg`
    /// points.
    pub trivial_lb: u64,
    /// Exact `V`, absent beyond the oracle limit.
    pub v_exact: Option<u64>,
    /// Exact collision count `N`, absent beyond the oracle limit.
    pub n_exact: Option<u64>,
    /// `ceil(p^2 / N)`.
    pub cauchy_lb: Option<u64>,
    /// Binomial-only fields (`f = X + aX^n`, `2 <= n <= p-1`).
    pub d: Option<u64>,
    pub e: Option<u64>,
    pub r_witness: Option<u64>,
    pub s_witness: Option<u64>,
    /// `max(d, e)`: exact. The d branch comes from the d distinct values
    /// `u + a` on `u^d = 1`; the e branch needs one value `w` of `u^{n-1}`
    /// with `1 + aw != 0`, which exists unconditionally because that power
    /// map takes `(p-1)/e >= 2` distinct values for every `n <= p - 1`.
    pub bin_exact_lb: Option<u64>,
    /// `max(d, p/d, e, p/e)`: the binomial theorem quantity (implied
    /// constant unknown, reported not asserted).
    pub bin_thm_quantity: Option<f64>,
    /// `ceil(sqrt(p))`.
    pub sqrt_lb: Option<u64>,
    /// `min(p^(2/3), p^(4/(3t+4)))` for t >= 2 (implied constant unknown).
    pub sparse_thm_quantity: Option<f64>,
    pub hyp_i: Option<bool>,
    pub hyp_i_ratio: Option<f64>,
    pub hyp_ii: Option<bool>,
}

/// Recognizes the binomial shape `X + aX^n` with `2 <= n <= p-1`:
/// no constant term, leading coefficient of `X` equal to 1.
pub fn as_shifted_binomial(f: &SparsePoly) -> Option<(u64, u64)> {
    let terms = f.terms();
    if f.a0() != 0 || terms.len() != 2 {
        return None;
    }
    if terms[0].coeff != 1 || terms[0].exp != 1 {
        return None;
    }
    let n = terms[1].exp;
    if n < 2 || n > f.p().units() {
        return None;
    }
    Some((terms[1].coeff, n))
}

pub fn sparse_theorem_quantity(p: Prime, t: usize) -> f64 {
    let pf = p.get() as f64;
    let a = libm::pow(pf, 2.0 / 3.0);
    let b = libm::pow(pf, 4.0 / (3.0 * t as f64 + 4.0));
    a.min(b)
}

pub fn bound_report(f: &SparsePoly, c_t: f64, oracle_limit: u64) -> BoundReport {
    let p = f.p();
    let deg = f.degree();
    let (v_exact, n_exact, cauchy_lb) = if p.get() <= oracle_limit {
        let stats = f.value_set();
        (
            Some(stats.distinct_values()),
            Some(stats.collision_count()),
            Some(stats.cauchy_lower_bound()),
        )
    } else {
        (None, None, None)
    };
    let binomial = as_shifted_binomial(f).map(|(_, n)| binomial_r_s_witnesses(n, p));
    let (sparse_q, hyp) = if f.t() >= 2 {
        (
            Some(sparse_theorem_quantity(p, f.t())),
            Some(check_sparse_hypotheses(f, c_t)),
        )
    } else {
        (None, None)
    };
    let pf = p.get() as f64;
    BoundReport {
        p: p.get(),
        t: f.t(),
        deg,
        trivial_lb: p.get().div_ceil(deg),
        v_exact,
        n_exact,
        cauchy_lb,
        d: binomial.map(|w| w.d),
        e: binomial.map(|w| w.e),
        r_witness: binomial.map(|w| w.r),
        s_witness: binomial.map(|w| w.s),
        bin_exact_lb: binomial.map(|w| w.d.max(w.e)),
        bin_thm_quantity: binomial.map(|w| {
            (w.d as f64)
                .max(pf / w.d as f64)
                .max(w.e as f64)
                .max(pf / w.e as f64)
        }),
        sqrt_lb: binomial.map(|_| field::ceil_sqrt(p.get())),
        sparse_thm_quantity: sparse_q,
        hyp_i: hyp.map(|h| h.hyp_i),
        hyp_i_ratio: hyp.map(|h| h.hyp_i_ratio),
        hyp_ii: hyp.map(|h| h.hyp_ii),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prime(v: u64) -> Prime {
        Prime::new(v).unwrap()
    }

    #[test]
    fn witnesses_examples() {
        // n = 5, p = 7: d = 1, 5r = 1 mod 6 -> r = 5; e = 2, 2s = 1 mod 3 -> s = 2
        let w = binomial_r_s_witnesses(5, prime(7));
        assert_eq!((w.d, w.e, w.r, w.s), (1, 2, 5, 2));

        // n = 2: d = gcd(2, p-1) = 2, r = 1
        let w = binomial_r_s_witnesses(2, prime(11));
        assert_eq!((w.d, w.r), (2, 1));
        assert_eq!(w.e, 1);

        // n = (p+1)/2 = 7, p = 13: d = 1, 7r = 1 mod 12 -> r = 7
        let w = binomial_r_s_witnesses(7, prime(13));
        assert_eq!((w.d, w.r), (1, 7));

        // n = p - 1: d = p - 1, the quotient modulus collapses to 1
        let w = binomial_r_s_witnesses(12, prime(13));
        assert_eq!((w.d, w.r), (12, 1));
    }

    #[test]
    fn witness_congruences_exhaustive() {
        for pv in [7u64, 13, 31, 61] {
            let p = prime(pv);
            for n in 2..=p.units() {
                let w = binomial_r_s_witnesses(n, p);
                assert_eq!(w.r as u128 * n as u128 % p.units() as u128, w.d as u128 % p.units() as u128);
                assert_eq!(
                    w.s as u128 * (n - 1) as u128 % p.units() as u128,
                    w.e as u128 % p.units() as u128
                );
                assert!(w.r >= 1 && w.r <= p.units() / w.d);
                assert!(w.s >= 1 && w.s <= p.units() / w.e);
            }
        }
    }

    #[test]
    fn root_bound_examples() {
        // r = 2, D = gcd(5 - 2, 6) = 3, p = 7: main = 2 * 7^0 * 3 = 6
        let input = RootBoundInput::new(prime(7), &[1, 1], &[2, 5]);
        assert_eq!(input.d_param(), 3);
        let terms = sparse_root_bound(&input);
        assert!((terms.main - 6.0).abs() < 1e-12);

        // r = 2, D = 1: at most 2 roots
        let input = RootBoundInput::new(prime(7), &[1, 3], &[0, 1]);
        assert_eq!(input.d_param(), 1);
        assert!((sparse_root_bound(&input).main - 2.0).abs() < 1e-12);

        // r = 3, D = 2, p = 13: main = 2 * sqrt(26)
        let input = RootBoundInput::new(prime(13), &[1, 1, 1], &[0, 2, 4]);
        assert_eq!(input.d_param(), 2);
        let terms = sparse_root_bound(&input);
        assert!((terms.main - 2.0 * libm::sqrt(26.0)).abs() < 1e-9);
        assert!((terms.secondary - 2.0).abs() < 1e-9); // 13^0 * 2^1
    }

    #[test]
    fn two_term_gcd_parameter_divides_group_order() {
        for pv in [7u64, 13, 31, 61] {
            let p = prime(pv);
            for k1 in 1..=6i64 {
                for k2 in (k1 + 1)..=12i64 {
                    let input = RootBoundInput::new(p, &[1, 2], &[k1, k2]);
                    assert_eq!(input.d_param(), field::gcd(k2 - k1, pv as i64 - 1));
                    assert_eq!(p.units() % input.d_param(), 0, "p={pv} k1={k1} k2={k2}");
                }
            }
        }
    }

    #[test]
    fn exact_root_count_examples() {
        // x^3 = 1 over F_7: the three cube roots of unity
        assert_eq!(exact_root_count(prime(7), &[1, 6], &[3, 0]), 3);
        // x = 1
        assert_eq!(exact_root_count(prime(7), &[1, 6], &[1, 0]), 1);
        // x^2 = -1 over F_7: none, -1 is a non-square
        assert_eq!(exact_root_count(prime(7), &[1, 1], &[2, 0]), 0);
        // negative exponents are fine on units: x + x^{-1} = 0 over F_13
        assert_eq!(exact_root_count(prime(13), &[1, 1], &[1, -1]), 2);
    }

    #[test]
    fn hypothesis_check_examples() {
        let f = SparsePoly::new(prime(7), 0, &[(1, 1), (1, 2)]).unwrap();
        let h = check_sparse_hypotheses(&f, 0.5);
        assert!(h.hyp_i);
        assert!((h.hyp_i_ratio - 1.0 / 7.0).abs() < 1e-12);
        assert!(h.hyp_ii);

        let f = SparsePoly::new(prime(13), 0, &[(1, 2), (1, 4)]).unwrap();
        let h = check_sparse_hypotheses(&f, 0.5);
        assert!(!h.hyp_ii); // gcd(2, 4, 12) = 2

        // exponent gap (p-1)/2 puts the ratio near one half
        let f = SparsePoly::new(prime(13), 0, &[(1, 1), (1, 7)]).unwrap();
        let h = check_sparse_hypotheses(&f, 0.4);
        assert!(!h.hyp_i);
        assert!((h.hyp_i_ratio - 6.0 / 13.0).abs() < 1e-12);
    }

    #[test]
    fn bound_report_binomial_example() {
        // X + 3X^5 over F_7
        let f = SparsePoly::new(prime(7), 0, &[(1, 1), (3, 5)]).unwrap();
        let r = bound_report(&f, 0.1, DEFAULT_ORACLE_LIMIT);
        assert_eq!(r.d, Some(1));
        assert_eq!(r.e, Some(2));
        assert_eq!(r.bin_exact_lb, Some(2));
        assert_eq!(r.bin_thm_quantity, Some(7.0));
        assert_eq!(r.v_exact, Some(3));
        assert_eq!(r.n_exact, Some(17));
        assert_eq!(r.cauchy_lb, Some(3)); // ceil(49/17)
        assert_eq!(r.sqrt_lb, Some(3));
        assert_eq!(r.trivial_lb, 2); // ceil(7/5)
    }

    #[test]
    fn bound_report_identity_and_quartic() {
        let f = SparsePoly::new(prime(11), 0, &[(1, 1)]).unwrap();
        let r = bound_report(&f, 0.1, DEFAULT_ORACLE_LIMIT);
        assert_eq!(r.trivial_lb, 11);
        assert_eq!(r.v_exact, Some(11));
        assert!(r.d.is_none());
        assert!(r.sparse_thm_quantity.is_none()); // t = 1

        // X - X^4 is X + 6X^4, still the binomial shape
        let f = SparsePoly::new(prime(7), 0, &[(1, 1), (6, 4)]).unwrap();
        let r = bound_report(&f, 0.1, DEFAULT_ORACLE_LIMIT);
        assert_eq!(r.v_exact, Some(4));
        assert_eq!(r.cauchy_lb, Some(3));
        assert_eq!(r.trivial_lb, 2);
        assert_eq!(r.d, Some(2));
        assert_eq!(r.e, Some(3));
        assert_eq!(r.bin_exact_lb, Some(3));

        // constant offset or non-unit leading coefficient break the shape
        let f = SparsePoly::new(prime(7), 1, &[(1, 1), (6, 4)]).unwrap();
        assert!(bound_report(&f, 0.1, DEFAULT_ORACLE_LIMIT).d.is_none());
        let f = SparsePoly::new(prime(7), 0, &[(2, 1), (6, 4)]).unwrap();
        assert!(bound_report(&f, 0.1, DEFAULT_ORACLE_LIMIT).d.is_none());
    }

    #[test]
    fn bound_report_beyond_oracle_limit_omits_exact_fields() {
        let f = SparsePoly::new(prime(101), 0, &[(1, 1), (5, 17)]).unwrap();
        let r = bound_report(&f, 0.1, 50);
        assert!(r.v_exact.is_none());
        assert!(r.n_exact.is_none());
        assert!(r.cauchy_lb.is_none());
        assert_eq!(r.d, Some(1)); // formula fields stay
    }

    #[test]
    fn exact_invariants_hold_on_oracle_values() {
        // V >= every exact lower bound, on a small assorted family
        for pv in [7u64, 13, 31] {
            let p = prime(pv);
            for n in 2..=p.units() {
                for a in 1..p.get() {
                    let f = SparsePoly::new_raw(p, 0, &[(1, 1), (a, n)]);
                    let f = match f {
                        Ok(f) if f.t() == 2 => f,
                        _ => continue, // a X^n collapsed into X
                    };
                    let r = bound_report(&f, 0.1, DEFAULT_ORACLE_LIMIT);
                    let v = r.v_exact.unwrap();
                    assert!(v >= r.trivial_lb, "trivial p={pv} n={n} a={a}");
                    assert!(v >= r.cauchy_lb.unwrap(), "cauchy p={pv} n={n} a={a}");
                    if let Some(lb) = r.bin_exact_lb {
                        assert!(v >= lb, "binomial p={pv} n={n} a={a}");
                    }
                }
            }
        }
    }
}
