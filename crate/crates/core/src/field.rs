//! Arithmetic over `Z` and the prime field `F_p`.
//!
//! Residues are kept in the canonical range `[0, p-1]` everywhere; signed
//! values appear only in balanced-residue exponent vectors. All intermediate
//! products go through `u128`, so any modulus below `2^31` is safe.

use alloc::vec::Vec;
use core::fmt;

/// Exclusive upper bound on field sizes. Desk scale: enumeration over the
/// whole field has to stay feasible, and `u128` intermediates must not wrap.
pub const MAX_PRIME: u64 = 1 << 31;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldError {
    /// The modulus is below 3.
    TooSmall(u64),
    /// The modulus is at or above [`MAX_PRIME`].
    TooLarge(u64),
    /// The modulus failed the deterministic primality check.
    NotPrime(u64),
    /// A unit-only operation was given the zero residue.
    ZeroResidue,
}

impl fmt::Display for FieldError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldError::TooSmall(p) => write!(f, "{p} is smaller than 3"),
            FieldError::TooLarge(p) => write!(f, "{p} is at or above the 2^31 desk-scale limit"),
            FieldError::NotPrime(p) => write!(f, "{p} is not prime"),
            FieldError::ZeroResidue => write!(f, "operation is only defined on nonzero residues"),
        }
    }
}

impl core::error::Error for FieldError {}

/// An odd prime `3 <= p < 2^31`, verified by trial division at construction.
///
/// Constructing the modulus once up front removes a whole class of undefined
/// behavior from everything downstream: any `Prime` value can be trusted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Prime, FieldError> {
        if p < 3 {
            return Err(FieldError::TooSmall(p));
        }
        if p >= MAX_PRIME {
            return Err(FieldError::TooLarge(p));
        }
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(Prime(p))
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }

    /// Number of units, `p - 1`.
    #[inline]
    pub fn units(self) -> u64 {
        self.0 - 1
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Deterministic primality by trial division; exact for all `u64` inputs,
/// intended for `n < 2^31` where it is fast enough to sit in constructors.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Odd primes in `[lo, hi]`, ascending. 2 is skipped: every field size in
/// this crate is an odd prime.
pub fn odd_primes_in(lo: u64, hi: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut n = lo.max(3);
    if n.is_multiple_of(2) {
        n += 1;
    }
    while n <= hi {
        if is_prime(n) {
            out.push(n);
        }
        n += 2;
    }
    out
}

#[inline]
pub fn add_mod(a: u64, b: u64, p: Prime) -> u64 {
    debug_assert!(a < p.0 && b < p.0);
    let s = a + b;
    if s >= p.0 {
        s - p.0
    } else {
        s
    }
}

#[inline]
pub fn sub_mod(a: u64, b: u64, p: Prime) -> u64 {
    debug_assert!(a < p.0 && b < p.0);
    if a >= b {
        a - b
    } else {
        p.0 - b + a
    }
}

#[inline]
pub fn mul_mod(a: u64, b: u64, p: Prime) -> u64 {
    debug_assert!(a < p.0 && b < p.0);
    ((a as u128 * b as u128) % p.0 as u128) as u64
}

/// `base^exp mod p` by square-and-multiply. `pow_mod(b, 0, p) = 1` for every
/// `b`, including `b = 0`. Exponents are never reduced mod `p - 1` here:
/// only callers that know the base is a unit may do that, since `0^e` would
/// be corrupted by reduction.
pub fn pow_mod(base: u64, exp: u64, p: Prime) -> u64 {
    debug_assert!(base < p.0);
    let mut acc = 1u64;
    let mut b = base;
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, p);
        }
        e >>= 1;
        if e > 0 {
            b = mul_mod(b, b, p);
        }
    }
    acc
}

/// Greatest common divisor of two signed integers; `gcd(0, 0) = 0`.
pub fn gcd(a: i64, b: i64) -> u64 {
    let mut x = a.unsigned_abs();
    let mut y = b.unsigned_abs();
    while y != 0 {
        let r = x % y;
        x = y;
        y = r;
    }
    x
}

/// Modular inverse of `a` mod `m` for an arbitrary modulus `m >= 1`, in
/// `[0, m)`. `None` when `gcd(a, m) != 1`.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(m as i128) as u64)
}

/// Distinct prime factors of `n`, ascending, by trial division.
pub fn distinct_prime_factors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut m = n;
    let mut d = 2u64;
    while d * d <= m {
        if m.is_multiple_of(d) {
            out.push(d);
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if m > 1 {
        out.push(m);
    }
    out
}

/// Multiplicative order of a unit `a` in `F_p^*`: the least `m >= 1` with
/// `a^m = 1`. Always divides `p - 1`.
pub fn mult_order(a: u64, p: Prime) -> Result<u64, FieldError> {
    let a = a % p.0;
    if a == 0 {
        return Err(FieldError::ZeroResidue);
    }
    let mut order = p.units();
    for q in distinct_prime_factors(p.units()) {
        while order.is_multiple_of(q) && pow_mod(a, order / q, p) == 1 {
            order /= q;
        }
    }
    Ok(order)
}

/// Euler's criterion: is the unit `a` a square in `F_p^*`? The zero residue
/// is in neither class and is rejected; the caller decides what it means.
pub fn is_square(a: u64, p: Prime) -> Result<bool, FieldError> {
    let a = a % p.0;
    if a == 0 {
        return Err(FieldError::ZeroResidue);
    }
    Ok(pow_mod(a, p.units() / 2, p) == 1)
}

/// Balanced residue of `x` mod `m`: the representative `r = x (mod m)` with
/// `-m/2 < r <= m/2`.
pub fn signed_residue(x: i128, m: u64) -> i64 {
    assert!(m >= 2, "signed_residue needs a modulus >= 2");
    let r = x.rem_euclid(m as i128) as u64;
    if 2 * r > m {
        r as i64 - m as i64
    } else {
        r as i64
    }
}

/// Smallest primitive root of `p`.
pub fn primitive_root(p: Prime) -> u64 {
    let factors = distinct_prime_factors(p.units());
    let mut g = 2u64;
    loop {
        debug_assert!(g < p.0);
        if factors.iter().all(|&q| pow_mod(g, p.units() / q, p) != 1) {
            return g;
        }
        g += 1;
    }
}

/// Floor of the `k`-th root of `n`.
pub fn nth_root_floor(n: u64, k: u32) -> u64 {
    assert!(k >= 1);
    if k == 1 || n <= 1 {
        return n;
    }
    let mut r = libm::pow(n as f64, 1.0 / k as f64) as u64;
    // float seed, then correct to the exact floor
    while r > 0 && (r as u128).pow(k) > n as u128 {
        r -= 1;
    }
    while ((r + 1) as u128).pow(k) <= n as u128 {
        r += 1;
    }
    r
}

/// Smallest integer at or above `sqrt(n)`.
pub fn ceil_sqrt(n: u64) -> u64 {
    let r = n.isqrt();
    if r * r == n {
        r
    } else {
        r + 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: u64) -> Prime {
        Prime::new(v).unwrap()
    }

    #[test]
    fn prime_construction_rejects_bad_moduli() {
        assert_eq!(Prime::new(0), Err(FieldError::TooSmall(0)));
        assert_eq!(Prime::new(2), Err(FieldError::TooSmall(2)));
        assert_eq!(Prime::new(9), Err(FieldError::NotPrime(9)));
        assert_eq!(Prime::new(1 << 31), Err(FieldError::TooLarge(1 << 31)));
        assert_eq!(Prime::new(2147483647).unwrap().get(), 2147483647); // 2^31 - 1 is prime
        assert!(Prime::new(3).is_ok());
    }

    #[test]
    fn pow_mod_examples() {
        assert_eq!(pow_mod(3, 5, p(7)), 5); // 243 = 34*7 + 5
        assert_eq!(pow_mod(4, 1, p(11)), 4);
        assert_eq!(pow_mod(1, 987654, p(13)), 1);
        assert_eq!(pow_mod(0, 0, p(7)), 1); // convention for constant terms
        assert_eq!(pow_mod(0, 5, p(7)), 0);
    }

    #[test]
    fn fermat_exhaustive_small_primes() {
        for q in odd_primes_in(3, 100) {
            let q = p(q);
            for a in 1..q.get() {
                assert_eq!(pow_mod(a, q.units(), q), 1, "a={a} p={q}");
            }
        }
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd(5, 6), 1);
        assert_eq!(gcd(0, -7), 7);
        assert_eq!(gcd(0, 0), 0);
        assert_eq!(gcd(8, 10), 2); // p = 11: gcd(p-3, p-1)
        assert_eq!(gcd(-4, 6), 2);
    }

    #[test]
    fn mult_order_examples() {
        assert_eq!(mult_order(2, p(7)), Ok(3)); // 2, 4, 1
        assert_eq!(mult_order(1, p(101)), Ok(1));
        assert_eq!(mult_order(100, p(101)), Ok(2)); // (-1)^2 = 1
        assert_eq!(mult_order(0, p(7)), Err(FieldError::ZeroResidue));
    }

    #[test]
    fn mult_order_divides_group_order_and_is_minimal() {
        for q in [7u64, 13, 31, 97] {
            let q = p(q);
            for a in 1..q.get() {
                let ord = mult_order(a, q).unwrap();
                assert_eq!(q.units() % ord, 0);
                assert_eq!(pow_mod(a, ord, q), 1);
                for e in 1..ord {
                    assert_ne!(pow_mod(a, e, q), 1, "a={a} has exponent {e} below {ord}");
                }
            }
        }
    }

    #[test]
    fn is_square_matches_exhaustive_square_table() {
        for q in odd_primes_in(3, 200) {
            let q = p(q);
            let mut table = alloc::vec![false; q.get() as usize];
            for b in 1..q.get() {
                table[mul_mod(b, b, q) as usize] = true;
            }
            for a in 1..q.get() {
                assert_eq!(is_square(a, q).unwrap(), table[a as usize], "a={a} p={q}");
            }
        }
    }

    #[test]
    fn is_square_examples() {
        assert_eq!(is_square(2, p(7)), Ok(true)); // 3^2 = 2 mod 7
        assert_eq!(is_square(3, p(7)), Ok(false)); // squares mod 7 are {1,2,4}
        assert_eq!(is_square(1, p(101)), Ok(true));
        assert_eq!(is_square(0, p(7)), Err(FieldError::ZeroResidue));
    }

    #[test]
    fn signed_residue_examples() {
        assert_eq!(signed_residue(9, 10), -1); // p = 11: p-2 mod p-1
        assert_eq!(signed_residue(0, 6), 0);
        assert_eq!(signed_residue(7, 10), -3);
        assert_eq!(signed_residue(5, 10), 5); // right-closed interval
        assert_eq!(signed_residue(-5, 10), 5);
    }

    #[test]
    fn signed_residue_congruence_and_range() {
        let mut state = 0x9e3779b97f4a7c15u64;
        for _ in 0..2000 {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let x = (state >> 8) as i128 - (1i128 << 55);
            let m = 2 + (state % 1000);
            let r = signed_residue(x, m);
            assert_eq!((x - r as i128).rem_euclid(m as i128), 0, "x={x} m={m}");
            assert!(-(m as i64) < 2 * r && 2 * r <= m as i64, "r={r} m={m}");
        }
    }

    #[test]
    fn inv_mod_works_for_any_modulus() {
        assert_eq!(inv_mod(3, 10), Some(7));
        assert_eq!(inv_mod(4, 10), None);
        for m in 2..60u64 {
            for a in 1..m {
                match inv_mod(a, m) {
                    Some(inv) => assert_eq!(a * inv % m, 1, "a={a} m={m}"),
                    None => assert_ne!(gcd(a as i64, m as i64), 1),
                }
            }
        }
    }

    #[test]
    fn primitive_root_is_minimal() {
        assert_eq!(primitive_root(p(7)), 3);
        assert_eq!(primitive_root(p(13)), 2);
        assert_eq!(primitive_root(p(191)), 19);
        for q in odd_primes_in(3, 50) {
            let q = p(q);
            let g = primitive_root(q);
            assert_eq!(mult_order(g, q).unwrap(), q.units());
            for h in 2..g {
                assert_ne!(mult_order(h, q).unwrap(), q.units());
            }
        }
    }

    #[test]
    fn nth_root_floor_is_exact() {
        assert_eq!(nth_root_floor(12, 2), 3);
        assert_eq!(nth_root_floor(27, 3), 3);
        assert_eq!(nth_root_floor(26, 3), 2);
        assert_eq!(nth_root_floor(1, 5), 1);
        for n in 0..2000u64 {
            for k in 1..6u32 {
                let r = nth_root_floor(n, k);
                assert!((r as u128).pow(k) <= n as u128);
                assert!(((r + 1) as u128).pow(k) > n as u128 || n == 0);
            }
        }
    }

    #[test]
    fn ceil_sqrt_is_exact() {
        assert_eq!(ceil_sqrt(101), 11);
        assert_eq!(ceil_sqrt(100), 10);
        assert_eq!(ceil_sqrt(99), 10);
        assert_eq!(ceil_sqrt(3), 2);
    }
}
