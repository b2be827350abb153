//! Cross-module properties on randomized and exhaustive desk-scale
//! families. A tiny local generator keeps the instances frozen.

use sparseval_core::bounds::binomial_r_s_witnesses;
use sparseval_core::field::{self, odd_primes_in, Prime};
use sparseval_core::poly::SparsePoly;
use sparseval_core::reduction::{
    dirichlet_reduce, find_nonvanishing_c, reduce_pipeline, substitute, Substituted,
};
use sparseval_core::constructions::search_construction_a;

struct Rng(u64);

impl Rng {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    fn below(&mut self, n: u64) -> u64 {
        self.next() % n
    }
}

fn random_sparse(rng: &mut Rng, p: Prime, t: usize) -> SparsePoly {
    let max_exp = p.get() - 2;
    let t = t.min(max_exp as usize).max(1);
    let mut exps: Vec<u64> = Vec::new();
    while exps.len() < t {
        let e = 1 + rng.below(max_exp);
        if !exps.contains(&e) {
            exps.push(e);
        }
    }
    let terms: Vec<(u64, u64)> = exps
        .into_iter()
        .map(|e| (1 + rng.below(p.get() - 1), e))
        .collect();
    SparsePoly::new(p, rng.below(p.get()), &terms).unwrap()
}

#[test]
fn cauchy_inequality_randomized() {
    let primes = odd_primes_in(3, 499);
    let mut rng = Rng(2024);
    for _ in 0..300 {
        let p = Prime::new(primes[rng.below(primes.len() as u64) as usize]).unwrap();
        let t = 1 + rng.below(4) as usize;
        let f = random_sparse(&mut rng, p, t);
        let s = f.value_set();
        let lhs = s.distinct_values() as u128 * s.collision_count() as u128;
        assert!(lhs >= (p.get() as u128).pow(2), "p={p} f={f:?}");
        // equality exactly when all preimages have equal size
        let profile = s.profile();
        if lhs == (p.get() as u128).pow(2) {
            assert_eq!(profile.len(), 1, "equality must mean uniform fibers");
        }
    }
}

#[test]
fn dirichlet_guarantee_on_random_vectors() {
    // 500 random (p, exponent vector, budget) triples: congruences exact,
    // winner within the pigeonhole box side
    let primes = odd_primes_in(3, 499);
    let mut rng = Rng(77);
    for _ in 0..500 {
        let p = Prime::new(primes[rng.below(primes.len() as u64) as usize]).unwrap();
        let t = 1 + rng.below(4) as usize;
        let exps: Vec<u64> = (0..t).map(|_| 1 + rng.below(p.get() - 2)).collect();
        let cap = 1 + rng.below(p.get());
        let r = dirichlet_reduce(&exps, p, cap);
        assert!(r.s >= 1 && r.s <= cap);
        for (&n, &m) in exps.iter().zip(&r.m) {
            let diff = r.s as i128 * n as i128 - m as i128;
            assert_eq!(diff.rem_euclid(p.units() as i128), 0, "p={p} n={n}");
        }
        assert!(r.max_abs <= r.side_bound, "p={p} exps={exps:?} cap={cap}");
    }
}

#[test]
fn substitution_term_count_matches_distinct_residues() {
    // with a nonvanishing multiplier, no collected coefficient cancels:
    // the reduced polynomial has exactly one term per distinct residue
    // (counting the constant bucket when some residue is zero)
    let primes = odd_primes_in(5, 199);
    let mut rng = Rng(4242);
    for _ in 0..300 {
        let p = Prime::new(primes[rng.below(primes.len() as u64) as usize]).unwrap();
        let t = 1 + rng.below(4) as usize;
        let mut f = random_sparse(&mut rng, p, t);
        // the nonvanishing condition concerns the monomial masses only
        f = SparsePoly::new(
            p,
            0,
            &f.terms()
                .iter()
                .map(|term| (term.coeff, term.exp))
                .collect::<Vec<_>>(),
        )
        .unwrap();
        let c = match find_nonvanishing_c(&f) {
            Some(c) => c,
            None => continue,
        };
        let s = 1 + rng.below(p.units());
        let mut residues: Vec<i64> = f
            .exponents()
            .iter()
            .map(|&n| field::signed_residue(s as i128 * n as i128, p.units()))
            .collect();
        residues.sort_unstable();
        residues.dedup();
        match substitute(&f, c, s) {
            Substituted::Laurent { g, .. } => {
                let has_zero = residues.contains(&0);
                let expected_terms = residues.len() - has_zero as usize;
                assert_eq!(g.t(), expected_terms, "p={p} s={s} c={c} f={f:?}");
                if has_zero {
                    assert_ne!(g.a0(), 0, "zero-residue mass must not cancel");
                }
            }
            Substituted::Constant(value) => {
                assert_eq!(residues, [0]);
                assert_ne!(value, 0);
            }
        }
    }
}

#[test]
fn reduction_value_set_containment() {
    // values of the reduced polynomial on units are values of f on units
    let primes = odd_primes_in(5, 199);
    let mut rng = Rng(31337);
    for _ in 0..150 {
        let p = Prime::new(primes[rng.below(primes.len() as u64) as usize]).unwrap();
        let t = 2 + rng.below(3) as usize;
        let f = random_sparse(&mut rng, p, t);
        let r = match reduce_pipeline(&f) {
            Ok(r) => r,
            Err(_) => continue,
        };
        let f_units = f.value_set_units();
        match &r.g {
            Some(g) => {
                let g_stats = g.value_set();
                for (value, _) in g_stats.hist() {
                    assert!(
                        f_units.preimage_size(value) > 0,
                        "p={p}: value {value} of g missing from f's unit image"
                    );
                }
                assert!(f_units.distinct_values() >= g_stats.distinct_values());
            }
            None => {
                let value = r.constant.unwrap();
                assert!(f_units.preimage_size(value) > 0);
            }
        }
    }
}

#[test]
fn binomial_witness_collision_cap_spot_checks() {
    // the proof-level cap on the reduced binomial u^r + a u^d, away from
    // the exhaustive sweep range
    for (pv, n) in [(211u64, 15u64), (307, 100), (499, 38), (677, 26)] {
        let p = Prime::new(pv).unwrap();
        let w = binomial_r_s_witnesses(n, p);
        if w.d * w.d > pv {
            continue;
        }
        for a in [1u64, 2, pv / 2, pv - 2] {
            if let Ok(g) = SparsePoly::new_raw(p, 0, &[(1, w.r), (a, w.d)]) {
                assert!(
                    g.value_set().collision_count() <= w.collision_cap(p),
                    "p={pv} n={n} a={a}"
                );
            }
        }
    }
}

#[test]
fn dpow_existence_beyond_guarantee_threshold() {
    // the d = 3 existence guarantee kicks in at p > 3^6 = 729: every prime
    // 1 mod 3 in (729, 1200] must yield a witness whose value set matches
    for pv in odd_primes_in(730, 1200) {
        if (pv - 1) % 3 != 0 {
            continue;
        }
        let r = search_construction_a(Prime::new(pv).unwrap(), 3)
            .unwrap_or_else(|e| panic!("p={pv}: {e}"));
        assert!(r.found, "p={pv}: oracle mismatch");
        assert!(!r.below_guarantee);
    }
}

#[test]
fn trivial_degree_bound_holds_for_raw_degrees() {
    // the literal-degree fiber bound stays valid when exponents exceed p-2
    let p = Prime::new(31).unwrap();
    for (a0, terms) in [
        (0u64, vec![(1u64, 40u64)]),
        (5, vec![(3, 7), (2, 62)]),
        (1, vec![(1, 1), (30, 35), (17, 90)]),
    ] {
        let f = SparsePoly::new_raw(p, a0, &terms).unwrap();
        let v = f.value_set().distinct_values();
        let trivial = p.get().div_ceil(f.degree());
        assert!(v >= trivial, "f={f:?}: V={v} < {trivial}");
    }
}
