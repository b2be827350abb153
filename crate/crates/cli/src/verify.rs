//! Named verification suites, each an exhaustive or seeded desk-scale run
//! of one family of invariants. Exact inequalities are asserted (zero
//! tolerated failures); theorem quantities with unspecified constants are
//! measured and reported.

use crate::checks::{CheckSet, CheckSummary, Extreme, RatioTracker};
use crate::rng::{sample_laurent, sample_sparse, SplitMix64};
use crate::sweep::{self, Family, SweepConfig};
use rayon::prelude::*;
use sparseval_core::bounds::{
    exact_root_count, sparse_root_bound, RootBoundInput,
};
use sparseval_core::constructions;
use sparseval_core::factors;
use sparseval_core::field::{self, odd_primes_in, Prime};
use sparseval_core::poly::LaurentPoly;
use sparseval_core::reduction::{self, ReduceError};
use std::collections::BTreeMap;
use std::time::Instant;

pub const SUITES: [&str; 7] = [
    "cauchy",
    "binomial-exact",
    "corollary-sqrt",
    "constructions",
    "reduction",
    "factors",
    "rootbound",
];

/// Fixed seeds, one per seeded suite; changing any of these invalidates the
/// frozen regression expectations.
pub const CAUCHY_SEED: u64 = 101;
pub const REDUCTION_SEED: u64 = 108;
pub const FACTORS_SEED: u64 = 109;
pub const ROOTBOUND_SEED: u64 = 110;
pub const SPARSE_RATIO_SEED: u64 = 111;

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<CheckSummary>,
    pub ratio_minima: BTreeMap<String, Extreme>,
    pub ratio_maxima: BTreeMap<String, Extreme>,
    pub notes: Vec<String>,
    pub wall_time_s: f64,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.failures == 0)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "suite {}: {} ({:.2}s)\n",
            self.suite,
            if self.passed() { "PASS" } else { "FAIL" },
            self.wall_time_s
        ));
        for c in &self.checks {
            out.push_str(&format!(
                "  check {}: {} passes, {} failures\n",
                c.name, c.passes, c.failures
            ));
            for e in &c.examples {
                out.push_str(&format!("    counterexample: {e}\n"));
            }
        }
        for (name, e) in &self.ratio_minima {
            out.push_str(&format!("  min {} = {} at {}\n", name, e.value, e.at));
        }
        for (name, e) in &self.ratio_maxima {
            out.push_str(&format!("  max {} = {} at {}\n", name, e.value, e.at));
        }
        for n in &self.notes {
            out.push_str(&format!("  note: {n}\n"));
        }
        out
    }
}

pub fn run_suite(name: &str, jobs: Option<usize>) -> Option<SuiteReport> {
    let start = Instant::now();
    let mut checks = CheckSet::new();
    let mut ratios = RatioTracker::new();
    let mut notes = Vec::new();
    match name {
        "cauchy" => cauchy_sweep(&mut checks, &mut ratios),
        "binomial-exact" => {
            binomial_exhaustive(jobs, &mut checks, &mut ratios, &mut notes);
            // this suite gates the exact proof-level inequalities only
            retain_checks(
                &mut checks,
                &[
                    "binomial-exact-lb",
                    "collision-cap-reduced",
                    "collision-cap-degenerate-skipped",
                    "value-containment-reduced",
                    "cauchy-exact",
                    "trivial-degree",
                ],
            );
        }
        "corollary-sqrt" => {
            binomial_exhaustive(jobs, &mut checks, &mut ratios, &mut notes);
            retain_checks(&mut checks, &["corollary-sqrt"]);
        }
        "constructions" => {
            p2_safe_prime_cases(&mut checks);
            half_exponent_cases(&mut checks, 199);
            dpow_existence_cases(&mut checks, 17, 199);
        }
        "reduction" => reduction_sweep(&mut checks, &mut notes),
        "factors" => factor_sweep(jobs, &mut checks),
        "rootbound" => {
            rootbound_r2_exhaustive(jobs, &mut checks);
            rootbound_higher_order_measurement(&mut ratios);
        }
        _ => return None,
    }
    Some(SuiteReport {
        suite: name.to_string(),
        checks: checks.summaries(),
        ratio_minima: ratios.minima().clone(),
        ratio_maxima: ratios.maxima().clone(),
        notes,
        wall_time_s: start.elapsed().as_secs_f64(),
    })
}

fn retain_checks(checks: &mut CheckSet, keep: &[&str]) {
    let mut fresh = CheckSet::new();
    for c in checks.summaries() {
        if keep.contains(&c.name.as_str()) {
            fresh.add_bulk(&c.name, c.passes, c.failures, &c.examples);
        }
    }
    *checks = fresh;
}

/// 1000 seeded random sparse polynomials (t <= 4) over primes p <= 499:
/// the exact Cauchy inequality `V * N >= p^2`, zero failures.
pub fn cauchy_sweep(checks: &mut CheckSet, ratios: &mut RatioTracker) {
    let primes = odd_primes_in(3, 499);
    let mut rng = SplitMix64::new(CAUCHY_SEED);
    let instances: Vec<_> = (0..1000)
        .map(|_| {
            let p = primes[rng.below(primes.len() as u64) as usize];
            let t = 1 + rng.below(4) as usize;
            let f = sample_sparse(&mut rng, Prime::new(p).unwrap(), t);
            (p, f)
        })
        .collect();
    let stats: Vec<_> = instances
        .par_iter()
        .map(|(p, f)| (*p, f.value_set()))
        .collect();
    for ((p, f), (_, s)) in instances.iter().zip(&stats) {
        let v = s.distinct_values();
        let n = s.collision_count();
        let ok = (v as u128) * (n as u128) >= (*p as u128) * (*p as u128);
        checks.record("cauchy-exact", ok, || {
            format!("p={p} f=[{}]: V={v} N={n}", crate::polyfmt::format_sparse(f))
        });
        ratios.record_min("V*N/p^2", (v as f64) * (n as f64) / (*p as f64 * *p as f64), || {
            format!("p={p} f=[{}]", crate::polyfmt::format_sparse(f))
        });
    }
}

/// Exhaustive binomial run over all p <= 101, 2 <= n <= p-1, a in F_p^*,
/// reusing the sweep machinery (criteria: exact lower bounds, the square
/// root corollary, and the collision cap of the reduced polynomial).
pub fn binomial_exhaustive(
    jobs: Option<usize>,
    checks: &mut CheckSet,
    ratios: &mut RatioTracker,
    notes: &mut Vec<String>,
) {
    let cfg = SweepConfig {
        family: Family::Binomials,
        p_min: 3,
        p_max: 101,
        ..SweepConfig::default()
    };
    let out = sweep::run_sweep(&cfg, jobs).expect("binomial config is valid");
    for c in out.manifest.checks {
        checks.add_bulk(&c.name, c.passes, c.failures, &c.examples);
    }
    for (name, e) in out.manifest.ratio_minima {
        ratios.record_min(&name, e.value, || e.at.clone());
    }
    for (name, e) in out.manifest.ratio_maxima {
        ratios.record_max(&name, e.value, || e.at.clone());
    }
    notes.extend(out.manifest.review_flags);
}

/// `X + aX^{p-2}` equality and preimage profile on the pinned safe primes.
pub fn p2_safe_prime_cases(checks: &mut CheckSet) {
    for pv in [7u64, 11, 23, 47, 59, 83, 107] {
        let r = constructions::extremal_p2_binomial(Prime::new(pv).unwrap())
            .expect("listed primes are safe");
        checks.record("construction-p2-equality", r.actual_v == r.predicted_v, || {
            format!("p={pv}: V={} != {}", r.actual_v, r.predicted_v)
        });
        checks.record("construction-p2-profile", r.profile_ok == Some(true), || {
            format!("p={pv}: profile violated")
        });
    }
}

/// `X - X^{(p+1)/2}` for every odd prime up to `p_max`.
pub fn half_exponent_cases(checks: &mut CheckSet, p_max: u64) {
    for pv in odd_primes_in(3, p_max) {
        let r = constructions::half_exponent_binomial(Prime::new(pv).unwrap());
        checks.record("construction-half-equality", r.actual_v == r.predicted_v, || {
            format!("p={pv}: V={} != {}", r.actual_v, r.predicted_v)
        });
        checks.record("construction-half-profile", r.profile_ok == Some(true), || {
            format!("p={pv}: zero preimage or multiplicities violated")
        });
    }
}

/// d = 2 witness existence and oracle equality for every prime in
/// `[p_min, p_max]`; above the d^{2d} = 16 threshold existence is asserted.
pub fn dpow_existence_cases(checks: &mut CheckSet, p_min: u64, p_max: u64) {
    for pv in odd_primes_in(p_min, p_max) {
        match constructions::search_construction_a(Prime::new(pv).unwrap(), 2) {
            Ok(r) => {
                checks.record("construction-dpow2-found", true, String::new);
                checks.record("construction-dpow2-oracle", r.found, || {
                    format!("p={pv}: V={} != {}", r.actual_v, r.predicted_v)
                });
            }
            Err(e) => {
                checks.record("construction-dpow2-found", pv <= 16, || {
                    format!("p={pv}: {e}")
                });
            }
        }
    }
}

/// 500 seeded reduction-pipeline instances (p <= 499, t <= 4) with the
/// default budget: multiplier within budget, exact congruences, pigeonhole
/// side bound, and the exhaustive pointwise substitution identity.
pub fn reduction_sweep(checks: &mut CheckSet, notes: &mut Vec<String>) {
    let primes = odd_primes_in(5, 499);
    let mut rng = SplitMix64::new(REDUCTION_SEED);
    let mut skipped = 0u64;
    let mut instances = Vec::with_capacity(500);
    while instances.len() < 500 {
        let pv = primes[rng.below(primes.len() as u64) as usize];
        let p = Prime::new(pv).unwrap();
        let t = 1 + rng.below(4) as usize;
        let f = sample_sparse(&mut rng, p, t);
        // the criterion presumes the pipeline runs; a missing nonvanishing
        // multiplier (hypothesis badly violated) is resampled and counted
        if reduction::find_nonvanishing_c(&f).is_none() {
            skipped += 1;
            continue;
        }
        instances.push((pv, f));
    }
    if skipped > 0 {
        notes.push(format!("{skipped} instances without a nonvanishing c resampled"));
    }
    let results: Vec<_> = instances
        .par_iter()
        .map(|(pv, f)| {
            let p = Prime::new(*pv).unwrap();
            let budget = reduction::default_budget(p, f.t());
            (reduction::reduce_pipeline_with_budget(f, budget), budget)
        })
        .collect();
    for ((pv, f), (outcome, budget)) in instances.iter().zip(&results) {
        let at = || format!("p={pv} f=[{}]", crate::polyfmt::format_sparse(f));
        let r = match outcome {
            Ok(r) => r,
            Err(ReduceError::NoNonvanishingC) => unreachable!("filtered above"),
            Err(e) => {
                checks.record("reduction-pipeline-runs", false, || {
                    format!("{}: {e}", at())
                });
                continue;
            }
        };
        checks.record("reduction-pipeline-runs", true, String::new);
        checks.record("reduction-multiplier-within-budget", r.s >= 1 && r.s <= *budget, || {
            format!("{}: s={} budget={budget}", at(), r.s)
        });
        let pm1 = *pv as i128 - 1;
        let congruent = f
            .exponents()
            .iter()
            .zip(&r.m)
            .all(|(&n, &m)| (r.s as i128 * n as i128 - m as i128).rem_euclid(pm1) == 0);
        checks.record("reduction-congruence", congruent, || {
            format!("{}: s*n_i != m_i (mod p-1)", at())
        });
        checks.record("reduction-side-bound", r.max_abs <= r.side_bound, || {
            format!("{}: max|m|={} > {}", at(), r.max_abs, r.side_bound)
        });
        // explicit exhaustive identity pass (also asserted inside the
        // pipeline for p <= 499; running it here makes the count visible)
        reduction::verify_substitution_identity(f, r);
        checks.record("reduction-substitution-identity", true, String::new);
    }
}

/// 200 seeded Laurent polynomials over p <= 199: pointwise brute-force
/// factor scans agree with the algebraic subgroup/coset predictions, the
/// antidiagonal set is a single coset, and the exceptional pair count
/// matches a quadratic enumeration.
pub fn factor_sweep(jobs: Option<usize>, checks: &mut CheckSet) {
    let primes = odd_primes_in(5, 199);
    let mut rng = SplitMix64::new(FACTORS_SEED);
    let instances: Vec<LaurentPoly> = (0..200)
        .map(|i| {
            let p = primes[rng.below(primes.len() as u64) as usize];
            let t = 2 + rng.below(3) as usize;
            sample_laurent(&mut rng, Prime::new(p).unwrap(), t, i % 2 == 1)
        })
        .collect();
    let outcomes: Vec<_> = sweep::with_pool(jobs, || {
        instances
            .par_iter()
            .map(|g| {
                let ef = factors::scan(g);
                let (brute_diag, brute_anti, brute_n0) = brute_factor_reference(g, &ef);
                (ef, brute_diag, brute_anti, brute_n0)
            })
            .collect::<Vec<_>>()
    });
    for (g, (ef, brute_diag, brute_anti, brute_n0)) in instances.iter().zip(&outcomes) {
        let at = || format!("p={} g=[{}]", g.p(), crate::polyfmt::format_laurent(g));
        checks.record("factors-diag-brute-agreement", ef.diag == *brute_diag, || {
            format!("{}: algebraic {:?} vs pointwise {:?}", at(), ef.diag, brute_diag)
        });
        checks.record("factors-anti-brute-agreement", ef.anti == *brute_anti, || {
            format!("{}: algebraic {:?} vs pointwise {:?}", at(), ef.anti, brute_anti)
        });
        let coset_ok = if ef.anti.is_empty() {
            true
        } else {
            ef.anti.len() == ef.diag.len() && {
                let rep = ef.anti[0];
                let inv_rep = field::inv_mod(rep, g.p().get()).unwrap();
                ef.anti.iter().all(|&alpha| {
                    ef.diag
                        .binary_search(&field::mul_mod(alpha, inv_rep, g.p()))
                        .is_ok()
                })
            }
        };
        checks.record("factors-anti-single-coset", coset_ok, || {
            format!("{}: anti {:?} not a coset of diag {:?}", at(), ef.anti, ef.diag)
        });
        checks.record("factors-n0-brute-agreement", ef.n0 == *brute_n0, || {
            format!("{}: N0={} vs pointwise {}", at(), ef.n0, brute_n0)
        });
        let total = g.value_set().collision_count();
        checks.record("factors-n0-within-total", ef.n0 <= total, || {
            format!("{}: N0={} > N={total}", at(), ef.n0)
        });
    }
}

/// Pointwise reference scans over value tables, the oracle side of the
/// factor checks: O(p^2) per polynomial.
fn brute_factor_reference(
    g: &LaurentPoly,
    ef: &factors::ExceptionalFactors,
) -> (Vec<u64>, Vec<u64>, u64) {
    let p = g.p();
    let pv = p.get();
    let mut table = vec![0u64; pv as usize];
    for x in 1..pv {
        table[x as usize] = g.eval_unit(x);
    }
    // inverse table via inv(i) = -(p/i) * inv(p mod i)
    let mut inv = vec![0u64; pv as usize];
    inv[1] = 1;
    for i in 2..pv {
        inv[i as usize] = field::mul_mod(pv - pv / i, inv[(pv % i) as usize], p);
    }
    let diag: Vec<u64> = (1..pv)
        .filter(|&alpha| {
            (1..pv).all(|x| table[field::mul_mod(alpha, x, p) as usize] == table[x as usize])
        })
        .collect();
    let anti: Vec<u64> = (1..pv)
        .filter(|&alpha| {
            (1..pv).all(|x| {
                table[field::mul_mod(alpha, inv[x as usize], p) as usize] == table[x as usize]
            })
        })
        .collect();
    let mut n0 = 0u64;
    for x in 1..pv {
        for y in 1..pv {
            if table[x as usize] != table[y as usize] {
                continue;
            }
            let ratio = field::mul_mod(x, inv[y as usize], p);
            let product = field::mul_mod(x, y, p);
            if ef.diag.binary_search(&ratio).is_ok() || ef.anti.binary_search(&product).is_ok() {
                n0 += 1;
            }
        }
    }
    (diag, anti, n0)
}

/// Exhaustive r = 2 root-bound sweep over p <= 101: every equation
/// `x^{k1} + c x^{k2} = 0` (unit scaling makes the first coefficient 1
/// without loss) has at most `2D` roots; the table counter is tied to the
/// generic oracle on a subsample.
pub fn rootbound_r2_exhaustive(jobs: Option<usize>, checks: &mut CheckSet) {
    let primes = odd_primes_in(3, 101);
    // per prime: equations checked, oracle ties checked, failing
    // (k1, k2, c, is_tie_failure) tuples
    type PrimeTally = (u64, u64, Vec<(u64, u64, u64, bool)>);
    let per_prime: Vec<PrimeTally> = sweep::with_pool(jobs, || {
        primes
            .par_iter()
            .map(|&pv| {
                let p = Prime::new(pv).unwrap();
                let mut failures: Vec<(u64, u64, u64, bool)> = Vec::new();
                let mut count_checked = 0u64;
                let mut tie_checked = 0u64;
                let mut index = 0u64;
                for k1 in 1..=pv - 1 {
                    let pw1: Vec<u64> = (0..pv).map(|x| field::pow_mod(x, k1, p)).collect();
                    for k2 in k1 + 1..=pv - 1 {
                        let pw2: Vec<u64> = (0..pv).map(|x| field::pow_mod(x, k2, p)).collect();
                        let d = field::gcd(k2 as i64 - k1 as i64, pv as i64 - 1);
                        for c in 1..pv {
                            let mut roots = 0u64;
                            for x in 1..pv {
                                if field::add_mod(
                                    pw1[x as usize],
                                    field::mul_mod(c, pw2[x as usize], p),
                                    p,
                                ) == 0
                                {
                                    roots += 1;
                                }
                            }
                            count_checked += 1;
                            if roots > 2 * d {
                                failures.push((k1, k2, c, false));
                            }
                            // tie the table counter to the generic oracle
                            if index.is_multiple_of(9973) {
                                tie_checked += 1;
                                let oracle = exact_root_count(
                                    p,
                                    &[1, c],
                                    &[k1 as i64, k2 as i64],
                                );
                                if oracle != roots {
                                    failures.push((k1, k2, c, true));
                                }
                            }
                            index += 1;
                        }
                    }
                }
                (count_checked, tie_checked, failures)
            })
            .collect()
    });
    for ((count_checked, tie_checked, failures), pv) in per_prime.iter().zip(&primes) {
        let cap_failures: Vec<String> = failures
            .iter()
            .filter(|f| !f.3)
            .map(|&(k1, k2, c, _)| format!("p={pv} k1={k1} k2={k2} c={c}"))
            .collect();
        let tie_failures: Vec<String> = failures
            .iter()
            .filter(|f| f.3)
            .map(|&(k1, k2, c, _)| format!("p={pv} k1={k1} k2={k2} c={c}"))
            .collect();
        checks.add_bulk(
            "rootbound-r2-cap",
            count_checked - cap_failures.len() as u64,
            cap_failures.len() as u64,
            &cap_failures,
        );
        checks.add_bulk(
            "rootbound-oracle-tie",
            tie_checked - tie_failures.len() as u64,
            tie_failures.len() as u64,
            &tie_failures,
        );
    }
}

/// Seeded r = 3, 4 instances: the constant C in
/// `roots <= main + C * secondary` is measured and reported, never assumed.
///
/// Random exponent vectors almost always have a tiny gcd parameter D, so
/// half the instances are structured: all exponents share a large divisor
/// of `p - 1`, pushing D up to where the bound could actually bind.
pub fn rootbound_higher_order_measurement(ratios: &mut RatioTracker) {
    let primes = odd_primes_in(11, 199);
    let mut rng = SplitMix64::new(ROOTBOUND_SEED);
    for r in [3usize, 4] {
        let name = format!("rootbound-C-r{r}");
        // the measurement must appear even if no instance needs C > 0
        ratios.record_max(&name, 0.0, || "baseline".to_string());
        for i in 0..400 {
            let pv = primes[rng.below(primes.len() as u64) as usize];
            let p = Prime::new(pv).unwrap();
            let exps = if i % 2 == 0 {
                sample_distinct_exponents(&mut rng, p, r, 1)
            } else {
                // largest divisor of p-1 leaving at least r distinct
                // residue classes for the exponents
                let g = (1..=p.units() / r as u64)
                    .rev()
                    .find(|&g| p.units() % g == 0)
                    .unwrap_or(1);
                sample_distinct_exponents(&mut rng, p, r, g)
            };
            let coeffs: Vec<u64> = (0..r).map(|_| rng.range(1, pv - 1)).collect();
            let input = RootBoundInput::new(p, &coeffs, &exps);
            let terms = sparse_root_bound(&input);
            let roots = exact_root_count(p, &coeffs, &exps);
            if (roots as f64) > terms.main {
                let c = (roots as f64 - terms.main) / terms.secondary;
                ratios.record_max(&name, c, || {
                    format!("p={pv} exps={exps:?} coeffs={coeffs:?} D={}", input.d_param())
                });
            }
        }
    }
}

/// Distinct exponents that are multiples of `stride`, balanced mod `p - 1`.
fn sample_distinct_exponents(rng: &mut SplitMix64, p: Prime, r: usize, stride: u64) -> Vec<i64> {
    let classes = p.units() / stride;
    let mut exps: Vec<i64> = Vec::with_capacity(r);
    while exps.len() < r {
        let e = field::signed_residue((rng.below(classes) * stride) as i128, p.units());
        if !exps.contains(&e) {
            exps.push(e);
        }
    }
    exps
}
