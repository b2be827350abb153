//! JSON payloads for the single-object commands. Binomial-only and
//! oracle-dependent fields are omitted (not null) when inapplicable.

use crate::polyfmt;
use serde::Serialize;
use sparseval_core::bounds::BoundReport;
use sparseval_core::constructions::ConstructionResult;
use sparseval_core::factors::ExceptionalFactors;
use sparseval_core::poly::{Domain, LaurentPoly, ValueSetStats};
use sparseval_core::reduction::ReductionResult;

#[derive(Serialize)]
pub struct HistEntry {
    pub value: u64,
    pub preimage_size: u32,
}

#[derive(Serialize)]
pub struct ValueSetReport {
    pub p: u64,
    pub domain: &'static str,
    pub v: u64,
    pub n: u64,
    pub cauchy_lb: u64,
    /// Largest preimages first (ties by value), at most `top` entries.
    pub hist_top: Vec<HistEntry>,
    pub distinct_preimage_sizes: Vec<u32>,
}

impl ValueSetReport {
    pub fn new(stats: &ValueSetStats, top: usize) -> Self {
        let mut entries: Vec<(u64, u32)> = stats.hist().collect();
        entries.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
        let mut sizes: Vec<u32> = stats.profile().keys().copied().collect();
        sizes.sort_unstable();
        ValueSetReport {
            p: stats.p(),
            domain: match stats.domain() {
                Domain::FullField => "full-field",
                Domain::Units => "units",
            },
            v: stats.distinct_values(),
            n: stats.collision_count(),
            cauchy_lb: stats.cauchy_lower_bound(),
            hist_top: entries
                .into_iter()
                .take(top)
                .map(|(value, preimage_size)| HistEntry {
                    value,
                    preimage_size,
                })
                .collect(),
            distinct_preimage_sizes: sizes,
        }
    }
}

#[derive(Serialize)]
pub struct BoundReportJson {
    pub p: u64,
    pub t: usize,
    pub deg: u64,
    pub trivial_lb: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub v_exact: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_exact: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cauchy_lb: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub e: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r_witness: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s_witness: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bin_exact_lb: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bin_thm_quantity: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sqrt_lb: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sparse_thm_quantity: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hyp_i: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hyp_i_ratio: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hyp_ii: Option<bool>,
}

impl From<&BoundReport> for BoundReportJson {
    fn from(r: &BoundReport) -> Self {
        BoundReportJson {
            p: r.p,
            t: r.t,
            deg: r.deg,
            trivial_lb: r.trivial_lb,
            v_exact: r.v_exact,
            n_exact: r.n_exact,
            cauchy_lb: r.cauchy_lb,
            d: r.d,
            e: r.e,
            r_witness: r.r_witness,
            s_witness: r.s_witness,
            bin_exact_lb: r.bin_exact_lb,
            bin_thm_quantity: r.bin_thm_quantity,
            sqrt_lb: r.sqrt_lb,
            sparse_thm_quantity: r.sparse_thm_quantity,
            hyp_i: r.hyp_i,
            hyp_i_ratio: r.hyp_i_ratio,
            hyp_ii: r.hyp_ii,
        }
    }
}

#[derive(Serialize)]
pub struct ReduceReport {
    pub s: u64,
    #[serde(rename = "S")]
    pub budget: u64,
    pub c: u64,
    pub m: Vec<i64>,
    pub max_m: u64,
    pub side_bound: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g: Option<String>,
    pub constant: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub constant_value: Option<u64>,
    pub flipped: bool,
}

impl From<&ReductionResult> for ReduceReport {
    fn from(r: &ReductionResult) -> Self {
        ReduceReport {
            s: r.s,
            budget: r.cap,
            c: r.c,
            m: r.m.clone(),
            max_m: r.max_abs,
            side_bound: r.side_bound,
            g: r.g.as_ref().map(polyfmt::format_laurent),
            constant: r.is_constant(),
            constant_value: r.constant,
            flipped: r.flipped,
        }
    }
}

#[derive(Serialize)]
pub struct FactorsReport {
    pub p: u64,
    pub diag: Vec<u64>,
    pub anti: Vec<u64>,
    pub subgroup_order: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coset_rep: Option<u64>,
    pub n0: u64,
    pub n: u64,
    pub deg_bound_quantity: f64,
}

impl FactorsReport {
    pub fn new(g: &LaurentPoly, ef: &ExceptionalFactors) -> Self {
        FactorsReport {
            p: g.p().get(),
            diag: ef.diag.clone(),
            anti: ef.anti.clone(),
            subgroup_order: ef.diag_subgroup_order,
            coset_rep: ef.anti_coset_rep,
            n0: ef.n0,
            n: g.value_set().collision_count(),
            deg_bound_quantity: sparseval_core::factors::deg_bound_quantity(g),
        }
    }
}

#[derive(Serialize)]
pub struct ConstructReport {
    pub kind: &'static str,
    pub p: u64,
    pub f: String,
    pub predicted_v: u64,
    pub actual_v: u64,
    pub found: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<u64>,
    pub below_guarantee: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub profile_ok: Option<bool>,
}

impl ConstructReport {
    pub fn new(kind: &'static str, r: &ConstructionResult) -> Self {
        ConstructReport {
            kind,
            p: r.f.p().get(),
            f: polyfmt::format_sparse(&r.f),
            predicted_v: r.predicted_v,
            actual_v: r.actual_v,
            found: r.found,
            witness: r.witness,
            below_guarantee: r.below_guarantee,
            profile_ok: r.profile_ok,
        }
    }
}
