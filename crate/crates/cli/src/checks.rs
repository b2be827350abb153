//! Named pass/fail counters and measured-ratio extremes, aggregated into a
//! machine-readable run manifest. Every asserted invariant in a sweep maps
//! to one named check; quantities with unknown implied constants are
//! tracked as extremes and reported, never asserted.

use serde::Serialize;
use std::collections::BTreeMap;

pub const MAX_EXAMPLES: usize = 10;

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct CheckSummary {
    pub name: String,
    pub passes: u64,
    pub failures: u64,
    /// First few failing instances, for diagnosis.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub examples: Vec<String>,
}

#[derive(Debug, Clone, Default)]
pub struct CheckSet {
    checks: BTreeMap<String, CheckSummary>,
}

impl CheckSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn record(&mut self, name: &str, ok: bool, detail: impl FnOnce() -> String) {
        let entry = self
            .checks
            .entry(name.to_string())
            .or_insert_with(|| CheckSummary {
                name: name.to_string(),
                passes: 0,
                failures: 0,
                examples: Vec::new(),
            });
        if ok {
            entry.passes += 1;
        } else {
            entry.failures += 1;
            if entry.examples.len() < MAX_EXAMPLES {
                entry.examples.push(detail());
            }
        }
    }

    /// Merges pre-aggregated counts (parallel workers fold their partial
    /// tallies through here).
    pub fn add_bulk(&mut self, name: &str, passes: u64, failures: u64, examples: &[String]) {
        let entry = self
            .checks
            .entry(name.to_string())
            .or_insert_with(|| CheckSummary {
                name: name.to_string(),
                passes: 0,
                failures: 0,
                examples: Vec::new(),
            });
        entry.passes += passes;
        entry.failures += failures;
        for e in examples {
            if entry.examples.len() >= MAX_EXAMPLES {
                break;
            }
            entry.examples.push(e.clone());
        }
    }

    /// Registers the check name so it appears in the manifest even when no
    /// instance exercised it.
    pub fn touch(&mut self, name: &str) {
        self.checks
            .entry(name.to_string())
            .or_insert_with(|| CheckSummary {
                name: name.to_string(),
                passes: 0,
                failures: 0,
                examples: Vec::new(),
            });
    }

    pub fn summaries(&self) -> Vec<CheckSummary> {
        self.checks.values().cloned().collect()
    }

    pub fn total_failures(&self) -> u64 {
        self.checks.values().map(|c| c.failures).sum()
    }

    pub fn get(&self, name: &str) -> Option<&CheckSummary> {
        self.checks.get(name)
    }
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct Extreme {
    pub value: f64,
    /// Which instance attained it.
    pub at: String,
}

/// Minima and maxima of measured ratios, keyed by ratio name.
#[derive(Debug, Clone, Default)]
pub struct RatioTracker {
    minima: BTreeMap<String, Extreme>,
    maxima: BTreeMap<String, Extreme>,
}

impl RatioTracker {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn record_min(&mut self, name: &str, value: f64, at: impl FnOnce() -> String) {
        match self.minima.get(name) {
            Some(e) if e.value <= value => {}
            _ => {
                self.minima
                    .insert(name.to_string(), Extreme { value, at: at() });
            }
        }
    }

    pub fn record_max(&mut self, name: &str, value: f64, at: impl FnOnce() -> String) {
        match self.maxima.get(name) {
            Some(e) if e.value >= value => {}
            _ => {
                self.maxima
                    .insert(name.to_string(), Extreme { value, at: at() });
            }
        }
    }

    pub fn minima(&self) -> &BTreeMap<String, Extreme> {
        &self.minima
    }

    pub fn maxima(&self) -> &BTreeMap<String, Extreme> {
        &self.maxima
    }
}

/// Everything a sweep reports besides its CSV rows.
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub command: String,
    /// Echo of the configuration that produced the run.
    pub config: serde_json::Value,
    pub instances: u64,
    pub instance_errors: u64,
    pub checks: Vec<CheckSummary>,
    pub ratio_minima: BTreeMap<String, Extreme>,
    pub ratio_maxima: BTreeMap<String, Extreme>,
    /// Instances flagged for manual review (measured ratios below the
    /// review threshold; not failures).
    pub review_flags: Vec<String>,
    pub wall_time_s: f64,
}

impl RunManifest {
    pub fn failed(&self) -> bool {
        self.checks.iter().any(|c| c.failures > 0)
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("manifest serializes")
    }

    /// Serialization with the wall-time field removed: the byte-stable part
    /// under a fixed seed and configuration.
    pub fn deterministic_json(&self) -> String {
        let mut value = serde_json::to_value(self).expect("manifest serializes");
        value
            .as_object_mut()
            .expect("manifest is an object")
            .remove("wall_time_s");
        serde_json::to_string_pretty(&value).expect("manifest serializes")
    }
}

/// Minimal CSV assembly: a versioned schema comment, a header row, then
/// data rows. Fields never contain commas (numbers, short enum words and
/// `;`-joined lists only), so no quoting is needed.
pub struct Csv {
    buf: String,
}

impl Csv {
    pub fn new(schema: &str, columns: &[&str]) -> Self {
        let mut buf = String::new();
        buf.push_str(&format!("# sparseval {schema}\n"));
        buf.push_str(&columns.join(","));
        buf.push('\n');
        Csv { buf }
    }

    pub fn row(&mut self, fields: &[String]) {
        debug_assert!(fields.iter().all(|f| !f.contains(',') && !f.contains('\n')));
        self.buf.push_str(&fields.join(","));
        self.buf.push('\n');
    }

    pub fn finish(self) -> String {
        self.buf
    }
}

/// Shorthand for optional numeric CSV fields.
pub fn opt_str<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}
