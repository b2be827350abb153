//! Command-line surface, sweep orchestration and machine-readable
//! reporting on top of the `sparseval-core` computations.

pub mod checks;
pub mod config;
pub mod polyfmt;
pub mod report;
pub mod rng;
pub mod sweep;
pub mod verify;

use sparseval_core::bounds::DEFAULT_ORACLE_LIMIT;

pub const ORACLE_LIMIT_ENV: &str = "SPARSEVAL_ORACLE_LIMIT";

/// Default oracle ceiling, overridable through the environment.
pub fn default_oracle_limit() -> u64 {
    std::env::var(ORACLE_LIMIT_ENV)
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_ORACLE_LIMIT)
}

/// Process exit codes: 0 pass, 1 invariant failure, 2 usage or parse
/// error, 3 resource limit exceeded.
pub mod exit_code {
    pub const PASS: i32 = 0;
    pub const INVARIANT_FAILURE: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const RESOURCE_LIMIT: i32 = 3;
}
