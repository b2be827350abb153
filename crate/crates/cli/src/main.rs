use clap::{Args, Parser, Subcommand};
use sparseval::checks::RunManifest;
use sparseval::exit_code;
use sparseval::polyfmt::{self, ParseError};
use sparseval::report::{
    BoundReportJson, ConstructReport, FactorsReport, ReduceReport, ValueSetReport,
};
use sparseval::sweep::{self, Family, SweepConfig, SweepError};
use sparseval::{config, default_oracle_limit, verify};
use sparseval_core::bounds::{self, DEFAULT_GCD_THRESHOLD};
use sparseval_core::constructions;
use sparseval_core::field::Prime;
use sparseval_core::poly::ValueSetStats;
use sparseval_core::reduction;
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "sparseval",
    version,
    about = "Exact value sets, reductions and bound checks for sparse polynomials over prime fields"
)]
struct Cli {
    /// Worker threads for sweeps (default: all cores). Output content never
    /// depends on this.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact value-set statistics of one polynomial.
    Valueset {
        /// Polynomial spec, e.g. "7: x + 3*x^5"; negative exponents switch
        /// to the Laurent reading (units domain).
        #[arg(long)]
        poly: String,
        #[arg(long, default_value_t = default_oracle_limit())]
        oracle_limit: u64,
        /// How many of the largest preimages to list.
        #[arg(long, default_value_t = 10)]
        top: usize,
    },
    /// Every applicable lower-bound quantity, with exact oracle values
    /// while p stays within the oracle limit.
    Bounds {
        #[arg(long)]
        poly: String,
        /// Threshold for the exponent-difference gcd hypothesis.
        #[arg(long, default_value_t = DEFAULT_GCD_THRESHOLD)]
        ct: f64,
        #[arg(long, default_value_t = default_oracle_limit())]
        oracle_limit: u64,
    },
    /// Pigeonhole exponent reduction and substitution.
    Reduce {
        #[arg(long)]
        poly: String,
        /// Multiplier budget override (default: ceil(p^(3t/(3t+4)))).
        #[arg(long = "S")]
        budget: Option<u64>,
    },
    /// Exceptional linear factors of g(X) - g(Y).
    Factors {
        /// Laurent polynomial spec, e.g. "7: x + x^-1".
        #[arg(long)]
        poly: String,
        #[arg(long, default_value_t = default_oracle_limit())]
        oracle_limit: u64,
    },
    /// Extremal families with oracle-verified value-set sizes.
    #[command(subcommand)]
    Construct(ConstructCmd),
    /// Exhaustive binomial family X + aX^n over all p <= pmax.
    ScanBinomials {
        #[arg(long)]
        pmax: u64,
        /// CSV output path (stdout when absent).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Manifest JSON path (stderr when absent).
        #[arg(long)]
        manifest: Option<PathBuf>,
        #[arg(long, default_value_t = default_oracle_limit())]
        oracle_limit: u64,
    },
    /// Configurable family sweep with CSV rows and a run manifest.
    Sweep(Box<SweepArgs>),
    /// Named verification suites at their default desk-scale parameters.
    Verify {
        /// One of: cauchy, binomial-exact, corollary-sqrt, constructions,
        /// reduction, factors, rootbound.
        suite: String,
    },
}

#[derive(Subcommand)]
enum ConstructCmd {
    /// X + aX^{p-2} with the smallest non-square a (safe primes).
    P2 {
        #[arg(long)]
        p: u64,
    },
    /// X - X^{(p+1)/2}.
    Half {
        #[arg(long)]
        p: u64,
    },
    /// Search for a with V(X + aX^{1+(p-1)/d}) = 1 + (p-1)/d.
    Dpow {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        d: u64,
    },
    /// Expand prod (X^{n_i} + a_i).
    Product {
        #[arg(long)]
        p: u64,
        /// Comma-separated n:a pairs, e.g. "2:1,3:4".
        #[arg(long)]
        pairs: String,
    },
}

#[derive(Args, Clone, Default)]
struct SweepArgs {
    /// binomials | random-sparse | constructions | custom
    #[arg(long)]
    family: Option<Family>,
    #[arg(long)]
    p_min: Option<u64>,
    #[arg(long)]
    p_max: Option<u64>,
    /// Terms per random-sparse instance.
    #[arg(long)]
    t: Option<usize>,
    /// Instances per prime (random families).
    #[arg(long)]
    samples: Option<usize>,
    /// Total instance count with the prime drawn per instance
    /// (overrides --samples).
    #[arg(long)]
    total: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    ct: Option<f64>,
    /// Multiplier budget override.
    #[arg(long = "S")]
    budget: Option<u64>,
    #[arg(long)]
    oracle_limit: Option<u64>,
    /// Resample random-sparse instances until both theorem hypotheses hold.
    #[arg(long)]
    require_hypotheses: bool,
    /// File with one polynomial spec per line (custom family).
    #[arg(long)]
    polys_file: Option<PathBuf>,
    /// key = value file mirroring these flags; flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    /// CSV output path (stdout when absent).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Manifest JSON path (stderr when absent).
    #[arg(long)]
    manifest: Option<PathBuf>,
}

fn main() {
    let cli = Cli::parse();
    std::process::exit(run(cli));
}

fn run(cli: Cli) -> i32 {
    match cli.command {
        Command::Valueset {
            poly,
            oracle_limit,
            top,
        } => cmd_valueset(&poly, oracle_limit, top),
        Command::Bounds {
            poly,
            ct,
            oracle_limit,
        } => cmd_bounds(&poly, ct, oracle_limit),
        Command::Reduce { poly, budget } => cmd_reduce(&poly, budget),
        Command::Factors { poly, oracle_limit } => cmd_factors(&poly, oracle_limit),
        Command::Construct(c) => cmd_construct(c),
        Command::ScanBinomials {
            pmax,
            out,
            manifest,
            oracle_limit,
        } => {
            let result = sweep::scan_binomials(pmax, oracle_limit, cli.jobs);
            emit_sweep(result, out, manifest)
        }
        Command::Sweep(args) => cmd_sweep(*args, cli.jobs),
        Command::Verify { suite } => cmd_verify(&suite, cli.jobs),
    }
}

fn parse_failure(e: ParseError) -> i32 {
    eprintln!("error: {e}");
    exit_code::USAGE
}

fn print_json<T: serde::Serialize>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
}

fn oracle_guard(p: Prime, limit: u64) -> Option<i32> {
    if p.get() > limit {
        eprintln!(
            "error: p = {p} exceeds the oracle limit {limit}; raise --oracle-limit or {}",
            sparseval::ORACLE_LIMIT_ENV
        );
        return Some(exit_code::RESOURCE_LIMIT);
    }
    None
}

fn cmd_valueset(spec: &str, oracle_limit: u64, top: usize) -> i32 {
    let stats: ValueSetStats = match polyfmt::parse_sparse(spec) {
        Ok(f) => {
            if let Some(code) = oracle_guard(f.p(), oracle_limit) {
                return code;
            }
            f.value_set()
        }
        Err(ParseError::NegativeExponent(_)) => match polyfmt::parse_laurent(spec) {
            Ok(g) => {
                if let Some(code) = oracle_guard(g.p(), oracle_limit) {
                    return code;
                }
                g.value_set()
            }
            Err(e) => return parse_failure(e),
        },
        Err(e) => return parse_failure(e),
    };
    print_json(&ValueSetReport::new(&stats, top));
    exit_code::PASS
}

fn cmd_bounds(spec: &str, ct: f64, oracle_limit: u64) -> i32 {
    match polyfmt::parse_sparse(spec) {
        Ok(f) => {
            let report = bounds::bound_report(&f, ct, oracle_limit);
            print_json(&BoundReportJson::from(&report));
            exit_code::PASS
        }
        Err(e) => parse_failure(e),
    }
}

fn cmd_reduce(spec: &str, budget: Option<u64>) -> i32 {
    let f = match polyfmt::parse_sparse(spec) {
        Ok(f) => f,
        Err(e) => return parse_failure(e),
    };
    if f.t() > 20 {
        eprintln!("error: the nonvanishing-multiplier search handles at most 20 terms (got {})", f.t());
        return exit_code::USAGE;
    }
    if budget == Some(0) {
        eprintln!("error: the multiplier budget must be positive");
        return exit_code::USAGE;
    }
    let budget = budget.unwrap_or_else(|| reduction::default_budget(f.p(), f.t()));
    match reduction::reduce_pipeline_with_budget(&f, budget) {
        Ok(r) => {
            print_json(&ReduceReport::from(&r));
            exit_code::PASS
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code::INVARIANT_FAILURE
        }
    }
}

fn cmd_factors(spec: &str, oracle_limit: u64) -> i32 {
    let g = match polyfmt::parse_laurent(spec) {
        Ok(g) => g,
        Err(e) => return parse_failure(e),
    };
    if let Some(code) = oracle_guard(g.p(), oracle_limit) {
        return code;
    }
    if g.normalize_exponents().is_err() {
        eprintln!("error: the polynomial is constant as a function on units; factor scans need a nonconstant input");
        return exit_code::USAGE;
    }
    let ef = sparseval_core::factors::scan(&g);
    print_json(&FactorsReport::new(&g, &ef));
    exit_code::PASS
}

fn cmd_construct(cmd: ConstructCmd) -> i32 {
    let prime = |p: u64| -> Result<Prime, i32> {
        Prime::new(p).map_err(|e| {
            eprintln!("error: {e}");
            exit_code::USAGE
        })
    };
    match cmd {
        ConstructCmd::P2 { p } => {
            let p = match prime(p) {
                Ok(p) => p,
                Err(code) => return code,
            };
            match constructions::extremal_p2_binomial(p) {
                Ok(r) => {
                    print_json(&ConstructReport::new("p2", &r));
                    exit_code::PASS
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    exit_code::USAGE
                }
            }
        }
        ConstructCmd::Half { p } => {
            let p = match prime(p) {
                Ok(p) => p,
                Err(code) => return code,
            };
            let r = constructions::half_exponent_binomial(p);
            print_json(&ConstructReport::new("half", &r));
            exit_code::PASS
        }
        ConstructCmd::Dpow { p, d } => {
            let p = match prime(p) {
                Ok(p) => p,
                Err(code) => return code,
            };
            match constructions::search_construction_a(p, d) {
                Ok(r) => {
                    print_json(&ConstructReport::new("dpow", &r));
                    exit_code::PASS
                }
                Err(constructions::ConstructError::NoWitness { d }) => {
                    eprintln!("no witness: no multiplier a works for d = {d} at p = {p}");
                    exit_code::INVARIANT_FAILURE
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    exit_code::USAGE
                }
            }
        }
        ConstructCmd::Product { p, pairs } => {
            let p = match prime(p) {
                Ok(p) => p,
                Err(code) => return code,
            };
            let parsed: Result<Vec<(u64, u64)>, String> = pairs
                .split(',')
                .map(|chunk| {
                    let (n, a) = chunk
                        .split_once(':')
                        .ok_or_else(|| format!("expected n:a, got {chunk:?}"))?;
                    let n = n.trim().parse().map_err(|_| format!("bad exponent {n:?}"))?;
                    let a = a.trim().parse().map_err(|_| format!("bad coefficient {a:?}"))?;
                    Ok((n, a))
                })
                .collect();
            let pairs = match parsed {
                Ok(v) => v,
                Err(e) => {
                    eprintln!("error: {e}");
                    return exit_code::USAGE;
                }
            };
            match constructions::product_form(p, &pairs) {
                Ok(f) => {
                    println!("{}", polyfmt::format_sparse(&f));
                    exit_code::PASS
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    exit_code::USAGE
                }
            }
        }
    }
}

fn cmd_sweep(args: SweepArgs, jobs: Option<usize>) -> i32 {
    let file_map = match &args.config {
        Some(path) => match std::fs::read_to_string(path).map_err(|e| e.to_string()) {
            Ok(text) => match config::parse_kv(&text) {
                Ok(map) => map,
                Err(e) => {
                    eprintln!("error: config {}: {e}", path.display());
                    return exit_code::USAGE;
                }
            },
            Err(e) => {
                eprintln!("error: config {}: {e}", path.display());
                return exit_code::USAGE;
            }
        },
        None => Default::default(),
    };

    macro_rules! merged {
        ($flag:expr, $key:literal) => {
            match $flag {
                Some(v) => Some(v),
                None => match config::parsed(&file_map, $key) {
                    Ok(v) => v,
                    Err(e) => {
                        eprintln!("error: {e}");
                        return exit_code::USAGE;
                    }
                },
            }
        };
    }

    let family = merged!(args.family.clone(), "family").unwrap_or(Family::Binomials);
    let defaults = SweepConfig::default();
    let mut cfg = SweepConfig {
        family,
        p_min: merged!(args.p_min, "p-min").unwrap_or(defaults.p_min),
        p_max: merged!(args.p_max, "p-max").unwrap_or(defaults.p_max),
        t: merged!(args.t, "t").unwrap_or(defaults.t),
        samples_per_prime: merged!(args.samples, "samples").unwrap_or(defaults.samples_per_prime),
        total_samples: merged!(args.total, "total"),
        seed: merged!(args.seed, "seed").unwrap_or(defaults.seed),
        c_t: merged!(args.ct, "ct").unwrap_or(defaults.c_t),
        budget: merged!(args.budget, "S"),
        oracle_limit: merged!(args.oracle_limit, "oracle-limit")
            .unwrap_or_else(default_oracle_limit),
        require_hypotheses: args.require_hypotheses
            || merged!(None::<bool>, "require-hypotheses").unwrap_or(false),
        polys: Vec::new(),
    };
    let polys_file = args.polys_file.clone().or_else(|| {
        file_map
            .get("polys-file")
            .map(|s| PathBuf::from(s.clone()))
    });
    let out = args
        .out
        .clone()
        .or_else(|| file_map.get("out").map(PathBuf::from));
    let manifest = args
        .manifest
        .clone()
        .or_else(|| file_map.get("manifest").map(PathBuf::from));
    if let Some(path) = polys_file {
        match std::fs::read_to_string(&path) {
            Ok(text) => {
                cfg.polys = text
                    .lines()
                    .map(str::trim)
                    .filter(|l| !l.is_empty() && !l.starts_with('#'))
                    .map(str::to_string)
                    .collect();
            }
            Err(e) => {
                eprintln!("error: polys file {}: {e}", path.display());
                return exit_code::USAGE;
            }
        }
    }
    emit_sweep(sweep::run_sweep(&cfg, jobs), out, manifest)
}

fn emit_sweep(
    result: Result<sweep::SweepOutput, SweepError>,
    out: Option<PathBuf>,
    manifest_path: Option<PathBuf>,
) -> i32 {
    let output = match result {
        Ok(o) => o,
        Err(e @ SweepError::OracleLimitExceeded { .. }) => {
            eprintln!("error: {e}");
            return exit_code::RESOURCE_LIMIT;
        }
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code::USAGE;
        }
    };
    if let Err(code) = write_or_print(&output.csv, &out, false) {
        return code;
    }
    if let Err(code) = write_manifest(&output.manifest, &manifest_path) {
        return code;
    }
    if output.failed() {
        eprintln!("sweep: invariant failures recorded in the manifest");
        exit_code::INVARIANT_FAILURE
    } else {
        exit_code::PASS
    }
}

fn write_or_print(text: &str, path: &Option<PathBuf>, stderr: bool) -> Result<(), i32> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| {
            eprintln!("error: cannot write {}: {e}", p.display());
            exit_code::USAGE
        }),
        None => {
            if stderr {
                eprint!("{text}");
            } else {
                print!("{text}");
            }
            Ok(())
        }
    }
}

fn write_manifest(manifest: &RunManifest, path: &Option<PathBuf>) -> Result<(), i32> {
    let json = manifest.to_json_pretty() + "\n";
    write_or_print(&json, path, true)
}

fn cmd_verify(suite: &str, jobs: Option<usize>) -> i32 {
    match verify::run_suite(suite, jobs) {
        Some(report) => {
            print!("{}", report.render());
            if report.passed() {
                exit_code::PASS
            } else {
                exit_code::INVARIANT_FAILURE
            }
        }
        None => {
            eprintln!(
                "error: unknown suite {suite:?}; available: {}",
                verify::SUITES.join(", ")
            );
            exit_code::USAGE
        }
    }
}
