//! `covol`: exact certification of log-concavity properties of polynomials,
//! adjoint polynomials of rational cones, and Segre zeta numerators of
//! monomial ideals.
//!
//! Exit codes: 0 = property holds / computation succeeded, 1 = property
//! fails (a witness is printed), 2 = usage or input error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use covol_core::convexity::{
    coefficient_sequence_bivariate, is_log_concave_no_internal_zeros, is_ultra_log_concave,
    m_convex_witness, SupportSet,
};
use covol_core::lorentz::{is_covolume_bivariate, is_lorentzian};
use covol_core::poly::Polynomial;
use covol_core::rational::{format_rat, parse_rat, Rat};
use covol_core::scan::{run_scan, ScanConfig, REPORT_SCHEMA};
use covol_core::sectional::{test_sectional, SectionalStatus};
use covol_core::segrezeta::{
    diagonal, exact_one_minus_zeta, integral_oracle, zeta_numerators, zeta_series,
    MonomialIdealSpec,
};
use covol_core::{Error, RationalMatrix};

#[derive(Parser)]
#[command(
    name = "covol",
    version,
    about = "Exact log-concavity certification, cone adjoints, and Segre zeta numerators"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide a property of a polynomial (or coefficient list) exactly.
    Check(CheckArgs),
    /// Apply a polynomial transform and print the result.
    Transform(TransformArgs),
    /// Adjoint polynomial and triangulation statistics of a cone.
    Adjoint(AdjointArgs),
    /// Numerators of the Segre zeta function of a monomial ideal.
    Segre(SegreArgs),
    /// Randomized verification scan over monomial ideals.
    Scan(ScanArgs),
    /// Run the worked-example corpus and print one line per fixture.
    Fixtures,
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckKind {
    Lorentzian,
    Mconvex,
    Logconcave,
    Ultralc,
    Sectional,
    Covol2,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(value_enum)]
    kind: CheckKind,
    /// Polynomial file (text or JSON); for logconcave/ultralc also a
    /// comma-separated list of rationals.
    input: PathBuf,
    /// Override the inferred variable count of text inputs.
    #[arg(long)]
    vars: Option<usize>,
    /// Random trials after the structured battery (sectional only).
    #[arg(long, default_value_t = 200)]
    trials: u64,
    /// Seed of the random trials (sectional only).
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Largest numerator/denominator drawn in random entries (sectional only).
    #[arg(long, default_value_t = 6)]
    max_entry: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum TransformKind {
    Normalize,
    Flip,
    Homogenize,
    Dehomogenize,
    Subst,
    Diag,
}

#[derive(Args)]
struct TransformArgs {
    #[arg(value_enum)]
    kind: TransformKind,
    /// Polynomial file (text or JSON).
    input: PathBuf,
    #[arg(long)]
    vars: Option<usize>,
    /// Per-variable degree bounds for `flip`, e.g. 7,4,1.
    #[arg(long, value_delimiter = ',')]
    degrees: Vec<u32>,
    /// Target degree for `homogenize`.
    #[arg(long)]
    degree: Option<u32>,
    /// Variable index for `dehomogenize`.
    #[arg(long, default_value_t = 0)]
    var: usize,
    /// Matrix file (JSON `{"rows": [["p/q", ...], ...]}`) for `subst`.
    #[arg(long)]
    matrix: Option<PathBuf>,
    /// Emit JSON instead of the text form.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct AdjointArgs {
    /// Cone file: `{"ambient_dim": d, "rays": [["p/q", ...], ...]}`.
    input: PathBuf,
}

#[derive(Args)]
struct SegreArgs {
    /// Ideal file: JSON `{"num_factors": l, "exponents": [[..], ..]}` or
    /// monomial text such as `x1*x2, x1*x3`.
    input: PathBuf,
    /// Also expand the zeta series to this total order.
    #[arg(long)]
    series_order: Option<u32>,
    /// Compare the exact value against the quadrature oracle at
    /// t = (1/10, ..., 1/10).
    #[arg(long)]
    oracle: bool,
    #[arg(long, default_value_t = 10_000)]
    oracle_samples: usize,
}

#[derive(Args)]
struct ScanArgs {
    #[arg(long, default_value_t = 300)]
    count: usize,
    #[arg(long, default_value_t = 20240901)]
    master_seed: u64,
    #[arg(long, default_value_t = 1)]
    num_factors_min: usize,
    #[arg(long, default_value_t = 3)]
    num_factors_max: usize,
    #[arg(long, default_value_t = 6)]
    max_exponent: u32,
    #[arg(long, default_value_t = 2)]
    num_generators_min: usize,
    #[arg(long, default_value_t = 6)]
    num_generators_max: usize,
    /// Worker threads (0 = all cores); the COVOL_WORKERS environment
    /// variable overrides this flag.
    #[arg(long, default_value_t = 0)]
    workers: usize,
    /// Write the report JSON here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Directory for reproducer specs of confirmed conjecture failures.
    #[arg(long, default_value = ".")]
    reproducer_dir: PathBuf,
}

/// Anything the commands can fail with before a verdict is reached.
struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

type CmdResult = Result<ExitCode, UsageError>;

fn read_to_string(path: &PathBuf) -> Result<String, UsageError> {
    std::fs::read_to_string(path)
        .map_err(|e| UsageError(format!("cannot read {}: {e}", path.display())))
}

fn load_polynomial(path: &PathBuf, vars: Option<usize>) -> Result<Polynomial, UsageError> {
    let raw = read_to_string(path)?;
    let trimmed = raw.trim_start();
    if trimmed.starts_with('{') {
        Ok(serde_json::from_str(&raw)?)
    } else {
        Ok(Polynomial::parse_text(&raw, vars)?)
    }
}

fn parse_rat_list(raw: &str) -> Option<Vec<Rat>> {
    let items: Vec<&str> = raw
        .split([',', '\n', ' '])
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect();
    if items.is_empty() {
        return None;
    }
    items.iter().map(|s| parse_rat(s).ok()).collect()
}

fn print_verdict(value: serde_json::Value, pass: bool) -> ExitCode {
    println!("{}", serde_json::to_string_pretty(&value).expect("serializable"));
    if pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn cmd_check(args: &CheckArgs) -> CmdResult {
    match args.kind {
        CheckKind::Lorentzian => {
            let f = load_polynomial(&args.input, args.vars)?;
            let v = is_lorentzian(&f)?;
            Ok(print_verdict(
                json!({"schema": REPORT_SCHEMA, "check": "lorentzian", "verdict": v}),
                v.is_lorentzian,
            ))
        }
        CheckKind::Mconvex => {
            let f = load_polynomial(&args.input, args.vars)?;
            // non-homogeneous inputs are judged through their homogenization
            let h = if f.is_homogeneous() {
                f
            } else {
                f.homogenize(f.total_degree())?
            };
            let witness = m_convex_witness(&SupportSet::of(&h));
            let pass = witness.is_none();
            Ok(print_verdict(
                json!({"schema": REPORT_SCHEMA, "check": "mconvex", "m_convex": pass, "witness": witness}),
                pass,
            ))
        }
        CheckKind::Logconcave | CheckKind::Ultralc => {
            let raw = read_to_string(&args.input)?;
            let seq = match parse_rat_list(&raw) {
                Some(seq) => seq,
                None => {
                    let f = load_polynomial(&args.input, args.vars)?;
                    coefficient_sequence_bivariate(&f)?
                }
            };
            let (name, pass) = match args.kind {
                CheckKind::Logconcave => ("logconcave", is_log_concave_no_internal_zeros(&seq)),
                _ => ("ultralc", is_ultra_log_concave(&seq)),
            };
            let rendered: Vec<String> = seq.iter().map(format_rat).collect();
            Ok(print_verdict(
                json!({"schema": REPORT_SCHEMA, "check": name, "sequence": rendered, "holds": pass}),
                pass,
            ))
        }
        CheckKind::Sectional => {
            let f = load_polynomial(&args.input, args.vars)?;
            let v = test_sectional(&f, args.trials, args.seed, args.max_entry)?;
            let pass = v.status == SectionalStatus::NoCounterexampleFound;
            Ok(print_verdict(
                json!({"schema": REPORT_SCHEMA, "check": "sectional", "verdict": v}),
                pass,
            ))
        }
        CheckKind::Covol2 => {
            let f = load_polynomial(&args.input, args.vars)?;
            let pass = is_covolume_bivariate(&f)?;
            Ok(print_verdict(
                json!({"schema": REPORT_SCHEMA, "check": "covol2", "covolume": pass}),
                pass,
            ))
        }
    }
}

fn cmd_transform(args: &TransformArgs) -> CmdResult {
    let f = load_polynomial(&args.input, args.vars)?;
    let out = match args.kind {
        TransformKind::Normalize => f.normalize(),
        TransformKind::Flip => {
            if args.degrees.is_empty() {
                return Err(UsageError("flip needs --degrees".into()));
            }
            f.flip(&args.degrees)?
        }
        TransformKind::Homogenize => {
            let degree = args.degree.unwrap_or_else(|| f.total_degree());
            f.homogenize(degree)?
        }
        TransformKind::Dehomogenize => f.dehomogenize(args.var)?,
        TransformKind::Subst => {
            let path = args
                .matrix
                .as_ref()
                .ok_or_else(|| UsageError("subst needs --matrix".into()))?;
            let matrix: RationalMatrix = serde_json::from_str(&read_to_string(path)?)?;
            f.substitute_matrix(&matrix)?
        }
        TransformKind::Diag => {
            let ones = RationalMatrix::from_rows(vec![
                vec![covol_core::rational::rat_one()];
                f.num_vars()
            ]);
            f.substitute_matrix(&ones)?
        }
    };
    if args.json {
        println!("{}", serde_json::to_string_pretty(&out).expect("serializable"));
    } else {
        println!("{}", out.to_text());
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_adjoint(args: &AdjointArgs) -> CmdResult {
    let cone: covol_core::cone::Cone = serde_json::from_str(&read_to_string(&args.input)?)?;
    let triangulation = cone.triangulate()?;
    let adjoint = cone.adjoint()?;
    let report = json!({
        "schema": REPORT_SCHEMA,
        "num_vertex_rays": cone.num_vertex_rays(),
        "piece_count": triangulation.pieces.len(),
        "total_volume": format_rat(&triangulation.total_volume()),
        "adjoint_text": adjoint.to_text(),
        "adjoint": adjoint,
    });
    println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
    Ok(ExitCode::SUCCESS)
}

fn load_spec(path: &PathBuf) -> Result<MonomialIdealSpec, UsageError> {
    let raw = read_to_string(path)?;
    let trimmed = raw.trim_start();
    if trimmed.starts_with('{') {
        let spec: MonomialIdealSpec = serde_json::from_str(&raw)?;
        // re-validate through the constructor
        Ok(MonomialIdealSpec::new(spec.num_factors, spec.exponents)?)
    } else {
        Ok(MonomialIdealSpec::parse_monomials(&raw, None)?)
    }
}

fn cmd_segre(args: &SegreArgs) -> CmdResult {
    let spec = load_spec(&args.input)?;
    let nums = zeta_numerators(&spec);
    let (r_diag, p_diag) = diagonal(&nums);
    let mut report = json!({
        "schema": REPORT_SCHEMA,
        "spec": spec,
        "numerators": nums,
        "r_text": nums.r_reduced.to_text(),
        "p_text": nums.p.to_text(),
        "diagonal": {"r": r_diag.to_text(), "p": p_diag.to_text()},
    });
    if let Some(order) = args.series_order {
        report["series"] = serde_json::to_value(zeta_series(&nums, order))?;
    }
    if args.oracle {
        let t: Vec<Rat> = vec![covol_core::rational::rat(1, 10); spec.num_factors];
        let exact = exact_one_minus_zeta(&nums, &t)?;
        let estimate = integral_oracle(&spec, &t, args.oracle_samples);
        let exact_f = covol_core::rational::to_f64(&exact);
        report["oracle"] = json!({
            "t": t.iter().map(format_rat).collect::<Vec<_>>(),
            "exact": format_rat(&exact),
            "exact_f64": exact_f,
            "estimate": estimate,
            "relative_error": (estimate - exact_f).abs() / exact_f.abs(),
            "samples": args.oracle_samples,
        });
    }
    println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
    Ok(ExitCode::SUCCESS)
}

fn cmd_scan(args: &ScanArgs) -> CmdResult {
    let workers = match std::env::var("COVOL_WORKERS") {
        Ok(v) => v
            .parse::<usize>()
            .map_err(|_| UsageError(format!("bad COVOL_WORKERS value `{v}`")))?,
        Err(_) => args.workers,
    };
    let config = ScanConfig {
        num_factors_min: args.num_factors_min,
        num_factors_max: args.num_factors_max,
        max_exponent: args.max_exponent,
        num_generators_min: args.num_generators_min,
        num_generators_max: args.num_generators_max,
        count: args.count,
        master_seed: args.master_seed,
        workers,
    };
    if config.count == 0
        || config.num_factors_min == 0
        || config.num_factors_min > config.num_factors_max
        || config.num_generators_min == 0
        || config.num_generators_min > config.num_generators_max
    {
        return Err(UsageError("empty scan range".into()));
    }
    let report = run_scan(&config, Some(&args.reproducer_dir));
    let rendered = serde_json::to_string_pretty(&report).expect("serializable");
    match &args.out {
        Some(path) => std::fs::write(path, rendered)
            .map_err(|e| UsageError(format!("cannot write {}: {e}", path.display())))?,
        None => println!("{rendered}"),
    }
    eprintln!(
        "scan: {} instances, {} suite passes, {} conjecture passes, {} errors",
        report.summary.count,
        report.summary.suite_passes,
        report.summary.conjecture_passes,
        report.summary.errors
    );
    let clean = report.summary.errors == 0
        && report.summary.suite_passes == report.summary.count
        && report.summary.conjecture_passes == report.summary.count;
    Ok(if clean { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn cmd_fixtures() -> CmdResult {
    let results = covol_core::fixtures::run_all();
    let mut all_green = true;
    for r in &results {
        println!(
            "{} {}{}",
            if r.passed { "PASS" } else { "FAIL" },
            r.name,
            if r.passed {
                String::new()
            } else {
                format!(": {}", r.detail)
            }
        );
        all_green &= r.passed;
    }
    Ok(if all_green { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Check(args) => cmd_check(args),
        Command::Transform(args) => cmd_transform(args),
        Command::Adjoint(args) => cmd_adjoint(args),
        Command::Segre(args) => cmd_segre(args),
        Command::Scan(args) => cmd_scan(args),
        Command::Fixtures => cmd_fixtures(),
    };
    match result {
        Ok(code) => code,
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

// keep the core error type in the usage-error conversion path
#[allow(dead_code)]
fn _assert_error_converts(e: Error) -> UsageError {
    UsageError::from(e)
}
