//! Command-line front end for the spectral-geometry engine.
//!
//! Every subcommand emits a deterministic machine-readable report:
//! no timestamps, fixed field order, floats at 15 significant digits.
//! Exit codes: 0 success, 1 validation or assertion failure, 2 usage
//! error.

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use hodge_spectra::berger::{self, BergerParams};
use hodge_spectra::curl;
use hodge_spectra::geometry::{Group, MetricParams};
use hodge_spectra::inverse::{self, SpectralInvariants};
use hodge_spectra::lambda1;
use hodge_spectra::laplacian;
use hodge_spectra::report::{self, round15, SpectrumRecord};

const VERSION: &str = env!("CARGO_PKG_VERSION");
const DETERMINISM_NOTE: &str =
    "no timestamps or host identifiers; identical configuration (including seed) \
     reproduces this report byte for byte";

#[derive(Parser)]
#[command(
    name = "hodge-spectra",
    version,
    about = "Spectra of the Hodge-Laplacian on left-invariant metrics of SU(2) and SO(3)"
)]
struct Cli {
    /// Worker threads for block-level parallelism (default: available
    /// parallelism). The HODGE_SPECTRA_WORKERS environment variable
    /// overrides this flag.
    #[arg(long, global = true)]
    workers: Option<usize>,

    /// Write the report to a file instead of stdout.
    #[arg(long, global = true)]
    output: Option<std::path::PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum GroupArg {
    Su2,
    So3,
}

impl From<GroupArg> for Group {
    fn from(g: GroupArg) -> Group {
        match g {
            GroupArg::Su2 => Group::Su2,
            GroupArg::So3 => Group::So3,
        }
    }
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct MetricArgs {
    #[arg(long)]
    a: f64,
    #[arg(long)]
    b: f64,
    #[arg(long)]
    c: f64,
    #[arg(long, value_enum, default_value = "su2")]
    group: GroupArg,
}

impl MetricArgs {
    fn metric(&self) -> Result<MetricParams, CliError> {
        MetricParams::new(self.a, self.b, self.c, self.group.into())
            .map_err(|e| CliError::usage(e.to_string()))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Compute the spectrum of Δ₀ or Δ₁ up to a truncation weight.
    Spectrum {
        #[command(flatten)]
        metric: MetricArgs,
        /// Form degree: 0 (functions) or 1 (one-forms).
        #[arg(long, default_value_t = 1)]
        degree: u8,
        #[arg(long = "k-max", default_value_t = 25)]
        k_max: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Closed-form Berger spectrum (b = c) with family provenance.
    Berger {
        #[arg(long)]
        a: f64,
        #[arg(long)]
        b: f64,
        /// Optional; must equal b when given.
        #[arg(long)]
        c: Option<f64>,
        #[arg(long, value_enum, default_value = "su2")]
        group: GroupArg,
        #[arg(long = "k-max", default_value_t = 25)]
        k_max: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Closed-form first eigenvalue and its attaining branches.
    Lambda1 {
        #[command(flatten)]
        metric: MetricArgs,
    },
    /// First eigenvalue with dynamic Gershgorin certification.
    Certify {
        #[command(flatten)]
        metric: MetricArgs,
        /// Maximum weight probed for a certification threshold.
        #[arg(long = "k-probe", default_value_t = 200)]
        k_probe: usize,
    },
    /// Seeded Monte Carlo stress test of the first-eigenvalue formula.
    Stress {
        #[arg(long, default_value_t = 1000)]
        samples: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long = "k-max", default_value_t = 10)]
        k_max: usize,
        #[arg(long = "box-lo", default_value_t = 0.1)]
        box_lo: f64,
        #[arg(long = "box-hi", default_value_t = 10.0)]
        box_hi: f64,
        #[arg(long, value_enum, default_value = "su2")]
        group: GroupArg,
    },
    /// Recover (a,b,c) from {volume, Scal, λ₁}.
    Invert {
        #[arg(long)]
        volume: f64,
        #[arg(long)]
        scal: f64,
        #[arg(long)]
        lambda1: f64,
        #[arg(long, value_enum, default_value = "su2")]
        group: GroupArg,
    },
    /// Verify the curl factorization and the coexact lower bound.
    CurlCheck {
        #[command(flatten)]
        metric: MetricArgs,
        #[arg(long = "k-max", default_value_t = 10)]
        k_max: usize,
    },
}

struct CliError {
    message: String,
    code: u8,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        CliError {
            message: message.into(),
            code: 2,
        }
    }

    fn failure(message: impl Into<String>) -> Self {
        CliError {
            message: message.into(),
            code: 1,
        }
    }
}

impl From<hodge_spectra::SpectralError> for CliError {
    fn from(e: hodge_spectra::SpectralError) -> Self {
        CliError::failure(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_workers(cli.workers);
    let output = cli.output.clone();
    match run(cli) {
        Ok(Rendered { body, failed }) => {
            if let Err(e) = emit(&body, output.as_deref()) {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
            ExitCode::from(if failed { 1 } else { 0 })
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

fn configure_workers(flag: Option<usize>) {
    let from_env = std::env::var("HODGE_SPECTRA_WORKERS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok());
    if let Some(n) = from_env.or(flag) {
        // A failure here means a pool already exists; the default is fine.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global();
    }
}

fn emit(body: &str, path: Option<&std::path::Path>) -> std::io::Result<()> {
    match path {
        Some(p) => std::fs::write(p, body),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(body.as_bytes())?;
            if !body.ends_with('\n') {
                out.write_all(b"\n")?;
            }
            Ok(())
        }
    }
}

struct Rendered {
    body: String,
    /// True when the report itself records an assertion failure
    /// (exit code 1 despite a well-formed report).
    failed: bool,
}

fn json_report<T: Serialize>(value: &T) -> Rendered {
    Rendered {
        body: serde_json::to_string_pretty(value).expect("report serialization"),
        failed: false,
    }
}

#[derive(Serialize)]
struct SpectrumConfig {
    a: f64,
    b: f64,
    c: f64,
    group: Group,
    degree: u8,
    k_max: usize,
    merge_tol: f64,
}

#[derive(Serialize)]
struct SpectrumReport {
    version: &'static str,
    command: &'static str,
    config: SpectrumConfig,
    determinism: &'static str,
    min_nonzero: Option<f64>,
    entries: Vec<SpectrumRecord>,
}

#[derive(Serialize)]
struct BergerConfig {
    a: f64,
    b: f64,
    group: Group,
    k_max: usize,
}

#[derive(Serialize)]
struct BergerReport {
    version: &'static str,
    command: &'static str,
    config: BergerConfig,
    determinism: &'static str,
    first_eigenvalue: f64,
    kappa: f64,
    entries: Vec<SpectrumRecord>,
}

#[derive(Serialize)]
struct MetricConfig {
    a: f64,
    b: f64,
    c: f64,
    group: Group,
}

#[derive(Serialize)]
struct Lambda1Report {
    version: &'static str,
    command: &'static str,
    config: MetricConfig,
    determinism: &'static str,
    value: f64,
    attaining_branches: Vec<lambda1::Branch>,
}

#[derive(Serialize)]
struct CertifyConfig {
    a: f64,
    b: f64,
    c: f64,
    group: Group,
    k_probe: usize,
}

#[derive(Serialize)]
struct CertifyReport {
    version: &'static str,
    command: &'static str,
    config: CertifyConfig,
    determinism: &'static str,
    #[serde(flatten)]
    result: serde_json::Value,
}

#[derive(Serialize)]
struct StressConfig {
    samples: u64,
    seed: u64,
    k_max: usize,
    sampling_box: [f64; 2],
    group: Group,
}

#[derive(Serialize)]
struct StressReportEnvelope {
    version: &'static str,
    command: &'static str,
    config: StressConfig,
    determinism: &'static str,
    #[serde(flatten)]
    report: serde_json::Value,
}

#[derive(Serialize)]
struct InvertConfig {
    volume: f64,
    scal: f64,
    lambda1: f64,
    group: Group,
}

#[derive(Serialize)]
struct InvertReport {
    version: &'static str,
    command: &'static str,
    config: InvertConfig,
    determinism: &'static str,
    abc_sorted: [f64; 3],
    branch: inverse::InversionBranch,
    residuals: serde_json::Value,
}

#[derive(Serialize)]
struct CurlCheckReport {
    version: &'static str,
    command: &'static str,
    config: MetricConfig,
    determinism: &'static str,
    curl_eigenvalues_invariant_basis: [f64; 3],
    curl_square_matches_weight_zero_block: bool,
    coexact_bound: serde_json::Value,
    pass: bool,
}

fn run(cli: Cli) -> Result<Rendered, CliError> {
    match cli.command {
        Command::Spectrum {
            metric,
            degree,
            k_max,
            format,
        } => {
            if degree > 1 {
                return Err(CliError::usage(format!(
                    "--degree must be 0 or 1, got {degree}"
                )));
            }
            let m = metric.metric()?;
            let spec = laplacian::full_spectrum(&m, degree, k_max)?;
            let records = report::spectrum_records(&spec);
            if format == Format::Csv {
                return Ok(Rendered {
                    body: report::records_to_csv(&records),
                    failed: false,
                });
            }
            Ok(json_report(&SpectrumReport {
                version: VERSION,
                command: "spectrum",
                config: SpectrumConfig {
                    a: metric.a,
                    b: metric.b,
                    c: metric.c,
                    group: m.group(),
                    degree,
                    k_max,
                    merge_tol: laplacian::MERGE_TOL,
                },
                determinism: DETERMINISM_NOTE,
                min_nonzero: spec.min_nonzero().map(round15),
                entries: records,
            }))
        }
        Command::Berger {
            a,
            b,
            c,
            group,
            k_max,
            format,
        } => {
            if let Some(c) = c {
                if (b - c).abs() > 1e-12 * b.abs().max(c.abs()) {
                    return Err(CliError::usage(format!(
                        "berger requires b = c (to 1e-12); got b={b}, c={c}"
                    )));
                }
            }
            let p = BergerParams::new(a, b).map_err(|e| CliError::usage(e.to_string()))?;
            let group: Group = group.into();
            let records = report::berger_records(&p, group, k_max);
            if format == Format::Csv {
                return Ok(Rendered {
                    body: report::records_to_csv(&records),
                    failed: false,
                });
            }
            Ok(json_report(&BergerReport {
                version: VERSION,
                command: "berger",
                config: BergerConfig { a, b, group, k_max },
                determinism: DETERMINISM_NOTE,
                first_eigenvalue: round15(berger::berger_first_eigenvalue(&p, group)),
                kappa: round15(p.kappa()),
                entries: records,
            }))
        }
        Command::Lambda1 { metric } => {
            let m = metric.metric()?;
            let res = lambda1::lambda1_formula(&m);
            Ok(json_report(&Lambda1Report {
                version: VERSION,
                command: "lambda1",
                config: MetricConfig {
                    a: metric.a,
                    b: metric.b,
                    c: metric.c,
                    group: m.group(),
                },
                determinism: DETERMINISM_NOTE,
                value: round15(res.value),
                attaining_branches: res.attaining_branches,
            }))
        }
        Command::Certify { metric, k_probe } => {
            if k_probe < 1 {
                return Err(CliError::usage("--k-probe must be at least 1"));
            }
            let m = metric.metric()?;
            let res = lambda1::certify_lambda1(&m, k_probe)?;
            Ok(json_report(&CertifyReport {
                version: VERSION,
                command: "certify",
                config: CertifyConfig {
                    a: metric.a,
                    b: metric.b,
                    c: metric.c,
                    group: m.group(),
                    k_probe,
                },
                determinism: DETERMINISM_NOTE,
                result: rounded_json(&res),
            }))
        }
        Command::Stress {
            samples,
            seed,
            k_max,
            box_lo,
            box_hi,
            group,
        } => {
            if samples < 1 {
                return Err(CliError::usage("--samples must be at least 1"));
            }
            if !(box_lo.is_finite() && box_hi.is_finite() && 0.0 < box_lo && box_lo < box_hi) {
                return Err(CliError::usage(format!(
                    "invalid sampling box [{box_lo}, {box_hi}]"
                )));
            }
            let report =
                lambda1::stress_test(seed, samples, k_max, [box_lo, box_hi], group.into())?;
            let failed = !report.pass();
            let mut rendered = json_report(&StressReportEnvelope {
                version: VERSION,
                command: "stress",
                config: StressConfig {
                    samples,
                    seed,
                    k_max,
                    sampling_box: [box_lo, box_hi],
                    group: group.into(),
                },
                determinism: DETERMINISM_NOTE,
                report: rounded_json(&report),
            });
            rendered.failed = failed;
            Ok(rendered)
        }
        Command::Invert {
            volume,
            scal,
            lambda1,
            group,
        } => {
            let si = SpectralInvariants {
                volume,
                scal,
                lambda1,
                group: group.into(),
            };
            let res = inverse::invert(&si).map_err(|e| CliError::failure(e.to_string()))?;
            Ok(json_report(&InvertReport {
                version: VERSION,
                command: "invert",
                config: InvertConfig {
                    volume,
                    scal,
                    lambda1,
                    group: group.into(),
                },
                determinism: DETERMINISM_NOTE,
                abc_sorted: res.abc_sorted.map(round15),
                branch: res.branch,
                residuals: rounded_json(&res.residuals),
            }))
        }
        Command::CurlCheck { metric, k_max } => {
            let m = metric.metric()?;
            // Curl² on the invariant basis must reproduce the weight-0
            // block diagonal exactly.
            let scaling = curl::curl_scaling(&m);
            let wd = hodge_spectra::geometry::weitzenboeck_diagonal(&m);
            let square_ok = (0..3).all(|i| {
                let twice = curl::curl_invariant(
                    &curl::curl_invariant(&curl::LeftInvariantForm::basis(i), &m),
                    &m,
                );
                (twice.coeffs[i].re - wd[i]).abs() <= 1e-12 * wd[i].max(1.0)
                    && twice.coeffs[i].im == 0.0
            });
            let bound_report = curl::coexact_bound_check(&m, k_max)?;
            let pass = square_ok && bound_report.pass;
            let mut rendered = json_report(&CurlCheckReport {
                version: VERSION,
                command: "curl-check",
                config: MetricConfig {
                    a: metric.a,
                    b: metric.b,
                    c: metric.c,
                    group: m.group(),
                },
                determinism: DETERMINISM_NOTE,
                curl_eigenvalues_invariant_basis: scaling.map(round15),
                curl_square_matches_weight_zero_block: square_ok,
                coexact_bound: rounded_json(&bound_report),
                pass,
            });
            rendered.failed = !pass;
            Ok(rendered)
        }
    }
}

/// Serializes a value and rounds every float in the tree to 15
/// significant digits.
fn rounded_json<T: Serialize>(value: &T) -> serde_json::Value {
    fn walk(v: serde_json::Value) -> serde_json::Value {
        match v {
            serde_json::Value::Number(n) => {
                if let Some(f) = n.as_f64() {
                    if n.is_f64() {
                        return serde_json::Number::from_f64(round15(f))
                            .map(serde_json::Value::Number)
                            .unwrap_or(serde_json::Value::Null);
                    }
                }
                serde_json::Value::Number(n)
            }
            serde_json::Value::Array(items) => {
                serde_json::Value::Array(items.into_iter().map(walk).collect())
            }
            serde_json::Value::Object(map) => {
                serde_json::Value::Object(map.into_iter().map(|(k, v)| (k, walk(v))).collect())
            }
            other => other,
        }
    }
    walk(serde_json::to_value(value).expect("serializable report"))
}
