//! Command-line front end.
//!
//! Exit codes: 0 success, 1 validation failure (including bad arguments),
//! 2 theorem/oracle mismatch, 3 I/O or schema error, 4 tolerance breakdown.
//! Failures are also printed as a structured error record in the chosen
//! format.

pub mod complex;
pub mod plot;
pub mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::json;

use crate::decomp::{decompose, is_y2_zero, verify_invariance};
use crate::error::Error;
use crate::homology::{build_d0, build_d1, homology_dims};
use crate::liepair::{generate_chain_with, generate_y2zero, InstanceFile, LiePair, WeightMode, Y2ZeroParams};
use crate::numkit::Tolerances;
use crate::oracle::{brute_profiles, candidates_with, flags_of, report_from_flags};
use crate::spectra::{slodkowski_from_decomposition, sp_triangular, sp_y2zero, Method, SpectraReport, SET_NAMES};
use complex::parse_complex;
use report::*;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 1;
pub const EXIT_MISMATCH: i32 = 2;
pub const EXIT_IO: i32 = 3;
pub const EXIT_TOLERANCE: i32 = 4;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Weights {
    #[default]
    Random,
    Unit,
    Integer,
}

impl From<Weights> for WeightMode {
    fn from(w: Weights) -> Self {
        match w {
            Weights::Random => WeightMode::Random,
            Weights::Unit => WeightMode::Unit,
            Weights::Integer => WeightMode::Integer,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "joint-spectra",
    version,
    about = "Joint and Slodkowski spectra of pairs with yx - xy = y"
)]
pub struct Cli {
    #[command(subcommand)]
    command: CliCommand,

    /// Relative singular-value cutoff (default max(rows, cols) * 2^-52)
    #[arg(long, global = true, value_name = "TOL")]
    tol_rank: Option<f64>,

    /// Radius within which two complex points are the same
    #[arg(long, global = true, value_name = "TOL")]
    tol_match: Option<f64>,

    /// Relation and chain residual bound (default 1e-10 * (1 + |x| + |y|))
    #[arg(long, global = true, value_name = "TOL")]
    tol_residual: Option<f64>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Write the report here instead of stdout
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Also write an SVG scatter of the spectra (spectra, oracle, compare)
    #[arg(long, global = true, value_name = "PATH")]
    plot: Option<PathBuf>,

    /// Omit the timestamp so reruns are byte-identical
    #[arg(long, global = true)]
    no_timestamp: bool,
}

#[derive(Debug, Subcommand)]
enum CliCommand {
    /// Validate an instance and print residuals and nilpotency index
    Check { instance: PathBuf },
    /// Spectra from the reduction to single operators
    Spectra { instance: PathBuf },
    /// Homology dimensions at one point
    Homology {
        instance: PathBuf,
        /// Point as a+bi
        #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
        lambda: Complex64,
    },
    /// Brute-force spectra from homology at candidate points
    Oracle { instance: PathBuf },
    /// Compare the reduction against the brute-force oracle
    Compare { instance: PathBuf },
    /// Write a seeded instance file
    Generate(GenerateArgs),
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("family").required(true).args(["chain", "y2zero"]))]
struct GenerateArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Chain lengths, comma separated
    #[arg(long, value_delimiter = ',', value_name = "L1,L2,..")]
    chain: Vec<usize>,
    /// Base eigenvalue per chain as a+bi, comma separated (default 0)
    #[arg(long, allow_hyphen_values = true, value_delimiter = ',', value_parser = parse_complex, value_name = "B1,B2,..")]
    base: Vec<Complex64>,
    #[arg(long, value_enum, default_value_t = Weights::Random)]
    weights: Weights,
    /// y^2 = 0 instance of size 2r + m
    #[arg(long, value_delimiter = ',', num_args = 1, value_name = "R,M")]
    y2zero: Vec<usize>,
    /// Integer entries throughout (y^2 = 0 family)
    #[arg(long)]
    integral: bool,
}

/// Parameters of the `generate` command.
#[derive(Clone, Debug, PartialEq)]
pub enum GeneratorSpec {
    Chain {
        lengths: Vec<usize>,
        bases: Vec<Complex64>,
        weights: Weights,
    },
    Y2Zero {
        r: usize,
        m: usize,
        integral: bool,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub enum Command {
    Check { instance: PathBuf },
    Spectra { instance: PathBuf },
    Homology { instance: PathBuf, lambda: Complex64 },
    Oracle { instance: PathBuf },
    Compare { instance: PathBuf },
    Generate { seed: u64, spec: GeneratorSpec },
}

/// A fully parsed invocation. `lambda` lives on the homology command, so
/// "lambda iff homology" holds by construction.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub tolerances: Tolerances,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub plot: Option<PathBuf>,
    pub timestamp: bool,
}

impl RunConfig {
    fn from_cli(cli: Cli) -> Result<Self, Error> {
        let mut tol = Tolerances::default();
        if let Some(v) = cli.tol_rank {
            tol = tol.with_rank_rel_tol(v);
        }
        if let Some(v) = cli.tol_match {
            tol = tol.with_match_tol(v);
        }
        if let Some(v) = cli.tol_residual {
            tol = tol.with_residual_tol(v);
        }
        if !tol.is_valid() {
            return Err(Error::InvalidParameter(
                "tolerances must be finite and nonnegative".into(),
            ));
        }
        let command = match cli.command {
            CliCommand::Check { instance } => Command::Check { instance },
            CliCommand::Spectra { instance } => Command::Spectra { instance },
            CliCommand::Homology { instance, lambda } => Command::Homology { instance, lambda },
            CliCommand::Oracle { instance } => Command::Oracle { instance },
            CliCommand::Compare { instance } => Command::Compare { instance },
            CliCommand::Generate(g) => Command::Generate {
                seed: g.seed,
                spec: generator_spec(g)?,
            },
        };
        let plots = matches!(
            command,
            Command::Spectra { .. } | Command::Oracle { .. } | Command::Compare { .. }
        );
        if cli.plot.is_some() && !plots {
            return Err(Error::InvalidParameter(
                "--plot applies to spectra, oracle and compare".into(),
            ));
        }
        Ok(Self {
            command,
            tolerances: tol,
            format: cli.format,
            out: cli.out,
            plot: cli.plot,
            timestamp: !cli.no_timestamp,
        })
    }
}

fn generator_spec(g: GenerateArgs) -> Result<GeneratorSpec, Error> {
    if !g.y2zero.is_empty() {
        let [r, m] = g.y2zero[..] else {
            return Err(Error::InvalidParameter("--y2zero takes R,M".into()));
        };
        return Ok(GeneratorSpec::Y2Zero {
            r,
            m,
            integral: g.integral,
        });
    }
    if g.integral {
        return Err(Error::InvalidParameter(
            "--integral applies to --y2zero; use --weights integer for chains".into(),
        ));
    }
    let bases = match g.base.len() {
        0 => vec![Complex64::new(0.0, 0.0); g.chain.len()],
        1 => vec![g.base[0]; g.chain.len()],
        _ => g.base,
    };
    Ok(GeneratorSpec::Chain {
        lengths: g.chain,
        bases,
        weights: g.weights,
    })
}

/// Short machine-readable name and exit code for an error.
pub fn classify(e: &Error) -> (&'static str, i32) {
    match e {
        Error::SchemaError(_) => ("schema", EXIT_IO),
        Error::Io(_) => ("io", EXIT_IO),
        Error::ToleranceBreakdown(_) => ("tolerance_breakdown", EXIT_TOLERANCE),
        Error::NotNested { .. } => ("tolerance_breakdown", EXIT_TOLERANCE),
        Error::InvalidMatrix => ("invalid_matrix", EXIT_VALIDATION),
        Error::NotSquare { .. } => ("not_square", EXIT_VALIDATION),
        Error::DimensionMismatch(_) => ("dimension_mismatch", EXIT_VALIDATION),
        Error::RelationViolated { .. } => ("relation_violated", EXIT_VALIDATION),
        Error::NotNilpotent { .. } => ("not_nilpotent", EXIT_VALIDATION),
        Error::NotY2Zero { .. } => ("not_y2_zero", EXIT_VALIDATION),
        Error::EmptySpec => ("empty_spec", EXIT_VALIDATION),
        Error::InvalidParameter(_) => ("invalid_parameter", EXIT_VALIDATION),
        Error::ExactRelationViolated => ("relation_violated", EXIT_VALIDATION),
    }
}

fn error_report(kind: &'static str, exit_code: i32, message: String) -> Report {
    Report::Error(ErrorDoc {
        schema_version: REPORT_SCHEMA_VERSION,
        error: ErrorBody {
            kind,
            exit_code,
            message,
        },
    })
}

/// What a run produced: the report to print and the process exit code.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub exit_code: i32,
    pub report: Report,
}

fn timestamp(config: &RunConfig) -> Option<u64> {
    config
        .timestamp
        .then(|| SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs()))
}

struct Loaded {
    pair: LiePair,
    info: InstanceInfo,
}

fn load(path: &Path, tol: &Tolerances) -> Result<Loaded, Error> {
    let file = InstanceFile::read(path)?;
    let pair = file.to_pair(tol)?;
    Ok(Loaded {
        info: InstanceInfo {
            n: file.n,
            hash: file.content_hash(),
        },
        pair,
    })
}

fn chain_residual(p: &LiePair, lambda: Complex64) -> f64 {
    (&build_d0(p, lambda) * &build_d1(p, lambda)).norm()
}

fn theorem_report(p: &LiePair, tol: &Tolerances) -> Result<SpectraReport, Error> {
    slodkowski_from_decomposition(&decompose(p, tol)?, tol)
}

/// Oracle report with the number of candidates and the largest chain residual.
fn oracle_report(p: &LiePair, tol: &Tolerances) -> Result<(SpectraReport, usize, f64), Error> {
    let cands = candidates_with(p, &decompose(p, tol)?, tol)?;
    let profiles = brute_profiles(p, &cands, tol)?;
    let max_res = profiles.iter().map(|h| h.chain_residual).fold(0.0, f64::max);
    let report = report_from_flags(profiles.iter().map(|h| (h.lambda, flags_of(h))), Method::Oracle, tol);
    Ok((report, cands.len(), max_res))
}

fn diagnostics(p: &LiePair, chain_residual_max: f64, candidates: Option<usize>) -> Diagnostics {
    Diagnostics {
        relation_residual: p.relation_residual(),
        nilpotency_index: p.nilpotency_index(),
        chain_residual_max,
        candidates,
    }
}

fn spectra_doc(
    loaded: &Loaded,
    report: &SpectraReport,
    specializations: Option<Specializations>,
    diagnostics: Diagnostics,
    config: &RunConfig,
) -> SpectraDoc {
    SpectraDoc {
        schema_version: REPORT_SCHEMA_VERSION,
        instance: loaded.info.clone(),
        method: report.method.as_str(),
        tolerances: config.tolerances,
        spectra: SpectraSets::from_report(report),
        specializations,
        diagnostics,
        timestamp_unix: timestamp(config),
    }
}

fn execute_command(config: &RunConfig) -> Result<Outcome, Error> {
    let tol = &config.tolerances;
    let ok = |report| Outcome {
        exit_code: EXIT_OK,
        report,
    };
    match &config.command {
        Command::Check { instance } => {
            let l = load(instance, tol)?;
            let p = &l.pair;
            let d = decompose(p, tol)?;
            let inv = verify_invariance(p, &d, tol);
            let doc = CheckDoc {
                schema_version: REPORT_SCHEMA_VERSION,
                instance: l.info.clone(),
                method: "check",
                tolerances: *tol,
                valid: inv.pass,
                checks: Checks {
                    relation_residual: p.relation_residual(),
                    relation_bound: tol.residual_tol_for(p.x_norm(), p.y_norm()),
                    nilpotency_index: p.nilpotency_index(),
                    y2_zero: is_y2_zero(p, tol),
                    ker_y_dim: d.ker_y.dim(),
                    ran_y_dim: d.ran_y.dim(),
                    invariance_ker_residual: inv.ker_residual,
                    invariance_ran_residual: inv.ran_residual,
                    invariance_bound: inv.bound,
                },
                timestamp_unix: timestamp(config),
            };
            let code = if inv.pass { EXIT_OK } else { EXIT_TOLERANCE };
            Ok(Outcome {
                exit_code: code,
                report: Report::Check(doc),
            })
        }
        Command::Spectra { instance } => {
            let l = load(instance, tol)?;
            let p = &l.pair;
            let report = theorem_report(p, tol)?;
            let specializations = if is_y2_zero(p, tol) {
                Some(Specializations {
                    y2zero: SpectraSets::from_report(&SpectraReport {
                        sp: sp_y2zero(p, tol)?,
                        ..report.clone()
                    })
                    .sp,
                    triangular: SpectraSets::from_report(&SpectraReport {
                        sp: sp_triangular(p, tol)?,
                        ..report.clone()
                    })
                    .sp,
                })
            } else {
                None
            };
            let max_res = report
                .sp
                .points()
                .iter()
                .map(|&z| chain_residual(p, z))
                .fold(0.0, f64::max);
            let doc = spectra_doc(&l, &report, specializations, diagnostics(p, max_res, None), config);
            Ok(ok(Report::Spectra(doc)))
        }
        Command::Homology { instance, lambda } => {
            let l = load(instance, tol)?;
            let p = &l.pair;
            let h = homology_dims(p, *lambda, tol)?;
            Ok(ok(Report::Homology(HomologyDoc {
                schema_version: REPORT_SCHEMA_VERSION,
                instance: l.info.clone(),
                method: "homology",
                tolerances: *tol,
                lambda: [lambda.re, lambda.im],
                homology: HomologyDoc::betti(&h),
                diagnostics: HomologyDiagnostics {
                    relation_residual: p.relation_residual(),
                    nilpotency_index: p.nilpotency_index(),
                    chain_residual: h.chain_residual,
                },
                timestamp_unix: timestamp(config),
            })))
        }
        Command::Oracle { instance } => {
            let l = load(instance, tol)?;
            let p = &l.pair;
            let (report, count, max_res) = oracle_report(p, tol)?;
            let doc = spectra_doc(&l, &report, None, diagnostics(p, max_res, Some(count)), config);
            Ok(ok(Report::Spectra(doc)))
        }
        Command::Compare { instance } => {
            let l = load(instance, tol)?;
            let p = &l.pair;
            let theorem = theorem_report(p, tol)?;
            let (oracle, count, max_res) = oracle_report(p, tol)?;
            let diff: Vec<(String, SetDiff)> = theorem
                .compare(&oracle, tol.match_tol)
                .iter()
                .map(|(name, m)| (name.to_string(), SetDiff::from_match(m)))
                .collect();
            debug_assert_eq!(diff.len(), SET_NAMES.len());
            let matched = diff.iter().all(|(_, d)| d.matched);
            let doc = CompareDoc {
                schema_version: REPORT_SCHEMA_VERSION,
                instance: l.info.clone(),
                method: "compare",
                tolerances: *tol,
                matched,
                diff,
                theorem: SpectraSets::from_report(&theorem),
                oracle: SpectraSets::from_report(&oracle),
                diagnostics: diagnostics(p, max_res, Some(count)),
                timestamp_unix: timestamp(config),
            };
            Ok(Outcome {
                exit_code: if matched { EXIT_OK } else { EXIT_MISMATCH },
                report: Report::Compare(doc),
            })
        }
        Command::Generate { seed, spec } => {
            let (pair, meta) = match spec {
                GeneratorSpec::Chain {
                    lengths,
                    bases,
                    weights,
                } => {
                    let pair = generate_chain_with(*seed, lengths, bases, (*weights).into())?;
                    let base: Vec<[f64; 2]> = bases.iter().map(|z| [z.re, z.im]).collect();
                    let weights = format!("{weights:?}").to_lowercase();
                    let meta =
                        json!({"generator": "chain", "seed": seed, "chain": lengths, "base": base, "weights": weights});
                    (pair, meta)
                }
                GeneratorSpec::Y2Zero { r, m, integral } => {
                    let params = Y2ZeroParams {
                        integral: *integral,
                        ..Default::default()
                    };
                    let pair = generate_y2zero(*seed, *r, *m, &params)?;
                    let meta = json!({"generator": "y2zero", "seed": seed, "r": r, "m": m, "integral": integral});
                    (pair, meta)
                }
            };
            let file = InstanceFile::from_pair(&pair, Some(meta));
            match &config.out {
                Some(path) => {
                    file.write(path)?;
                    Ok(ok(Report::Generated(GeneratedDoc {
                        schema_version: REPORT_SCHEMA_VERSION,
                        instance: InstanceInfo {
                            n: file.n,
                            hash: file.content_hash(),
                        },
                        method: "generate",
                        path: path.display().to_string(),
                        timestamp_unix: timestamp(config),
                    })))
                }
                None => Ok(ok(Report::Instance(format!("{}\n", file.to_json())))),
            }
        }
    }
}

/// Runs one configuration. Never panics on bad input: every failure becomes
/// an error report with the matching exit code.
pub fn run(config: &RunConfig) -> Outcome {
    match execute_command(config) {
        Ok(o) => o,
        Err(e) => {
            let (kind, code) = classify(&e);
            Outcome {
                exit_code: code,
                report: error_report(kind, code, e.to_string()),
            }
        }
    }
}

/// Parses arguments, runs, and writes output. Returns the exit code.
pub fn execute<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(stdout, "{e}");
                return EXIT_OK;
            }
            let record = error_report("usage", EXIT_VALIDATION, e.render().to_string().trim_end().to_string());
            let _ = write!(stderr, "{}", record.to_json());
            return EXIT_VALIDATION;
        }
    };
    let format = cli.format;
    let config = match RunConfig::from_cli(cli) {
        Ok(c) => c,
        Err(e) => {
            let (kind, code) = classify(&e);
            let _ = write!(stderr, "{}", error_report(kind, code, e.to_string()).render(format));
            return code;
        }
    };
    let mut outcome = run(&config);
    let rendered = outcome.report.render(config.format);
    if outcome.exit_code == EXIT_OK || outcome.exit_code == EXIT_MISMATCH {
        if let Err(e) = emit(&config, &outcome.report, &rendered, stdout) {
            outcome.exit_code = EXIT_IO;
            let _ = write!(
                stderr,
                "{}",
                error_report("io", EXIT_IO, e.to_string()).render(config.format)
            );
        }
    } else {
        // Failed runs still produce a complete record; checks keep their
        // full report on stdout, everything else goes to stderr.
        match outcome.report {
            Report::Error(_) => {
                let _ = write!(stderr, "{rendered}");
            }
            _ => {
                let _ = emit(&config, &outcome.report, &rendered, stdout);
            }
        }
    }
    outcome.exit_code
}

fn emit(config: &RunConfig, report: &Report, rendered: &str, stdout: &mut dyn Write) -> std::io::Result<()> {
    let writes_instance_file = matches!(config.command, Command::Generate { .. });
    match &config.out {
        Some(path) if !writes_instance_file => std::fs::write(path, rendered)?,
        _ => stdout.write_all(rendered.as_bytes())?,
    }
    if let (Some(path), Some(series)) = (&config.plot, report.plot_series()) {
        let title = match report {
            Report::Compare(_) => "theorem vs oracle",
            _ => "spectra",
        };
        std::fs::write(path, plot::scatter_svg(title, &series))?;
    }
    Ok(())
}
