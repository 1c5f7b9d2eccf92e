//! Command-line front end. Exit codes: 0 certified or holds, 1 refuted, 2 inconclusive,
//! 3 input error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::io::{write_report, write_traces, Environment, MatrixFile, ReportFile, SystemFile};
use crate::linalg::{set_float_tolerance, Matrix, Rational, Scalar};
use crate::obsv::{self, Certificate, Conclusion, PropertyKind};
use crate::oracle::{falsify_matrix_vb, falsify_operator_vb, OracleReport};
use crate::signcons::{self, CheckOutcome};

pub const EXIT_HOLDS: i32 = 0;
pub const EXIT_REFUTED: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "varbound", version, about = "Sign-consistency and variation-bound certificates")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a sign or variation property of a finite matrix.
    CheckMatrix(CheckMatrixArgs),
    /// Certify a property of the observability, controllability or Hankel operator.
    Certify(CertifyArgs),
    /// Search for inputs whose outputs exceed the variation bound.
    Oracle(OracleArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Arith {
    Exact,
    Float,
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    #[arg(long, value_enum, default_value_t = Arith::Exact)]
    pub arith: Arith,
    /// Float zero tolerance.
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    /// Directory for report.json and traces.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MatrixProperty {
    Sc,
    Ssc,
    Sr,
    Tp,
    Vb,
    Vd,
}

#[derive(Debug, Args)]
pub struct CheckMatrixArgs {
    /// JSON file with a `matrix` field of decimal strings.
    pub file: PathBuf,
    #[arg(long)]
    pub k: usize,
    #[arg(long, value_enum)]
    pub property: MatrixProperty,
    #[arg(long)]
    pub strict: bool,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OperatorProperty {
    Svb,
    Vb,
    Kpos,
    Vd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TargetArg {
    Obsv,
    Ctrb,
    Hankel,
}

#[derive(Debug, Args)]
pub struct CertifyArgs {
    /// JSON system file with `A`, `c` and optionally `b`.
    pub file: PathBuf,
    #[arg(long)]
    pub k: usize,
    #[arg(long, value_enum)]
    pub property: OperatorProperty,
    #[arg(long, value_enum, default_value_t = TargetArg::Obsv)]
    pub target: TargetArg,
    #[arg(long, default_value_t = 50)]
    pub horizon: usize,
    /// For `kpos`: allow order-`k` minors to vanish.
    #[arg(long)]
    pub nonstrict: bool,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    /// JSON system file, or a matrix file with a `matrix` field.
    pub file: PathBuf,
    #[arg(long)]
    pub k: usize,
    #[arg(long, default_value_t = 1000)]
    pub trials: u64,
    #[arg(long, default_value_t = 50)]
    pub horizon: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Count output sign changes with the upper variation.
    #[arg(long)]
    pub strict: bool,
    #[command(flatten)]
    pub common: CommonArgs,
}

/// Parses arguments, runs one command, prints the report and returns the exit code.
pub fn run<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_HOLDS };
        }
    };
    match execute(&cli.command) {
        Ok(report) => {
            let _ = writeln!(std::io::stdout(), "{}", report.to_json());
            report.exit_code
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_INPUT
        }
    }
}

/// Runs a parsed command; input problems surface as `Err`.
pub fn execute(command: &Command) -> Result<ReportFile> {
    let common = match command {
        Command::CheckMatrix(a) => &a.common,
        Command::Certify(a) => &a.common,
        Command::Oracle(a) => &a.common,
    };
    set_float_tolerance(common.tol)?;
    let report = match (command, common.arith) {
        (Command::CheckMatrix(a), Arith::Exact) => check_matrix::<Rational>(a)?,
        (Command::CheckMatrix(a), Arith::Float) => check_matrix::<f64>(a)?,
        (Command::Certify(a), Arith::Exact) => certify::<Rational>(a)?,
        (Command::Certify(a), Arith::Float) => certify::<f64>(a)?,
        (Command::Oracle(a), Arith::Exact) => oracle::<Rational>(a)?,
        (Command::Oracle(a), Arith::Float) => oracle::<f64>(a)?,
    };
    if let Some(dir) = &common.out {
        write_report(dir, &report)?;
    }
    Ok(report)
}

fn environment(command: &str, file: &Path, common: &CommonArgs) -> Environment {
    Environment {
        command: command.into(),
        input: file.display().to_string(),
        backend: match common.arith {
            Arith::Exact => "exact".into(),
            Arith::Float => "float".into(),
        },
        tol: common.tol,
        k: None,
        property: None,
        target: None,
        horizon: None,
        strict: None,
        trials: None,
        seed: None,
    }
}

fn float_warning(count: usize) -> Vec<String> {
    if count == 0 {
        Vec::new()
    } else {
        let w = format!("{count} entries given as JSON numbers; use decimal strings for exact input");
        eprintln!("warning: {w}");
        vec![w]
    }
}

fn to_value(v: &impl Serialize) -> serde_json::Value {
    serde_json::to_value(v).expect("result serializes")
}

fn holds_exit(holds: Option<bool>) -> i32 {
    match holds {
        Some(true) => EXIT_HOLDS,
        Some(false) => EXIT_REFUTED,
        None => EXIT_INCONCLUSIVE,
    }
}

fn check_matrix<T: Scalar>(args: &CheckMatrixArgs) -> Result<ReportFile> {
    let file = MatrixFile::read(&args.file)?;
    let x: Matrix<T> = file.matrix()?;
    let mut env = environment("check-matrix", &args.file, &args.common);
    env.k = Some(args.k);
    env.property = Some(format!("{:?}", args.property).to_lowercase());
    env.strict = Some(args.strict);
    let outcome_report = |o: CheckOutcome| (holds_exit(o.holds), to_value(&o));
    let (exit_code, result) = match args.property {
        MatrixProperty::Sc => outcome_report(signcons::sign_consistent(&x, args.k, args.strict)?),
        MatrixProperty::Ssc => outcome_report(signcons::sign_consistent(&x, args.k, true)?),
        MatrixProperty::Sr => outcome_report(signcons::sign_regular(&x, args.k, args.strict)?),
        MatrixProperty::Tp => outcome_report(signcons::k_positive(&x, args.k, args.strict)?),
        MatrixProperty::Vb => {
            let rep = signcons::vb_matrix_check(&x, args.k)?;
            let holds = if args.strict { rep.svb.holds } else { rep.vb.holds };
            (holds_exit(holds), to_value(&rep))
        }
        MatrixProperty::Vd => match signcons::vd_matrix_check(&x, args.k) {
            Ok(rep) => (holds_exit(rep.vd.holds), to_value(&rep)),
            Err(e @ Error::HypothesisNotMet(_)) => (EXIT_INCONCLUSIVE, serde_json::json!({ "error": e.to_string() })),
            Err(e) => return Err(e),
        },
    };
    Ok(ReportFile { environment: env, exit_code, result, traces: Vec::new(), warnings: float_warning(file.float_literals()) })
}

fn certify<T: Scalar>(args: &CertifyArgs) -> Result<ReportFile> {
    let file = SystemFile::read(&args.file)?;
    let a: Matrix<T> = file.matrix_a()?;
    let c: Vec<T> = file.vector_c()?;
    let b: Option<Vec<T>> = file.vector_b()?;
    let mut env = environment("certify", &args.file, &args.common);
    env.k = Some(args.k);
    env.property = Some(format!("{:?}", args.property).to_lowercase());
    env.target = Some(format!("{:?}", args.target).to_lowercase());
    env.horizon = Some(args.horizon);
    env.strict = Some(!args.nonstrict);
    let property = match args.property {
        OperatorProperty::Svb => PropertyKind::Svb,
        OperatorProperty::Vb => PropertyKind::Vb,
        OperatorProperty::Kpos => PropertyKind::KPositive,
        OperatorProperty::Vd => PropertyKind::Vd,
    };
    let need_b = || b.clone().ok_or_else(|| Error::Parse("this target needs `b` in the system file".into()));
    let outcome: Result<Certificate> = match args.target {
        TargetArg::Obsv if property == PropertyKind::KPositive => {
            obsv::certify_k_positive(&a, &c, args.k, !args.nonstrict, args.horizon)
        }
        TargetArg::Obsv => obsv::certify(&a, &c, property, args.k, args.horizon),
        TargetArg::Ctrb => obsv::certify_controllability(&a, &need_b()?, property, args.k, args.horizon),
        TargetArg::Hankel => {
            let sys = crate::lti::LtiSystem::new(a.clone(), need_b()?, c.clone())?;
            obsv::certify_hankel(&sys, property, args.k, args.horizon)
        }
    };
    let warnings = float_warning(file.float_literals());
    match outcome {
        Ok(cert) => {
            let traces = match &args.common.out {
                Some(dir) => write_traces(dir, &cert)?,
                None => Vec::new(),
            };
            Ok(ReportFile { environment: env, exit_code: cert.conclusion.exit_code(), result: to_value(&cert), traces, warnings })
        }
        Err(e @ Error::NotObservable { .. }) => Ok(ReportFile {
            environment: env,
            exit_code: Conclusion::Inconclusive.exit_code(),
            result: serde_json::json!({ "error": e.to_string() }),
            traces: Vec::new(),
            warnings,
        }),
        Err(e) => Err(e),
    }
}

fn oracle<T: Scalar>(args: &OracleArgs) -> Result<ReportFile> {
    let mut env = environment("oracle", &args.file, &args.common);
    env.k = Some(args.k);
    env.trials = Some(args.trials);
    env.seed = Some(args.seed);
    env.strict = Some(args.strict);
    let (report, warnings): (OracleReport, Vec<String>) = match SystemFile::read(&args.file) {
        Ok(file) => {
            env.horizon = Some(args.horizon);
            let a: Matrix<T> = file.matrix_a()?;
            let c: Vec<T> = file.vector_c()?;
            let rep = falsify_operator_vb(&a, &c, args.k, args.strict, args.horizon, args.trials, args.seed)?;
            (rep, float_warning(file.float_literals()))
        }
        Err(_) => {
            let file = MatrixFile::read(&args.file)?;
            let x: Matrix<T> = file.matrix()?;
            (falsify_matrix_vb(&x, args.k, args.strict, args.trials, args.seed), float_warning(file.float_literals()))
        }
    };
    let exit_code = if report.violation_count() > 0 { EXIT_REFUTED } else { EXIT_HOLDS };
    Ok(ReportFile { environment: env, exit_code, result: to_value(&report), traces: Vec::new(), warnings })
}
