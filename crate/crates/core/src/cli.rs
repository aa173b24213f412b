//! Command surface of the `trisys` binary.
//!
//! Exit codes: 0 success, 1 a check ran and failed, 2 the input could not be
//! checked (bad usage, unreadable or malformed file, dimension over a cap).

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::connect::{partition, ConnectionMode};
use crate::decompose::{check_decomposition, is_minimal, DEFAULT_ORACLE_CAP};
use crate::error::{DecomposeError, SplitError, SystemError};
use crate::format::{content_hash, parse_leibniz, serialize_system, SystemFile};
use crate::identities::{check_identities, Family, DEFAULT_IDENTITY_CAP};
use crate::jideal::{compute_jideal, SplitSystem};
use crate::leibniz::lift_from_leibniz;
use crate::report::*;
use crate::Rational;

pub const CAP_ENV: &str = "TRISYS_CAP";

#[derive(Parser, Debug)]
#[command(name = "trisys", version, about = "Exact analysis of triple systems with a multiplicative basis")]
pub struct Cli {
    /// Largest dimension for the identity check (overrides TRISYS_CAP).
    #[arg(long, global = true, value_name = "N")]
    cap: Option<usize>,
    /// Emit one JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Process several files, one report each, in argument order.
    #[arg(long, global = true)]
    each: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug, Clone)]
enum Command {
    /// Check the defining identities.
    Verify {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long, value_enum, default_value_t = FamilyArg::Both)]
        family: FamilyArg,
    },
    /// Compute the ideal generated by the Lie deviations.
    Jideal {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Split the basis into I and J.
    Split {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        /// Declare I explicitly, e.g. "1,3" or "" for the empty set.
        #[arg(long, value_name = "ISET", value_parser = parse_iset)]
        generic: Option<IndexList>,
    },
    /// Connection classes and the direct-sum decomposition.
    Decompose {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long, value_enum, default_value_t = ModeArg::Literal)]
        mode: ModeArg,
        /// Declare I explicitly and skip the identity check.
        #[arg(long, value_name = "ISET", value_parser = parse_iset)]
        generic: Option<IndexList>,
    },
    /// Minimality verdict.
    Minimal {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long, value_enum, default_value_t = ModeArg::Literal)]
        mode: ModeArg,
        /// Largest dimension for the exhaustive ideal enumeration.
        #[arg(long, value_name = "N", default_value_t = DEFAULT_ORACLE_CAP)]
        oracle_cap: usize,
        /// Declare I explicitly and skip the identity check.
        #[arg(long, value_name = "ISET", value_parser = parse_iset)]
        generic: Option<IndexList>,
    },
    /// Lift a bracket file to its triple system.
    LiftLeibniz {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// The full pipeline.
    Report {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long, value_enum, default_value_t = ModeArg::Literal)]
        mode: ModeArg,
        #[arg(long, value_name = "N", default_value_t = DEFAULT_ORACLE_CAP)]
        oracle_cap: usize,
    },
}

impl Command {
    fn files(&self) -> &[PathBuf] {
        match self {
            Command::Verify { files, .. }
            | Command::Jideal { files }
            | Command::Split { files, .. }
            | Command::Decompose { files, .. }
            | Command::Minimal { files, .. }
            | Command::LiftLeibniz { files }
            | Command::Report { files, .. } => files,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum FamilyArg {
    Four,
    Two,
    Both,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Four => Family::Four,
            FamilyArg::Two => Family::Two,
            FamilyArg::Both => Family::Both,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ModeArg {
    Literal,
    Restricted,
}

impl From<ModeArg> for ConnectionMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Literal => ConnectionMode::Literal,
            ModeArg::Restricted => ConnectionMode::Restricted,
        }
    }
}

#[derive(Clone, Debug)]
struct IndexList(Vec<usize>);

fn parse_iset(s: &str) -> Result<IndexList, String> {
    s.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| p.parse::<usize>().map_err(|_| format!("invalid index {p:?}")))
        .collect::<Result<Vec<_>, _>>()
        .map(IndexList)
}

/// Captured result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Why a file did not produce a clean report.
#[derive(Debug)]
enum Failure {
    /// The input could not be checked (exit 2).
    Input(String),
    /// A check ran and failed; the partial report is still shown (exit 1).
    Check(Option<Box<Report>>, String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Input(_) => 2,
            Failure::Check(..) => 1,
        }
    }
}

impl From<SystemError> for Failure {
    fn from(e: SystemError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<SplitError> for Failure {
    fn from(e: SplitError) -> Self {
        match e {
            SplitError::NotAdmissible(_) => Failure::Check(None, e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl From<DecomposeError> for Failure {
    fn from(e: DecomposeError) -> Self {
        match e {
            DecomposeError::CapExceeded { .. } => Failure::Input(e.to_string()),
            _ => Failure::Check(None, e.to_string()),
        }
    }
}

impl From<crate::error::ConnectError> for Failure {
    fn from(e: crate::error::ConnectError) -> Self {
        Failure::Check(None, e.to_string())
    }
}

struct Settings {
    cap: usize,
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(e.to_string()))
}

fn load(path: &Path) -> Result<(SystemFile<Rational>, Source), Failure> {
    let file = SystemFile::parse(&read(path)?).map_err(|e| Failure::Input(e.to_string()))?;
    let source = Source { file: path.display().to_string(), hash: file.hash.clone(), dim: file.system.dim() };
    Ok((file, source))
}

fn verify_report(
    file: &SystemFile<Rational>,
    source: &Source,
    family: Family,
    cap: usize,
) -> Result<VerifyReport, Failure> {
    let report = check_identities(&file.system, family, cap)?;
    Ok(VerifyReport::new(source.clone(), cap, &report))
}

/// Identity check (Leibniz mode only) followed by the split.
fn split(
    file: &SystemFile<Rational>,
    source: &Source,
    generic: Option<&IndexList>,
    settings: &Settings,
) -> Result<(Option<VerifyReport>, SplitSystem<Rational>), Failure> {
    if let Some(IndexList(iset)) = generic {
        return Ok((None, SplitSystem::generic(&file.system, iset)?));
    }
    let verify = verify_report(file, source, Family::Both, settings.cap)?;
    if !verify.leibniz {
        return Err(Failure::Check(Some(Box::new(Report::Verify(verify))), "defining identities fail".into()));
    }
    Ok((Some(verify), SplitSystem::leibniz(&file.system)?))
}

fn decompose_report(
    s: &SplitSystem<Rational>,
    source: &Source,
    mode: ConnectionMode,
) -> Result<DecomposeReport, Failure> {
    let report = check_decomposition(s, mode)?;
    let other = match mode {
        ConnectionMode::Literal => ConnectionMode::Restricted,
        ConnectionMode::Restricted => ConnectionMode::Literal,
    };
    let other_classes = partition(s, other)?.classes().to_vec();
    let classes: Vec<Vec<usize>> = report.components.iter().map(|c| c.indices.clone()).collect();
    let differs = (other_classes != classes).then_some(other_classes);
    Ok(DecomposeReport::new(source.clone(), s, &report, differs))
}

fn run_file(command: &Command, path: &Path, settings: &Settings) -> Result<Report, Failure> {
    match command {
        Command::LiftLeibniz { .. } => {
            let text = read(path)?;
            let table = parse_leibniz::<Rational>(&text).map_err(|e| Failure::Input(e.to_string()))?;
            let sys = lift_from_leibniz(&table).map_err(|e| match e {
                SystemError::NotLeibniz(..) | SystemError::NotMultiplicative(..) => Failure::Check(None, e.to_string()),
                other => Failure::Input(other.to_string()),
            })?;
            let bracket_text = crate::format::serialize_leibniz(&table);
            let system = serialize_system(&sys);
            Ok(Report::LiftLeibniz(LiftReport {
                source: Source {
                    file: path.display().to_string(),
                    hash: content_hash(&bracket_text),
                    dim: table.dim(),
                },
                system_hash: content_hash(&system),
                system,
            }))
        }
        Command::Verify { family, .. } => {
            let (file, source) = load(path)?;
            let report = verify_report(&file, &source, (*family).into(), settings.cap)?;
            if report.leibniz {
                Ok(Report::Verify(report))
            } else {
                Err(Failure::Check(Some(Box::new(Report::Verify(report))), "defining identities fail".into()))
            }
        }
        Command::Jideal { .. } => {
            let (file, source) = load(path)?;
            Ok(Report::Jideal(JidealReport::new(source, &compute_jideal(&file.system))))
        }
        Command::Split { generic, .. } => {
            let (file, source) = load(path)?;
            let (_, s) = split(&file, &source, generic.as_ref(), settings)?;
            Ok(Report::Split(SplitReport::new(source, &s)))
        }
        Command::Decompose { mode, generic, .. } => {
            let (file, source) = load(path)?;
            let (_, s) = split(&file, &source, generic.as_ref(), settings)?;
            let report = decompose_report(&s, &source, (*mode).into())?;
            if report.holds {
                Ok(Report::Decompose(report))
            } else {
                Err(Failure::Check(Some(Box::new(Report::Decompose(report))), "decomposition fails".into()))
            }
        }
        Command::Minimal { mode, oracle_cap, generic, .. } => {
            let (file, source) = load(path)?;
            let (_, s) = split(&file, &source, generic.as_ref(), settings)?;
            let verdict = is_minimal(&s, (*mode).into(), *oracle_cap)?;
            Ok(Report::Minimal(MinimalReport::new(source, &verdict)))
        }
        Command::Report { mode, oracle_cap, .. } => {
            let (file, source) = load(path)?;
            let jideal = JidealReport::new(source.clone(), &compute_jideal(&file.system));
            let mut pipeline = PipelineReport { verify: None, jideal, split: None, decompose: None, minimal: None };
            let s = match split(&file, &source, None, settings) {
                Ok((verify, s)) => {
                    pipeline.verify = verify;
                    s
                }
                Err(Failure::Check(Some(report), msg)) => {
                    if let Report::Verify(v) = *report {
                        pipeline.verify = Some(v);
                    }
                    return Err(Failure::Check(Some(Box::new(Report::Report(pipeline))), msg));
                }
                Err(e) => return Err(e),
            };
            pipeline.split = Some(SplitReport::new(source.clone(), &s));
            let mode = (*mode).into();
            let decompose = decompose_report(&s, &source, mode)?;
            let holds = decompose.holds;
            pipeline.decompose = Some(decompose);
            if !holds {
                return Err(Failure::Check(Some(Box::new(Report::Report(pipeline))), "decomposition fails".into()));
            }
            pipeline.minimal = Some(MinimalReport::new(source, &is_minimal(&s, mode, *oracle_cap)?));
            Ok(Report::Report(pipeline))
        }
    }
}

#[derive(Serialize)]
struct BatchItem<'a> {
    file: String,
    exit_code: i32,
    report: Option<&'a Report>,
    error: Option<&'a str>,
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize") + "\n"
}

/// Resolves the identity cap: flag, then environment, then the default.
fn resolve_cap(flag: Option<usize>, env: Option<&str>) -> Result<usize, String> {
    match (flag, env) {
        (Some(cap), _) => Ok(cap),
        (None, Some(text)) => {
            text.trim().parse().map_err(|_| format!("{CAP_ENV}={text:?} is not a nonnegative integer"))
        }
        (None, None) => Ok(DEFAULT_IDENTITY_CAP),
    }
}

/// Runs one invocation. `env_cap` is the value of `TRISYS_CAP`, if set.
pub fn run<I, T>(args: I, env_cap: Option<&str>) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Outcome { code: 0, stdout: text, stderr: String::new() }
                }
                _ => Outcome { code: 2, stdout: String::new(), stderr: text },
            };
        }
    };
    let usage_error = |msg: String| Outcome { code: 2, stdout: String::new(), stderr: format!("error: {msg}\n") };
    let cap = match resolve_cap(cli.cap, env_cap) {
        Ok(cap) => cap,
        Err(msg) => return usage_error(msg),
    };
    let settings = Settings { cap };
    let files = cli.command.files();
    if files.len() > 1 && !cli.each {
        return usage_error("several files given; pass --each for a batch".into());
    }

    let results: Vec<Result<Report, Failure>> = std::thread::scope(|scope| {
        let handles: Vec<_> = files
            .iter()
            .map(|path| {
                let (command, settings) = (&cli.command, &settings);
                scope.spawn(move || run_file(command, path, settings))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });

    let code = results.iter().map(|r| r.as_ref().err().map_or(0, Failure::code)).max().unwrap_or(0);
    let mut stdout = String::new();
    let mut stderr = String::new();
    for (path, result) in files.iter().zip(&results) {
        let (report, error) = match result {
            Ok(report) => (Some(report), None),
            Err(Failure::Check(report, msg)) => (report.as_deref(), Some(msg.as_str())),
            Err(Failure::Input(msg)) => (None, Some(msg.as_str())),
        };
        if let Some(msg) = error {
            stderr.push_str(&format!("{}: {msg}\n", path.display()));
        }
        if cli.json {
            continue;
        }
        if cli.each {
            stdout.push_str(&format!("== {} ==\n", path.display()));
        }
        if let Some(report) = report {
            stdout.push_str(&report.to_string());
        }
    }
    if cli.json {
        if cli.each {
            let items: Vec<BatchItem> = files
                .iter()
                .zip(&results)
                .map(|(path, r)| {
                    let (report, error) = match r {
                        Ok(report) => (Some(report), None),
                        Err(Failure::Check(report, msg)) => (report.as_deref(), Some(msg.as_str())),
                        Err(Failure::Input(msg)) => (None, Some(msg.as_str())),
                    };
                    BatchItem {
                        file: path.display().to_string(),
                        exit_code: r.as_ref().err().map_or(0, Failure::code),
                        report,
                        error,
                    }
                })
                .collect();
            stdout = to_json(&items);
        } else {
            match &results[0] {
                Ok(report) => stdout = to_json(report),
                Err(Failure::Check(Some(report), _)) => stdout = to_json(report),
                _ => {}
            }
        }
    }
    Outcome { code, stdout, stderr }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn file(text: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::Builder::new().suffix(".lts").tempfile().unwrap();
        f.write_all(text.as_bytes()).unwrap();
        f
    }

    fn trisys(args: &[&str]) -> Outcome {
        run(std::iter::once("trisys").chain(args.iter().copied()), None)
    }

    const JTS2A: &str = "dim 2\nprod 1 2 1 = 1 * 2\nprod 2 1 1 = -1 * 2\n";
    const NF3T: &str = "dim 3\nprod 1 1 1 = 1 * 3\n";

    #[test]
    fn verify_golden() {
        let f = file(JTS2A);
        let out = trisys(&["verify", f.path().to_str().unwrap()]);
        assert_eq!(out.code, 0, "{}", out.stderr);
        assert!(out.stdout.contains("leibniz: yes; multiplicative: yes"));
    }

    #[test]
    fn decompose_and_minimal_nf3t() {
        let f = file(NF3T);
        let p = f.path().to_str().unwrap();
        let out = trisys(&["decompose", p]);
        assert_eq!(out.code, 0, "{}", out.stderr);
        assert!(out.stdout.contains("classes: {1,3} {2}"));
        assert!(out.stdout.contains("  prod 1 1 1 = 1 * 3"));
        assert!(out.stdout.contains("orthogonality:\n  1 1\n  1 1\n"));
        let out = trisys(&["minimal", p]);
        assert_eq!(out.code, 0);
        assert!(out.stdout.contains("verdict: not_minimal"));
        assert!(out.stdout.contains("counterexample ideal: {2}"));
    }

    #[test]
    fn cap_precedence() {
        assert_eq!(resolve_cap(Some(3), Some("7")), Ok(3));
        assert_eq!(resolve_cap(None, Some("7")), Ok(7));
        assert_eq!(resolve_cap(None, None), Ok(DEFAULT_IDENTITY_CAP));
        assert!(resolve_cap(None, Some("x")).is_err());
        let f = file(NF3T);
        let p = f.path().to_str().unwrap();
        assert_eq!(run(["trisys", "verify", p], Some("2")).code, 2);
        assert_eq!(run(["trisys", "verify", p, "--cap", "3"], Some("2")).code, 0);
        assert_eq!(run(["trisys", "verify", p], Some("many")).code, 2);
    }

    #[test]
    fn usage_errors() {
        assert_eq!(trisys(&["frobnicate"]).code, 2);
        assert_eq!(trisys(&["verify"]).code, 2);
        assert_eq!(trisys(&["verify", "--nope", "x"]).code, 2);
        assert_eq!(trisys(&["--help"]).code, 0);
        let (a, b) = (file(JTS2A), file(NF3T));
        let (a, b) = (a.path().to_str().unwrap(), b.path().to_str().unwrap());
        assert_eq!(trisys(&["verify", a, b]).code, 2);
        let out = trisys(&["verify", "--each", a, b]);
        assert_eq!(out.code, 0);
        assert_eq!(out.stdout.matches("== ").count(), 2);
        assert!(out.stdout.find(a).unwrap() < out.stdout.find(b).unwrap());
    }
}
