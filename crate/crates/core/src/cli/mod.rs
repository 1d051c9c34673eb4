//! Batch command-line interface over JSON problem files.
//!
//! Exit codes: 0 on success, 2 for unreadable or invalid input, 3 when a
//! computation fails. Errors are reported as a JSON object on standard output.

pub mod problem;
pub mod record;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde_json::json;

use crate::cone;
use crate::interval::{self, Interval};
use crate::scalar;
use crate::{QuadraticNumber, Rational};
use problem::{ConePayload, InputError, Kind, LogConvexityPayload, MonomialPayload, OutputFormat, ProblemFile, SurfacePayload, ToricPayload};
use record::{CheckOutcome, CheckStatus, ResultRecord, SequenceTable};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_COMPUTE: i32 = 3;

const DEFAULT_M_MAX: u64 = 8;
const DEFAULT_P_MAX: u64 = 6;

#[derive(Debug, Parser)]
#[command(name = "locvol", version, about = "Exact local volumes, multiplicities and cone-singularity volumes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Largest level m for h¹ and λ_m tables.
    #[arg(long, global = true)]
    m_max: Option<u64>,
    /// Largest power p for multiplicity tables.
    #[arg(long, global = true)]
    p_max: Option<u64>,
    #[arg(long, global = true, value_enum)]
    output: Option<OutputFormat>,
    /// Wrap the record with a timestamp and version.
    #[arg(long, global = true)]
    meta: bool,
}

#[derive(Debug, Clone, Subcommand)]
enum Command {
    /// Local volume of a toric divisor.
    ToricVolume { file: PathBuf },
    /// h¹ table of a toric divisor.
    ToricH1 { file: PathBuf },
    /// Local multiplicity of a monomial ideal.
    MonomialMult { file: PathBuf },
    /// Volume of a surface singularity from its dual graph.
    SurfaceVolume { file: PathBuf },
    /// vol of a cone singularity.
    ConeVolume { file: PathBuf },
    /// vol_γ of a cone singularity.
    ConeGamma { file: PathBuf },
    /// Vol = Mⁿ·H^{n−1} of a cone singularity.
    BdffVolume { file: PathBuf },
    /// λ_m table of a cone singularity.
    LambdaSeq { file: PathBuf },
    /// Multiplicities of the graded sequence of a toric divisor.
    FujitaCheck { file: PathBuf },
    /// Certified check of vol((D₁+D₂)/2)^{1/n} ≤ (vol(D₁)^{1/n} + vol(D₂)^{1/n})/2.
    ConvexityCheck { file: PathBuf },
}

impl Command {
    fn file(&self) -> &PathBuf {
        match self {
            Command::ToricVolume { file }
            | Command::ToricH1 { file }
            | Command::MonomialMult { file }
            | Command::SurfaceVolume { file }
            | Command::ConeVolume { file }
            | Command::ConeGamma { file }
            | Command::BdffVolume { file }
            | Command::LambdaSeq { file }
            | Command::FujitaCheck { file }
            | Command::ConvexityCheck { file } => file,
        }
    }

    fn kinds(&self) -> &'static [Kind] {
        match self {
            Command::ToricVolume { .. } | Command::ToricH1 { .. } => &[Kind::Toric],
            Command::MonomialMult { .. } => &[Kind::Monomial],
            Command::SurfaceVolume { .. } => &[Kind::Surface],
            Command::ConeVolume { .. } | Command::ConeGamma { .. } | Command::BdffVolume { .. } => {
                &[Kind::Cone, Kind::Tcomp]
            }
            Command::LambdaSeq { .. } => &[Kind::Cone],
            Command::FujitaCheck { .. } => &[Kind::Fujita],
            Command::ConvexityCheck { .. } => &[Kind::Logconvexity],
        }
    }
}

enum Failure {
    Input(InputError),
    Compute { name: String, message: String },
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure::Input(e)
    }
}

fn compute<E: std::fmt::Display>(name: &str, e: E) -> Failure {
    Failure::Compute { name: name.into(), message: e.to_string() }
}

macro_rules! computed {
    ($e:expr) => {
        $e.map_err(|err| compute(err.name(), &err))?
    };
}

fn input(name: &str, message: impl ToString) -> Failure {
    Failure::Input(InputError { name: name.into(), message: message.to_string() })
}

fn payload<T: DeserializeOwned>(p: &ProblemFile) -> Result<T, Failure> {
    serde_json::from_value(p.payload.clone()).map_err(|e| input("SchemaViolation", format!("payload: {e}")))
}

struct Settings {
    m_max: Option<u64>,
    p_max: Option<u64>,
}

fn rational(q: &Rational) -> QuadraticNumber {
    QuadraticNumber::rational(q.clone())
}

fn root_interval(v: &Rational, n: usize) -> Interval {
    interval::nth_root(v, n, &interval::default_width())
}

fn dispatch(cmd: &Command, p: &ProblemFile, echo: serde_json::Value, s: &Settings) -> Result<ResultRecord, Failure> {
    match cmd {
        Command::ToricVolume { .. } | Command::ToricH1 { .. } => {
            let d = payload::<ToricPayload>(p)?.divisor()?;
            let vol = computed!(d.local_volume());
            let mut rec = ResultRecord::new(echo, &rational(&vol), "toric::local_volume");
            let m_max = match cmd {
                Command::ToricH1 { .. } => Some(s.m_max.unwrap_or(DEFAULT_M_MAX)),
                _ => s.m_max,
            };
            if let Some(m) = m_max {
                let seq = computed!(d.h1_sequence(m));
                rec.sequences.push(SequenceTable::new("h1", ["m", "count", "normalized"], &seq));
                rec.provenance = "toric::h1_sequence".into();
            }
            Ok(rec)
        }
        Command::MonomialMult { .. } => {
            let ideal = payload::<MonomialPayload>(p)?.ideal()?;
            let mult = computed!(ideal.asymptotic_multiplicity());
            let mut rec = ResultRecord::new(echo, &rational(&mult), "monomial::asymptotic_multiplicity");
            if let Some(pm) = s.p_max {
                let pm = u32::try_from(pm).map_err(|_| input("InvalidOption", "p_max too large"))?;
                let seq = computed!(ideal.multiplicity_sequence(pm));
                rec.sequences.push(SequenceTable::new("multiplicity", ["p", "mult", "normalized"], &seq));
            }
            Ok(rec)
        }
        Command::SurfaceVolume { .. } => {
            let sp = payload::<SurfacePayload>(p)?;
            let graph = sp.graph()?;
            let (vol, prov) = match sp.divisor()? {
                Some(d) => (computed!(graph.divisor_local_volume(&d)), "surface::divisor_local_volume"),
                None => (computed!(graph.singularity_volume()), "surface::singularity_volume"),
            };
            Ok(ResultRecord::new(echo, &rational(&vol), prov))
        }
        Command::ConeVolume { .. } => {
            let model = payload::<ConePayload>(p)?.model()?;
            let v = computed!(cone::cone_singularity_volume(&model));
            Ok(ResultRecord::new(echo, &v, "cone::cone_singularity_volume"))
        }
        Command::ConeGamma { .. } => {
            let model = payload::<ConePayload>(p)?.model()?;
            let v = computed!(cone::cone_gamma_volume(&model));
            Ok(ResultRecord::new(echo, &v, "cone::cone_gamma_volume"))
        }
        Command::BdffVolume { .. } => {
            let model = payload::<ConePayload>(p)?.model()?;
            let big = computed!(cone::bdff_cone_volume(&model));
            let mut rec = ResultRecord::new(echo, &big, "cone::bdff_cone_volume");
            if p.kind == Kind::Tcomp {
                let vol = computed!(cone::cone_singularity_volume(&model));
                let mut details = BTreeMap::new();
                details.insert("Vol".into(), big.to_string());
                details.insert("vol".into(), vol.to_string());
                let status = if big >= vol { CheckStatus::Holds } else { CheckStatus::Fails };
                rec.check = Some(CheckOutcome { statement: "Vol >= vol".into(), status, details });
            }
            Ok(rec)
        }
        Command::LambdaSeq { .. } => {
            let model = payload::<ConePayload>(p)?.model()?;
            let seq = computed!(cone::lambda_sequence(&model, s.m_max.unwrap_or(DEFAULT_M_MAX)));
            let v = computed!(cone::cone_singularity_volume(&model));
            let mut rec = ResultRecord::new(echo, &v, "cone::lambda_sequence");
            rec.sequences.push(SequenceTable::new("lambda", ["m", "count", "normalized"], &seq));
            Ok(rec)
        }
        Command::FujitaCheck { .. } => {
            let d = payload::<ToricPayload>(p)?.divisor()?;
            let vol = computed!(d.local_volume());
            let seq = computed!(d.fujita_sequence(s.p_max.unwrap_or(DEFAULT_P_MAX)));
            let mut rec = ResultRecord::new(echo, &rational(&vol), "toric::fujita_sequence");
            rec.sequences.push(SequenceTable::new("fujita", ["p", "mult", "normalized"], &seq));
            let mut details = BTreeMap::new();
            details.insert("local_volume".into(), scalar::format_rational(&vol));
            let status = match seq.last() {
                Some(last) => {
                    details.insert("last_normalized".into(), scalar::format_rational(&last.normalized));
                    let err = (&last.normalized - &vol) / if vol == scalar::int(0) { scalar::int(1) } else { vol.clone() };
                    details.insert("relative_error".into(), scalar::format_rational(&err));
                    if num_traits::Signed::abs(&err) <= scalar::rat(1, 10) {
                        CheckStatus::Holds
                    } else {
                        CheckStatus::Fails
                    }
                }
                None => CheckStatus::Undetermined,
            };
            rec.check = Some(CheckOutcome {
                statement: "|mult_p·n!/pⁿ − vol|/vol ≤ 1/10 at the largest p".into(),
                status,
                details,
            });
            Ok(rec)
        }
        Command::ConvexityCheck { .. } => {
            let [d1, d2, mid] = payload::<LogConvexityPayload>(p)?.divisors()?;
            let n = d1.datum().dim();
            let v1 = computed!(d1.local_volume());
            let v2 = computed!(d2.local_volume());
            let vm = computed!(mid.local_volume());
            let lhs = root_interval(&vm, n);
            let rhs = (root_interval(&v1, n) + root_interval(&v2, n)).scale(&scalar::rat(1, 2));
            let status = if lhs.hi <= rhs.lo {
                CheckStatus::Holds
            } else if rhs.certainly_less(&lhs) {
                CheckStatus::Fails
            } else {
                CheckStatus::Undetermined
            };
            let mut details = BTreeMap::new();
            for (k, v) in [("vol_first", &v1), ("vol_second", &v2), ("vol_mid", &vm)] {
                details.insert(k.into(), scalar::format_rational(v));
            }
            details.insert("lhs_interval".into(), format!("[{}, {}]", lhs.lo, lhs.hi));
            details.insert("rhs_interval".into(), format!("[{}, {}]", rhs.lo, rhs.hi));
            let mut rec = ResultRecord::new(echo, &rational(&vm), "toric::local_volume");
            rec.check = Some(CheckOutcome {
                statement: "vol((D1+D2)/2)^(1/n) <= (vol(D1)^(1/n) + vol(D2)^(1/n))/2".into(),
                status,
                details,
            });
            Ok(rec)
        }
    }
}

fn error_object(kind: &str, name: &str, message: &str) -> String {
    let v = json!({ "error": { "kind": kind, "name": name, "message": message } });
    serde_json::to_string_pretty(&v).expect("serializable") + "\n"
}

/// Runs the CLI on `args` (including the program name), writing to `out`.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return EXIT_OK;
            }
            let _ = out.write_all(error_object("validation", "InvalidArguments", &e.to_string()).as_bytes());
            return EXIT_INPUT;
        }
    };
    let (code, text) = execute(&cli);
    let _ = out.write_all(text.as_bytes());
    code
}

fn execute(cli: &Cli) -> (i32, String) {
    let path = cli.command.file();
    let raw = match std::fs::read_to_string(path) {
        Ok(r) => r,
        Err(e) => return (EXIT_INPUT, error_object("validation", "UnreadableInput", &format!("{}: {e}", path.display()))),
    };
    let echo: serde_json::Value = match serde_json::from_str(&raw) {
        Ok(v) => v,
        Err(e) => return (EXIT_INPUT, error_object("validation", "InvalidJson", &e.to_string())),
    };
    let problem: ProblemFile = match serde_json::from_value(echo.clone()) {
        Ok(p) => p,
        Err(e) => return (EXIT_INPUT, error_object("validation", "SchemaViolation", &e.to_string())),
    };
    if !cli.command.kinds().contains(&problem.kind) {
        let kind = serde_json::to_string(&problem.kind).expect("serializable");
        let msg = format!("kind {kind} does not match this subcommand");
        return (EXIT_INPUT, error_object("validation", "KindMismatch", &msg));
    }
    let settings = Settings {
        m_max: cli.m_max.or(problem.options.m_max),
        p_max: cli.p_max.or(problem.options.p_max),
    };
    let format = cli.output.or(problem.options.output).unwrap_or(OutputFormat::Json);
    let rec = match dispatch(&cli.command, &problem, echo, &settings) {
        Ok(r) => r,
        Err(Failure::Input(e)) => return (EXIT_INPUT, error_object("validation", &e.name, &e.message)),
        Err(Failure::Compute { name, message }) => return (EXIT_COMPUTE, error_object("computation", &name, &message)),
    };
    let stamp = || {
        std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0)
    };
    let text = match format {
        OutputFormat::Json => {
            let body = if cli.meta {
                let meta = json!({ "meta": { "version": env!("CARGO_PKG_VERSION"), "unix_time": stamp() }, "record": rec });
                serde_json::to_string_pretty(&meta)
            } else {
                serde_json::to_string_pretty(&rec)
            };
            body.expect("serializable") + "\n"
        }
        OutputFormat::Csv => {
            let head = if cli.meta {
                format!("# locvol {} unix_time {}\n", env!("CARGO_PKG_VERSION"), stamp())
            } else {
                String::new()
            };
            head + &rec.to_csv()
        }
    };
    (EXIT_OK, text)
}

/// Parses a record emitted by [`run`].
pub fn parse_record(text: &str) -> serde_json::Result<ResultRecord> {
    serde_json::from_str(text)
}
