//! Command-line front end: `asc`, `sweep`, `crossover` and `verify`.
//!
//! Settings resolve as command-line flags, then the `--config` file, then
//! built-in defaults. SNRs are accepted in dB only. Every subcommand writes CSV
//! (or, for `verify`, a plain table) to standard output or `--out`.
//!
//! Exit statuses: 0 success, 1 computation or check failure, 2 usage error,
//! 3 no crossover in the bracket.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::channel::{RngStream, Scenario};
use crate::error::Error;
use crate::experiments::{
    find_crossover, mc_stream_id, run_sweep, SweepRow, SweepSpec, SweptAxis,
    DEFAULT_CROSSOVER_BRACKET_DB,
};
use crate::secrecy::{asc, with_worker_threads, Method};
use crate::tas::TasScheme;
use crate::verify::Verifier;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NO_CROSSOVER: i32 = 3;

pub const ASC_HEADER: &str = "scheme,method,gamma_b0_db,gamma_e0_db,M,asc,std_error,trials";
pub const SWEEP_HEADER: &str =
    "swept_value_db,gamma_b0_db,gamma_e0_db,M,scheme,method,asc,std_error,trials";
pub const CROSSOVER_HEADER: &str = "gamma_b0_db,M,crossover_ratio_db,residual";

/// Invalid command line or configuration.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("usage error: {0}")]
pub struct UsageError(pub String);

fn usage(msg: impl Into<String>) -> UsageError {
    UsageError(msg.into())
}

#[derive(Debug, Parser)]
#[command(
    name = "tas-secrecy",
    version,
    about = "Average secrecy capacity of transmit antenna selection"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Average secrecy capacity at one operating point.
    Asc(Flags),
    /// Sweep a reference SNR (or the SNR ratio) and emit one CSV row per point.
    Sweep(Flags),
    /// SNR ratio at which B-TAS and E-TAS perform equally.
    Crossover(Flags),
    /// Cross-check closed forms, quadrature and Monte Carlo.
    Verify(Flags),
}

#[derive(Debug, Clone, Default, Args)]
struct Flags {
    /// Selection scheme (repeatable for sweeps).
    #[arg(long, value_name = "otas|btas|etas|random")]
    scheme: Vec<TasScheme>,
    #[arg(long, value_name = "DB", allow_negative_numbers = true)]
    gamma_b_db: Option<f64>,
    #[arg(long, value_name = "DB", allow_negative_numbers = true)]
    gamma_e_db: Option<f64>,
    /// Number of transmit antennas (repeatable for sweeps).
    #[arg(short = 'M', long = "antennas", value_name = "INT")]
    antennas: Vec<usize>,
    #[arg(long, value_name = "closed|quad|mc")]
    method: Option<Method>,
    #[arg(long, value_name = "INT")]
    trials: Option<u64>,
    #[arg(long, value_name = "UINT")]
    seed: Option<u64>,
    #[arg(long, value_name = "gamma-b|gamma-e|ratio")]
    swept: Option<SweptAxis>,
    #[arg(long, value_name = "DB", allow_negative_numbers = true)]
    from_db: Option<f64>,
    #[arg(long, value_name = "DB", allow_negative_numbers = true)]
    to_db: Option<f64>,
    #[arg(long, value_name = "INT")]
    points: Option<usize>,
    /// Divide every ASC by the O-TAS Monte Carlo value.
    #[arg(long)]
    normalize_otas: bool,
    #[arg(long, num_args = 2, value_names = ["LO", "HI"], allow_negative_numbers = true)]
    bracket_db: Option<Vec<f64>>,
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Worker threads for Monte Carlo (does not change results).
    #[arg(long, value_name = "INT")]
    threads: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubcommandKind {
    Asc,
    Sweep,
    Crossover,
    Verify,
}

/// Fully resolved run configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub subcommand: SubcommandKind,
    pub schemes: Vec<TasScheme>,
    pub gamma_b_db: f64,
    pub gamma_e_db: f64,
    pub antennas: Vec<usize>,
    pub method: Method,
    pub trials: u64,
    pub seed: u64,
    pub swept: SweptAxis,
    pub from_db: f64,
    pub to_db: f64,
    pub points: usize,
    pub normalize_otas: bool,
    pub bracket_db: (f64, f64),
    /// `None` writes to standard output.
    pub output_path: Option<PathBuf>,
    /// 0 lets the thread pool pick.
    pub threads: usize,
}

pub const DEFAULT_METHOD: Method = Method::Closed;
pub const DEFAULT_TRIALS: u64 = 1_000_000;
pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_ANTENNAS: usize = 2;
pub const DEFAULT_GAMMA_DB: f64 = 10.0;
pub const DEFAULT_SWEEP_DB: (f64, f64) = (-10.0, 40.0);
pub const DEFAULT_POINTS: usize = 51;

fn parse_value<T: std::str::FromStr>(key: &str, raw: &str) -> Result<T, UsageError> {
    raw.trim()
        .parse()
        .map_err(|_| usage(format!("invalid value '{}' for {key}", raw.trim())))
}

fn parse_list<T: std::str::FromStr>(key: &str, raw: &str) -> Result<Vec<T>, UsageError> {
    raw.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| parse_value(key, s))
        .collect()
}

/// Parses flat `key = value` text; keys are long flag names with dashes
/// replaced by underscores.
fn parse_config_text(text: &str) -> Result<Flags, UsageError> {
    let mut flags = Flags::default();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            usage(format!(
                "config line {}: expected 'key = value', got '{line}'",
                lineno + 1
            ))
        })?;
        let (key, value) = (key.trim(), value.trim());
        match key {
            "scheme" => flags.scheme = parse_list(key, value)?,
            "gamma_b_db" => flags.gamma_b_db = Some(parse_value(key, value)?),
            "gamma_e_db" => flags.gamma_e_db = Some(parse_value(key, value)?),
            "antennas" | "M" => flags.antennas = parse_list(key, value)?,
            "method" => flags.method = Some(parse_value(key, value)?),
            "trials" => flags.trials = Some(parse_value(key, value)?),
            "seed" => flags.seed = Some(parse_value(key, value)?),
            "swept" => flags.swept = Some(parse_value(key, value)?),
            "from_db" => flags.from_db = Some(parse_value(key, value)?),
            "to_db" => flags.to_db = Some(parse_value(key, value)?),
            "points" => flags.points = Some(parse_value(key, value)?),
            "normalize_otas" => flags.normalize_otas = parse_value(key, value)?,
            "bracket_db" => {
                let v: Vec<f64> = parse_list(key, value)?;
                if v.len() != 2 {
                    return Err(usage(format!("bracket_db needs two values, got '{value}'")));
                }
                flags.bracket_db = Some(v);
            }
            "out" => flags.out = Some(PathBuf::from(value)),
            "threads" => flags.threads = Some(parse_value(key, value)?),
            other => {
                return Err(usage(format!(
                    "config line {}: unknown key '{other}'",
                    lineno + 1
                )))
            }
        }
    }
    Ok(flags)
}

fn pick_list<T: Clone>(flag: &[T], file: &[T], default: Vec<T>) -> Vec<T> {
    if !flag.is_empty() {
        flag.to_vec()
    } else if !file.is_empty() {
        file.to_vec()
    } else {
        default
    }
}

fn resolve(subcommand: SubcommandKind, flags: Flags, file: Flags) -> Result<RunConfig, UsageError> {
    let bracket = flags
        .bracket_db
        .or(file.bracket_db)
        .map(|v| (v[0], v[1]))
        .unwrap_or(DEFAULT_CROSSOVER_BRACKET_DB);
    let default_schemes = match subcommand {
        SubcommandKind::Asc | SubcommandKind::Sweep => vec![],
        _ => vec![TasScheme::Btas, TasScheme::Etas],
    };
    let config = RunConfig {
        subcommand,
        schemes: pick_list(&flags.scheme, &file.scheme, default_schemes),
        gamma_b_db: flags
            .gamma_b_db
            .or(file.gamma_b_db)
            .unwrap_or(DEFAULT_GAMMA_DB),
        gamma_e_db: flags
            .gamma_e_db
            .or(file.gamma_e_db)
            .unwrap_or(DEFAULT_GAMMA_DB),
        antennas: pick_list(&flags.antennas, &file.antennas, vec![DEFAULT_ANTENNAS]),
        method: flags.method.or(file.method).unwrap_or(DEFAULT_METHOD),
        trials: flags.trials.or(file.trials).unwrap_or(DEFAULT_TRIALS),
        seed: flags.seed.or(file.seed).unwrap_or(DEFAULT_SEED),
        swept: flags.swept.or(file.swept).unwrap_or(SweptAxis::GammaB),
        from_db: flags.from_db.or(file.from_db).unwrap_or(DEFAULT_SWEEP_DB.0),
        to_db: flags.to_db.or(file.to_db).unwrap_or(DEFAULT_SWEEP_DB.1),
        points: flags.points.or(file.points).unwrap_or(DEFAULT_POINTS),
        normalize_otas: flags.normalize_otas || file.normalize_otas,
        bracket_db: bracket,
        output_path: flags.out.or(file.out),
        threads: flags.threads.or(file.threads).unwrap_or(0),
    };
    config.validate()?;
    Ok(config)
}

impl RunConfig {
    fn single_antenna_count(&self) -> Result<usize, UsageError> {
        match self.antennas.as_slice() {
            [m] => Ok(*m),
            _ => Err(usage("this subcommand takes a single -M value")),
        }
    }

    fn validate(&self) -> Result<(), UsageError> {
        if let Some(&m) = self.antennas.iter().find(|&&m| m == 0) {
            return Err(usage(format!(
                "invalid value '{m}' for -M: need at least 1 antenna"
            )));
        }
        for (name, v) in [
            ("--gamma-b-db", self.gamma_b_db),
            ("--gamma-e-db", self.gamma_e_db),
        ] {
            if !v.is_finite() {
                return Err(usage(format!("invalid value '{v}' for {name}")));
            }
        }
        match self.subcommand {
            SubcommandKind::Asc => {
                let scheme = match self.schemes.as_slice() {
                    [s] => *s,
                    [] => return Err(usage("asc needs --scheme")),
                    _ => return Err(usage("asc takes a single --scheme")),
                };
                self.single_antenna_count()?;
                match (scheme, self.method) {
                    (TasScheme::Otas, Method::Closed) => {
                        return Err(usage("closed-form unavailable for otas"))
                    }
                    (TasScheme::Otas, Method::Quad) => {
                        return Err(usage("quadrature unavailable for otas"))
                    }
                    (_, Method::Mc) if self.trials < 2 => {
                        return Err(usage(format!(
                            "invalid value '{}' for --trials: Monte Carlo needs at least 2",
                            self.trials
                        )))
                    }
                    _ => {}
                }
            }
            SubcommandKind::Sweep => {
                if self.schemes.is_empty() {
                    return Err(usage("sweep needs at least one --scheme"));
                }
                self.sweep_spec()
                    .validate()
                    .map_err(|e| usage(e.to_string()))?;
            }
            SubcommandKind::Crossover => {
                let m = self.single_antenna_count()?;
                if m < 2 {
                    return Err(usage(format!(
                        "invalid value '{m}' for -M: crossover needs at least 2 antennas"
                    )));
                }
                let (lo, hi) = self.bracket_db;
                if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                    return Err(usage(format!("invalid --bracket-db {lo} {hi}")));
                }
            }
            SubcommandKind::Verify => {
                if self.trials < 2 {
                    return Err(usage(format!(
                        "invalid value '{}' for --trials: Monte Carlo needs at least 2",
                        self.trials
                    )));
                }
            }
        }
        Ok(())
    }

    /// Sweep definition implied by the flags. `--method mc` adds Monte Carlo
    /// rows for B-TAS/E-TAS next to the closed forms.
    pub fn sweep_spec(&self) -> SweepSpec {
        let fixed = match self.swept {
            SweptAxis::GammaB => self.gamma_e_db,
            SweptAxis::GammaE | SweptAxis::Ratio => self.gamma_b_db,
        };
        let mut spec = SweepSpec::new(self.swept, self.from_db, self.to_db, self.points, fixed);
        spec.antennas = self.antennas.clone();
        spec.schemes = self.schemes.clone();
        spec.mc_trials = self.trials;
        spec.seed = self.seed;
        spec.normalize_to_otas = self.normalize_otas;
        spec.analytic_method = match self.method {
            Method::Quad => Method::Quad,
            _ => Method::Closed,
        };
        spec.mc_overlay = self.method == Method::Mc;
        spec
    }
}

/// Parses the command line (program name first) and the optional `--config` file.
pub fn parse_config<I, T>(argv: I) -> Result<RunConfig, UsageError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv).map_err(|e| usage(e.to_string().trim().to_string()))?;
    let (kind, flags) = split_command(cli.command);
    let file = match &flags.config {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| usage(format!("cannot read config '{}': {e}", path.display())))?;
            parse_config_text(&text)?
        }
        None => Flags::default(),
    };
    resolve(kind, flags, file)
}

fn split_command(command: Command) -> (SubcommandKind, Flags) {
    match command {
        Command::Asc(f) => (SubcommandKind::Asc, f),
        Command::Sweep(f) => (SubcommandKind::Sweep, f),
        Command::Crossover(f) => (SubcommandKind::Crossover, f),
        Command::Verify(f) => (SubcommandKind::Verify, f),
    }
}

/// Renders a float with 17 significant digits, enough to round-trip any f64.
pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

pub fn sweep_row_csv(row: &SweepRow) -> String {
    format!(
        "{},{},{},{},{},{},{},{},{}",
        format_float(row.swept_value_db),
        format_float(row.gamma_b0_db),
        format_float(row.gamma_e0_db),
        row.antennas,
        row.scheme,
        row.method,
        format_float(row.asc),
        opt(row.std_error.map(format_float)),
        opt(row.trials),
    )
}

/// Writes the sweep CSV (header plus one line per row).
pub fn write_sweep_csv(out: &mut dyn Write, rows: &[SweepRow]) -> io::Result<()> {
    writeln!(out, "{SWEEP_HEADER}")?;
    for row in rows {
        writeln!(out, "{}", sweep_row_csv(row))?;
    }
    Ok(())
}

enum CmdError {
    Compute(Error),
    Io(io::Error),
}

impl From<Error> for CmdError {
    fn from(e: Error) -> Self {
        Self::Compute(e)
    }
}

impl From<io::Error> for CmdError {
    fn from(e: io::Error) -> Self {
        Self::Io(e)
    }
}

fn with_output(
    config: &RunConfig,
    stdout: &mut dyn Write,
    body: impl FnOnce(&mut dyn Write) -> io::Result<()>,
) -> io::Result<()> {
    match &config.output_path {
        Some(path) => {
            let mut file = io::BufWriter::new(fs::File::create(path)?);
            body(&mut file)?;
            file.flush()
        }
        None => body(stdout),
    }
}

fn report(result: Result<i32, CmdError>, stderr: &mut dyn Write) -> i32 {
    match result {
        Ok(code) => code,
        Err(CmdError::Compute(e @ Error::NoCrossover { .. })) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_NO_CROSSOVER
        }
        Err(CmdError::Compute(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_FAILURE
        }
        Err(CmdError::Io(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_FAILURE
        }
    }
}

fn threaded<R: Send>(
    config: &RunConfig,
    f: impl FnOnce() -> Result<R, Error> + Send,
) -> Result<R, CmdError> {
    Ok(with_worker_threads(config.threads, f)??)
}

/// Prints one ASC row for a single operating point.
pub fn cmd_asc(config: &RunConfig, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let result = (|| {
        let scheme = config.schemes[0];
        let m = config.antennas[0];
        let scenario = Scenario::from_db(config.gamma_b_db, config.gamma_e_db, m)?;
        let rng = RngStream::new(config.seed, mc_stream_id(scheme, m));
        let est = threaded(config, || {
            asc(&scenario, scheme, config.method, config.trials, &rng)
        })?;
        with_output(config, stdout, |out| {
            writeln!(out, "{ASC_HEADER}")?;
            writeln!(
                out,
                "{},{},{},{},{},{},{},{}",
                scheme,
                est.method(),
                format_float(config.gamma_b_db),
                format_float(config.gamma_e_db),
                m,
                format_float(est.value()),
                opt(est.std_error().map(format_float)),
                opt(est.trials()),
            )
        })?;
        Ok(EXIT_OK)
    })();
    report(result, stderr)
}

pub fn cmd_sweep(config: &RunConfig, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let result = (|| {
        let spec = config.sweep_spec();
        let rows = threaded(config, || run_sweep(&spec))?;
        with_output(config, stdout, |out| write_sweep_csv(out, &rows))?;
        Ok(EXIT_OK)
    })();
    report(result, stderr)
}

pub fn cmd_crossover(config: &RunConfig, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let result = (|| {
        let m = config.antennas[0];
        let found = find_crossover(config.gamma_b_db, m, config.bracket_db)?;
        with_output(config, stdout, |out| {
            writeln!(out, "{CROSSOVER_HEADER}")?;
            writeln!(
                out,
                "{},{},{},{}",
                format_float(found.gamma_b0_db),
                found.antennas,
                format_float(found.crossover_ratio_db),
                format_float(found.residual),
            )
        })?;
        Ok(EXIT_OK)
    })();
    report(result, stderr)
}

/// Runs the verification suite with the configured trial budget and seed.
pub fn cmd_verify(config: &RunConfig, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    cmd_verify_with(
        config,
        &Verifier::new(config.trials, config.seed),
        stdout,
        stderr,
    )
}

pub fn cmd_verify_with(
    config: &RunConfig,
    verifier: &Verifier<'_>,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32 {
    let result = (|| {
        let outcomes = threaded(config, || verifier.run())?;
        let failed: Vec<_> = outcomes.iter().filter(|o| !o.passed).collect();
        with_output(config, stdout, |out| {
            for o in &outcomes {
                let status = if o.passed { "PASS" } else { "FAIL" };
                writeln!(out, "{status}  {:<40} {}", o.name, o.detail)?;
            }
            Ok(())
        })?;
        if failed.is_empty() {
            Ok(EXIT_OK)
        } else {
            for o in failed {
                let _ = writeln!(stderr, "failed: {} ({})", o.name, o.detail);
            }
            Ok(EXIT_FAILURE)
        }
    })();
    report(result, stderr)
}

/// Entry point shared by the binary and the tests.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let argv: Vec<std::ffi::OsString> = argv.into_iter().map(Into::into).collect();
    if let Err(e) = Cli::try_parse_from(&argv) {
        use clap::error::ErrorKind;
        if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
            let _ = write!(stdout, "{e}");
            return EXIT_OK;
        }
    }
    let config = match parse_config(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = writeln!(stderr, "{e}");
            return EXIT_USAGE;
        }
    };
    match config.subcommand {
        SubcommandKind::Asc => cmd_asc(&config, stdout, stderr),
        SubcommandKind::Sweep => cmd_sweep(&config, stdout, stderr),
        SubcommandKind::Crossover => cmd_crossover(&config, stdout, stderr),
        SubcommandKind::Verify => cmd_verify(&config, stdout, stderr),
    }
}
