//! Command-line front end: `campaign`, `werner`, `axioms` and `evaluate`.
//!
//! Exit codes: 0 when every check passes, 1 on any violation, 2 on a usage
//! error, 3 on an I/O error. `QDUALITY_THREADS` caps the worker count.

use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;

use crate::linalg::ComplexMatrix;
use crate::measures::Measure;
use crate::rng::PortableRng;
use crate::states::{random_state, validate};
use crate::tolerance::Tolerances;
use crate::verify::{
    a_grid, axiom_suite_predictability, axiom_suite_wave, campaign_with_hook, evaluate_with,
    werner_sweep_with, AxiomReport, CampaignConfig, CampaignResult, Inequality, RankSpec,
    TradeoffRecord, Violation, WernerRow, MAX_CAMPAIGN_DIM,
};

pub const EXIT_PASS: u8 = 0;
pub const EXIT_VIOLATION: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_IO: u8 = 3;

pub const THREADS_ENV: &str = "QDUALITY_THREADS";

/// Columns shared by campaign and Werner rows, after the identifying ones.
const MEASURE_COLUMNS: [&str; 18] = [
    "rank",
    "c_hs",
    "c_wy",
    "c_l1",
    "s_l_iota",
    "s_vn_iota",
    "upsilon",
    "omega",
    "p_hs_l",
    "p_hs_vn",
    "p_l1",
    "bound_pop_hs",
    "bound_pop_wy",
    "slack_tohs_l",
    "slack_tohs_vn",
    "slack_heub",
    "slack_heub2",
    "slack_cpl1",
];

const SUM_COLUMNS: [&str; 5] = [
    "chs_plus_phsl",
    "chs_plus_phsvn",
    "cwy_plus_phsl",
    "cwy_plus_phsvn",
    "cl1_plus_pl1",
];

pub const AXIOM_HEADER: [&str; 9] = [
    "measure",
    "axiom",
    "d",
    "trials",
    "skipped",
    "violations",
    "worst_slack",
    "tolerance",
    "parameters",
];

pub fn campaign_header() -> Vec<&'static str> {
    let mut h = vec!["d", "sample_id", "seed"];
    h.extend(MEASURE_COLUMNS);
    h.push("pass_all");
    h
}

pub fn werner_header() -> Vec<&'static str> {
    let mut h = vec!["d", "w", "a", "seed"];
    h.extend(MEASURE_COLUMNS);
    h.push("pass_all");
    h.extend(SUM_COLUMNS);
    h
}

#[derive(Parser, Debug)]
#[command(name = "qduality", version, about = "Coherence, predictability and complementarity checks")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Sample random states per dimension and check every inequality.
    Campaign(CampaignArgs),
    /// Sweep the Werner ququart over a (w, a) grid.
    Werner(WernerArgs),
    /// Run the axiom suites for the six quantifiers.
    Axioms(AxiomArgs),
    /// Evaluate one random or user-supplied state.
    Evaluate(EvaluateArgs),
}

#[derive(Args, Debug)]
struct TolArgs {
    /// Tolerance for identities that need no eigensolver.
    #[arg(long)]
    tol_exact: Option<f64>,
    /// Tolerance for quantities computed through the eigensolver.
    #[arg(long)]
    tol_iterative: Option<f64>,
}

#[derive(Args, Debug)]
struct CampaignArgs {
    /// Dimension range `MIN..MAX` (inclusive) or a single dimension.
    #[arg(long, default_value = "2..8")]
    d: String,
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// `full` or a fixed rank.
    #[arg(long, default_value = "full")]
    rank: String,
    #[arg(long, short, default_value = "campaign.csv")]
    output: PathBuf,
    #[command(flatten)]
    tol: TolArgs,
    /// Corrupts the given sample of the smallest dimension (failure-path testing).
    #[arg(long, hide = true)]
    inject_corrupt: Option<u64>,
}

#[derive(Args, Debug)]
struct WernerArgs {
    /// Comma-separated mixing weights.
    #[arg(long, default_value = "0,0.25,0.5,0.75,1")]
    w: String,
    #[arg(long, default_value_t = 101)]
    a_steps: usize,
    #[arg(long, short, default_value = "werner.csv")]
    output: PathBuf,
    #[command(flatten)]
    tol: TolArgs,
}

#[derive(Args, Debug)]
struct AxiomArgs {
    #[arg(long, default_value_t = 4)]
    d: usize,
    #[arg(long, default_value_t = 1000)]
    trials: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Comma-separated measure names; all six by default.
    #[arg(long)]
    measure: Option<String>,
    #[arg(long, short, default_value = "axioms.csv")]
    output: PathBuf,
}

#[derive(Args, Debug)]
struct EvaluateArgs {
    #[arg(long, default_value_t = 4)]
    d: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value = "full")]
    rank: String,
    /// Matrix file: one row per line, entries `re` or `re,im` separated by whitespace.
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long, short)]
    output: Option<PathBuf>,
    #[command(flatten)]
    tol: TolArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Campaign,
    Werner,
    Axioms,
    Evaluate,
}

/// Fully validated run description.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub d_min: usize,
    pub d_max: usize,
    pub samples: usize,
    pub rank: RankSpec,
    pub seed: u64,
    pub tolerances: Tolerances,
    pub output_path: Option<PathBuf>,
    pub w_list: Vec<f64>,
    pub a_steps: usize,
    pub trials: usize,
    pub measures: Vec<Measure>,
    pub input: Option<PathBuf>,
    pub threads: Option<usize>,
    pub inject_corrupt: Option<u64>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            command: Command::Campaign,
            d_min: 2,
            d_max: 8,
            samples: 1000,
            rank: RankSpec::Full,
            seed: 1,
            tolerances: Tolerances::default(),
            output_path: None,
            w_list: vec![0.0, 0.25, 0.5, 0.75, 1.0],
            a_steps: 101,
            trials: 1000,
            measures: [Measure::WAVE, Measure::PARTICLE].concat(),
            input: None,
            threads: None,
            inject_corrupt: None,
        }
    }
}

/// Bad command line. `help` marks `--help`/`--version` output, which is not a failure.
#[derive(Debug, Clone, PartialEq)]
pub struct UsageError {
    pub message: String,
    pub help: bool,
}

impl UsageError {
    fn flag(flag: &str, detail: impl fmt::Display) -> Self {
        UsageError {
            message: format!("invalid value for {flag}: {detail}"),
            help: false,
        }
    }
}

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for UsageError {}

/// Parses `argv` (program name first), reading `QDUALITY_THREADS` from the environment.
pub fn parse_config<S: AsRef<str>>(argv: &[S]) -> Result<RunConfig, UsageError> {
    let threads = std::env::var(THREADS_ENV).ok();
    parse_config_with_threads(argv, threads.as_deref())
}

/// Like [`parse_config`] with the thread cap given explicitly.
pub fn parse_config_with_threads<S: AsRef<str>>(
    argv: &[S],
    threads: Option<&str>,
) -> Result<RunConfig, UsageError> {
    let cli = Cli::try_parse_from(argv.iter().map(|s| s.as_ref())).map_err(|e| {
        use clap::error::ErrorKind;
        let help = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
        UsageError {
            message: e.render().to_string(),
            help,
        }
    })?;
    let mut cfg = RunConfig {
        threads: parse_threads(threads)?,
        ..RunConfig::default()
    };
    match cli.command {
        Cmd::Campaign(a) => {
            cfg.command = Command::Campaign;
            (cfg.d_min, cfg.d_max) = parse_d_range(&a.d)?;
            if a.samples == 0 {
                return Err(UsageError::flag("--samples", "must be at least 1"));
            }
            cfg.samples = a.samples;
            cfg.seed = a.seed;
            cfg.rank = parse_rank(&a.rank)?;
            for d in cfg.d_min..=cfg.d_max {
                if cfg.rank.resolve(d) > d {
                    return Err(UsageError::flag("--rank", format!("exceeds dimension {d}")));
                }
            }
            cfg.tolerances = parse_tolerances(&a.tol)?;
            cfg.output_path = Some(a.output);
            cfg.inject_corrupt = a.inject_corrupt;
        }
        Cmd::Werner(a) => {
            cfg.command = Command::Werner;
            (cfg.d_min, cfg.d_max) = (4, 4);
            cfg.w_list = parse_w_list(&a.w)?;
            if a.a_steps < 2 {
                return Err(UsageError::flag("--a-steps", "must be at least 2"));
            }
            cfg.a_steps = a.a_steps;
            cfg.tolerances = parse_tolerances(&a.tol)?;
            cfg.output_path = Some(a.output);
        }
        Cmd::Axioms(a) => {
            cfg.command = Command::Axioms;
            check_dim("--d", a.d)?;
            (cfg.d_min, cfg.d_max) = (a.d, a.d);
            if a.trials == 0 {
                return Err(UsageError::flag("--trials", "must be at least 1"));
            }
            cfg.trials = a.trials;
            cfg.seed = a.seed;
            if let Some(list) = a.measure {
                cfg.measures = list
                    .split(',')
                    .map(|s| s.trim().parse::<Measure>())
                    .collect::<Result<_, _>>()
                    .map_err(|e| UsageError::flag("--measure", e))?;
            }
            cfg.output_path = Some(a.output);
        }
        Cmd::Evaluate(a) => {
            cfg.command = Command::Evaluate;
            check_dim("--d", a.d)?;
            (cfg.d_min, cfg.d_max) = (a.d, a.d);
            cfg.seed = a.seed;
            cfg.rank = parse_rank(&a.rank)?;
            if cfg.rank.resolve(a.d) > a.d {
                return Err(UsageError::flag("--rank", format!("exceeds dimension {}", a.d)));
            }
            cfg.input = a.input;
            cfg.output_path = a.output;
            cfg.tolerances = parse_tolerances(&a.tol)?;
        }
    }
    Ok(cfg)
}

fn check_dim(flag: &str, d: usize) -> Result<(), UsageError> {
    if !(2..=MAX_CAMPAIGN_DIM).contains(&d) {
        return Err(UsageError::flag(
            flag,
            format!("dimension {d} outside 2..{MAX_CAMPAIGN_DIM}"),
        ));
    }
    Ok(())
}

fn parse_d_range(s: &str) -> Result<(usize, usize), UsageError> {
    let num = |t: &str| {
        t.trim()
            .parse::<usize>()
            .map_err(|_| UsageError::flag("--d", format!("`{s}` is not MIN..MAX or a single dimension")))
    };
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.trim_start_matches('='))?),
        None => {
            let d = num(s)?;
            (d, d)
        }
    };
    check_dim("--d", lo)?;
    check_dim("--d", hi)?;
    if lo > hi {
        return Err(UsageError::flag("--d", format!("empty range {lo}..{hi}")));
    }
    Ok((lo, hi))
}

fn parse_rank(s: &str) -> Result<RankSpec, UsageError> {
    if s.eq_ignore_ascii_case("full") {
        return Ok(RankSpec::Full);
    }
    match s.parse::<usize>() {
        Ok(r) if r >= 1 => Ok(RankSpec::Fixed(r)),
        _ => Err(UsageError::flag("--rank", format!("`{s}` is not `full` or a positive integer"))),
    }
}

fn parse_w_list(s: &str) -> Result<Vec<f64>, UsageError> {
    s.split(',')
        .map(|t| match t.trim().parse::<f64>() {
            Ok(w) if (0.0..=1.0).contains(&w) => Ok(w),
            _ => Err(UsageError::flag("--w", format!("`{t}` is not a number in [0, 1]"))),
        })
        .collect()
}

fn parse_tolerances(t: &TolArgs) -> Result<Tolerances, UsageError> {
    let mut tol = Tolerances::default();
    for (flag, value, slot) in [
        ("--tol-exact", t.tol_exact, &mut tol.exact),
        ("--tol-iterative", t.tol_iterative, &mut tol.iterative),
    ] {
        if let Some(v) = value {
            if !(v.is_finite() && v >= 0.0) {
                return Err(UsageError::flag(flag, format!("{v} is not a non-negative number")));
            }
            *slot = v;
        }
    }
    Ok(tol)
}

fn parse_threads(value: Option<&str>) -> Result<Option<usize>, UsageError> {
    match value {
        None => Ok(None),
        Some(s) => match s.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(Some(n)),
            _ => Err(UsageError::flag(THREADS_ENV, format!("`{s}` is not an integer >= 1"))),
        },
    }
}

/// Parses `argv`, runs the command and returns the process exit code.
pub fn run<S: AsRef<str>>(argv: &[S]) -> u8 {
    match parse_config(argv) {
        Ok(cfg) => execute(&cfg),
        Err(e) if e.help => {
            print!("{e}");
            EXIT_PASS
        }
        Err(e) => {
            eprint!("{e}");
            if !e.message.ends_with('\n') {
                eprintln!();
            }
            EXIT_USAGE
        }
    }
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Io(io::Error),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Io(e.into())
    }
}

impl From<crate::Error> for Failure {
    fn from(e: crate::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

/// Runs a validated configuration. Returns the exit code.
pub fn execute(cfg: &RunConfig) -> u8 {
    let outcome = match cfg.command {
        Command::Campaign => run_campaign(cfg),
        Command::Werner => run_werner(cfg),
        Command::Axioms => run_axioms(cfg),
        Command::Evaluate => run_evaluate(cfg),
    };
    match outcome {
        Ok(true) => EXIT_PASS,
        Ok(false) => EXIT_VIOLATION,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Io(e)) => {
            eprintln!("I/O error: {e}");
            EXIT_IO
        }
    }
}

fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .expect("thread pool")
            .install(f),
        None => f(),
    }
}

/// Fixed-width scientific notation with 17 significant digits.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

fn record_fields(r: &TradeoffRecord) -> Vec<String> {
    let mut f = vec![r.rank.to_string()];
    f.extend(
        [
            r.c_hs,
            r.c_wy,
            r.c_l1,
            r.s_l_iota,
            r.s_vn_iota,
            r.upsilon,
            r.omega,
            r.p_hs_l,
            r.p_hs_vn,
            r.p_l1,
            r.bound_pop_hs,
            r.bound_pop_wy,
            r.slack(Inequality::TohsLinear),
            r.slack(Inequality::TohsVn),
            r.slack(Inequality::Heub),
            r.slack(Inequality::Heub2),
            r.slack(Inequality::ComplementarityL1),
        ]
        .map(fmt_float),
    );
    f.push(r.pass_all().to_string());
    f
}

/// Campaign CSV as bytes.
pub fn campaign_csv(records: &[TradeoffRecord]) -> Result<Vec<u8>, csv::Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(campaign_header())?;
    for r in records {
        let mut row = vec![r.dim.to_string(), r.sample_id.to_string(), r.seed.to_string()];
        row.extend(record_fields(r));
        w.write_record(&row)?;
    }
    w.into_inner().map_err(|e| e.into_error().into())
}

/// Werner sweep CSV as bytes.
pub fn werner_csv(rows: &[WernerRow]) -> Result<Vec<u8>, csv::Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(werner_header())?;
    for row in rows {
        let r = &row.record;
        let mut out = vec![r.dim.to_string(), fmt_float(row.w), fmt_float(row.a), r.seed.to_string()];
        out.extend(record_fields(r));
        out.extend(
            [
                r.chs_plus_phs_l(),
                r.chs_plus_phs_vn(),
                r.cwy_plus_phs_l(),
                r.cwy_plus_phs_vn(),
                r.cl1_plus_pl1(),
            ]
            .map(fmt_float),
        );
        w.write_record(&out)?;
    }
    w.into_inner().map_err(|e| e.into_error().into())
}

/// Axiom report CSV as bytes.
pub fn axioms_csv(reports: &[AxiomReport]) -> Result<Vec<u8>, csv::Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(AXIOM_HEADER)?;
    for r in reports {
        w.write_record([
            r.measure.name().to_string(),
            r.axiom.id().to_string(),
            r.dim.to_string(),
            r.trials.to_string(),
            r.skipped.to_string(),
            r.violations.to_string(),
            fmt_float(r.worst_slack),
            fmt_float(r.tolerance),
            r.parameters.clone(),
        ])?;
    }
    w.into_inner().map_err(|e| e.into_error().into())
}

/// Writes a matrix in the `--input` format, one row per line.
pub fn format_matrix(m: &ComplexMatrix) -> String {
    let d = m.dim();
    let mut s = String::new();
    for i in 0..d {
        let row: Vec<String> = (0..d)
            .map(|j| format!("{},{}", fmt_float(m[(i, j)].re), fmt_float(m[(i, j)].im)))
            .collect();
        s.push_str(&row.join(" "));
        s.push('\n');
    }
    s
}

/// Reads the `--input` format. Blank lines and lines starting with `#` are ignored.
pub fn parse_matrix(text: &str) -> Result<ComplexMatrix, String> {
    let mut rows = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let row = line
            .split_whitespace()
            .map(|entry| {
                let (re, im) = entry.split_once(',').unwrap_or((entry, "0"));
                match (re.parse::<f64>(), im.parse::<f64>()) {
                    (Ok(re), Ok(im)) => Ok(Complex64::new(re, im)),
                    _ => Err(format!("line {}: bad entry `{entry}`", n + 1)),
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    ComplexMatrix::from_rows(&rows).map_err(|e| e.to_string())
}

fn write_file(path: &Path, bytes: &[u8]) -> io::Result<()> {
    fs::write(path, bytes)
}

/// `<output>.violations.txt` next to the CSV.
pub fn violations_path(output: &Path) -> PathBuf {
    let mut name = output.as_os_str().to_owned();
    name.push(".violations.txt");
    PathBuf::from(name)
}

fn dump_violations(path: &Path, violations: &[Violation]) -> io::Result<()> {
    let mut text = String::new();
    for v in violations {
        text.push_str(&format!("# d={} sample_id={} {}\n", v.dim, v.sample_id, v.reason));
        text.push_str(&format_matrix(&v.matrix));
        text.push('\n');
    }
    write_file(path, text.as_bytes())
}

fn print_campaign_summary(out: &mut impl Write, res: &CampaignResult) -> io::Result<()> {
    write!(out, "{:>3} {:>8} {:>8}", "d", "samples", "all_pass")?;
    for q in Inequality::ALL {
        write!(out, " {:>8}", q.name())?;
    }
    writeln!(out, " {:>14}", "mean_tohs_slack")?;
    for s in &res.summary.per_dim {
        write!(out, "{:>3} {:>8} {:>8}", s.dim, s.samples, s.all_pass)?;
        for (_, n) in &s.passes {
            write!(out, " {n:>8}")?;
        }
        writeln!(out, " {:>14.6}", s.mean_tohs_slack)?;
    }
    writeln!(
        out,
        "tightness trend (mean slack nondecreasing in d, tol 0.005): {}",
        if res.summary.tightness_nondecreasing(0.005) { "yes" } else { "no" }
    )?;
    writeln!(out, "violations: {}", res.violations.len())
}

fn run_campaign(cfg: &RunConfig) -> Result<bool, Failure> {
    let config = CampaignConfig {
        d_min: cfg.d_min,
        d_max: cfg.d_max,
        samples: cfg.samples,
        rank: cfg.rank,
        seed: cfg.seed,
        threads: cfg.threads,
        tolerances: cfg.tolerances,
    };
    let target = cfg.inject_corrupt.map(|id| (cfg.d_min, id));
    let res = campaign_with_hook(&config, &|d, id, m| {
        if target == Some((d, id)) {
            corrupt(m);
        }
    })?;
    let output = cfg.output_path.clone().unwrap_or_else(|| PathBuf::from("campaign.csv"));
    write_file(&output, &campaign_csv(&res.records)?)?;
    let stdout = io::stdout();
    let mut out = stdout.lock();
    print_campaign_summary(&mut out, &res)?;
    writeln!(out, "wrote {} rows to {}", res.records.len(), output.display())?;
    if !res.violations.is_empty() {
        let path = violations_path(&output);
        dump_violations(&path, &res.violations)?;
        writeln!(out, "offending states written to {}", path.display())?;
    }
    Ok(res.summary.all_pass())
}

/// Pushes `rho_01` past the bound `|rho_01|^2 <= rho_00 rho_11`.
fn corrupt(m: &mut ComplexMatrix) {
    m[(0, 1)] += Complex64::new(1.0, 0.0);
    m[(1, 0)] += Complex64::new(1.0, 0.0);
}

fn run_werner(cfg: &RunConfig) -> Result<bool, Failure> {
    let grid = a_grid(cfg.a_steps)?;
    let rows = werner_sweep_with(&cfg.w_list, &grid, &cfg.tolerances)?;
    let output = cfg.output_path.clone().unwrap_or_else(|| PathBuf::from("werner.csv"));
    write_file(&output, &werner_csv(&rows)?)?;
    let failed = rows.iter().filter(|r| !r.record.pass_all()).count();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    writeln!(
        out,
        "{:>6} {:>12} {:>12} {:>12} {:>12} {:>12}",
        "w", "max C+P_l", "max C+P_vn", "max Cwy+P_l", "max Cwy+P_vn", "max Cl1+Pl1"
    )?;
    for &w in &cfg.w_list {
        let max = |f: fn(&TradeoffRecord) -> f64| {
            rows.iter()
                .filter(|r| r.w == w)
                .map(|r| f(&r.record))
                .fold(f64::NEG_INFINITY, f64::max)
        };
        writeln!(
            out,
            "{w:>6.3} {:>12.8} {:>12.8} {:>12.8} {:>12.8} {:>12.8}",
            max(TradeoffRecord::chs_plus_phs_l),
            max(TradeoffRecord::chs_plus_phs_vn),
            max(TradeoffRecord::cwy_plus_phs_l),
            max(TradeoffRecord::cwy_plus_phs_vn),
            max(TradeoffRecord::cl1_plus_pl1),
        )?;
    }
    writeln!(out, "rows failing a check: {failed}")?;
    writeln!(out, "wrote {} rows to {}", rows.len(), output.display())?;
    Ok(failed == 0)
}

fn run_axioms(cfg: &RunConfig) -> Result<bool, Failure> {
    let d = cfg.d_min;
    let reports = with_threads(cfg.threads, || -> crate::Result<Vec<AxiomReport>> {
        let mut all = Vec::new();
        for &m in &cfg.measures {
            let suite = if m.is_wave() {
                axiom_suite_wave(m, d, cfg.trials, cfg.seed)?
            } else {
                axiom_suite_predictability(m, d, cfg.trials, cfg.seed)?
            };
            all.extend(suite);
        }
        Ok(all)
    })?;
    let output = cfg.output_path.clone().unwrap_or_else(|| PathBuf::from("axioms.csv"));
    write_file(&output, &axioms_csv(&reports)?)?;
    let stdout = io::stdout();
    let mut out = stdout.lock();
    writeln!(
        out,
        "{:>8} {:>5} {:>7} {:>7} {:>10} {:>14} {:>9}",
        "measure", "axiom", "trials", "skipped", "violations", "worst_slack", "result"
    )?;
    for r in &reports {
        writeln!(
            out,
            "{:>8} {:>5} {:>7} {:>7} {:>10} {:>14.6e} {:>9}",
            r.measure.name(),
            r.axiom.id(),
            r.trials,
            r.skipped,
            r.violations,
            r.worst_slack,
            if r.passed() { "pass" } else { "FAIL" }
        )?;
    }
    writeln!(out, "wrote {} reports to {}", reports.len(), output.display())?;
    Ok(reports.iter().all(AxiomReport::passed))
}

fn run_evaluate(cfg: &RunConfig) -> Result<bool, Failure> {
    let rho = match &cfg.input {
        Some(path) => {
            let text = fs::read_to_string(path)?;
            let m = parse_matrix(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            validate(&m).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?
        }
        None => {
            let d = cfg.d_min;
            let mut rng = PortableRng::for_sample(cfg.seed, d, 0);
            random_state(d, cfg.rank.resolve(d), &mut rng)?
        }
    };
    let mut rec = evaluate_with(&rho, &cfg.tolerances)?;
    if cfg.input.is_none() {
        rec.seed = cfg.seed;
    }
    let stdout = io::stdout();
    let mut out = stdout.lock();
    writeln!(out, "d = {}, rank = {}", rec.dim, rec.rank)?;
    for m in rec.measures() {
        writeln!(out, "{:>14} = {:>24} ({})", m.name, fmt_float(m.value), m.formula_variant)?;
    }
    for v in &rec.verdicts {
        writeln!(
            out,
            "{:>14}: slack {:>24} {}",
            v.inequality.name(),
            fmt_float(v.slack),
            if v.pass() { "pass" } else { "FAIL" }
        )?;
    }
    if let Some(path) = &cfg.output_path {
        write_file(path, &campaign_csv(std::slice::from_ref(&rec))?)?;
        writeln!(out, "wrote 1 row to {}", path.display())?;
    }
    Ok(rec.pass_all())
}
