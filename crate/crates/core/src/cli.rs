//! The `seqmine` command line.
//!
//! Exit codes: 0 success, 2 unreadable or malformed input, 3 bad flags or
//! flag combinations, 4 internal failure. Every failure prints one line
//! starting with `error:` on stderr. `SEQMINE_THREADS` caps the worker pool
//! (0 or unset means one thread per core).

use std::fs::{self, File};
use std::io::{self, BufRead, BufReader, Read, Write};
use std::path::{Path, PathBuf};
use std::thread;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::bench::{run_bench, BenchAlgo, BenchConfig};
use crate::dataset::{
    bundled_results, load_results, load_sequence_db, load_transactions, trend, BandScheme, Percent,
    SequenceReader,
};
use crate::error::Error;
use crate::format::{write_itemsets, write_patterns, write_rules};
use crate::itemset::{generate_rules, mine_frequent_itemsets};
use crate::model::{Alphabet, Constraints, DataSequence};
use crate::plot::{ascii_chart, svg_chart};
use crate::sequence::{filter_closed, Algorithm};
use crate::stream::{StreamConfig, StreamMiner};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_USAGE: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

/// Alphabets above this size need an explicit `--max-length`.
pub const UNBOUNDED_ALPHABET_LIMIT: usize = 26;

#[derive(Parser, Debug)]
#[command(
    name = "seqmine",
    version,
    about = "Frequent itemset, sequential and stream pattern mining"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Frequent itemsets (and optionally association rules) from a transactions CSV.
    MineItemsets(MineItemsets),
    /// Sequential patterns under time and index gap constraints.
    MineSeq(MineSeq),
    /// Replays a sequence CSV as a stream and reports periodically.
    MineStream(MineStream),
    /// Trend report, anomaly list and charts for yearly pass percentages.
    AnalyzeResults(AnalyzeResults),
    /// Runs miners over seeded synthetic databases.
    Bench(Bench),
}

fn fraction(text: &str) -> Result<f64, String> {
    let v: f64 = text
        .parse()
        .map_err(|_| format!("{text:?} is not a number"))?;
    if v > 0.0 && v <= 1.0 {
        Ok(v)
    } else {
        Err(format!("{v} is outside (0, 1]"))
    }
}

fn percent(text: &str) -> Result<Percent, String> {
    Percent::parse(text)
        .ok_or_else(|| format!("{text:?} is not a percentage with at most two decimals"))
}

fn bands(text: &str) -> Result<BandScheme, String> {
    BandScheme::parse(text).map_err(|e| e.to_string())
}

#[derive(Args, Debug)]
pub struct MineItemsets {
    pub input: PathBuf,
    #[arg(long, value_parser = fraction)]
    pub min_support: f64,
    #[arg(long, value_parser = fraction)]
    pub min_confidence: Option<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum AlgoArg {
    Gsp,
    Prefixspan,
}

#[derive(Args, Debug)]
pub struct MineSeq {
    pub input: PathBuf,
    #[arg(long, value_parser = fraction)]
    pub min_support: f64,
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    pub min_gap: i64,
    #[arg(long)]
    pub max_gap: Option<i64>,
    #[arg(long)]
    pub max_index_gap: Option<usize>,
    #[arg(long)]
    pub max_length: Option<usize>,
    #[arg(long, value_enum, default_value = "prefixspan")]
    pub algo: AlgoArg,
    #[arg(long)]
    pub closed: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct MineStream {
    pub input: PathBuf,
    #[arg(long, value_parser = fraction)]
    pub sigma: f64,
    #[arg(long, value_parser = fraction)]
    pub epsilon: f64,
    #[arg(long)]
    pub batch_size: usize,
    #[arg(long, default_value_t = 5)]
    pub max_length: usize,
    #[arg(long, default_value_t = 1)]
    pub report_every: usize,
    /// Keep reading as the file grows; stop after `--idle-ms` without new data.
    #[arg(long)]
    pub watch: bool,
    #[arg(long, default_value_t = 2000)]
    pub idle_ms: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct AnalyzeResults {
    /// Results CSV; the bundled university table when omitted.
    pub input: Option<PathBuf>,
    #[arg(long, value_parser = bands, default_value = "50:F,70:C,85:B,100:A")]
    pub bands: BandScheme,
    #[arg(long, value_parser = percent, default_value = "20")]
    pub anomaly_threshold: Percent,
    /// Directory for one SVG chart per subject.
    #[arg(long)]
    pub plot_dir: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct Bench {
    #[arg(long, value_delimiter = ',', default_value = "100,200,400")]
    pub sizes: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_value = "gsp,prefixspan,stream")]
    pub algos: Vec<BenchAlgo>,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// A failure carrying its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn input(path: &Path, err: impl std::fmt::Display) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: format!("{}: {err}", path.display()),
        }
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        let code = match err {
            Error::Parse { .. }
            | Error::NonIntegerTime { .. }
            | Error::DuplicateKey { .. }
            | Error::OutOfRange { .. }
            | Error::DuplicateSequence(_)
            | Error::EmptySequence(_)
            | Error::EmptyDatabase
            | Error::InsufficientHistory(_)
            | Error::Io(_) => EXIT_INPUT,
            Error::InvalidThreshold { .. }
            | Error::InvalidConstraints(_)
            | Error::InvalidBands(_)
            | Error::BadBatchSize { .. }
            | Error::AlphabetTooLarge { .. }
            | Error::InstanceTooLarge(_) => EXIT_USAGE,
            _ => EXIT_INTERNAL,
        };
        Failure {
            code,
            message: err.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(err: io::Error) -> Self {
        Failure {
            code: EXIT_INTERNAL,
            message: err.to_string(),
        }
    }
}

type CmdResult = Result<(), Failure>;

fn open_input(path: &Path) -> Result<File, Failure> {
    File::open(path).map_err(|e| Failure::input(path, e))
}

fn with_path(path: &Path, err: Error) -> Failure {
    let mut failure = Failure::from(err);
    if failure.code == EXIT_INPUT {
        failure.message = format!("{}: {}", path.display(), failure.message);
    }
    failure
}

/// Buffers everything, then writes to `--out` or stdout in one go.
fn emit(out: &Option<PathBuf>, bytes: &[u8]) -> CmdResult {
    match out {
        Some(path) => fs::write(path, bytes)
            .map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(bytes)?;
            stdout.flush()?;
            Ok(())
        }
    }
}

fn mine_itemsets(args: MineItemsets) -> CmdResult {
    let (alphabet, transactions) =
        load_transactions(open_input(&args.input)?).map_err(|e| with_path(&args.input, e))?;
    let frequent = mine_frequent_itemsets(&transactions, args.min_support)?;
    let mut buf = Vec::new();
    write_itemsets(&mut buf, &frequent, &alphabet)?;
    if let Some(confidence) = args.min_confidence {
        write_rules(&mut buf, &generate_rules(&frequent, confidence)?, &alphabet)?;
    }
    emit(&args.out, &buf)
}

fn mine_seq(args: MineSeq) -> CmdResult {
    let mut constraints = Constraints::with_min_support(args.min_support).min_gap(args.min_gap);
    if let Some(g) = args.max_gap {
        constraints = constraints.max_gap(g);
    }
    if let Some(g) = args.max_index_gap {
        constraints = constraints.max_index_gap(g);
    }
    if let Some(l) = args.max_length {
        constraints = constraints.max_length(l);
    }
    constraints.validate()?;
    let db = load_sequence_db(open_input(&args.input)?).map_err(|e| with_path(&args.input, e))?;
    if args.max_length.is_none() && db.alphabet().len() > UNBOUNDED_ALPHABET_LIMIT {
        return Err(Failure::usage(format!(
            "alphabet has {} items; pass --max-length when it exceeds {UNBOUNDED_ALPHABET_LIMIT}",
            db.alphabet().len()
        )));
    }
    let algorithm = match args.algo {
        AlgoArg::Gsp => Algorithm::Gsp,
        AlgoArg::Prefixspan => Algorithm::PrefixSpan,
    };
    let mut result = algorithm.mine(&db, &constraints)?;
    if args.closed {
        result = filter_closed(result);
    }
    let mut buf = Vec::new();
    write_patterns(&mut buf, &result.patterns, db.alphabet())?;
    emit(&args.out, &buf)
}

/// Turns end-of-file into a wait for more data, until `idle` passes with none.
struct Follow<R> {
    inner: R,
    idle: Duration,
}

impl<R: Read> Read for Follow<R> {
    fn read(&mut self, buf: &mut [u8]) -> io::Result<usize> {
        let started = Instant::now();
        loop {
            let n = self.inner.read(buf)?;
            if n > 0 || started.elapsed() >= self.idle {
                return Ok(n);
            }
            thread::sleep(Duration::from_millis(50));
        }
    }
}

fn stream_report(
    buf: &mut Vec<u8>,
    label: &str,
    miner: &StreamMiner,
    alphabet: &Alphabet,
) -> io::Result<()> {
    writeln!(
        buf,
        "# {label} batches={} N={} tree_nodes={}",
        miner.batches_seen(),
        miner.sequences_seen(),
        miner.tree().len()
    )?;
    write_patterns(buf, &miner.query_output(), alphabet)
}

fn mine_stream(args: MineStream) -> CmdResult {
    if args.report_every == 0 {
        return Err(Failure::usage("--report-every must be >= 1"));
    }
    let config = StreamConfig::new(args.sigma, args.epsilon, args.batch_size)?
        .with_max_length(args.max_length)?;
    let file = open_input(&args.input)?;
    let source: Box<dyn BufRead> = if args.watch {
        Box::new(BufReader::new(Follow {
            inner: file,
            idle: Duration::from_millis(args.idle_ms),
        }))
    } else {
        Box::new(BufReader::new(file))
    };
    let mut reader = SequenceReader::new(source);
    let mut miner = StreamMiner::new(config)?;
    let mut pending: Vec<DataSequence> = Vec::with_capacity(args.batch_size);
    let mut buf = Vec::new();
    let stdout_live = args.out.is_none();
    while let Some(seq) = reader.next() {
        pending.push(seq.map_err(|e| with_path(&args.input, e))?);
        if pending.len() == args.batch_size {
            miner.process_batch(std::mem::take(&mut pending))?;
            if miner.batches_seen() % args.report_every == 0 {
                stream_report(&mut buf, "report", &miner, reader.alphabet())?;
                if stdout_live {
                    emit(&None, &buf)?;
                    buf.clear();
                }
            }
        }
    }
    miner.flush(pending)?;
    stream_report(&mut buf, "final", &miner, reader.alphabet())?;
    emit(&args.out, &buf)
}

fn analyze_results(args: AnalyzeResults) -> CmdResult {
    let records = match &args.input {
        Some(path) => load_results(open_input(path)?).map_err(|e| with_path(path, e))?,
        None => bundled_results(),
    };
    let summary = trend(&records, args.anomaly_threshold)?;
    let mut buf = Vec::new();
    writeln!(buf, "subject year pass_pct delta direction band")?;
    for subject in &summary.subjects {
        for p in &subject.points {
            let (delta, direction) = match p.change {
                Some((d, dir)) => (d.to_string(), dir.to_string()),
                None => ("-".into(), "-".into()),
            };
            writeln!(
                buf,
                "{} {} {} {delta} {direction} {}",
                subject.subject,
                p.year,
                p.pass_pct,
                args.bands.band(p.pass_pct)
            )?;
        }
    }
    writeln!(buf, "anomalies (|delta| > {}):", args.anomaly_threshold)?;
    for a in &summary.anomalies {
        writeln!(buf, "{} {} {}", a.subject, a.year, a.delta)?;
    }
    for subject in &summary.subjects {
        writeln!(buf)?;
        buf.extend_from_slice(ascii_chart(subject, 50).as_bytes());
    }
    if let Some(dir) = &args.plot_dir {
        fs::create_dir_all(dir)
            .map_err(|e| Failure::usage(format!("cannot create {}: {e}", dir.display())))?;
        for subject in &summary.subjects {
            let path = dir.join(format!("{}.svg", subject.subject));
            fs::write(&path, svg_chart(subject))
                .map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))?;
        }
    }
    emit(&args.out, &buf)
}

fn bench(args: Bench) -> CmdResult {
    if args.sizes.is_empty() || args.sizes.contains(&0) {
        return Err(Failure::usage("--sizes needs positive integers"));
    }
    let report = run_bench(&BenchConfig::new(args.sizes, args.algos, args.seed))?;
    match &args.out {
        Some(_) => {
            emit(&args.out, report.machine_lines().as_bytes())?;
            emit(&None, report.table().as_bytes())
        }
        None => emit(
            &None,
            format!("{}\n{}", report.machine_lines(), report.table()).as_bytes(),
        ),
    }
}

fn configure_threads() -> CmdResult {
    let Ok(value) = std::env::var("SEQMINE_THREADS") else {
        return Ok(());
    };
    let threads: usize = value.trim().parse().map_err(|_| {
        Failure::usage(format!(
            "SEQMINE_THREADS={value:?} is not a non-negative integer"
        ))
    })?;
    if threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| Failure {
                code: EXIT_INTERNAL,
                message: e.to_string(),
            })?;
    }
    Ok(())
}

pub fn execute(cli: Cli) -> CmdResult {
    configure_threads()?;
    match cli.command {
        Command::MineItemsets(a) => mine_itemsets(a),
        Command::MineSeq(a) => mine_seq(a),
        Command::MineStream(a) => mine_stream(a),
        Command::AnalyzeResults(a) => analyze_results(a),
        Command::Bench(a) => bench(a),
    }
}

fn one_line(text: &str) -> String {
    let line = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty())
        .unwrap_or("failed");
    line.strip_prefix("error:")
        .unwrap_or(line)
        .trim()
        .to_string()
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) if !err.use_stderr() => {
            let _ = err.print();
            return EXIT_OK;
        }
        Err(err) => {
            eprintln!("error: {}", one_line(&err.to_string()));
            return EXIT_USAGE;
        }
    };
    match execute(cli) {
        Ok(()) => EXIT_OK,
        Err(failure) => {
            eprintln!("error: {}", one_line(&failure.message));
            failure.code
        }
    }
}
