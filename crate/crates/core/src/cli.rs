//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 for data or algorithm errors, 2 for usage
//! errors.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::bench::{gen_dataset, records_to_csv, BenchRecord, run_bench, BenchConfig, DatasetClass, DatasetSpec};
use crate::distance::{pairwise_distance_matrix, DEFAULT_D_MAX};
use crate::error::Error;
use crate::fasta::{parse_fasta, write_fasta, GapMode};
use crate::pairwise::ScoringScheme;
use crate::profile::TieBreakPolicy;
use crate::progressive::PipelineConfig;
use crate::seq::{strip_gaps, Msa, Sequence};
use crate::tree::GuideMethod;

#[derive(Debug, Parser)]
#[command(name = "progalign", version, about = "Progressive multiple sequence alignment")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Align a FASTA file progressively.
    Align(AlignArgs),
    /// Build a guide tree and write it as Newick.
    Tree(TreeArgs),
    /// Write the Jukes-Cantor distance matrix as CSV.
    Distance(DistanceArgs),
    /// Generate a random DNA dataset.
    Gen(GenArgs),
    /// Compare UPGMA and neighbor-joining guide trees.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Method {
    Upgma,
    Nj,
}

impl From<Method> for GuideMethod {
    fn from(m: Method) -> Self {
        match m {
            Method::Upgma => GuideMethod::Upgma,
            Method::Nj => GuideMethod::NeighborJoining,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Tie {
    Lex,
    Random,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ClassName {
    Small,
    Medium,
    Large,
}

#[derive(Debug, Args)]
struct ScoringArgs {
    #[arg(long = "match", default_value_t = 3, allow_negative_numbers = true)]
    match_score: i32,
    #[arg(long = "mismatch", default_value_t = 0, allow_negative_numbers = true)]
    mismatch_score: i32,
    #[arg(long = "gap", default_value_t = -1, allow_negative_numbers = true)]
    gap_penalty: i32,
    /// Distance reported for saturated pairs (mismatch fraction >= 3/4).
    #[arg(long, default_value_t = DEFAULT_D_MAX)]
    d_max: f64,
}

impl ScoringArgs {
    fn scheme(&self) -> ScoringScheme {
        let s = ScoringScheme::new(self.match_score, self.mismatch_score, self.gap_penalty);
        if s.is_inverted() {
            eprintln!(
                "warning: match score {} is below mismatch score {}",
                s.match_score, s.mismatch_score
            );
        }
        s
    }
}

#[derive(Debug, Args)]
struct AlignArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum)]
    guide: Method,
    #[command(flatten)]
    scoring: ScoringArgs,
    #[arg(long, value_enum, default_value_t = Tie::Lex)]
    tie: Tie,
    /// Seed for random tie draws.
    #[arg(long, env = "MSA_SEED")]
    seed: Option<u64>,
    /// Aligned FASTA output; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    tree_out: Option<PathBuf>,
    /// One-row CSV with timings and costs.
    #[arg(long)]
    stats: Option<PathBuf>,
    /// Print negative neighbor-joining branches as zero in the Newick output.
    #[arg(long)]
    clamp_negative: bool,
    /// Re-read the written alignment and check it against the input.
    #[arg(long)]
    verify: bool,
}

#[derive(Debug, Args)]
struct TreeArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum)]
    method: Method,
    /// Newick output; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    scoring: ScoringArgs,
    #[arg(long)]
    distmat: Option<PathBuf>,
    /// Join order as CSV (iteration, left, right, criterion).
    #[arg(long)]
    merge_log: Option<PathBuf>,
    #[arg(long)]
    clamp_negative: bool,
}

#[derive(Debug, Args)]
struct DistanceArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    scoring: ScoringArgs,
}

#[derive(Debug, Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    class: Option<ClassName>,
    #[arg(long)]
    count: Option<usize>,
    #[arg(long)]
    min_len: Option<usize>,
    #[arg(long)]
    max_len: Option<usize>,
    #[arg(long, env = "MSA_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct BenchArgs {
    #[arg(long, value_enum, value_delimiter = ',', default_value = "small,medium")]
    classes: Vec<ClassName>,
    /// FASTA for the large class.
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    reps: usize,
    #[arg(long, env = "MSA_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "upgma,nj")]
    methods: Vec<Method>,
    #[arg(long)]
    out: Option<PathBuf>,
}

enum Failure {
    Usage(String),
    Data(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Config(msg) => Failure::Usage(msg),
            other => Failure::Data(other.to_string()),
        }
    }
}

type CmdResult = Result<(), Failure>;

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let result = match cli.command {
        Command::Align(a) => cmd_align(a),
        Command::Tree(a) => cmd_tree(a),
        Command::Distance(a) => cmd_distance(a),
        Command::Gen(a) => cmd_gen(a),
        Command::Bench(a) => cmd_bench(a),
    };
    match result {
        Ok(()) => 0,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            2
        }
        Err(Failure::Data(msg)) => {
            eprintln!("error: {msg}");
            1
        }
    }
}

/// Reads FASTA, accepting pre-aligned rows, and removes gaps.
fn read_sequences(path: &Path) -> Result<Vec<Sequence>, Failure> {
    let text = fs::read(path).map_err(|e| Failure::Data(format!("{}: {e}", path.display())))?;
    let seqs = parse_fasta(&text, GapMode::Accept)
        .and_then(|seqs| seqs.iter().map(strip_gaps).collect::<Result<Vec<_>, _>>())
        .map_err(|e| Failure::Data(format!("{}: {e}", path.display())))?;
    Ok(seqs)
}

fn emit(path: Option<&Path>, text: &str) -> CmdResult {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Data(format!("{}: {e}", p.display()))),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Data(e.to_string())),
    }
}

fn cmd_align(a: AlignArgs) -> CmdResult {
    let seqs = read_sequences(&a.input)?;
    let tie = match (a.tie, a.seed) {
        (Tie::Random, seed) => TieBreakPolicy::SeededRandom(seed.unwrap_or(0)),
        (Tie::Lex, Some(_)) => {
            eprintln!("warning: --seed has no effect without --tie random");
            TieBreakPolicy::Lexicographic
        }
        (Tie::Lex, None) => TieBreakPolicy::Lexicographic,
    };
    let cfg = PipelineConfig {
        scoring: a.scoring.scheme(),
        tie,
        d_max: a.scoring.d_max,
        ..PipelineConfig::new(a.guide.into())
    };
    let report = crate::progressive::progressive_align(&seqs, &cfg)?;
    for &(i, j) in &report.saturated_pairs {
        eprintln!(
            "warning: distance between {} and {} saturated at {}",
            seqs[i].id(),
            seqs[j].id(),
            cfg.d_max
        );
    }

    let fasta = write_fasta(report.msa.rows());
    emit(a.out.as_deref(), &fasta)?;
    if a.verify {
        verify_alignment(&fasta, &seqs)?;
    }
    if let Some(p) = &a.tree_out {
        let mut nwk = report.guide_tree.to_newick(a.clamp_negative);
        nwk.push('\n');
        emit(Some(p), &nwk)?;
    }
    if let Some(p) = &a.stats {
        let record = BenchRecord::from_report(&seqs, &report, cfg.guide_method, a.seed.unwrap_or(0));
        emit(Some(p), &records_to_csv(&[record]))?;
    }
    Ok(())
}

fn verify_alignment(fasta: &str, raw: &[Sequence]) -> CmdResult {
    let check = || -> Result<(), Error> {
        let rows = parse_fasta(fasta.as_bytes(), GapMode::Accept)?;
        Msa::new(rows)?.verify_round_trip(raw)
    };
    check().map_err(|e| Failure::Data(format!("verification failed: {e}")))
}

fn cmd_tree(a: TreeArgs) -> CmdResult {
    let seqs = read_sequences(&a.input)?;
    let dist = pairwise_distance_matrix(&seqs, &a.scoring.scheme(), a.scoring.d_max)?;
    let tree = GuideMethod::from(a.method).build(&dist.matrix)?;
    let mut nwk = tree.to_newick(a.clamp_negative);
    nwk.push('\n');
    emit(a.out.as_deref(), &nwk)?;
    if let Some(p) = &a.distmat {
        emit(Some(p), &dist.matrix.to_csv())?;
    }
    if let Some(p) = &a.merge_log {
        emit(Some(p), &tree.merge_log_csv())?;
    }
    Ok(())
}

fn cmd_distance(a: DistanceArgs) -> CmdResult {
    let seqs = read_sequences(&a.input)?;
    let dist = pairwise_distance_matrix(&seqs, &a.scoring.scheme(), a.scoring.d_max)?;
    emit(a.out.as_deref(), &dist.matrix.to_csv())
}

fn cmd_gen(a: GenArgs) -> CmdResult {
    let base = match a.class {
        Some(ClassName::Small) => Some(DatasetSpec::SMALL),
        Some(ClassName::Medium) => Some(DatasetSpec::MEDIUM),
        Some(ClassName::Large) => {
            return Err(Failure::Usage("the large class is user-supplied, not generated".into()))
        }
        None => None,
    };
    let spec = match (base, a.count, a.min_len, a.max_len) {
        (Some(b), count, min, max) => DatasetSpec {
            count: count.unwrap_or(b.count),
            min_len: min.unwrap_or(b.min_len),
            max_len: max.unwrap_or(b.max_len),
        },
        (None, Some(count), Some(min_len), Some(max_len)) => DatasetSpec {
            count,
            min_len,
            max_len,
        },
        _ => {
            return Err(Failure::Usage(
                "give --class or all of --count, --min-len and --max-len".into(),
            ))
        }
    };
    let seqs = gen_dataset(&spec, a.seed)?;
    emit(a.out.as_deref(), &write_fasta(&seqs))
}

fn cmd_bench(a: BenchArgs) -> CmdResult {
    let mut classes = Vec::new();
    let mut wants_large = a.input.is_some();
    for c in &a.classes {
        match c {
            ClassName::Small => classes.push(DatasetClass::Small),
            ClassName::Medium => classes.push(DatasetClass::Medium),
            ClassName::Large => wants_large = true,
        }
    }
    if wants_large {
        let path = a
            .input
            .as_deref()
            .ok_or_else(|| Failure::Usage("the large class needs --input <fasta>".into()))?;
        classes.push(DatasetClass::Large(read_sequences(path)?));
    }
    let mut cfg = BenchConfig::new(classes, a.reps, a.seed);
    cfg.methods = a.methods.iter().map(|&m| m.into()).collect();
    let records = run_bench(&cfg)?;
    emit(a.out.as_deref(), &records_to_csv(&records))
}
