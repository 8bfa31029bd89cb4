//! Synthetic datasets and the UPGMA vs neighbor-joining comparison harness.

use std::fmt::Write as _;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::pairwise::ScoringScheme;
use crate::profile::TieBreakPolicy;
use crate::progressive::{progressive_align, PipelineConfig, PipelineReport};
use crate::seq::{Sequence, Symbol};
use crate::tree::GuideMethod;

/// Sequence count and inclusive length range for a generated dataset.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DatasetSpec {
    pub count: usize,
    pub min_len: usize,
    pub max_len: usize,
}

impl DatasetSpec {
    /// Seven sequences of 4 to 40 bases.
    pub const SMALL: DatasetSpec = DatasetSpec {
        count: 7,
        min_len: 4,
        max_len: 40,
    };
    /// Five sequences of 40 to 500 bases.
    pub const MEDIUM: DatasetSpec = DatasetSpec {
        count: 5,
        min_len: 40,
        max_len: 500,
    };

    pub fn validate(&self) -> Result<()> {
        if self.count < 2 {
            return Err(Error::Config(format!("count must be at least 2, got {}", self.count)));
        }
        if self.min_len == 0 {
            return Err(Error::Config("min-len must be at least 1".into()));
        }
        if self.min_len > self.max_len {
            return Err(Error::Config(format!(
                "min-len {} exceeds max-len {}",
                self.min_len, self.max_len
            )));
        }
        Ok(())
    }
}

/// Uniform random DNA, ids `seq1..seqN`. Deterministic per seed.
pub fn gen_dataset(spec: &DatasetSpec, seed: u64) -> Result<Vec<Sequence>> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (1..=spec.count)
        .map(|i| {
            let len = rng.gen_range(spec.min_len..=spec.max_len);
            let residues = (0..len).map(|_| Symbol::BASES[rng.gen_range(0..4)]).collect();
            Sequence::new(format!("seq{i}"), residues)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DatasetClass {
    Small,
    Medium,
    /// User-supplied sequences, e.g. a FASTA of real genes.
    Large(Vec<Sequence>),
}

impl DatasetClass {
    pub fn name(&self) -> &'static str {
        match self {
            DatasetClass::Small => "small",
            DatasetClass::Medium => "medium",
            DatasetClass::Large(_) => "large",
        }
    }
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub classes: Vec<DatasetClass>,
    pub repetitions: usize,
    pub seed: u64,
    pub methods: Vec<GuideMethod>,
    pub small: DatasetSpec,
    pub medium: DatasetSpec,
}

impl BenchConfig {
    pub fn new(classes: Vec<DatasetClass>, repetitions: usize, seed: u64) -> Self {
        BenchConfig {
            classes,
            repetitions,
            seed,
            methods: vec![GuideMethod::Upgma, GuideMethod::NeighborJoining],
            small: DatasetSpec::SMALL,
            medium: DatasetSpec::MEDIUM,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRecord {
    pub method: GuideMethod,
    pub n_sequences: usize,
    pub mean_length: f64,
    pub distance_ms: u64,
    pub tree_ms: u64,
    pub merge_ms: u64,
    pub total_ms: u64,
    pub total_cost: f64,
    pub sp_score: i64,
    pub seed: u64,
}

pub const CSV_HEADER: &str =
    "method,n_sequences,mean_length,distance_ms,tree_ms,merge_ms,total_ms,total_cost,sp_score,seed";

impl BenchRecord {
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{:.3},{},{},{},{},{:.6},{},{}",
            self.method.label(),
            self.n_sequences,
            self.mean_length,
            self.distance_ms,
            self.tree_ms,
            self.merge_ms,
            self.total_ms,
            self.total_cost,
            self.sp_score,
            self.seed
        )
    }
}

pub fn records_to_csv(records: &[BenchRecord]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in records {
        let _ = writeln!(out, "{}", r.csv_row());
    }
    out
}

impl BenchRecord {
    pub fn from_report(seqs: &[Sequence], report: &PipelineReport, method: GuideMethod, seed: u64) -> Self {
        let mean_length = seqs.iter().map(Sequence::len).sum::<usize>() as f64 / seqs.len() as f64;
        BenchRecord {
            method,
            n_sequences: seqs.len(),
            mean_length,
            distance_ms: report.timings.distance_ms(),
            tree_ms: report.timings.tree_ms(),
            merge_ms: report.timings.merge_ms(),
            total_ms: report.timings.total_ms(),
            total_cost: report.total_cost,
            sp_score: report.sp_score,
            seed,
        }
    }
}

/// Runs one pipeline and packages its measurements.
pub fn measure(seqs: &[Sequence], cfg: &PipelineConfig, seed: u64) -> Result<BenchRecord> {
    let report = progressive_align(seqs, cfg)?;
    Ok(BenchRecord::from_report(seqs, &report, cfg.guide_method, seed))
}

/// Every class x method x repetition, in that nesting order, run serially
/// with the default scoring (3, 0, -1) and lexicographic ties. The dataset
/// for a class is generated once from `seed` and reused across repetitions.
pub fn run_bench(cfg: &BenchConfig) -> Result<Vec<BenchRecord>> {
    if cfg.repetitions == 0 {
        return Err(Error::Config("repetitions must be at least 1".into()));
    }
    if cfg.methods.is_empty() {
        return Err(Error::Config("no guide-tree methods selected".into()));
    }
    let mut records = Vec::new();
    for class in &cfg.classes {
        let seqs = match class {
            DatasetClass::Small => gen_dataset(&cfg.small, cfg.seed)?,
            DatasetClass::Medium => gen_dataset(&cfg.medium, cfg.seed)?,
            DatasetClass::Large(seqs) => seqs.clone(),
        };
        for &method in &cfg.methods {
            let pipeline = PipelineConfig {
                scoring: ScoringScheme::default(),
                tie: TieBreakPolicy::Lexicographic,
                ..PipelineConfig::new(method)
            };
            for _ in 0..cfg.repetitions {
                records.push(measure(&seqs, &pipeline, cfg.seed)?);
            }
        }
    }
    Ok(records)
}
