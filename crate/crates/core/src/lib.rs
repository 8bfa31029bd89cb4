//! Progressive multiple sequence alignment of DNA.
//!
//! The pipeline computes Jukes-Cantor distances from Needleman-Wunsch
//! alignments of every pair, builds a UPGMA or neighbor-joining guide tree,
//! and merges sequences and groups in the tree's join order through
//! consensus profiles. [`bench`] compares the two guide-tree methods on
//! generated or user-supplied data.
//!
//! ```
//! use progalign::{progressive_align, GuideMethod, PipelineConfig, Sequence};
//!
//! let seqs = vec![
//!     Sequence::raw("a", "ACGTACT").unwrap(),
//!     Sequence::raw("b", "ACTACG").unwrap(),
//!     Sequence::raw("c", "ATGCTGG").unwrap(),
//! ];
//! let report = progressive_align(&seqs, &PipelineConfig::new(GuideMethod::NeighborJoining)).unwrap();
//! assert_eq!(report.msa.depth(), 3);
//! report.msa.verify_round_trip(&seqs).unwrap();
//! ```

pub mod bench;
pub mod cli;
pub mod distance;
pub mod error;
pub mod evaluate;
pub mod fasta;
pub mod pairwise;
pub mod profile;
pub mod progressive;
pub mod seq;
pub mod tree;

pub use distance::{DistanceMatrix, MatchStats};
pub use error::{Error, Result};
pub use evaluate::{sp_score, sp_total_cost, CostScheme};
pub use pairwise::{align_global, build_dp_matrix, PairwiseAlignment, ScoringScheme};
pub use profile::{TieBreakPolicy, TieBreaker};
pub use progressive::{merge_schedule, progressive_align, PipelineConfig, PipelineReport};
pub use seq::{Msa, Sequence, Symbol};
pub use tree::{GuideMethod, GuideTree};
