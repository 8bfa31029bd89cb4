//! Sum-of-pairs scoring of a finished alignment.
//!
//! Both metrics are computed per column from symbol counts, so the work is
//! linear in the number of rows. Columns are visited left to right, which
//! fixes the floating-point summation order.

use crate::pairwise::ScoringScheme;
use crate::seq::{Msa, Symbol};

/// Pair costs for the sum-of-pairs total. Matches and gap-gap pairs cost 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CostScheme {
    pub mismatch_cost: f64,
    pub gap_letter_cost: f64,
}

impl Default for CostScheme {
    fn default() -> Self {
        CostScheme {
            mismatch_cost: 1.0,
            gap_letter_cost: 1.0,
        }
    }
}

impl CostScheme {
    pub fn new(mismatch_cost: f64, gap_letter_cost: f64) -> Option<CostScheme> {
        (mismatch_cost >= 0.0 && gap_letter_cost >= 0.0).then_some(CostScheme {
            mismatch_cost,
            gap_letter_cost,
        })
    }
}

#[derive(Debug, Clone, Copy, Default)]
struct PairCounts {
    matches: u64,
    mismatches: u64,
    gap_letter: u64,
}

fn column_pairs(msa: &Msa, c: usize) -> PairCounts {
    let mut n = [0u64; 5];
    for s in msa.column(c) {
        n[s.index()] += 1;
    }
    let gaps = n[Symbol::Gap.index()];
    let bases = &n[..4];
    let letters: u64 = bases.iter().sum();
    let matches: u64 = bases.iter().map(|&k| k * k.saturating_sub(1) / 2).sum();
    PairCounts {
        matches,
        mismatches: letters * letters.saturating_sub(1) / 2 - matches,
        gap_letter: gaps * letters,
    }
}

/// Total pairwise cost over all row pairs and columns; lower is better.
pub fn sp_total_cost(msa: &Msa, c: &CostScheme) -> f64 {
    (0..msa.width())
        .map(|col| {
            let p = column_pairs(msa, col);
            p.mismatches as f64 * c.mismatch_cost + p.gap_letter as f64 * c.gap_letter_cost
        })
        .sum()
}

/// Total pairwise score under the alignment scoring; higher is better.
pub fn sp_score(msa: &Msa, s: &ScoringScheme) -> i64 {
    (0..msa.width())
        .map(|col| {
            let p = column_pairs(msa, col);
            p.matches as i64 * s.match_score as i64
                + p.mismatches as i64 * s.mismatch_score as i64
                + p.gap_letter as i64 * s.gap_penalty as i64
        })
        .sum()
}
