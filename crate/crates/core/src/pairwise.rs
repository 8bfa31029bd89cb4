//! Needleman-Wunsch global alignment under a linear gap penalty.
//!
//! The traceback is deterministic. When several predecessors of a cell reach
//! its value, the preference is: left (gap in `a`), then diagonal, then up
//! (gap in `b`).

use crate::error::{Error, Result};
use crate::seq::{Sequence, Symbol};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScoringScheme {
    pub match_score: i32,
    pub mismatch_score: i32,
    pub gap_penalty: i32,
}

impl Default for ScoringScheme {
    fn default() -> Self {
        ScoringScheme {
            match_score: 3,
            mismatch_score: 0,
            gap_penalty: -1,
        }
    }
}

impl ScoringScheme {
    pub fn new(match_score: i32, mismatch_score: i32, gap_penalty: i32) -> Self {
        ScoringScheme {
            match_score,
            mismatch_score,
            gap_penalty,
        }
    }

    /// True when a mismatch scores at least as well as a match. Such schemes
    /// are accepted but usually a mistake.
    pub fn is_inverted(&self) -> bool {
        self.match_score < self.mismatch_score
    }

    /// Substitution score. `Gap` is compared like any other symbol, which is
    /// how consensus gaps are scored during profile merges.
    #[inline]
    pub fn substitution(&self, x: Symbol, y: Symbol) -> i32 {
        if x == y {
            self.match_score
        } else {
            self.mismatch_score
        }
    }
}

/// One column of an alignment path.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Step {
    /// Consume one symbol of each input.
    Diagonal,
    /// Consume a symbol of `a` against a gap.
    Up,
    /// Consume a symbol of `b` against a gap.
    Left,
}

/// Full `(m+1) x (n+1)` score table, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DpMatrix {
    rows: usize,
    cols: usize,
    cells: Vec<i32>,
}

impl DpMatrix {
    pub fn get(&self, i: usize, j: usize) -> i32 {
        self.cells[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[i32] {
        &self.cells[i * self.cols..(i + 1) * self.cols]
    }

    pub fn n_rows(&self) -> usize {
        self.rows
    }

    pub fn n_cols(&self) -> usize {
        self.cols
    }

    pub fn corner(&self) -> i32 {
        self.cells[self.cells.len() - 1]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairwiseAlignment {
    pub row_a: Vec<Symbol>,
    pub row_b: Vec<Symbol>,
    pub score: i32,
}

impl PairwiseAlignment {
    pub fn width(&self) -> usize {
        self.row_a.len()
    }

    /// Column-wise rescoring; gap columns cost the gap penalty.
    pub fn rescore(&self, s: &ScoringScheme) -> i32 {
        self.row_a
            .iter()
            .zip(&self.row_b)
            .map(|(&x, &y)| {
                if x.is_gap() || y.is_gap() {
                    s.gap_penalty
                } else {
                    s.substitution(x, y)
                }
            })
            .sum()
    }
}

fn ensure_gapless(what: &str, seq: &[Symbol]) -> Result<()> {
    if seq.iter().any(|s| s.is_gap()) {
        return Err(Error::UnexpectedGap(what.to_string()));
    }
    Ok(())
}

/// Fills the score table for gapless inputs.
pub fn build_dp_matrix(a: &[Symbol], b: &[Symbol], s: &ScoringScheme) -> Result<DpMatrix> {
    ensure_gapless("first sequence", a)?;
    ensure_gapless("second sequence", b)?;
    Ok(fill(a, b, s))
}

pub(crate) fn fill(a: &[Symbol], b: &[Symbol], s: &ScoringScheme) -> DpMatrix {
    let rows = a.len() + 1;
    let cols = b.len() + 1;
    let mut cells = vec![0i32; rows * cols];
    for j in 1..cols {
        cells[j] = j as i32 * s.gap_penalty;
    }
    for i in 1..rows {
        let (prev, cur) = cells.split_at_mut(i * cols);
        let prev = &prev[(i - 1) * cols..];
        let cur = &mut cur[..cols];
        cur[0] = i as i32 * s.gap_penalty;
        let x = a[i - 1];
        for j in 1..cols {
            let diag = prev[j - 1] + s.substitution(x, b[j - 1]);
            let up = prev[j] + s.gap_penalty;
            let left = cur[j - 1] + s.gap_penalty;
            cur[j] = diag.max(up).max(left);
        }
    }
    DpMatrix { rows, cols, cells }
}

/// Traces an optimal path from the bottom-right corner back to the origin.
pub(crate) fn traceback(m: &DpMatrix, a: &[Symbol], b: &[Symbol], s: &ScoringScheme) -> Vec<Step> {
    let (mut i, mut j) = (a.len(), b.len());
    let mut path = Vec::with_capacity(i + j);
    while i > 0 || j > 0 {
        let here = m.get(i, j);
        if j > 0 && m.get(i, j - 1) + s.gap_penalty == here {
            path.push(Step::Left);
            j -= 1;
        } else if i > 0 && j > 0 && m.get(i - 1, j - 1) + s.substitution(a[i - 1], b[j - 1]) == here {
            path.push(Step::Diagonal);
            i -= 1;
            j -= 1;
        } else {
            debug_assert!(i > 0 && m.get(i - 1, j) + s.gap_penalty == here);
            path.push(Step::Up);
            i -= 1;
        }
    }
    path.reverse();
    path
}

/// Optimal path and score, with `Gap` treated as an ordinary symbol.
pub(crate) fn align_path(a: &[Symbol], b: &[Symbol], s: &ScoringScheme) -> (Vec<Step>, i32) {
    let m = fill(a, b, s);
    let path = traceback(&m, a, b, s);
    (path, m.corner())
}

pub(crate) fn apply_path(path: &[Step], a: &[Symbol], b: &[Symbol]) -> (Vec<Symbol>, Vec<Symbol>) {
    let mut row_a = Vec::with_capacity(path.len());
    let mut row_b = Vec::with_capacity(path.len());
    let (mut ia, mut ib) = (a.iter(), b.iter());
    for step in path {
        match step {
            Step::Diagonal => {
                row_a.push(*ia.next().expect("path overruns a"));
                row_b.push(*ib.next().expect("path overruns b"));
            }
            Step::Up => {
                row_a.push(*ia.next().expect("path overruns a"));
                row_b.push(Symbol::Gap);
            }
            Step::Left => {
                row_a.push(Symbol::Gap);
                row_b.push(*ib.next().expect("path overruns b"));
            }
        }
    }
    (row_a, row_b)
}

/// Global alignment of two gapless symbol strings. Either may be empty, not both.
pub fn align_global(a: &[Symbol], b: &[Symbol], s: &ScoringScheme) -> Result<PairwiseAlignment> {
    if a.is_empty() && b.is_empty() {
        return Err(Error::BothEmpty);
    }
    let m = build_dp_matrix(a, b, s)?;
    let path = traceback(&m, a, b, s);
    let (row_a, row_b) = apply_path(&path, a, b);
    Ok(PairwiseAlignment {
        row_a,
        row_b,
        score: m.corner(),
    })
}

/// [`align_global`] on two sequences, returning gapped sequences with the
/// original ids.
pub fn align_sequences(
    a: &Sequence,
    b: &Sequence,
    s: &ScoringScheme,
) -> Result<(Sequence, Sequence, i32)> {
    let al = align_global(a.residues(), b.residues(), s)?;
    Ok((
        Sequence::new(a.id(), al.row_a)?,
        Sequence::new(b.id(), al.row_b)?,
        al.score,
    ))
}
