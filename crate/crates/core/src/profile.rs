//! Column frequency profiles, consensus extraction and group merging.
//!
//! Groups are merged through their consensus sequences: the two consensus
//! strings are globally aligned (consensus gaps count as a fifth symbol) and
//! every gap the alignment opens on one side becomes a gap column across all
//! rows of that group.

use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::pairwise::{align_path, ScoringScheme, Step};
use crate::seq::{Msa, Sequence, Symbol};

/// Per-column symbol counts over an alignment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProfileMatrix {
    counts: Vec<[usize; 5]>,
    depth: usize,
}

impl ProfileMatrix {
    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn count(&self, column: usize, sym: Symbol) -> usize {
        self.counts[column][sym.index()]
    }

    pub fn frequency(&self, column: usize, sym: Symbol) -> f64 {
        self.count(column, sym) as f64 / self.depth as f64
    }

    pub fn column_frequencies(&self, column: usize) -> [f64; 5] {
        Symbol::ALL.map(|s| self.frequency(column, s))
    }

    /// Symbols sharing the highest count in `column`, in tie order.
    pub fn tied_maxima(&self, column: usize) -> Vec<Symbol> {
        let c = &self.counts[column];
        let best = *c.iter().max().expect("five counts");
        Symbol::ALL.into_iter().filter(|s| c[s.index()] == best).collect()
    }

    /// One row per symbol (A, C, G, T, '-'), one column per position.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("symbol");
        for c in 0..self.len() {
            let _ = write!(out, ",{c}");
        }
        out.push('\n');
        for sym in Symbol::ALL {
            out.push(sym.fasta_char());
            for c in 0..self.len() {
                let _ = write!(out, ",{:.6}", self.frequency(c, sym));
            }
            out.push('\n');
        }
        out
    }
}

pub fn build_profile(msa: &Msa) -> Result<ProfileMatrix> {
    if msa.depth() < 2 {
        return Err(Error::ProfileTooShallow(msa.depth()));
    }
    Ok(count_columns(msa))
}

fn count_columns(msa: &Msa) -> ProfileMatrix {
    let counts = (0..msa.width())
        .map(|c| {
            let mut col = [0usize; 5];
            for s in msa.column(c) {
                col[s.index()] += 1;
            }
            col
        })
        .collect();
    ProfileMatrix {
        counts,
        depth: msa.depth(),
    }
}

/// How ties between equally frequent symbols are settled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TieBreakPolicy {
    /// First symbol in `A < C < G < T < gap` order.
    #[default]
    Lexicographic,
    /// Uniform draw from a ChaCha8 stream with this seed.
    SeededRandom(u64),
}

impl TieBreakPolicy {
    pub fn breaker(self) -> TieBreaker {
        TieBreaker {
            rng: match self {
                TieBreakPolicy::Lexicographic => None,
                TieBreakPolicy::SeededRandom(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
            },
        }
    }
}

/// Draw state for a [`TieBreakPolicy`]; threaded explicitly through a run.
#[derive(Debug, Clone)]
pub struct TieBreaker {
    rng: Option<ChaCha8Rng>,
}

impl TieBreaker {
    fn pick(&mut self, tied: &[Symbol]) -> Symbol {
        match &mut self.rng {
            None => tied[0],
            Some(rng) => *tied.choose(rng).expect("non-empty tie set"),
        }
    }
}

/// Most frequent symbol per column.
///
/// Ties are settled against `against`: if it has a symbol at that position
/// and the symbol is among the tied maxima, it wins; otherwise (including
/// positions past the end of `against`) the breaker draws among the maxima.
pub fn consensus(p: &ProfileMatrix, against: Option<&[Symbol]>, tie: &mut TieBreaker) -> Vec<Symbol> {
    (0..p.len())
        .map(|c| {
            let tied = p.tied_maxima(c);
            if tied.len() == 1 {
                return tied[0];
            }
            match against.and_then(|a| a.get(c)) {
                Some(s) if tied.contains(s) => *s,
                _ => tie.pick(&tied),
            }
        })
        .collect()
}

/// Applies an alignment path between two groups' consensus strings.
fn merge_along(path: &[Step], g1: &Msa, g2: &Msa) -> Msa {
    let width = path.len();
    let mut rows1: Vec<Vec<Symbol>> = vec![Vec::with_capacity(width); g1.depth()];
    let mut rows2: Vec<Vec<Symbol>> = vec![Vec::with_capacity(width); g2.depth()];
    let (mut c1, mut c2) = (0usize, 0usize);
    for step in path {
        let (take1, take2) = match step {
            Step::Diagonal => (true, true),
            Step::Up => (true, false),
            Step::Left => (false, true),
        };
        for (row, src) in rows1.iter_mut().zip(g1.rows()) {
            row.push(if take1 { src.residues()[c1] } else { Symbol::Gap });
        }
        for (row, src) in rows2.iter_mut().zip(g2.rows()) {
            row.push(if take2 { src.residues()[c2] } else { Symbol::Gap });
        }
        c1 += take1 as usize;
        c2 += take2 as usize;
    }
    debug_assert_eq!((c1, c2), (g1.width(), g2.width()));

    let rows = g1
        .rows()
        .iter()
        .zip(rows1)
        .chain(g2.rows().iter().zip(rows2))
        .map(|(src, residues)| {
            Sequence::new(src.id(), residues)
                .expect("merged row keeps its id and is non-empty")
                .with_description(src.description().map(str::to_string))
        })
        .collect();
    Msa::from_parts(rows, width)
}

/// Merges two groups given the strings that represent them.
pub(crate) fn merge_groups(
    g1: &Msa,
    rep1: &[Symbol],
    g2: &Msa,
    rep2: &[Symbol],
    s: &ScoringScheme,
) -> (Msa, i32) {
    let (path, score) = align_path(rep1, rep2, s);
    (merge_along(&path, g1, g2), score)
}

/// Aligns a raw sequence onto an existing group through the group's consensus.
pub fn align_sequence_to_profile(
    group: &Msa,
    newcomer: &Sequence,
    s: &ScoringScheme,
    tie: &mut TieBreaker,
) -> Result<Msa> {
    if newcomer.has_gaps() {
        return Err(Error::UnexpectedGap(newcomer.id().to_string()));
    }
    let profile = build_profile(group)?;
    let cons = consensus(&profile, Some(newcomer.residues()), tie);
    let single = Msa::singleton(newcomer.clone());
    Ok(merge_groups(group, &cons, &single, newcomer.residues(), s).0)
}

/// Aligns two groups through their consensus sequences; rows of `g1` come
/// first. `g2`'s consensus settles ties against `g1`'s.
pub fn align_profile_to_profile(
    g1: &Msa,
    g2: &Msa,
    s: &ScoringScheme,
    tie: &mut TieBreaker,
) -> Result<Msa> {
    let cons1 = consensus(&build_profile(g1)?, None, tie);
    let cons2 = consensus(&build_profile(g2)?, Some(&cons1), tie);
    Ok(merge_groups(g1, &cons1, g2, &cons2, s).0)
}
