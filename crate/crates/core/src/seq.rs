//! Sequence and alignment data model.

use std::fmt;

use crate::error::{Error, Result};

/// A DNA residue or the gap symbol.
///
/// The derived ordering `A < C < G < T < Gap` doubles as the lexicographic
/// tie order used by consensus extraction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    A,
    C,
    G,
    T,
    Gap,
}

impl Symbol {
    pub const ALL: [Symbol; 5] = [Symbol::A, Symbol::C, Symbol::G, Symbol::T, Symbol::Gap];
    pub const BASES: [Symbol; 4] = [Symbol::A, Symbol::C, Symbol::G, Symbol::T];

    /// Case-insensitive; both `-` and `_` decode to `Gap`.
    pub fn from_byte(b: u8) -> Option<Symbol> {
        match b {
            b'A' | b'a' => Some(Symbol::A),
            b'C' | b'c' => Some(Symbol::C),
            b'G' | b'g' => Some(Symbol::G),
            b'T' | b't' => Some(Symbol::T),
            b'-' | b'_' => Some(Symbol::Gap),
            _ => None,
        }
    }

    /// Row index in a profile table (A, C, G, T, gap).
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn is_gap(self) -> bool {
        self == Symbol::Gap
    }

    /// Internal rendering; gaps print as `_`.
    pub fn as_char(self) -> char {
        match self {
            Symbol::A => 'A',
            Symbol::C => 'C',
            Symbol::G => 'G',
            Symbol::T => 'T',
            Symbol::Gap => '_',
        }
    }

    /// FASTA rendering; gaps print as `-`.
    pub fn fasta_char(self) -> char {
        match self {
            Symbol::Gap => '-',
            s => s.as_char(),
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// Parses a residue string, rejecting anything outside `ACGTacgt-_`.
pub fn symbols(text: &str) -> Result<Vec<Symbol>> {
    text.bytes()
        .map(|b| {
            Symbol::from_byte(b)
                .ok_or_else(|| Error::InvalidSequence(format!("illegal residue {:?}", b as char)))
        })
        .collect()
}

pub fn render(residues: &[Symbol]) -> String {
    residues.iter().map(|s| s.as_char()).collect()
}

/// An identified, non-empty string of symbols.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sequence {
    id: String,
    description: Option<String>,
    residues: Vec<Symbol>,
}

impl Sequence {
    pub fn new(id: impl Into<String>, residues: Vec<Symbol>) -> Result<Sequence> {
        let id = id.into();
        if id.is_empty() || id.chars().any(char::is_whitespace) {
            return Err(Error::InvalidSequence(format!(
                "identifier {id:?} must be non-empty and contain no whitespace"
            )));
        }
        if residues.is_empty() {
            return Err(Error::InvalidSequence(format!("sequence '{id}' is empty")));
        }
        Ok(Sequence {
            id,
            description: None,
            residues,
        })
    }

    /// Gapless sequence from text.
    pub fn raw(id: impl Into<String>, text: &str) -> Result<Sequence> {
        let id = id.into();
        let residues = symbols(text)?;
        if residues.iter().any(|s| s.is_gap()) {
            return Err(Error::UnexpectedGap(id));
        }
        Sequence::new(id, residues)
    }

    /// Sequence from text that may contain `-` or `_`.
    pub fn gapped(id: impl Into<String>, text: &str) -> Result<Sequence> {
        Sequence::new(id, symbols(text)?)
    }

    pub fn with_description(mut self, description: Option<String>) -> Sequence {
        self.description = description.filter(|d| !d.is_empty());
        self
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn description(&self) -> Option<&str> {
        self.description.as_deref()
    }

    pub fn residues(&self) -> &[Symbol] {
        &self.residues
    }

    pub fn len(&self) -> usize {
        self.residues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.residues.is_empty()
    }

    pub fn has_gaps(&self) -> bool {
        self.residues.iter().any(|s| s.is_gap())
    }

    pub fn to_text(&self) -> String {
        render(&self.residues)
    }
}

impl fmt::Display for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Removes every gap; an all-gap row is an error.
pub fn strip_gaps(s: &Sequence) -> Result<Sequence> {
    let residues: Vec<Symbol> = s.residues.iter().copied().filter(|r| !r.is_gap()).collect();
    if residues.is_empty() {
        return Err(Error::AllGap(s.id.clone()));
    }
    Ok(Sequence {
        id: s.id.clone(),
        description: s.description.clone(),
        residues,
    })
}

/// A rectangular block of gapped rows with no all-gap column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Msa {
    rows: Vec<Sequence>,
    width: usize,
}

impl Msa {
    pub fn new(rows: Vec<Sequence>) -> Result<Msa> {
        let width = match rows.first() {
            Some(r) => r.len(),
            None => return Err(Error::InvalidMsa("alignment has no rows".into())),
        };
        if let Some(bad) = rows.iter().find(|r| r.len() != width) {
            return Err(Error::InvalidMsa(format!(
                "row '{}' has length {}, expected {width}",
                bad.id(),
                bad.len()
            )));
        }
        let msa = Msa { rows, width };
        if let Some(col) = (0..width).find(|&c| msa.column(c).all(Symbol::is_gap)) {
            return Err(Error::InvalidMsa(format!("column {col} consists only of gaps")));
        }
        Ok(msa)
    }

    /// Single-row alignment of an ungapped sequence.
    pub fn singleton(seq: Sequence) -> Msa {
        debug_assert!(!seq.has_gaps());
        let width = seq.len();
        Msa {
            rows: vec![seq],
            width,
        }
    }

    /// Builds from row texts; ids are `s0`, `s1`, ...
    pub fn from_texts<S: AsRef<str>>(rows: &[S]) -> Result<Msa> {
        let rows = rows
            .iter()
            .enumerate()
            .map(|(i, r)| Sequence::gapped(format!("s{i}"), r.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Msa::new(rows)
    }

    pub fn rows(&self) -> &[Sequence] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<Sequence> {
        self.rows
    }

    pub fn depth(&self) -> usize {
        self.rows.len()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn column(&self, c: usize) -> impl Iterator<Item = Symbol> + '_ {
        self.rows.iter().map(move |r| r.residues[c])
    }

    pub fn row_texts(&self) -> Vec<String> {
        self.rows.iter().map(Sequence::to_text).collect()
    }

    /// Checks that row `i` degaps to `raw[i]` (ids and residues).
    pub fn verify_round_trip(&self, raw: &[Sequence]) -> Result<()> {
        if raw.len() != self.rows.len() {
            return Err(Error::InvalidMsa(format!(
                "{} rows for {} input sequences",
                self.rows.len(),
                raw.len()
            )));
        }
        for (row, input) in self.rows.iter().zip(raw) {
            let stripped = strip_gaps(row)?;
            if stripped.id() != input.id() || stripped.residues() != input.residues() {
                return Err(Error::InvalidMsa(format!(
                    "row '{}' does not degap to input '{}'",
                    row.id(),
                    input.id()
                )));
            }
        }
        Ok(())
    }

    pub(crate) fn from_parts(rows: Vec<Sequence>, width: usize) -> Msa {
        debug_assert!(rows.iter().all(|r| r.len() == width));
        Msa { rows, width }
    }
}

impl fmt::Display for Msa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            writeln!(f, "{row}")?;
        }
        Ok(())
    }
}
