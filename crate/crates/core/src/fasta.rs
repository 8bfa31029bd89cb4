//! FASTA reading and writing.
//!
//! Identifiers run up to the first whitespace of the header line; the rest of
//! the line is kept as a description. Residues are case-insensitive and stored
//! uppercase. LF and CRLF line endings are accepted, LF is written.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::seq::{Sequence, Symbol};

pub const LINE_WIDTH: usize = 60;

/// Whether `-`/`_` are legal in sequence lines.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GapMode {
    #[default]
    Reject,
    Accept,
}

struct Pending {
    id: String,
    description: Option<String>,
    line: usize,
    residues: Vec<Symbol>,
}

pub fn parse_fasta(text: &[u8], gaps: GapMode) -> Result<Vec<Sequence>> {
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    let mut current: Option<Pending> = None;
    let mut offset = 0usize;

    for (idx, raw_line) in text.split_inclusive(|&b| b == b'\n').enumerate() {
        let line_no = idx + 1;
        let line_start = offset;
        offset += raw_line.len();

        let line = raw_line
            .strip_suffix(b"\n")
            .unwrap_or(raw_line);
        let line = line.strip_suffix(b"\r").unwrap_or(line);

        if let Some(header) = line.strip_prefix(b">") {
            if let Some(p) = current.take() {
                out.push(finish(p, &mut seen)?);
            }
            let header = String::from_utf8_lossy(header);
            let header = header.trim();
            let (id, desc) = match header.split_once(char::is_whitespace) {
                Some((id, rest)) => (id, Some(rest.trim().to_string())),
                None => (header, None),
            };
            if id.is_empty() {
                return Err(Error::EmptyIdentifier { line: line_no });
            }
            current = Some(Pending {
                id: id.to_string(),
                description: desc,
                line: line_no,
                residues: Vec::new(),
            });
            continue;
        }

        for (col, &b) in line.iter().enumerate() {
            if b.is_ascii_whitespace() {
                continue;
            }
            let Some(rec) = current.as_mut() else {
                return Err(Error::MissingHeader { line: line_no });
            };
            let illegal = || Error::IllegalCharacter {
                ch: b as char,
                line: line_no,
                offset: line_start + col,
            };
            let sym = Symbol::from_byte(b).ok_or_else(illegal)?;
            if sym.is_gap() && gaps == GapMode::Reject {
                return Err(illegal());
            }
            rec.residues.push(sym);
        }
    }

    if let Some(p) = current.take() {
        out.push(finish(p, &mut seen)?);
    }
    if out.is_empty() {
        return Err(Error::EmptyInput);
    }
    Ok(out)
}

fn finish(p: Pending, seen: &mut HashSet<String>) -> Result<Sequence> {
    if p.residues.is_empty() {
        return Err(Error::EmptyRecord {
            id: p.id,
            line: p.line,
        });
    }
    if !seen.insert(p.id.clone()) {
        return Err(Error::DuplicateId(p.id));
    }
    Ok(Sequence::new(p.id, p.residues)?.with_description(p.description))
}

pub fn write_fasta(seqs: &[Sequence]) -> String {
    let mut out = String::new();
    for s in seqs {
        out.push('>');
        out.push_str(s.id());
        if let Some(d) = s.description() {
            out.push(' ');
            out.push_str(d);
        }
        out.push('\n');
        for chunk in s.residues().chunks(LINE_WIDTH) {
            out.extend(chunk.iter().map(|r| r.fasta_char()));
            out.push('\n');
        }
    }
    out
}
