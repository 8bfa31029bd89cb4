//! Independent oracles and generators shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use progalign::pairwise::ScoringScheme;
use progalign::seq::{strip_gaps, Msa, Sequence, Symbol};
use rand::Rng;

/// Best global alignment score by exhaustive recursion over every monotone
/// alignment.
pub fn brute_force_score(a: &[Symbol], b: &[Symbol], s: &ScoringScheme) -> i32 {
    match (a.split_first(), b.split_first()) {
        (None, None) => 0,
        (Some((_, ra)), None) => s.gap_penalty + brute_force_score(ra, b, s),
        (None, Some((_, rb))) => s.gap_penalty + brute_force_score(a, rb, s),
        (Some((&x, ra)), Some((&y, rb))) => {
            let sub = if x == y { s.match_score } else { s.mismatch_score };
            let diag = sub + brute_force_score(ra, rb, s);
            let up = s.gap_penalty + brute_force_score(ra, b, s);
            let left = s.gap_penalty + brute_force_score(a, rb, s);
            diag.max(up).max(left)
        }
    }
}

/// Sum-of-pairs cost by enumerating every row pair and column.
pub fn brute_force_sp_cost(rows: &[Vec<Symbol>], mismatch: f64, gap_letter: f64) -> f64 {
    let mut total = 0.0;
    for i in 0..rows.len() {
        for j in i + 1..rows.len() {
            for (x, y) in rows[i].iter().zip(&rows[j]) {
                total += match (x.is_gap(), y.is_gap()) {
                    (true, true) => 0.0,
                    (true, false) | (false, true) => gap_letter,
                    _ if x == y => 0.0,
                    _ => mismatch,
                };
            }
        }
    }
    total
}

pub fn brute_force_sp_score(rows: &[Vec<Symbol>], s: &ScoringScheme) -> i64 {
    let mut total = 0i64;
    for i in 0..rows.len() {
        for j in i + 1..rows.len() {
            for (x, y) in rows[i].iter().zip(&rows[j]) {
                total += match (x.is_gap(), y.is_gap()) {
                    (true, true) => 0,
                    (true, false) | (false, true) => s.gap_penalty as i64,
                    _ if x == y => s.match_score as i64,
                    _ => s.mismatch_score as i64,
                };
            }
        }
    }
    total
}

pub fn random_bases<R: Rng>(rng: &mut R, len: usize) -> Vec<Symbol> {
    (0..len).map(|_| Symbol::BASES[rng.gen_range(0..4)]).collect()
}

pub fn random_sequences<R: Rng>(rng: &mut R, n: usize, min: usize, max: usize) -> Vec<Sequence> {
    (0..n)
        .map(|i| {
            let len = rng.gen_range(min..=max);
            Sequence::new(format!("s{i}"), random_bases(rng, len)).unwrap()
        })
        .collect()
}

/// Every structural property a finished alignment must have.
pub fn check_msa(msa: &Msa, raw: &[Sequence]) -> Result<(), String> {
    let width = msa.width();
    if msa.rows().iter().any(|r| r.len() != width) {
        return Err("ragged rows".into());
    }
    for c in 0..width {
        if msa.rows().iter().all(|r| r.residues()[c].is_gap()) {
            return Err(format!("all-gap column {c}"));
        }
    }
    if msa.depth() != raw.len() {
        return Err(format!("{} rows for {} inputs", msa.depth(), raw.len()));
    }
    for (row, input) in msa.rows().iter().zip(raw) {
        let stripped = strip_gaps(row).map_err(|e| e.to_string())?;
        if stripped.id() != input.id() || stripped.residues() != input.residues() {
            return Err(format!("row {} does not degap to its input", row.id()));
        }
    }
    Ok(())
}

/// Pairwise leaf distances of a tree given as parent pointers and edge
/// lengths (`parent[root] == None`).
pub fn tree_distances(parent: &[Option<usize>], length: &[f64], n_leaves: usize) -> Vec<Vec<f64>> {
    let ancestors = |mut x: usize| {
        let mut out = vec![(x, 0.0)];
        let mut acc = 0.0;
        while let Some(p) = parent[x] {
            acc += length[x];
            x = p;
            out.push((x, acc));
        }
        out
    };
    let mut d = vec![vec![0.0; n_leaves]; n_leaves];
    for i in 0..n_leaves {
        let ai = ancestors(i);
        for j in i + 1..n_leaves {
            let aj = ancestors(j);
            let v = ai
                .iter()
                .find_map(|&(node, di)| aj.iter().find(|&&(m, _)| m == node).map(|&(_, dj)| di + dj))
                .unwrap();
            d[i][j] = v;
            d[j][i] = v;
        }
    }
    d
}

/// Random clock tree: leaves at height 0, each join strictly above both
/// children. Returns the leaf distance matrix.
pub fn random_ultrametric<R: Rng>(rng: &mut R, n: usize) -> Vec<Vec<f64>> {
    let mut parent = vec![None; 2 * n - 1];
    let mut height = vec![0.0; 2 * n - 1];
    let mut length = vec![0.0; 2 * n - 1];
    let mut pool: Vec<usize> = (0..n).collect();
    let mut current = 0.0;
    for k in n..2 * n - 1 {
        let a = pool.swap_remove(rng.gen_range(0..pool.len()));
        let b = pool.swap_remove(rng.gen_range(0..pool.len()));
        current += rng.gen_range(0.05..1.0);
        height[k] = current;
        for c in [a, b] {
            parent[c] = Some(k);
            length[c] = current - height[c];
        }
        pool.push(k);
    }
    tree_distances(&parent, &length, n)
}

/// Random binary tree with positive edge lengths; its leaf distances form an
/// additive (tree-metric) matrix.
pub fn random_additive<R: Rng>(rng: &mut R, n: usize) -> Vec<Vec<f64>> {
    let mut parent = vec![None; 2 * n - 1];
    let mut length = vec![0.0; 2 * n - 1];
    let mut pool: Vec<usize> = (0..n).collect();
    for k in n..2 * n - 1 {
        let a = pool.swap_remove(rng.gen_range(0..pool.len()));
        let b = pool.swap_remove(rng.gen_range(0..pool.len()));
        for c in [a, b] {
            parent[c] = Some(k);
            length[c] = rng.gen_range(0.1..2.0);
        }
        pool.push(k);
    }
    tree_distances(&parent, &length, n)
}

/// Four-point condition: for every quartet, the two largest of the three
/// pair sums are equal.
pub fn is_additive(d: &[Vec<f64>], tol: f64) -> bool {
    let n = d.len();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                for l in k + 1..n {
                    let mut s = [d[i][j] + d[k][l], d[i][k] + d[j][l], d[i][l] + d[j][k]];
                    s.sort_by(f64::total_cmp);
                    if (s[2] - s[1]).abs() > tol {
                        return false;
                    }
                }
            }
        }
    }
    true
}

pub fn upper_triangle(d: &[Vec<f64>]) -> Vec<f64> {
    let n = d.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            out.push(d[i][j]);
        }
    }
    out
}

/// Minimal Newick reader: labels, branch lengths and nesting, unquoted
/// labels only.
#[derive(Debug, Clone, PartialEq)]
pub enum Newick {
    Leaf(String, Option<f64>),
    Inner(Vec<Newick>, Option<f64>),
}

impl Newick {
    pub fn parse(text: &str) -> Result<Newick, String> {
        let text = text.trim();
        let body = text.strip_suffix(';').ok_or("missing ';'")?;
        let chars: Vec<char> = body.chars().collect();
        let mut pos = 0;
        let tree = parse_node(&chars, &mut pos)?;
        if pos != chars.len() {
            return Err(format!("trailing input at {pos}"));
        }
        Ok(tree)
    }

    pub fn leaves(&self) -> Vec<String> {
        match self {
            Newick::Leaf(name, _) => vec![name.clone()],
            Newick::Inner(kids, _) => kids.iter().flat_map(Newick::leaves).collect(),
        }
    }

    pub fn length(&self) -> Option<f64> {
        match self {
            Newick::Leaf(_, l) | Newick::Inner(_, l) => *l,
        }
    }

    /// Leaf sets below every internal node (excluding the root).
    pub fn clades(&self) -> BTreeSet<BTreeSet<String>> {
        let mut out = BTreeSet::new();
        if let Newick::Inner(kids, _) = self {
            for k in kids {
                k.collect_clades(&mut out);
            }
        }
        out
    }

    fn collect_clades(&self, out: &mut BTreeSet<BTreeSet<String>>) {
        if let Newick::Inner(kids, _) = self {
            out.insert(self.leaves().into_iter().collect());
            for k in kids {
                k.collect_clades(out);
            }
        }
    }

    /// Flattens to parent pointers: returns (labels, parent, edge length),
    /// with leaves labelled and internal nodes `None`.
    pub fn flatten(&self) -> (Vec<Option<String>>, Vec<Option<usize>>, Vec<f64>) {
        fn go(
            node: &Newick,
            up: Option<usize>,
            labels: &mut Vec<Option<String>>,
            parent: &mut Vec<Option<usize>>,
            length: &mut Vec<f64>,
        ) {
            let me = labels.len();
            parent.push(up);
            length.push(node.length().unwrap_or(0.0));
            match node {
                Newick::Leaf(name, _) => labels.push(Some(name.clone())),
                Newick::Inner(kids, _) => {
                    labels.push(None);
                    for k in kids {
                        go(k, Some(me), labels, parent, length);
                    }
                }
            }
        }
        let (mut l, mut p, mut len) = (Vec::new(), Vec::new(), Vec::new());
        go(self, None, &mut l, &mut p, &mut len);
        (l, p, len)
    }

    /// Sum of edge lengths on the path between two named leaves.
    pub fn path_length(&self, a: &str, b: &str) -> f64 {
        let (labels, parent, length) = self.flatten();
        let find = |name: &str| labels.iter().position(|l| l.as_deref() == Some(name)).unwrap();
        let ancestors = |mut x: usize| {
            let mut out = vec![(x, 0.0)];
            let mut acc = 0.0;
            while let Some(p) = parent[x] {
                acc += length[x];
                x = p;
                out.push((x, acc));
            }
            out
        };
        let (aa, ab) = (ancestors(find(a)), ancestors(find(b)));
        aa.iter()
            .find_map(|&(node, da)| ab.iter().find(|&&(m, _)| m == node).map(|&(_, db)| da + db))
            .unwrap()
    }
}

fn parse_node(c: &[char], pos: &mut usize) -> Result<Newick, String> {
    if c.get(*pos) == Some(&'(') {
        *pos += 1;
        let mut kids = vec![parse_node(c, pos)?];
        while c.get(*pos) == Some(&',') {
            *pos += 1;
            kids.push(parse_node(c, pos)?);
        }
        if c.get(*pos) != Some(&')') {
            return Err(format!("expected ')' at {pos}", pos = *pos));
        }
        *pos += 1;
        let len = parse_length(c, pos)?;
        Ok(Newick::Inner(kids, len))
    } else {
        let start = *pos;
        while *pos < c.len() && !"(),:;".contains(c[*pos]) {
            *pos += 1;
        }
        if start == *pos {
            return Err(format!("empty label at {start}"));
        }
        let name: String = c[start..*pos].iter().collect();
        let len = parse_length(c, pos)?;
        Ok(Newick::Leaf(name, len))
    }
}

fn parse_length(c: &[char], pos: &mut usize) -> Result<Option<f64>, String> {
    if c.get(*pos) != Some(&':') {
        return Ok(None);
    }
    *pos += 1;
    let start = *pos;
    while *pos < c.len() && !"(),;".contains(c[*pos]) {
        *pos += 1;
    }
    let s: String = c[start..*pos].iter().collect();
    s.parse().map(Some).map_err(|e| format!("bad length {s:?}: {e}"))
}

/// Seven short benchmark inputs. The fourth is written
/// with a gap glyph and is read as a pre-aligned row.
pub const SHORT_INPUTS: [&str; 7] = [
    "ACGTACT",
    "ACTACG",
    "ATGGATACTAACTCGG",
    "ATGGCTA_GT",
    "ATGCTCCGGCAAAGG",
    "ATGCTGG",
    "ATCGACAGTGTC",
];

pub fn short_sequences() -> Vec<Sequence> {
    SHORT_INPUTS
        .iter()
        .enumerate()
        .map(|(i, t)| strip_gaps(&Sequence::gapped(format!("seq{}", i + 1), t).unwrap()).unwrap())
        .collect()
}
