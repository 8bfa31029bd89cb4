//! Guide trees built from a distance matrix.
//!
//! Both builders are agglomerative and share one node numbering: leaves are
//! `0..n` in matrix order and every join creates the next node id. A tree is
//! fully described by its taxa and its merge log; [`GuideTree::from_merge_log`]
//! rebuilds the node structure from those.

mod nj;
mod table;
mod upgma;

use std::fmt::Write as _;

pub use nj::{nj_build, nj_rates, NjWorkspace};
pub use upgma::upgma_build;

use crate::distance::DistanceMatrix;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GuideMethod {
    Upgma,
    NeighborJoining,
}

impl GuideMethod {
    pub fn build(self, m: &DistanceMatrix) -> Result<GuideTree> {
        match self {
            GuideMethod::Upgma => upgma_build(m),
            GuideMethod::NeighborJoining => nj_build(m),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            GuideMethod::Upgma => "upgma",
            GuideMethod::NeighborJoining => "nj",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TreeKind {
    /// UPGMA: a true root at the last join.
    Rooted,
    /// Neighbor-joining: unrooted, rooted at the midpoint of the closing edge
    /// for traversal and output.
    MidpointRooted,
}

/// One agglomeration: clusters `left` and `right` become node `node`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MergeStep {
    pub left: usize,
    pub right: usize,
    pub node: usize,
    pub left_length: f64,
    pub right_length: f64,
    /// Selected minimum (UPGMA distance, NJ criterion). `None` for the NJ
    /// closing edge, which is not a selection.
    pub criterion: Option<f64>,
}

/// Work counters gathered while building.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BuildStats {
    pub iterations: usize,
    pub pair_evaluations: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Node {
    pub children: Option<(usize, usize)>,
    pub parent: Option<usize>,
    /// Length of the edge to the parent; `None` at the root.
    pub branch_length: Option<f64>,
}

/// Binary tree over a set of taxa with branch lengths and merge order.
#[derive(Debug, Clone, PartialEq)]
pub struct GuideTree {
    taxa: Vec<String>,
    nodes: Vec<Node>,
    merge_log: Vec<MergeStep>,
    kind: TreeKind,
    stats: BuildStats,
}

impl GuideTree {
    /// Replays a merge log. Every node must be consumed exactly once and the
    /// log must end with a single cluster.
    pub fn from_merge_log(
        taxa: Vec<String>,
        merge_log: Vec<MergeStep>,
        kind: TreeKind,
        stats: BuildStats,
    ) -> Result<GuideTree> {
        let n = taxa.len();
        if n < 2 {
            return Err(Error::TooFewSequences { need: 2, got: n });
        }
        if merge_log.len() != n - 1 {
            return Err(Error::InvalidMatrix(format!(
                "merge log has {} joins for {n} taxa",
                merge_log.len()
            )));
        }
        let mut nodes = vec![
            Node {
                children: None,
                parent: None,
                branch_length: None,
            };
            n
        ];
        for (step_no, step) in merge_log.iter().enumerate() {
            let bad = |why: &str| Error::InvalidMatrix(format!("merge step {step_no}: {why}"));
            if step.node != nodes.len() {
                return Err(bad("node ids must be allocated in order"));
            }
            for child in [step.left, step.right] {
                match nodes.get(child) {
                    None => return Err(bad("unknown operand")),
                    Some(c) if c.parent.is_some() => return Err(bad("operand already joined")),
                    _ => {}
                }
            }
            if step.left == step.right {
                return Err(bad("operand joined with itself"));
            }
            nodes[step.left].parent = Some(step.node);
            nodes[step.left].branch_length = Some(step.left_length);
            nodes[step.right].parent = Some(step.node);
            nodes[step.right].branch_length = Some(step.right_length);
            nodes.push(Node {
                children: Some((step.left, step.right)),
                parent: None,
                branch_length: None,
            });
        }
        Ok(GuideTree {
            taxa,
            nodes,
            merge_log,
            kind,
            stats,
        })
    }

    pub fn taxa(&self) -> &[String] {
        &self.taxa
    }

    pub fn n_leaves(&self) -> usize {
        self.taxa.len()
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn root(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn merge_log(&self) -> &[MergeStep] {
        &self.merge_log
    }

    pub fn kind(&self) -> TreeKind {
        self.kind
    }

    pub fn stats(&self) -> BuildStats {
        self.stats
    }

    pub fn is_leaf(&self, node: usize) -> bool {
        node < self.taxa.len()
    }

    pub fn branch_length(&self, node: usize) -> Option<f64> {
        self.nodes[node].branch_length
    }

    /// For midpoint-rooted trees, the full length of the edge the root splits.
    pub fn closing_edge(&self) -> Option<f64> {
        match self.kind {
            TreeKind::Rooted => None,
            TreeKind::MidpointRooted => {
                let last = self.merge_log.last()?;
                Some(last.left_length + last.right_length)
            }
        }
    }

    /// Leaf indices below `node`, left subtree first.
    pub fn members(&self, node: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![node];
        while let Some(x) = stack.pop() {
            match self.nodes[x].children {
                None => out.push(x),
                Some((l, r)) => {
                    stack.push(r);
                    stack.push(l);
                }
            }
        }
        out
    }

    /// Sum of branch lengths from `node` up to the root.
    pub fn depth(&self, node: usize) -> f64 {
        let mut d = 0.0;
        let mut x = node;
        while let Some(p) = self.nodes[x].parent {
            d += self.nodes[x].branch_length.unwrap_or(0.0);
            x = p;
        }
        d
    }

    /// Path length between two leaves through their lowest common ancestor.
    pub fn path_length(&self, a: usize, b: usize) -> f64 {
        let mut up_a = Vec::new();
        let mut acc = 0.0;
        let mut x = a;
        up_a.push((x, 0.0));
        while let Some(p) = self.nodes[x].parent {
            acc += self.nodes[x].branch_length.unwrap_or(0.0);
            x = p;
            up_a.push((x, acc));
        }
        let mut acc_b = 0.0;
        let mut y = b;
        loop {
            if let Some(&(_, da)) = up_a.iter().find(|(n, _)| *n == y) {
                return da + acc_b;
            }
            match self.nodes[y].parent {
                Some(p) => {
                    acc_b += self.nodes[y].branch_length.unwrap_or(0.0);
                    y = p;
                }
                None => unreachable!("leaves share the root"),
            }
        }
    }

    /// Taxa in order of first appearance as a direct operand in the merge
    /// log, so the first join's members lead.
    pub fn leaf_order(&self) -> Vec<&str> {
        let mut out = Vec::with_capacity(self.taxa.len());
        for step in &self.merge_log {
            for x in [step.left, step.right] {
                if self.is_leaf(x) {
                    out.push(self.taxa[x].as_str());
                }
            }
        }
        out
    }

    /// Newick text with six-decimal branch lengths, children in merge order.
    /// With `clamp_negative`, negative lengths print as zero.
    pub fn to_newick(&self, clamp_negative: bool) -> String {
        let mut out = String::new();
        self.write_node(self.root(), clamp_negative, &mut out);
        out.push(';');
        out
    }

    fn write_node(&self, node: usize, clamp: bool, out: &mut String) {
        match self.nodes[node].children {
            None => out.push_str(&newick_label(&self.taxa[node])),
            Some((l, r)) => {
                out.push('(');
                self.write_node(l, clamp, out);
                out.push(',');
                self.write_node(r, clamp, out);
                out.push(')');
            }
        }
        if let Some(len) = self.nodes[node].branch_length {
            let len = if clamp && len < 0.0 { 0.0 } else { len };
            let _ = write!(out, ":{len:.6}");
        }
    }

    fn node_label(&self, node: usize) -> String {
        if self.is_leaf(node) {
            self.taxa[node].clone()
        } else {
            format!("node{node}")
        }
    }

    /// `iteration,left,right,criterion` rows; the NJ closing edge has an
    /// empty criterion.
    pub fn merge_log_csv(&self) -> String {
        let mut out = String::from("iteration,left,right,criterion\n");
        for (i, step) in self.merge_log.iter().enumerate() {
            let crit = step.criterion.map(|c| format!("{c:.6}")).unwrap_or_default();
            let _ = writeln!(
                out,
                "{},{},{},{}",
                i + 1,
                self.node_label(step.left),
                self.node_label(step.right),
                crit
            );
        }
        out
    }
}

fn newick_label(name: &str) -> String {
    if name.chars().any(|c| "()[]':;,".contains(c) || c.is_whitespace()) {
        format!("'{}'", name.replace('\'', "''"))
    } else {
        name.to_string()
    }
}
