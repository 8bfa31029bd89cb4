//! The progressive alignment pipeline: distances, guide tree, then a fold
//! over the tree's merge order.

use std::time::{Duration, Instant};

use crate::distance::{pairwise_distance_matrix, DistanceMatrix, DEFAULT_D_MAX};
use crate::error::{Error, Result, Stage};
use crate::evaluate::{sp_score, sp_total_cost, CostScheme};
use crate::pairwise::ScoringScheme;
use crate::profile::{align_profile_to_profile, align_sequence_to_profile, merge_groups, TieBreakPolicy};
use crate::seq::{Msa, Sequence};
use crate::tree::{GuideMethod, GuideTree};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PipelineConfig {
    pub guide_method: GuideMethod,
    pub scoring: ScoringScheme,
    pub tie: TieBreakPolicy,
    pub d_max: f64,
    pub cost: CostScheme,
}

impl PipelineConfig {
    pub fn new(guide_method: GuideMethod) -> Self {
        PipelineConfig {
            guide_method,
            scoring: ScoringScheme::default(),
            tie: TieBreakPolicy::Lexicographic,
            d_max: DEFAULT_D_MAX,
            cost: CostScheme::default(),
        }
    }
}

/// A join operand: an input sequence or a group built by an earlier join.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Operand {
    Leaf(usize),
    Group(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Join {
    pub left: Operand,
    pub right: Operand,
    /// Id of the group this join produces; groups are numbered from 0 in
    /// schedule order.
    pub output: usize,
}

/// Joins in merge-log order, operands resolved to leaves or earlier groups.
pub fn merge_schedule(t: &GuideTree) -> Vec<Join> {
    let n = t.n_leaves();
    let operand = |node: usize| {
        if node < n {
            Operand::Leaf(node)
        } else {
            Operand::Group(node - n)
        }
    };
    t.merge_log()
        .iter()
        .enumerate()
        .map(|(k, step)| Join {
            left: operand(step.left),
            right: operand(step.right),
            output: k,
        })
        .collect()
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct StageTimings {
    pub distance: Duration,
    pub tree: Duration,
    pub merge: Duration,
    pub total: Duration,
}

impl StageTimings {
    pub fn distance_ms(&self) -> u64 {
        self.distance.as_millis() as u64
    }
    pub fn tree_ms(&self) -> u64 {
        self.tree.as_millis() as u64
    }
    pub fn merge_ms(&self) -> u64 {
        self.merge.as_millis() as u64
    }
    pub fn total_ms(&self) -> u64 {
        self.total.as_millis() as u64
    }
}

#[derive(Debug, Clone)]
pub struct PipelineReport {
    pub distance_matrix: DistanceMatrix,
    /// Pairwise alignments performed by the distance stage.
    pub alignments: usize,
    pub saturated_pairs: Vec<(usize, usize)>,
    pub guide_tree: GuideTree,
    /// Rows in input order.
    pub msa: Msa,
    pub total_cost: f64,
    pub sp_score: i64,
    pub timings: StageTimings,
}

/// Aligns `seqs` progressively. Rows of the result follow input order.
pub fn progressive_align(seqs: &[Sequence], cfg: &PipelineConfig) -> Result<PipelineReport> {
    let start = Instant::now();
    if seqs.len() < 2 {
        return Err(Error::TooFewSequences {
            need: 2,
            got: seqs.len(),
        });
    }

    let t0 = Instant::now();
    let dist = pairwise_distance_matrix(seqs, &cfg.scoring, cfg.d_max).map_err(|e| e.at(Stage::Distance))?;
    let distance_time = t0.elapsed();

    let t1 = Instant::now();
    let tree = cfg
        .guide_method
        .build(&dist.matrix)
        .map_err(|e| e.at(Stage::Tree))?;
    let tree_time = t1.elapsed();

    let t2 = Instant::now();
    let msa = fold_schedule(seqs, &merge_schedule(&tree), cfg).map_err(|e| e.at(Stage::Merge))?;
    let merge_time = t2.elapsed();

    let total_cost = sp_total_cost(&msa, &cfg.cost);
    let score = sp_score(&msa, &cfg.scoring);
    Ok(PipelineReport {
        distance_matrix: dist.matrix,
        alignments: dist.alignments,
        saturated_pairs: dist.saturated,
        guide_tree: tree,
        msa,
        total_cost,
        sp_score: score,
        timings: StageTimings {
            distance: distance_time,
            tree: tree_time,
            merge: merge_time,
            total: start.elapsed(),
        },
    })
}

struct Group {
    msa: Msa,
    members: Vec<usize>,
}

fn fold_schedule(seqs: &[Sequence], schedule: &[Join], cfg: &PipelineConfig) -> Result<Msa> {
    let mut tie = cfg.tie.breaker();
    let mut groups: Vec<Option<Group>> = Vec::with_capacity(schedule.len());

    for join in schedule {
        let merged = match (join.left, join.right) {
            (Operand::Leaf(a), Operand::Leaf(b)) => {
                let (ga, gb) = (Msa::singleton(seqs[a].clone()), Msa::singleton(seqs[b].clone()));
                let (msa, _) = merge_groups(&ga, seqs[a].residues(), &gb, seqs[b].residues(), &cfg.scoring);
                Group {
                    msa,
                    members: vec![a, b],
                }
            }
            (Operand::Group(g), Operand::Leaf(x)) | (Operand::Leaf(x), Operand::Group(g)) => {
                let group = take(&mut groups, g)?;
                let msa = align_sequence_to_profile(&group.msa, &seqs[x], &cfg.scoring, &mut tie)?;
                let mut members = group.members;
                members.push(x);
                Group { msa, members }
            }
            (Operand::Group(g1), Operand::Group(g2)) => {
                let a = take(&mut groups, g1)?;
                let b = take(&mut groups, g2)?;
                let msa = align_profile_to_profile(&a.msa, &b.msa, &cfg.scoring, &mut tie)?;
                let mut members = a.members;
                members.extend(b.members);
                Group { msa, members }
            }
        };
        debug_assert_eq!(join.output, groups.len());
        groups.push(Some(merged));
    }

    let last = groups
        .pop()
        .flatten()
        .ok_or_else(|| Error::InvalidMsa("empty merge schedule".into()))?;
    let width = last.msa.width();
    let mut rows: Vec<Option<Sequence>> = vec![None; seqs.len()];
    for (row, &member) in last.msa.into_rows().into_iter().zip(&last.members) {
        rows[member] = Some(row);
    }
    let rows = rows
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::InvalidMsa("schedule did not place every sequence".into()))?;
    Ok(Msa::from_parts(rows, width))
}

fn take(groups: &mut [Option<Group>], id: usize) -> Result<Group> {
    groups
        .get_mut(id)
        .and_then(Option::take)
        .ok_or_else(|| Error::InvalidMsa(format!("group {id} used before it exists or twice")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distance::DistanceMatrix;
    use crate::pairwise::align_sequences;
    use crate::tree::nj_build;

    fn seqs(texts: &[&str]) -> Vec<Sequence> {
        texts
            .iter()
            .enumerate()
            .map(|(i, t)| Sequence::raw(format!("seq{}", i + 1), t).unwrap())
            .collect()
    }

    #[test]
    fn schedule_for_additive_tree() {
        let m = DistanceMatrix::from_upper(vec!["a", "b", "c", "d"], &[3.0, 9.0, 10.0, 10.0, 11.0, 7.0]).unwrap();
        let sched = merge_schedule(&nj_build(&m).unwrap());
        assert_eq!(
            sched,
            vec![
                Join { left: Operand::Leaf(0), right: Operand::Leaf(1), output: 0 },
                Join { left: Operand::Leaf(2), right: Operand::Leaf(3), output: 1 },
                Join { left: Operand::Group(0), right: Operand::Group(1), output: 2 },
            ]
        );
    }

    #[test]
    fn two_sequences_reduce_to_pairwise() {
        let input = seqs(&["ATGCG", "TGCAT"]);
        for method in [GuideMethod::Upgma, GuideMethod::NeighborJoining] {
            let mut cfg = PipelineConfig::new(method);
            cfg.scoring = ScoringScheme::new(3, 1, -1);
            let r = progressive_align(&input, &cfg).unwrap();
            let (a, b, score) = align_sequences(&input[0], &input[1], &cfg.scoring).unwrap();
            assert_eq!(r.msa.rows(), &[a, b]);
            assert_eq!(r.sp_score, score as i64);
            assert_eq!(merge_schedule(&r.guide_tree).len(), 1);
        }
    }

    #[test]
    fn identical_inputs_stay_gapless() {
        let input = seqs(&["ACGTAC"; 5]);
        let r = progressive_align(&input, &PipelineConfig::new(GuideMethod::NeighborJoining)).unwrap();
        assert_eq!(r.msa.width(), 6);
        assert_eq!(r.total_cost, 0.0);
        assert_eq!(r.alignments, 10);
    }

    #[test]
    fn rows_follow_input_order() {
        let input = seqs(&["TTTTGGGG", "ACGTAC", "ACGTTC", "TTTTGGCG"]);
        let r = progressive_align(&input, &PipelineConfig::new(GuideMethod::Upgma)).unwrap();
        r.msa.verify_round_trip(&input).unwrap();
    }

    #[test]
    fn stage_errors_are_annotated() {
        let input = vec![Sequence::raw("x", "A").unwrap(), Sequence::raw("y", "C").unwrap()];
        let mut cfg = PipelineConfig::new(GuideMethod::Upgma);
        cfg.scoring = ScoringScheme::new(3, -5, -1);
        match progressive_align(&input, &cfg) {
            Err(Error::Stage { stage, .. }) => assert_eq!(stage, Stage::Distance),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            progressive_align(&input[..1], &cfg),
            Err(Error::TooFewSequences { .. })
        ));
    }
}
