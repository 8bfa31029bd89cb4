use super::table::ClusterTable;
use super::{BuildStats, GuideTree, MergeStep, TreeKind};
use crate::distance::DistanceMatrix;
use crate::error::Result;

/// Average-linkage clustering into a rooted ultrametric tree.
///
/// Node height is half the joining distance; a child's branch is the height
/// difference to its parent. Ties on the minimum go to the smallest `(i, j)`.
pub fn upgma_build(m: &DistanceMatrix) -> Result<GuideTree> {
    let n = m.len();
    let mut table = ClusterTable::new(m)?;
    let mut heights = vec![0.0; 2 * n - 1];
    let mut log = Vec::with_capacity(n - 1);
    let mut stats = BuildStats::default();

    while table.live_count() > 1 {
        let live = table.live();
        let mut best: Option<(usize, usize, f64)> = None;
        for (a, &i) in live.iter().enumerate() {
            for &j in &live[a + 1..] {
                stats.pair_evaluations += 1;
                let d = table.get(i, j);
                if best.is_none_or(|(_, _, b)| d < b) {
                    best = Some((i, j, d));
                }
            }
        }
        let (i, j, dij) = best.expect("at least two live clusters");
        stats.iterations += 1;

        let (si, sj) = (table.size(i) as f64, table.size(j) as f64);
        let k = table.merge(i, j, |t, l| (si * t.get(i, l) + sj * t.get(j, l)) / (si + sj));
        let h = dij / 2.0;
        heights[k] = h;
        log.push(MergeStep {
            left: i,
            right: j,
            node: k,
            left_length: h - heights[i],
            right_length: h - heights[j],
            criterion: Some(dij),
        });
    }

    GuideTree::from_merge_log(m.taxa().to_vec(), log, TreeKind::Rooted, stats)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_taxa() {
        let m = DistanceMatrix::from_upper(vec!["a", "b", "c"], &[2.0, 4.0, 4.0]).unwrap();
        let t = upgma_build(&m).unwrap();
        let log = t.merge_log();
        assert_eq!((log[0].left, log[0].right), (0, 1));
        assert_eq!(log[0].criterion, Some(2.0));
        // d(ab, c) = (1*4 + 1*4) / 2 = 4, so the root sits at height 2.
        assert_eq!(log[1].criterion, Some(4.0));
        assert_eq!(t.branch_length(0), Some(1.0));
        assert_eq!(t.branch_length(1), Some(1.0));
        assert_eq!(t.branch_length(2), Some(2.0));
        assert_eq!(t.branch_length(3), Some(1.0));
        assert_eq!(t.stats().iterations, 2);
        assert_eq!(t.stats().pair_evaluations, 3 + 1);
    }

    #[test]
    fn size_weighted_update() {
        // After (a,b) join, d(ab,c) = (3 + 5)/2 = 4 and d(ab,d) = (9 + 9)/2 = 9.
        // Then (ab,c) joins at 4, and d(abc,d) = (2*9 + 1*7)/3 = 25/3.
        let m = DistanceMatrix::from_upper(
            vec!["a", "b", "c", "d"],
            &[1.0, 3.0, 9.0, 5.0, 9.0, 7.0],
        )
        .unwrap();
        let t = upgma_build(&m).unwrap();
        let crit: Vec<f64> = t.merge_log().iter().map(|s| s.criterion.unwrap()).collect();
        assert_eq!(crit[0], 1.0);
        assert_eq!(crit[1], 4.0);
        assert!((crit[2] - 25.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn two_taxa() {
        let m = DistanceMatrix::from_upper(vec!["a", "b"], &[5.0]).unwrap();
        let t = upgma_build(&m).unwrap();
        assert_eq!(t.branch_length(0), Some(2.5));
        assert_eq!(t.branch_length(1), Some(2.5));
        assert_eq!(t.to_newick(false), "(a:2.500000,b:2.500000);");
    }

    #[test]
    fn ties_go_to_smallest_pair() {
        let m = DistanceMatrix::from_upper(vec!["a", "b", "c"], &[1.0, 1.0, 1.0]).unwrap();
        let t = upgma_build(&m).unwrap();
        assert_eq!((t.merge_log()[0].left, t.merge_log()[0].right), (0, 1));
    }
}
