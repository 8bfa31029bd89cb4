use super::table::ClusterTable;
use super::{BuildStats, GuideTree, MergeStep, TreeKind};
use crate::distance::DistanceMatrix;
use crate::error::{Error, Result};

/// Neighbor-joining state: the working distances over live clusters.
#[derive(Debug, Clone)]
pub struct NjWorkspace {
    table: ClusterTable,
}

impl NjWorkspace {
    pub fn new(m: &DistanceMatrix) -> Result<NjWorkspace> {
        Ok(NjWorkspace {
            table: ClusterTable::new(m)?,
        })
    }

    /// Live cluster ids in increasing order.
    pub fn live(&self) -> Vec<usize> {
        self.table.live()
    }

    pub fn distance(&self, i: usize, j: usize) -> f64 {
        self.table.get(i, j)
    }

    /// Selection criterion `d(i,j) - u_i - u_j` for every live pair `i < j`,
    /// in lexicographic pair order. `rates` is aligned with [`Self::live`].
    pub fn criteria(&self, rates: &[f64]) -> Vec<(usize, usize, f64)> {
        let live = self.live();
        let mut out = Vec::with_capacity(live.len() * live.len().saturating_sub(1) / 2);
        for a in 0..live.len() {
            for b in a + 1..live.len() {
                let (i, j) = (live[a], live[b]);
                out.push((i, j, self.table.get(i, j) - rates[a] - rates[b]));
            }
        }
        out
    }
}

/// Per-cluster `u_i = sum_{k != i} d(i,k) / (live - 2)`, aligned with
/// [`NjWorkspace::live`].
pub fn nj_rates(ws: &NjWorkspace) -> Result<Vec<f64>> {
    let live = ws.live();
    if live.len() < 3 {
        return Err(Error::TooFewClusters(live.len()));
    }
    let denom = (live.len() - 2) as f64;
    Ok(live
        .iter()
        .map(|&i| live.iter().filter(|&&k| k != i).map(|&k| ws.table.get(i, k)).sum::<f64>() / denom)
        .collect())
}

/// Neighbor-joining down to two clusters, which are then connected by an
/// edge of their remaining distance. The tree is rooted at that edge's
/// midpoint. Branch lengths are kept raw, negative values included.
pub fn nj_build(m: &DistanceMatrix) -> Result<GuideTree> {
    let n = m.len();
    let mut ws = NjWorkspace::new(m)?;
    let mut log = Vec::with_capacity(n - 1);
    let mut stats = BuildStats::default();

    while ws.table.live_count() > 2 {
        let rates = nj_rates(&ws)?;
        let live = ws.live();
        let mut best: Option<(usize, usize, f64)> = None;
        for (i, j, q) in ws.criteria(&rates) {
            stats.pair_evaluations += 1;
            if best.is_none_or(|(_, _, b)| q < b) {
                best = Some((i, j, q));
            }
        }
        let (i, j, q) = best.expect("at least three live clusters");
        stats.iterations += 1;

        let rate = |c: usize| rates[live.iter().position(|&x| x == c).unwrap()];
        let (ui, uj) = (rate(i), rate(j));
        let dij = ws.table.get(i, j);
        let left_length = 0.5 * (dij + ui - uj);
        let right_length = 0.5 * (dij + uj - ui);
        let k = ws
            .table
            .merge(i, j, |t, l| (t.get(i, l) + t.get(j, l) - dij) / 2.0);
        log.push(MergeStep {
            left: i,
            right: j,
            node: k,
            left_length,
            right_length,
            criterion: Some(q),
        });
    }

    let last = ws.live();
    let (i, j) = (last[0], last[1]);
    let half = ws.table.get(i, j) / 2.0;
    let k = ws.table.merge(i, j, |_, _| unreachable!("no clusters remain"));
    log.push(MergeStep {
        left: i,
        right: j,
        node: k,
        left_length: half,
        right_length: half,
        criterion: None,
    });

    GuideTree::from_merge_log(m.taxa().to_vec(), log, TreeKind::MidpointRooted, stats)
}
