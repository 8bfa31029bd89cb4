use crate::distance::DistanceMatrix;
use crate::error::{Error, Result};

/// Working distances for agglomerative builders.
///
/// Leaves occupy slots `0..n`; each join writes its new cluster into the next
/// free slot, so slot numbers double as tree node ids. Joined clusters are
/// masked out rather than removed.
#[derive(Debug, Clone)]
pub(crate) struct ClusterTable {
    cap: usize,
    d: Vec<f64>,
    live: Vec<bool>,
    size: Vec<usize>,
    next: usize,
}

impl ClusterTable {
    pub fn new(m: &DistanceMatrix) -> Result<ClusterTable> {
        let n = m.len();
        if n < 2 {
            return Err(Error::TooFewSequences { need: 2, got: n });
        }
        let cap = 2 * n - 1;
        let mut d = vec![0.0; cap * cap];
        for i in 0..n {
            for j in 0..n {
                let v = m.get(i, j);
                if !v.is_finite() {
                    return Err(Error::InvalidMatrix(format!("non-finite distance at ({i}, {j})")));
                }
                d[i * cap + j] = v;
            }
        }
        let mut live = vec![false; cap];
        live[..n].fill(true);
        let mut size = vec![0; cap];
        size[..n].fill(1);
        Ok(ClusterTable {
            cap,
            d,
            live,
            size,
            next: n,
        })
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.d[i * self.cap + j]
    }

    #[inline]
    fn set(&mut self, i: usize, j: usize, v: f64) {
        self.d[i * self.cap + j] = v;
        self.d[j * self.cap + i] = v;
    }

    pub fn size(&self, i: usize) -> usize {
        self.size[i]
    }

    pub fn live(&self) -> Vec<usize> {
        (0..self.next).filter(|&i| self.live[i]).collect()
    }

    pub fn live_count(&self) -> usize {
        self.live[..self.next].iter().filter(|&&l| l).count()
    }

    /// Retires `i` and `j`, allocates the merged slot and fills its distances
    /// with `dist(l)` for every other live cluster `l`.
    pub fn merge(&mut self, i: usize, j: usize, dist: impl Fn(&Self, usize) -> f64) -> usize {
        let k = self.next;
        self.next += 1;
        let others: Vec<usize> = self.live().into_iter().filter(|&l| l != i && l != j).collect();
        let values: Vec<f64> = others.iter().map(|&l| dist(self, l)).collect();
        self.live[i] = false;
        self.live[j] = false;
        self.live[k] = true;
        self.size[k] = self.size[i] + self.size[j];
        for (&l, v) in others.iter().zip(values) {
            self.set(k, l, v);
        }
        k
    }
}
