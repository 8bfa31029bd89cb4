//! Jukes-Cantor distances between globally aligned pairs.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::pairwise::{align_global, PairwiseAlignment, ScoringScheme};
use crate::seq::Sequence;

/// Distance reported when the mismatch fraction reaches 3/4.
pub const DEFAULT_D_MAX: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MatchStats {
    pub matches: usize,
    pub mismatches: usize,
    /// Columns where neither row has a gap.
    pub comparable_columns: usize,
}

impl MatchStats {
    pub fn mismatch_fraction(&self) -> f64 {
        self.mismatches as f64 / self.comparable_columns as f64
    }
}

pub fn column_stats(al: &PairwiseAlignment) -> Result<MatchStats> {
    let mut matches = 0;
    let mut mismatches = 0;
    for (x, y) in al.row_a.iter().zip(&al.row_b) {
        if x.is_gap() || y.is_gap() {
            continue;
        }
        if x == y {
            matches += 1;
        } else {
            mismatches += 1;
        }
    }
    if matches + mismatches == 0 {
        return Err(Error::NoComparableColumns);
    }
    Ok(MatchStats {
        matches,
        mismatches,
        comparable_columns: matches + mismatches,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JcDistance {
    pub value: f64,
    /// Set when the closed form was undefined and `value` is the cap.
    pub saturated: bool,
}

/// `-3/4 ln(1 - 4/3 p)` for a mismatch fraction `p`, capped at `d_max` once
/// `p >= 3/4`.
pub fn jukes_cantor_p(p: f64, d_max: f64) -> JcDistance {
    if p >= 0.75 {
        return JcDistance {
            value: d_max,
            saturated: true,
        };
    }
    let value = -0.75 * (1.0 - 4.0 / 3.0 * p).ln();
    if value > d_max {
        JcDistance {
            value: d_max,
            saturated: true,
        }
    } else {
        JcDistance {
            value,
            saturated: false,
        }
    }
}

pub fn jukes_cantor(stats: &MatchStats, d_max: f64) -> Result<JcDistance> {
    if stats.comparable_columns == 0 {
        return Err(Error::NoComparableColumns);
    }
    // Exact integer test for p >= 3/4.
    if 4 * stats.mismatches >= 3 * stats.comparable_columns {
        return Ok(JcDistance {
            value: d_max,
            saturated: true,
        });
    }
    Ok(jukes_cantor_p(stats.mismatch_fraction(), d_max))
}

/// Symmetric, zero-diagonal matrix of finite nonnegative distances.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    taxa: Vec<String>,
    values: Vec<f64>,
}

impl DistanceMatrix {
    /// `values` is row-major `n x n`.
    pub fn new(taxa: Vec<String>, values: Vec<f64>) -> Result<DistanceMatrix> {
        let n = taxa.len();
        if values.len() != n * n {
            return Err(Error::InvalidMatrix(format!(
                "{} values for {n} taxa",
                values.len()
            )));
        }
        for i in 0..n {
            if values[i * n + i] != 0.0 {
                return Err(Error::InvalidMatrix(format!("nonzero diagonal at {}", taxa[i])));
            }
            for j in 0..n {
                let v = values[i * n + j];
                if !v.is_finite() || v < 0.0 {
                    return Err(Error::InvalidMatrix(format!(
                        "d({}, {}) = {v} is not a finite nonnegative value",
                        taxa[i], taxa[j]
                    )));
                }
                if v != values[j * n + i] {
                    return Err(Error::InvalidMatrix(format!(
                        "asymmetric entry between {} and {}",
                        taxa[i], taxa[j]
                    )));
                }
            }
        }
        Ok(DistanceMatrix { taxa, values })
    }

    /// Builds from the strict upper triangle, row by row:
    /// `d(0,1), d(0,2), ..., d(1,2), ...`.
    pub fn from_upper<S: Into<String>>(taxa: Vec<S>, upper: &[f64]) -> Result<DistanceMatrix> {
        let taxa: Vec<String> = taxa.into_iter().map(Into::into).collect();
        let n = taxa.len();
        if upper.len() != n * n.saturating_sub(1) / 2 {
            return Err(Error::InvalidMatrix(format!(
                "{} upper-triangle values for {n} taxa",
                upper.len()
            )));
        }
        let mut values = vec![0.0; n * n];
        let mut it = upper.iter();
        for i in 0..n {
            for j in i + 1..n {
                let v = *it.next().unwrap();
                values[i * n + j] = v;
                values[j * n + i] = v;
            }
        }
        DistanceMatrix::new(taxa, values)
    }

    pub fn len(&self) -> usize {
        self.taxa.len()
    }

    pub fn is_empty(&self) -> bool {
        self.taxa.is_empty()
    }

    pub fn taxa(&self) -> &[String] {
        &self.taxa
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.taxa.len() + j]
    }

    /// Header row of taxa ids, then one row per taxon, six decimals.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("taxon");
        for t in &self.taxa {
            out.push(',');
            out.push_str(t);
        }
        out.push('\n');
        for (i, t) in self.taxa.iter().enumerate() {
            out.push_str(t);
            for j in 0..self.taxa.len() {
                let _ = write!(out, ",{:.6}", self.get(i, j));
            }
            out.push('\n');
        }
        out
    }
}

#[derive(Debug, Clone)]
pub struct DistanceReport {
    pub matrix: DistanceMatrix,
    /// Number of pairwise alignments run; always `n(n-1)/2`.
    pub alignments: usize,
    /// Index pairs whose distance hit the saturation cap.
    pub saturated: Vec<(usize, usize)>,
}

/// Aligns every unordered pair and converts it to a Jukes-Cantor distance.
pub fn pairwise_distance_matrix(
    seqs: &[Sequence],
    s: &ScoringScheme,
    d_max: f64,
) -> Result<DistanceReport> {
    let n = seqs.len();
    if n < 2 {
        return Err(Error::TooFewSequences { need: 2, got: n });
    }
    for (i, a) in seqs.iter().enumerate() {
        if a.has_gaps() {
            return Err(Error::UnexpectedGap(a.id().to_string()));
        }
        if seqs[..i].iter().any(|b| b.id() == a.id()) {
            return Err(Error::DuplicateId(a.id().to_string()));
        }
    }

    let mut values = vec![0.0; n * n];
    let mut alignments = 0;
    let mut saturated = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let pair = |e: Error| Error::Pair {
                a: seqs[i].id().to_string(),
                b: seqs[j].id().to_string(),
                source: Box::new(e),
            };
            let al = align_global(seqs[i].residues(), seqs[j].residues(), s).map_err(pair)?;
            alignments += 1;
            let d = column_stats(&al)
                .and_then(|st| jukes_cantor(&st, d_max))
                .map_err(pair)?;
            if d.saturated {
                saturated.push((i, j));
            }
            values[i * n + j] = d.value;
            values[j * n + i] = d.value;
        }
    }
    let taxa = seqs.iter().map(|s| s.id().to_string()).collect();
    Ok(DistanceReport {
        matrix: DistanceMatrix::new(taxa, values)?,
        alignments,
        saturated,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seq::symbols;

    fn al(a: &str, b: &str) -> PairwiseAlignment {
        PairwiseAlignment {
            row_a: symbols(a).unwrap(),
            row_b: symbols(b).unwrap(),
            score: 0,
        }
    }

    fn stats(m: usize, x: usize) -> MatchStats {
        MatchStats {
            matches: m,
            mismatches: x,
            comparable_columns: m + x,
        }
    }

    #[test]
    fn column_stats_examples() {
        assert_eq!(column_stats(&al("ACGT", "ACGT")).unwrap(), stats(4, 0));
        assert_eq!(column_stats(&al("A_CT", "AGCT")).unwrap(), stats(3, 0));
        assert_eq!(column_stats(&al("ACGT", "ACGA")).unwrap(), stats(3, 1));
        assert!(matches!(
            column_stats(&al("A_", "_C")),
            Err(Error::NoComparableColumns)
        ));
    }

    #[test]
    fn jukes_cantor_values() {
        let zero = jukes_cantor(&stats(10, 0), DEFAULT_D_MAX).unwrap();
        assert_eq!(zero.value, 0.0);
        assert!(!zero.saturated);
        // Reference values from a 40-digit evaluation of the closed form.
        let quarter = jukes_cantor(&stats(3, 1), DEFAULT_D_MAX).unwrap();
        assert!((quarter.value - 0.304_098_831_081_123_3).abs() < 1e-12);
        let tenth = jukes_cantor(&stats(9, 1), DEFAULT_D_MAX).unwrap();
        assert!((tenth.value - 0.107_325_632_730_505).abs() < 1e-12);
        let sat = jukes_cantor(&stats(1, 4), DEFAULT_D_MAX).unwrap();
        assert_eq!(sat.value, DEFAULT_D_MAX);
        assert!(sat.saturated);
        assert!(jukes_cantor(&stats(1, 3), DEFAULT_D_MAX).unwrap().saturated);
    }

    #[test]
    fn jc_cap_is_configurable() {
        let d = jukes_cantor_p(0.9, 3.5);
        assert_eq!(d.value, 3.5);
        assert!(d.saturated);
        let d = jukes_cantor_p(0.74, 1.0);
        assert_eq!(d.value, 1.0);
        assert!(d.saturated);
    }

    #[test]
    fn matrix_from_sequences() {
        let seqs = vec![
            Sequence::raw("a", "AAAA").unwrap(),
            Sequence::raw("b", "AAAT").unwrap(),
            Sequence::raw("c", "AAAA").unwrap(),
        ];
        let r = pairwise_distance_matrix(&seqs, &ScoringScheme::default(), DEFAULT_D_MAX).unwrap();
        assert_eq!(r.alignments, 3);
        assert_eq!(r.matrix.get(0, 2), 0.0);
        assert!((r.matrix.get(0, 1) - 0.304_098_831_081_123_3).abs() < 1e-12);
        for i in 0..3 {
            assert_eq!(r.matrix.get(i, i), 0.0);
            for j in 0..3 {
                assert_eq!(r.matrix.get(i, j), r.matrix.get(j, i));
            }
        }
    }

    #[test]
    fn pair_errors_name_the_pair() {
        // With a harsh mismatch, A vs C aligns as two gap columns.
        let seqs = vec![Sequence::raw("x", "A").unwrap(), Sequence::raw("y", "C").unwrap()];
        let s = ScoringScheme::new(3, -5, -1);
        match pairwise_distance_matrix(&seqs, &s, DEFAULT_D_MAX) {
            Err(Error::Pair { a, b, .. }) => assert_eq!((a.as_str(), b.as_str()), ("x", "y")),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn matrix_validation() {
        assert!(DistanceMatrix::from_upper(vec!["a", "b"], &[f64::NAN]).is_err());
        assert!(DistanceMatrix::from_upper(vec!["a", "b"], &[-1.0]).is_err());
        assert!(DistanceMatrix::new(vec!["a".into(), "b".into()], vec![0.0, 1.0, 2.0, 0.0]).is_err());
        let m = DistanceMatrix::from_upper(vec!["a", "b"], &[0.5]).unwrap();
        assert_eq!(m.to_csv(), "taxon,a,b\na,0.000000,0.500000\nb,0.500000,0.000000\n");
    }
}
