//! Plug-in (frequency) entropies and normalized mutual information for
//! K-class count matrices. All logarithms are base 2.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::{clamp_unit, xlog2x, CompensatedSum};

/// Slack within which an NI that rounds slightly outside `[0, 1]` is clamped.
pub const NI_CLAMP_SLACK: f64 = 1e-12;

/// An entropy in bits.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Bits(f64);

impl Bits {
    pub fn bits(self) -> f64 {
        self.0
    }
}

/// K x K counts `w_ij`: samples with target class `i` predicted as class `j`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CountMatrix {
    k: usize,
    counts: Vec<f64>,
}

impl CountMatrix {
    /// Build from rows (row `i` = target class `i`).
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let k = rows.len();
        if k < 2 || rows.iter().any(|r| r.len() != k) {
            return Err(Error::Shape {
                rows: k,
                cols: rows.first().map_or(0, Vec::len),
            });
        }
        Self::from_row_major(k, rows.iter().flatten().copied().collect())
    }

    pub fn from_row_major(k: usize, counts: Vec<f64>) -> Result<Self> {
        if k < 2 || counts.len() != k * k {
            return Err(Error::Shape {
                rows: k,
                cols: counts.len().checked_div(k).unwrap_or(0),
            });
        }
        if let Some(&value) = counts.iter().find(|c| !c.is_finite() || **c < 0.0) {
            return Err(Error::InvalidCount { name: "w_ij", value });
        }
        if counts.iter().sum::<f64>() <= 0.0 {
            return Err(Error::ZeroTotal);
        }
        Ok(Self { k, counts })
    }

    /// `[[pos->pos, pos->neg], [neg->pos, neg->neg]]`
    pub fn binary(pos_pos: f64, pos_neg: f64, neg_pos: f64, neg_neg: f64) -> Result<Self> {
        Self::from_row_major(2, vec![pos_pos, pos_neg, neg_pos, neg_neg])
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn get(&self, target: usize, predicted: usize) -> f64 {
        self.counts[target * self.k + predicted]
    }

    pub fn total(&self) -> f64 {
        self.counts.iter().copied().collect::<CompensatedSum>().value()
    }

    /// Target class sizes `w_i`.
    pub fn row_sums(&self) -> Vec<f64> {
        self.counts
            .chunks_exact(self.k)
            .map(|row| row.iter().copied().collect::<CompensatedSum>().value())
            .collect()
    }

    /// Predicted class sizes.
    pub fn column_sums(&self) -> Vec<f64> {
        (0..self.k)
            .map(|j| (0..self.k).map(|i| self.get(i, j)).collect::<CompensatedSum>().value())
            .collect()
    }
}

/// `H(T) = -sum (w_i/w) log2(w_i/w)` over class sizes.
pub fn empirical_entropy(class_sizes: &[f64]) -> Result<Bits> {
    if let Some(&value) = class_sizes.iter().find(|c| !c.is_finite() || **c < 0.0) {
        return Err(Error::InvalidCount { name: "w_i", value });
    }
    let total: f64 = class_sizes.iter().copied().collect::<CompensatedSum>().value();
    if total <= 0.0 {
        return Err(Error::ZeroTotal);
    }
    let h = -class_sizes
        .iter()
        .map(|&w| xlog2x(w / total))
        .collect::<CompensatedSum>()
        .value();
    Ok(Bits(h.max(0.0)))
}

/// `H(T|Y) = -sum_ij (w_ij/w) log2(w_ij / c_j)` where `c_j` is the size of
/// predicted class `j`. Empty predicted classes contribute nothing.
pub fn conditional_entropy(m: &CountMatrix) -> Bits {
    let total = m.total();
    let cols = m.column_sums();
    let mut acc = CompensatedSum::new();
    for i in 0..m.k {
        for (j, &c) in cols.iter().enumerate() {
            let w = m.get(i, j);
            if w > 0.0 {
                acc.add((w / total) * (w / c).log2());
            }
        }
    }
    Bits((-acc.value()).max(0.0))
}

/// `NI = (H(T) - H(T|Y)) / H(T)`; `None` when the target has a single class.
pub fn normalized_mutual_information(m: &CountMatrix) -> Option<f64> {
    let ht = empirical_entropy(&m.row_sums()).ok()?.bits();
    if ht == 0.0 {
        return None;
    }
    let htc = conditional_entropy(m).bits();
    Some(clamp_unit((ht - htc) / ht, NI_CLAMP_SLACK))
}

/// Two-class target entropy from the class sizes.
pub fn binary_target_entropy(w1: f64, w2: f64) -> Result<Bits> {
    empirical_entropy(&[w1, w2])
}
