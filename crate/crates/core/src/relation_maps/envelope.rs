use serde::Serialize;

use super::{upper_envelope, IndexMap};
use crate::closed_form::ni_from_counts;
use crate::error::{Error, Result};
use crate::exec::{map_indexed, Execution};
use crate::metrics::{ClassSizes, ConfusionMatrix};

pub const DEFAULT_ENUMERATION_CAP: u64 = 200;
pub const ENVELOPE_TOLERANCE: f64 = 1e-9;

/// Every integer matrix for fixed class sizes, as `(index, NI)` points.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnvelopeScatter {
    pub metric: IndexMap,
    pub w1: u64,
    pub w2: u64,
    pub matrices_enumerated: usize,
    /// Ordered by `(TP, FP)`. Matrices whose index is undefined (precision
    /// with no positive predictions) are omitted.
    pub points: Vec<[f64; 2]>,
    /// Largest amount by which a point exceeds the upper curve (may be
    /// negative when every point is strictly inside).
    pub max_excess: f64,
}

/// Enumerate all `(w1 + 1)(w2 + 1)` matrices with the given class sizes
/// and check each point lies between 0 and the upper boundary curve
/// within [`ENVELOPE_TOLERANCE`].
pub fn envelope_scatter(
    metric: IndexMap,
    w1: u64,
    w2: u64,
    cap: u64,
    exec: Execution,
) -> Result<EnvelopeScatter> {
    if w1 + w2 > cap {
        return Err(Error::CapExceeded { total: w1 + w2, cap });
    }
    let sizes = ClassSizes::ordered(w1 as f64, w2 as f64)?;
    let cols = (w2 + 1) as usize;
    let count = (w1 + 1) as usize * cols;
    let evaluated = map_indexed(exec, count, |k| -> Result<Option<([f64; 2], f64)>> {
        let (tp, fp) = ((k / cols) as u64, (k % cols) as u64);
        let cm = ConfusionMatrix::from_counts(tp, fp, w2 - fp, w1 - tp)?;
        let x = match metric {
            IndexMap::Accuracy => Some(cm.accuracy()),
            IndexMap::Precision => cm.precision(),
            IndexMap::Recall => cm.recall(),
        };
        let Some(x) = x else { return Ok(None) };
        let ni = ni_from_counts(&cm).ok_or(Error::ZeroTargetEntropy)?;
        let upper = upper_envelope(metric, sizes, x)?;
        if ni > upper + ENVELOPE_TOLERANCE || ni < -ENVELOPE_TOLERANCE {
            return Err(Error::EnvelopeViolation {
                metric: metric.short(),
                x,
                ni,
                lower: 0.0,
                upper,
            });
        }
        Ok(Some(([x, ni], ni - upper)))
    });
    let mut points = Vec::with_capacity(count);
    let mut max_excess = f64::NEG_INFINITY;
    for item in evaluated {
        if let Some((pt, excess)) = item? {
            points.push(pt);
            max_excess = max_excess.max(excess);
        }
    }
    Ok(EnvelopeScatter {
        metric,
        w1,
        w2,
        matrices_enumerated: count,
        points,
        max_excess,
    })
}
