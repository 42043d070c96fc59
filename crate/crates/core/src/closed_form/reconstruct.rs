//! Rebuild the confusion matrix behind an operating point.
//!
//! These are the inverse maps used to check every closed form against a
//! direct entropy computation: evaluate the form at an index value, rebuild
//! the counts that produce that value, and compare with NI from counts.

use crate::error::{Error, Result};
use crate::metrics::{ClassSizes, ConfusionMatrix};

/// Build a matrix, flushing rounding-level negatives to zero.
fn cells(tp: f64, fp: f64, tn: f64, fn_: f64, scale: f64) -> Result<ConfusionMatrix> {
    let slack = 1e-12 * scale;
    let fix = |name: &'static str, v: f64| -> Result<f64> {
        if v < -slack || !v.is_finite() {
            Err(Error::Infeasible(format!("reconstructed {name} = {v} is negative")))
        } else {
            Ok(v.max(0.0))
        }
    };
    ConfusionMatrix::new(fix("tp", tp)?, fix("fp", fp)?, fix("tn", tn)?, fix("fn", fn_)?)
}

/// `TP = 0`: `TN = A n`, `FP = w2 - A n`, `FN = w1`.
pub fn case5(a: f64, s: ClassSizes) -> Result<ConfusionMatrix> {
    let n = s.total();
    cells(0.0, s.w2 - a * n, a * n, s.w1, n)
}

/// `TN = 0`: `TP = A n`, `FP = w2`, `FN = w1 - A n`.
pub fn case6_from_accuracy(a: f64, s: ClassSizes) -> Result<ConfusionMatrix> {
    let n = s.total();
    cells(a * n, s.w2, 0.0, s.w1 - a * n, n)
}

/// `TN = 0`: `TP = P w2 / (1 - P)`.
pub fn case6_from_precision(p: f64, s: ClassSizes) -> Result<ConfusionMatrix> {
    if p >= 1.0 {
        return Err(Error::Degenerate("precision 1 with TN = 0 needs w2 = 0"));
    }
    let tp = p * s.w2 / (1.0 - p);
    cells(tp, s.w2, 0.0, s.w1 - tp, s.total())
}

/// `TN = 0`: `TP = R w1`.
pub fn case6_from_recall(r: f64, s: ClassSizes) -> Result<ConfusionMatrix> {
    cells(r * s.w1, s.w2, 0.0, (1.0 - r) * s.w1, s.total())
}

/// `FP = 0`: `TP = A n - w2`.
pub fn case7_from_accuracy(a: f64, s: ClassSizes) -> Result<ConfusionMatrix> {
    let n = s.total();
    let tp = a * n - s.w2;
    cells(tp, 0.0, s.w2, s.w1 - tp, n)
}

/// `FP = 0`: `TP = R w1`.
pub fn case7_from_recall(r: f64, s: ClassSizes) -> Result<ConfusionMatrix> {
    cells(r * s.w1, 0.0, s.w2, (1.0 - r) * s.w1, s.total())
}

/// `FN = 0`: `FP = (1 - A) n`.
pub fn case8_from_accuracy(a: f64, s: ClassSizes) -> Result<ConfusionMatrix> {
    let n = s.total();
    let fp = (1.0 - a) * n;
    cells(s.w1, fp, s.w2 - fp, 0.0, n)
}

/// `FN = 0`: `FP = w1 (1 - P) / P`.
pub fn case8_from_precision(p: f64, s: ClassSizes) -> Result<ConfusionMatrix> {
    if p <= 0.0 {
        return Err(Error::Degenerate("precision is zero"));
    }
    let fp = s.w1 * (1.0 - p) / p;
    cells(s.w1, fp, s.w2 - fp, 0.0, s.total())
}

/// `TP = R w1`, `FP = R w1 (1 - P) / P`.
pub fn from_pr(p: f64, r: f64, s: ClassSizes) -> Result<ConfusionMatrix> {
    if p <= 0.0 {
        return Err(Error::Degenerate("precision is zero"));
    }
    let tp = r * s.w1;
    let fp = tp * (1.0 - p) / p;
    cells(tp, fp, s.w2 - fp, s.w1 - tp, s.total())
}

/// `TP = R w1`, `FP = F w2`.
pub fn from_fr(f: f64, r: f64, s: ClassSizes) -> Result<ConfusionMatrix> {
    cells(r * s.w1, f * s.w2, (1.0 - f) * s.w2, (1.0 - r) * s.w1, s.total())
}

/// Unit-total matrix with the given accuracy, precision and recall.
pub fn from_apr(a: f64, p: f64, r: f64) -> Result<ConfusionMatrix> {
    let d = p + r - 2.0 * p * r;
    if d <= 0.0 {
        return Err(Error::Degenerate("P + R - 2PR = 0"));
    }
    let tp = p * r * (1.0 - a) / d;
    let fp = r * (1.0 - p) * (1.0 - a) / d;
    let fn_ = p * (1.0 - r) * (1.0 - a) / d;
    cells(tp, fp, a - tp, fn_, 1.0)
}
