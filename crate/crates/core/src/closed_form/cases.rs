use super::{check_range, scaled_target_entropy, IndexPoint, Via};
use crate::error::{Error, Result};
use crate::kernel::{clamp_unit, xlog2x};
use crate::metrics::ClassSizes;

use super::IDENTITY_TOLERANCE;

fn finish(bracket: f64, nh: f64) -> f64 {
    clamp_unit(bracket / nh, IDENTITY_TOLERANCE)
}

/// Case 5 (`TP = 0`, `TN, FP != 0`) in accuracy:
///
/// ```text
/// NI = [ n A log A + (A+1) n log n - w2 log w2 - (An + w1) log(An + w1) ] / (n H(T))
/// ```
///
/// Reachable for `0 <= A <= w2/n`; the endpoints are the limits NI = 1 and 0.
pub fn ni_case5(accuracy: f64, sizes: ClassSizes) -> Result<f64> {
    let nh = scaled_target_entropy(sizes)?;
    let n = sizes.total();
    let (w1, w2) = (sizes.w1, sizes.w2);
    let a = check_range("accuracy", accuracy, 0.0, w2 / n)?;
    let bracket = n * xlog2x(a) + (a + 1.0) * xlog2x(n) - xlog2x(w2) - xlog2x(a * n + w1);
    Ok(finish(bracket, nh))
}

/// Case 6 (`TN = 0`, `TP, FN != 0`): the classifier never predicts the
/// negative class correctly. Three equivalent forms, related by
/// `1/P + 1/R = 1 + 1/A` and `A n = R w1 = P w2 / (1 - P)`.
pub fn ni_case6(point: &IndexPoint, via: Via) -> Result<f64> {
    let sizes = point.sizes;
    let nh = scaled_target_entropy(sizes)?;
    let n = sizes.total();
    let (w1, w2) = (sizes.w1, sizes.w2);
    let x = point.index(via)?;
    let bracket = match via {
        Via::Accuracy => {
            let a = check_range("accuracy", x, 0.0, w1 / n)?;
            n * xlog2x(a) + (a + 1.0) * xlog2x(n) - xlog2x(w1) - xlog2x(a * n + w2)
        }
        Via::Precision => {
            let p = check_range("precision", x, 0.0, w1 / n)?;
            w2 / (1.0 - p) * xlog2x(p) + w2 * (1.0 - p).log2() + xlog2x(n) - xlog2x(w1) - xlog2x(w2)
        }
        Via::Recall => {
            let r = check_range("recall", x, 0.0, 1.0)?;
            w1 * xlog2x(r) + xlog2x(n) - (1.0 - r) * xlog2x(w1) - xlog2x(r * w1 + w2)
        }
    };
    Ok(finish(bracket, nh))
}

/// Case 7 (`FP = 0`, `TP, FN != 0`): precision is 1. Forms in accuracy
/// and recall, related by `A n = R w1 + w2`.
pub fn ni_case7(point: &IndexPoint, via: Via) -> Result<f64> {
    let sizes = point.sizes;
    let nh = scaled_target_entropy(sizes)?;
    let n = sizes.total();
    let (w1, w2) = (sizes.w1, sizes.w2);
    let x = point.index(via)?;
    let bracket = match via {
        Via::Accuracy => {
            let a = check_range("accuracy", x, w2 / n, 1.0)?;
            n * xlog2x(1.0 - a) + (2.0 - a) * xlog2x(n) - xlog2x(w1) - xlog2x(w1 + 2.0 * w2 - a * n)
        }
        Via::Recall => {
            let r = check_range("recall", x, 0.0, 1.0)?;
            w1 * xlog2x(1.0 - r) + xlog2x(n) - r * xlog2x(w1) - xlog2x(n - r * w1)
        }
        Via::Precision => {
            return Err(Error::Inconsistent(
                "case 7 has precision 1 and no precision form".into(),
            ))
        }
    };
    Ok(finish(bracket, nh))
}

/// Case 8 (`FN = 0`, `TN, FP != 0`): recall is 1. Forms in accuracy and
/// precision, related by `A n = 2 w1 + w2 - w1 / P`.
pub fn ni_case8(point: &IndexPoint, via: Via) -> Result<f64> {
    let sizes = point.sizes;
    let nh = scaled_target_entropy(sizes)?;
    let n = sizes.total();
    let (w1, w2) = (sizes.w1, sizes.w2);
    let x = point.index(via)?;
    let bracket = match via {
        Via::Accuracy => {
            let a = check_range("accuracy", x, w1 / n, 1.0)?;
            n * xlog2x(1.0 - a) + (2.0 - a) * xlog2x(n) - xlog2x(w2) - xlog2x(w2 + 2.0 * w1 - a * n)
        }
        Via::Precision => {
            let p = check_range("precision", x, w1 / n, 1.0)?;
            w1 / p * xlog2x(1.0 - p) + w1 * p.log2() + xlog2x(n) - xlog2x(w1) - xlog2x(w2)
        }
        Via::Recall => {
            return Err(Error::Inconsistent(
                "case 8 has recall 1 and no recall form".into(),
            ))
        }
    };
    Ok(finish(bracket, nh))
}

/// Case 9 (all cells nonzero) from accuracy, precision and recall alone.
///
/// With `D = P + R - 2PR`, the positive-class fraction is `P(1-A)/D`,
/// which fixes `H(T)`, and
///
/// ```text
/// NI = { log D + [ P(1-A)(1-R)log(1-R) + R(1-A)(1-P)log(1-P) - PR(1-A)log(1-A)
///                 + x log x |x = AP+AR-PR-APR
///                 - x log x |x = AP+R-2PR
///                 - x log x |x = AR+P-2PR ] / D } / H(T)
/// ```
pub fn ni_case9_apr(a: f64, p: f64, r: f64) -> Result<f64> {
    for (what, v) in [("accuracy", a), ("precision", p), ("recall", r)] {
        if !(v > 0.0 && v < 1.0) {
            return Err(Error::OutOfRange {
                what,
                value: v,
                lo: 0.0,
                hi: 1.0,
            });
        }
    }
    let d = p + r - 2.0 * p * r;
    if d <= 0.0 {
        return Err(Error::Degenerate("P + R - 2PR = 0"));
    }
    let positive = p * (1.0 - a) / d;
    let tn = a * p + a * r - p * r - a * p * r;
    if !(positive > 0.0 && positive < 1.0) || tn < -IDENTITY_TOLERANCE {
        return Err(Error::Inconsistent(format!(
            "(A, P, R) = ({a}, {p}, {r}) is not realised by any matrix with all cells nonzero"
        )));
    }
    let tn = tn.max(0.0);
    let ht = -(xlog2x(positive) + xlog2x(1.0 - positive));
    let bracket = p * (1.0 - a) * xlog2x(1.0 - r) + r * (1.0 - a) * xlog2x(1.0 - p)
        - p * r * xlog2x(1.0 - a)
        + xlog2x(tn)
        - xlog2x(a * p + r - 2.0 * p * r)
        - xlog2x(a * r + p - 2.0 * p * r);
    Ok(clamp_unit((d.log2() + bracket / d) / ht, IDENTITY_TOLERANCE))
}
