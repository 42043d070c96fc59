use super::{require_ordered, IndexMap, SpecialPoint};
use crate::closed_form::{ni_case6, ni_case7, IndexPoint, Via};
use crate::error::Result;
use crate::kernel::xlog2x;
use crate::metrics::ClassSizes;

/// Tolerance for the cross-check of a closed β ordinate against the curves.
const BETA_CHECK: f64 = 1e-9;

/// The commonly quoted closed expression for the accuracy-map junction:
///
/// ```text
/// [ -1/2 + 3/2 log n - (w2/n) log w2 - ((3w1/2 + w2/2)/n) log(3w1/2 + w2/2) ] / H(T)
/// ```
///
/// With `w1 > w2` this is the junction of the curves for the swapped class
/// sizes. [`special_points`] therefore evaluates it at `sizes.swapped()`.
pub fn beta_a_as_quoted(sizes: ClassSizes) -> f64 {
    let n = sizes.total();
    let (w1, w2) = (sizes.w1, sizes.w2);
    let m = 1.5 * w1 + 0.5 * w2;
    (-0.5 + 1.5 * n.log2() - xlog2x(w2) / n - xlog2x(m) / n) / sizes.target_entropy()
}

/// Recall-map junction at `R = 0.5`:
///
/// ```text
/// [ -w1/(2n) + log n - (w1/(2n)) log w1 - ((w1/2 + w2)/n) log(w1/2 + w2) ] / H(T)
/// ```
pub fn beta_r_as_quoted(sizes: ClassSizes) -> f64 {
    let n = sizes.total();
    let (w1, w2) = (sizes.w1, sizes.w2);
    let m = 0.5 * w1 + w2;
    (-w1 / (2.0 * n) + n.log2() - xlog2x(w1) / (2.0 * n) - xlog2x(m) / n) / sizes.target_entropy()
}

/// The labelled points of one map, for `w1 >= w2 > 0`.
///
/// The β ordinates come from their closed expressions and are checked
/// against the meeting value of the two upper curves at the abscissa 0.5.
pub fn special_points(map: IndexMap, sizes: ClassSizes) -> Result<Vec<SpecialPoint>> {
    require_ordered(sizes)?;
    let n = sizes.total();
    let t = map.tag();
    let alpha = SpecialPoint::new(format!("alpha_{t}"), 0.0, 1.0);
    let gamma = SpecialPoint::new(format!("gamma_{t}"), 1.0, 1.0);
    let pts = match map {
        IndexMap::Accuracy => {
            let beta = beta_a_as_quoted(sizes.swapped());
            cross_check(beta, sizes, Via::Accuracy)?;
            vec![
                alpha,
                SpecialPoint::new("beta_A", 0.5, beta),
                gamma,
                SpecialPoint::new("eta_A", sizes.w2 / n, 0.0),
                SpecialPoint::new("lambda_A", sizes.w1 / n, 0.0),
            ]
        }
        IndexMap::Precision => vec![alpha, SpecialPoint::new("beta_P", sizes.w1 / n, 0.0), gamma],
        IndexMap::Recall => {
            let beta = beta_r_as_quoted(sizes);
            cross_check(beta, sizes, Via::Recall)?;
            vec![alpha, SpecialPoint::new("beta_R", 0.5, beta), gamma]
        }
    };
    Ok(pts)
}

fn cross_check(beta: f64, sizes: ClassSizes, via: Via) -> Result<()> {
    let base = IndexPoint::new(sizes);
    let at = |p: IndexPoint| match via {
        Via::Accuracy => p.with_accuracy(0.5),
        _ => p.with_recall(0.5),
    };
    let left = ni_case6(&at(base), via)?;
    let right = ni_case7(&at(base), via)?;
    for v in [left, right] {
        if (v - beta).abs() > BETA_CHECK {
            return Err(crate::Error::Inconsistent(format!(
                "beta ordinate {beta} disagrees with curve value {v} at 0.5"
            )));
        }
    }
    Ok(())
}
