//! NI over pairs of indexes, and the algebraic bridges between indexes.

use super::{scaled_target_entropy, IDENTITY_TOLERANCE};
use crate::error::{Error, Result};
use crate::kernel::{clamp_unit, xlog2x, xlog2x_abs};
use crate::metrics::ClassSizes;

fn unit(what: &'static str, v: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&v) {
        return Err(Error::OutOfRange {
            what,
            value: v,
            lo: 0.0,
            hi: 1.0,
        });
    }
    Ok(v)
}

/// `A = (2PR w1 + P w2 - R w1) / (P (w1 + w2))`
pub fn accuracy_from_pr(p: f64, r: f64, sizes: ClassSizes) -> Result<f64> {
    let p = unit("precision", p)?;
    let r = unit("recall", r)?;
    if p == 0.0 {
        return Err(Error::Degenerate("precision is zero"));
    }
    let (w1, w2) = (sizes.w1, sizes.w2);
    Ok((2.0 * p * r * w1 + p * w2 - r * w1) / (p * sizes.total()))
}

/// `P = R w1 / (R w1 + F w2)`
pub fn precision_from_fr(f: f64, r: f64, sizes: ClassSizes) -> Result<f64> {
    let f = unit("false alarm", f)?;
    let r = unit("recall", r)?;
    let den = r * sizes.w1 + f * sizes.w2;
    if den == 0.0 {
        return Err(Error::Degenerate("R w1 + F w2 = 0"));
    }
    Ok(r * sizes.w1 / den)
}

/// Terms of the precision/recall form, parameterised by the `x log x`
/// kernel so the continued ("ideal") surface can share the expression.
fn pr_expression(p: f64, r: f64, sizes: ClassSizes, xlog: fn(f64) -> f64) -> Result<f64> {
    let nh = scaled_target_entropy(sizes)?;
    let n = sizes.total();
    let ht = nh / n;
    let (w1, w2) = (sizes.w1, sizes.w2);
    let bracket = w1 * xlog(p) + p * w1 * xlog(1.0 - r) + r * w1 * xlog(1.0 - p)
        - p * r * xlog(w1)
        - p * xlog(w2)
        + xlog(p * r * w1 + p * w2 - r * w1)
        - xlog(p * w1 + p * w2 - r * w1);
    Ok((n.log2() + bracket / (p * n)) / ht)
}

/// NI as a function of precision and recall for fixed class sizes:
///
/// ```text
/// NI = { log n + [ w1 P log P + P w1 (1-R) log(1-R) + R w1 (1-P) log(1-P)
///                  - PR w1 log w1 - P w2 log w2
///                  + x log x |x = PR w1 + P w2 - R w1
///                  - x log x |x = P w1 + P w2 - R w1 ] / (P n) } / H(T)
/// ```
///
/// `(P, R)` must be feasible: the implied false-positive count
/// `R w1 (1-P)/P` may not exceed `w2`.
pub fn ni_from_pr(p: f64, r: f64, sizes: ClassSizes) -> Result<f64> {
    let p = unit("precision", p)?;
    let r = unit("recall", r)?;
    if p == 0.0 {
        return Err(Error::Degenerate("precision is zero"));
    }
    let slack = IDENTITY_TOLERANCE * sizes.total();
    // P * TN, nonnegative exactly on the feasible region
    let p_tn = p * r * sizes.w1 + p * sizes.w2 - r * sizes.w1;
    if p_tn < -slack {
        return Err(Error::Infeasible(format!(
            "(P, R) = ({p}, {r}) needs more than w2 = {} false positives",
            sizes.w2
        )));
    }
    let v = pr_expression(p, r, sizes, |x| xlog2x(x.max(0.0)))?;
    Ok(clamp_unit(v, IDENTITY_TOLERANCE))
}

/// The precision/recall expression evaluated on the whole square, with
/// `x log|x|` standing in for `x log x` where an implied count is negative.
/// Agrees with [`ni_from_pr`] on the feasible region.
pub fn ni_from_pr_continued(p: f64, r: f64, sizes: ClassSizes) -> Result<f64> {
    let p = unit("precision", p)?;
    let r = unit("recall", r)?;
    if p == 0.0 {
        return Err(Error::Degenerate("precision is zero"));
    }
    pr_expression(p, r, sizes, xlog2x_abs)
}

/// NI as a function of false alarm and recall (hit rate). Every point of
/// the unit square is feasible.
///
/// ```text
/// NI = { log n + [ w1 R log R + w1 (1-R) log(1-R) + w2 F log F + w2 (1-F) log(1-F)
///                  - x log x |x = R w1 + F w2
///                  - x log x |x = w1 (1-R) + w2 (1-F) ] / n } / H(T)
/// ```
pub fn ni_from_fr(f: f64, r: f64, sizes: ClassSizes) -> Result<f64> {
    let f = unit("false alarm", f)?;
    let r = unit("recall", r)?;
    let nh = scaled_target_entropy(sizes)?;
    let n = sizes.total();
    let bracket = fr_bracket(f, r, sizes);
    Ok(clamp_unit((n.log2() + bracket / n) / (nh / n), IDENTITY_TOLERANCE))
}

pub(super) fn fr_bracket(f: f64, r: f64, sizes: ClassSizes) -> f64 {
    let (w1, w2) = (sizes.w1, sizes.w2);
    w1 * xlog2x(r) + w1 * xlog2x(1.0 - r) + w2 * xlog2x(f) + w2 * xlog2x(1.0 - f)
        - xlog2x(r * w1 + f * w2)
        - xlog2x(w1 * (1.0 - r) + w2 * (1.0 - f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closed_form::{ni_from_counts, reconstruct};
    use crate::metrics::ConfusionMatrix;

    fn s(w1: f64, w2: f64) -> ClassSizes {
        ClassSizes::new(w1, w2).unwrap()
    }

    fn close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b}");
    }

    #[test]
    fn accuracy_bridge_examples() {
        close(accuracy_from_pr(25.0 / 30.0, 0.5, s(50.0, 50.0)).unwrap(), 0.7, 1e-12);
        close(accuracy_from_pr(1.0, 1.0, s(37.0, 12.0)).unwrap(), 1.0, 1e-15);
        close(accuracy_from_pr(0.25, 0.3, s(50.0, 50.0)).unwrap(), 0.2, 1e-12);
        assert!(matches!(accuracy_from_pr(0.0, 0.3, s(1.0, 1.0)), Err(Error::Degenerate(_))));
    }

    #[test]
    fn precision_bridge_examples() {
        close(precision_from_fr(0.1, 0.5, s(50.0, 50.0)).unwrap(), 25.0 / 30.0, 1e-12);
        assert_eq!(precision_from_fr(0.0, 0.3, s(50.0, 50.0)).unwrap(), 1.0);
        close(precision_from_fr(0.9, 0.3, s(50.0, 50.0)).unwrap(), 0.25, 1e-12);
        assert!(matches!(precision_from_fr(0.0, 0.0, s(1.0, 1.0)), Err(Error::Degenerate(_))));
    }

    #[test]
    fn pr_form_examples() {
        close(ni_from_pr(25.0 / 30.0, 0.5, s(50.0, 50.0)).unwrap(), 0.1468, 5e-5);
        close(ni_from_pr(0.75, 0.6, s(50.0, 50.0)).unwrap(), 0.1245, 5e-5);
        // R w1 (1-P)/P = 45 > w2 = 40
        assert!(matches!(ni_from_pr(0.4, 0.5, s(60.0, 40.0)), Err(Error::Infeasible(_))));
    }

    #[test]
    fn pr_form_grid_matches_reconstruction() {
        for (w1, w2) in [(50.0, 50.0), (60.0, 40.0), (90.0, 10.0)] {
            let sz = s(w1, w2);
            for i in 1..40 {
                for j in 1..40 {
                    let (p, r) = (i as f64 / 40.0, j as f64 / 40.0);
                    let Ok(cm) = reconstruct::from_pr(p, r, sz) else {
                        assert!(ni_from_pr(p, r, sz).is_err());
                        continue;
                    };
                    close(ni_from_pr(p, r, sz).unwrap(), ni_from_counts(&cm).unwrap(), 1e-9);
                    close(ni_from_pr_continued(p, r, sz).unwrap(), ni_from_counts(&cm).unwrap(), 1e-9);
                }
            }
        }
    }

    #[test]
    fn fr_form_examples() {
        close(ni_from_fr(0.1, 0.5, s(50.0, 50.0)).unwrap(), 0.1468, 5e-5);
        for i in 0..=20 {
            let r = i as f64 / 20.0;
            close(ni_from_fr(r, r, s(60.0, 40.0)).unwrap(), 0.0, 1e-12);
        }
        assert_eq!(ni_from_fr(0.0, 1.0, s(3.0, 9.0)).unwrap(), 1.0);
        assert!(matches!(ni_from_fr(0.1, 0.5, s(3.0, 0.0)), Err(Error::ZeroTargetEntropy)));
    }

    #[test]
    fn fr_form_matches_reconstruction() {
        let sz = s(35.0, 40.0);
        close(
            ni_from_fr(7.0 / 40.0, 20.0 / 35.0, sz).unwrap(),
            ni_from_counts(&ConfusionMatrix::from_counts(20, 7, 33, 15).unwrap()).unwrap(),
            1e-12,
        );
        for i in 0..=25 {
            for j in 0..=25 {
                let (f, r) = (i as f64 / 25.0, j as f64 / 25.0);
                let cm = reconstruct::from_fr(f, r, sz).unwrap();
                close(ni_from_fr(f, r, sz).unwrap(), ni_from_counts(&cm).unwrap(), 1e-12);
            }
        }
    }
}
