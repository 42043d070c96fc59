use serde::Serialize;

use super::{linspace, require_ordered, CurveSamples, SpecialPoint, View};
use crate::closed_form::IDENTITY_TOLERANCE;
use crate::error::{Error, Result};
use crate::metrics::ClassSizes;

/// Upper edge of the precision-recall region, where all `w2` negatives are
/// false positives: `R = P w2 / ((1 - P) w1)`.
pub fn eq16_recall(p: f64, sizes: ClassSizes) -> f64 {
    p * sizes.w2 / ((1.0 - p) * sizes.w1)
}

/// The second edge as usually quoted, `R = P / ((1 - P) w1)`. It is the
/// locus of exactly one false positive.
pub fn eq17_recall(p: f64, sizes: ClassSizes) -> f64 {
    p / ((1.0 - p) * sizes.w1)
}

/// Recall reached with `fp` false positives at precision `p`, from the
/// counts: `TP = fp P / (1 - P)`, `R = TP / w1`.
fn recall_at_fp(p: f64, fp: f64, sizes: ClassSizes) -> f64 {
    let tp = fp * p / (1.0 - p);
    tp / sizes.w1
}

/// Whether `(P, R)` is attainable with real-valued counts: the implied
/// false-positive count `R w1 (1 - P) / P` must not exceed `w2`.
/// At `P = 0` only `R = 0` is attainable.
pub fn pr_feasible(p: f64, r: f64, sizes: ClassSizes) -> bool {
    if !(0.0..=1.0).contains(&p) || !(0.0..=1.0).contains(&r) {
        return false;
    }
    if p == 0.0 {
        return r == 0.0;
    }
    // P * TN >= 0, scaled like the counts
    p * r * sizes.w1 + p * sizes.w2 - r * sizes.w1 >= -IDENTITY_TOLERANCE * sizes.total()
}

/// Which derived constraint a quoted boundary curve coincides with.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurveMatch {
    pub quoted: String,
    pub derived: String,
    pub max_abs_diff: f64,
    pub matches: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FeasibleRegion {
    pub alpha_ap: SpecialPoint,
    pub curves: Vec<CurveSamples>,
    pub matches: Vec<CurveMatch>,
}

fn curve(name: &str, formula: &str, xs: &[f64], f: impl Fn(f64) -> f64) -> CurveSamples {
    CurveSamples {
        name: name.to_string(),
        view: View::Continuous,
        case: None,
        formula: formula.to_string(),
        domain: [xs[0], xs[xs.len() - 1]],
        points: xs.iter().map(|&x| [x, f(x)]).collect(),
    }
}

/// The precision-recall feasible region: its corner `alpha_AP`, the two
/// quoted edges, the `FP = w2` and `FP = 1` loci, and which quoted edge
/// coincides with which locus. Curves run over precision up to the point
/// where they reach `R = 1`.
pub fn feasible_region_pr(sizes: ClassSizes, n_samples: usize) -> Result<FeasibleRegion> {
    require_ordered(sizes)?;
    let (w1, w2) = (sizes.w1, sizes.w2);
    let upper_xs = linspace(0.0, w1 / sizes.total(), n_samples)?;
    let lower_xs = linspace(0.0, w1 / (w1 + 1.0), n_samples)?;

    let curves = vec![
        curve("Gamma_alphaRP1", "eq16-as-quoted", &upper_xs, |p| eq16_recall(p, sizes)),
        curve("Gamma_alphaRP2", "eq17-as-quoted", &lower_xs, |p| eq17_recall(p, sizes)),
        curve("fp_eq_w2", "fp=w2", &upper_xs, |p| recall_at_fp(p, w2, sizes)),
        curve("fp_eq_1", "fp=1", &lower_xs, |p| recall_at_fp(p, 1.0, sizes)),
    ];

    let mut matches = Vec::new();
    for quoted in &curves[..2] {
        for (derived, fp) in [("fp=w2", w2), ("fp=1", 1.0)] {
            let diff = quoted
                .points
                .iter()
                .map(|&[p, r]| (r - recall_at_fp(p, fp, sizes)).abs())
                .fold(0.0, f64::max);
            matches.push(CurveMatch {
                quoted: quoted.name.clone(),
                derived: derived.to_string(),
                max_abs_diff: diff,
                matches: diff <= IDENTITY_TOLERANCE,
            });
        }
    }

    Ok(FeasibleRegion {
        alpha_ap: SpecialPoint::new("alpha_AP", sizes.positive_fraction(), 1.0),
        curves,
        matches,
    })
}

/// Every `(P, R)` of an integer matrix with `TP >= 1`, ordered by `(TP, FP)`.
pub fn integer_pr_points(w1: u64, w2: u64) -> Vec<[f64; 2]> {
    let mut out = Vec::with_capacity((w1 * (w2 + 1)) as usize);
    for tp in 1..=w1 {
        for fp in 0..=w2 {
            out.push([tp as f64 / (tp + fp) as f64, tp as f64 / w1 as f64]);
        }
    }
    out
}

/// Outcome of checking the continuous region against integer matrices.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegionVerdict {
    pub w1: u64,
    pub w2: u64,
    /// `(TP, FP)` pairs examined, with `FP` running past `w2` to probe
    /// the outside of the region.
    pub examined: usize,
    /// Pairs where [`pr_feasible`] disagrees with `FP <= w2`.
    pub membership_mismatches: usize,
    /// Feasible points strictly above the `R = P w2 / ((1-P) w1)` edge.
    pub above_eq16: usize,
    /// Feasible points with `FP >= 1` strictly below the quoted second edge.
    pub below_eq17: usize,
    /// Whether every `FP = w2` point lies on the first quoted edge.
    pub eq16_is_fp_w2: bool,
    /// Whether every `FP = 1` point lies on the second quoted edge.
    pub eq17_is_fp_1: bool,
}

impl RegionVerdict {
    pub fn holds(&self) -> bool {
        self.membership_mismatches == 0
            && self.above_eq16 == 0
            && self.below_eq17 == 0
            && self.eq16_is_fp_w2
            && self.eq17_is_fp_1
    }
}

/// Enumerate `1 <= TP <= w1`, `0 <= FP <= w1 + w2` and compare integer
/// feasibility (`FP <= w2`) with the continuous region and its edges.
pub fn region_oracle(w1: u64, w2: u64) -> Result<RegionVerdict> {
    let sizes = ClassSizes::ordered(w1 as f64, w2 as f64)?;
    if w1 == 0 {
        return Err(Error::EmptyInput("positive class"));
    }
    let tol = |r: f64| IDENTITY_TOLERANCE * r.max(1.0);
    let mut v = RegionVerdict {
        w1,
        w2,
        examined: 0,
        membership_mismatches: 0,
        above_eq16: 0,
        below_eq17: 0,
        eq16_is_fp_w2: true,
        eq17_is_fp_1: true,
    };
    for tp in 1..=w1 {
        for fp in 0..=w1 + w2 {
            v.examined += 1;
            let p = tp as f64 / (tp + fp) as f64;
            let r = tp as f64 / w1 as f64;
            let feasible = fp <= w2;
            if feasible != pr_feasible(p, r, sizes) {
                v.membership_mismatches += 1;
            }
            if !feasible || fp == 0 {
                continue;
            }
            let upper = eq16_recall(p, sizes);
            let lower = eq17_recall(p, sizes);
            if r > upper + tol(upper) {
                v.above_eq16 += 1;
            }
            if r < lower - tol(lower) {
                v.below_eq17 += 1;
            }
            if fp == w2 && (r - upper).abs() > tol(upper) {
                v.eq16_is_fp_w2 = false;
            }
            if fp == 1 && (r - lower).abs() > tol(lower) {
                v.eq17_is_fp_1 = false;
            }
        }
    }
    Ok(v)
}
