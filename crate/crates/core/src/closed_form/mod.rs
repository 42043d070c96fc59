//! Closed-form NI for binary classifiers.
//!
//! Every confusion matrix falls into one of nine cases according to which
//! cells vanish. Cases 1-4 have constant NI, cases 5-8 are one-parameter
//! families expressible in accuracy, precision or recall, and case 9 (all
//! cells nonzero) is a function of accuracy, precision and recall jointly.
//! The bridges module expresses NI over (precision, recall) and over
//! (false alarm, recall).

mod bridges;
mod cases;
pub mod errata;
pub mod reconstruct;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use bridges::{accuracy_from_pr, ni_from_fr, ni_from_pr, ni_from_pr_continued, precision_from_fr};
pub use cases::{ni_case5, ni_case6, ni_case7, ni_case8, ni_case9_apr};

use crate::error::{Error, Result};
use crate::kernel::{clamp_unit, xlog2x};
use crate::metrics::{ClassSizes, ConfusionMatrix};

/// Tolerance for algebraic identities on exactly representable inputs.
pub const IDENTITY_TOLERANCE: f64 = 1e-12;
/// Tolerance for closed forms compared against a reconstructed matrix.
pub const ORACLE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum CaseId {
    Case1,
    Case2,
    Case3,
    Case4,
    Case5,
    Case6,
    Case7,
    Case8,
    Case9,
}

impl CaseId {
    pub const ALL: [CaseId; 9] = [
        CaseId::Case1,
        CaseId::Case2,
        CaseId::Case3,
        CaseId::Case4,
        CaseId::Case5,
        CaseId::Case6,
        CaseId::Case7,
        CaseId::Case8,
        CaseId::Case9,
    ];

    pub fn number(self) -> u8 {
        self as u8 + 1
    }

    /// The zero-pattern that defines the case.
    pub fn condition(self) -> &'static str {
        match self {
            CaseId::Case1 => "TP = FP = 0",
            CaseId::Case2 => "TN = FN = 0",
            CaseId::Case3 => "TP = TN = 0",
            CaseId::Case4 => "FP = FN = 0",
            CaseId::Case5 => "TP = 0, TN != 0, FP != 0",
            CaseId::Case6 => "TP != 0, TN = 0, FN != 0",
            CaseId::Case7 => "FP = 0, FN != 0, TP != 0",
            CaseId::Case8 => "FP != 0, FN = 0, TN != 0",
            CaseId::Case9 => "TP, TN, FP, FN all nonzero",
        }
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Case{}", self.number())
    }
}

/// Which case a matrix falls into.
///
/// The zero-patterns overlap at corners, so they are tested in the order
/// 3, 4, 1, 2, 5, 6, 7, 8 and anything left is case 9:
///
/// | zero cells      | case |
/// |-----------------|------|
/// | TP, TN (+any)   | 3    |
/// | FP, FN (+any)   | 4    |
/// | TP, FP          | 1    |
/// | TN, FN          | 2    |
/// | TP (+FN)        | 5    |
/// | TN (+FP)        | 6    |
/// | FP only         | 7    |
/// | FN only         | 8    |
/// | none            | 9    |
pub fn classify_case(cm: &ConfusionMatrix) -> CaseId {
    let [tp, fp, tn, fn_] = cm.cells().map(|c| c == 0.0);
    if tp && tn {
        CaseId::Case3
    } else if fp && fn_ {
        CaseId::Case4
    } else if tp && fp {
        CaseId::Case1
    } else if tn && fn_ {
        CaseId::Case2
    } else if tp {
        CaseId::Case5
    } else if tn {
        CaseId::Case6
    } else if fp {
        CaseId::Case7
    } else if fn_ {
        CaseId::Case8
    } else {
        CaseId::Case9
    }
}

/// The performance indexes of one operating point together with the class
/// sizes. Any index may be absent.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IndexPoint {
    pub accuracy: Option<f64>,
    pub precision: Option<f64>,
    pub recall: Option<f64>,
    pub false_alarm: Option<f64>,
    pub sizes: ClassSizes,
}

impl IndexPoint {
    pub fn new(sizes: ClassSizes) -> Self {
        Self {
            accuracy: None,
            precision: None,
            recall: None,
            false_alarm: None,
            sizes,
        }
    }

    pub fn from_matrix(cm: &ConfusionMatrix) -> Self {
        Self {
            accuracy: Some(cm.accuracy()),
            precision: cm.precision(),
            recall: cm.recall(),
            false_alarm: cm.false_alarm(),
            sizes: cm.class_sizes(),
        }
    }

    pub fn with_accuracy(mut self, a: f64) -> Self {
        self.accuracy = Some(a);
        self
    }

    pub fn with_precision(mut self, p: f64) -> Self {
        self.precision = Some(p);
        self
    }

    pub fn with_recall(mut self, r: f64) -> Self {
        self.recall = Some(r);
        self
    }

    pub fn with_false_alarm(mut self, f: f64) -> Self {
        self.false_alarm = Some(f);
        self
    }

    pub(crate) fn index(&self, via: Via) -> Result<f64> {
        let v = match via {
            Via::Accuracy => self.accuracy,
            Via::Precision => self.precision,
            Via::Recall => self.recall,
        };
        v.ok_or_else(|| Error::Inconsistent(format!("index point has no {via}")))
    }
}

/// The index a one-parameter case form is written in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Via {
    Accuracy,
    Precision,
    Recall,
}

impl fmt::Display for Via {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Via::Accuracy => "accuracy",
            Via::Precision => "precision",
            Via::Recall => "recall",
        })
    }
}

/// Identifies one closed-form expression.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FormId {
    CountExpansion,
    Constant,
    Case5Accuracy,
    Case6Accuracy,
    Case6Precision,
    Case6Recall,
    Case7Accuracy,
    Case7Recall,
    Case8Accuracy,
    Case8Precision,
    Case9Apr,
    PrecisionRecall,
    FalseAlarmRecall,
}

impl FormId {
    pub fn name(self) -> &'static str {
        match self {
            FormId::CountExpansion => "counts",
            FormId::Constant => "constant",
            FormId::Case5Accuracy => "case5/accuracy",
            FormId::Case6Accuracy => "case6/accuracy",
            FormId::Case6Precision => "case6/precision",
            FormId::Case6Recall => "case6/recall",
            FormId::Case7Accuracy => "case7/accuracy",
            FormId::Case7Recall => "case7/recall",
            FormId::Case8Accuracy => "case8/accuracy",
            FormId::Case8Precision => "case8/precision",
            FormId::Case9Apr => "case9/accuracy-precision-recall",
            FormId::PrecisionRecall => "precision-recall",
            FormId::FalseAlarmRecall => "false-alarm-recall",
        }
    }

    /// Every closed form applicable to a case, primary form first.
    pub fn forms_for(case: CaseId) -> &'static [FormId] {
        match case {
            CaseId::Case1 | CaseId::Case2 | CaseId::Case3 | CaseId::Case4 => &[FormId::Constant],
            CaseId::Case5 => &[FormId::Case5Accuracy],
            CaseId::Case6 => &[FormId::Case6Accuracy, FormId::Case6Precision, FormId::Case6Recall],
            CaseId::Case7 => &[FormId::Case7Accuracy, FormId::Case7Recall],
            CaseId::Case8 => &[FormId::Case8Accuracy, FormId::Case8Precision],
            CaseId::Case9 => &[FormId::Case9Apr],
        }
    }
}

impl fmt::Display for FormId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// NI expanded directly over the four counts:
///
/// ```text
/// NI = [ -w1/n log(w1/n) - w2/n log(w2/n)
///        + TP/n log(TP/(TP+FP)) + FP/n log(FP/(TP+FP))
///        + TN/n log(TN/(TN+FN)) + FN/n log(FN/(TN+FN)) ] / H(T)
/// ```
///
/// `None` when `H(T) = 0`.
pub fn ni_from_counts(cm: &ConfusionMatrix) -> Option<f64> {
    let [tp, fp, tn, fn_] = cm.cells();
    let n = cm.total();
    let (w1, w2) = (tp + fn_, fp + tn);
    let ht = -(plogq(w1, n, n) + plogq(w2, n, n));
    if ht <= 0.0 {
        return None;
    }
    let gain = ht
        + plogq(tp, tp + fp, n)
        + plogq(fp, tp + fp, n)
        + plogq(tn, tn + fn_, n)
        + plogq(fn_, tn + fn_, n);
    Some(clamp_unit(gain / ht, IDENTITY_TOLERANCE))
}

/// `(count / n) * log2(count / denom)`, zero when `count` is zero.
#[inline]
fn plogq(count: f64, denom: f64, n: f64) -> f64 {
    if count == 0.0 {
        0.0
    } else {
        (count / n) * (count / denom).log2()
    }
}

/// `n * H(T)` for class sizes `w1, w2`, in the `x log2 x` form the case
/// expressions share.
#[inline]
pub(crate) fn scaled_target_entropy(sizes: ClassSizes) -> Result<f64> {
    let n = sizes.total();
    let nh = xlog2x(n) - xlog2x(sizes.w1) - xlog2x(sizes.w2);
    if sizes.w1 == 0.0 || sizes.w2 == 0.0 || nh <= 0.0 {
        return Err(Error::ZeroTargetEntropy);
    }
    Ok(nh)
}

/// Result of evaluating a matrix through its case's closed form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClosedFormNi {
    pub case: CaseId,
    pub form: FormId,
    /// `None` when the target has a single class.
    pub value: Option<f64>,
}

/// Classify the matrix and evaluate the primary closed form of its case.
pub fn closed_form_ni(cm: &ConfusionMatrix) -> Result<ClosedFormNi> {
    let case = classify_case(cm);
    let form = FormId::forms_for(case)[0];
    let value = match evaluate_form(cm, form) {
        Ok(v) => Some(v),
        Err(Error::ZeroTargetEntropy) => None,
        Err(e) => return Err(e),
    };
    Ok(ClosedFormNi { case, form, value })
}

/// Evaluate one closed form at the operating point of `cm`. The form must
/// apply to the matrix's case (or be one of the two-index forms).
pub fn evaluate_form(cm: &ConfusionMatrix, form: FormId) -> Result<f64> {
    let sizes = cm.class_sizes();
    if sizes.w1 == 0.0 || sizes.w2 == 0.0 {
        return Err(Error::ZeroTargetEntropy);
    }
    let point = IndexPoint::from_matrix(cm);
    match form {
        FormId::CountExpansion => ni_from_counts(cm).ok_or(Error::ZeroTargetEntropy),
        FormId::Constant => match classify_case(cm) {
            CaseId::Case1 | CaseId::Case2 => Ok(0.0),
            CaseId::Case3 | CaseId::Case4 => Ok(1.0),
            other => Err(Error::Inconsistent(format!("{other} has no constant form"))),
        },
        FormId::Case5Accuracy => ni_case5(cm.accuracy(), sizes),
        FormId::Case6Accuracy => ni_case6(&point, Via::Accuracy),
        FormId::Case6Precision => ni_case6(&point, Via::Precision),
        FormId::Case6Recall => ni_case6(&point, Via::Recall),
        FormId::Case7Accuracy => ni_case7(&point, Via::Accuracy),
        FormId::Case7Recall => ni_case7(&point, Via::Recall),
        FormId::Case8Accuracy => ni_case8(&point, Via::Accuracy),
        FormId::Case8Precision => ni_case8(&point, Via::Precision),
        FormId::Case9Apr => {
            let p = point.index(Via::Precision)?;
            let r = point.index(Via::Recall)?;
            ni_case9_apr(cm.accuracy(), p, r)
        }
        FormId::PrecisionRecall => {
            let p = point.index(Via::Precision)?;
            let r = point.index(Via::Recall)?;
            ni_from_pr(p, r, sizes)
        }
        FormId::FalseAlarmRecall => {
            let f = cm.false_alarm().ok_or(Error::ZeroTargetEntropy)?;
            let r = cm.recall().ok_or(Error::ZeroTargetEntropy)?;
            ni_from_fr(f, r, sizes)
        }
    }
}

pub(crate) fn check_range(what: &'static str, value: f64, lo: f64, hi: f64) -> Result<f64> {
    if !value.is_finite() || value < lo - IDENTITY_TOLERANCE || value > hi + IDENTITY_TOLERANCE {
        return Err(Error::OutOfRange { what, value, lo, hi });
    }
    Ok(value.clamp(lo, hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::info_theory;

    fn cm(tp: u64, fp: u64, tn: u64, fn_: u64) -> ConfusionMatrix {
        ConfusionMatrix::from_counts(tp, fp, tn, fn_).unwrap()
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify_case(&cm(0, 50, 0, 50)), CaseId::Case3);
        assert_eq!(classify_case(&cm(50, 0, 50, 0)), CaseId::Case4);
        assert_eq!(classify_case(&cm(25, 5, 45, 25)), CaseId::Case9);
    }

    /// All 15 nonempty zero-patterns against the priority table.
    #[test]
    fn truth_table() {
        use CaseId::*;
        let expected = [
            // (tp, fp, tn, fn) nonzero flags -> case
            ((false, false, false, true), Case3),
            ((false, false, true, false), Case4),
            ((false, false, true, true), Case1),
            ((false, true, false, false), Case3),
            ((false, true, false, true), Case3),
            ((false, true, true, false), Case5),
            ((false, true, true, true), Case5),
            ((true, false, false, false), Case4),
            ((true, false, false, true), Case6),
            ((true, false, true, false), Case4),
            ((true, false, true, true), Case7),
            ((true, true, false, false), Case2),
            ((true, true, false, true), Case6),
            ((true, true, true, false), Case8),
            ((true, true, true, true), Case9),
        ];
        for ((a, b, c, d), case) in expected {
            let m = cm(a as u64 * 3, b as u64 * 5, c as u64 * 7, d as u64 * 11);
            assert_eq!(classify_case(&m), case, "pattern {:?}", (a, b, c, d));
        }
    }

    #[test]
    fn count_expansion_examples() {
        assert!((ni_from_counts(&cm(25, 5, 45, 25)).unwrap() - 0.1468).abs() < 5e-5);
        assert_eq!(ni_from_counts(&cm(0, 0, 50, 50)), Some(0.0));
        assert!((ni_from_counts(&cm(15, 5, 45, 35)).unwrap() - 0.0468).abs() < 5e-5);
        assert_eq!(ni_from_counts(&cm(3, 0, 0, 4)), None);
    }

    #[test]
    fn count_expansion_matches_general_definition() {
        for tp in 0..8u64 {
            for fp in 0..8 {
                for tn in 0..8 {
                    for fn_ in 0..8 {
                        let Ok(m) = ConfusionMatrix::from_counts(tp, fp, tn, fn_) else {
                            continue;
                        };
                        let direct = info_theory::normalized_mutual_information(&m.to_count_matrix());
                        match (direct, ni_from_counts(&m)) {
                            (None, None) => {}
                            (Some(a), Some(b)) => assert!((a - b).abs() < IDENTITY_TOLERANCE),
                            other => panic!("{:?}: {other:?}", m.cells()),
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn dispatch_reports_case_and_form() {
        let r = closed_form_ni(&cm(25, 5, 45, 25)).unwrap();
        assert_eq!(r.case, CaseId::Case9);
        assert_eq!(r.form, FormId::Case9Apr);
        assert!((r.value.unwrap() - 0.1468).abs() < 5e-5);
        let r = closed_form_ni(&cm(10, 0, 0, 0)).unwrap();
        assert_eq!(r.value, None);
        let r = closed_form_ni(&cm(50, 0, 50, 0)).unwrap();
        assert_eq!((r.case, r.value), (CaseId::Case4, Some(1.0)));
    }

    #[test]
    fn index_point_missing_index() {
        let p = IndexPoint::new(ClassSizes::new(1.0, 1.0).unwrap());
        assert!(matches!(ni_case6(&p, Via::Recall), Err(Error::Inconsistent(_))));
    }
}
