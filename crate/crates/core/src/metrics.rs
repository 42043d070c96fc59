//! Binary confusion matrices and the classical performance indexes.
//!
//! Precision is `tp / (tp + fp)`. Ratios whose denominator is zero are
//! reported as `None` ("undefined") rather than NaN or an error.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::info_theory;

/// Counts of a two-class prediction. Class 1 ("positive") has size
/// `w1 = tp + fn`, class 2 ("negative") has size `w2 = fp + tn`.
///
/// Cells are stored as reals so the relation maps can work with fractional
/// counts; matrices tallied from data carry `integer_valued = true`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawMatrix")]
pub struct ConfusionMatrix {
    tp: f64,
    fp: f64,
    tn: f64,
    #[serde(rename = "fn")]
    fn_: f64,
    #[serde(skip_serializing)]
    integer_valued: bool,
}

#[derive(Deserialize)]
struct RawMatrix {
    tp: f64,
    fp: f64,
    tn: f64,
    #[serde(rename = "fn")]
    fn_: f64,
}

impl TryFrom<RawMatrix> for ConfusionMatrix {
    type Error = Error;

    fn try_from(raw: RawMatrix) -> Result<Self> {
        let mut cm = ConfusionMatrix::new(raw.tp, raw.fp, raw.tn, raw.fn_)?;
        cm.integer_valued = cm.cells().iter().all(|c| c.fract() == 0.0);
        Ok(cm)
    }
}

impl ConfusionMatrix {
    /// Analysis-mode constructor; fractional counts are accepted.
    pub fn new(tp: f64, fp: f64, tn: f64, fn_: f64) -> Result<Self> {
        for (name, value) in [("tp", tp), ("fp", fp), ("tn", tn), ("fn", fn_)] {
            if !value.is_finite() || value < 0.0 {
                return Err(Error::InvalidCount { name, value });
            }
        }
        if tp + fp + tn + fn_ <= 0.0 {
            return Err(Error::ZeroTotal);
        }
        Ok(Self {
            tp,
            fp,
            tn,
            fn_,
            integer_valued: false,
        })
    }

    pub fn from_counts(tp: u64, fp: u64, tn: u64, fn_: u64) -> Result<Self> {
        let mut cm = Self::new(tp as f64, fp as f64, tn as f64, fn_ as f64)?;
        cm.integer_valued = true;
        Ok(cm)
    }

    pub fn tp(&self) -> f64 {
        self.tp
    }

    pub fn fp(&self) -> f64 {
        self.fp
    }

    pub fn tn(&self) -> f64 {
        self.tn
    }

    pub fn fn_(&self) -> f64 {
        self.fn_
    }

    /// `[tp, fp, tn, fn]`
    pub fn cells(&self) -> [f64; 4] {
        [self.tp, self.fp, self.tn, self.fn_]
    }

    pub fn is_integer_valued(&self) -> bool {
        self.integer_valued
    }

    pub fn total(&self) -> f64 {
        self.tp + self.fp + self.tn + self.fn_
    }

    pub fn w1(&self) -> f64 {
        self.tp + self.fn_
    }

    pub fn w2(&self) -> f64 {
        self.fp + self.tn
    }

    pub fn class_sizes(&self) -> ClassSizes {
        ClassSizes {
            w1: self.w1(),
            w2: self.w2(),
        }
    }

    pub fn accuracy(&self) -> f64 {
        (self.tp + self.tn) / self.total()
    }

    pub fn precision(&self) -> Option<f64> {
        ratio(self.tp, self.tp + self.fp)
    }

    pub fn recall(&self) -> Option<f64> {
        ratio(self.tp, self.w1())
    }

    pub fn false_alarm(&self) -> Option<f64> {
        ratio(self.fp, self.w2())
    }

    /// The complement classifier: every predicted label inverted.
    pub fn flip_predictions(&self) -> Self {
        Self {
            tp: self.fn_,
            fp: self.tn,
            tn: self.fp,
            fn_: self.tp,
            integer_valued: self.integer_valued,
        }
    }

    /// Rows are target classes (positive first), columns predicted classes.
    pub fn to_count_matrix(&self) -> info_theory::CountMatrix {
        info_theory::CountMatrix::binary(self.tp, self.fn_, self.fp, self.tn)
            .expect("a valid confusion matrix is a valid count matrix")
    }
}

fn ratio(num: f64, den: f64) -> Option<f64> {
    (den > 0.0).then(|| num / den)
}

/// Class sizes `(w1, w2)` of a binary problem.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassSizes {
    pub w1: f64,
    pub w2: f64,
}

impl ClassSizes {
    pub fn new(w1: f64, w2: f64) -> Result<Self> {
        for (name, value) in [("w1", w1), ("w2", w2)] {
            if !value.is_finite() || value < 0.0 {
                return Err(Error::InvalidCount { name, value });
            }
        }
        if w1 + w2 <= 0.0 {
            return Err(Error::ZeroTotal);
        }
        Ok(Self { w1, w2 })
    }

    /// Sizes obeying the relation-map convention `w1 >= w2 > 0`.
    pub fn ordered(w1: f64, w2: f64) -> Result<Self> {
        let sizes = Self::new(w1, w2)?;
        if !(w1 >= w2 && w2 > 0.0) {
            return Err(Error::ClassOrder { w1, w2 });
        }
        Ok(sizes)
    }

    pub fn swapped(self) -> Self {
        Self {
            w1: self.w2,
            w2: self.w1,
        }
    }

    pub fn total(&self) -> f64 {
        self.w1 + self.w2
    }

    /// `w1 / (w1 + w2)`
    pub fn positive_fraction(&self) -> f64 {
        self.w1 / self.total()
    }

    /// `w2 / (w1 + w2)`
    pub fn negative_fraction(&self) -> f64 {
        self.w2 / self.total()
    }

    pub fn target_entropy(&self) -> f64 {
        info_theory::binary_target_entropy(self.w1, self.w2)
            .map(|h| h.bits())
            .unwrap_or(0.0)
    }
}

/// Accuracy, precision, recall, false alarm and NI of one classifier.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricsReport {
    pub accuracy: f64,
    pub precision: Option<f64>,
    pub recall: Option<f64>,
    pub false_alarm: Option<f64>,
    pub ni: Option<f64>,
}

impl MetricsReport {
    pub fn from_matrix(cm: &ConfusionMatrix) -> Self {
        Self {
            accuracy: cm.accuracy(),
            precision: cm.precision(),
            recall: cm.recall(),
            false_alarm: cm.false_alarm(),
            ni: info_theory::normalized_mutual_information(&cm.to_count_matrix()),
        }
    }
}

/// One observation: the true class and the predicted class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelPair {
    pub target: String,
    pub predicted: String,
}

impl LabelPair {
    pub fn new(target: impl Into<String>, predicted: impl Into<String>) -> Self {
        Self {
            target: target.into(),
            predicted: predicted.into(),
        }
    }
}

/// The two-symbol label alphabet. When `negative` is `None` the second
/// symbol is inferred from the data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    pub positive: String,
    pub negative: Option<String>,
}

impl Alphabet {
    pub fn positive(label: impl Into<String>) -> Self {
        Self {
            positive: label.into(),
            negative: None,
        }
    }

    pub fn new(positive: impl Into<String>, negative: impl Into<String>) -> Self {
        Self {
            positive: positive.into(),
            negative: Some(negative.into()),
        }
    }
}

/// Tally label pairs into a confusion matrix.
pub fn from_label_pairs<'a, I>(pairs: I, alphabet: &Alphabet) -> Result<ConfusionMatrix>
where
    I: IntoIterator<Item = &'a LabelPair>,
{
    let mut negative = alphabet.negative.clone();
    let mut seen_positive = false;
    let mut counts = [0u64; 4];
    let mut n = 0usize;

    let mut is_positive = |label: &str| -> Result<bool> {
        if label == alphabet.positive {
            seen_positive = true;
            return Ok(true);
        }
        match &negative {
            Some(neg) if neg == label => Ok(false),
            Some(neg) => Err(Error::LabelOutsideAlphabet {
                label: label.to_string(),
                alphabet: vec![alphabet.positive.clone(), neg.clone()],
            }),
            None => {
                negative = Some(label.to_string());
                Ok(false)
            }
        }
    };

    for pair in pairs {
        let t = is_positive(&pair.target)?;
        let p = is_positive(&pair.predicted)?;
        let cell = match (t, p) {
            (true, true) => 0,
            (false, true) => 1,
            (false, false) => 2,
            (true, false) => 3,
        };
        counts[cell] += 1;
        n += 1;
    }

    if n == 0 {
        return Err(Error::EmptyInput("no label pairs"));
    }
    if alphabet.negative.is_none() && !seen_positive {
        return Err(Error::UnknownPositiveLabel(alphabet.positive.clone()));
    }
    ConfusionMatrix::from_counts(counts[0], counts[1], counts[2], counts[3])
}
