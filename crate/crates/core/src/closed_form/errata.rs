//! Known transcription errors in commonly quoted forms of these relations.
//!
//! Each entry keeps the quoted variant evaluable so its disagreement with
//! the direct computation can be demonstrated; the direct value always wins.

use serde::Serialize;

use super::bridges::fr_bracket;
use super::scaled_target_entropy;
use crate::error::Result;
use crate::metrics::ClassSizes;

#[derive(Debug, Clone, Copy, Serialize)]
pub struct Erratum {
    pub id: &'static str,
    pub summary: &'static str,
}

pub const ERRATA: &[Erratum] = &[
    Erratum {
        id: "precision-denominator",
        summary: "precision quoted as TP/(TP+FN), identical to recall; the accuracy and \
                  false-alarm bridges only hold for TP/(TP+FP), which is what is implemented",
    },
    Erratum {
        id: "fr-form-leading-term",
        summary: "the false-alarm/recall form is quoted without its leading log2(w1+w2) term; \
                  that variant is low by exactly log2(w1+w2)/H(T)",
    },
    Erratum {
        id: "accuracy-map-case-labels",
        summary: "the accuracy-map envelope labels swap cases 5<->6 and 7<->8 when w1 > w2: the \
                  upper envelope meeting at A = 0.5 is cases 6/7, and the quoted beta_A ordinate \
                  is case 6 evaluated with w1 and w2 exchanged",
    },
    Erratum {
        id: "complement-precision",
        summary: "quoted precisions of the complemented models -M4 and -M5 (0.75, 0.6842) do not \
                  follow from the flipped matrices (0.875, 0.6129), whose accuracy, recall and NI \
                  do match",
    },
];

/// The false-alarm/recall form as commonly quoted, without the leading
/// `log2(n)` term. Kept only to demonstrate the erratum.
pub fn ni_from_fr_as_quoted(f: f64, r: f64, sizes: ClassSizes) -> Result<f64> {
    let nh = scaled_target_entropy(sizes)?;
    Ok(fr_bracket(f, r, sizes) / nh)
}
