//! Exhaustive check of the closed forms against the entropy definition.
//!
//! Every integer confusion matrix with `2 <= total <= max_total` and both
//! classes present is classified, evaluated through its case form(s), and
//! compared with NI computed from entropies. A form that ever disagrees
//! by more than [`ORACLE_TOLERANCE`] is quarantined; the direct value is
//! authoritative.

use serde::Serialize;

use crate::closed_form::{classify_case, evaluate_form, FormId, ORACLE_TOLERANCE};
use crate::exec::{map_reduce, Execution};
use crate::info_theory::normalized_mutual_information;
use crate::metrics::ConfusionMatrix;

/// Which forms to evaluate per matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepDepth {
    /// The primary form of the matrix's case.
    Dispatched,
    /// Every form of the case, plus the two-index forms where defined.
    AllForms,
}

const FORMS: [FormId; 12] = [
    FormId::Constant,
    FormId::Case5Accuracy,
    FormId::Case6Accuracy,
    FormId::Case6Precision,
    FormId::Case6Recall,
    FormId::Case7Accuracy,
    FormId::Case7Recall,
    FormId::Case8Accuracy,
    FormId::Case8Precision,
    FormId::Case9Apr,
    FormId::PrecisionRecall,
    FormId::FalseAlarmRecall,
];

fn slot(f: FormId) -> usize {
    FORMS.iter().position(|&g| g == f).expect("every swept form has a slot")
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FormStats {
    pub form: FormId,
    pub checked: u64,
    pub violations: u64,
    /// Evaluation errors (the form rejected a matrix of its own case).
    pub errors: u64,
    pub max_abs_diff: f64,
    /// `[tp, fp, tn, fn]` attaining `max_abs_diff`.
    pub worst: Option<[u64; 4]>,
}

impl FormStats {
    fn new(form: FormId) -> Self {
        Self {
            form,
            checked: 0,
            violations: 0,
            errors: 0,
            max_abs_diff: 0.0,
            worst: None,
        }
    }

    fn record(&mut self, diff: f64, m: [u64; 4]) {
        self.checked += 1;
        if diff > ORACLE_TOLERANCE {
            self.violations += 1;
        }
        self.keep_worst(diff, Some(m));
    }

    /// Larger difference wins; equal differences keep the smaller matrix so
    /// the merge order does not matter.
    fn keep_worst(&mut self, diff: f64, m: Option<[u64; 4]>) {
        let better = diff > self.max_abs_diff
            || (diff == self.max_abs_diff && m.is_some() && (self.worst.is_none() || m < self.worst));
        if better {
            self.max_abs_diff = diff;
            self.worst = m;
        }
    }

    fn merge(mut self, o: &FormStats) -> Self {
        self.checked += o.checked;
        self.violations += o.violations;
        self.errors += o.errors;
        self.keep_worst(o.max_abs_diff, o.worst);
        self
    }

    pub fn passed(&self) -> bool {
        self.violations == 0 && self.errors == 0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepReport {
    pub max_total: u64,
    pub depth: SweepDepth,
    pub matrices: u64,
    /// Matrices per case, Case 1 first.
    pub per_case: [u64; 9],
    pub forms: Vec<FormStats>,
    /// Forms with any violation or error.
    pub quarantined: Vec<FormId>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.quarantined.is_empty()
    }

    pub fn max_abs_diff(&self) -> f64 {
        self.forms.iter().map(|f| f.max_abs_diff).fold(0.0, f64::max)
    }
}

#[derive(Clone)]
struct Acc {
    matrices: u64,
    per_case: [u64; 9],
    forms: [FormStats; 12],
}

impl Acc {
    fn new() -> Self {
        Self {
            matrices: 0,
            per_case: [0; 9],
            forms: FORMS.map(FormStats::new),
        }
    }

    fn merge(mut self, o: Acc) -> Self {
        self.matrices += o.matrices;
        for (a, b) in self.per_case.iter_mut().zip(o.per_case) {
            *a += b;
        }
        for (a, b) in self.forms.iter_mut().zip(&o.forms) {
            *a = a.merge(b);
        }
        self
    }
}

/// Number of matrices the sweep visits: all `(tp, fp)` for every split
/// `w1 + w2 = n` with both sizes positive, `2 <= n <= max_total`.
pub fn sweep_size(max_total: u64) -> u64 {
    (2..=max_total)
        .flat_map(|n| (1..n).map(move |w1| (w1 + 1) * (n - w1 + 1)))
        .sum()
}

fn check_matrix(acc: &mut Acc, m: [u64; 4], depth: SweepDepth) {
    let cm = ConfusionMatrix::from_counts(m[0], m[1], m[2], m[3]).expect("total is positive");
    let Some(direct) = normalized_mutual_information(&cm.to_count_matrix()) else {
        return;
    };
    acc.matrices += 1;
    let case = classify_case(&cm);
    acc.per_case[case.number() as usize - 1] += 1;
    let forms = FormId::forms_for(case);
    let forms = match depth {
        SweepDepth::Dispatched => &forms[..1],
        SweepDepth::AllForms => forms,
    };
    let mut eval = |form: FormId| {
        let st = &mut acc.forms[slot(form)];
        match evaluate_form(&cm, form) {
            Ok(v) => st.record((v - direct).abs(), m),
            Err(_) => {
                st.checked += 1;
                st.errors += 1;
            }
        }
    };
    for &f in forms {
        eval(f);
    }
    if depth == SweepDepth::AllForms {
        if m[0] + m[1] > 0 && m[0] > 0 {
            eval(FormId::PrecisionRecall);
        }
        eval(FormId::FalseAlarmRecall);
    }
}

/// Run the sweep. Work is split by `(n, w1)`; the report is identical for
/// every execution strategy.
pub fn oracle_sweep(max_total: u64, depth: SweepDepth, exec: Execution) -> SweepReport {
    let splits: Vec<(u64, u64)> = (2..=max_total).flat_map(|n| (1..n).map(move |w1| (n, w1))).collect();
    let acc = map_reduce(
        exec,
        &splits,
        Acc::new(),
        |&(n, w1)| {
            let w2 = n - w1;
            let mut acc = Acc::new();
            for tp in 0..=w1 {
                for fp in 0..=w2 {
                    check_matrix(&mut acc, [tp, fp, w2 - fp, w1 - tp], depth);
                }
            }
            acc
        },
        Acc::merge,
    );
    let forms: Vec<FormStats> = acc.forms.into_iter().filter(|f| f.checked > 0).collect();
    let quarantined = forms.iter().filter(|f| !f.passed()).map(|f| f.form).collect();
    SweepReport {
        max_total,
        depth,
        matrices: acc.matrices,
        per_case: acc.per_case,
        forms,
        quarantined,
    }
}
