use super::{linspace, require_ordered, CurveSamples, IndexMap, View};
use crate::closed_form::{ni_case5, ni_case6, ni_case7, ni_case8, CaseId, FormId, IndexPoint, Via};
use crate::error::{Error, Result};
use crate::metrics::ClassSizes;

struct Spec {
    name: &'static str,
    case: CaseId,
    form: FormId,
    lo: f64,
    hi: f64,
}

/// The curves of one map. For the accuracy map the upper envelope meeting
/// at `A = 0.5` is generated by cases 6 (left) and 7 (right); the curves
/// from `alpha_A` to `eta_A` and from `gamma_A` to `lambda_A` are cases 5
/// and 8. With `w1 = w2` cases 5/6 and 7/8 coincide.
fn specs(map: IndexMap, sizes: ClassSizes) -> Vec<Spec> {
    let n = sizes.total();
    let (p1, p2) = (sizes.w1 / n, sizes.w2 / n);
    let s = |name, case, form, lo, hi| Spec {
        name,
        case,
        form,
        lo,
        hi,
    };
    match map {
        IndexMap::Accuracy => vec![
            s("Gamma_alphaA_betaA", CaseId::Case6, FormId::Case6Accuracy, 0.0, 0.5),
            s("Gamma_gammaA_betaA", CaseId::Case7, FormId::Case7Accuracy, 0.5, 1.0),
            s("Gamma_alphaA_etaA", CaseId::Case5, FormId::Case5Accuracy, 0.0, p2),
            s("Gamma_gammaA_lambdaA", CaseId::Case8, FormId::Case8Accuracy, p1, 1.0),
        ],
        IndexMap::Precision => vec![
            s("Gamma_alphaP_betaP", CaseId::Case6, FormId::Case6Precision, 0.0, p1),
            s("Gamma_gammaP_betaP", CaseId::Case8, FormId::Case8Precision, p1, 1.0),
        ],
        IndexMap::Recall => vec![
            s("Gamma_alphaR_betaR", CaseId::Case6, FormId::Case6Recall, 0.0, 0.5),
            s("Gamma_gammaR_betaR", CaseId::Case7, FormId::Case7Recall, 0.5, 1.0),
        ],
    }
}

fn eval(form: FormId, x: f64, sizes: ClassSizes) -> Result<f64> {
    let p = IndexPoint::new(sizes);
    match form {
        FormId::Case5Accuracy => ni_case5(x, sizes),
        FormId::Case6Accuracy => ni_case6(&p.with_accuracy(x), Via::Accuracy),
        FormId::Case6Precision => ni_case6(&p.with_precision(x), Via::Precision),
        FormId::Case6Recall => ni_case6(&p.with_recall(x), Via::Recall),
        FormId::Case7Accuracy => ni_case7(&p.with_accuracy(x), Via::Accuracy),
        FormId::Case7Recall => ni_case7(&p.with_recall(x), Via::Recall),
        FormId::Case8Accuracy => ni_case8(&p.with_accuracy(x), Via::Accuracy),
        FormId::Case8Precision => ni_case8(&p.with_precision(x), Via::Precision),
        other => Err(Error::Inconsistent(format!("{other} is not a one-index form"))),
    }
}

/// Sample every boundary curve of `map` at `n_samples` points each.
pub fn boundary_curves(map: IndexMap, sizes: ClassSizes, n_samples: usize) -> Result<Vec<CurveSamples>> {
    require_ordered(sizes)?;
    specs(map, sizes)
        .into_iter()
        .map(|sp| {
            let xs = linspace(sp.lo, sp.hi, n_samples)?;
            let points = xs
                .into_iter()
                .map(|x| Ok([x, eval(sp.form, x, sizes)?]))
                .collect::<Result<Vec<_>>>()?;
            Ok(CurveSamples {
                name: sp.name.to_string(),
                view: View::Continuous,
                case: Some(sp.case),
                formula: sp.form.name().to_string(),
                domain: [sp.lo, sp.hi],
                points,
            })
        })
        .collect()
}

/// Largest NI any matrix with these class sizes reaches at index value `x`.
pub fn upper_envelope(map: IndexMap, sizes: ClassSizes, x: f64) -> Result<f64> {
    let split = match map {
        IndexMap::Precision => sizes.positive_fraction(),
        _ => 0.5,
    };
    let [left, right] = &specs(map, sizes)[..2] else {
        unreachable!("every map has two upper curves")
    };
    let sp = if x <= split { left } else { right };
    eval(sp.form, x, sizes)
}

/// Values of the two upper curves at their junction, left then right.
pub fn beta_junction(map: IndexMap, sizes: ClassSizes) -> Result<(f64, f64)> {
    require_ordered(sizes)?;
    let sp = specs(map, sizes);
    let x = sp[0].hi;
    Ok((eval(sp[0].form, x, sizes)?, eval(sp[1].form, x, sizes)?))
}
