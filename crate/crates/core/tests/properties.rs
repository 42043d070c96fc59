use nmi_core::closed_form::{
    accuracy_from_pr, closed_form_ni, ni_from_counts, ni_from_fr, ni_from_pr, precision_from_fr,
};
use nmi_core::info_theory::{normalized_mutual_information, CountMatrix};
use nmi_core::{ClassSizes, ConfusionMatrix};
use proptest::prelude::*;

fn binary() -> impl Strategy<Value = ConfusionMatrix> {
    (0u64..500, 0u64..500, 0u64..500, 0u64..500)
        .prop_filter("both classes present", |(tp, fp, tn, fn_)| tp + fn_ > 0 && fp + tn > 0)
        .prop_map(|(tp, fp, tn, fn_)| ConfusionMatrix::from_counts(tp, fp, tn, fn_).unwrap())
}

fn square(max_k: usize) -> impl Strategy<Value = (usize, Vec<f64>)> {
    (2..=max_k).prop_flat_map(|k| {
        prop::collection::vec(0u32..50, k * k)
            .prop_filter("at least two target classes", move |c| {
                (0..k).filter(|i| c[i * k..(i + 1) * k].iter().any(|&x| x > 0)).count() >= 2
            })
            .prop_map(move |c| (k, c.into_iter().map(f64::from).collect()))
    })
}

fn ni(k: usize, c: Vec<f64>) -> f64 {
    normalized_mutual_information(&CountMatrix::from_row_major(k, c).unwrap()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn ni_is_a_fraction((k, c) in square(5)) {
        let v = ni(k, c);
        prop_assert!((0.0..=1.0).contains(&v));
    }

    #[test]
    fn relabeling_predictions_keeps_ni((k, c) in square(5), shift in 1usize..5) {
        let shifted: Vec<f64> = (0..k * k).map(|idx| {
            let (i, j) = (idx / k, idx % k);
            c[i * k + (j + shift) % k]
        }).collect();
        prop_assert!((ni(k, c) - ni(k, shifted)).abs() < 1e-12);
    }

    #[test]
    fn relabeling_classes_keeps_ni((k, c) in square(5), shift in 1usize..5) {
        // the same permutation on targets and predictions
        let p = |i: usize| (i + shift) % k;
        let relabeled: Vec<f64> = (0..k * k).map(|idx| c[p(idx / k) * k + p(idx % k)]).collect();
        prop_assert!((ni(k, c) - ni(k, relabeled)).abs() < 1e-12);
    }

    #[test]
    fn scaling_counts_keeps_ni((k, c) in square(4), s in 1u32..1000) {
        let scaled = c.iter().map(|x| x * f64::from(s)).collect();
        prop_assert!((ni(k, c) - ni(k, scaled)).abs() < 1e-12);
    }

    #[test]
    fn unused_class_keeps_ni((k, c) in square(4)) {
        let k2 = k + 1;
        let mut padded = vec![0.0; k2 * k2];
        for i in 0..k {
            for j in 0..k {
                padded[i * k2 + j] = c[i * k + j];
            }
        }
        prop_assert!((ni(k, c) - ni(k2, padded)).abs() < 1e-12);
    }

    #[test]
    fn flipping_is_an_involution_preserving_ni(cm in binary()) {
        let f = cm.flip_predictions();
        prop_assert_eq!(f.flip_predictions(), cm);
        prop_assert!((f.accuracy() - (1.0 - cm.accuracy())).abs() < 1e-15);
        prop_assert!((ni_from_counts(&f).unwrap() - ni_from_counts(&cm).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn closed_form_matches_entropy_definition(cm in binary()) {
        let direct = normalized_mutual_information(&cm.to_count_matrix()).unwrap();
        let cf = closed_form_ni(&cm).unwrap();
        prop_assert!((cf.value.unwrap() - direct).abs() < 1e-9, "{:?}", cf);
    }

    #[test]
    fn accuracy_bridge(cm in binary()) {
        if let (Some(p), Some(r)) = (cm.precision(), cm.recall()) {
            if p > 0.0 {
                let a = accuracy_from_pr(p, r, cm.class_sizes()).unwrap();
                prop_assert!((a - cm.accuracy()).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn precision_bridge(cm in binary()) {
        let (f, r) = (cm.false_alarm().unwrap(), cm.recall().unwrap());
        if let Some(p) = cm.precision() {
            prop_assert!((precision_from_fr(f, r, cm.class_sizes()).unwrap() - p).abs() < 1e-12);
        }
    }

    #[test]
    fn two_index_forms_match_counts(cm in binary()) {
        let direct = ni_from_counts(&cm).unwrap();
        let sizes = cm.class_sizes();
        let fr = ni_from_fr(cm.false_alarm().unwrap(), cm.recall().unwrap(), sizes).unwrap();
        prop_assert!((fr - direct).abs() < 1e-9);
        if let Some(p) = cm.precision().filter(|&p| p > 0.0) {
            let pr = ni_from_pr(p, cm.recall().unwrap(), sizes).unwrap();
            prop_assert!((pr - direct).abs() < 1e-9);
        }
    }

    #[test]
    fn fr_form_mirror_symmetry(f in 0.0f64..=1.0, r in 0.0f64..=1.0, w1 in 1.0f64..1e4, w2 in 1.0f64..1e4) {
        let s = ClassSizes::new(w1, w2).unwrap();
        let a = ni_from_fr(f, r, s).unwrap();
        let b = ni_from_fr(1.0 - f, 1.0 - r, s).unwrap();
        prop_assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn fractional_matrices_agree_too(tp in 0.0f64..10.0, fp in 0.0f64..10.0, tn in 0.0f64..10.0, fn_ in 0.0f64..10.0) {
        prop_assume!(tp + fn_ > 1e-3 && fp + tn > 1e-3);
        let cm = ConfusionMatrix::new(tp, fp, tn, fn_).unwrap();
        let direct = normalized_mutual_information(&cm.to_count_matrix()).unwrap();
        prop_assert!((closed_form_ni(&cm).unwrap().value.unwrap() - direct).abs() < 1e-9);
    }
}
