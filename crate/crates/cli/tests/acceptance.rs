//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each,
//! and exits nonzero if any failed.
//!
//! `cargo test -p nmi-cli --test acceptance`

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use nmi_core::closed_form::{
    accuracy_from_pr, classify_case, closed_form_ni, precision_from_fr, reconstruct, CaseId,
};
use nmi_core::evaluation::{complement, ModelRecord};
use nmi_core::info_theory::normalized_mutual_information;
use nmi_core::relation_maps::{
    beta_junction, envelope_scatter, feasible_region_pr, pr_feasible, region_oracle, surface_fr,
    surface_pr, IndexMap, SurfaceMode,
};
use nmi_core::verify::{oracle_sweep, sweep_size, SweepDepth};
use nmi_core::{ClassSizes, ConfusionMatrix, Execution};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn nmi() -> Command {
    Command::new(env!("CARGO_BIN_EXE_nmi"))
}

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .display()
        .to_string()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(limit: Duration, took: Duration) -> Result<(), String> {
    ensure(took <= limit, || format!("took {took:.2?}, limit {limit:?}"))
}

const TABLE: [(&str, [u64; 4], [f64; 4]); 6] = [
    ("M1", [25, 5, 45, 25], [0.7, 0.8333, 0.5, 0.1468]),
    ("M2", [30, 10, 40, 20], [0.7, 0.75, 0.6, 0.1245]),
    ("M3", [15, 5, 45, 35], [0.6, 0.75, 0.3, 0.0468]),
    ("M4", [15, 45, 5, 35], [0.2, 0.25, 0.3, 0.2958]),
    ("M5", [12, 26, 24, 38], [0.36, 0.3158, 0.24, 0.0611]),
    ("M6", [26, 12, 38, 24], [0.64, 0.6842, 0.52, 0.0611]),
];

fn model(name: &str, c: [u64; 4]) -> ModelRecord {
    ModelRecord::new(name, ConfusionMatrix::from_counts(c[0], c[1], c[2], c[3]).unwrap())
}

fn quad(m: &ModelRecord) -> [f64; 4] {
    let r = m.report();
    [r.accuracy, r.precision.unwrap(), r.recall.unwrap(), r.ni.unwrap()]
}

fn table_reproduction() -> Outcome {
    let t = Instant::now();
    let tol = 5e-5;
    for (name, counts, printed) in TABLE {
        let got = quad(&model(name, counts));
        for (k, (g, p)) in got.iter().zip(printed).enumerate() {
            ensure((g - p).abs() <= tol, || format!("{name} column {k}: {g} vs {p}"))?;
        }
    }
    // complements: accuracy, recall and NI as quoted; precision is ours
    let quoted = [("M4", 3, [0.8, 0.7, 0.2958], 0.875), ("M5", 4, [0.64, 0.76, 0.0611], 0.6129)];
    let mut notes = Vec::new();
    for (name, idx, [a, r, ni], ours) in quoted {
        let c = complement(&model(name, TABLE[idx].1));
        let [ga, gp, gr, gni] = quad(&c);
        for (g, p) in [(ga, a), (gr, r), (gni, ni)] {
            ensure((g - p).abs() <= tol, || format!("-{name}: {g} vs {p}"))?;
        }
        ensure((gp - ours).abs() <= tol, || format!("-{name} precision {gp}"))?;
        notes.push(format!("-{name} precision {gp:.4} (flagged)"));
    }
    within(Duration::from_secs(1), t.elapsed())?;
    Ok(format!("6 rows within 5e-5; {}", notes.join(", ")))
}

fn ranking() -> Outcome {
    let t = Instant::now();
    let out = nmi().args(["rank", "--input", &fixture("table2.json")]).output().unwrap();
    ensure(out.status.success(), || String::from_utf8_lossy(&out.stderr).into_owned())?;
    let stdout = String::from_utf8(out.stdout).unwrap();
    let first = stdout.lines().next().unwrap_or_default();
    ensure(first == "-M4 > M1 > M2 > -M5 > M6 > M3", || format!("got {first:?}"))?;
    within(Duration::from_secs(1), t.elapsed())?;
    Ok(first.to_string())
}

fn oracle_equivalence() -> Outcome {
    let t = Instant::now();
    let r = oracle_sweep(200, SweepDepth::Dispatched, Execution::Sequential);
    let took = t.elapsed();
    ensure(r.matrices == sweep_size(200), || format!("visited {} matrices", r.matrices))?;
    ensure(r.passed(), || format!("quarantined forms: {:?}", r.quarantined))?;
    within(Duration::from_secs(60), took)?;
    // every alternative form too, on a smaller range
    let all = oracle_sweep(120, SweepDepth::AllForms, Execution::default());
    ensure(all.passed(), || format!("quarantined forms: {:?}", all.quarantined))?;
    Ok(format!(
        "{} matrices, max |diff| {:.2e}, single-threaded {took:.1?}; all {} forms on {} matrices (total <= 120), max |diff| {:.2e}",
        r.matrices,
        r.max_abs_diff(),
        all.forms.len(),
        all.matrices,
        all.max_abs_diff()
    ))
}

fn random_matrix(rng: &mut ChaCha8Rng) -> ConfusionMatrix {
    loop {
        let c: [u64; 4] = std::array::from_fn(|_| {
            // mix small and large magnitudes, with zeros
            match rng.random_range(0..4) {
                0 => 0,
                1 => rng.random_range(1..10),
                2 => rng.random_range(1..1_000),
                _ => rng.random_range(1..1_000_000),
            }
        });
        if c[0] + c[3] > 0 && c[1] + c[2] > 0 {
            return ConfusionMatrix::from_counts(c[0], c[1], c[2], c[3]).unwrap();
        }
    }
}

fn bridges() -> Outcome {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let (mut acc_checked, mut pre_checked, mut worst) = (0, 0, 0.0f64);
    for _ in 0..100_000 {
        let cm = random_matrix(&mut rng);
        let s = cm.class_sizes();
        let r = cm.recall().unwrap();
        if let Some(p) = cm.precision().filter(|&p| p > 0.0) {
            let d = (accuracy_from_pr(p, r, s).unwrap() - cm.accuracy()).abs();
            worst = worst.max(d);
            ensure(d <= 1e-12, || format!("accuracy bridge off by {d:e} at {:?}", cm.cells()))?;
            acc_checked += 1;
        }
        if let Some(p) = cm.precision() {
            let d = (precision_from_fr(cm.false_alarm().unwrap(), r, s).unwrap() - p).abs();
            worst = worst.max(d);
            ensure(d <= 1e-12, || format!("precision bridge off by {d:e} at {:?}", cm.cells()))?;
            pre_checked += 1;
        }
    }
    within(Duration::from_secs(5), t.elapsed())?;
    Ok(format!("accuracy bridge {acc_checked}, precision bridge {pre_checked} matrices, max |diff| {worst:.1e}"))
}

fn special_cases() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut pos = || rng.random_range(1u64..100_000);
    for (case, expect) in [(CaseId::Case1, 0.0), (CaseId::Case2, 0.0), (CaseId::Case3, 1.0), (CaseId::Case4, 1.0)] {
        for _ in 0..100 {
            let (a, b) = (pos(), pos());
            let [tp, fp, tn, fn_] = match case {
                CaseId::Case1 => [0, 0, a, b],
                CaseId::Case2 => [a, b, 0, 0],
                CaseId::Case3 => [0, a, 0, b],
                _ => [a, 0, b, 0],
            };
            let cm = ConfusionMatrix::from_counts(tp, fp, tn, fn_).unwrap();
            ensure(classify_case(&cm) == case, || format!("{:?} misclassified", cm.cells()))?;
            let direct = normalized_mutual_information(&cm.to_count_matrix()).unwrap();
            let closed = closed_form_ni(&cm).unwrap().value.unwrap();
            ensure(direct == expect && closed == expect, || {
                format!("{case} at {:?}: direct {direct}, closed {closed}", cm.cells())
            })?;
        }
    }
    Ok("400 matrices, both paths exact".into())
}

fn envelope() -> Outcome {
    let t = Instant::now();
    let (mut pairs, mut points) = (0, 0usize);
    for total in 2..=60u64 {
        for w2 in 1..=total / 2 {
            let w1 = total - w2;
            let s = ClassSizes::ordered(w1 as f64, w2 as f64).unwrap();
            for m in IndexMap::ALL {
                let sc = envelope_scatter(m, w1, w2, 200, Execution::Sequential).map_err(|e| e.to_string())?;
                points += sc.points.len();
                let (l, r) = beta_junction(m, s).unwrap();
                ensure((l - r).abs() <= 1e-9, || format!("{m} junction {l} vs {r} at ({w1}, {w2})"))?;
            }
            pairs += 1;
        }
    }
    within(Duration::from_secs(30), t.elapsed())?;
    Ok(format!("{pairs} class-size pairs, {points} points in bounds, junctions continuous"))
}

fn feasible_region() -> Outcome {
    let mut pairs = 0;
    for total in 2..=100u64 {
        for w2 in 1..=total / 2 {
            let v = region_oracle(total - w2, w2).unwrap();
            ensure(v.holds(), || format!("{v:?}"))?;
            pairs += 1;
        }
    }
    let reg = feasible_region_pr(ClassSizes::new(60.0, 40.0).unwrap(), 201).unwrap();
    let matched: Vec<String> = reg
        .matches
        .iter()
        .filter(|m| m.matches)
        .map(|m| format!("{}={}", m.quoted, m.derived))
        .collect();
    ensure(matched == ["Gamma_alphaRP1=fp=w2", "Gamma_alphaRP2=fp=1"], || format!("{matched:?}"))?;
    Ok(format!("{pairs} class-size pairs agree; second edge is the FP = 1 locus ({})", matched.join(", ")))
}

fn surfaces() -> Outcome {
    for (w1, w2) in [(50.0, 50.0), (60.0, 40.0), (90.0, 10.0)] {
        let s = ClassSizes::new(w1, w2).unwrap();
        let fr = surface_fr(s, 201, 201, Execution::default()).unwrap();
        for i in 0..201 {
            let d = fr.get(i, i).unwrap();
            ensure(d.abs() <= 1e-12, || format!("fr diagonal {d} at {i}"))?;
            for j in 0..201 {
                let (a, b) = (fr.get(i, j).unwrap(), fr.get(200 - i, 200 - j).unwrap());
                ensure((a - b).abs() <= 1e-12, || format!("fr mirror {a} vs {b}"))?;
            }
        }
        let pr = surface_pr(s, 201, 201, SurfaceMode::Actual, Execution::default()).unwrap();
        for (p, r, v, feasible) in pr.cells() {
            let oracle = if p == 0.0 { r == 0.0 } else { reconstruct::from_pr(p, r, s).is_ok() };
            ensure(feasible == oracle && feasible == pr_feasible(p, r, s), || {
                format!("mask disagrees at ({p}, {r}) for ({w1}, {w2})")
            })?;
            ensure(feasible || v.is_none(), || format!("infeasible cell ({p}, {r}) has a value"))?;
        }
    }
    Ok("3 class-size pairs on 201x201 grids".into())
}

fn determinism() -> Outcome {
    let dirs: Vec<tempfile::TempDir> = (0..3).map(|_| tempfile::tempdir().unwrap()).collect();
    let maps = ["acc", "pre", "rec", "pr-region", "pr-surface", "fr-surface"];
    for (k, dir) in dirs.iter().enumerate() {
        for m in maps {
            let mut cmd = nmi();
            cmd.args(["map", m, "--w1", "60", "--w2", "40", "--mode", "ideal", "--out-dir"]).arg(dir.path());
            if k == 2 {
                cmd.arg("--sequential");
            }
            let out = cmd.output().unwrap();
            ensure(out.status.success(), || String::from_utf8_lossy(&out.stderr).into_owned())?;
        }
    }
    let mut files = 0;
    for entry in std::fs::read_dir(dirs[0].path()).unwrap() {
        let name = entry.unwrap().file_name();
        let a = std::fs::read(dirs[0].path().join(&name)).unwrap();
        for other in &dirs[1..] {
            let b = std::fs::read(other.path().join(&name)).unwrap();
            ensure(a == b, || format!("{} differs", name.to_string_lossy()))?;
        }
        files += 1;
    }
    ensure(files == 2 * maps.len(), || format!("{files} files written"))?;
    Ok(format!("{files} files byte-identical across 3 runs (one single-threaded)"))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("1 table reproduction", table_reproduction),
        ("2 example ranking", ranking),
        ("3 oracle equivalence (total <= 200)", oracle_equivalence),
        ("4 bridge identities", bridges),
        ("5 special cases 1-4", special_cases),
        ("6 envelope property", envelope),
        ("7 feasible region", feasible_region),
        ("8 surface sanity", surfaces),
        ("9 determinism", determinism),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let t = Instant::now();
        let outcome = run();
        let took = t.elapsed();
        match outcome {
            Ok(detail) => println!("PASS  {name} [{took:.2?}]: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name} [{took:.2?}]: {why}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 9 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
