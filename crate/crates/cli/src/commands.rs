use std::fmt::{self, Write as _};
use std::fs::File;
use std::io::BufReader;
use std::path::Path;

use nmi_core::closed_form::{classify_case, closed_form_ni};
use nmi_core::evaluation::{fixed, rank, table_report, CompareMode, ModelRecord, TableFormat};
use nmi_core::export::{build_map, MapConfig, MapKind};
use nmi_core::ingest::{matrices_from_json, matrix_from_csv};
use nmi_core::metrics::Alphabet;
use nmi_core::relation_maps::{IndexMap, SurfaceMode};
use nmi_core::{ClassSizes, ConfusionMatrix, Error, Execution};
use serde_json::json;

use crate::args::{InputArgs, InputFormat, MapArgs, MapName, Mode, OutputFormat, RankArgs, ReportArgs};

/// Exit status 2 for usage and parse problems, 3 for domain errors.
#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError {
            code: if e.is_domain() { 3 } else { 2 },
            message: e.to_string(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn usage(message: impl Into<String>) -> CliError {
    CliError {
        code: 2,
        message: message.into(),
    }
}

fn in_file(path: &Path, e: impl Into<Error>) -> CliError {
    let e = e.into();
    let code = if e.is_domain() { 3 } else { 2 };
    CliError {
        code,
        message: format!("{}: {e}", path.display()),
    }
}

fn infer_format(path: &Path) -> Result<InputFormat> {
    match path.extension().and_then(|e| e.to_str()) {
        Some("csv") => Ok(InputFormat::CsvPairs),
        Some("json") => Ok(InputFormat::JsonMatrix),
        _ => Err(usage(format!(
            "{}: cannot infer input format; pass --format csv-pairs or --format json-matrix",
            path.display()
        ))),
    }
}

fn load_models(a: &InputArgs) -> Result<Vec<ModelRecord>> {
    if let (Some(tp), Some(fp), Some(tn), Some(fn_)) = (a.tp, a.fp, a.tn, a.fn_) {
        return Ok(vec![ModelRecord::new("M", ConfusionMatrix::new(tp, fp, tn, fn_)?)]);
    }
    if a.input.is_empty() {
        return Err(usage("no input: pass --input FILE or --tp/--fp/--tn/--fn"));
    }
    let alphabet = match &a.negative_label {
        Some(neg) => Alphabet::new(a.positive_label.clone(), neg.clone()),
        None => Alphabet::positive(a.positive_label.clone()),
    };
    let mut models = Vec::new();
    for path in &a.input {
        let format = match a.format {
            Some(f) => f,
            None => infer_format(path)?,
        };
        let file = File::open(path).map_err(|e| in_file(path, e))?;
        let reader = BufReader::new(file);
        match format {
            InputFormat::CsvPairs => {
                let cm = matrix_from_csv(reader, a.header, &alphabet).map_err(|e| in_file(path, e))?;
                let name = path.file_stem().map(|s| s.to_string_lossy().into_owned());
                models.push(ModelRecord::new(name.unwrap_or_else(|| "M".into()), cm));
            }
            InputFormat::JsonMatrix => {
                for m in matrices_from_json(reader).map_err(|e| in_file(path, e))? {
                    models.push(ModelRecord::new(m.name.unwrap_or_default(), m.cm));
                }
            }
        }
    }
    Ok(models)
}

fn table_format(o: OutputFormat) -> TableFormat {
    match o {
        OutputFormat::Text => TableFormat::Text,
        OutputFormat::Csv => TableFormat::Csv,
        OutputFormat::Json => TableFormat::Json,
    }
}

fn opt(v: Option<f64>, d: usize) -> String {
    v.map(|x| fixed(x, d)).unwrap_or_else(|| "-".into())
}

fn rounded(v: Option<f64>, d: usize) -> serde_json::Value {
    v.and_then(|x| fixed(x, d).parse::<f64>().ok()).into()
}

fn count(v: f64) -> serde_json::Value {
    if v.fract() == 0.0 && v.abs() < 1e15 {
        json!(v as i64)
    } else {
        json!(v)
    }
}

struct ReportRow {
    model: ModelRecord,
    case: String,
    condition: &'static str,
    form: &'static str,
    direct: f64,
    closed: f64,
}

fn report_rows(models: Vec<ModelRecord>) -> Result<Vec<ReportRow>> {
    models
        .into_iter()
        .map(|m| {
            let direct = m.ni()?;
            let cf = closed_form_ni(m.cm())?;
            let closed = cf.value.ok_or(Error::ZeroTargetEntropy)?;
            Ok(ReportRow {
                case: cf.case.to_string(),
                condition: cf.case.condition(),
                form: cf.form.name(),
                direct,
                closed,
                model: m,
            })
        })
        .collect()
}

pub fn report(a: &ReportArgs) -> Result<String> {
    let rows = report_rows(load_models(&a.input)?)?;
    let d = a.decimals;
    let mut out = String::new();
    match a.output {
        OutputFormat::Text => {
            for (i, row) in rows.iter().enumerate() {
                let r = row.model.report();
                let [tp, fp, tn, fn_] = row.model.cm().cells();
                if i > 0 {
                    out.push('\n');
                }
                let _ = writeln!(out, "model        {}", row.model.label());
                let _ = writeln!(out, "counts       TP={tp} FP={fp} TN={tn} FN={fn_}");
                let _ = writeln!(out, "case         {} ({})", row.case, row.condition);
                let _ = writeln!(out, "accuracy     {}", fixed(r.accuracy, d));
                let _ = writeln!(out, "precision    {}", opt(r.precision, d));
                let _ = writeln!(out, "recall       {}", opt(r.recall, d));
                let _ = writeln!(out, "false alarm  {}", opt(r.false_alarm, d));
                let _ = writeln!(out, "NI direct    {}", fixed(row.direct, d));
                let _ = writeln!(out, "NI closed    {}  [{}]", fixed(row.closed, d), row.form);
                let _ = writeln!(out, "|delta|      {:.3e}", (row.direct - row.closed).abs());
            }
        }
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let header = [
                "name", "TP", "FP", "TN", "FN", "case", "form", "accuracy", "precision", "recall",
                "false_alarm", "ni_direct", "ni_closed_form", "abs_diff",
            ];
            w.write_record(header).map_err(Error::from)?;
            for row in &rows {
                let r = row.model.report();
                let cells = row.model.cm().cells().map(|c| count(c).to_string());
                let blank = |v: Option<f64>| v.map(|x| fixed(x, d)).unwrap_or_default();
                let rec = [
                    row.model.label(),
                    cells[0].clone(),
                    cells[1].clone(),
                    cells[2].clone(),
                    cells[3].clone(),
                    row.case.clone(),
                    row.form.to_string(),
                    fixed(r.accuracy, d),
                    blank(r.precision),
                    blank(r.recall),
                    blank(r.false_alarm),
                    fixed(row.direct, d),
                    fixed(row.closed, d),
                    format!("{:e}", (row.direct - row.closed).abs()),
                ];
                w.write_record(&rec).map_err(Error::from)?;
            }
            let bytes = w.into_inner().map_err(|e| usage(e.to_string()))?;
            out = String::from_utf8(bytes).expect("csv output is utf-8");
        }
        OutputFormat::Json => {
            let items: Vec<_> = rows
                .iter()
                .map(|row| {
                    let r = row.model.report();
                    let [tp, fp, tn, fn_] = row.model.cm().cells();
                    json!({
                        "name": row.model.label(),
                        "tp": count(tp), "fp": count(fp), "tn": count(tn), "fn": count(fn_),
                        "case": row.case,
                        "form": row.form,
                        "accuracy": rounded(Some(r.accuracy), d),
                        "precision": rounded(r.precision, d),
                        "recall": rounded(r.recall, d),
                        "false_alarm": rounded(r.false_alarm, d),
                        "ni_direct": rounded(Some(row.direct), d),
                        "ni_closed_form": rounded(Some(row.closed), d),
                        "abs_diff": (row.direct - row.closed).abs(),
                    })
                })
                .collect();
            out = serde_json::to_string_pretty(&json!({ "models": items })).map_err(Error::from)? + "\n";
        }
    }
    Ok(out)
}

pub fn ni(a: &ReportArgs) -> Result<String> {
    let models = load_models(&a.input)?;
    let values = models.iter().map(|m| m.ni().map(|v| (m.label(), v))).collect::<std::result::Result<Vec<_>, Error>>()?;
    let d = a.decimals;
    Ok(match a.output {
        OutputFormat::Text if values.len() == 1 => format!("{}\n", fixed(values[0].1, d)),
        OutputFormat::Text => values.iter().map(|(n, v)| format!("{n}\t{}\n", fixed(*v, d))).collect(),
        OutputFormat::Csv => {
            let body: String = values.iter().map(|(n, v)| format!("{n},{}\n", fixed(*v, d))).collect();
            format!("name,NI\n{body}")
        }
        OutputFormat::Json => {
            let items: Vec<_> = values.iter().map(|(n, v)| json!({ "name": n, "ni": rounded(Some(*v), d) })).collect();
            serde_json::to_string_pretty(&items).map_err(Error::from)? + "\n"
        }
    })
}

pub fn case(a: &ReportArgs) -> Result<String> {
    let models = load_models(&a.input)?;
    let cases: Vec<_> = models.iter().map(|m| (m.label(), classify_case(m.cm()))).collect();
    Ok(match a.output {
        OutputFormat::Text if cases.len() == 1 => format!("{} ({})\n", cases[0].1, cases[0].1.condition()),
        OutputFormat::Text => cases.iter().map(|(n, c)| format!("{n}\t{c} ({})\n", c.condition())).collect(),
        OutputFormat::Csv => {
            let body: String = cases.iter().map(|(n, c)| format!("{n},{c}\n")).collect();
            format!("name,case\n{body}")
        }
        OutputFormat::Json => {
            let items: Vec<_> = cases
                .iter()
                .map(|(n, c)| json!({ "name": n, "case": c.to_string(), "condition": c.condition() }))
                .collect();
            serde_json::to_string_pretty(&items).map_err(Error::from)? + "\n"
        }
    })
}

pub fn rank_cmd(a: &RankArgs) -> Result<String> {
    let models = load_models(&a.input)?;
    let mode = if a.literal_def4 {
        CompareMode::Literal
    } else {
        CompareMode::Normalized
    };
    let ranking = rank(&models, mode)?;
    let table = table_report(&ranking.entries, table_format(a.output), a.decimals)?;
    Ok(match a.output {
        OutputFormat::Text => {
            let mut out = format!("{ranking}\n\n");
            for p in &ranking.rationale {
                let _ = writeln!(out, "{} > {}: {}", p.higher, p.lower, p.rule);
            }
            if ranking.cycle_resolved {
                out.push_str("note: the pairwise rule was cyclic on this input; ordered by (NI, accuracy, name)\n");
            }
            out.push('\n');
            out + &table
        }
        OutputFormat::Csv => {
            let mut out = String::from("position,name,rule_vs_next\n");
            for (i, e) in ranking.entries.iter().enumerate() {
                let rule = ranking.rationale.get(i).map(|p| format!("{:?}", p.rule)).unwrap_or_default();
                let _ = writeln!(out, "{},{},{rule}", i + 1, e.label());
            }
            out
        }
        OutputFormat::Json => {
            let table: serde_json::Value = serde_json::from_str(&table).map_err(Error::from)?;
            let doc = json!({
                "ranking": ranking.to_string(),
                "mode": mode,
                "order": ranking.entries.iter().map(ModelRecord::label).collect::<Vec<_>>(),
                "rationale": ranking.rationale,
                "cycle_resolved": ranking.cycle_resolved,
                "table": table,
            });
            serde_json::to_string_pretty(&doc).map_err(Error::from)? + "\n"
        }
    })
}

pub fn map(a: &MapArgs) -> Result<String> {
    let (mut w1, mut w2) = (a.w1, a.w2);
    if w1 < w2 {
        if !a.swap_classes {
            return Err(usage(format!(
                "maps need w1 >= w2 (got w1 = {w1}, w2 = {w2}); pass --swap-classes to exchange them"
            )));
        }
        std::mem::swap(&mut w1, &mut w2);
    }
    let sizes = ClassSizes::ordered(w1, w2)?;
    let kind = match a.map {
        MapName::Acc => MapKind::Index(IndexMap::Accuracy),
        MapName::Pre => MapKind::Index(IndexMap::Precision),
        MapName::Rec => MapKind::Index(IndexMap::Recall),
        MapName::PrRegion => MapKind::PrRegion,
        MapName::PrSurface => MapKind::PrSurface,
        MapName::FrSurface => MapKind::FrSurface,
    };
    let mut cfg = MapConfig::new(sizes);
    cfg.samples = a.samples;
    cfg.nx = a.nx;
    cfg.ny = a.ny;
    cfg.cap = a.cap;
    cfg.mode = match a.mode {
        Mode::Ideal => SurfaceMode::Ideal,
        Mode::Actual => SurfaceMode::Actual,
    };
    cfg.exec = if a.sequential {
        Execution::Sequential
    } else {
        Execution::default()
    };
    let ds = build_map(kind, &cfg).map_err(|e| match e {
        Error::InvalidGrid(_) => usage(e.to_string()),
        other => other.into(),
    })?;
    let files = ds.write(&a.out_dir)?;
    Ok(files.iter().map(|p| format!("{}\n", p.display())).collect())
}
