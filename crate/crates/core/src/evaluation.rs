//! Model selection with NI and accuracy.
//!
//! Pairwise rule for models `a` and `b`:
//!
//! 1. `NI(a) > NI(b)` and `acc(a) > 0.5`: choose `a`.
//! 2. `NI(a) > NI(b)` and `acc(a) < 0.5`: choose `b`.
//! 3. `NI(a) = NI(b)` and `acc(a) > acc(b)`: choose `a`.
//!
//! [`CompareMode::Normalized`] first replaces every model with accuracy
//! below 0.5 by its complement (all predictions inverted), which has the
//! same NI and accuracy `1 - acc`; only items 1 and 3 can then fire.
//! [`CompareMode::Literal`] applies the three items to the raw models.
//! Accuracy exactly 0.5 counts as "not smaller than 0.5". Full ties are
//! broken by name, then by the complement flag.

use std::cmp::Ordering;
use std::fmt::{self, Write as _};
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::metrics::{ConfusionMatrix, MetricsReport};

/// NI values closer than this are treated as equal.
pub const NI_TIE_TOLERANCE: f64 = 1e-12;

/// A named classifier with its metrics, always derived from `cm`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModelRecord {
    name: String,
    cm: ConfusionMatrix,
    complemented: bool,
    report: MetricsReport,
}

impl ModelRecord {
    pub fn new(name: impl Into<String>, cm: ConfusionMatrix) -> Self {
        Self::build(name.into(), cm, false)
    }

    fn build(name: String, cm: ConfusionMatrix, complemented: bool) -> Self {
        Self {
            report: MetricsReport::from_matrix(&cm),
            name,
            cm,
            complemented,
        }
    }

    /// The name as given, without any complement marker.
    pub fn name(&self) -> &str {
        &self.name
    }

    /// `-name` for a complemented record.
    pub fn label(&self) -> String {
        if self.complemented {
            format!("-{}", self.name)
        } else {
            self.name.clone()
        }
    }

    pub fn cm(&self) -> &ConfusionMatrix {
        &self.cm
    }

    pub fn complemented(&self) -> bool {
        self.complemented
    }

    pub fn report(&self) -> &MetricsReport {
        &self.report
    }

    pub fn accuracy(&self) -> f64 {
        self.report.accuracy
    }

    pub fn ni(&self) -> Result<f64> {
        self.report.ni.ok_or_else(|| Error::UndefinedNi(self.label()))
    }
}

/// The model with every prediction inverted. NI is unchanged.
pub fn complement(m: &ModelRecord) -> ModelRecord {
    ModelRecord::build(m.name.clone(), m.cm.flip_predictions(), !m.complemented)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CompareMode {
    #[default]
    Normalized,
    Literal,
}

/// Which part of the selection rule decided a comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Rule {
    Item1,
    Item2,
    Item3,
    TieBreak,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rule::Item1 => "item 1 (higher NI, accuracy not below 0.5)",
            Rule::Item2 => "item 2 (higher NI but accuracy below 0.5)",
            Rule::Item3 => "item 3 (equal NI, higher accuracy)",
            Rule::TieBreak => "tie-break (equal NI and accuracy; name order)",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Winner {
    First,
    Second,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Comparison {
    pub winner: Winner,
    pub rule: Rule,
}

/// Replace a model whose accuracy is below 0.5 by its complement.
pub fn normalize(m: &ModelRecord) -> ModelRecord {
    if m.accuracy() < 0.5 {
        complement(m)
    } else {
        m.clone()
    }
}

fn tie_break(a: &ModelRecord, b: &ModelRecord) -> Winner {
    match a.name.cmp(&b.name).then(a.complemented.cmp(&b.complemented)) {
        Ordering::Greater => Winner::Second,
        _ => Winner::First,
    }
}

/// Compare two records already in the form they should be judged in.
fn compare_raw(a: &ModelRecord, b: &ModelRecord) -> Result<Comparison> {
    let (na, nb) = (a.ni()?, b.ni()?);
    let pick = |winner, rule| Ok(Comparison { winner, rule });
    if (na - nb).abs() > NI_TIE_TOLERANCE {
        let (hi, winner_if_good, winner_if_bad) = if na > nb {
            (a, Winner::First, Winner::Second)
        } else {
            (b, Winner::Second, Winner::First)
        };
        return if hi.accuracy() < 0.5 {
            pick(winner_if_bad, Rule::Item2)
        } else {
            pick(winner_if_good, Rule::Item1)
        };
    }
    match a.accuracy().partial_cmp(&b.accuracy()) {
        Some(Ordering::Greater) => pick(Winner::First, Rule::Item3),
        Some(Ordering::Less) => pick(Winner::Second, Rule::Item3),
        _ => pick(tie_break(a, b), Rule::TieBreak),
    }
}

/// Which of `a` and `b` is preferred, and why. In normalized mode the
/// comparison is between the normalized records.
pub fn compare(a: &ModelRecord, b: &ModelRecord, mode: CompareMode) -> Result<Comparison> {
    match mode {
        CompareMode::Literal => compare_raw(a, b),
        CompareMode::Normalized => compare_raw(&normalize(a), &normalize(b)),
    }
}

/// Why `higher` is placed directly above `lower`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairRationale {
    pub higher: String,
    pub lower: String,
    pub rule: Rule,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Ranking {
    pub mode: CompareMode,
    /// Best first. Normalized mode holds the normalized records.
    pub entries: Vec<ModelRecord>,
    pub rationale: Vec<PairRationale>,
    /// Set when the pairwise rule was not transitive on this input and the
    /// order fell back to the (NI, accuracy, name) key.
    pub cycle_resolved: bool,
}

impl fmt::Display for Ranking {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = self.entries.iter().map(ModelRecord::label).collect();
        f.write_str(&labels.join(" > "))
    }
}

/// Order models best first by the pairwise rule.
///
/// The rule defines a tournament; it is a total order exactly when the win
/// counts are `0, 1, ..., n-1`, in which case sorting by wins reproduces it.
pub fn rank(models: &[ModelRecord], mode: CompareMode) -> Result<Ranking> {
    if models.is_empty() {
        return Err(Error::EmptyInput("no models to rank"));
    }
    let recs: Vec<ModelRecord> = match mode {
        CompareMode::Normalized => models.iter().map(normalize).collect(),
        CompareMode::Literal => models.to_vec(),
    };
    for r in &recs {
        r.ni()?;
    }
    let n = recs.len();
    let mut wins = vec![0usize; n];
    for i in 0..n {
        for j in i + 1..n {
            match compare_raw(&recs[i], &recs[j])?.winner {
                Winner::First => wins[i] += 1,
                Winner::Second => wins[j] += 1,
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| wins[j].cmp(&wins[i]));
    let transitive = order.iter().enumerate().all(|(pos, &i)| wins[i] == n - 1 - pos);
    if !transitive {
        order.sort_by(|&i, &j| {
            let (a, b) = (&recs[i], &recs[j]);
            let (na, nb) = (a.report.ni.unwrap_or(0.0), b.report.ni.unwrap_or(0.0));
            nb.total_cmp(&na)
                .then(b.accuracy().total_cmp(&a.accuracy()))
                .then(a.name.cmp(&b.name))
                .then(a.complemented.cmp(&b.complemented))
        });
    }
    let entries: Vec<ModelRecord> = order.into_iter().map(|i| recs[i].clone()).collect();
    let rationale = entries
        .windows(2)
        .map(|w| {
            Ok(PairRationale {
                higher: w[0].label(),
                lower: w[1].label(),
                rule: compare_raw(&w[0], &w[1])?.rule,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Ranking {
        mode,
        entries,
        rationale,
        cycle_resolved: !transitive,
    })
}

/// Output format for tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TableFormat {
    #[default]
    Text,
    Csv,
    Json,
}

impl FromStr for TableFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(TableFormat::Text),
            "csv" => Ok(TableFormat::Csv),
            "json" => Ok(TableFormat::Json),
            other => Err(Error::Parse(format!("unknown output format {other:?}"))),
        }
    }
}

pub const TABLE_COLUMNS: [&str; 9] = ["name", "TP", "FP", "TN", "FN", "accuracy", "precision", "recall", "NI"];

pub const COMPLEMENT_FOOTNOTE: &str = "* complemented model: precision is computed from the flipped \
matrix; widely quoted values for -M4 and -M5 (0.75, 0.6842) do not follow from it";

/// Fixed-point with `decimals` places (Rust rounds exact ties to even).
pub fn fixed(v: f64, decimals: usize) -> String {
    format!("{v:.decimals$}")
}

fn count(v: f64) -> String {
    if v.fract() == 0.0 && v.abs() < 1e15 {
        format!("{}", v as i64)
    } else {
        v.to_string()
    }
}

fn table_rows(models: &[ModelRecord], decimals: usize) -> Vec<[String; 9]> {
    let opt = |v: Option<f64>| v.map(|x| fixed(x, decimals)).unwrap_or_default();
    models
        .iter()
        .map(|m| {
            let [tp, fp, tn, fn_] = m.cm.cells();
            let r = &m.report;
            let name = if m.complemented { format!("{}*", m.label()) } else { m.label() };
            [
                name,
                count(tp),
                count(fp),
                count(tn),
                count(fn_),
                fixed(r.accuracy, decimals),
                opt(r.precision),
                opt(r.recall),
                opt(r.ni),
            ]
        })
        .collect()
}

/// The per-model table: name, counts, accuracy, precision, recall, NI.
/// Undefined ratios are `-` in text, empty in CSV and `null` in JSON.
pub fn table_report(models: &[ModelRecord], format: TableFormat, decimals: usize) -> Result<String> {
    let rows = table_rows(models, decimals);
    let footnote = models.iter().any(|m| m.complemented);
    match format {
        TableFormat::Text => {
            let mut widths = TABLE_COLUMNS.map(str::len);
            for row in &rows {
                for (w, cell) in widths.iter_mut().zip(row) {
                    *w = (*w).max(cell.len().max(1));
                }
            }
            let mut out = String::new();
            let mut line = |cells: Vec<&str>| {
                let parts: Vec<String> = cells
                    .iter()
                    .zip(widths)
                    .enumerate()
                    .map(|(i, (c, w))| {
                        let c = if c.is_empty() { "-" } else { c };
                        if i == 0 {
                            format!("{c:<w$}")
                        } else {
                            format!("{c:>w$}")
                        }
                    })
                    .collect();
                let _ = writeln!(out, "{}", parts.join("  ").trim_end());
            };
            line(TABLE_COLUMNS.to_vec());
            for row in &rows {
                line(row.iter().map(String::as_str).collect());
            }
            if footnote {
                let _ = writeln!(out, "\n{COMPLEMENT_FOOTNOTE}");
            }
            Ok(out)
        }
        TableFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(TABLE_COLUMNS)?;
            for row in &rows {
                w.write_record(row)?;
            }
            let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
            Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
        }
        TableFormat::Json => {
            let num = |s: &str| -> serde_json::Value {
                s.parse::<f64>()
                    .ok()
                    .and_then(serde_json::Number::from_f64)
                    .map(serde_json::Value::Number)
                    .unwrap_or(serde_json::Value::Null)
            };
            let items: Vec<serde_json::Value> = models
                .iter()
                .zip(&rows)
                .map(|(m, row)| {
                    let mut obj = serde_json::Map::new();
                    obj.insert("name".into(), m.label().into());
                    obj.insert("complemented".into(), m.complemented.into());
                    for (k, cell) in TABLE_COLUMNS.iter().zip(row).skip(1) {
                        obj.insert(k.to_lowercase(), num(cell));
                    }
                    serde_json::Value::Object(obj)
                })
                .collect();
            let mut doc = serde_json::json!({ "models": items });
            if footnote {
                doc["footnote"] = COMPLEMENT_FOOTNOTE.into();
            }
            Ok(serde_json::to_string_pretty(&doc)? + "\n")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table_ii() -> Vec<ModelRecord> {
        [
            ("M1", 25, 5, 45, 25),
            ("M2", 30, 10, 40, 20),
            ("M3", 15, 5, 45, 35),
            ("M4", 15, 45, 5, 35),
            ("M5", 12, 26, 24, 38),
            ("M6", 26, 12, 38, 24),
        ]
        .into_iter()
        .map(|(n, tp, fp, tn, fn_)| ModelRecord::new(n, ConfusionMatrix::from_counts(tp, fp, tn, fn_).unwrap()))
        .collect()
    }

    fn close(a: f64, b: f64) {
        assert!((a - b).abs() <= 5e-5, "{a} vs {b}");
    }

    #[test]
    fn complements() {
        let t = table_ii();
        let m4 = complement(&t[3]);
        assert_eq!(m4.label(), "-M4");
        close(m4.accuracy(), 0.8);
        close(m4.report().recall.unwrap(), 0.7);
        close(m4.ni().unwrap(), 0.2958);
        assert_eq!(m4.report().precision, Some(0.875));
        let m5 = complement(&t[4]);
        close(m5.accuracy(), 0.64);
        close(m5.report().recall.unwrap(), 0.76);
        close(m5.ni().unwrap(), 0.0611);
        assert_eq!(complement(&m4), t[3]);
        assert_eq!(m4.ni().unwrap(), t[3].ni().unwrap());
    }

    #[test]
    fn compare_examples() {
        let t = table_ii();
        let c = compare(&t[0], &t[1], CompareMode::Normalized).unwrap();
        assert_eq!((c.winner, c.rule), (Winner::First, Rule::Item1));
        let c = compare(&t[4], &t[5], CompareMode::Literal).unwrap();
        assert_eq!((c.winner, c.rule), (Winner::Second, Rule::Item3));
        // after normalization -M5 and M6 agree on NI and accuracy
        let c = compare(&t[4], &t[5], CompareMode::Normalized).unwrap();
        assert_eq!((c.winner, c.rule), (Winner::First, Rule::TieBreak));
        let c = compare(&t[3], &t[0], CompareMode::Literal).unwrap();
        assert_eq!((c.winner, c.rule), (Winner::Second, Rule::Item2));
        let c = compare(&t[2], &t[2], CompareMode::Normalized).unwrap();
        assert_eq!((c.winner, c.rule), (Winner::First, Rule::TieBreak));
    }

    #[test]
    fn table_ranking() {
        let r = rank(&table_ii(), CompareMode::Normalized).unwrap();
        assert_eq!(r.to_string(), "-M4 > M1 > M2 > -M5 > M6 > M3");
        assert!(!r.cycle_resolved);
        let rules: Vec<Rule> = r.rationale.iter().map(|p| p.rule).collect();
        assert_eq!(rules, [Rule::Item1, Rule::Item1, Rule::Item1, Rule::TieBreak, Rule::Item1]);
        let lit = rank(&table_ii(), CompareMode::Literal).unwrap();
        assert_eq!(lit.to_string(), "M1 > M2 > M6 > M3 > M5 > M4");
    }

    #[test]
    fn small_rankings() {
        let t = table_ii();
        assert_eq!(rank(&t[..1], CompareMode::Normalized).unwrap().to_string(), "M1");
        let dup = vec![t[2].clone(), ModelRecord::new("A", *t[2].cm())];
        let r = rank(&dup, CompareMode::Normalized).unwrap();
        assert_eq!(r.to_string(), "A > M3");
        assert_eq!(r.rationale[0].rule, Rule::TieBreak);
        assert!(rank(&[], CompareMode::Normalized).is_err());
        let flat = ModelRecord::new("F", ConfusionMatrix::from_counts(3, 0, 0, 2).unwrap());
        assert!(matches!(rank(&[flat], CompareMode::Normalized), Err(Error::UndefinedNi(_))));
    }

    #[test]
    fn report_rows() {
        let t = table_ii();
        let text = table_report(&t, TableFormat::Text, 4).unwrap();
        let m1 = text.lines().nth(1).unwrap();
        let cells: Vec<&str> = m1.split_whitespace().collect();
        assert_eq!(cells, ["M1", "25", "5", "45", "25", "0.7000", "0.8333", "0.5000", "0.1468"]);
        assert!(text.lines().nth(3).unwrap().ends_with("0.0468"));
        assert!(!text.contains('*'));
        let csv = table_report(&[], TableFormat::Csv, 4).unwrap();
        assert_eq!(csv, "name,TP,FP,TN,FN,accuracy,precision,recall,NI\n");
        let json = table_report(&[complement(&t[3])], TableFormat::Json, 4).unwrap();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["models"][0]["precision"], 0.875);
        assert_eq!(v["models"][0]["name"], "-M4");
        assert!(v["footnote"].is_string());
    }
}
