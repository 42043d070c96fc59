//! Reading confusion matrices from files.
//!
//! * CSV pairs: one observation per record, `target,predicted`, with an
//!   optional header row. Labels are trimmed strings.
//! * JSON matrix: `{"tp":..,"fp":..,"tn":..,"fn":..}` with an optional
//!   `"name"`, a list of such objects, or `{"models": [...]}`.

use std::io::Read;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::metrics::{from_label_pairs, Alphabet, ConfusionMatrix, LabelPair};

/// Parse `target,predicted` records.
pub fn read_label_pairs<R: Read>(reader: R, has_header: bool) -> Result<Vec<LabelPair>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(has_header)
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(reader);
    let mut out = Vec::new();
    for rec in rdr.records() {
        let rec = rec?;
        if rec.len() != 2 {
            let line = rec.position().map(|p| p.line()).unwrap_or(0);
            return Err(Error::Parse(format!(
                "line {line}: expected 2 fields (target,predicted), found {}",
                rec.len()
            )));
        }
        out.push(LabelPair::new(&rec[0], &rec[1]));
    }
    Ok(out)
}

/// Tally a CSV of label pairs into a confusion matrix.
pub fn matrix_from_csv<R: Read>(reader: R, has_header: bool, alphabet: &Alphabet) -> Result<ConfusionMatrix> {
    let pairs = read_label_pairs(reader, has_header)?;
    from_label_pairs(&pairs, alphabet)
}

/// A matrix read from JSON, with its name if one was given.
#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct NamedMatrix {
    #[serde(default)]
    pub name: Option<String>,
    #[serde(flatten)]
    pub cm: ConfusionMatrix,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum MatrixDoc {
    One(NamedMatrix),
    Many(Vec<NamedMatrix>),
    Wrapped { models: Vec<NamedMatrix> },
}

/// Parse one or more matrices. Unnamed matrices are named `M1`, `M2`, ...
/// by position.
pub fn matrices_from_json<R: Read>(reader: R) -> Result<Vec<NamedMatrix>> {
    let doc: MatrixDoc = serde_json::from_reader(reader)?;
    let mut list = match doc {
        MatrixDoc::One(m) => vec![m],
        MatrixDoc::Many(v) | MatrixDoc::Wrapped { models: v } => v,
    };
    if list.is_empty() {
        return Err(Error::EmptyInput("no matrices in JSON input"));
    }
    for (i, m) in list.iter_mut().enumerate() {
        m.name.get_or_insert_with(|| format!("M{}", i + 1));
    }
    Ok(list)
}
