//! Plot-ready datasets: long-form CSV plus a JSON manifest.
//!
//! CSV columns are `x,y,value,series`. The `series` prefix says what a row is:
//!
//! * `continuous:<curve>`: a sampled curve, `(x, y)` with `value` empty.
//! * `point:<label>`: a labelled special point, `value` empty.
//! * `integer:<set>`: an enumerated integer matrix, `value` empty.
//! * `continuous:<surface>`: a surface cell with NI in `value`; empty when
//!   undefined. Cells off the attainable region use the suffix `-infeasible`.
//!
//! Numbers are written with 17 significant digits so values round-trip.
//! Bytes depend only on the configuration, never on thread count or time.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::metrics::ClassSizes;
use crate::relation_maps::{
    boundary_curves, envelope_scatter, feasible_region_pr, integer_pr_points, special_points,
    surface_fr, surface_pr, CurveSamples, IndexMap, SpecialPoint, SurfaceGrid, SurfaceMode,
    DEFAULT_ENUMERATION_CAP, DEFAULT_GRID,
};

pub const TOOL: &str = "nmi";
pub const CSV_HEADER: &str = "x,y,value,series";

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub x: f64,
    pub y: f64,
    pub value: Option<f64>,
    pub series: String,
}

/// Rows plus the metadata that goes into the manifest.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub name: String,
    pub sizes: ClassSizes,
    pub formulas: Vec<String>,
    pub parameters: BTreeMap<String, serde_json::Value>,
    pub rows: Vec<Row>,
}

/// 17 significant digits, exponent form.
pub fn sig17(v: f64) -> String {
    format!("{v:.16e}")
}

fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().fold(String::with_capacity(64), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

impl Dataset {
    pub fn new(name: impl Into<String>, sizes: ClassSizes) -> Self {
        Self {
            name: name.into(),
            sizes,
            formulas: Vec::new(),
            parameters: BTreeMap::new(),
            rows: Vec::new(),
        }
    }

    fn formula(&mut self, f: &str) {
        if !self.formulas.iter().any(|g| g == f) {
            self.formulas.push(f.to_string());
        }
    }

    pub fn param(&mut self, key: &str, value: impl Into<serde_json::Value>) {
        self.parameters.insert(key.to_string(), value.into());
    }

    pub fn push_curve(&mut self, c: &CurveSamples) {
        self.formula(&c.formula);
        let series = format!("{}:{}", c.view, c.name);
        self.rows.extend(c.points.iter().map(|&[x, y]| Row {
            x,
            y,
            value: None,
            series: series.clone(),
        }));
    }

    pub fn push_point(&mut self, p: &SpecialPoint) {
        self.rows.push(Row {
            x: p.x,
            y: p.y,
            value: None,
            series: format!("point:{}", p.name),
        });
    }

    pub fn push_integer(&mut self, set: &str, points: &[[f64; 2]]) {
        self.rows.extend(points.iter().map(|&[x, y]| Row {
            x,
            y,
            value: None,
            series: format!("integer:{set}"),
        }));
    }

    pub fn push_surface(&mut self, name: &str, g: &SurfaceGrid) {
        self.formula(g.formula);
        self.rows.extend(g.cells().map(|(x, y, value, feasible)| Row {
            x,
            y,
            value,
            series: if feasible {
                format!("continuous:{name}")
            } else {
                format!("continuous:{name}-infeasible")
            },
        }));
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(self.rows.len() * 64);
        out.push_str(CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            let value = r.value.map(sig17).unwrap_or_default();
            let _ = writeln!(out, "{},{},{},{}", sig17(r.x), sig17(r.y), value, r.series);
        }
        out
    }

    /// Hash of everything that determines the rows.
    pub fn config_hash(&self) -> String {
        let cfg = serde_json::json!({
            "dataset": self.name,
            "w1": self.sizes.w1,
            "w2": self.sizes.w2,
            "parameters": self.parameters,
        });
        sha256_hex(cfg.to_string().as_bytes())
    }

    pub fn manifest(&self, csv_file: &str, csv: &str) -> Manifest {
        Manifest {
            tool: TOOL,
            version: env!("CARGO_PKG_VERSION"),
            dataset: self.name.clone(),
            w1: self.sizes.w1,
            w2: self.sizes.w2,
            formulas: self.formulas.clone(),
            parameters: self.parameters.clone(),
            config_sha256: self.config_hash(),
            columns: CSV_HEADER.split(',').collect(),
            file: csv_file.to_string(),
            file_sha256: sha256_hex(csv.as_bytes()),
            rows: self.rows.len(),
        }
    }

    /// Write `<name>.csv` and `<name>.manifest.json` into `dir`.
    pub fn write(&self, dir: &Path) -> Result<Vec<PathBuf>> {
        fs::create_dir_all(dir)?;
        let csv_name = format!("{}.csv", self.name);
        let csv = self.to_csv();
        let manifest = serde_json::to_string_pretty(&self.manifest(&csv_name, &csv))? + "\n";
        let csv_path = dir.join(&csv_name);
        let man_path = dir.join(format!("{}.manifest.json", self.name));
        fs::write(&csv_path, csv)?;
        fs::write(&man_path, manifest)?;
        Ok(vec![csv_path, man_path])
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Manifest {
    pub tool: &'static str,
    pub version: &'static str,
    pub dataset: String,
    pub w1: f64,
    pub w2: f64,
    pub formulas: Vec<String>,
    pub parameters: BTreeMap<String, serde_json::Value>,
    pub config_sha256: String,
    pub columns: Vec<&'static str>,
    pub file: String,
    pub file_sha256: String,
    pub rows: usize,
}

/// The datasets the `map` command can produce.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum MapKind {
    Index(IndexMap),
    PrRegion,
    PrSurface,
    FrSurface,
}

impl MapKind {
    pub fn name(self) -> &'static str {
        match self {
            MapKind::Index(m) => m.short(),
            MapKind::PrRegion => "pr-region",
            MapKind::PrSurface => "pr-surface",
            MapKind::FrSurface => "fr-surface",
        }
    }
}

impl FromStr for MapKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pr-region" => Ok(MapKind::PrRegion),
            "pr-surface" => Ok(MapKind::PrSurface),
            "fr-surface" => Ok(MapKind::FrSurface),
            other => other.parse().map(MapKind::Index),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MapConfig {
    pub sizes: ClassSizes,
    /// Samples per curve.
    pub samples: usize,
    pub nx: usize,
    pub ny: usize,
    pub mode: SurfaceMode,
    /// Largest `w1 + w2` for which the integer view is enumerated.
    pub cap: u64,
    pub exec: Execution,
}

impl MapConfig {
    pub fn new(sizes: ClassSizes) -> Self {
        Self {
            sizes,
            samples: DEFAULT_GRID,
            nx: DEFAULT_GRID,
            ny: DEFAULT_GRID,
            mode: SurfaceMode::Actual,
            cap: DEFAULT_ENUMERATION_CAP,
            exec: Execution::default(),
        }
    }

    /// Integer class sizes within the cap, if any.
    fn integer_sizes(&self) -> Option<(u64, u64)> {
        let (w1, w2) = (self.sizes.w1, self.sizes.w2);
        let whole = w1.fract() == 0.0 && w2.fract() == 0.0;
        (whole && w1 + w2 <= self.cap as f64).then_some((w1 as u64, w2 as u64))
    }
}

/// Build the dataset for one map. Index maps and the region carry an
/// integer view when the class sizes are whole numbers within the cap.
pub fn build_map(kind: MapKind, cfg: &MapConfig) -> Result<Dataset> {
    let mut ds = Dataset::new(format!("map-{}", kind.name()), cfg.sizes);
    match kind {
        MapKind::Index(m) => {
            ds.param("samples", cfg.samples);
            for c in boundary_curves(m, cfg.sizes, cfg.samples)? {
                ds.push_curve(&c);
            }
            for p in special_points(m, cfg.sizes)? {
                ds.push_point(&p);
            }
            let integer = cfg.integer_sizes();
            ds.param("integer_view", integer.is_some());
            if let Some((w1, w2)) = integer {
                ds.param("cap", cfg.cap);
                let sc = envelope_scatter(m, w1, w2, cfg.cap, cfg.exec)?;
                ds.push_integer("scatter", &sc.points);
            }
        }
        MapKind::PrRegion => {
            ds.param("samples", cfg.samples);
            let reg = feasible_region_pr(cfg.sizes, cfg.samples)?;
            ds.push_point(&reg.alpha_ap);
            for c in &reg.curves {
                ds.push_curve(c);
            }
            let pairs: Vec<serde_json::Value> = reg
                .matches
                .iter()
                .filter(|m| m.matches)
                .map(|m| serde_json::json!({ "quoted": m.quoted, "derived": m.derived }))
                .collect();
            ds.param("curve_matches", pairs);
            let integer = cfg.integer_sizes();
            ds.param("integer_view", integer.is_some());
            if let Some((w1, w2)) = integer {
                ds.param("cap", cfg.cap);
                ds.push_integer("feasible", &integer_pr_points(w1, w2));
            }
        }
        MapKind::PrSurface => {
            ds.param("nx", cfg.nx);
            ds.param("ny", cfg.ny);
            ds.param("mode", cfg.mode.to_string());
            let g = surface_pr(cfg.sizes, cfg.nx, cfg.ny, cfg.mode, cfg.exec)?;
            ds.push_surface(&format!("pr-surface-{}", cfg.mode), &g);
        }
        MapKind::FrSurface => {
            ds.param("nx", cfg.nx);
            ds.param("ny", cfg.ny);
            let g = surface_fr(cfg.sizes, cfg.nx, cfg.ny, cfg.exec)?;
            ds.push_surface("fr-surface", &g);
        }
    }
    Ok(ds)
}
