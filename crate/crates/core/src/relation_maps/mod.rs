//! Sampled data behind the NI-versus-index relation maps.
//!
//! Curves and surfaces are continuous relaxations over real-valued counts.
//! The enumeration oracles ([`envelope_scatter`], [`region_oracle`]) walk
//! integer confusion matrices and check the continuous objects against them.
//! Every emitted curve value is reproducible from a reconstructed matrix.

mod curves;
mod envelope;
mod points;
mod region;
mod surface;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::closed_form::CaseId;
use crate::error::{Error, Result};
use crate::metrics::ClassSizes;

pub use curves::{beta_junction, boundary_curves, upper_envelope};
pub use envelope::{envelope_scatter, EnvelopeScatter, DEFAULT_ENUMERATION_CAP, ENVELOPE_TOLERANCE};
pub use points::{beta_a_as_quoted, beta_r_as_quoted, special_points};
pub use region::{
    eq16_recall, eq17_recall, feasible_region_pr, integer_pr_points, pr_feasible, region_oracle,
    CurveMatch, FeasibleRegion, RegionVerdict,
};
pub use surface::{surface_fr, surface_pr, SurfaceGrid, SurfaceMode};

/// Default samples per axis for surfaces.
pub const DEFAULT_GRID: usize = 201;

/// Which index is on the horizontal axis of an NI map.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum IndexMap {
    Accuracy,
    Precision,
    Recall,
}

impl IndexMap {
    pub const ALL: [IndexMap; 3] = [IndexMap::Accuracy, IndexMap::Precision, IndexMap::Recall];

    pub fn short(self) -> &'static str {
        match self {
            IndexMap::Accuracy => "acc",
            IndexMap::Precision => "pre",
            IndexMap::Recall => "rec",
        }
    }

    /// Suffix used in point and curve labels.
    fn tag(self) -> &'static str {
        match self {
            IndexMap::Accuracy => "A",
            IndexMap::Precision => "P",
            IndexMap::Recall => "R",
        }
    }
}

impl fmt::Display for IndexMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short())
    }
}

impl FromStr for IndexMap {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "acc" | "accuracy" => Ok(IndexMap::Accuracy),
            "pre" | "precision" => Ok(IndexMap::Precision),
            "rec" | "recall" => Ok(IndexMap::Recall),
            other => Err(Error::Parse(format!("unknown index map {other:?}"))),
        }
    }
}

/// Continuous (real-valued counts) or integer (enumerated) data.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum View {
    Continuous,
    Integer,
}

impl fmt::Display for View {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            View::Continuous => "continuous",
            View::Integer => "integer",
        })
    }
}

/// A labelled point on a map. For `alpha_AP` the ordinate is recall.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpecialPoint {
    pub name: String,
    pub x: f64,
    pub y: f64,
}

impl SpecialPoint {
    fn new(name: impl Into<String>, x: f64, y: f64) -> Self {
        Self {
            name: name.into(),
            x,
            y,
        }
    }
}

/// A sampled curve with strictly increasing abscissae.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurveSamples {
    pub name: String,
    pub view: View,
    /// The case whose closed form generates the curve, if any.
    pub case: Option<CaseId>,
    pub formula: String,
    pub domain: [f64; 2],
    pub points: Vec<[f64; 2]>,
}

/// `n` evenly spaced values on `[lo, hi]`, endpoints exact.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Result<Vec<f64>> {
    if n < 2 {
        return Err(Error::InvalidGrid(format!("need at least 2 samples, got {n}")));
    }
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(Error::InvalidGrid(format!("empty interval [{lo}, {hi}]")));
    }
    let last = (n - 1) as f64;
    Ok((0..n)
        .map(|i| match i {
            0 => lo,
            _ if i == n - 1 => hi,
            _ => lo + (hi - lo) * (i as f64 / last),
        })
        .collect())
}

/// `n` values on `[0, 1]` with `u[n-1-i] == 1 - u[i]` exactly for the lower half.
pub fn unit_grid(n: usize) -> Result<Vec<f64>> {
    if n < 2 {
        return Err(Error::InvalidGrid(format!("need at least 2 samples, got {n}")));
    }
    let last = n - 1;
    Ok((0..n)
        .map(|i| {
            if 2 * i <= last {
                i as f64 / last as f64
            } else {
                1.0 - (last - i) as f64 / last as f64
            }
        })
        .collect())
}

fn require_ordered(sizes: ClassSizes) -> Result<()> {
    ClassSizes::ordered(sizes.w1, sizes.w2).map(|_| ())
}
