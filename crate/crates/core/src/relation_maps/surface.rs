use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::{pr_feasible, unit_grid};
use crate::closed_form::{ni_from_fr, ni_from_pr, ni_from_pr_continued};
use crate::error::{Error, Result};
use crate::exec::{map_indexed, Execution};
use crate::metrics::ClassSizes;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SurfaceMode {
    /// The expression continued over the whole square with `x log|x|`.
    Ideal,
    /// Only attainable operating points carry a value.
    Actual,
}

impl fmt::Display for SurfaceMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SurfaceMode::Ideal => "ideal",
            SurfaceMode::Actual => "actual",
        })
    }
}

impl FromStr for SurfaceMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ideal" => Ok(SurfaceMode::Ideal),
            "actual" => Ok(SurfaceMode::Actual),
            other => Err(Error::Parse(format!("unknown surface mode {other:?}"))),
        }
    }
}

/// NI sampled on a rectangular grid over two indexes.
///
/// Cells are stored row-major with `x` varying fastest. `values[k]` is
/// `None` where NI is undefined. `feasible[k]` is false where no matrix
/// attains the operating point; such cells are `None` in actual mode and
/// hold the continued expression in ideal mode. Feasible values lie in
/// `[0, 1]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SurfaceGrid {
    pub x_axis: &'static str,
    pub y_axis: &'static str,
    pub xs: Vec<f64>,
    pub ys: Vec<f64>,
    pub values: Vec<Option<f64>>,
    pub feasible: Vec<bool>,
    pub sizes: ClassSizes,
    pub formula: &'static str,
    pub mode: SurfaceMode,
}

impl SurfaceGrid {
    pub fn get(&self, ix: usize, iy: usize) -> Option<f64> {
        self.values[iy * self.xs.len() + ix]
    }

    pub fn is_feasible(&self, ix: usize, iy: usize) -> bool {
        self.feasible[iy * self.xs.len() + ix]
    }

    /// `(x, y, value, feasible)` in storage order.
    pub fn cells(&self) -> impl Iterator<Item = (f64, f64, Option<f64>, bool)> + '_ {
        let nx = self.xs.len();
        (0..self.values.len()).map(move |k| {
            (self.xs[k % nx], self.ys[k / nx], self.values[k], self.feasible[k])
        })
    }
}

fn check_sizes(sizes: ClassSizes) -> Result<()> {
    if sizes.w1 > 0.0 && sizes.w2 > 0.0 {
        Ok(())
    } else {
        Err(Error::ZeroTargetEntropy)
    }
}

/// NI over (precision, recall). Precision is on the x axis.
pub fn surface_pr(
    sizes: ClassSizes,
    nx: usize,
    ny: usize,
    mode: SurfaceMode,
    exec: Execution,
) -> Result<SurfaceGrid> {
    check_sizes(sizes)?;
    let xs = unit_grid(nx)?;
    let ys = unit_grid(ny)?;
    let cells = map_indexed(exec, nx * ny, |k| {
        let (p, r) = (xs[k % nx], ys[k / nx]);
        let feasible = pr_feasible(p, r, sizes);
        let value = match (feasible, mode) {
            (true, _) => ni_from_pr(p, r, sizes).ok(),
            (false, SurfaceMode::Ideal) => ni_from_pr_continued(p, r, sizes).ok(),
            (false, SurfaceMode::Actual) => None,
        };
        (value, feasible)
    });
    let (values, feasible) = cells.into_iter().unzip();
    Ok(SurfaceGrid {
        x_axis: "precision",
        y_axis: "recall",
        xs,
        ys,
        values,
        feasible,
        sizes,
        formula: "precision-recall",
        mode,
    })
}

/// NI over (false alarm, recall). Every cell is attainable, so ideal and
/// actual coincide.
pub fn surface_fr(sizes: ClassSizes, nx: usize, ny: usize, exec: Execution) -> Result<SurfaceGrid> {
    check_sizes(sizes)?;
    let xs = unit_grid(nx)?;
    let ys = unit_grid(ny)?;
    let values = map_indexed(exec, nx * ny, |k| ni_from_fr(xs[k % nx], ys[k / nx], sizes).ok());
    Ok(SurfaceGrid {
        x_axis: "false_alarm",
        y_axis: "recall",
        xs,
        ys,
        feasible: vec![true; values.len()],
        values,
        sizes,
        formula: "false-alarm-recall",
        mode: SurfaceMode::Actual,
    })
}
