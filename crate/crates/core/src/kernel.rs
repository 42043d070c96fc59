//! Numeric kernels shared by every entropy and closed-form evaluator.

/// `x * log2(x)` with the convention `0 * log2(0) = 0`.
///
/// The zero case is an explicit branch so that no evaluator ever sees
/// `0 * -inf = NaN`. Negative arguments yield NaN.
#[inline]
pub fn xlog2x(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * x.log2()
    }
}

/// `x * log2(|x|)`: the real part of `x * log2(x)` continued to negative `x`.
///
/// Only used for the "ideal" precision/recall surface, which evaluates the
/// closed form outside the region where counts are nonnegative.
#[inline]
pub fn xlog2x_abs(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * x.abs().log2()
    }
}

/// Neumaier-compensated accumulator. Summation order is the caller's
/// iteration order, so results are reproducible bit-for-bit.
#[derive(Debug, Default, Clone, Copy)]
pub struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = CompensatedSum::new();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}

pub fn compensated_sum<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    values.into_iter().collect::<CompensatedSum>().value()
}

/// Clamp a ratio into `[0, 1]` when it overshoots by at most `slack`;
/// larger excursions are returned untouched so callers can detect them.
#[inline]
pub(crate) fn clamp_unit(x: f64, slack: f64) -> f64 {
    if x < 0.0 && x >= -slack {
        0.0
    } else if x > 1.0 && x <= 1.0 + slack {
        1.0
    } else {
        x
    }
}
