use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{max_of, Scalar};

/// Closed bounded interval `[lo, hi]`. Singletons have `lo == hi`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval<S> {
    pub lo: S,
    pub hi: S,
}

impl<S: Scalar> Interval<S> {
    pub fn new(lo: S, hi: S) -> Result<Self> {
        if !(lo <= hi) || !lo.is_finite() || !hi.is_finite() {
            return Err(Error::EmptyCut {
                index: 0,
                alpha: f64::NAN,
                lower: lo.as_f64(),
                upper: hi.as_f64(),
            });
        }
        Ok(Self { lo, hi })
    }

    /// Builds the interval without checking `lo <= hi`.
    pub(crate) fn raw(lo: S, hi: S) -> Self {
        Self { lo, hi }
    }

    pub fn point(x: S) -> Self {
        Self { lo: x, hi: x }
    }

    pub fn contains(&self, x: S) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn contains_interval(&self, other: &Self) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn width(&self) -> S {
        self.hi - self.lo
    }

    /// Hausdorff distance between two intervals: the larger endpoint gap.
    pub fn hausdorff(&self, other: &Self) -> S {
        max_of((self.lo - other.lo).abs(), (self.hi - other.hi).abs())
    }
}
