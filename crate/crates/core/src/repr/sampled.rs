use std::sync::Arc;

use serde::Serialize;

use super::{CutCurve1D, FuzzyNumber};
use crate::error::{Error, Result};
use crate::grid::AlphaGrid;
use crate::interval::Interval;
use crate::scalar::Scalar;

/// Fuzzy number given by endpoint samples on an α-grid, linear in α between nodes.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampledFuzzy1D<S: Scalar> {
    grid: AlphaGrid<S>,
    lower: Vec<S>,
    upper: Vec<S>,
}

impl<S: Scalar> SampledFuzzy1D<S> {
    /// Validates and builds a sampled number.
    ///
    /// Checks, in order: grid shape, sample counts, finiteness and nonempty cuts,
    /// then nestedness (lower nondecreasing, upper nonincreasing).
    pub fn new(grid: AlphaGrid<S>, lower: Vec<S>, upper: Vec<S>) -> Result<Self> {
        // grids built through `AlphaGrid` are already valid; re-check in case of deserialized input
        let grid = AlphaGrid::new(grid.levels().to_vec())?;
        for got in [lower.len(), upper.len()] {
            if got != grid.len() {
                return Err(Error::LengthMismatch {
                    expected: grid.len(),
                    got,
                });
            }
        }
        for (i, ((&lo, &hi), &a)) in lower.iter().zip(&upper).zip(grid.levels()).enumerate() {
            if !(lo <= hi) || !lo.is_finite() || !hi.is_finite() {
                return Err(Error::EmptyCut {
                    index: i,
                    alpha: a.as_f64(),
                    lower: lo.as_f64(),
                    upper: hi.as_f64(),
                });
            }
        }
        for i in 1..grid.len() {
            if lower[i] < lower[i - 1] || upper[i] > upper[i - 1] {
                return Err(Error::NonNested {
                    index: i,
                    alpha: grid.levels()[i].as_f64(),
                });
            }
        }
        Ok(Self { grid, lower, upper })
    }

    /// Samples endpoint functions on `grid`.
    pub fn from_fns(
        grid: AlphaGrid<S>,
        lower: impl Fn(S) -> S,
        upper: impl Fn(S) -> S,
    ) -> Result<Self> {
        let lo = grid.levels().iter().map(|&a| lower(a)).collect();
        let hi = grid.levels().iter().map(|&a| upper(a)).collect();
        Self::new(grid, lo, hi)
    }

    /// Cuts of `u` at the levels of `grid`.
    pub fn sample<F: FuzzyNumber<S> + ?Sized>(u: &F, grid: &AlphaGrid<S>) -> Result<Self> {
        let cuts: Vec<_> = grid.levels().iter().map(|&a| u.cut(a)).collect();
        Self::new(
            grid.clone(),
            cuts.iter().map(|c| c.lo).collect(),
            cuts.iter().map(|c| c.hi).collect(),
        )
    }

    /// Every cut equals `{x}`.
    pub fn crisp(x: S) -> Self {
        Self::constant(Interval::point(x))
    }

    /// Every cut equals `cut`.
    pub fn constant(cut: Interval<S>) -> Self {
        let grid = AlphaGrid::uniform(2).expect("two-level grid");
        Self {
            grid,
            lower: vec![cut.lo; 2],
            upper: vec![cut.hi; 2],
        }
    }

    /// Triangular number with support `[a, c]` and peak `b`.
    pub fn triangular(a: S, b: S, c: S) -> Result<Self> {
        Self::new(AlphaGrid::uniform(2)?, vec![a, b], vec![c, b])
    }

    pub fn grid(&self) -> &AlphaGrid<S> {
        &self.grid
    }

    pub fn lower(&self) -> &[S] {
        &self.lower
    }

    pub fn upper(&self) -> &[S] {
        &self.upper
    }

    /// Same number re-expressed on a finer grid (must contain this grid's nodes to stay exact).
    pub fn resampled(&self, grid: &AlphaGrid<S>) -> Self {
        if *grid == self.grid {
            return self.clone();
        }
        let (lower, upper) = grid
            .levels()
            .iter()
            .map(|&a| {
                let c = self.cut(a);
                (c.lo, c.hi)
            })
            .unzip();
        Self {
            grid: grid.clone(),
            lower,
            upper,
        }
    }

    /// Piecewise-linear curve view with grid nodes as breakpoints.
    pub fn to_curve(&self) -> CutCurve1D<S> {
        let lo = Arc::new(self.clone());
        let hi = Arc::clone(&lo);
        let breaks = self.grid.levels()[1..self.grid.len() - 1].to_vec();
        CutCurve1D::new(move |a| lo.cut(a).lo, move |a| hi.cut(a).hi)
            .with_breakpoints(breaks)
            .with_piecewise_linear(true)
    }
}

fn lerp<S: Scalar>(a: S, b: S, t: S) -> S {
    if t == S::zero() {
        a
    } else {
        a + (b - a) * t
    }
}

impl<S: Scalar> FuzzyNumber<S> for SampledFuzzy1D<S> {
    fn cut(&self, alpha: S) -> Interval<S> {
        let (i, t) = self.grid.bracket(alpha);
        if t == S::zero() {
            return Interval::raw(self.lower[i], self.upper[i]);
        }
        let lo = lerp(self.lower[i], self.lower[i + 1], t);
        let hi = lerp(self.upper[i], self.upper[i + 1], t);
        // rounding must not break lo <= hi on degenerate segments
        Interval::raw(lo.min(hi), hi.max(lo))
    }

    fn critical_levels(&self) -> Vec<S> {
        self.grid.levels().to_vec()
    }

    fn piecewise_linear(&self) -> bool {
        true
    }

    fn probe_levels(&self) -> Vec<S> {
        self.grid.levels().to_vec()
    }

    /// Exact on the piecewise-linear representation: walks up the grid until the
    /// cut stops containing `x`, then solves the crossing inside that segment.
    fn membership_at(&self, x: S) -> S {
        let levels = self.grid.levels();
        if !(self.lower[0] <= x && x <= self.upper[0]) {
            return S::zero();
        }
        for i in 0..levels.len() - 1 {
            let (lo1, hi1) = (self.lower[i + 1], self.upper[i + 1]);
            if lo1 <= x && x <= hi1 {
                continue;
            }
            let (a0, a1) = (levels[i], levels[i + 1]);
            let mut t = S::one();
            if x < lo1 {
                t = t.min((x - self.lower[i]) / (lo1 - self.lower[i]));
            }
            if x > hi1 {
                t = t.min((self.upper[i] - x) / (self.upper[i] - hi1));
            }
            let alpha = a0 + (a1 - a0) * t.max(S::zero());
            // x is outside the cut at a1, so the answer lies strictly below it
            return if alpha >= a1 {
                a1 - (a1 - a0) * S::epsilon()
            } else {
                alpha
            };
        }
        S::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid3() -> AlphaGrid<f64> {
        AlphaGrid::new(vec![0.0, 0.5, 1.0]).unwrap()
    }

    fn triangle() -> SampledFuzzy1D<f64> {
        SampledFuzzy1D::new(grid3(), vec![0.0, 0.25, 0.5], vec![1.0, 0.75, 0.5]).unwrap()
    }

    #[test]
    fn constant_box() {
        let u = SampledFuzzy1D::new(grid3(), vec![0.0; 3], vec![1.0; 3]).unwrap();
        for a in [0.0, 0.3, 0.5, 1.0] {
            assert_eq!(u.alpha_cut(a).unwrap(), Interval { lo: 0.0, hi: 1.0 });
        }
    }

    #[test]
    fn construction_errors() {
        let err = SampledFuzzy1D::new(grid3(), vec![0.0, 0.6, 0.5], vec![1.0; 3]).unwrap_err();
        assert!(matches!(err, Error::NonNested { index: 2, .. }));
        let err = SampledFuzzy1D::new(grid3(), vec![0.0, 0.0, 2.0], vec![1.0; 3]).unwrap_err();
        assert!(matches!(err, Error::EmptyCut { index: 2, .. }));
        let err = SampledFuzzy1D::new(grid3(), vec![0.0; 2], vec![1.0; 3]).unwrap_err();
        assert!(matches!(
            err,
            Error::LengthMismatch {
                expected: 3,
                got: 2
            }
        ));
        let bad_grid = AlphaGrid::new(vec![0.0, 1.0]).unwrap();
        assert!(SampledFuzzy1D::new(bad_grid, vec![0.0; 3], vec![1.0; 3]).is_err());
    }

    #[test]
    fn interpolated_cut() {
        let u = triangle();
        assert_eq!(
            u.alpha_cut(0.25).unwrap(),
            Interval {
                lo: 0.125,
                hi: 0.875
            }
        );
        assert!(u.alpha_cut(1.5).is_err());
        assert!(u.alpha_cut(-0.1).is_err());
    }

    #[test]
    fn node_cuts_are_stored_samples() {
        let u = triangle();
        for (i, &a) in u.grid().levels().iter().enumerate() {
            let c = u.cut(a);
            assert_eq!((c.lo, c.hi), (u.lower()[i], u.upper()[i]));
        }
    }

    #[test]
    fn membership_values() {
        let u = triangle();
        assert_eq!(u.membership_at(0.5), 1.0);
        assert_eq!(u.membership_at(2.0), 0.0);
        assert_eq!(u.membership_at(-1e-12), 0.0);
        assert!((u.membership_at(0.125) - 0.25).abs() < 1e-15);
        assert!((u.membership_at(0.9) - 0.2).abs() < 1e-15);
    }

    #[test]
    fn membership_on_flat_top() {
        let u = SampledFuzzy1D::triangular(0.0, 1.0, 2.0).unwrap();
        assert_eq!(u.membership_at(1.0), 1.0);
        let v = SampledFuzzy1D::constant(Interval { lo: -1.0, hi: 1.0 });
        assert_eq!(v.membership_at(0.3), 1.0);
    }

    #[test]
    fn curve_view_matches_samples() {
        let u = triangle();
        let c = u.to_curve();
        for k in 0..=64 {
            let a = k as f64 / 64.0;
            assert_eq!(c.cut(a), u.cut(a));
        }
    }

    #[test]
    fn works_in_f32() {
        let u = SampledFuzzy1D::<f32>::triangular(0.0, 0.5, 1.0).unwrap();
        assert_eq!(u.alpha_cut(0.5).unwrap(), Interval { lo: 0.25, hi: 0.75 });
        assert!((u.membership_at(0.25) - 0.5).abs() < 1e-6);
    }
}
