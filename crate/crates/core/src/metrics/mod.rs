//! Hausdorff distance on cuts, the supremum metric and level-convergence profiling.

mod convergence;
mod enclosure;

pub use convergence::{
    first_convergence_indices, level_convergence_report, ConvergenceEntry, ConvergenceReport,
    ConvergenceVerdict,
};
pub use enclosure::{
    d_infty_parametric, DInfError, Enclosure, DEFAULT_MAX_DEPTH, DEFAULT_TOL, SPLIT_BUDGET,
};

use serde::Serialize;

use crate::body::ConvexBody2D;
use crate::error::{Error, Result};
use crate::grid::AlphaGrid;
use crate::interval::Interval;
use crate::repr::{FuzzyNumber, SampledFuzzy1D};
use crate::scalar::{max_of, Scalar};

/// `H([x₁,x₂],[y₁,y₂]) = max{|x₁−y₁|, |x₂−y₂|}`.
pub fn hausdorff_interval<S: Scalar>(a: &Interval<S>, b: &Interval<S>) -> S {
    a.hausdorff(b)
}

/// Largest absolute support difference over the shared direction grid.
///
/// For compact convex sets this is a lower bound on the Hausdorff distance, exact when the
/// grid resolves the normal fans of both bodies.
pub fn hausdorff_support_2d<S: Scalar>(a: &ConvexBody2D<S>, b: &ConvexBody2D<S>) -> Result<S> {
    if a.directions() != b.directions() {
        return Err(Error::GridMismatch(a.directions(), b.directions()));
    }
    Ok(a.support_values()
        .iter()
        .zip(b.support_values())
        .fold(S::zero(), |acc, (&x, &y)| max_of(acc, (x - y).abs())))
}

/// [`hausdorff_support_2d`] restricted to the given direction indices.
pub fn hausdorff_support_2d_on<S: Scalar>(
    a: &ConvexBody2D<S>,
    b: &ConvexBody2D<S>,
    directions: &[usize],
) -> Result<S> {
    if a.directions() != b.directions() {
        return Err(Error::GridMismatch(a.directions(), b.directions()));
    }
    let m = a.directions();
    directions.iter().try_fold(S::zero(), |acc, &j| {
        if j >= m {
            return Err(Error::OutOfRange {
                what: "direction index",
                value: j as f64,
            });
        }
        Ok(max_of(
            acc,
            (a.support_values()[j] - b.support_values()[j]).abs(),
        ))
    })
}

/// One row of a level-distance profile.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LevelDistance<S> {
    pub alpha: S,
    #[serde(rename = "H")]
    pub h: S,
}

/// `H([u]_α, [v]_α)` at every level of `grid`.
pub fn level_distance_profile<S, U, V>(u: &U, v: &V, grid: &AlphaGrid<S>) -> Vec<LevelDistance<S>>
where
    S: Scalar,
    U: FuzzyNumber<S> + ?Sized,
    V: FuzzyNumber<S> + ?Sized,
{
    grid.levels()
        .iter()
        .map(|&alpha| LevelDistance {
            alpha,
            h: u.cut(alpha).hausdorff(&v.cut(alpha)),
        })
        .collect()
}

/// Exact `d∞` between sampled numbers, with the level where the maximum is attained.
///
/// Both numbers are refined to the union grid; the endpoint differences are then linear
/// between nodes, so the supremum sits on a node.
pub fn d_infty_sampled_at<S: Scalar>(u: &SampledFuzzy1D<S>, v: &SampledFuzzy1D<S>) -> (S, S) {
    let grid = u.grid().union(v.grid());
    let mut best = (S::zero(), S::zero());
    for d in level_distance_profile(u, v, &grid) {
        if d.h > best.0 {
            best = (d.h, d.alpha);
        }
    }
    best
}

/// Exact `d∞ = sup_α H([u]_α, [v]_α)` between sampled numbers.
pub fn d_infty_sampled<S: Scalar>(u: &SampledFuzzy1D<S>, v: &SampledFuzzy1D<S>) -> S {
    d_infty_sampled_at(u, v).0
}

/// Grid-maximum of the level distance: a lower bound on `d∞` for any representation.
pub fn d_infty_grid_lower_bound<S, U, V>(u: &U, v: &V, grid: &AlphaGrid<S>) -> S
where
    S: Scalar,
    U: FuzzyNumber<S> + ?Sized,
    V: FuzzyNumber<S> + ?Sized,
{
    level_distance_profile(u, v, grid)
        .into_iter()
        .fold(S::zero(), |acc, d| max_of(acc, d.h))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::body::FuzzyBody2D;

    fn iv(lo: f64, hi: f64) -> Interval<f64> {
        Interval::new(lo, hi).unwrap()
    }

    #[test]
    fn interval_distance() {
        assert_eq!(hausdorff_interval(&iv(0.0, 1.0), &iv(0.0, 1.0)), 0.0);
        assert_eq!(hausdorff_interval(&iv(1.0, 3.0), &iv(2.0, 5.0)), 2.0);
        assert_eq!(hausdorff_interval(&iv(0.0, 0.0), &iv(0.0, 1.0)), 1.0);
        assert_eq!(hausdorff_interval(&iv(2.0, 5.0), &iv(1.0, 3.0)), 2.0);
    }

    #[test]
    fn support_distance_disks() {
        let a = ConvexBody2D::<f64>::disk(360, (0.0, 0.0), 1.0).unwrap();
        let b = ConvexBody2D::disk(360, (0.0, 0.0), 2.0).unwrap();
        assert_eq!(hausdorff_support_2d(&a, &a).unwrap(), 0.0);
        assert!((hausdorff_support_2d(&a, &b).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn support_distance_translated_square() {
        let sq = [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)];
        let moved: Vec<_> = sq.iter().map(|&(x, y)| (x + 1.0, y)).collect();
        // oracle: brute force over a dense direction set of max_v <p,v> differences
        let support = |pts: &[(f64, f64)], t: f64| {
            pts.iter()
                .map(|&(x, y)| t.cos() * x + t.sin() * y)
                .fold(f64::MIN, f64::max)
        };
        let oracle = (0..100_000)
            .map(|j| 2.0 * std::f64::consts::PI * j as f64 / 100_000.0)
            .map(|t| (support(&sq, t) - support(&moved, t)).abs())
            .fold(0.0, f64::max);
        assert!((oracle - 1.0).abs() < 1e-12);
        let a = ConvexBody2D::from_points(360, &sq).unwrap();
        let b = ConvexBody2D::from_points(360, &moved).unwrap();
        assert!((hausdorff_support_2d(&a, &b).unwrap() - oracle).abs() < 1e-12);
    }

    #[test]
    fn support_distance_grid_mismatch() {
        let a = ConvexBody2D::disk(360, (0.0, 0.0), 1.0).unwrap();
        let b = ConvexBody2D::disk(180, (0.0, 0.0), 1.0).unwrap();
        assert_eq!(
            hausdorff_support_2d(&a, &b),
            Err(Error::GridMismatch(360, 180))
        );
    }

    #[test]
    fn lifted_support_distance_matches_interval_distance() {
        let u = SampledFuzzy1D::triangular(-1.0, 0.0, 2.0).unwrap();
        let v = SampledFuzzy1D::triangular(0.5, 0.75, 1.0).unwrap();
        let (bu, bv) = (
            FuzzyBody2D::lift(&u, 360).unwrap(),
            FuzzyBody2D::lift(&v, 360).unwrap(),
        );
        for (i, &a) in u.grid().levels().iter().enumerate() {
            let exact: f64 = hausdorff_interval(&u.cut(a), &v.cut(a));
            let axis =
                hausdorff_support_2d_on(&bu.bodies()[i], &bv.bodies()[i], &[0, 180]).unwrap();
            assert_eq!(axis, exact);
            let full = hausdorff_support_2d(&bu.bodies()[i], &bv.bodies()[i]).unwrap();
            assert!((full - exact).abs() <= 4.0 * f64::EPSILON * exact.max(1.0));
        }
    }

    #[test]
    fn sampled_sup_metric() {
        let t = SampledFuzzy1D::triangular(0.0, 0.5, 1.0).unwrap();
        assert_eq!(d_infty_sampled(&t, &t), 0.0);
        let (a, b) = (SampledFuzzy1D::crisp(0.25), SampledFuzzy1D::crisp(-1.0));
        assert_eq!(d_infty_sampled(&a, &b), 1.25);
        let (d, at) = d_infty_sampled_at(&t, &SampledFuzzy1D::crisp(0.5));
        assert_eq!((d, at), (0.5, 0.0));
    }

    #[test]
    fn sampled_sup_metric_brute_force() {
        // oracle: max of the level profile over a 10^4-node grid
        let t = SampledFuzzy1D::triangular(0.0, 0.5, 1.0).unwrap();
        let c = SampledFuzzy1D::crisp(0.5);
        let dense = AlphaGrid::uniform(10_000).unwrap();
        let brute = level_distance_profile(&t, &c, &dense)
            .iter()
            .map(|d| d.h)
            .fold(0.0, f64::max);
        assert_eq!(brute, 0.5);
        assert_eq!(d_infty_sampled(&t, &c), brute);
    }

    #[test]
    fn mismatched_grids_use_union() {
        let g1 = AlphaGrid::<f64>::new(vec![0.0, 0.3, 1.0]).unwrap();
        let g2 = AlphaGrid::new(vec![0.0, 0.7, 1.0]).unwrap();
        let u = SampledFuzzy1D::new(g1, vec![0.0, 0.9, 1.0], vec![2.0, 1.1, 1.0]).unwrap();
        let v = SampledFuzzy1D::new(g2, vec![0.0, 0.1, 1.0], vec![2.0, 1.9, 1.0]).unwrap();
        let dense = AlphaGrid::uniform(100_001).unwrap();
        let brute = d_infty_grid_lower_bound(&u, &v, &dense);
        assert!((d_infty_sampled(&u, &v) - brute).abs() < 1e-12);
        assert!(d_infty_sampled(&u, &v) >= brute);
    }
}
