//! Planar convex bodies and fuzzy bodies described by support-function samples.

use serde::Serialize;

use crate::error::{out_of_range, Error, Result};
use crate::grid::AlphaGrid;
use crate::interval::Interval;
use crate::repr::{FuzzyNumber, SampledFuzzy1D};
use crate::scalar::{max_of, Scalar};

pub const DEFAULT_DIRECTIONS: usize = 360;

/// Angle of direction `j` on a uniform grid of `count` directions.
pub fn direction_angle<S: Scalar>(j: usize, count: usize) -> S {
    S::PI() * S::from_count(2 * j) / S::from_count(count)
}

/// Convex body given by its support values `h(θ_j)` on `count` uniform directions.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct ConvexBody2D<S> {
    support: Vec<S>,
}

impl<S: Scalar> ConvexBody2D<S> {
    pub fn new(support: Vec<S>) -> Result<Self> {
        let body = Self { support };
        body.check()
            .map_err(|reason| Error::InvalidBody { index: 0, reason })?;
        Ok(body)
    }

    pub fn from_support_fn(directions: usize, h: impl Fn(S) -> S) -> Result<Self> {
        Self::new(
            (0..directions)
                .map(|j| h(direction_angle(j, directions)))
                .collect(),
        )
    }

    /// Convex hull of a finite point set.
    pub fn from_points(directions: usize, points: &[(S, S)]) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidBody {
                index: 0,
                reason: "no points".into(),
            });
        }
        Self::from_support_fn(directions, |t| {
            let (c, s) = (t.cos(), t.sin());
            points
                .iter()
                .map(|&(x, y)| c * x + s * y)
                .fold(S::neg_infinity(), max_of)
        })
    }

    pub fn disk(directions: usize, center: (S, S), radius: S) -> Result<Self> {
        Self::from_support_fn(directions, |t| {
            center.0 * t.cos() + center.1 * t.sin() + radius
        })
    }

    /// Segment `[lo, hi] × {0}`.
    pub fn segment_on_x_axis(directions: usize, cut: Interval<S>) -> Result<Self> {
        Self::from_support_fn(directions, |t| {
            let c = t.cos();
            max_of(c * cut.lo, c * cut.hi)
        })
    }

    pub fn directions(&self) -> usize {
        self.support.len()
    }

    pub fn support_values(&self) -> &[S] {
        &self.support
    }

    /// Support value at angle `theta`, linear between neighbouring sampled directions.
    pub fn support_at(&self, theta: S) -> S {
        let m = self.support.len();
        let two_pi = S::PI() + S::PI();
        let mut t = theta % two_pi;
        if t < S::zero() {
            t = t + two_pi;
        }
        let pos = t / two_pi * S::from_count(m);
        let j = pos.floor().to_usize().unwrap_or(0).min(m - 1);
        let frac = pos - S::from_count(j);
        let (a, b) = (self.support[j], self.support[(j + 1) % m]);
        if frac <= S::zero() {
            a
        } else {
            a + (b - a) * frac
        }
    }

    /// Intersects the supporting halfplanes and reports why the result is not a nonempty bounded set.
    fn check(&self) -> std::result::Result<(), String> {
        let m = self.support.len();
        if m < 3 {
            return Err(format!(
                "need at least 3 directions for a bounded intersection, got {m}"
            ));
        }
        if self.support.iter().any(|h| !h.is_finite()) {
            return Err("non-finite support value".into());
        }
        if self.polygon().is_empty() {
            return Err("supporting halfplanes have empty intersection".into());
        }
        Ok(())
    }

    /// Vertices of the halfplane intersection, clipped from a bounding square.
    pub fn polygon(&self) -> Vec<(S, S)> {
        let m = self.support.len();
        let scale = self
            .support
            .iter()
            .fold(S::one(), |acc, h| max_of(acc, h.abs()));
        let r = scale * S::lit(10.0);
        let mut poly = vec![(-r, -r), (r, -r), (r, r), (-r, r)];
        let slack = scale * S::lit(1e-9);
        for (j, &h) in self.support.iter().enumerate() {
            let t: S = direction_angle(j, m);
            let (c, s) = (t.cos(), t.sin());
            poly = clip_halfplane(&poly, c, s, h + slack);
            if poly.is_empty() {
                break;
            }
        }
        poly
    }
}

/// Sutherland–Hodgman clip of a convex polygon against `c·x + s·y ≤ h`.
fn clip_halfplane<S: Scalar>(poly: &[(S, S)], c: S, s: S, h: S) -> Vec<(S, S)> {
    let inside = |p: (S, S)| c * p.0 + s * p.1 - h;
    let mut out = Vec::with_capacity(poly.len() + 1);
    for i in 0..poly.len() {
        let p = poly[i];
        let q = poly[(i + 1) % poly.len()];
        let (fp, fq) = (inside(p), inside(q));
        if fp <= S::zero() {
            out.push(p);
        }
        if (fp < S::zero() && fq > S::zero()) || (fp > S::zero() && fq < S::zero()) {
            let t = fp / (fp - fq);
            out.push((p.0 + (q.0 - p.0) * t, p.1 + (q.1 - p.1) * t));
        }
    }
    out
}

/// α-indexed nested family of planar convex bodies.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FuzzyBody2D<S: Scalar> {
    grid: AlphaGrid<S>,
    bodies: Vec<ConvexBody2D<S>>,
}

impl<S: Scalar> FuzzyBody2D<S> {
    /// Checks one body per level, a shared direction grid, and nestedness in every direction.
    pub fn new(grid: AlphaGrid<S>, bodies: Vec<ConvexBody2D<S>>) -> Result<Self> {
        if bodies.len() != grid.len() {
            return Err(Error::LengthMismatch {
                expected: grid.len(),
                got: bodies.len(),
            });
        }
        let m = bodies[0].directions();
        for (i, b) in bodies.iter().enumerate() {
            if b.directions() != m {
                return Err(Error::GridMismatch(m, b.directions()));
            }
            b.check()
                .map_err(|reason| Error::InvalidBody { index: i, reason })?;
        }
        for i in 1..bodies.len() {
            let nested = bodies[i]
                .support
                .iter()
                .zip(&bodies[i - 1].support)
                .all(|(inner, outer)| inner <= outer);
            if !nested {
                return Err(Error::NonNested {
                    index: i,
                    alpha: grid.levels()[i].as_f64(),
                });
            }
        }
        Ok(Self { grid, bodies })
    }

    /// The same body at every level.
    pub fn constant(body: ConvexBody2D<S>) -> Self {
        Self {
            grid: AlphaGrid::uniform(2).expect("two-level grid"),
            bodies: vec![body.clone(), body],
        }
    }

    /// Embeds a 1-D number as segments on the x-axis.
    pub fn lift(u: &SampledFuzzy1D<S>, directions: usize) -> Result<Self> {
        let bodies = u
            .grid()
            .levels()
            .iter()
            .map(|&a| ConvexBody2D::segment_on_x_axis(directions, u.cut(a)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(u.grid().clone(), bodies)
    }

    pub fn grid(&self) -> &AlphaGrid<S> {
        &self.grid
    }

    pub fn bodies(&self) -> &[ConvexBody2D<S>] {
        &self.bodies
    }

    pub fn directions(&self) -> usize {
        self.bodies[0].directions()
    }

    /// Body at level `alpha`, support values interpolated linearly between grid levels.
    pub fn body_at(&self, alpha: S) -> Result<ConvexBody2D<S>> {
        if !(alpha >= S::zero() && alpha <= S::one()) {
            return out_of_range("alpha", alpha.as_f64());
        }
        let (i, t) = self.grid.bracket(alpha);
        if t == S::zero() {
            return Ok(self.bodies[i].clone());
        }
        let (a, b) = (&self.bodies[i].support, &self.bodies[i + 1].support);
        Ok(ConvexBody2D {
            support: a.iter().zip(b).map(|(&x, &y)| x + (y - x) * t).collect(),
        })
    }

    /// `u*(α, p)` for `p = (cos θ, sin θ)`, bilinear in `(α, θ)` between samples.
    pub fn support_function_value(&self, alpha: S, theta: S) -> Result<S> {
        if !(alpha >= S::zero() && alpha <= S::one()) {
            return out_of_range("alpha", alpha.as_f64());
        }
        let (i, t) = self.grid.bracket(alpha);
        let lo = self.bodies[i].support_at(theta);
        if t == S::zero() {
            return Ok(lo);
        }
        let hi = self.bodies[i + 1].support_at(theta);
        Ok(lo + (hi - lo) * t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_4, PI, SQRT_2};

    #[test]
    fn disk_support_is_radius() {
        let body = FuzzyBody2D::constant(
            ConvexBody2D::<f64>::disk(DEFAULT_DIRECTIONS, (0.0, 0.0), 1.0).unwrap(),
        );
        for theta in [0.0, 0.3, 1.0, 2.5, 4.0, 6.2] {
            for alpha in [0.0, 0.5, 1.0] {
                let h = body.support_function_value(alpha, theta).unwrap();
                assert!((h - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn origin_support_is_zero() {
        let body = FuzzyBody2D::constant(
            ConvexBody2D::from_points(DEFAULT_DIRECTIONS, &[(0.0, 0.0)]).unwrap(),
        );
        assert_eq!(body.support_function_value(0.7, 1.234).unwrap(), 0.0);
    }

    #[test]
    fn square_support_on_diagonal() {
        let sq = [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)];
        // oracle: max over vertices of <p, v>
        let oracle = sq
            .iter()
            .map(|&(x, y)| FRAC_PI_4.cos() * x + FRAC_PI_4.sin() * y)
            .fold(f64::MIN, f64::max);
        assert!((oracle - SQRT_2).abs() < 1e-15);
        let body =
            FuzzyBody2D::constant(ConvexBody2D::from_points(DEFAULT_DIRECTIONS, &sq).unwrap());
        let h = body.support_function_value(0.5, FRAC_PI_4).unwrap();
        assert!((h - SQRT_2).abs() < 1e-12);
    }

    #[test]
    fn out_of_range_level() {
        let body = FuzzyBody2D::constant(ConvexBody2D::disk(8, (0.0, 0.0), 1.0).unwrap());
        assert!(body.support_function_value(1.5, 0.0).is_err());
    }

    #[test]
    fn lifted_segment_endpoints() {
        let u = SampledFuzzy1D::triangular(-2.0, 0.5, 3.0).unwrap();
        let body = FuzzyBody2D::lift(&u, 360).unwrap();
        for alpha in [0.0, 0.25, 1.0] {
            let c = u.cut(alpha);
            assert_eq!(body.support_function_value(alpha, 0.0).unwrap(), c.hi);
            assert_eq!(body.support_function_value(alpha, PI).unwrap(), -c.lo);
        }
    }

    #[test]
    fn inconsistent_halfplanes_rejected() {
        // h(θ) = -1 everywhere: all halfplanes exclude a neighbourhood of every point
        let err = ConvexBody2D::<f64>::from_support_fn(16, |_| -1.0).unwrap_err();
        assert!(matches!(err, Error::InvalidBody { .. }));
        assert!(ConvexBody2D::<f64>::new(vec![1.0, 1.0]).is_err());
    }

    #[test]
    fn polygon_recovers_square() {
        let sq = [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)];
        let body = ConvexBody2D::from_points(4, &sq).unwrap();
        let poly = body.polygon();
        for (x, y) in poly {
            assert!((-1e-6..=1.0 + 1e-6).contains(&x) && (-1e-6..=1.0 + 1e-6).contains(&y));
        }
    }

    #[test]
    fn nestedness_enforced() {
        let grid = AlphaGrid::uniform(2).unwrap();
        let small = ConvexBody2D::disk(12, (0.0, 0.0), 1.0).unwrap();
        let big = ConvexBody2D::disk(12, (0.0, 0.0), 2.0).unwrap();
        assert!(FuzzyBody2D::new(grid.clone(), vec![big.clone(), small.clone()]).is_ok());
        assert!(matches!(
            FuzzyBody2D::new(grid.clone(), vec![small.clone(), big]),
            Err(Error::NonNested { .. })
        ));
        let other = ConvexBody2D::disk(10, (0.0, 0.0), 0.5).unwrap();
        assert!(matches!(
            FuzzyBody2D::new(grid, vec![small, other]),
            Err(Error::GridMismatch(12, 10))
        ));
    }
}
