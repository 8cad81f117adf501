//! Metrics and compactness diagnostics for fuzzy numbers represented by α-cuts.
//!
//! Numbers are carried either as endpoint samples on an α-grid ([`SampledFuzzy1D`]) or as
//! closed-form endpoint curves with declared jumps ([`CutCurve1D`]). On top of these the
//! crate computes Hausdorff distances between cuts, the supremum metric `d∞` (exactly for
//! sampled data, as a certified [`Enclosure`] for curves), level-convergence profiles,
//! family moduli of equi-continuity, and the closed-form counterexample family showing that
//! level-wise conditions do not give compactness under `d∞`.
//!
//! All numerics are generic over [`Scalar`] (`f32` or `f64`); the aliases below fix `f64`.

// NaN inputs must fail the `!(x > y)` style guards
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod body;
pub mod counterexample;
pub mod error;
pub mod family;
pub mod grid;
pub mod interval;
pub mod io;
pub mod metrics;
pub mod repr;
mod scalar;

pub use body::{ConvexBody2D, FuzzyBody2D};
pub use error::{Error, Result};
pub use grid::AlphaGrid;
pub use interval::Interval;
pub use metrics::{
    d_infty_parametric, d_infty_sampled, hausdorff_interval, hausdorff_support_2d,
    level_convergence_report, level_distance_profile, ConvergenceReport, DInfError, Enclosure,
};
pub use repr::{
    validate_representation, CutCurve1D, Fuzzy1D, FuzzyNumber, SampledFuzzy1D, ValidationReport,
};
pub use scalar::Scalar;

pub type Grid = AlphaGrid<f64>;
pub type Cut = Interval<f64>;
pub type Sampled = SampledFuzzy1D<f64>;
pub type Curve = CutCurve1D<f64>;
pub type Number = Fuzzy1D<f64>;
pub type Body = FuzzyBody2D<f64>;
pub type Bracket = Enclosure<f64>;
