use std::fmt;
use std::sync::Arc;

use super::FuzzyNumber;
use crate::error::{out_of_range, Result};
use crate::interval::Interval;
use crate::scalar::Scalar;

/// Endpoint evaluator `α ↦ u±(α)`.
pub type EndpointFn<S> = Arc<dyn Fn(S) -> S + Send + Sync>;

/// A declared jump of the cuts: left-continuous at `at`, with a different limit from above.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Discontinuity<S> {
    pub at: S,
    /// `lim_{β→at⁺} [u]_β`
    pub right_limit: Interval<S>,
}

/// Parametric fuzzy number: closed-form endpoint functions plus jump and breakpoint metadata.
#[derive(Clone)]
pub struct CutCurve1D<S: Scalar> {
    lower: EndpointFn<S>,
    upper: EndpointFn<S>,
    discontinuities: Vec<Discontinuity<S>>,
    breakpoints: Vec<S>,
    monotone: bool,
    linear_pieces: bool,
    key: Option<String>,
}

impl<S: Scalar> fmt::Debug for CutCurve1D<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CutCurve1D")
            .field("discontinuities", &self.discontinuities)
            .field("breakpoints", &self.breakpoints)
            .field("monotone", &self.monotone)
            .field("key", &self.key)
            .finish_non_exhaustive()
    }
}

impl<S: Scalar> CutCurve1D<S> {
    /// Continuous curve with monotone endpoints declared.
    pub fn new(
        lower: impl Fn(S) -> S + Send + Sync + 'static,
        upper: impl Fn(S) -> S + Send + Sync + 'static,
    ) -> Self {
        Self {
            lower: Arc::new(lower),
            upper: Arc::new(upper),
            discontinuities: Vec::new(),
            breakpoints: Vec::new(),
            monotone: true,
            linear_pieces: false,
            key: None,
        }
    }

    /// Adds a jump at `at` (in `[0, 1)`), approached from above with limit `right_limit`.
    pub fn with_jump(mut self, at: S, right_limit: Interval<S>) -> Result<Self> {
        if !(at >= S::zero() && at < S::one()) {
            return out_of_range("discontinuity level", at.as_f64());
        }
        self.discontinuities.push(Discontinuity { at, right_limit });
        self.discontinuities
            .sort_by(|a, b| a.at.partial_cmp(&b.at).expect("NaN level"));
        Ok(self)
    }

    /// Levels where an endpoint formula changes (kinks, branch switches).
    pub fn with_breakpoints(mut self, levels: impl IntoIterator<Item = S>) -> Self {
        self.breakpoints.extend(levels);
        self.breakpoints
            .sort_by(|a, b| a.partial_cmp(b).expect("NaN level"));
        self.breakpoints.dedup();
        self
    }

    pub fn with_monotone_declared(mut self, monotone: bool) -> Self {
        self.monotone = monotone;
        self
    }

    /// Declares both endpoints affine between consecutive breakpoints.
    pub fn with_piecewise_linear(mut self, linear: bool) -> Self {
        self.linear_pieces = linear;
        self
    }

    /// Tags the closed form (constructor and parameters) this curve was built from.
    pub fn with_key(mut self, key: impl Into<String>) -> Self {
        self.key = Some(key.into());
        self
    }

    pub fn discontinuities(&self) -> &[Discontinuity<S>] {
        &self.discontinuities
    }

    pub fn breakpoints(&self) -> &[S] {
        &self.breakpoints
    }

    pub fn lower_at(&self, alpha: S) -> S {
        (self.lower)(alpha)
    }

    pub fn upper_at(&self, alpha: S) -> S {
        (self.upper)(alpha)
    }
}

impl<S: Scalar> FuzzyNumber<S> for CutCurve1D<S> {
    fn cut(&self, alpha: S) -> Interval<S> {
        Interval::raw((self.lower)(alpha), (self.upper)(alpha))
    }

    fn right_limit(&self, alpha: S) -> Interval<S> {
        self.discontinuities
            .iter()
            .find(|d| d.at == alpha)
            .map_or_else(|| self.cut(alpha), |d| d.right_limit)
    }

    fn jumps(&self) -> Vec<S> {
        self.discontinuities.iter().map(|d| d.at).collect()
    }

    fn critical_levels(&self) -> Vec<S> {
        let mut out = self.jumps();
        out.extend(self.breakpoints.iter().copied());
        out.sort_by(|a, b| a.partial_cmp(b).expect("NaN level"));
        out.dedup();
        out
    }

    fn monotone_declared(&self) -> bool {
        self.monotone
    }

    fn piecewise_linear(&self) -> bool {
        self.linear_pieces
    }

    fn closed_form_key(&self) -> Option<&str> {
        self.key.as_deref()
    }
}
