//! Cut-based representations of one-dimensional fuzzy numbers.
//!
//! A fuzzy number is stored through its α-cuts `[u]_α = [u⁻(α), u⁺(α)]`. Two carriers are
//! provided: [`SampledFuzzy1D`] keeps endpoint samples on an [`AlphaGrid`](crate::AlphaGrid)
//! and interpolates linearly in α; [`CutCurve1D`] evaluates endpoint closures and declares
//! where its cuts jump.

mod curve;
mod sampled;
mod validate;

pub use curve::{CutCurve1D, Discontinuity, EndpointFn};
pub use sampled::SampledFuzzy1D;
pub use validate::{
    validate_representation, CheckOutcome, ClosureProbe, LeftContinuityProbe, ValidationReport,
    DEFAULT_VALIDATION_TOL,
};

use crate::error::{out_of_range, Result};
use crate::interval::Interval;
use crate::scalar::Scalar;

/// Anything that yields nested compact α-cuts on `[0, 1]`.
pub trait FuzzyNumber<S: Scalar> {
    /// Cut at `alpha`, which the caller guarantees to lie in `[0, 1]`.
    fn cut(&self, alpha: S) -> Interval<S>;

    /// Limit of the cuts as the level decreases to `alpha` from above.
    /// Equal to [`cut`](Self::cut) unless a jump is declared at `alpha`.
    fn right_limit(&self, alpha: S) -> Interval<S> {
        self.cut(alpha)
    }

    /// Levels where the cuts jump when approached from above.
    fn jumps(&self) -> Vec<S> {
        Vec::new()
    }

    /// Levels where the endpoint functions change formula or lose smoothness
    /// (jumps included). Used to cluster probes and force bisection splits.
    fn critical_levels(&self) -> Vec<S> {
        self.jumps()
    }

    /// Whether the lower endpoint is declared nondecreasing and the upper nonincreasing.
    fn monotone_declared(&self) -> bool {
        true
    }

    /// Whether both endpoints are affine between consecutive critical levels.
    fn piecewise_linear(&self) -> bool {
        false
    }

    /// Identifies the closed form this number was built from; equal keys mean equal cuts.
    fn closed_form_key(&self) -> Option<&str> {
        None
    }

    /// Levels the validator inspects.
    fn probe_levels(&self) -> Vec<S> {
        let n = 1000;
        let mut levels: Vec<S> = (0..=n)
            .map(|i| S::from_count(i) / S::from_count(n))
            .collect();
        levels.extend(self.critical_levels());
        levels.retain(|a| *a >= S::zero() && *a <= S::one());
        levels.sort_by(|a, b| a.partial_cmp(b).expect("NaN level"));
        levels.dedup();
        levels
    }

    fn alpha_cut(&self, alpha: S) -> Result<Interval<S>> {
        if !(alpha >= S::zero() && alpha <= S::one()) {
            return out_of_range("alpha", alpha.as_f64());
        }
        Ok(self.cut(alpha))
    }

    /// `sup { α : x ∈ [u]_α }`, or 0 when `x` lies outside the support.
    ///
    /// The default bisects on the level using nestedness of the cuts.
    fn membership_at(&self, x: S) -> S {
        if !self.cut(S::zero()).contains(x) {
            return S::zero();
        }
        if self.cut(S::one()).contains(x) {
            return S::one();
        }
        let (mut inside, mut outside) = (S::zero(), S::one());
        let half = S::lit(0.5);
        for _ in 0..200 {
            let mid = inside + (outside - inside) * half;
            if mid <= inside || mid >= outside {
                break;
            }
            if self.cut(mid).contains(x) {
                inside = mid;
            } else {
                outside = mid;
            }
        }
        inside
    }
}

impl<S: Scalar, T: FuzzyNumber<S> + ?Sized> FuzzyNumber<S> for &T {
    fn cut(&self, alpha: S) -> Interval<S> {
        (**self).cut(alpha)
    }
    fn right_limit(&self, alpha: S) -> Interval<S> {
        (**self).right_limit(alpha)
    }
    fn jumps(&self) -> Vec<S> {
        (**self).jumps()
    }
    fn critical_levels(&self) -> Vec<S> {
        (**self).critical_levels()
    }
    fn monotone_declared(&self) -> bool {
        (**self).monotone_declared()
    }
    fn piecewise_linear(&self) -> bool {
        (**self).piecewise_linear()
    }
    fn closed_form_key(&self) -> Option<&str> {
        (**self).closed_form_key()
    }
    fn probe_levels(&self) -> Vec<S> {
        (**self).probe_levels()
    }
    fn membership_at(&self, x: S) -> S {
        (**self).membership_at(x)
    }
}

/// Either carrier, for heterogeneous families and file input.
#[derive(Debug, Clone)]
pub enum Fuzzy1D<S: Scalar> {
    Sampled(SampledFuzzy1D<S>),
    Curve(CutCurve1D<S>),
}

impl<S: Scalar> Fuzzy1D<S> {
    pub fn as_sampled(&self) -> Option<&SampledFuzzy1D<S>> {
        match self {
            Fuzzy1D::Sampled(s) => Some(s),
            Fuzzy1D::Curve(_) => None,
        }
    }

    /// Parametric view; sampled numbers become piecewise-linear curves.
    pub fn to_curve(&self) -> CutCurve1D<S> {
        match self {
            Fuzzy1D::Sampled(s) => s.to_curve(),
            Fuzzy1D::Curve(c) => c.clone(),
        }
    }
}

impl<S: Scalar> From<SampledFuzzy1D<S>> for Fuzzy1D<S> {
    fn from(s: SampledFuzzy1D<S>) -> Self {
        Fuzzy1D::Sampled(s)
    }
}

impl<S: Scalar> From<CutCurve1D<S>> for Fuzzy1D<S> {
    fn from(c: CutCurve1D<S>) -> Self {
        Fuzzy1D::Curve(c)
    }
}

macro_rules! dispatch {
    ($self:ident, $inner:ident => $e:expr) => {
        match $self {
            Fuzzy1D::Sampled($inner) => $e,
            Fuzzy1D::Curve($inner) => $e,
        }
    };
}

impl<S: Scalar> FuzzyNumber<S> for Fuzzy1D<S> {
    fn cut(&self, alpha: S) -> Interval<S> {
        dispatch!(self, u => u.cut(alpha))
    }
    fn right_limit(&self, alpha: S) -> Interval<S> {
        dispatch!(self, u => u.right_limit(alpha))
    }
    fn jumps(&self) -> Vec<S> {
        dispatch!(self, u => u.jumps())
    }
    fn critical_levels(&self) -> Vec<S> {
        dispatch!(self, u => u.critical_levels())
    }
    fn monotone_declared(&self) -> bool {
        dispatch!(self, u => u.monotone_declared())
    }
    fn piecewise_linear(&self) -> bool {
        dispatch!(self, u => u.piecewise_linear())
    }
    fn closed_form_key(&self) -> Option<&str> {
        dispatch!(self, u => u.closed_form_key())
    }
    fn probe_levels(&self) -> Vec<S> {
        dispatch!(self, u => u.probe_levels())
    }
    fn membership_at(&self, x: S) -> S {
        dispatch!(self, u => u.membership_at(x))
    }
}
