use serde::Serialize;

use super::FuzzyNumber;
use crate::scalar::{max_of, Scalar};

pub const DEFAULT_VALIDATION_TOL: f64 = 1e-9;

/// One-sided limits are probed at offsets `2^-k` for these `k`.
const PROBE_EXPONENTS: std::ops::RangeInclusive<i32> = 4..=30;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckOutcome<S> {
    pub passed: bool,
    /// Largest violation seen (0 when none).
    pub worst: S,
    /// Level of the largest violation.
    pub at: Option<S>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LeftContinuityProbe<S> {
    pub alpha: S,
    /// Extrapolated `lim_{δ→0} H([u]_α, [u]_{α-δ})`.
    pub gap_estimate: S,
    /// `H([u]_α, [u]_{α-δ})` at the smallest admissible offset.
    pub finest_distance: S,
    pub offsets_used: usize,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClosureProbe<S> {
    /// Extrapolated `lim_{δ→0} H([u]_0, [u]_δ)`.
    pub gap_estimate: S,
    pub finest_distance: S,
    pub declared_jump: bool,
    pub passed: bool,
}

/// Pass/fail breakdown of the representation conditions on a fuzzy number's cuts.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport<S> {
    pub nonempty_compact_cuts: CheckOutcome<S>,
    pub nested: CheckOutcome<S>,
    pub left_continuity: Vec<LeftContinuityProbe<S>>,
    pub closure_at_zero: ClosureProbe<S>,
    pub passed: bool,
}

impl<S: Scalar> ValidationReport<S> {
    pub fn failing_left_continuity(&self) -> impl Iterator<Item = &LeftContinuityProbe<S>> {
        self.left_continuity.iter().filter(|p| !p.passed)
    }
}

/// Estimates the limit of a distance sequence taken at halving offsets.
///
/// In the linear regime `h(δ) ≈ g + cδ`, two consecutive values give `g ≈ 2h(δ) - h(2δ)`.
fn extrapolate_gap<S: Scalar>(hs: &[S], tol: S) -> S {
    match hs {
        [] => S::zero(),
        [.., last] if *last <= tol => *last,
        [.., prev, last] => max_of(S::zero(), *last + *last - *prev),
        [last] => *last,
    }
}

fn offsets<S: Scalar>() -> impl Iterator<Item = S> {
    PROBE_EXPONENTS.map(|k| S::lit(2f64.powi(-k)))
}

/// Checks the conditions that characterize cut families of fuzzy numbers:
/// nonempty compact cuts, nestedness, left-continuity on `(0, 1]` and the closure
/// condition at level 0. Failures are recorded in the report rather than returned as errors.
///
/// Probes never straddle a declared jump: for a probe at `α`, offsets `δ` with a jump in
/// `[α-δ, α)` are skipped.
pub fn validate_representation<S: Scalar, F: FuzzyNumber<S> + ?Sized>(
    u: &F,
    tol: S,
) -> ValidationReport<S> {
    assert!(tol > S::zero(), "tolerance must be positive");
    let levels = u.probe_levels();
    let cuts: Vec<_> = levels.iter().map(|&a| u.cut(a)).collect();
    let jumps = u.jumps();

    let mut nonempty = CheckOutcome {
        passed: true,
        worst: S::zero(),
        at: None,
    };
    for (&a, c) in levels.iter().zip(&cuts) {
        let finite = c.lo.is_finite() && c.hi.is_finite();
        let violation = if finite { c.lo - c.hi } else { S::infinity() };
        if violation > nonempty.worst || (!finite && nonempty.passed) {
            nonempty.worst = violation;
            nonempty.at = Some(a);
        }
        if !finite || violation > tol {
            nonempty.passed = false;
        }
    }

    let mut nested = CheckOutcome {
        passed: true,
        worst: S::zero(),
        at: None,
    };
    for (w, &a) in cuts.windows(2).zip(&levels[1..]) {
        let violation = max_of(w[0].lo - w[1].lo, w[1].hi - w[0].hi);
        if violation > nested.worst {
            nested.worst = violation;
            nested.at = Some(a);
        }
    }
    nested.passed = nested.worst <= tol;

    let left_continuity: Vec<_> = levels
        .iter()
        .zip(&cuts)
        .filter(|(&a, _)| a > S::zero())
        .map(|(&alpha, here)| {
            let hs: Vec<S> = offsets()
                .filter(|&d: &S| alpha - d >= S::zero())
                .filter(|&d| !jumps.iter().any(|&j| alpha - d <= j && j < alpha))
                .map(|d| here.hausdorff(&u.cut(alpha - d)))
                .collect();
            let gap = extrapolate_gap(&hs, tol);
            LeftContinuityProbe {
                alpha,
                gap_estimate: gap,
                finest_distance: hs.last().copied().unwrap_or_else(S::zero),
                offsets_used: hs.len(),
                passed: gap <= tol,
            }
        })
        .collect();

    let base = u.cut(S::zero());
    let declared_jump = jumps.iter().any(|&j| j == S::zero());
    let hs: Vec<S> = offsets().map(|d| base.hausdorff(&u.cut(d))).collect();
    let gap = extrapolate_gap(&hs, tol);
    let closure_at_zero = ClosureProbe {
        gap_estimate: gap,
        finest_distance: *hs.last().expect("offsets are nonempty"),
        declared_jump,
        passed: declared_jump || gap <= tol,
    };

    let passed = nonempty.passed
        && nested.passed
        && left_continuity.iter().all(|p| p.passed)
        && closure_at_zero.passed;
    ValidationReport {
        nonempty_compact_cuts: nonempty,
        nested,
        left_continuity,
        closure_at_zero,
        passed,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::Interval;
    use crate::repr::{CutCurve1D, SampledFuzzy1D};

    #[test]
    fn sampled_numbers_pass() {
        let u = SampledFuzzy1D::triangular(-1.0, 0.0, 3.0).unwrap();
        let r = validate_representation(&u, 1e-9);
        assert!(r.passed, "{r:?}");
        assert_eq!(r.left_continuity.len(), 1);
    }

    #[test]
    fn undeclared_left_jump_is_caught() {
        // cut at 0.5 is {0} but every lower level has [0, 1]: not left-continuous at 0.5
        let u = CutCurve1D::new(|_| 0.0, |a: f64| if a < 0.5 { 1.0 } else { 0.0 });
        let r = validate_representation(&u, 1e-9);
        assert!(!r.passed);
        let bad: Vec<_> = r.failing_left_continuity().map(|p| p.alpha).collect();
        assert_eq!(bad, vec![0.5]);
    }

    #[test]
    fn declared_right_jump_passes() {
        let u = CutCurve1D::new(|_| 0.0, |a: f64| if a <= 0.5 { 1.0 } else { 0.0 })
            .with_jump(0.5, Interval::point(0.0))
            .unwrap();
        assert!(validate_representation(&u, 1e-9).passed);
    }

    #[test]
    fn non_nested_curve_fails() {
        let u = CutCurve1D::new(|a: f64| -a, |_| 1.0);
        let r = validate_representation(&u, 1e-9);
        assert!(!r.nested.passed);
        assert!(!r.passed);
    }

    #[test]
    fn empty_cut_fails() {
        let u = CutCurve1D::new(|a: f64| 2.0 * a, |_| 1.0);
        let r = validate_representation(&u, 1e-9);
        assert!(!r.nonempty_compact_cuts.passed);
        assert_eq!(r.nonempty_compact_cuts.at, Some(1.0));
    }

    #[test]
    fn jump_at_zero_reported() {
        let open = CutCurve1D::new(|_| 0.0, |a: f64| if a == 0.0 { 1.0 } else { 0.0 });
        let r = validate_representation(&open, 1e-9);
        assert!(!r.closure_at_zero.passed);
        assert!((r.closure_at_zero.gap_estimate - 1.0).abs() < 1e-12);

        let declared = open.with_jump(0.0, Interval::point(0.0)).unwrap();
        let r = validate_representation(&declared, 1e-9);
        assert!(r.closure_at_zero.declared_jump && r.closure_at_zero.passed);
    }

    #[test]
    fn steep_but_continuous_curve_passes() {
        let u = CutCurve1D::new(|_| 0.0, |a: f64| 1.1 - (1e-3 + a).powf(0.1));
        assert!(validate_representation(&u, 1e-9).passed);
    }
}
