use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::Serialize;
use thiserror::Error;

use crate::interval::Interval;
use crate::repr::FuzzyNumber;
use crate::scalar::{max_of, Scalar};

pub const DEFAULT_TOL: f64 = 1e-9;
pub const DEFAULT_MAX_DEPTH: u32 = 60;
/// Upper limit on bisection steps per call; exhausting it ends the search like `max_depth` does.
pub const SPLIT_BUDGET: usize = 1 << 21;

/// Certified bracket `[lower, upper]` for a supremum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Enclosure<S> {
    pub lower: S,
    pub upper: S,
    /// Whether the lower bound is realized at an actual level (not only approached).
    pub attained: bool,
    /// Level at which the lower bound is realized or approached.
    pub location: S,
}

impl<S: Scalar> Enclosure<S> {
    pub fn width(&self) -> S {
        self.upper - self.lower
    }

    pub fn contains(&self, x: S) -> bool {
        self.lower <= x && x <= self.upper
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DInfError<S: Scalar> {
    /// Refinement stopped before reaching the tolerance; the bracket is still certified.
    #[error("depth limit reached before tolerance; bracket [{}, {}]", .0.lower, .0.upper)]
    DepthExceeded(Enclosure<S>),
    #[error("tolerance must be positive")]
    BadTolerance,
    #[error("endpoint monotonicity is not declared; no certified bound is available")]
    MonotonicityUndeclared,
}

impl<S: Scalar> DInfError<S> {
    /// The partial bracket carried by `DepthExceeded`.
    pub fn enclosure(&self) -> Option<Enclosure<S>> {
        match self {
            DInfError::DepthExceeded(e) => Some(*e),
            _ => None,
        }
    }
}

/// Endpoint values of both numbers at one side of a subinterval.
#[derive(Clone, Copy)]
struct Ends<S> {
    u: Interval<S>,
    v: Interval<S>,
}

impl<S: Scalar> Ends<S> {
    fn distance(&self) -> S {
        self.u.hausdorff(&self.v)
    }
}

/// Bound on `H([u]_α, [v]_α)` over `(a, b]` from monotone endpoints:
/// `u⁻ − v⁻ ∈ [u⁻(a) − v⁻(b), u⁻(b) − v⁻(a)]`, `u⁺ − v⁺ ∈ [u⁺(b) − v⁺(a), u⁺(a) − v⁺(b)]`.
fn upper_bound<S: Scalar>(left: &Ends<S>, right: &Ends<S>) -> S {
    let lo = max_of(
        (left.u.lo - right.v.lo).abs(),
        (right.u.lo - left.v.lo).abs(),
    );
    let hi = max_of(
        (right.u.hi - left.v.hi).abs(),
        (left.u.hi - right.v.hi).abs(),
    );
    max_of(lo, hi)
}

struct Cell<S> {
    a: S,
    b: S,
    left: Ends<S>,
    right: Ends<S>,
    depth: u32,
    bound: S,
}

impl<S: Scalar> PartialEq for Cell<S> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl<S: Scalar> Eq for Cell<S> {}
impl<S: Scalar> PartialOrd for Cell<S> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<S: Scalar> Ord for Cell<S> {
    fn cmp(&self, other: &Self) -> Ordering {
        // max-heap on bound; among equal bounds prefer wider cells, then lower levels
        self.bound
            .partial_cmp(&other.bound)
            .unwrap_or(Ordering::Equal)
            .then_with(|| {
                (self.b - self.a)
                    .partial_cmp(&(other.b - other.a))
                    .unwrap_or(Ordering::Equal)
            })
            .then_with(|| other.a.partial_cmp(&self.a).unwrap_or(Ordering::Equal))
    }
}

#[derive(Clone, Copy)]
struct Witness<S> {
    value: S,
    at: S,
    attained: bool,
}

impl<S: Scalar> Witness<S> {
    fn offer(&mut self, value: S, at: S, attained: bool) {
        if value > self.value || (value == self.value && attained && !self.attained) {
            *self = Witness {
                value,
                at,
                attained,
            };
        }
    }
}

/// Certified enclosure of `d∞(u, v) = sup_{α∈[0,1]} H([u]_α, [v]_α)` by best-first bisection.
///
/// Every subinterval `(a, b]` is bounded using the declared endpoint monotonicity of both
/// numbers. Declared jumps and breakpoints are forced split points: a cell starting at a jump
/// is bounded with the one-sided limit from above, and that limit also serves as a
/// (non-attained) lower-bound witness. Returns once `upper - lower <= tol`; if the best cell
/// cannot be refined further (depth `max_depth`, floating-point resolution or
/// [`SPLIT_BUDGET`]) the current bracket comes back in [`DInfError::DepthExceeded`].
pub fn d_infty_parametric<S, U, V>(
    u: &U,
    v: &V,
    tol: S,
    max_depth: u32,
) -> Result<Enclosure<S>, DInfError<S>>
where
    S: Scalar,
    U: FuzzyNumber<S> + ?Sized,
    V: FuzzyNumber<S> + ?Sized,
{
    if !(tol > S::zero()) {
        return Err(DInfError::BadTolerance);
    }
    if !u.monotone_declared() || !v.monotone_declared() {
        return Err(DInfError::MonotonicityUndeclared);
    }

    if let (Some(ku), Some(kv)) = (u.closed_form_key(), v.closed_form_key()) {
        if ku == kv {
            return Ok(Enclosure {
                lower: S::zero(),
                upper: S::zero(),
                attained: true,
                location: S::zero(),
            });
        }
    }
    let linear = u.piecewise_linear() && v.piecewise_linear();

    let mut splits: Vec<S> = u.critical_levels();
    splits.extend(v.critical_levels());
    splits.retain(|s| *s > S::zero() && *s < S::one());
    splits.push(S::zero());
    splits.push(S::one());
    splits.sort_by(|a, b| a.partial_cmp(b).expect("NaN level"));
    splits.dedup();
    let (jumps_u, jumps_v) = (u.jumps(), v.jumps());
    let is_jump = |a: S| jumps_u.contains(&a) || jumps_v.contains(&a);

    let at = |a: S| Ends {
        u: u.cut(a),
        v: v.cut(a),
    };
    let from_above = |a: S| Ends {
        u: u.right_limit(a),
        v: v.right_limit(a),
    };

    let mut best = Witness {
        value: at(S::zero()).distance(),
        at: S::zero(),
        attained: true,
    };
    let mut heap = BinaryHeap::new();
    for w in splits.windows(2) {
        let (a, b) = (w[0], w[1]);
        let left = from_above(a);
        let right = at(b);
        best.offer(left.distance(), a, !is_jump(a));
        best.offer(right.distance(), b, true);
        // affine differences peak at a cell end
        let bound = if linear {
            max_of(left.distance(), right.distance())
        } else {
            upper_bound(&left, &right)
        };
        heap.push(Cell {
            a,
            b,
            left,
            right,
            depth: 0,
            bound,
        });
    }

    let half = S::lit(0.5);
    let mut budget = SPLIT_BUDGET;
    // largest bound among cells dropped for being within tol of the witness
    let mut pruned = S::zero();
    loop {
        let Some(cell) = heap.pop() else {
            return Ok(finish(best, max_of(pruned, best.value)));
        };
        let upper = max_of(max_of(cell.bound, best.value), pruned);
        if upper - best.value <= tol {
            return Ok(finish(best, upper));
        }
        let mid = cell.a + (cell.b - cell.a) * half;
        if cell.depth >= max_depth || budget == 0 || mid <= cell.a || mid >= cell.b {
            return Err(DInfError::DepthExceeded(finish(best, upper)));
        }
        budget -= 1;
        let m = at(mid);
        best.offer(m.distance(), mid, true);
        let depth = cell.depth + 1;
        for (a, b, left, right) in [(cell.a, mid, cell.left, m), (mid, cell.b, m, cell.right)] {
            let bound = upper_bound(&left, &right);
            if bound > best.value + tol {
                heap.push(Cell {
                    a,
                    b,
                    left,
                    right,
                    depth,
                    bound,
                });
            } else {
                pruned = max_of(pruned, bound);
            }
        }
    }
}

fn finish<S: Scalar>(best: Witness<S>, upper: S) -> Enclosure<S> {
    Enclosure {
        lower: best.value,
        upper,
        attained: best.attained,
        location: best.at,
    }
}
