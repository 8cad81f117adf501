use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{out_of_range, Result};
use crate::grid::AlphaGrid;
use crate::repr::SampledFuzzy1D;
use crate::scalar::Scalar;

/// Width of the steep drop that stands in for a jump in sampled members.
/// Narrower than the finest default δ probe, wider than the validator's finest offset.
pub const JUMP_WIDTH: f64 = 1.0 / (1u64 << 26) as f64;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct JumpInjection<S> {
    /// Level at which the upper endpoint has dropped by `size`.
    pub level: S,
    pub size: S,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RandomShape<S> {
    /// Number of uniform grid levels per member (at least 2).
    pub levels: usize,
    /// Range for the core point `[u]_1`.
    pub center: (S, S),
    /// Largest distance of a support endpoint from the core.
    pub max_spread: S,
    pub jump: Option<JumpInjection<S>>,
}

impl<S: Scalar> Default for RandomShape<S> {
    fn default() -> Self {
        Self {
            levels: 11,
            center: (S::lit(-1.0), S::lit(1.0)),
            max_spread: S::one(),
            jump: None,
        }
    }
}

/// Deterministic family of valid sampled numbers.
///
/// Each member picks a core point and sorts random spreads in decreasing order, which makes
/// the lower endpoint nondecreasing and the upper endpoint nonincreasing by construction.
/// With a [`JumpInjection`], every member's upper endpoint falls by `size` over
/// `[level - JUMP_WIDTH, level]`.
pub fn random_family<S: Scalar>(
    seed: u64,
    count: usize,
    shape: &RandomShape<S>,
) -> Result<Vec<SampledFuzzy1D<S>>> {
    if count == 0 {
        return out_of_range("count", 0.0);
    }
    if shape.levels < 2 {
        return out_of_range("levels", shape.levels as f64);
    }
    let mut grid = AlphaGrid::uniform(shape.levels)?;
    let mut drop_from = None;
    if let Some(jump) = shape.jump {
        let from = jump.level - S::lit(JUMP_WIDTH);
        if !(from > S::zero() && jump.level <= S::one()) {
            return out_of_range("jump level", jump.level.as_f64());
        }
        grid = grid.with_levels([from, jump.level]);
        drop_from = Some((from, jump.size));
    }
    let n = grid.len();
    let (c_lo, c_hi) = (shape.center.0.as_f64(), shape.center.1.as_f64());
    let spread = shape.max_spread.as_f64();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sorted_spreads = |rng: &mut ChaCha8Rng| {
        let mut v: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..=spread)).collect();
        v.sort_by(|a, b| b.partial_cmp(a).expect("finite"));
        v
    };
    (0..count)
        .map(|_| {
            let c = if c_lo < c_hi {
                rng.gen_range(c_lo..c_hi)
            } else {
                c_lo
            };
            let left = sorted_spreads(&mut rng);
            let right = sorted_spreads(&mut rng);
            let c = S::lit(c);
            let lower = left.iter().map(|&a| c - S::lit(a)).collect();
            let upper = grid
                .levels()
                .iter()
                .zip(&right)
                .map(|(&alpha, &b)| {
                    let extra = match drop_from {
                        Some((from, size)) if alpha <= from => size,
                        _ => S::zero(),
                    };
                    c + S::lit(b) + extra
                })
                .collect();
            SampledFuzzy1D::new(grid.clone(), lower, upper)
        })
        .collect()
}
