use serde::Serialize;

use crate::grid::AlphaGrid;
use crate::repr::FuzzyNumber;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceEntry<S> {
    pub alpha: S,
    /// `H([u_n]_α, [u]_α)` for `n = 1..=n_max`.
    pub h_values: Vec<S>,
    /// Smallest `N` with `H ≤ ε` for every scanned `n ≥ N`; `None` when not reached in the window.
    pub first_index: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceVerdict<S> {
    pub level_convergent: bool,
    pub failing_alphas: Vec<S>,
}

/// Per-level convergence of a sequence towards a limit over a finite scan window.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceReport<S> {
    pub eps: S,
    pub n_max: usize,
    pub entries: Vec<ConvergenceEntry<S>>,
    pub verdict: ConvergenceVerdict<S>,
}

impl<S: Scalar> ConvergenceReport<S> {
    pub fn entry_at(&self, alpha: S) -> Option<&ConvergenceEntry<S>> {
        self.entries.iter().find(|e| e.alpha == alpha)
    }
}

/// Scans `member(1), …, member(n_max)` against `limit` at every level of `grid`.
///
/// `member` is called once per index, so sequences can be generated lazily. Convergence at a
/// level is only claimed inside the window: no extrapolation past `n_max`.
pub fn level_convergence_report<S, F, G>(
    member: impl Fn(usize) -> F,
    limit: &G,
    grid: &AlphaGrid<S>,
    eps: S,
    n_max: usize,
) -> ConvergenceReport<S>
where
    S: Scalar,
    F: FuzzyNumber<S>,
    G: FuzzyNumber<S> + ?Sized,
{
    assert!(eps > S::zero(), "eps must be positive");
    assert!(n_max >= 1, "n_max must be at least 1");
    let levels = grid.levels();
    let limit_cuts: Vec<_> = levels.iter().map(|&a| limit.cut(a)).collect();
    let mut columns: Vec<Vec<S>> = vec![Vec::with_capacity(n_max); levels.len()];
    for n in 1..=n_max {
        let u = member(n);
        for ((col, &a), target) in columns.iter_mut().zip(levels).zip(&limit_cuts) {
            col.push(u.cut(a).hausdorff(target));
        }
    }
    let entries: Vec<_> = levels
        .iter()
        .zip(columns)
        .map(|(&alpha, h_values)| {
            let tail = h_values.iter().rev().take_while(|&&h| h <= eps).count();
            let first_index = (tail > 0).then(|| n_max - tail + 1);
            ConvergenceEntry {
                alpha,
                h_values,
                first_index,
            }
        })
        .collect();
    let failing_alphas: Vec<S> = entries
        .iter()
        .filter(|e| e.first_index.is_none())
        .map(|e| e.alpha)
        .collect();
    ConvergenceReport {
        eps,
        n_max,
        entries,
        verdict: ConvergenceVerdict {
            level_convergent: failing_alphas.is_empty(),
            failing_alphas,
        },
    }
}

/// First-index summary of [`level_convergence_report`] without keeping the distance columns.
///
/// Returns, per level, the smallest `N` with `H ≤ ε` for all `N ≤ n ≤ n_max`, together with
/// the distance at that index.
pub fn first_convergence_indices<S, F, G>(
    member: impl Fn(usize) -> F,
    limit: &G,
    grid: &AlphaGrid<S>,
    eps: S,
    n_max: usize,
) -> Vec<Option<(usize, S)>>
where
    S: Scalar,
    F: FuzzyNumber<S>,
    G: FuzzyNumber<S> + ?Sized,
{
    let levels = grid.levels();
    let limit_cuts: Vec<_> = levels.iter().map(|&a| limit.cut(a)).collect();
    let mut first: Vec<Option<(usize, S)>> = vec![None; levels.len()];
    for n in 1..=n_max {
        let u = member(n);
        for ((slot, &a), target) in first.iter_mut().zip(levels).zip(&limit_cuts) {
            let h = u.cut(a).hausdorff(target);
            if h > eps {
                *slot = None;
            } else if slot.is_none() {
                *slot = Some((n, h));
            }
        }
    }
    first
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::repr::SampledFuzzy1D;

    #[test]
    fn constant_sequence_converges_immediately() {
        let u = SampledFuzzy1D::triangular(0.0, 1.0, 3.0).unwrap();
        let grid = AlphaGrid::uniform(11).unwrap();
        let r = level_convergence_report(|_| u.clone(), &u, &grid, 1e-6, 5);
        assert!(r.verdict.level_convergent);
        assert!(r.entries.iter().all(|e| e.first_index == Some(1)));
    }

    #[test]
    fn shrinking_offsets() {
        let u = SampledFuzzy1D::crisp(0.0);
        let grid = AlphaGrid::uniform(3).unwrap();
        let r = level_convergence_report(
            |n| SampledFuzzy1D::crisp(1.0 / n as f64),
            &u,
            &grid,
            0.3,
            10,
        );
        // 1/n <= 0.3 from n = 4
        assert!(r.entries.iter().all(|e| e.first_index == Some(4)));
        let r = level_convergence_report(
            |n| SampledFuzzy1D::crisp(1.0 / n as f64),
            &u,
            &grid,
            0.01,
            10,
        );
        assert!(!r.verdict.level_convergent);
        assert_eq!(r.verdict.failing_alphas.len(), 3);
    }

    #[test]
    fn late_excursion_resets_index() {
        let u = SampledFuzzy1D::crisp(0.0);
        let grid = AlphaGrid::uniform(2).unwrap();
        let seq = |n: usize| SampledFuzzy1D::crisp(if n == 6 { 1.0 } else { 0.0 });
        let r = level_convergence_report(seq, &u, &grid, 0.1, 8);
        assert_eq!(r.entries[0].first_index, Some(7));
        let summary = first_convergence_indices(seq, &u, &grid, 0.1, 8);
        assert_eq!(summary[0], Some((7, 0.0)));
    }
}
