use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Strictly increasing set of levels in `[0, 1]` that starts at 0 and ends at 1.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct AlphaGrid<S> {
    levels: Vec<S>,
}

impl<S: Scalar> AlphaGrid<S> {
    pub fn new(levels: Vec<S>) -> Result<Self> {
        if levels.len() < 2 {
            return Err(Error::BadGrid(format!(
                "need at least 2 levels, got {}",
                levels.len()
            )));
        }
        if levels[0] != S::zero() || levels[levels.len() - 1] != S::one() {
            return Err(Error::BadGrid(
                "first level must be 0 and last level must be 1".into(),
            ));
        }
        if let Some(i) = levels.windows(2).position(|w| !(w[0] < w[1])) {
            return Err(Error::BadGrid(format!(
                "levels not strictly increasing at index {}",
                i + 1
            )));
        }
        Ok(Self { levels })
    }

    /// `count` equally spaced levels `0, 1/(count-1), ..., 1`.
    pub fn uniform(count: usize) -> Result<Self> {
        if count < 2 {
            return Err(Error::BadGrid(format!(
                "need at least 2 levels, got {count}"
            )));
        }
        let last = S::from_count(count - 1);
        let levels = (0..count)
            .map(|i| {
                if i + 1 == count {
                    S::one()
                } else {
                    S::from_count(i) / last
                }
            })
            .collect();
        Self::new(levels)
    }

    /// Builds a grid from arbitrary levels: keeps those in `[0, 1]`, adds both ends, sorts and dedups.
    pub fn from_unsorted(extra: impl IntoIterator<Item = S>) -> Self {
        let mut levels: Vec<S> = extra
            .into_iter()
            .filter(|a| *a >= S::zero() && *a <= S::one())
            .collect();
        levels.push(S::zero());
        levels.push(S::one());
        levels.sort_by(|a, b| a.partial_cmp(b).expect("NaN level"));
        levels.dedup();
        Self { levels }
    }

    /// This grid with additional levels merged in (levels outside `[0, 1]` are dropped).
    pub fn with_levels(&self, extra: impl IntoIterator<Item = S>) -> Self {
        Self::from_unsorted(self.levels.iter().copied().chain(extra))
    }

    pub fn union(&self, other: &Self) -> Self {
        if self == other {
            return self.clone();
        }
        self.with_levels(other.levels.iter().copied())
    }

    pub fn levels(&self) -> &[S] {
        &self.levels
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    /// Locates `alpha` as `(i, t)` with `alpha = levels[i] + t * (levels[i+1] - levels[i])`, `t` in `[0, 1)`.
    /// At a node `t` is exactly 0; at `alpha = 1` the last node is returned with `t = 0`.
    pub(crate) fn bracket(&self, alpha: S) -> (usize, S) {
        let n = self.levels.len();
        // index of the first level strictly greater than alpha
        let upper = self.levels.partition_point(|l| *l <= alpha);
        if upper == 0 {
            return (0, S::zero());
        }
        let i = upper - 1;
        if i + 1 >= n || self.levels[i] == alpha {
            return (i, S::zero());
        }
        let (a, b) = (self.levels[i], self.levels[i + 1]);
        (i, (alpha - a) / (b - a))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_grids() {
        assert!(AlphaGrid::new(vec![0.0]).is_err());
        assert!(AlphaGrid::new(vec![0.1, 1.0]).is_err());
        assert!(AlphaGrid::new(vec![0.0, 0.9]).is_err());
        assert!(AlphaGrid::new(vec![0.0, 0.5, 0.5, 1.0]).is_err());
        assert!(AlphaGrid::new(vec![0.0, 0.5, 1.0]).is_ok());
    }

    #[test]
    fn uniform_grid_hits_endpoints() {
        let g = AlphaGrid::<f64>::uniform(101).unwrap();
        assert_eq!(g.len(), 101);
        assert_eq!(g.levels()[0], 0.0);
        assert_eq!(g.levels()[100], 1.0);
        assert_eq!(g.levels()[50], 0.5);
    }

    #[test]
    fn bracket_at_nodes_is_exact() {
        let g = AlphaGrid::<f64>::new(vec![0.0, 0.25, 1.0]).unwrap();
        assert_eq!(g.bracket(0.25), (1, 0.0));
        assert_eq!(g.bracket(1.0), (2, 0.0));
        assert_eq!(g.bracket(0.0), (0, 0.0));
        let (i, t) = g.bracket(0.625);
        assert_eq!(i, 1);
        assert!((t - 0.5).abs() < 1e-15);
    }

    #[test]
    fn union_merges_and_dedups() {
        let a = AlphaGrid::new(vec![0.0, 0.5, 1.0]).unwrap();
        let b = AlphaGrid::new(vec![0.0, 0.25, 0.5, 1.0]).unwrap();
        assert_eq!(a.union(&b).levels(), &[0.0, 0.25, 0.5, 1.0]);
    }
}
