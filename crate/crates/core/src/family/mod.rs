//! Family-level diagnostics: support bounds, equi-continuity moduli and the checkable
//! compactness conditions for families of fuzzy numbers.
//!
//! Everything here works on finite families. A verdict at tolerance `ε` means a witness `δ`
//! was found on the tested δ-grid; it is a finite certificate, not the topological property.

mod random;

pub use random::{random_family, JumpInjection, RandomShape};

use serde::Serialize;

use crate::body::FuzzyBody2D;
use crate::error::{out_of_range, Error, Result};
use crate::grid::AlphaGrid;
use crate::metrics::hausdorff_support_2d;
use crate::repr::FuzzyNumber;
use crate::scalar::{max_of, Scalar};

pub const DEFAULT_FAMILY_EPS: f64 = 1e-2;

/// Geometric offsets `2^-k`, `k = 2..=20`, largest first.
pub fn default_delta_grid<S: Scalar>() -> Vec<S> {
    (2..=20).map(|k| S::lit(2f64.powi(-k))).collect()
}

/// The 100 levels `0.01, 0.02, …, 1` of the 101-node uniform grid, level 0 excluded.
pub fn default_alpha_levels<S: Scalar>() -> Vec<S> {
    AlphaGrid::uniform(101).expect("uniform grid").levels()[1..].to_vec()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SupportBound<S> {
    /// Smallest `R` with every `[u]_0` inside `[-R, R]`.
    pub radius: S,
    pub bounded: bool,
}

pub fn support_bound<S: Scalar, F: FuzzyNumber<S>>(family: &[F]) -> Result<SupportBound<S>> {
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let radius = family.iter().fold(S::zero(), |acc, u| {
        let c = u.cut(S::zero());
        max_of(acc, max_of(c.lo.abs(), c.hi.abs()))
    });
    Ok(SupportBound {
        radius,
        bounded: radius.is_finite(),
    })
}

/// `ω(α, δ) = sup_u sup_{α'∈[α-δ, α]} H([u]_α, [u]_{α'})`.
///
/// Nested cuts put the inner supremum at `α' = α - δ`.
pub fn left_modulus<S: Scalar, F: FuzzyNumber<S>>(family: &[F], alpha: S, delta: S) -> Result<S> {
    if !(alpha > S::zero() && alpha <= S::one()) {
        return out_of_range("alpha", alpha.as_f64());
    }
    if !(delta > S::zero() && alpha - delta >= S::zero()) {
        return out_of_range("delta", delta.as_f64());
    }
    Ok(family.iter().fold(S::zero(), |acc, u| {
        max_of(acc, u.cut(alpha).hausdorff(&u.cut(alpha - delta)))
    }))
}

/// `sup_u H([u]_0, [u]_δ)`.
pub fn right_modulus_at_zero<S: Scalar, F: FuzzyNumber<S>>(family: &[F], delta: S) -> Result<S> {
    if !(delta > S::zero() && delta <= S::one()) {
        return out_of_range("delta", delta.as_f64());
    }
    Ok(family.iter().fold(S::zero(), |acc, u| {
        max_of(acc, u.cut(S::zero()).hausdorff(&u.cut(delta)))
    }))
}

/// Same modulus for fuzzy bodies, measured on support functions over all sampled directions.
pub fn support_left_modulus<S: Scalar>(family: &[FuzzyBody2D<S>], alpha: S, delta: S) -> Result<S> {
    if !(delta > S::zero() && alpha - delta >= S::zero()) {
        return out_of_range("delta", delta.as_f64());
    }
    family.iter().try_fold(S::zero(), |acc, body| {
        let d = hausdorff_support_2d(&body.body_at(alpha)?, &body.body_at(alpha - delta)?)?;
        Ok(max_of(acc, d))
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModulusSample<S> {
    pub delta: S,
    pub omega: S,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModulusProfile<S> {
    pub alpha: S,
    pub moduli: Vec<ModulusSample<S>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EquiEntry<S> {
    pub alpha: S,
    /// Largest tested `δ` with modulus `≤ ε`; `None` when no tested `δ` works.
    pub witness_delta: Option<S>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquiContinuityReport<S> {
    pub eps: S,
    pub left: Vec<EquiEntry<S>>,
    pub right_at_zero: EquiEntry<S>,
    pub left_passed: bool,
    pub right_passed: bool,
}

impl<S: Scalar> EquiContinuityReport<S> {
    pub fn passed(&self) -> bool {
        self.left_passed && self.right_passed
    }

    pub fn witness_at(&self, alpha: S) -> Option<S> {
        self.left
            .iter()
            .find(|e| e.alpha == alpha)
            .and_then(|e| e.witness_delta)
    }
}

fn largest_witness<S: Scalar>(samples: &[ModulusSample<S>], eps: S) -> Option<S> {
    samples
        .iter()
        .filter(|s| s.omega <= eps)
        .map(|s| s.delta)
        .fold(None, |acc, d| Some(acc.map_or(d, |a: S| max_of(a, d))))
}

fn left_profile<S: Scalar, F: FuzzyNumber<S>>(
    family: &[F],
    alpha: S,
    deltas: &[S],
) -> ModulusProfile<S> {
    let moduli = deltas
        .iter()
        .filter(|&&d| d > S::zero() && alpha - d >= S::zero())
        .map(|&delta| ModulusSample {
            delta,
            omega: left_modulus(family, alpha, delta).expect("admissible offset"),
        })
        .collect();
    ModulusProfile { alpha, moduli }
}

fn right_profile<S: Scalar, F: FuzzyNumber<S>>(
    family: &[F],
    deltas: &[S],
) -> Vec<ModulusSample<S>> {
    deltas
        .iter()
        .filter(|&&d| d > S::zero() && d <= S::one())
        .map(|&delta| ModulusSample {
            delta,
            omega: right_modulus_at_zero(family, delta).expect("admissible offset"),
        })
        .collect()
}

fn equi_from_profiles<S: Scalar>(
    left: &[ModulusProfile<S>],
    right: &[ModulusSample<S>],
    eps: S,
) -> EquiContinuityReport<S> {
    let left: Vec<_> = left
        .iter()
        .map(|p| EquiEntry {
            alpha: p.alpha,
            witness_delta: largest_witness(&p.moduli, eps),
        })
        .collect();
    let right_at_zero = EquiEntry {
        alpha: S::zero(),
        witness_delta: largest_witness(right, eps),
    };
    EquiContinuityReport {
        eps,
        left_passed: left.iter().all(|e| e.witness_delta.is_some()),
        right_passed: right_at_zero.witness_delta.is_some(),
        left,
        right_at_zero,
    }
}

/// Witness offsets for equi-left-continuity at every `α ∈ alphas ∩ (0, 1]` and
/// equi-right-continuity at 0.
pub fn equi_continuity_report<S: Scalar, F: FuzzyNumber<S>>(
    family: &[F],
    alphas: &[S],
    deltas: &[S],
    eps: S,
) -> Result<EquiContinuityReport<S>> {
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    if alphas.is_empty() || deltas.is_empty() || !(eps > S::zero()) {
        return out_of_range("grid size or eps", eps.as_f64());
    }
    let left: Vec<_> = alphas
        .iter()
        .filter(|&&a| a > S::zero() && a <= S::one())
        .map(|&a| left_profile(family, a, deltas))
        .collect();
    Ok(equi_from_profiles(
        &left,
        &right_profile(family, deltas),
        eps,
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EventualWitness<S> {
    pub k0: usize,
    pub delta: S,
}

/// Looks for `k₀ ≤ n_max` and a tested `δ` with `H([u_k]_{α-δ}, [u_k]_α) ≤ ε` for all
/// `k₀ ≤ k ≤ n_max`. Prefers the smallest `k₀`, then the largest `δ`.
pub fn eventually_equi_left<S: Scalar, F: FuzzyNumber<S>>(
    member: impl Fn(usize) -> F,
    alpha: S,
    eps: S,
    n_max: usize,
    deltas: &[S],
) -> Result<Option<EventualWitness<S>>> {
    if !(alpha > S::zero() && alpha <= S::one()) {
        return out_of_range("alpha", alpha.as_f64());
    }
    if !(eps > S::zero()) || n_max == 0 {
        return out_of_range("eps", eps.as_f64());
    }
    let deltas: Vec<S> = deltas
        .iter()
        .copied()
        .filter(|&d| d > S::zero() && alpha - d >= S::zero())
        .collect();
    // tail[j] = length of the trailing run of indices that satisfy the bound for deltas[j]
    let mut tail = vec![0usize; deltas.len()];
    for k in 1..=n_max {
        let u = member(k);
        let here = u.cut(alpha);
        for (t, &d) in tail.iter_mut().zip(&deltas) {
            if here.hausdorff(&u.cut(alpha - d)) <= eps {
                *t += 1;
            } else {
                *t = 0;
            }
        }
    }
    let mut best: Option<EventualWitness<S>> = None;
    for (&t, &delta) in tail.iter().zip(&deltas) {
        if t == 0 {
            continue;
        }
        let cand = EventualWitness {
            k0: n_max - t + 1,
            delta,
        };
        best = match best {
            Some(b) if b.k0 < cand.k0 || (b.k0 == cand.k0 && b.delta >= cand.delta) => Some(b),
            _ => Some(cand),
        };
    }
    Ok(best)
}

/// Uniform parameter samples `f(a + (b-a)·i/(count-1))`, `i = 0..count`.
pub fn path_family<S: Scalar, F>(f: impl Fn(S) -> F, a: S, b: S, count: usize) -> Result<Vec<F>> {
    if count < 2 {
        return out_of_range("sample count", count as f64);
    }
    let last = S::from_count(count - 1);
    Ok((0..count)
        .map(|i| {
            if i + 1 == count {
                b
            } else {
                a + (b - a) * S::from_count(i) / last
            }
        })
        .map(f)
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Property {
    UniformlySupportBounded,
    EquiLeftContinuous,
    EquiRightContinuousAtZero,
    ClosedInLevelTopology,
    ClosedInSupremumMetric,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "status")]
pub enum Status {
    Pass,
    Fail,
    /// Not decidable from a finite family; nothing was asserted.
    NotEvaluated,
    /// Supplied by the caller, not computed.
    Asserted {
        holds: bool,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Condition {
    pub property: Property,
    #[serde(flatten)]
    pub status: Status,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LabelledCondition {
    pub label: &'static str,
    pub condition: Condition,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriterionVerdict {
    pub name: &'static str,
    pub conditions: Vec<LabelledCondition>,
    /// Every computed condition passed (caller assertions included, unevaluated ones ignored).
    pub checkable_conditions_hold: bool,
}

impl CriterionVerdict {
    fn new(name: &'static str, conditions: Vec<LabelledCondition>) -> Self {
        let checkable_conditions_hold = conditions.iter().all(|c| {
            matches!(
                c.condition.status,
                Status::Pass | Status::NotEvaluated | Status::Asserted { holds: true }
            )
        });
        Self {
            name,
            conditions,
            checkable_conditions_hold,
        }
    }

    pub fn condition(&self, property: Property) -> Option<&Condition> {
        self.conditions
            .iter()
            .map(|c| &c.condition)
            .find(|c| c.property == property)
    }
}

/// Verdicts for the two compactness criteria evaluated from one computation.
///
/// The level-topology criterion asks for closedness, uniform support-boundedness and
/// equi-left-continuity on `(0, 1]` plus equi-right-continuity at 0. The supremum-metric
/// criterion asks for uniform support-boundedness, closedness in `d∞` and equi-left-continuity
/// on `(0, 1]`. Shared conditions are the same [`Condition`] values in both lists.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConditionVerdicts {
    pub level_topology: CriterionVerdict,
    pub supremum_metric: CriterionVerdict,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FamilyDiagnostics<S> {
    pub support_radius: S,
    pub bounded: bool,
    pub left_moduli: Vec<ModulusProfile<S>>,
    pub right_modulus_at_zero: Vec<ModulusSample<S>>,
    pub equi_continuity: EquiContinuityReport<S>,
    pub condition_verdicts: ConditionVerdicts,
}

/// Grids, tolerance and caller assertions for [`compactness_conditions_report_with`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FamilyConfig<S> {
    pub alphas: Vec<S>,
    pub deltas: Vec<S>,
    pub eps: S,
    /// Radius the supports must fit in, if any.
    pub support_threshold: Option<S>,
    pub closed_in_level_topology: Option<bool>,
    pub closed_in_supremum_metric: Option<bool>,
}

impl<S: Scalar> Default for FamilyConfig<S> {
    fn default() -> Self {
        Self {
            alphas: default_alpha_levels(),
            deltas: default_delta_grid(),
            eps: S::lit(DEFAULT_FAMILY_EPS),
            support_threshold: None,
            closed_in_level_topology: None,
            closed_in_supremum_metric: None,
        }
    }
}

fn closedness(property: Property, asserted: Option<bool>) -> Condition {
    match asserted {
        Some(holds) => Condition { property, status: Status::Asserted { holds }, detail: "supplied by caller assertion".into() },
        None => Condition {
            property,
            status: Status::NotEvaluated,
            detail: "not evaluated: closedness is not decidable from a finite family; supply by caller assertion".into(),
        },
    }
}

fn pass_fail(ok: bool) -> Status {
    if ok {
        Status::Pass
    } else {
        Status::Fail
    }
}

pub fn compactness_conditions_report<S: Scalar, F: FuzzyNumber<S>>(
    family: &[F],
) -> Result<FamilyDiagnostics<S>> {
    compactness_conditions_report_with(family, &FamilyConfig::default())
}

pub fn compactness_conditions_report_with<S: Scalar, F: FuzzyNumber<S>>(
    family: &[F],
    config: &FamilyConfig<S>,
) -> Result<FamilyDiagnostics<S>> {
    let bound = support_bound(family)?;
    let left_moduli: Vec<_> = config
        .alphas
        .iter()
        .filter(|&&a| a > S::zero() && a <= S::one())
        .map(|&a| left_profile(family, a, &config.deltas))
        .collect();
    let right = right_profile(family, &config.deltas);
    let equi = equi_from_profiles(&left_moduli, &right, config.eps);

    let within = config.support_threshold.is_none_or(|r| bound.radius <= r);
    let support = Condition {
        property: Property::UniformlySupportBounded,
        status: pass_fail(bound.bounded && within),
        detail: format!("support radius {}", bound.radius),
    };
    let failing: Vec<String> = equi
        .left
        .iter()
        .filter(|e| e.witness_delta.is_none())
        .map(|e| e.alpha.to_string())
        .collect();
    let left = Condition {
        property: Property::EquiLeftContinuous,
        status: pass_fail(equi.left_passed),
        detail: if failing.is_empty() {
            format!(
                "witness delta found at all {} levels for eps {}",
                equi.left.len(),
                config.eps
            )
        } else {
            format!(
                "no witness delta at levels [{}] for eps {}",
                failing.join(", "),
                config.eps
            )
        },
    };
    let right_zero = Condition {
        property: Property::EquiRightContinuousAtZero,
        status: pass_fail(equi.right_passed),
        detail: match equi.right_at_zero.witness_delta {
            Some(d) => format!("witness delta {d} for eps {}", config.eps),
            None => format!("no witness delta for eps {}", config.eps),
        },
    };

    let level_topology = CriterionVerdict::new(
        "compactness in the level-convergence topology",
        vec![
            LabelledCondition {
                label: "1",
                condition: closedness(
                    Property::ClosedInLevelTopology,
                    config.closed_in_level_topology,
                ),
            },
            LabelledCondition {
                label: "2",
                condition: support.clone(),
            },
            LabelledCondition {
                label: "3a",
                condition: left.clone(),
            },
            LabelledCondition {
                label: "3b",
                condition: right_zero,
            },
        ],
    );
    let supremum_metric = CriterionVerdict::new(
        "proposed compactness criterion for the supremum metric",
        vec![
            LabelledCondition {
                label: "1",
                condition: support,
            },
            LabelledCondition {
                label: "2",
                condition: closedness(
                    Property::ClosedInSupremumMetric,
                    config.closed_in_supremum_metric,
                ),
            },
            LabelledCondition {
                label: "3",
                condition: left,
            },
        ],
    );

    Ok(FamilyDiagnostics {
        support_radius: bound.radius,
        bounded: bound.bounded,
        left_moduli,
        right_modulus_at_zero: right,
        equi_continuity: equi,
        condition_verdicts: ConditionVerdicts {
            level_topology,
            supremum_metric,
        },
    })
}
