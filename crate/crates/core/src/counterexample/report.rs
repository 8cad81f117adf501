use serde::Serialize;

use super::{
    dgn_bound, exact_dinf_to_limit, exact_h_profile, family_modulus_oracle, make_limit, make_un,
    modulus_bound, modulus_lattice, pairwise_dinf_oracle,
};
use crate::error::{out_of_range, Result};
use crate::family::{
    compactness_conditions_report_with, default_alpha_levels, left_modulus, ConditionVerdicts,
    EquiContinuityReport, FamilyConfig, DEFAULT_FAMILY_EPS,
};
use crate::grid::AlphaGrid;
use crate::metrics::{
    d_infty_grid_lower_bound, d_infty_parametric, first_convergence_indices, Enclosure,
    DEFAULT_MAX_DEPTH, DEFAULT_TOL,
};
use crate::repr::{CutCurve1D, FuzzyNumber};

const THIRD: f64 = 1.0 / 3.0;

/// Knobs of [`refutation_report_with`]; `Default` mirrors [`refutation_report`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RefutationConfig {
    /// Members `u_1..u_{n_max}` enter the finite-family checks and the distance table.
    pub n_max: usize,
    pub family_eps: f64,
    /// Offsets `2^-k` for the finite-family moduli.
    pub family_delta_exponents: (i32, i32),
    pub convergence_eps: f64,
    /// Scan length for level convergence (closed-form evaluations per level).
    pub convergence_scan: usize,
    pub tol: f64,
    pub max_depth: u32,
    pub lattice_alphas: usize,
    pub lattice_deltas: usize,
    /// Index scan length for the uniform-in-`n` modulus oracle.
    pub oracle_n_max: usize,
    pub pairwise_grid: usize,
    /// Index ratio `m / n` of the pairwise non-Cauchy table.
    pub pairwise_ratio: usize,
    /// Uniform grid used for the grid-underestimation demonstration.
    pub demo_grid: usize,
    pub demo_index: usize,
}

impl Default for RefutationConfig {
    fn default() -> Self {
        Self {
            n_max: 100,
            family_eps: DEFAULT_FAMILY_EPS,
            family_delta_exponents: (2, 30),
            convergence_eps: 1e-3,
            convergence_scan: 100_000,
            tol: DEFAULT_TOL,
            max_depth: DEFAULT_MAX_DEPTH,
            lattice_alphas: 50,
            lattice_deltas: 19,
            oracle_n_max: 10_000,
            pairwise_grid: 10_000,
            pairwise_ratio: 10,
            demo_grid: 101,
            demo_index: 5,
        }
    }
}

/// Section (a): support-boundedness and equi-left-continuity.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConditionsSection {
    pub members: usize,
    pub support_radius: f64,
    pub condition_verdicts: ConditionVerdicts,
    pub equi_continuity: EquiContinuityReport<f64>,
    pub finite_family_conditions_hold: bool,
    /// `alpha,delta,beta,oracle,bound,ok` rows on the lattice `α - δ > 1/3`.
    /// Lattice rows on `α - δ > 1/3` with `β = α - δ`: the scanned modulus against the bound
    /// without the inner-derivative factor (`literal_bound`) and with it (`bound`).
    pub dgn_lattice_csv: String,
    pub dgn_lattice_nodes: usize,
    /// Nodes where the bound without the factor `3/2` is exceeded (all at `n = 1`).
    pub literal_bound_violations: usize,
    /// Largest `oracle - bound` over the lattice.
    pub dgn_max_excess: f64,
    pub dgn_domination_holds: bool,
    /// `alpha,delta,omega` rows for levels at or below 1/3, where every cut is `[0, 1]`.
    pub flat_region_csv: String,
    pub flat_region_zero: bool,
    pub conditions_hold: bool,
}

/// Section (b): convergence of `[u_n]_α` to `[u]_α` at each probed level.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceSection {
    pub eps: f64,
    pub scan: usize,
    /// `alpha,N,H_at_N`; `N` empty when not reached.
    pub first_index_csv: String,
    pub levels: usize,
    pub all_levels_converge: bool,
    /// `k,alpha,N` for levels `1/3 + 10^-k`.
    pub near_third_csv: String,
    pub near_third_indices_increase: bool,
    pub spot_alpha: f64,
    /// `n,H_generic,H_exact` at the spot level for `n = 1..n_max`.
    pub spot_csv: String,
    pub spot_paths_agree: bool,
    pub level_convergent: bool,
}

/// Section (c): supremum distances.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DistanceSection {
    pub tol: f64,
    /// `n,value,attained,enclosure_lower,enclosure_upper,enclosure_attained`
    pub distance_csv: String,
    pub all_exactly_one: bool,
    pub all_enclosures_certify_one: bool,
    pub demo: GridDemo,
    /// `n,m,value,alpha`
    pub pairwise_csv: String,
    pub pairwise_min: f64,
    /// `n,m,oracle,enclosure_lower,enclosure_upper`
    pub pairwise_cross_check_csv: String,
    pub pairwise_cross_check_ok: bool,
    pub closedness: ClosednessArgument,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridDemo {
    pub n: usize,
    pub grid_levels: usize,
    pub grid_value: f64,
    pub enclosure: Enclosure<f64>,
}

/// Closedness in `d∞` rests on a short argument, not on the finite computation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClosednessArgument {
    pub kind: &'static str,
    pub steps: Vec<&'static str>,
    /// Numbers that corroborate the steps; none of them proves closedness on its own.
    pub corroboration: Vec<String>,
}

/// Section (d).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Conclusion {
    pub support_bounded_and_equi_left_continuous: bool,
    pub closed_by_argument: bool,
    pub level_convergent_to_limit: bool,
    pub distance_to_limit_is_one: bool,
    pub not_compact_in_supremum_metric: bool,
    /// All conditions of the proposed supremum-metric criterion hold while compactness fails.
    pub criterion_refuted: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RefutationReport {
    pub config: RefutationConfig,
    pub conditions: ConditionsSection,
    pub level_convergence: ConvergenceSection,
    pub distances: DistanceSection,
    pub conclusion: Conclusion,
}

pub fn refutation_report(n_max: usize) -> Result<RefutationReport> {
    refutation_report_with(&RefutationConfig {
        n_max,
        ..RefutationConfig::default()
    })
}

pub fn refutation_report_with(config: &RefutationConfig) -> Result<RefutationReport> {
    if config.n_max < 2 {
        return out_of_range("n_max", config.n_max as f64);
    }
    if config.pairwise_ratio < 2 || config.demo_index == 0 {
        return out_of_range("pairwise ratio", config.pairwise_ratio as f64);
    }
    let members = (1..=config.n_max)
        .map(make_un)
        .collect::<Result<Vec<CutCurve1D<f64>>>>()?;
    let limit = make_limit::<f64>();

    let conditions = conditions_section(config, &members)?;
    let level_convergence = convergence_section(config, &members, &limit)?;
    let distances = distance_section(config, &members, &limit)?;

    let support_ok = conditions.conditions_hold;
    let conclusion = Conclusion {
        support_bounded_and_equi_left_continuous: support_ok,
        closed_by_argument: true,
        level_convergent_to_limit: level_convergence.level_convergent,
        distance_to_limit_is_one: distances.all_exactly_one && distances.all_enclosures_certify_one,
        not_compact_in_supremum_metric: distances.all_exactly_one && distances.pairwise_min > 0.5,
        criterion_refuted: false,
    };
    let criterion_refuted = conclusion.support_bounded_and_equi_left_continuous
        && conclusion.closed_by_argument
        && conclusion.level_convergent_to_limit
        && conclusion.distance_to_limit_is_one
        && conclusion.not_compact_in_supremum_metric;
    Ok(RefutationReport {
        config: config.clone(),
        conditions,
        level_convergence,
        distances,
        conclusion: Conclusion {
            criterion_refuted,
            ..conclusion
        },
    })
}

/// Levels `1/3 + s·10^-k`, `k = 2..=6`.
fn near_third(sign: f64) -> impl Iterator<Item = (i32, f64)> {
    (2..=6).map(move |k| (k, THIRD + sign * 10f64.powi(-k)))
}

fn csv_string(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let write = |w: &mut csv::Writer<Vec<u8>>, rec: &[String]| {
        w.write_record(rec).expect("in-memory csv write")
    };
    write(
        &mut w,
        &header.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
    );
    for row in rows {
        write(&mut w, &row);
    }
    let bytes = w.into_inner().expect("in-memory csv flush");
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn conditions_section(
    config: &RefutationConfig,
    members: &[CutCurve1D<f64>],
) -> Result<ConditionsSection> {
    let (k_lo, k_hi) = config.family_delta_exponents;
    let family_config = FamilyConfig {
        alphas: default_alpha_levels::<f64>()
            .into_iter()
            .chain(near_third(1.0).map(|(_, a)| a))
            .chain(near_third(-1.0).map(|(_, a)| a))
            .collect(),
        deltas: (k_lo..=k_hi).map(|k| 2f64.powi(-k)).collect(),
        eps: config.family_eps,
        support_threshold: None,
        closed_in_level_topology: None,
        closed_in_supremum_metric: Some(true),
    };
    let diag = compactness_conditions_report_with(members, &family_config)?;
    let finite_family_conditions_hold = diag.bounded && diag.equi_continuity.left_passed;

    // uniform-in-n modulus on the lattice α - δ > 1/3, against both bounds
    let mut rows = Vec::new();
    let mut literal_violations = 0;
    let mut dgn_domination_holds = true;
    let mut max_excess = f64::NEG_INFINITY;
    for (alpha, delta) in modulus_lattice(config.lattice_alphas, config.lattice_deltas) {
        let beta = alpha - delta;
        let oracle = family_modulus_oracle(alpha, beta, config.oracle_n_max)?;
        let literal = dgn_bound(alpha, delta, beta)?;
        let bound = modulus_bound(alpha, delta, beta)?;
        let literal_ok = oracle.value <= literal + 1e-12;
        let ok = oracle.value <= bound + 1e-12 && oracle.tail_bound <= bound + 1e-12;
        literal_violations += usize::from(!literal_ok);
        dgn_domination_holds &= ok;
        max_excess = max_excess.max(oracle.value - bound);
        rows.push(vec![
            alpha.to_string(),
            delta.to_string(),
            beta.to_string(),
            oracle.value.to_string(),
            oracle.argmax_n.to_string(),
            oracle.tail_bound.to_string(),
            literal.to_string(),
            literal_ok.to_string(),
            bound.to_string(),
            ok.to_string(),
        ]);
    }
    let dgn_lattice_nodes = rows.len();
    let dgn_lattice_csv = csv_string(
        &[
            "alpha",
            "delta",
            "beta",
            "oracle",
            "argmax_n",
            "tail_bound",
            "literal_bound",
            "literal_ok",
            "bound",
            "ok",
        ],
        rows,
    )?;

    let mut flat = Vec::new();
    for alpha in [THIRD, 0.3, 0.25, 0.1, 0.01] {
        for delta in [alpha, alpha / 2.0, 0.25f64.min(alpha), 2f64.powi(-20)] {
            let omega = left_modulus(members, alpha, delta)?;
            flat.push((alpha, delta, omega));
        }
    }
    let flat_region_zero = flat.iter().all(|&(_, _, w)| w == 0.0);
    let flat_region_csv = csv_string(
        &["alpha", "delta", "omega"],
        flat.iter()
            .map(|(a, d, w)| vec![a.to_string(), d.to_string(), w.to_string()]),
    )?;

    Ok(ConditionsSection {
        members: members.len(),
        support_radius: diag.support_radius,
        conditions_hold: finite_family_conditions_hold && dgn_domination_holds && flat_region_zero,
        condition_verdicts: diag.condition_verdicts,
        equi_continuity: diag.equi_continuity,
        finite_family_conditions_hold,
        dgn_lattice_csv,
        dgn_lattice_nodes,
        literal_bound_violations: literal_violations,
        dgn_max_excess: max_excess,
        dgn_domination_holds,
        flat_region_csv,
        flat_region_zero,
    })
}

/// 101 uniform levels plus `1/3 ± 10^-k`, `k = 2..=6`.
pub fn report_grid() -> AlphaGrid<f64> {
    AlphaGrid::uniform(101)
        .expect("valid size")
        .with_levels(near_third(1.0).chain(near_third(-1.0)).map(|(_, a)| a))
}

fn convergence_section(
    config: &RefutationConfig,
    members: &[CutCurve1D<f64>],
    limit: &CutCurve1D<f64>,
) -> Result<ConvergenceSection> {
    let grid = report_grid();
    let scan = config.convergence_scan.max(config.n_max);
    let first = first_convergence_indices(
        |n| make_un::<f64>(n).expect("positive index"),
        limit,
        &grid,
        config.convergence_eps,
        scan,
    );
    let all_levels_converge = first.iter().all(Option::is_some);
    let first_index_csv = csv_string(
        &["alpha", "N", "H_at_N"],
        grid.levels().iter().zip(&first).map(|(a, f)| match f {
            Some((n, h)) => vec![a.to_string(), n.to_string(), h.to_string()],
            None => vec![a.to_string(), String::new(), String::new()],
        }),
    )?;

    let near: Vec<(i32, f64, Option<usize>)> = near_third(1.0)
        .map(|(k, a)| {
            let i = grid
                .levels()
                .iter()
                .position(|&l| l == a)
                .expect("level on report grid");
            (k, a, first[i].map(|(n, _)| n))
        })
        .collect();
    let near_third_indices_increase = near
        .windows(2)
        .all(|w| matches!((w[0].2, w[1].2), (Some(a), Some(b)) if b > a));
    let near_third_csv = csv_string(
        &["k", "alpha", "N"],
        near.iter().map(|(k, a, n)| {
            vec![
                k.to_string(),
                a.to_string(),
                n.map_or(String::new(), |n| n.to_string()),
            ]
        }),
    )?;

    let spot_alpha = 2.0 / 3.0;
    let target = limit.cut(spot_alpha);
    let mut spot = Vec::with_capacity(members.len());
    for (i, u) in members.iter().enumerate() {
        let generic = u.cut(spot_alpha).hausdorff(&target);
        let exact = exact_h_profile(i + 1, spot_alpha)?;
        spot.push((i + 1, generic, exact));
    }
    let spot_paths_agree = spot.iter().all(|&(_, g, e)| g == e);
    let spot_csv = csv_string(
        &["n", "H_generic", "H_exact"],
        spot.iter()
            .map(|(n, g, e)| vec![n.to_string(), g.to_string(), e.to_string()]),
    )?;

    Ok(ConvergenceSection {
        eps: config.convergence_eps,
        scan,
        first_index_csv,
        levels: grid.len(),
        level_convergent: all_levels_converge && spot_paths_agree,
        all_levels_converge,
        near_third_csv,
        near_third_indices_increase,
        spot_alpha,
        spot_csv,
        spot_paths_agree,
    })
}

fn distance_section(
    config: &RefutationConfig,
    members: &[CutCurve1D<f64>],
    limit: &CutCurve1D<f64>,
) -> Result<DistanceSection> {
    let mut rows = Vec::with_capacity(members.len());
    let mut all_exactly_one = true;
    let mut all_certify = true;
    for (i, u) in members.iter().enumerate() {
        let exact = exact_dinf_to_limit::<f64>(i + 1)?;
        all_exactly_one &= exact.value == 1.0 && !exact.attained;
        let enc = d_infty_parametric(u, limit, config.tol, config.max_depth).unwrap_or_else(|e| {
            e.enclosure().unwrap_or(Enclosure {
                lower: 0.0,
                upper: f64::INFINITY,
                attained: false,
                location: 0.0,
            })
        });
        all_certify &= enc.contains(1.0) && enc.width() <= config.tol && !enc.attained;
        rows.push(vec![
            (i + 1).to_string(),
            exact.value.to_string(),
            exact.attained.to_string(),
            enc.lower.to_string(),
            enc.upper.to_string(),
            enc.attained.to_string(),
        ]);
    }
    let distance_csv = csv_string(
        &[
            "n",
            "value",
            "attained",
            "enclosure_lower",
            "enclosure_upper",
            "enclosure_attained",
        ],
        rows,
    )?;

    let demo_n = config.demo_index;
    let demo_u = make_un::<f64>(demo_n)?;
    let demo_grid = AlphaGrid::uniform(config.demo_grid)?;
    let grid_value = d_infty_grid_lower_bound(&demo_u, limit, &demo_grid);
    let enclosure = d_infty_parametric(&demo_u, limit, config.tol, config.max_depth)
        .unwrap_or_else(|e| {
            e.enclosure().unwrap_or(Enclosure {
                lower: 0.0,
                upper: f64::INFINITY,
                attained: false,
                location: 0.0,
            })
        });
    let demo = GridDemo {
        n: demo_n,
        grid_levels: config.demo_grid,
        grid_value,
        enclosure,
    };

    let ratio = config.pairwise_ratio;
    let mut pairs = Vec::with_capacity(members.len());
    for n in 1..=config.n_max {
        let p = pairwise_dinf_oracle::<f64>(n, ratio * n, config.pairwise_grid)?;
        pairs.push((n, ratio * n, p));
    }
    let pairwise_min = pairs
        .iter()
        .map(|(_, _, p)| p.value)
        .fold(f64::INFINITY, f64::min);
    let pairwise_csv = csv_string(
        &["n", "m", "value", "alpha"],
        pairs.iter().map(|(n, m, p)| {
            vec![
                n.to_string(),
                m.to_string(),
                p.value.to_string(),
                p.alpha.to_string(),
            ]
        }),
    )?;

    // only where the maximizing level is resolvable in double precision
    let check_tol = 1e-6;
    let mut cross = Vec::new();
    for n in [1usize, 2, 3].into_iter().filter(|&n| n <= config.n_max) {
        let m = ratio * n;
        let oracle = pairwise_dinf_oracle::<f64>(n, m, config.pairwise_grid)?.value;
        let enc = d_infty_parametric(
            &make_un::<f64>(n)?,
            &make_un::<f64>(m)?,
            check_tol,
            config.max_depth,
        )
        .unwrap_or_else(|e| {
            e.enclosure().unwrap_or(Enclosure {
                lower: 0.0,
                upper: f64::INFINITY,
                attained: false,
                location: 0.0,
            })
        });
        cross.push((n, m, oracle, enc));
    }
    // the grid oracle is a lower bound on a value the enclosure brackets
    let pairwise_cross_check_ok = cross.iter().all(|(_, _, o, e)| {
        *o <= e.upper + 1e-12 && e.lower - *o <= 1e-4 && e.width() <= check_tol
    });
    let pairwise_cross_check_csv = csv_string(
        &["n", "m", "oracle", "enclosure_lower", "enclosure_upper"],
        cross.iter().map(|(n, m, o, e)| {
            vec![
                n.to_string(),
                m.to_string(),
                o.to_string(),
                e.lower.to_string(),
                e.upper.to_string(),
            ]
        }),
    )?;

    let closedness = ClosednessArgument {
        kind: "analytic argument with numeric corroboration",
        steps: vec![
            "a subsequence converging in d-infinity also converges level-wise, to the same element",
            "every subsequence of (u_n) converges level-wise to u",
            "d-infinity(u_n, u) = 1 for every n, so no subsequence converges to u in d-infinity",
            "hence no subsequence converges in d-infinity, and the set {u_n} has no limit point",
            "a set without limit points is closed, and an infinite one is not compact",
        ],
        corroboration: vec![
            format!(
                "exact distance to the limit is 1 (not attained) for n = 1..={}",
                config.n_max
            ),
            format!(
                "pairwise d-infinity(u_n, u_{{{ratio}n}}) >= {pairwise_min} for n = 1..={}",
                config.n_max
            ),
        ],
    };

    Ok(DistanceSection {
        tol: config.tol,
        distance_csv,
        all_exactly_one,
        all_enclosures_certify_one: all_certify,
        demo,
        pairwise_csv,
        pairwise_min,
        pairwise_cross_check_csv,
        pairwise_cross_check_ok,
        closedness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> RefutationConfig {
        RefutationConfig {
            n_max: 2,
            convergence_scan: 20_000,
            oracle_n_max: 100,
            lattice_alphas: 5,
            lattice_deltas: 4,
            pairwise_grid: 1000,
            ..RefutationConfig::default()
        }
    }

    #[test]
    fn small_report_is_green() {
        let r = refutation_report_with(&small()).unwrap();
        assert!(
            r.conditions.conditions_hold,
            "{}",
            r.conditions.dgn_lattice_csv
        );
        assert_eq!(r.conditions.dgn_lattice_nodes, 20);
        assert!(r.level_convergence.level_convergent);
        assert!(r.level_convergence.near_third_indices_increase);
        assert!(r.distances.all_exactly_one);
        assert!(r.distances.all_enclosures_certify_one);
        assert!(
            r.distances.pairwise_cross_check_ok,
            "{}",
            r.distances.pairwise_cross_check_csv
        );
        assert!(r.conclusion.criterion_refuted);
        assert_eq!(r.distances.distance_csv.lines().count(), 3);
    }

    #[test]
    fn spot_table_matches_closed_form() {
        let r = refutation_report_with(&small()).unwrap();
        let mut lines = r.level_convergence.spot_csv.lines();
        assert_eq!(lines.next(), Some("n,H_generic,H_exact"));
        let first: Vec<&str> = lines.next().unwrap().split(',').collect();
        assert_eq!(first, ["1", "0.5", "0.5"]);
    }

    #[test]
    fn demo_underestimates() {
        let r = refutation_report_with(&small()).unwrap();
        let d = &r.distances.demo;
        assert!((d.grid_value - (1.0 - 0.01f64.powf(0.2))).abs() < 1e-12);
        assert!(d.enclosure.contains(1.0));
    }

    #[test]
    fn rejects_tiny_n_max() {
        assert!(refutation_report(1).is_err());
    }
}
