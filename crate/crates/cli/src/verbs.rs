use levelcut::counterexample::{make_un, refutation_report_with, RefutationConfig};
use levelcut::family::{compactness_conditions_report_with, FamilyConfig, DEFAULT_FAMILY_EPS};
use levelcut::metrics::{
    d_infty_parametric, d_infty_sampled_at, hausdorff_support_2d, level_convergence_report,
    level_distance_profile, Enclosure, DEFAULT_MAX_DEPTH, DEFAULT_TOL,
};
use levelcut::repr::DEFAULT_VALIDATION_TOL;
use levelcut::{validate_representation, AlphaGrid, Fuzzy1D, FuzzyBody2D, ValidationReport};
use serde::Serialize;

use crate::input::{auto_grid, load, load_all, Input};
use crate::options::{DeltaGrid, GridSpec};
use crate::output::{render, Header, Rendered, Report, Table, Verdict};
use crate::{Cli, CliError, Command, Format};

const DEFAULT_CONVERGE_EPS: f64 = 1e-3;
const DEFAULT_N_MAX: usize = 100;

/// Resolved options; `None` means the verb default applies.
#[derive(Debug, Clone)]
pub(crate) struct Settings {
    grid: GridSpec,
    explicit_grid: Option<AlphaGrid<f64>>,
    tol: Option<f64>,
    eps: Option<f64>,
    n_max: Option<usize>,
    delta_grid: DeltaGrid,
    format: Option<Format>,
    strict: bool,
}

impl Settings {
    pub(crate) fn from_cli(cli: &Cli) -> Result<Self, CliError> {
        let grid = match &cli.grid {
            Some(g) => GridSpec::parse(g)?,
            None => GridSpec::Auto,
        };
        let explicit_grid = grid.resolve()?;
        for (name, v) in [("--tol", cli.tol), ("--eps", cli.eps)] {
            if let Some(v) = v {
                if !(v > 0.0 && v.is_finite()) {
                    return Err(CliError::Usage(format!("{name} must be positive, got {v}")));
                }
            }
        }
        if cli.n_max == Some(0) {
            return Err(CliError::Usage("--n-max must be at least 1".into()));
        }
        Ok(Self {
            grid,
            explicit_grid,
            tol: cli.tol,
            eps: cli.eps,
            n_max: cli.n_max,
            delta_grid: DeltaGrid::parse(cli.delta_grid.as_deref().unwrap_or(DeltaGrid::DEFAULT))?,
            format: cli.format,
            strict: cli.strict,
        })
    }

    fn format_or(&self, default: Format) -> Format {
        self.format.unwrap_or(default)
    }
}

/// What every report header echoes.
#[derive(Debug, Clone, Serialize)]
struct Echo {
    grid: GridSpec,
    grid_levels: Option<usize>,
    tol: f64,
    max_depth: u32,
    eps: f64,
    n_max: Option<usize>,
    delta_grid: String,
    format: Format,
    strict: bool,
}

impl Echo {
    fn new(
        s: &Settings,
        grid: Option<&AlphaGrid<f64>>,
        tol: f64,
        eps: f64,
        n_max: Option<usize>,
        format: Format,
    ) -> Self {
        Self {
            grid: s.grid.clone(),
            grid_levels: grid.map(AlphaGrid::len),
            tol,
            max_depth: DEFAULT_MAX_DEPTH,
            eps,
            n_max,
            delta_grid: s.delta_grid.spec.clone(),
            format,
            strict: s.strict,
        }
    }
}

fn header<C: Serialize>(verb: &'static str, inputs: &[Input], settings: C) -> Header<C> {
    Header {
        tool: "levelcut",
        version: env!("CARGO_PKG_VERSION"),
        verb,
        inputs: inputs
            .iter()
            .map(|i| format!("{} ({})", i.source, i.kind))
            .collect(),
        settings,
    }
}

fn num(x: f64) -> String {
    x.to_string()
}

pub(crate) fn dispatch(command: &Command, s: &Settings) -> Result<Rendered, CliError> {
    match command {
        Command::Validate { inputs } => validate(&load_all(inputs)?, s),
        Command::Dist { a, b } => dist(&load(a)?, &load(b)?, s),
        Command::Profile { reference, members } => {
            profile(&load(reference)?, &load_all(members)?, s)
        }
        Command::Converge { limit, members } => converge(&load(limit)?, &load_all(members)?, s),
        Command::FamilyReport { members } => family_report(&load_all(members)?, s),
        Command::Counterexample => counterexample(s),
    }
}

fn single<'a>(inputs: &'a [Input], what: &str) -> Result<&'a Input, CliError> {
    match inputs {
        [one] => Ok(one),
        _ => Err(CliError::Usage(format!(
            "{what}: expected one document, got {}",
            inputs.len()
        ))),
    }
}

#[derive(Serialize)]
struct ValidationEntry<'a> {
    source: &'a str,
    kind: &'static str,
    /// `None` for bodies, which are fully checked while decoding.
    report: Option<ValidationReport<f64>>,
}

fn validate(inputs: &[Input], s: &Settings) -> Result<Rendered, CliError> {
    let tol = s.tol.unwrap_or(DEFAULT_VALIDATION_TOL);
    let entries: Vec<_> = inputs
        .iter()
        .map(|i| ValidationEntry {
            source: &i.source,
            kind: i.kind,
            report: i.number().ok().map(|u| validate_representation(u, tol)),
        })
        .collect();
    let failing: Vec<&str> = entries
        .iter()
        .filter(|e| e.report.as_ref().is_some_and(|r| !r.passed))
        .map(|e| e.source)
        .collect();
    let verdict = Verdict {
        passed: failing.is_empty(),
        summary: if failing.is_empty() {
            format!("{} input(s) valid", entries.len())
        } else {
            format!("representation checks failed for {}", failing.join(", "))
        },
    };
    let format = s.format_or(Format::Json);
    let report = Report {
        header: header(
            "validate",
            inputs,
            Echo::new(s, None, tol, 0.0, None, format),
        ),
        verdict,
        result: &entries,
    };
    render(
        &report,
        || {
            let mut t = Table::new(&["source", "check", "alpha", "value", "passed"]);
            for e in &entries {
                let Some(r) = &e.report else { continue };
                let at = |a: Option<f64>| a.map_or(String::new(), num);
                t.push(vec![
                    e.source.into(),
                    "nonempty".into(),
                    at(r.nonempty_compact_cuts.at),
                    num(r.nonempty_compact_cuts.worst),
                    r.nonempty_compact_cuts.passed.to_string(),
                ]);
                t.push(vec![
                    e.source.into(),
                    "nested".into(),
                    at(r.nested.at),
                    num(r.nested.worst),
                    r.nested.passed.to_string(),
                ]);
                for p in &r.left_continuity {
                    t.push(vec![
                        e.source.into(),
                        "left-continuity".into(),
                        num(p.alpha),
                        num(p.gap_estimate),
                        p.passed.to_string(),
                    ]);
                }
                let c = &r.closure_at_zero;
                t.push(vec![
                    e.source.into(),
                    "closure-at-zero".into(),
                    "0".into(),
                    num(c.gap_estimate),
                    c.passed.to_string(),
                ]);
            }
            t
        },
        format,
    )
}

#[derive(Serialize)]
struct DistResult {
    method: &'static str,
    /// Set when the bracket is a single value.
    value: Option<f64>,
    enclosure: Enclosure<f64>,
    certified: bool,
}

fn body_distance(a: &FuzzyBody2D<f64>, b: &FuzzyBody2D<f64>) -> Result<Enclosure<f64>, CliError> {
    // support values are affine in α between union nodes, so the node maximum is exact
    let grid = a.grid().union(b.grid());
    let mut best = Enclosure {
        lower: 0.0,
        upper: 0.0,
        attained: true,
        location: 0.0,
    };
    for &alpha in grid.levels() {
        let h = hausdorff_support_2d(&a.body_at(alpha)?, &b.body_at(alpha)?)?;
        if h > best.lower {
            best = Enclosure {
                lower: h,
                upper: h,
                attained: true,
                location: alpha,
            };
        }
    }
    Ok(best)
}

fn number_distance(u: &Fuzzy1D<f64>, v: &Fuzzy1D<f64>, tol: f64) -> (DistResult, bool) {
    if let (Some(a), Some(b)) = (u.as_sampled(), v.as_sampled()) {
        let (d, at) = d_infty_sampled_at(a, b);
        let enclosure = Enclosure {
            lower: d,
            upper: d,
            attained: true,
            location: at,
        };
        return (
            DistResult {
                method: "sampled-exact",
                value: Some(d),
                enclosure,
                certified: true,
            },
            true,
        );
    }
    match d_infty_parametric(u, v, tol, DEFAULT_MAX_DEPTH) {
        Ok(e) => (
            DistResult {
                method: "parametric-enclosure",
                value: (e.lower == e.upper).then_some(e.lower),
                enclosure: e,
                certified: true,
            },
            true,
        ),
        Err(err) => {
            let e = err.enclosure().unwrap_or(Enclosure {
                lower: 0.0,
                upper: f64::INFINITY,
                attained: false,
                location: 0.0,
            });
            (
                DistResult {
                    method: "parametric-enclosure",
                    value: None,
                    enclosure: e,
                    certified: false,
                },
                false,
            )
        }
    }
}

fn dist(a: &[Input], b: &[Input], s: &Settings) -> Result<Rendered, CliError> {
    let (a, b) = (single(a, "dist")?, single(b, "dist")?);
    let tol = s.tol.unwrap_or(DEFAULT_TOL);
    let (result, ok) = match (a.body(), b.body()) {
        (Some(x), Some(y)) => {
            let e = body_distance(x, y)?;
            (
                DistResult {
                    method: "support-2d-exact",
                    value: Some(e.lower),
                    enclosure: e,
                    certified: true,
                },
                true,
            )
        }
        (None, None) => number_distance(a.number()?, b.number()?, tol),
        _ => {
            return Err(CliError::Usage(
                "dist: both inputs must be numbers or both bodies".into(),
            ))
        }
    };
    let verdict = Verdict {
        passed: ok,
        summary: if ok {
            format!(
                "d_inf in [{}, {}]",
                result.enclosure.lower, result.enclosure.upper
            )
        } else {
            format!(
                "tolerance {tol} not reached; bracket [{}, {}]",
                result.enclosure.lower, result.enclosure.upper
            )
        },
    };
    let format = s.format_or(Format::Json);
    let inputs = [a.clone(), b.clone()];
    let report = Report {
        header: header("dist", &inputs, Echo::new(s, None, tol, 0.0, None, format)),
        verdict,
        result: &result,
    };
    render(
        &report,
        || {
            let mut t = Table::new(&["lower", "upper", "attained", "location"]);
            let e = &result.enclosure;
            t.push(vec![
                num(e.lower),
                num(e.upper),
                e.attained.to_string(),
                num(e.location),
            ]);
            t
        },
        format,
    )
}

/// Members for sequence verbs: the given ones, or `u_1..u_{n_max}` for the counterexample limit.
fn sequence(limit: &Input, members: &[Input], s: &Settings) -> Result<Vec<Fuzzy1D<f64>>, CliError> {
    if members.is_empty() {
        if limit.kind == "counterexample-limit" {
            let n_max = s.n_max.unwrap_or(DEFAULT_N_MAX);
            return (1..=n_max).map(|n| Ok(make_un(n)?.into())).collect();
        }
        return Err(CliError::Usage(
            "no members given (only the counterexample limit generates its own)".into(),
        ));
    }
    let mut out: Vec<Fuzzy1D<f64>> = members
        .iter()
        .map(|m| m.number().cloned())
        .collect::<Result<_, _>>()?;
    if let Some(n) = s.n_max {
        out.truncate(n);
    }
    Ok(out)
}

fn grid_for(s: &Settings, numbers: &[&Fuzzy1D<f64>]) -> AlphaGrid<f64> {
    s.explicit_grid
        .clone()
        .unwrap_or_else(|| auto_grid(numbers))
}

#[derive(Serialize)]
struct ProfileRow {
    alpha: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    n: Option<usize>,
    #[serde(rename = "H")]
    h: f64,
}

fn profile(reference: &[Input], members: &[Input], s: &Settings) -> Result<Rendered, CliError> {
    let reference = single(reference, "profile")?;
    let u = reference.number()?;
    let seq = sequence(reference, members, s)?;
    let mut all: Vec<&Fuzzy1D<f64>> = seq.iter().collect();
    all.push(u);
    let grid = grid_for(s, &all);
    let per_sequence = seq.len() > 1;
    let mut rows = Vec::new();
    for (i, m) in seq.iter().enumerate() {
        for d in level_distance_profile(m, u, &grid) {
            rows.push(ProfileRow {
                alpha: d.alpha,
                n: per_sequence.then_some(i + 1),
                h: d.h,
            });
        }
    }
    let format = s.format_or(Format::Csv);
    let mut inputs = vec![reference.clone()];
    inputs.extend(members.iter().cloned());
    let verdict = Verdict {
        passed: true,
        summary: format!("{} rows", rows.len()),
    };
    let report = Report {
        header: header(
            "profile",
            &inputs,
            Echo::new(
                s,
                Some(&grid),
                0.0,
                0.0,
                per_sequence.then_some(seq.len()),
                format,
            ),
        ),
        verdict,
        result: &rows,
    };
    render(
        &report,
        || {
            let mut t = if per_sequence {
                Table::new(&["alpha", "n", "H"])
            } else {
                Table::new(&["alpha", "H"])
            };
            for r in &rows {
                match r.n {
                    Some(n) => t.push(vec![num(r.alpha), n.to_string(), num(r.h)]),
                    None => t.push(vec![num(r.alpha), num(r.h)]),
                }
            }
            t
        },
        format,
    )
}

fn converge(limit: &[Input], members: &[Input], s: &Settings) -> Result<Rendered, CliError> {
    let limit = single(limit, "converge")?;
    let u = limit.number()?;
    let seq = sequence(limit, members, s)?;
    let mut all: Vec<&Fuzzy1D<f64>> = seq.iter().collect();
    all.push(u);
    let grid = grid_for(s, &all);
    let eps = s.eps.unwrap_or(DEFAULT_CONVERGE_EPS);
    let report = level_convergence_report(|n| seq[n - 1].clone(), u, &grid, eps, seq.len());
    let verdict = Verdict {
        passed: report.verdict.level_convergent,
        summary: if report.verdict.level_convergent {
            format!(
                "H <= {eps} reached at all {} levels within n <= {}",
                grid.len(),
                seq.len()
            )
        } else {
            format!(
                "not reached at {} of {} levels within n <= {}",
                report.verdict.failing_alphas.len(),
                grid.len(),
                seq.len()
            )
        },
    };
    let format = s.format_or(Format::Json);
    let mut inputs = vec![limit.clone()];
    inputs.extend(members.iter().cloned());
    let out = Report {
        header: header(
            "converge",
            &inputs,
            Echo::new(s, Some(&grid), 0.0, eps, Some(seq.len()), format),
        ),
        verdict,
        result: &report,
    };
    render(
        &out,
        || {
            let mut t = Table::new(&["alpha", "n", "H"]);
            for e in &report.entries {
                for (i, h) in e.h_values.iter().enumerate() {
                    t.push(vec![num(e.alpha), (i + 1).to_string(), num(*h)]);
                }
            }
            t
        },
        format,
    )
}

fn family_report(members: &[Input], s: &Settings) -> Result<Rendered, CliError> {
    let family: Vec<Fuzzy1D<f64>> = members
        .iter()
        .map(|m| m.number().cloned())
        .collect::<Result<_, _>>()?;
    let refs: Vec<&Fuzzy1D<f64>> = family.iter().collect();
    let grid = grid_for(s, &refs);
    let config = FamilyConfig {
        alphas: grid.levels().iter().copied().filter(|&a| a > 0.0).collect(),
        deltas: s.delta_grid.deltas.clone(),
        eps: s.eps.unwrap_or(DEFAULT_FAMILY_EPS),
        ..FamilyConfig::default()
    };
    let diag = compactness_conditions_report_with(&family, &config)?;
    let v = &diag.condition_verdicts;
    let passed =
        v.level_topology.checkable_conditions_hold && v.supremum_metric.checkable_conditions_hold;
    let verdict =
        Verdict {
            passed,
            summary: format!(
            "level-topology checklist {}, supremum-metric checklist {} (closedness not evaluated)",
            if v.level_topology.checkable_conditions_hold { "holds" } else { "fails" },
            if v.supremum_metric.checkable_conditions_hold { "holds" } else { "fails" },
        ),
        };
    let format = s.format_or(Format::Json);
    let report = Report {
        header: header(
            "family-report",
            members,
            Echo::new(s, Some(&grid), 0.0, config.eps, None, format),
        ),
        verdict,
        result: &diag,
    };
    render(
        &report,
        || {
            let mut t = Table::new(&["alpha", "delta", "omega"]);
            for p in &diag.left_moduli {
                for m in &p.moduli {
                    t.push(vec![num(p.alpha), num(m.delta), num(m.omega)]);
                }
            }
            for m in &diag.right_modulus_at_zero {
                t.push(vec!["0".into(), num(m.delta), num(m.omega)]);
            }
            t
        },
        format,
    )
}

fn counterexample(s: &Settings) -> Result<Rendered, CliError> {
    let defaults = RefutationConfig::default();
    let config = RefutationConfig {
        n_max: s.n_max.unwrap_or(defaults.n_max),
        tol: s.tol.unwrap_or(defaults.tol),
        convergence_eps: s.eps.unwrap_or(defaults.convergence_eps),
        ..defaults
    };
    let report = refutation_report_with(&config)?;
    let c = &report.conclusion;
    let verdict = Verdict {
        passed: c.criterion_refuted,
        summary: if c.criterion_refuted {
            "support-bounded, equi-left-continuous, closed, level-convergent to u, yet d_inf(u_n, u) = 1 for all n: not compact in d_inf".into()
        } else {
            format!("refutation incomplete: {c:?}")
        },
    };
    let format = s.format_or(Format::Json);
    let out = Report {
        header: header("counterexample", &[], &config),
        verdict,
        result: &report,
    };
    render(
        &out,
        || {
            let mut t = Table::new(&[
                "n",
                "value",
                "attained",
                "enclosure_lower",
                "enclosure_upper",
                "enclosure_attained",
            ]);
            for line in report.distances.distance_csv.lines().skip(1) {
                t.push(line.split(',').map(str::to_string).collect());
            }
            t
        },
        format,
    )
}
