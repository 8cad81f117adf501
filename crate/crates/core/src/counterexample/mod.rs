//! The closed-form sequence `(u_n)` whose cuts level-converge to a limit `u` while staying at
//! supremum distance 1 from it, together with exact evaluators and brute-force oracles.
//!
//! Cuts of `u_n` are `[0, 1 - (3α/2 - 1/2)^{1/n}]` for `α > 1/3` and `[0, 1]` below; the
//! limit has cuts `{0}` above `1/3` and `[0, 1]` at or below it.

mod report;

pub use report::{
    refutation_report, refutation_report_with, report_grid, ClosednessArgument, Conclusion,
    ConditionsSection, ConvergenceSection, DistanceSection, GridDemo, RefutationConfig,
    RefutationReport,
};

use serde::Serialize;

use crate::error::{out_of_range, Error, Result};
use crate::interval::Interval;
use crate::repr::CutCurve1D;
use crate::scalar::{third, Scalar};

/// `(3α/2 - 1/2)^{1/n}`, evaluated as `exp(ln(·)/n)`; 0 for `α ≤ 1/3`.
pub fn root_term<S: Scalar>(n: usize, alpha: S) -> S {
    if alpha <= third() {
        return S::zero();
    }
    let t = S::lit(1.5) * alpha - S::lit(0.5);
    if t <= S::zero() {
        return S::zero();
    }
    (t.ln() / S::from_count(n)).exp()
}

fn check_index(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::BadIndex(0));
    }
    Ok(())
}

/// Member `u_n` of the sequence, `n ≥ 1`.
pub fn make_un<S: Scalar>(n: usize) -> Result<CutCurve1D<S>> {
    check_index(n)?;
    Ok(
        CutCurve1D::new(|_| S::zero(), move |a| S::one() - root_term(n, a))
            .with_breakpoints([third()])
            .with_key(format!("counterexample-un:{n}")),
    )
}

/// Level limit `u` of the sequence; its cuts jump from `[0, 1]` to `{0}` just above `1/3`.
pub fn make_limit<S: Scalar>() -> CutCurve1D<S> {
    CutCurve1D::new(
        |_| S::zero(),
        |a| if a <= third() { S::one() } else { S::zero() },
    )
    .with_jump(third(), Interval::point(S::zero()))
    .expect("jump level lies in [0, 1)")
    .with_key("counterexample-limit")
}

/// `H([u]_α, [u_n]_α)` in closed form: `1 - (3α/2 - 1/2)^{1/n}` above `1/3`, else 0.
pub fn exact_h_profile<S: Scalar>(n: usize, alpha: S) -> Result<S> {
    check_index(n)?;
    if !(alpha >= S::zero() && alpha <= S::one()) {
        return out_of_range("alpha", alpha.as_f64());
    }
    Ok(if alpha > third() {
        S::one() - root_term(n, alpha)
    } else {
        S::zero()
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SupValue<S> {
    pub value: S,
    pub attained: bool,
}

/// `d∞(u_n, u) = 1` for every `n`: approached as `α → 1/3⁺`, never attained, because the
/// level distance is 0 up to `1/3` and strictly below 1 above it.
pub fn exact_dinf_to_limit<S: Scalar>(n: usize) -> Result<SupValue<S>> {
    check_index(n)?;
    Ok(SupValue {
        value: S::one(),
        attained: false,
    })
}

/// `(3(α-δ)/2 - 1/2)^{-1}·(α - β)`: uniform-in-`n` bound on `H([u_n]_α, [u_n]_β)` for
/// `β ∈ [α-δ, α]` when `α - δ > 1/3`.
pub fn dgn_bound<S: Scalar>(alpha: S, delta: S, beta: S) -> Result<S> {
    let floor = alpha - delta;
    if !(floor > third::<S>()) || alpha > S::one() || delta < S::zero() {
        return out_of_range("alpha - delta", floor.as_f64());
    }
    if !(beta >= floor && beta <= alpha) {
        return out_of_range("beta", beta.as_f64());
    }
    Ok((alpha - beta) / (S::lit(1.5) * floor - S::lit(0.5)))
}

/// `(3/2)·(3(α-δ)/2 - 1/2)^{-1}·(α - β)`, the mean value bound with the inner derivative kept.
///
/// [`dgn_bound`] omits the factor `3/2`; the two agree up to that factor, and only this one
/// dominates the `n = 1` term `3(α - β)/2` when `3(α-δ)/2 - 1/2 > 2/3`.
pub fn modulus_bound<S: Scalar>(alpha: S, delta: S, beta: S) -> Result<S> {
    Ok(S::lit(1.5) * dgn_bound(alpha, delta, beta)?)
}

/// Probe lattice `α_i = 1/3 + (2/3)·i/a_count`, `δ_j = (α_i - 1/3)·j/(d_count + 1)` covering the
/// admissible domain `α - δ > 1/3` of the uniform modulus bounds.
pub fn modulus_lattice(a_count: usize, d_count: usize) -> Vec<(f64, f64)> {
    let third = 1.0 / 3.0;
    let mut nodes = Vec::with_capacity(a_count * d_count);
    for i in 1..=a_count {
        let alpha = if i == a_count {
            1.0
        } else {
            third + (1.0 - third) * i as f64 / a_count as f64
        };
        for j in 1..=d_count {
            nodes.push((alpha, (alpha - third) * j as f64 / (d_count + 1) as f64));
        }
    }
    nodes
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModulusOracle<S> {
    /// `max_{n ≤ scanned_to} [(3α/2-1/2)^{1/n} - (3β/2-1/2)^{1/n}]`
    pub value: S,
    pub argmax_n: usize,
    pub scanned_to: usize,
    /// Analytic bound on every term with `n > scanned_to`.
    pub tail_bound: S,
}

/// Brute-force `sup_n H([u_n]_α, [u_n]_β)` for `1/3 < β ≤ α ≤ 1`.
///
/// Scans `n = 1..=n_max`, extended until the running maximum has been stable for ten times
/// its argmax index. By the mean value theorem each later term is at most
/// `(t_α - t_β) / (n·t_β)` with `t = 3·/2 - 1/2`, which is reported as `tail_bound`.
pub fn family_modulus_oracle<S: Scalar>(
    alpha: S,
    beta: S,
    n_max: usize,
) -> Result<ModulusOracle<S>> {
    if !(beta > third::<S>() && beta <= alpha && alpha <= S::one()) {
        return out_of_range("beta", beta.as_f64());
    }
    let (ta, tb) = (
        S::lit(1.5) * alpha - S::lit(0.5),
        S::lit(1.5) * beta - S::lit(0.5),
    );
    let mut best = (S::zero(), 1usize);
    let mut n = 1usize;
    let mut limit = n_max.max(1);
    while n <= limit {
        let term = root_term(n, alpha) - root_term(n, beta);
        if term > best.0 {
            best = (term, n);
            limit = limit.max(10 * n);
        }
        n += 1;
    }
    let scanned_to = n - 1;
    let tail_bound = (ta - tb) / (S::from_count(scanned_to + 1) * tb);
    Ok(ModulusOracle {
        value: best.0,
        argmax_n: best.1,
        scanned_to,
        tail_bound,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PairwiseSup<S> {
    pub value: S,
    pub alpha: S,
}

/// Grid lower bound on `d∞(u_n, u_m) = sup_α |(3α/2-1/2)^{1/n} - (3α/2-1/2)^{1/m}|`.
///
/// The grid is uniform in `s = (3α/2 - 1/2)^{1/max(n,m)}` on `(0, 1]`, which resolves the
/// maximizer for any index ratio (it sits where the inner value is tiny when `n ≪ m`).
pub fn pairwise_dinf_oracle<S: Scalar>(
    n: usize,
    m: usize,
    grid_size: usize,
) -> Result<PairwiseSup<S>> {
    check_index(n)?;
    check_index(m)?;
    if n == m {
        return out_of_range("index pair (n == m)", n as f64);
    }
    if grid_size == 0 {
        return out_of_range("grid size", 0.0);
    }
    let (p, q) = (n.max(m), n.min(m));
    let ratio = S::from_count(p) / S::from_count(q);
    let mut best = PairwiseSup {
        value: S::zero(),
        alpha: S::one(),
    };
    for i in 1..=grid_size {
        let s = S::from_count(i) / S::from_count(grid_size);
        let value = s - s.powf(ratio);
        if value > best.value {
            let t = s.powi(p as i32);
            best = PairwiseSup {
                value,
                alpha: (t + t + S::one()) / S::lit(3.0),
            };
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::repr::{validate_representation, FuzzyNumber};

    #[test]
    fn member_cuts() {
        let u1 = make_un::<f64>(1).unwrap();
        assert_eq!(u1.alpha_cut(1.0).unwrap(), Interval::point(0.0));
        let u2 = make_un::<f64>(2).unwrap();
        let c = u2.alpha_cut(2.0 / 3.0).unwrap();
        assert_eq!(c.lo, 0.0);
        assert!((c.hi - (1.0 - 0.5f64.sqrt())).abs() < 1e-15);
        for n in [1, 7, 100] {
            let u = make_un::<f64>(n).unwrap();
            assert_eq!(u.cut(0.0), Interval { lo: 0.0, hi: 1.0 });
            assert_eq!(u.cut(1.0 / 3.0), Interval { lo: 0.0, hi: 1.0 });
        }
        assert_eq!(make_un::<f64>(0).unwrap_err(), Error::BadIndex(0));
    }

    #[test]
    fn limit_cuts_and_membership() {
        let u = make_limit::<f64>();
        assert_eq!(u.cut(0.5), Interval::point(0.0));
        assert_eq!(u.cut(1.0 / 3.0), Interval { lo: 0.0, hi: 1.0 });
        for x in [0.1, 0.5, 1.0] {
            assert!((u.membership_at(x) - 1.0 / 3.0).abs() < 1e-12);
        }
        assert_eq!(u.membership_at(0.0), 1.0);
        assert_eq!(u.membership_at(1.5), 0.0);
    }

    #[test]
    fn members_and_limit_are_valid() {
        for n in [1, 2, 5, 100] {
            let r = validate_representation(&make_un::<f64>(n).unwrap(), 1e-9);
            assert!(r.passed, "u_{n}: {:?}", r.failing_left_continuity().next());
        }
        assert!(validate_representation(&make_limit::<f64>(), 1e-9).passed);
    }

    #[test]
    fn one_sided_limits_at_one_third() {
        // oracle: closed-form cut on either side of 1/3
        let third = 1.0 / 3.0;
        let u = make_un::<f64>(3).unwrap();
        for k in 2..=8 {
            let d = 10f64.powi(-k);
            let below = u.cut(third - d);
            assert_eq!(below, u.cut(third));
            let above = u.cut(third + d);
            assert!((above.hi - (1.0 - (1.5 * d).cbrt())).abs() < 1e-9);
        }
    }

    #[test]
    fn closed_form_profile() {
        assert!((exact_h_profile(1, 2.0 / 3.0).unwrap() - 0.5f64).abs() < 1e-15);
        for n in [1, 4, 99] {
            assert_eq!(exact_h_profile(n, 1.0f64).unwrap(), 0.0);
            assert_eq!(exact_h_profile(n, 0.25f64).unwrap(), 0.0);
        }
        // 3·0.34/2 - 1/2 = 0.01
        let h: f64 = exact_h_profile(5, 0.34).unwrap();
        assert!((h - (1.0 - 0.01f64.powf(0.2))).abs() < 1e-12);
        assert!((h - 0.601_892_829_446_502_7).abs() < 1e-12);
        assert!(exact_h_profile(1, 1.5f64).is_err());
    }

    #[test]
    fn dinf_to_limit_is_one() {
        for n in [1, 100] {
            assert_eq!(
                exact_dinf_to_limit::<f64>(n).unwrap(),
                SupValue {
                    value: 1.0,
                    attained: false
                }
            );
        }
    }

    #[test]
    fn dgn_bound_values() {
        let b: f64 = dgn_bound(0.8, 0.1, 0.75).unwrap();
        assert!((b - 0.05 / 0.55).abs() < 1e-15);
        assert_eq!(dgn_bound(0.8f64, 0.1, 0.8).unwrap(), 0.0);
        assert!(dgn_bound(0.8f64, 0.5, 0.5).is_err());
        assert!(dgn_bound(0.8f64, 0.1, 0.6).is_err());
    }

    #[test]
    fn literal_bound_misses_first_member() {
        // n = 1: term is 1.5·(α-β); literal bound divides by 3(α-δ)/2 - 1/2 = 0.8
        let o = family_modulus_oracle(1.0f64, 13.0 / 15.0, 100).unwrap();
        assert_eq!(o.argmax_n, 1);
        assert!((o.value - 0.2).abs() < 1e-12);
        assert!(o.value > dgn_bound(1.0, 2.0 / 15.0, 13.0 / 15.0).unwrap());
        assert!(o.value <= modulus_bound(1.0, 2.0 / 15.0, 13.0 / 15.0).unwrap());
    }

    #[test]
    fn lattice_shape() {
        let nodes = modulus_lattice(50, 19);
        assert_eq!(nodes.len(), 950);
        assert!(nodes
            .iter()
            .all(|&(a, d)| a - d > 1.0 / 3.0 && a <= 1.0 && d > 0.0));
    }

    #[test]
    fn modulus_oracle_values() {
        let o = family_modulus_oracle(0.8f64, 0.75, 10_000).unwrap();
        assert!((o.value - 0.075).abs() < 1e-12);
        assert_eq!(o.argmax_n, 1);
        assert_eq!(o.scanned_to, 10_000);
        assert_eq!(family_modulus_oracle(0.6f64, 0.6, 10).unwrap().value, 0.0);
        assert!(family_modulus_oracle(0.6f64, 0.3, 10).is_err());
    }

    #[test]
    fn pairwise_oracle_values() {
        // s - s^2 peaks at 1/4 when s = 1/2
        let p = pairwise_dinf_oracle::<f64>(1, 2, 1_000_000).unwrap();
        assert!((p.value - 0.25).abs() < 1e-10);
        assert!((p.alpha - 0.5).abs() < 1e-5);
        // t^{1/10} - t peaks at t = 0.1^{10/9}
        let t: f64 = 0.1f64.powf(10.0 / 9.0);
        let expected = t.powf(0.1) - t;
        let p = pairwise_dinf_oracle::<f64>(1, 10, 1_000_000).unwrap();
        assert!((p.value - expected).abs() < 1e-9);
        assert!((p.value - 0.697).abs() < 1e-3);
        assert!(pairwise_dinf_oracle::<f64>(3, 3, 10).is_err());
    }
}
