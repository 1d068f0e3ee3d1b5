//! The argument functional `A(s) = Σ_k |Arg(1 − e^{ix_k} p_k^{-s})|`, the
//! continuous argument `φ(s) = −Σ_k Arg(1 − e^{ix_k} p_k^{-s})`, and winding
//! numbers of the vertical-line curves σ ↦ ζ_x(σ + it).
//!
//! Each factor `1 − w` has |w| < 1, so its principal argument lies in
//! (−π/2, π/2) and the absolutely convergent sum of those arguments is a
//! continuous determination of arg ζ_x on the whole half-plane. Winding
//! numbers are therefore read off φ directly; no sampled phase unwrapping is
//! involved except as a cross-check inside [`trace_curve`].

use std::f64::consts::{PI, TAU};
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::bounds;
use crate::error::{Error, Result};
use crate::primes::PrimeTable;
use crate::zeta::{
    factor_sums, factor_terms, normalize_phase, ComplexPoint, PhaseVector, TruncationPlan,
};

/// Default ceiling on the certified error of a winding number, in turns.
pub const DEFAULT_MAX_WINDING_ERROR: f64 = 0.25;

/// Partial sum of A over the first `partial_m` primes. The exact value lies
/// in `[lower(), upper()]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ArgValue {
    pub total: f64,
    pub partial_m: usize,
    /// Omitted primes plus rounding.
    pub tail_bound: f64,
    pub rounding: f64,
}

impl ArgValue {
    pub fn lower(&self) -> f64 {
        (self.total - self.rounding).max(0.0)
    }

    pub fn upper(&self) -> f64 {
        self.total + self.tail_bound
    }
}

/// φ(s) over the first m primes; |φ − φ_exact| ≤ `tail_bound`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct UnwrappedArg {
    pub phi: f64,
    pub tail_bound: f64,
}

/// Signed number of turns about the origin with its certified error.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Winding {
    pub turns: f64,
    pub error: f64,
    pub phi_lo: f64,
    pub phi_hi: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CurveSample {
    pub sigma: f64,
    pub re: f64,
    pub im: f64,
    pub phi: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Spacing {
    Uniform,
    /// Uniform in ln(σ − 1), crowding samples toward σ = 1.
    Geometric,
}

/// Samples of σ ↦ ζ_x(σ + it) along a vertical segment.
#[derive(Clone, Debug, Serialize)]
pub struct CurveTrace {
    pub t: f64,
    pub sigma_lo: f64,
    pub sigma_hi: f64,
    pub samples: Vec<CurveSample>,
    /// Largest φ certificate over the samples.
    pub tail_bound: f64,
    pub evaluations: usize,
    /// Largest gap between φ and the sample-by-sample unwrapped principal
    /// argument.
    pub unwrap_deviation: f64,
}

impl CurveTrace {
    /// CSV with header `sigma,re,im,phi`, 17 significant digits, `\n` endings.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("sigma,re,im,phi\n");
        for s in &self.samples {
            let _ = writeln!(
                out,
                "{:.16e},{:.16e},{:.16e},{:.16e}",
                s.sigma, s.re, s.im, s.phi
            );
        }
        out
    }
}

/// Principal argument of `1 − e^{i(x_k − t ln p_k)} p_k^{-σ}`, in (−π/2, π/2).
pub fn arg_term(x_k: f64, k: usize, s: &ComplexPoint, table: &PrimeTable) -> Result<f64> {
    let p = table.nth(k)?;
    Ok(arg_term_for_prime(x_k, p, s))
}

pub fn arg_term_for_prime(x_k: f64, p: u64, s: &ComplexPoint) -> f64 {
    let ln_p = (p as f64).ln();
    let r = (-s.sigma() * ln_p).exp();
    factor_terms(x_k - s.t() * ln_p, r).1
}

fn arg_certificate(
    plan: &TruncationPlan,
    table: &PrimeTable,
    s: &ComplexPoint,
    rounding: f64,
) -> f64 {
    let next = table.next_prime_lower_bound(plan.prime_count);
    bounds::arg_tail(next, s.sigma()) + rounding
}

/// A_x(s) over the first `plan.prime_count` primes with its tail bound.
pub fn a_eval(
    x: &PhaseVector,
    s: &ComplexPoint,
    plan: &TruncationPlan,
    table: &PrimeTable,
) -> Result<ArgValue> {
    let sums = factor_sums(x, s, plan.primes(table)?);
    let rounding = sums.rounding(s.t());
    Ok(ArgValue {
        total: sums.abs_arg,
        partial_m: plan.prime_count,
        tail_bound: arg_certificate(plan, table, s, rounding),
        rounding,
    })
}

/// φ(s) = −Σ_{k≤m} Arg(1 − e^{ix_k} p_k^{-s}), without modular reduction.
pub fn unwrapped_arg(
    x: &PhaseVector,
    s: &ComplexPoint,
    plan: &TruncationPlan,
    table: &PrimeTable,
) -> Result<UnwrappedArg> {
    let sums = factor_sums(x, s, plan.primes(table)?);
    let rounding = sums.rounding(s.t());
    Ok(UnwrappedArg {
        phi: -sums.arg,
        tail_bound: arg_certificate(plan, table, s, rounding),
    })
}

fn check_segment(sigma_lo: f64, sigma_hi: f64) -> Result<()> {
    if !(sigma_lo > 1.0 && sigma_lo < sigma_hi && sigma_hi.is_finite()) {
        return Err(Error::Domain(format!(
            "segment [{sigma_lo}, {sigma_hi}] must satisfy 1 < lo < hi"
        )));
    }
    Ok(())
}

/// Turns of σ ↦ ζ_x(σ + it) over [σ_lo, σ_hi], `(φ(σ_lo) − φ(σ_hi)) / 2π`.
///
/// Fails with [`Error::CertificateTooWeak`] when the certified error would
/// exceed `max_error_turns`.
pub fn winding(
    x: &PhaseVector,
    t: f64,
    sigma_lo: f64,
    sigma_hi: f64,
    plan: &TruncationPlan,
    table: &PrimeTable,
    max_error_turns: f64,
) -> Result<Winding> {
    check_segment(sigma_lo, sigma_hi)?;
    let lo = unwrapped_arg(x, &ComplexPoint::new(sigma_lo, t)?, plan, table)?;
    let hi = unwrapped_arg(x, &ComplexPoint::new(sigma_hi, t)?, plan, table)?;
    let error = (lo.tail_bound + hi.tail_bound) / TAU;
    if error > max_error_turns {
        return Err(Error::CertificateTooWeak(format!(
            "winding error {error:.3e} turns exceeds {max_error_turns} with {} primes",
            plan.prime_count
        )));
    }
    Ok(Winding {
        turns: (lo.phi - hi.phi) / TAU,
        error,
        phi_lo: lo.phi,
        phi_hi: hi.phi,
    })
}

fn grid(sigma_lo: f64, sigma_hi: f64, n: usize, spacing: Spacing) -> Vec<f64> {
    let last = (n - 1) as f64;
    (0..n)
        .map(|i| {
            let f = i as f64 / last;
            match spacing {
                Spacing::Uniform => sigma_lo + (sigma_hi - sigma_lo) * f,
                Spacing::Geometric => {
                    1.0 + (sigma_lo - 1.0) * ((sigma_hi - 1.0) / (sigma_lo - 1.0)).powf(f)
                }
            }
        })
        .collect()
}

fn sample_at(x: &PhaseVector, sigma: f64, t: f64, primes: &[u64]) -> Result<(CurveSample, f64)> {
    let s = ComplexPoint::new(sigma, t)?;
    let sums = factor_sums(x, &s, primes);
    let modulus = (-sums.log_modulus).exp();
    let phi = -sums.arg;
    Ok((
        CurveSample {
            sigma,
            re: modulus * phi.cos(),
            im: modulus * phi.sin(),
            phi,
        },
        sums.rounding(t),
    ))
}

/// Sample the curve on a σ-grid of `n_samples` points, then bisect every
/// interval whose endpoint φ values differ by π/2 or more until none do.
///
/// The refinement stops with [`Error::RefinementFailure`] once more than
/// `20 · n_samples` evaluations have been spent.
#[allow(clippy::too_many_arguments)]
pub fn trace_curve(
    x: &PhaseVector,
    t: f64,
    sigma_lo: f64,
    sigma_hi: f64,
    n_samples: usize,
    spacing: Spacing,
    plan: &TruncationPlan,
    table: &PrimeTable,
) -> Result<CurveTrace> {
    check_segment(sigma_lo, sigma_hi)?;
    if n_samples < 2 {
        return Err(Error::Domain("a trace needs at least two samples".into()));
    }
    let primes = plan.primes(table)?;
    let budget = 20 * n_samples;

    let mut points: Vec<(CurveSample, f64)> = grid(sigma_lo, sigma_hi, n_samples, spacing)
        .par_iter()
        .map(|&sigma| sample_at(x, sigma, t, primes))
        .collect::<Result<_>>()?;
    let mut evaluations = points.len();

    loop {
        let jumps: Vec<usize> = points
            .windows(2)
            .enumerate()
            .filter(|(_, w)| (w[1].0.phi - w[0].0.phi).abs() >= PI / 2.0)
            .map(|(i, _)| i)
            .collect();
        if jumps.is_empty() {
            break;
        }
        if evaluations + jumps.len() > budget {
            let i = jumps[0];
            return Err(Error::RefinementFailure {
                evaluations,
                sigma: points[i].0.sigma,
                jump: points[i + 1].0.phi - points[i].0.phi,
            });
        }
        let mids: Vec<(usize, (CurveSample, f64))> = jumps
            .par_iter()
            .map(|&i| {
                let mid = 0.5 * (points[i].0.sigma + points[i + 1].0.sigma);
                sample_at(x, mid, t, primes).map(|s| (i, s))
            })
            .collect::<Result<_>>()?;
        evaluations += mids.len();
        for (i, sample) in mids.into_iter().rev() {
            points.insert(i + 1, sample);
        }
    }

    let tail = bounds::arg_tail(table.next_prime_lower_bound(plan.prime_count), sigma_lo);
    let rounding = points.iter().map(|p| p.1).fold(0.0, f64::max);
    let samples: Vec<CurveSample> = points.into_iter().map(|p| p.0).collect();

    let mut unwrap_deviation = 0.0f64;
    let first = &samples[0];
    let arg0 = first.im.atan2(first.re);
    let mut unwrapped = arg0 + TAU * ((first.phi - arg0) / TAU).round();
    let mut prev_arg = arg0;
    for s in &samples {
        let arg = s.im.atan2(s.re);
        unwrapped += normalize_phase(arg - prev_arg);
        prev_arg = arg;
        unwrap_deviation = unwrap_deviation.max((unwrapped - s.phi).abs());
    }

    Ok(CurveTrace {
        t,
        sigma_lo,
        sigma_hi,
        samples,
        tail_bound: tail + rounding,
        evaluations,
        unwrap_deviation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::primes::sieve;
    use crate::zeta::{dirichlet_eval, euler_eval};
    use approx::assert_abs_diff_eq;
    use std::f64::consts::FRAC_PI_2;

    fn setup() -> (PrimeTable, TruncationPlan) {
        let t = sieve(100_000).unwrap();
        let plan = TruncationPlan::for_table(&t, 0.05).unwrap();
        (t, plan)
    }

    #[test]
    fn arg_term_examples() {
        let (t, _) = setup();
        let s = ComplexPoint::new(1.0 + 1e-15, 0.0).unwrap();
        let direct = num_complex::Complex64::new(1.0, -0.5).arg();
        assert_abs_diff_eq!(
            arg_term(FRAC_PI_2, 1, &s, &t).unwrap(),
            direct,
            epsilon = 1e-14
        );
        assert_abs_diff_eq!(direct, -0.5f64.atan(), epsilon = 1e-15);
        assert_abs_diff_eq!(
            arg_term(-FRAC_PI_2, 1, &s, &t).unwrap(),
            0.5f64.atan(),
            epsilon = 1e-14
        );
        for k in 1..50 {
            assert_eq!(
                arg_term(0.0, k, &ComplexPoint::real(1.7).unwrap(), &t).unwrap(),
                0.0
            );
        }
    }

    #[test]
    fn arg_terms_stay_inside_half_turn() {
        let (t, _) = setup();
        for k in 1..20 {
            for i in 0..64 {
                let x = -PI + TAU * i as f64 / 64.0;
                let a = arg_term(x, k, &ComplexPoint::new(1.0001, 3.7).unwrap(), &t).unwrap();
                assert!(a.abs() < FRAC_PI_2);
            }
        }
    }

    #[test]
    fn quarter_turn_phi_equals_a() {
        let (t, plan) = setup();
        for sigma in [1.1, 1.5, 2.0, 3.3] {
            let s = ComplexPoint::real(sigma).unwrap();
            let a = a_eval(&PhaseVector::quarter_turn(), &s, &plan, &t).unwrap();
            let phi = unwrapped_arg(&PhaseVector::quarter_turn(), &s, &plan, &t).unwrap();
            assert_eq!(a.total, phi.phi);
        }
    }

    #[test]
    fn plus_and_minus_quarter_turn_share_a() {
        let (t, plan) = setup();
        let s = ComplexPoint::real(1.7).unwrap();
        let plus = a_eval(&PhaseVector::quarter_turn(), &s, &plan, &t).unwrap();
        let minus = a_eval(&PhaseVector::constant(-FRAC_PI_2), &s, &plan, &t).unwrap();
        assert_eq!(plus.total, minus.total);
    }

    #[test]
    fn a_vanishes_far_right() {
        let (t, plan) = setup();
        let x = PhaseVector::list([0.4, 2.0, -1.0]);
        let a = a_eval(&x, &ComplexPoint::new(50.0, 12.0).unwrap(), &plan, &t).unwrap();
        assert!(a.total + a.tail_bound < 1e-10);
    }

    #[test]
    fn zeta_on_axis_has_zero_argument() {
        let (t, plan) = setup();
        let phi = unwrapped_arg(
            &PhaseVector::zero(),
            &ComplexPoint::real(1.3).unwrap(),
            &plan,
            &t,
        )
        .unwrap();
        assert_eq!(phi.phi, 0.0);
        let w = winding(&PhaseVector::zero(), 0.0, 1.05, 4.0, &plan, &t, 0.25).unwrap();
        assert_eq!(w.turns, 0.0);
    }

    #[test]
    fn phi_matches_dirichlet_argument() {
        let (t, plan) = setup();
        let s = ComplexPoint::new(1.5, 10.0).unwrap();
        let phi = unwrapped_arg(&PhaseVector::zero(), &s, &plan, &t).unwrap();
        let d = dirichlet_eval(
            &PhaseVector::zero(),
            &s,
            &TruncationPlan::new(100_000, 0, 0.5).unwrap(),
            &t,
        )
        .unwrap();
        let gap = (normalize_phase(phi.phi) - d.arg()).abs();
        assert!(gap <= phi.tail_bound + d.arg_radius().unwrap());
    }

    #[test]
    fn phi_is_the_euler_argument() {
        let (t, plan) = setup();
        let x = PhaseVector::list([0.3, -2.0, 1.1, 2.5]);
        let s = ComplexPoint::new(1.2, -37.5).unwrap();
        let phi = unwrapped_arg(&x, &s, &plan, &t).unwrap();
        let e = euler_eval(&x, &s, &plan.with_delta(0.2).unwrap(), &t).unwrap();
        assert!((normalize_phase(phi.phi) - e.arg()).abs() < 1e-12);
    }

    #[test]
    fn winding_rejects_bad_segments_and_weak_certificates() {
        let (t, plan) = setup();
        let x = PhaseVector::quarter_turn();
        assert!(matches!(
            winding(&x, 0.0, 2.0, 2.0, &plan, &t, 0.25),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            winding(&x, 0.0, 1.0, 2.0, &plan, &t, 0.25),
            Err(Error::Domain(_))
        ));
        let tiny = TruncationPlan::new(1, 3, 0.1).unwrap();
        assert!(matches!(
            winding(&x, 0.0, 1.01, 2.0, &tiny, &t, 0.25),
            Err(Error::CertificateTooWeak(_))
        ));
    }

    #[test]
    fn winding_telescopes() {
        let (t, plan) = setup();
        let x = PhaseVector::list([1.0, -0.5, 2.5]);
        let ab = winding(&x, 3.0, 1.2, 1.6, &plan, &t, 0.25).unwrap();
        let bc = winding(&x, 3.0, 1.6, 2.9, &plan, &t, 0.25).unwrap();
        let ac = winding(&x, 3.0, 1.2, 2.9, &plan, &t, 0.25).unwrap();
        assert!((ab.turns + bc.turns - ac.turns).abs() < 1e-12);
    }

    #[test]
    fn trace_of_zeta_on_axis() {
        let (t, plan) = setup();
        let tr = trace_curve(
            &PhaseVector::zero(),
            0.0,
            1.1,
            3.0,
            50,
            Spacing::Uniform,
            &plan,
            &t,
        )
        .unwrap();
        assert_eq!(tr.samples.len(), 50);
        assert!(tr.samples.iter().all(|s| s.im == 0.0 && s.re > 1.0));
        assert!(tr.samples.windows(2).all(|w| w[1].re < w[0].re));
    }

    #[test]
    fn trace_rejects_degenerate_requests() {
        let (t, plan) = setup();
        let x = PhaseVector::zero();
        assert!(trace_curve(&x, 0.0, 1.5, 1.5, 2, Spacing::Uniform, &plan, &t).is_err());
        assert!(trace_curve(&x, 0.0, 1.5, 2.0, 1, Spacing::Uniform, &plan, &t).is_err());
    }

    #[test]
    fn quarter_turn_trace_decreases() {
        let (t, plan) = setup();
        let tr = trace_curve(
            &PhaseVector::quarter_turn(),
            0.0,
            1.05,
            3.0,
            2000,
            Spacing::Uniform,
            &plan,
            &t,
        )
        .unwrap();
        assert!(tr.samples.windows(2).all(|w| w[1].phi < w[0].phi));
        assert!(tr.samples.windows(2).all(|w| w[1].sigma > w[0].sigma));
        assert!(tr.unwrap_deviation < 1e-9);
    }

    #[test]
    fn trace_refines_fast_turning_segments() {
        let (t, plan) = setup();
        // Off-axis near σ = 1 the curve turns quickly in σ; three coarse
        // samples must be refined.
        let tr = trace_curve(
            &PhaseVector::zero(),
            1000.0,
            1.0001,
            3.0,
            3,
            Spacing::Geometric,
            &plan,
            &t,
        );
        match tr {
            Ok(tr) => {
                assert!(tr
                    .samples
                    .windows(2)
                    .all(|w| (w[1].phi - w[0].phi).abs() < PI / 2.0));
                assert!(tr.unwrap_deviation < 1e-9);
            }
            Err(Error::RefinementFailure { .. }) => {}
            Err(e) => panic!("unexpected {e}"),
        }
    }

    #[test]
    fn csv_layout() {
        let (t, plan) = setup();
        let tr = trace_curve(
            &PhaseVector::zero(),
            0.0,
            2.0,
            3.0,
            2,
            Spacing::Uniform,
            &plan,
            &t,
        )
        .unwrap();
        let csv = tr.to_csv();
        let lines: Vec<_> = csv.lines().collect();
        assert_eq!(lines[0], "sigma,re,im,phi");
        assert!(lines[1].starts_with("2.0000000000000000e0,1.64"));
        assert!(!csv.contains('\r'));
        assert_eq!(csv.matches('\n').count(), 3);
    }
}
