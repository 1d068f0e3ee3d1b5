//! The σ_θ frontier: the root of `A_{π/2}(σ) = Σ arctan(p_k^{-σ}) = θ`, which
//! bounds from above every abscissa at which some ζ_x reaches argument θ.
//!
//! Roots are bracketed by bisection on two monotone functions: the partial
//! sum `L(σ)` over the plan's primes and `U(σ) = L(σ) + tail`. The true
//! A_{π/2} is sandwiched between them, so the largest σ with `L ≥ θ` and the
//! smallest σ with `U ≤ θ` enclose the exact root.

use std::f64::consts::{FRAC_PI_2, PI};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::argument::{a_eval, unwrapped_arg};
use crate::bounds;
use crate::error::{Error, Result};
use crate::primes::PrimeTable;
use crate::sum::Neumaier;
use crate::zeta::{normalize_phase, ComplexPoint, Extension, PhaseVector, TruncationPlan};

/// Left end of every bisection bracket.
pub const SIGMA_FLOOR: f64 = 1.0 + 1e-6;
/// Right end of every bisection bracket.
pub const SIGMA_CEILING: f64 = 64.0;

const CHUNK: usize = 1 << 15;
const EPS: f64 = f64::EPSILON;

/// A_{π/2} on the real axis, evaluated over a fixed prime set with both a
/// certified lower bound (partial sum less rounding) and an upper bound
/// (partial sum plus tail).
pub struct QuarterTurnMajorant {
    ln_p: Vec<f64>,
    next_prime: u64,
}

impl QuarterTurnMajorant {
    pub fn new(plan: &TruncationPlan, table: &PrimeTable) -> Result<Self> {
        let primes = plan.primes(table)?;
        Ok(QuarterTurnMajorant {
            ln_p: primes.par_iter().map(|&p| (p as f64).ln()).collect(),
            next_prime: table.next_prime_lower_bound(plan.prime_count),
        })
    }

    pub fn primes_used(&self) -> usize {
        self.ln_p.len()
    }

    /// Σ_{k≤m} arctan(p_k^{-σ}) and its rounding bound.
    fn partial(&self, sigma: f64) -> (f64, f64) {
        let parts: Vec<Neumaier> = self
            .ln_p
            .par_chunks(CHUNK)
            .map(|c| c.iter().map(|&l| (-sigma * l).exp().atan()).collect())
            .collect();
        let mut acc = Neumaier::new();
        for p in &parts {
            acc.merge(p);
        }
        let sum = acc.value();
        let ln_last = self.ln_p.last().copied().unwrap_or(0.0);
        (sum, sum * EPS * (sigma * ln_last + 8.0))
    }

    pub fn lower(&self, sigma: f64) -> f64 {
        let (sum, rounding) = self.partial(sigma);
        (sum - rounding).max(0.0)
    }

    pub fn upper(&self, sigma: f64) -> f64 {
        let (sum, rounding) = self.partial(sigma);
        sum + rounding + self.tail(sigma)
    }

    pub fn tail(&self, sigma: f64) -> f64 {
        // arctan r ≤ r, so the plain prime tail is enough here.
        bounds::prime_tail(self.next_prime, sigma)
    }

    /// Largest σ in [`SIGMA_FLOOR`, `SIGMA_CEILING`] with `lower(σ) ≥ level`,
    /// to within `resolution`. `None` when even `lower(SIGMA_FLOOR) < level`.
    pub fn last_lower_at_least(&self, level: f64, resolution: f64) -> Option<f64> {
        if self.lower(SIGMA_FLOOR) < level {
            return None;
        }
        if self.lower(SIGMA_CEILING) >= level {
            return Some(SIGMA_CEILING);
        }
        Some(
            bisect(SIGMA_FLOOR, SIGMA_CEILING, resolution, |s| {
                self.lower(s) >= level
            })
            .0,
        )
    }

    /// Smallest σ in [`SIGMA_FLOOR`, `SIGMA_CEILING`] with `upper(σ) ≤ level`,
    /// to within `resolution`. `None` when `upper(SIGMA_CEILING) > level`.
    pub fn first_upper_at_most(&self, level: f64, resolution: f64) -> Option<f64> {
        if self.upper(SIGMA_CEILING) > level {
            return None;
        }
        if self.upper(SIGMA_FLOOR) <= level {
            return Some(SIGMA_FLOOR);
        }
        Some(
            bisect(SIGMA_FLOOR, SIGMA_CEILING, resolution, |s| {
                self.upper(s) > level
            })
            .1,
        )
    }
}

/// Bisection on a predicate that holds at `lo` and fails at `hi`.
fn bisect(mut lo: f64, mut hi: f64, resolution: f64, holds: impl Fn(f64) -> bool) -> (f64, f64) {
    while hi - lo > resolution {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if holds(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo, hi)
}

/// Certified root of `A_{π/2}(σ) = θ`.
///
/// `bracket.0` is the largest bisection point whose lower bound still
/// reaches θ and `bracket.1` the smallest whose upper bound is at most θ, so
/// the exact root lies in the bracket. `sigma_theta_bound` is the right end:
/// beyond it A_{π/2} < θ is certified.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FrontierSolution {
    pub theta: f64,
    pub sigma_theta_bound: f64,
    /// θ − L(sigma_theta_bound); A_{π/2}(sigma_theta_bound) ∈ [θ − residual, θ].
    pub residual: f64,
    pub bracket: (f64, f64),
    /// Tail of the omitted primes at `sigma_theta_bound`.
    pub tail_bound: f64,
    pub primes_used: usize,
}

pub fn solve_sigma_theta(
    theta: f64,
    tol: f64,
    plan: &TruncationPlan,
    table: &PrimeTable,
) -> Result<FrontierSolution> {
    let majorant = QuarterTurnMajorant::new(plan, table)?;
    solve_with(&majorant, theta, tol)
}

/// [`solve_sigma_theta`] against a prepared majorant, for repeated solves.
pub fn solve_with(
    majorant: &QuarterTurnMajorant,
    theta: f64,
    tol: f64,
) -> Result<FrontierSolution> {
    // θ = 0 has no finite root: A_{π/2} > 0 for every σ.
    if !(theta > 0.0 && theta <= PI) {
        return Err(Error::Domain(format!(
            "theta must lie in (0, pi], got {theta}"
        )));
    }
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tol must be positive, got {tol}")));
    }
    let resolution = (tol / 4.0).max(1e-13);
    let lo = majorant
        .last_lower_at_least(theta, resolution)
        .ok_or(Error::UnreachableTheta {
            theta,
            best_lower: majorant.lower(SIGMA_FLOOR),
            primes: majorant.primes_used(),
        })?;
    let hi = majorant
        .first_upper_at_most(theta, resolution)
        .ok_or_else(|| {
            Error::Domain(format!(
                "theta {theta} is below A at sigma = {SIGMA_CEILING}"
            ))
        })?;
    if hi - lo > tol {
        return Err(Error::CertificateTooWeak(format!(
            "bracket [{lo}, {hi}] for theta {theta} is wider than {tol} with {} primes",
            majorant.primes_used()
        )));
    }
    Ok(FrontierSolution {
        theta,
        sigma_theta_bound: hi,
        residual: theta - majorant.lower(hi),
        bracket: (lo, hi),
        tail_bound: majorant.tail(hi),
        primes_used: majorant.primes_used(),
    })
}

/// Sampling region for [`verify_exclusion`] and [`verify_domination`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SampleRegion {
    /// Offsets σ − bound are log-uniform in [`min_offset`, `max_offset`].
    pub min_offset: f64,
    pub max_offset: f64,
    /// |t| ≤ t_span.
    pub t_span: f64,
    pub seed: u64,
}

impl Default for SampleRegion {
    fn default() -> Self {
        SampleRegion {
            min_offset: 1e-6,
            max_offset: 10.0,
            t_span: 1000.0,
            seed: 0x5eed,
        }
    }
}

impl SampleRegion {
    fn points(&self, start: f64, n: usize) -> Vec<(f64, f64)> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let (a, b) = (self.min_offset.ln(), self.max_offset.ln());
        (0..n)
            .map(|_| {
                let sigma = start + rng.gen_range(a..=b).exp();
                let t = rng.gen_range(-self.t_span..=self.t_span);
                (sigma, t)
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExclusionReport {
    pub theta: f64,
    pub sigma_bound: f64,
    pub samples: usize,
    /// Largest observed principal |Arg ζ_x|.
    pub max_abs_arg: f64,
    /// Largest certified upper bound |Arg| + tail.
    pub max_certified: f64,
    /// θ − max_certified; positive when every sample is certified below θ.
    pub margin: f64,
    /// Samples not certified below θ.
    pub uncertified: usize,
    /// Samples certified at or above θ.
    pub counterexamples: usize,
    pub worst: (f64, f64),
}

/// Samples |Arg ζ_x(s)| at random points right of the frontier.
///
/// Each sample carries the φ certificate; a sample counts as uncertified
/// when `|Arg| + tail ≥ θ` and as a counterexample when `|Arg| − tail ≥ θ`.
pub fn verify_exclusion(
    x: &PhaseVector,
    theta: f64,
    solution: &FrontierSolution,
    n_samples: usize,
    region: &SampleRegion,
    plan: &TruncationPlan,
    table: &PrimeTable,
) -> Result<ExclusionReport> {
    let points = region.points(solution.sigma_theta_bound, n_samples);
    let values: Vec<(f64, f64)> = points
        .par_iter()
        .map(|&(sigma, t)| {
            let u = unwrapped_arg(x, &ComplexPoint::new(sigma, t)?, plan, table)?;
            Ok((normalize_phase(u.phi).abs(), u.tail_bound))
        })
        .collect::<Result<_>>()?;

    let mut report = ExclusionReport {
        theta,
        sigma_bound: solution.sigma_theta_bound,
        samples: n_samples,
        max_abs_arg: 0.0,
        max_certified: 0.0,
        margin: theta,
        uncertified: 0,
        counterexamples: 0,
        worst: (f64::NAN, f64::NAN),
    };
    for (&(arg, tail), &point) in values.iter().zip(&points) {
        report.max_abs_arg = report.max_abs_arg.max(arg);
        if arg + tail > report.max_certified {
            report.max_certified = arg + tail;
            report.worst = point;
        }
        if arg + tail >= theta {
            report.uncertified += 1;
        }
        if arg - tail >= theta {
            report.counterexamples += 1;
        }
    }
    report.margin = theta - report.max_certified;
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DominationReport {
    pub theta: f64,
    pub sigma_start: f64,
    pub samples: usize,
    /// Largest certified upper bound of A_x over the samples.
    pub max_upper: f64,
    /// Samples whose upper bound is not below θ.
    pub violations: usize,
}

/// A random phase vector: up to eight listed phases and a random constant
/// extension.
pub fn random_phase_vector(rng: &mut impl Rng) -> PhaseVector {
    let k = rng.gen_range(1..=8);
    let phases: Vec<f64> = (0..k).map(|_| rng.gen_range(-PI..PI)).collect();
    PhaseVector::with_extension(phases, Extension::Constant(rng.gen_range(-PI..PI)))
}

/// Upper bounds of A_x at random x and random points with σ beyond
/// `bound + tol`, each compared with θ.
pub fn verify_domination(
    theta: f64,
    solution: &FrontierSolution,
    tol: f64,
    n_samples: usize,
    region: &SampleRegion,
    plan: &TruncationPlan,
    table: &PrimeTable,
) -> Result<DominationReport> {
    let start = solution.sigma_theta_bound + tol;
    let points = region.points(start, n_samples);
    let mut rng = ChaCha8Rng::seed_from_u64(region.seed ^ 0xd0e5);
    let xs: Vec<PhaseVector> = (0..n_samples)
        .map(|_| random_phase_vector(&mut rng))
        .collect();
    let uppers: Vec<f64> = points
        .par_iter()
        .zip(xs.par_iter())
        .map(|(&(sigma, t), x)| Ok(a_eval(x, &ComplexPoint::new(sigma, t)?, plan, table)?.upper()))
        .collect::<Result<_>>()?;
    Ok(DominationReport {
        theta,
        sigma_start: start,
        samples: n_samples,
        max_upper: uppers.iter().copied().fold(0.0, f64::max),
        violations: uppers.iter().filter(|&&u| u >= theta).count(),
    })
}

/// A_{π/2}(σ) over the plan, for callers that only need one value.
pub fn quarter_turn_a(sigma: f64, plan: &TruncationPlan, table: &PrimeTable) -> Result<(f64, f64)> {
    let a = a_eval(
        &PhaseVector::constant(FRAC_PI_2),
        &ComplexPoint::real(sigma)?,
        plan,
        table,
    )?;
    Ok((a.lower(), a.upper()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::primes::sieve;

    fn setup() -> (PrimeTable, TruncationPlan) {
        let t = sieve(1_000_000).unwrap();
        let plan = TruncationPlan::for_table(&t, 0.05).unwrap();
        (t, plan)
    }

    #[test]
    fn majorant_agrees_with_a_eval() {
        let (t, plan) = setup();
        let m = QuarterTurnMajorant::new(&plan, &t).unwrap();
        for sigma in [1.1, 1.5, 2.0, 5.0] {
            let (lo, hi) = quarter_turn_a(sigma, &plan, &t).unwrap();
            assert!(
                (m.lower(sigma) - lo).abs() < 1e-12,
                "{} {}",
                m.lower(sigma),
                lo
            );
            // On the real axis arctan r ≤ r beats the general arcsin slope.
            assert!(m.upper(sigma) <= hi + 1e-12 && m.upper(sigma) > lo);
        }
    }

    #[test]
    fn majorant_brackets_oracle_at_two() {
        let (t, plan) = setup();
        let m = QuarterTurnMajorant::new(&plan, &t).unwrap();
        // Brute arctan sum over primes up to 10^7.
        let oracle = 0.446_747_760_298_344_7;
        assert!(m.lower(2.0) <= oracle && oracle <= m.upper(2.0));
    }

    #[test]
    fn root_is_bracketed() {
        let (t, plan) = setup();
        let sol = solve_sigma_theta(1.0, 1e-2, &plan, &t).unwrap();
        let m = QuarterTurnMajorant::new(&plan, &t).unwrap();
        let (lo, hi) = sol.bracket;
        assert!(lo < hi && hi - lo <= 1e-2);
        assert!(m.lower(lo) >= 1.0 && m.upper(hi) <= 1.0);
        assert_eq!(sol.sigma_theta_bound, hi);
        assert!(sol.residual >= 0.0 && sol.residual < 1e-2);
    }

    #[test]
    fn fixed_point_at_two() {
        let (t, plan) = setup();
        let (lo, _) = quarter_turn_a(2.0, &plan, &t).unwrap();
        let sol = solve_sigma_theta(lo, 1e-4, &plan, &t).unwrap();
        assert!((sol.sigma_theta_bound - 2.0).abs() <= 1e-4);
    }

    #[test]
    fn solution_decreases_in_theta() {
        let (t, plan) = setup();
        let m = QuarterTurnMajorant::new(&plan, &t).unwrap();
        let s: Vec<f64> = [0.3, 0.5, 0.8, 1.2]
            .iter()
            .map(|&th| solve_with(&m, th, 1e-2).unwrap().sigma_theta_bound)
            .collect();
        assert!(s.windows(2).all(|w| w[0] > w[1]));
    }

    #[test]
    fn rejects_bad_theta_and_tol() {
        let (t, plan) = setup();
        assert!(matches!(
            solve_sigma_theta(0.0, 1e-3, &plan, &t),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            solve_sigma_theta(4.0, 1e-3, &plan, &t),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            solve_sigma_theta(1.0, 0.0, &plan, &t),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn pi_is_out_of_reach_for_small_tables() {
        let (t, plan) = setup();
        assert!(matches!(
            solve_sigma_theta(PI, 0.1, &plan, &t),
            Err(Error::UnreachableTheta { .. })
        ));
    }

    #[test]
    fn loose_certificate_is_reported() {
        let t = sieve(1000).unwrap();
        let plan = TruncationPlan::for_table(&t, 0.05).unwrap();
        assert!(matches!(
            solve_sigma_theta(1.5, 1e-6, &plan, &t),
            Err(Error::CertificateTooWeak(_))
        ));
    }

    #[test]
    fn exclusion_far_right_is_tiny() {
        let (t, plan) = setup();
        let sol = solve_sigma_theta(FRAC_PI_2, 0.05, &plan, &t).unwrap();
        let region = SampleRegion {
            min_offset: 49.0,
            max_offset: 50.0,
            ..SampleRegion::default()
        };
        let r = verify_exclusion(
            &PhaseVector::zero(),
            FRAC_PI_2,
            &sol,
            200,
            &region,
            &plan,
            &t,
        )
        .unwrap();
        assert!(r.max_abs_arg < 1e-10);
        assert_eq!(r.uncertified, 0);
    }

    #[test]
    fn exclusion_and_domination_hold_at_half_turn() {
        let (t, plan) = setup();
        let sol = solve_sigma_theta(FRAC_PI_2, 0.05, &plan, &t).unwrap();
        let region = SampleRegion::default();
        let r = verify_exclusion(
            &PhaseVector::zero(),
            FRAC_PI_2,
            &sol,
            300,
            &region,
            &plan,
            &t,
        )
        .unwrap();
        assert_eq!(r.counterexamples, 0);
        assert_eq!(r.uncertified, 0);
        assert!(r.margin > 0.0);
        let d = verify_domination(FRAC_PI_2, &sol, 1e-3, 100, &region, &plan, &t).unwrap();
        assert_eq!(d.violations, 0);
    }

    #[test]
    fn sampling_is_deterministic() {
        let region = SampleRegion::default();
        assert_eq!(region.points(1.5, 10), region.points(1.5, 10));
    }
}
