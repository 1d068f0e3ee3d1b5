//! Vortex times: translations `t` for which ζ_x(σ + it) follows ζ_{π/2}(σ)
//! across a strip, so the vertical curve inherits the winding of the
//! quarter-turn member on the real axis.
//!
//! A time is accepted when the first K factor phases `x_k − t ln p_k` all
//! lie within `tolerance` of the target phase. Each constraint is a union of
//! intervals of period `2π / ln p_k`; the search intersects those unions
//! exactly, prime by prime, so an empty answer certifies that no aligned
//! time exists in the window.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use rayon::prelude::*;
use serde::Serialize;

use crate::argument::{winding, Winding, DEFAULT_MAX_WINDING_ERROR};
use crate::bounds;
use crate::error::{Error, Result};
use crate::frontier::QuarterTurnMajorant;
use crate::primes::PrimeTable;
use crate::zeta::{
    circular_distance, euler_eval, identity_eval, ComplexPoint, IdentityMember, PhaseVector,
    TruncationPlan,
};

/// Candidate intervals allowed at any stage of the search.
pub const DEFAULT_SEARCH_BUDGET: usize = 50_000_000;

/// Sub-windows searched independently; fixed so results do not depend on
/// the thread count.
const SUB_WINDOWS: usize = 64;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AlignmentTarget {
    pub x: PhaseVector,
    pub k: usize,
    /// Radians.
    pub tolerance: f64,
    pub target_phase: f64,
}

impl AlignmentTarget {
    /// Alignment of the first `k` phases with π/2.
    pub fn new(x: PhaseVector, k: usize, tolerance: f64) -> Result<Self> {
        if k == 0 {
            return Err(Error::Domain("alignment needs K >= 1".into()));
        }
        if !(tolerance >= 0.0) {
            return Err(Error::Domain(format!(
                "tolerance must be >= 0, got {tolerance}"
            )));
        }
        Ok(AlignmentTarget {
            x,
            k,
            tolerance,
            target_phase: FRAC_PI_2,
        })
    }

    pub fn with_target_phase(mut self, phase: f64) -> Self {
        self.target_phase = phase;
        self
    }

    /// `(x_k − target, ln p_k)` for k ≤ K.
    fn constraints(&self, table: &PrimeTable) -> Result<Vec<(f64, f64)>> {
        (1..=self.k)
            .map(|k| {
                Ok((
                    self.x.phase(k) - self.target_phase,
                    (table.nth(k)? as f64).ln(),
                ))
            })
            .collect()
    }
}

/// max_{k≤K} dist_{2π}(x_k − t ln p_k, target).
pub fn phase_error(t: f64, target: &AlignmentTarget, table: &PrimeTable) -> Result<f64> {
    Ok(max_error(t, &target.constraints(table)?))
}

fn max_error(t: f64, constraints: &[(f64, f64)]) -> f64 {
    constraints
        .iter()
        .map(|&(c, ln_p)| circular_distance(c - t * ln_p, 0.0))
        .fold(0.0, f64::max)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VortexTime {
    /// Point of the aligned interval with the smallest phase error.
    pub t: f64,
    pub max_phase_error: f64,
    /// The maximal interval of aligned times containing `t`.
    pub interval: (f64, f64),
    pub winding: Option<Winding>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VortexReport {
    pub k: usize,
    pub tolerance: f64,
    pub target_phase: f64,
    pub window: (f64, f64),
    /// One entry per maximal aligned interval, sorted.
    pub times: Vec<VortexTime>,
    /// Aligned intervals in the window, before truncation to `max_results`.
    pub total_found: usize,
    pub truncated: bool,
    /// Longest stretch of the window containing no aligned time, window
    /// edges included.
    pub max_gap: f64,
    /// Total length of the aligned set.
    pub aligned_measure: f64,
}

/// All maximal intervals of aligned times in `window`.
///
/// Fails with [`Error::BudgetExhausted`] when some stage of the intersection
/// would hold more than `budget` candidate intervals.
pub fn aligned_intervals(
    target: &AlignmentTarget,
    window: (f64, f64),
    budget: usize,
    table: &PrimeTable,
) -> Result<Vec<(f64, f64)>> {
    let (lo, hi) = window;
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::Domain(format!(
            "window [{lo}, {hi}] must satisfy t_min < t_max"
        )));
    }
    let constraints = target.constraints(table)?;
    let tol = target.tolerance;

    // Stage-one size is known in advance; refuse before allocating.
    if tol < PI {
        let first = ((hi - lo) * constraints[0].1 / TAU).ceil() as usize + 2;
        if first > budget {
            return Err(Error::BudgetExhausted {
                stage: 1,
                intervals: first,
                budget,
            });
        }
    }

    let width = (hi - lo) / SUB_WINDOWS as f64;
    let pieces: Vec<Vec<(f64, f64)>> = (0..SUB_WINDOWS)
        .into_par_iter()
        .map(|i| {
            let a = lo + width * i as f64;
            let b = if i + 1 == SUB_WINDOWS {
                hi
            } else {
                lo + width * (i + 1) as f64
            };
            intersect(&constraints, tol, (a, b), budget)
        })
        .collect::<Result<_>>()?;

    let mut merged: Vec<(f64, f64)> = Vec::new();
    for iv in pieces.into_iter().flatten() {
        match merged.last_mut() {
            Some(last) if iv.0 <= last.1 => last.1 = last.1.max(iv.1),
            _ => merged.push(iv),
        }
    }
    Ok(merged)
}

fn intersect(
    constraints: &[(f64, f64)],
    tol: f64,
    window: (f64, f64),
    budget: usize,
) -> Result<Vec<(f64, f64)>> {
    let mut current = vec![window];
    for (stage, &(c, ln_p)) in constraints.iter().enumerate() {
        if tol >= PI {
            break;
        }
        let mut next = Vec::new();
        for &(a, b) in &current {
            let u_min = ((a * ln_p - c - tol) / TAU).ceil() as i64;
            let u_max = ((b * ln_p - c + tol) / TAU).floor() as i64;
            for u in u_min..=u_max {
                let centre = c + TAU * u as f64;
                let lo = ((centre - tol) / ln_p).max(a);
                let hi = ((centre + tol) / ln_p).min(b);
                if lo <= hi {
                    next.push((lo, hi));
                }
            }
            if next.len() > budget {
                return Err(Error::BudgetExhausted {
                    stage: stage + 1,
                    intervals: next.len(),
                    budget,
                });
            }
        }
        current = next;
        if current.is_empty() {
            break;
        }
    }
    Ok(current)
}

/// Minimizer of the phase error on an aligned interval. Each term is the
/// absolute value of an affine function there, so the maximum is convex and
/// ternary search converges to the minimum.
fn best_time(interval: (f64, f64), constraints: &[(f64, f64)]) -> (f64, f64) {
    let (mut a, mut b) = interval;
    for _ in 0..100 {
        let m1 = a + (b - a) / 3.0;
        let m2 = b - (b - a) / 3.0;
        if m1 <= a || m2 >= b {
            break;
        }
        if max_error(m1, constraints) <= max_error(m2, constraints) {
            b = m2;
        } else {
            a = m1;
        }
    }
    let candidates = [0.5 * (a + b), interval.0, interval.1];
    candidates
        .iter()
        .map(|&t| (t, max_error(t, constraints)))
        .fold((f64::NAN, f64::INFINITY), |best, c| {
            if c.1 < best.1 {
                c
            } else {
                best
            }
        })
}

/// Aligned times in `window`, one per maximal aligned interval, each
/// re-checked with [`phase_error`].
///
/// `max_results` caps the list; `truncated` records whether more exist.
/// `max_gap` and `aligned_measure` always describe the whole window.
pub fn find_vortex_times(
    target: &AlignmentTarget,
    window: (f64, f64),
    max_results: usize,
    budget: usize,
    table: &PrimeTable,
) -> Result<VortexReport> {
    let intervals = aligned_intervals(target, window, budget, table)?;
    let constraints = target.constraints(table)?;

    let mut max_gap = 0.0f64;
    let mut edge = window.0;
    for &(a, b) in &intervals {
        max_gap = max_gap.max(a - edge);
        edge = b;
    }
    max_gap = max_gap.max(window.1 - edge);
    let aligned_measure = intervals.iter().map(|(a, b)| b - a).sum();

    let times: Vec<VortexTime> = intervals
        .par_iter()
        .take(max_results)
        .filter_map(|&iv| {
            let (t, err) = best_time(iv, &constraints);
            // Rounding at the very edge of a hair-thin interval can push the
            // re-check above tolerance; such intervals are not reported.
            (err <= target.tolerance).then_some(VortexTime {
                t,
                max_phase_error: err,
                interval: iv,
                winding: None,
            })
        })
        .collect();

    Ok(VortexReport {
        k: target.k,
        tolerance: target.tolerance,
        target_phase: target.target_phase,
        window,
        truncated: intervals.len() > max_results,
        total_found: intervals.len(),
        times,
        max_gap,
        aligned_measure,
    })
}

impl VortexReport {
    /// Attach the winding of σ ↦ ζ_x(σ + it) over the strip to every time.
    pub fn attach_windings(
        &mut self,
        x: &PhaseVector,
        strip: (f64, f64),
        plan: &TruncationPlan,
        table: &PrimeTable,
    ) -> Result<()> {
        let windings: Vec<Winding> = self
            .times
            .par_iter()
            .map(|vt| {
                winding(
                    x,
                    vt.t,
                    strip.0,
                    strip.1,
                    plan,
                    table,
                    DEFAULT_MAX_WINDING_ERROR,
                )
            })
            .collect::<Result<_>>()?;
        for (vt, w) in self.times.iter_mut().zip(windings) {
            vt.winding = Some(w);
        }
        Ok(())
    }
}

/// One σ of a [`VortexCheck`] grid.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DistanceSample {
    pub sigma: f64,
    /// |ζ_x(σ + it) − ζ_{π/2}(σ)| between the computed values.
    pub distance: f64,
    /// Sum of the two error radii.
    pub error_radius: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VortexCheck {
    pub t: f64,
    pub strip: (f64, f64),
    pub winding: Winding,
    /// Winding of ζ_{π/2} on the real axis over the same strip.
    pub reference: Winding,
    pub sup_distance: f64,
    pub samples: Vec<DistanceSample>,
}

impl VortexCheck {
    pub fn winding_gap(&self) -> f64 {
        (self.winding.turns - self.reference.turns).abs()
    }

    /// Grid points where the computed distance exceeds the surrogate bound
    /// for `target` plus both error radii.
    pub fn surrogate_violations(
        &self,
        target: &AlignmentTarget,
        table: &PrimeTable,
    ) -> Result<usize> {
        let mut violations = 0;
        for s in &self.samples {
            if s.distance > surrogate_bound(target, s.sigma, table)? + s.error_radius {
                violations += 1;
            }
        }
        Ok(violations)
    }
}

/// Winding of σ ↦ ζ_x(σ + it) over `[sigma_lo, sigma_hi]`, the reference
/// winding of ζ_{π/2}, and |ζ_x(σ + it) − ζ_{π/2}(σ)| on a uniform grid of
/// `grid` points.
pub fn verify_vortex(
    t: f64,
    x: &PhaseVector,
    sigma_lo: f64,
    sigma_hi: f64,
    grid: usize,
    plan: &TruncationPlan,
    table: &PrimeTable,
) -> Result<VortexCheck> {
    let quarter = PhaseVector::quarter_turn();
    let w = winding(
        x,
        t,
        sigma_lo,
        sigma_hi,
        plan,
        table,
        DEFAULT_MAX_WINDING_ERROR,
    )?;
    let reference = winding(
        &quarter,
        0.0,
        sigma_lo,
        sigma_hi,
        plan,
        table,
        DEFAULT_MAX_WINDING_ERROR,
    )?;
    let grid = grid.max(2);
    let eval_plan = plan.with_delta(sigma_lo - 1.0)?;
    let samples: Vec<DistanceSample> = (0..grid)
        .map(|i| {
            let sigma = sigma_lo + (sigma_hi - sigma_lo) * i as f64 / (grid - 1) as f64;
            let a = euler_eval(x, &ComplexPoint::new(sigma, t)?, &eval_plan, table)?;
            let b = euler_eval(&quarter, &ComplexPoint::real(sigma)?, &eval_plan, table)?;
            Ok(DistanceSample {
                sigma,
                distance: (a.value - b.value).norm(),
                error_radius: a.error_radius + b.error_radius,
            })
        })
        .collect::<Result<_>>()?;
    Ok(VortexCheck {
        t,
        strip: (sigma_lo, sigma_hi),
        winding: w,
        reference,
        sup_distance: samples.iter().map(|s| s.distance).fold(0.0, f64::max),
        samples,
    })
}

/// Bound on |ζ_x(σ + it) − ζ_{target}(σ)| for any t meeting `target`.
///
/// With `a_k`, `b_k` the first K factors of the two products and `M_k =
/// (1 − p_k^{-σ})^{-1}` a bound for both,
/// `|Π a_k − Π b_k| ≤ Σ_k |a_k − b_k| Π_{j≠k} M_j` and
/// `|a_k − b_k| ≤ 2 sin(tol/2) p_k^{-σ} M_k`. Both omitted tails lie within
/// `e^η − 1` of 1, with η the log-tail from `p_{K+1}`.
pub fn surrogate_bound(target: &AlignmentTarget, sigma: f64, table: &PrimeTable) -> Result<f64> {
    let chord = 2.0 * (0.5 * target.tolerance.min(PI)).sin();
    let mut m_prod = 1.0;
    let mut weighted = 0.0;
    for k in 1..=target.k {
        let r = (table.nth(k)? as f64).powf(-sigma);
        m_prod /= 1.0 - r;
        weighted += chord * r;
    }
    let head = m_prod * weighted;
    let eta = bounds::euler_log_tail(table.next_prime_lower_bound(target.k), sigma);
    let rel = bounds::relative_from_log_tail(eta);
    Ok((head * (1.0 + rel) + 2.0 * m_prod * rel) * bounds::ROUND_UP)
}

/// Smallest K whose tail certificate `2·(e^η − 1)` at `p_{K+1}` is below
/// 20% of the modulus floor ζ_π(σ_lo) of ζ_{π/2} on the strip. `None` when
/// no K up to `max_k` qualifies.
pub fn default_alignment_depth(
    sigma_lo: f64,
    max_k: usize,
    table: &PrimeTable,
) -> Result<Option<usize>> {
    let floor = identity_eval(
        IdentityMember::Liouville,
        &ComplexPoint::real(sigma_lo)?,
        100_000,
    )?;
    let floor = floor.value.re - floor.error_radius;
    for k in 1..=max_k.min(table.len()) {
        let eta = bounds::euler_log_tail(table.next_prime_lower_bound(k), sigma_lo);
        if 2.0 * bounds::relative_from_log_tail(eta) < 0.2 * floor {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

/// Certified turn budget of the quarter-turn member: how close to 1 the
/// lower end of a strip must come for `A(1+ε) − A(σ_hi) > 2π·turns`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TurnsBudget {
    pub turns: f64,
    pub sigma_hi: f64,
    pub feasible: bool,
    /// Largest ε for which the certified inequality holds.
    pub epsilon: Option<f64>,
    /// Turns missing at the smallest admissible σ when infeasible.
    pub deficit_turns: f64,
    /// Certified lower bound of A at 1 + 10^{-6}.
    pub best_lower: f64,
    /// Certified upper bound of A at σ_hi.
    pub upper_at_hi: f64,
    pub primes_used: usize,
}

pub fn turns_budget(
    n: u64,
    sigma_hi: f64,
    plan: &TruncationPlan,
    table: &PrimeTable,
) -> Result<TurnsBudget> {
    fractional_turns_budget(n as f64, sigma_hi, plan, table)
}

/// [`turns_budget`] for a real number of turns.
pub fn fractional_turns_budget(
    turns: f64,
    sigma_hi: f64,
    plan: &TruncationPlan,
    table: &PrimeTable,
) -> Result<TurnsBudget> {
    if !(sigma_hi > 1.0) || !(turns >= 0.0) {
        return Err(Error::Domain(format!(
            "need sigma_hi > 1 and turns >= 0, got {sigma_hi} and {turns}"
        )));
    }
    let majorant = QuarterTurnMajorant::new(plan, table)?;
    let upper_at_hi = majorant.upper(sigma_hi);
    let best_lower = majorant.lower(crate::frontier::SIGMA_FLOOR);
    let mut budget = TurnsBudget {
        turns,
        sigma_hi,
        feasible: true,
        epsilon: Some(sigma_hi - 1.0),
        deficit_turns: 0.0,
        best_lower,
        upper_at_hi,
        primes_used: majorant.primes_used(),
    };
    if turns == 0.0 {
        return Ok(budget);
    }
    let need = TAU * turns + upper_at_hi;
    match majorant.last_lower_at_least(need, 1e-12) {
        Some(sigma) if majorant.lower(sigma) > need => budget.epsilon = Some(sigma - 1.0),
        _ => {
            budget.feasible = false;
            budget.epsilon = None;
            budget.deficit_turns = (need - best_lower).max(0.0) / TAU;
        }
    }
    Ok(budget)
}

/// Certified lower bound on the turns of ζ_{π/2} over `[sigma_lo, sigma_hi]`:
/// `(L(σ_lo) − U(σ_hi)) / 2π`.
pub fn certified_turns(
    sigma_lo: f64,
    sigma_hi: f64,
    plan: &TruncationPlan,
    table: &PrimeTable,
) -> Result<f64> {
    if !(1.0 < sigma_lo && sigma_lo < sigma_hi) {
        return Err(Error::Domain(format!(
            "segment [{sigma_lo}, {sigma_hi}] must satisfy 1 < lo < hi"
        )));
    }
    let majorant = QuarterTurnMajorant::new(plan, table)?;
    Ok((majorant.lower(sigma_lo) - majorant.upper(sigma_hi)) / TAU)
}
