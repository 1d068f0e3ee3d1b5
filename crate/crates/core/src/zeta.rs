//! Members ζ_x of the equivalence class of the Riemann zeta function and
//! their certified evaluation on Re s > 1.
//!
//! A member is fixed by a phase vector `x = (x_1, x_2, ...)`, one phase per
//! prime. Its Dirichlet coefficients are `a_n = e^{i⟨r_n, x⟩}` where `r_n` is
//! the exponent vector of `n`, so `a` is completely multiplicative with
//! `a_{p_k} = e^{i x_k}` and
//!
//! ```text
//! ζ_x(s) = Σ_n a_n n^{-s} = Π_k (1 − e^{i x_k} p_k^{-s})^{-1}.
//! ```
//!
//! Three evaluators are provided, each returning a [`CertifiedValue`] whose
//! radius is a proven bound on the distance to the exact value:
//!
//! * [`dirichlet_eval`]: partial sum to `N`, tail bounded by `N^{1-σ}/(σ-1)`.
//! * [`euler_eval`]: product over the first `m` primes.
//! * [`identity_eval`]: closed forms built from ζ itself (ζ, ζ(2s)/ζ(s),
//!   1/ζ(s)), used as reference values.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{self, TailBound};
use crate::error::{Error, Result};
use crate::primes::PrimeTable;
use crate::sum::{ComplexNeumaier, Neumaier};

const EPS: f64 = f64::EPSILON;

/// Primes per work unit in the parallel prime sums. Fixed so that the
/// reduction order, and hence every result bit, is independent of the
/// thread count.
const PRIME_CHUNK: usize = 1 << 15;

/// Reduce an angle to (−π, π].
pub fn normalize_phase(x: f64) -> f64 {
    let r = x.rem_euclid(TAU);
    if r > PI {
        r - TAU
    } else {
        r
    }
}

/// Circular distance between two angles, in [0, π].
pub fn circular_distance(a: f64, b: f64) -> f64 {
    normalize_phase(a - b).abs()
}

/// How `x_k` continues past the stored phases.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Extension {
    Zero,
    Constant(f64),
}

/// Finite description of `x ∈ R^∞`: stored phases `x_1..x_K` and a rule for
/// `k > K`. Every phase is kept in (−π, π].
///
/// Equality is structural: two vectors describing the same member through
/// different storage (say `list:[0,0]` and `zero`) compare unequal.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PhaseVector {
    phases: Vec<f64>,
    extension: Extension,
}

impl PhaseVector {
    /// ζ itself.
    pub fn zero() -> Self {
        PhaseVector {
            phases: Vec::new(),
            extension: Extension::Zero,
        }
    }

    pub fn constant(c: f64) -> Self {
        PhaseVector {
            phases: Vec::new(),
            extension: Extension::Constant(normalize_phase(c)),
        }
    }

    /// Explicit phases for the first primes, zero afterwards.
    pub fn list(phases: impl IntoIterator<Item = f64>) -> Self {
        Self::with_extension(phases, Extension::Zero)
    }

    pub fn with_extension(phases: impl IntoIterator<Item = f64>, extension: Extension) -> Self {
        let extension = match extension {
            Extension::Constant(c) => Extension::Constant(normalize_phase(c)),
            Extension::Zero => Extension::Zero,
        };
        PhaseVector {
            phases: phases.into_iter().map(normalize_phase).collect(),
            extension,
        }
    }

    /// ζ_π, the Liouville series.
    pub fn liouville() -> Self {
        Self::constant(PI)
    }

    /// ζ_{π/2}.
    pub fn quarter_turn() -> Self {
        Self::constant(FRAC_PI_2)
    }

    /// Parse `zero | pi | pi/2 | -pi/2 | list:v1,v2,...`. List entries accept
    /// plain numbers or multiples of pi such as `pi/3`, `-2pi/5`.
    pub fn parse(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        if let Some(rest) = spec.strip_prefix("list:") {
            let phases = rest
                .split(',')
                .filter(|v| !v.trim().is_empty())
                .map(parse_angle)
                .collect::<Result<Vec<_>>>()?;
            return Ok(Self::list(phases));
        }
        match spec {
            "zero" | "0" => Ok(Self::zero()),
            _ => Ok(Self::constant(parse_angle(spec)?)),
        }
    }

    /// `x_k`, 1-indexed.
    #[inline]
    pub fn phase(&self, k: usize) -> f64 {
        debug_assert!(k >= 1);
        match self.phases.get(k - 1) {
            Some(&v) => v,
            None => match self.extension {
                Extension::Zero => 0.0,
                Extension::Constant(c) => c,
            },
        }
    }

    pub fn stored(&self) -> &[f64] {
        &self.phases
    }

    pub fn extension(&self) -> Extension {
        self.extension
    }

    /// All phases negated, `−x`.
    pub fn negated(&self) -> Self {
        Self::with_extension(
            self.phases.iter().map(|v| -v),
            match self.extension {
                Extension::Zero => Extension::Zero,
                Extension::Constant(c) => Extension::Constant(-c),
            },
        )
    }

    /// Whether every phase is zero, i.e. the member is ζ.
    pub fn is_zeta(&self) -> bool {
        self.phases.iter().all(|&v| v == 0.0)
            && matches!(self.extension, Extension::Zero | Extension::Constant(0.0))
    }
}

/// Parse a number or a rational multiple of pi (`pi`, `-pi/2`, `3pi/4`).
pub fn parse_angle(text: &str) -> Result<f64> {
    let t = text.trim().replace(' ', "");
    let bad = || Error::Usage(format!("cannot parse angle '{text}'"));
    if let Ok(v) = t.parse::<f64>() {
        return Ok(v);
    }
    let (sign, body) = match t.strip_prefix('-') {
        Some(rest) => (-1.0, rest),
        None => (1.0, t.as_str()),
    };
    let (num, den) = match body.split_once('/') {
        Some((n, d)) => (n, d.parse::<f64>().map_err(|_| bad())?),
        None => (body, 1.0),
    };
    let coeff = match num.strip_suffix("pi") {
        Some("") => 1.0,
        Some(c) => c.trim_end_matches('*').parse::<f64>().map_err(|_| bad())?,
        None => return Err(bad()),
    };
    Ok(sign * coeff * PI / den)
}

/// A point `s = σ + it` of the half-plane σ > 1.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ComplexPoint {
    sigma: f64,
    t: f64,
}

impl ComplexPoint {
    pub fn new(sigma: f64, t: f64) -> Result<Self> {
        if !(sigma > 1.0) || !sigma.is_finite() || !t.is_finite() {
            return Err(Error::Domain(format!(
                "s = {sigma} + {t}i lies outside Re s > 1"
            )));
        }
        Ok(ComplexPoint { sigma, t })
    }

    pub fn real(sigma: f64) -> Result<Self> {
        Self::new(sigma, 0.0)
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn conj(&self) -> Self {
        ComplexPoint {
            sigma: self.sigma,
            t: -self.t,
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(self.sigma, self.t)
    }

    fn doubled(&self) -> Self {
        ComplexPoint {
            sigma: 2.0 * self.sigma,
            t: 2.0 * self.t,
        }
    }
}

/// Truncation parameters of an evaluation: Dirichlet cutoff `N`, number of
/// primes `m` and the δ of the half-plane σ ≥ 1+δ the plan certifies.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TruncationPlan {
    pub cutoff: u64,
    pub prime_count: usize,
    pub delta: f64,
}

impl TruncationPlan {
    pub fn new(cutoff: u64, prime_count: usize, delta: f64) -> Result<Self> {
        if cutoff == 0 {
            return Err(Error::Domain("Dirichlet cutoff must be >= 1".into()));
        }
        if !(delta > 0.0) || !delta.is_finite() {
            return Err(Error::Domain(format!(
                "delta must be positive, got {delta}"
            )));
        }
        Ok(TruncationPlan {
            cutoff,
            prime_count,
            delta,
        })
    }

    /// Plan using every prime of `table`, cutoff `table.limit()`, and δ.
    pub fn for_table(table: &PrimeTable, delta: f64) -> Result<Self> {
        Self::new(table.limit(), table.len(), delta)
    }

    pub fn with_delta(self, delta: f64) -> Result<Self> {
        Self::new(self.cutoff, self.prime_count, delta)
    }

    /// Domain check σ ≥ 1 + δ.
    pub fn certify(&self, s: &ComplexPoint) -> Result<()> {
        if s.sigma < 1.0 + self.delta {
            return Err(Error::Domain(format!(
                "sigma {} below 1 + delta = {}",
                s.sigma,
                1.0 + self.delta
            )));
        }
        Ok(())
    }

    pub(crate) fn primes<'a>(&self, table: &'a PrimeTable) -> Result<&'a [u64]> {
        if self.prime_count > table.len() {
            return Err(Error::OutOfRange {
                index: self.prime_count,
                available: table.len(),
            });
        }
        Ok(&table.primes()[..self.prime_count])
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Dirichlet,
    Euler,
    Identity,
}

/// A complex value with a proven bound on its distance to the exact value.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CertifiedValue {
    pub value: Complex64,
    pub error_radius: f64,
    pub method: Method,
    pub bound: TailBound,
    pub plan: TruncationPlan,
}

impl CertifiedValue {
    pub fn abs(&self) -> f64 {
        self.value.norm()
    }

    pub fn arg(&self) -> f64 {
        self.value.arg()
    }

    /// Whether `z` lies in the certified disc.
    pub fn contains(&self, z: Complex64) -> bool {
        (self.value - z).norm() <= self.error_radius
    }

    /// Whether two certified discs intersect.
    pub fn agrees_with(&self, other: &CertifiedValue) -> bool {
        (self.value - other.value).norm() <= self.error_radius + other.error_radius
    }

    /// Largest possible deviation of Arg(exact) from Arg(value), or `None`
    /// when the disc contains the origin.
    pub fn arg_radius(&self) -> Option<f64> {
        let m = self.abs();
        (self.error_radius < m).then(|| (self.error_radius / m).asin())
    }
}

/// ⟨r_n, x⟩ reduced to (−π, π]. `a_1 = 1`, so `n = 1` gives 0.
pub fn coefficient_phase(n: u64, x: &PhaseVector, table: &PrimeTable) -> Result<f64> {
    let f = table.factorize(n)?;
    let raw: f64 = f
        .factors
        .iter()
        .map(|pp| pp.exponent as f64 * x.phase(pp.index))
        .sum();
    Ok(normalize_phase(raw))
}

/// Unreduced ⟨r_n, x⟩ for every n ≤ N, built multiplicatively from the
/// smallest prime factor of each n.
fn coefficient_phases(x: &PhaseVector, cutoff: u64, table: &PrimeTable) -> Result<Vec<f64>> {
    if table.limit() < cutoff {
        return Err(Error::TableTooSmall {
            needed: cutoff,
            limit: table.limit(),
        });
    }
    let n = cutoff as usize;
    // spf[i] = 1-based index of the smallest prime factor of i.
    let mut spf = vec![0u32; n + 1];
    for (k, &p) in table.primes().iter().enumerate() {
        let p = p as usize;
        if p > n {
            break;
        }
        let mut m = p;
        while m <= n {
            if spf[m] == 0 {
                spf[m] = (k + 1) as u32;
            }
            m += p;
        }
    }
    let mut phase = vec![0.0f64; n + 1];
    for i in 2..=n {
        let k = spf[i] as usize;
        let p = table.primes()[k - 1] as usize;
        phase[i] = phase[i / p] + x.phase(k);
    }
    Ok(phase)
}

/// Partial Dirichlet sum Σ_{n≤N} e^{i⟨r_n,x⟩} n^{-s} with the certified tail
/// `N^{1-σ}/(σ-1)` plus a rounding allowance.
pub fn dirichlet_eval(
    x: &PhaseVector,
    s: &ComplexPoint,
    plan: &TruncationPlan,
    table: &PrimeTable,
) -> Result<CertifiedValue> {
    plan.certify(s)?;
    let n_max = plan.cutoff;
    let phases = if x.is_zeta() {
        None
    } else {
        Some(coefficient_phases(x, n_max, table)?)
    };

    let mut acc = ComplexNeumaier::new();
    let mut max_phase = 0.0f64;
    for n in 1..=n_max {
        let ln_n = (n as f64).ln();
        let coeff = phases.as_ref().map_or(0.0, |p| p[n as usize]);
        max_phase = max_phase.max(coeff.abs());
        let angle = coeff - s.t * ln_n;
        let modulus = (-s.sigma * ln_n).exp();
        let (sin, cos) = angle.sin_cos();
        acc.add(Complex64::new(modulus * cos, modulus * sin));
    }
    let value = acc.value();

    // Each term is off by a few ulps of its modulus (≤ 1) plus the rounding
    // of its angle, which grows with |t| ln N and with the coefficient phase.
    let nf = n_max as f64;
    let slop = 4.0 * EPS * nf * (4.0 + s.t.abs() * nf.ln() + max_phase);
    let error_radius = bounds::dirichlet_tail(n_max, s.sigma) + slop;

    Ok(CertifiedValue {
        value,
        error_radius,
        method: Method::Dirichlet,
        bound: TailBound::IntegerComparison,
        plan: *plan,
    })
}

/// Sums over the first m Euler factors `1 − w_k`, `w_k = e^{i(x_k − t ln p_k)} p_k^{-σ}`.
#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct FactorSums {
    /// Σ ln|1 − w_k|.
    pub log_modulus: f64,
    /// Σ Arg(1 − w_k), principal branch termwise.
    pub arg: f64,
    /// Σ |Arg(1 − w_k)|.
    pub abs_arg: f64,
    /// Σ |ln|1 − w_k||.
    pub abs_log: f64,
    /// Σ p_k^{-σ}.
    pub radius: f64,
    /// ln p_m, or 0 when m = 0.
    pub ln_last: f64,
}

impl FactorSums {
    /// Bound on the accumulated rounding in `log_modulus` and `arg`.
    pub fn rounding(&self, t: f64) -> f64 {
        4.0 * EPS
            * (self.abs_log
                + self.abs_arg
                + (PI + t.abs() * self.ln_last) * self.radius
                + self.log_modulus.abs()
                + self.arg.abs())
    }
}

#[derive(Clone, Copy, Default)]
struct FactorAcc {
    log_modulus: Neumaier,
    arg: Neumaier,
    abs_arg: Neumaier,
    abs_log: Neumaier,
    radius: Neumaier,
}

impl FactorAcc {
    fn merge(&mut self, o: &FactorAcc) {
        self.log_modulus.merge(&o.log_modulus);
        self.arg.merge(&o.arg);
        self.abs_arg.merge(&o.abs_arg);
        self.abs_log.merge(&o.abs_log);
        self.radius.merge(&o.radius);
    }
}

/// Principal argument and log-modulus of one factor `1 − e^{iθ} r`.
#[inline]
pub(crate) fn factor_terms(theta: f64, r: f64) -> (f64, f64) {
    let (sin, cos) = theta.sin_cos();
    let log_modulus = 0.5 * (r * r - 2.0 * r * cos).ln_1p();
    let arg = (-r * sin).atan2(1.0 - r * cos);
    (log_modulus, arg)
}

pub(crate) fn factor_sums(x: &PhaseVector, s: &ComplexPoint, primes: &[u64]) -> FactorSums {
    let partials: Vec<FactorAcc> = primes
        .par_chunks(PRIME_CHUNK)
        .enumerate()
        .map(|(chunk, ps)| {
            let mut acc = FactorAcc::default();
            let base = chunk * PRIME_CHUNK;
            for (j, &p) in ps.iter().enumerate() {
                let ln_p = (p as f64).ln();
                let r = (-s.sigma * ln_p).exp();
                let theta = x.phase(base + j + 1) - s.t * ln_p;
                let (lm, a) = factor_terms(theta, r);
                acc.log_modulus.add(lm);
                acc.arg.add(a);
                acc.abs_arg.add(a.abs());
                acc.abs_log.add(lm.abs());
                acc.radius.add(r);
            }
            acc
        })
        .collect();
    let mut total = FactorAcc::default();
    for p in &partials {
        total.merge(p);
    }
    FactorSums {
        log_modulus: total.log_modulus.value(),
        arg: total.arg.value(),
        abs_arg: total.abs_arg.value(),
        abs_log: total.abs_log.value(),
        radius: total.radius.value(),
        ln_last: primes.last().map_or(0.0, |&p| (p as f64).ln()),
    }
}

/// Truncated Euler product Π_{k≤m} (1 − e^{ix_k} p_k^{-s})^{-1}.
///
/// The radius is the smaller of two proven bounds: the uniform estimate
/// ζ(1+δ)·Σ_{k≥p_{m+1}} k^{-(1+δ)} valid on all of σ ≥ 1+δ, and the pointwise
/// bound |Π_m|·(e^η − 1) where η dominates the log of the omitted factors.
pub fn euler_eval(
    x: &PhaseVector,
    s: &ComplexPoint,
    plan: &TruncationPlan,
    table: &PrimeTable,
) -> Result<CertifiedValue> {
    plan.certify(s)?;
    if plan.prime_count == 0 {
        return Err(Error::Domain(
            "Euler product needs at least one prime".into(),
        ));
    }
    let primes = plan.primes(table)?;
    let sums = factor_sums(x, s, primes);
    let log_value = Complex64::new(-sums.log_modulus, -sums.arg);
    let value = log_value.exp();

    let rel_round = (sums.rounding(s.t) + 8.0 * EPS * (1.0 + log_value.norm())).exp_m1();
    let slop = value.norm() * rel_round;
    let exact_modulus = value.norm() + slop;

    let next = table.next_prime_lower_bound(plan.prime_count);
    let uniform = bounds::euler_uniform_tail(next, plan.delta);
    let pointwise =
        exact_modulus * bounds::relative_from_log_tail(bounds::euler_log_tail(next, s.sigma));
    let (tail, bound) = if pointwise <= uniform {
        (pointwise, TailBound::LogProduct)
    } else {
        (uniform, TailBound::UniformProduct)
    };

    Ok(CertifiedValue {
        value,
        error_radius: tail + slop,
        method: Method::Euler,
        bound,
        plan: *plan,
    })
}

/// Closed-form members used as references.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum IdentityMember {
    /// ζ(s).
    Riemann,
    /// ζ_π(s) = Σ λ(n) n^{-s} = ζ(2s)/ζ(s).
    Liouville,
    /// 1/ζ(s) = Σ μ(n) n^{-s}.
    Moebius,
}

/// ζ(s) by first-order Euler–Maclaurin:
/// ζ(s) = Σ_{n<N} n^{-s} + N^{1-s}/(s-1) + N^{-s}/2 + R, |R| ≤ |s| N^{-σ}/(2σ).
fn zeta_euler_maclaurin(s: &ComplexPoint, cutoff: u64) -> (Complex64, f64) {
    let mut acc = ComplexNeumaier::new();
    let power = |n: u64| {
        let ln_n = (n as f64).ln();
        Complex64::from_polar((-s.sigma * ln_n).exp(), -s.t * ln_n)
    };
    for n in 1..cutoff {
        acc.add(power(n));
    }
    let sc = s.to_complex();
    let n_pow = power(cutoff);
    let nf = cutoff as f64;
    acc.add(n_pow * nf / (sc - 1.0));
    acc.add(n_pow * 0.5);
    let remainder = sc.norm() * nf.powf(-s.sigma) / (2.0 * s.sigma) * bounds::ROUND_UP;
    let slop = 4.0 * EPS * nf * (4.0 + s.t.abs() * nf.ln()) + 4.0 * EPS * acc.value().norm();
    (acc.value(), remainder + slop)
}

/// |A/B − a/b| for |A − a| ≤ ea, |B − b| ≤ eb, requiring |b| > eb.
fn quotient_radius(a: Complex64, ea: f64, b: Complex64, eb: f64) -> Result<f64> {
    let nb = b.norm();
    if nb <= eb {
        return Err(Error::CertificateTooWeak(
            "denominator disc contains zero".into(),
        ));
    }
    let q = a / b;
    Ok((ea * nb + a.norm() * eb) / (nb * (nb - eb)) * bounds::ROUND_UP + 4.0 * EPS * q.norm())
}

/// Reference values of ζ, ζ_π = ζ(2s)/ζ(s) and 1/ζ from certified
/// Euler–Maclaurin evaluations of ζ with `cutoff` terms.
pub fn identity_eval(
    member: IdentityMember,
    s: &ComplexPoint,
    cutoff: u64,
) -> Result<CertifiedValue> {
    if cutoff < 1 {
        return Err(Error::Domain("cutoff must be >= 1".into()));
    }
    let plan = TruncationPlan::new(cutoff, 0, s.sigma - 1.0)?;
    let (zs, ezs) = zeta_euler_maclaurin(s, cutoff);
    let (value, error_radius, bound) = match member {
        IdentityMember::Riemann => (zs, ezs, TailBound::EulerMaclaurin),
        IdentityMember::Liouville => {
            let (z2, ez2) = zeta_euler_maclaurin(&s.doubled(), cutoff);
            (
                z2 / zs,
                quotient_radius(z2, ez2, zs, ezs)?,
                TailBound::Quotient,
            )
        }
        IdentityMember::Moebius => {
            let one = Complex64::new(1.0, 0.0);
            (
                one / zs,
                quotient_radius(one, 0.0, zs, ezs)?,
                TailBound::Quotient,
            )
        }
    };
    Ok(CertifiedValue {
        value,
        error_radius,
        method: Method::Identity,
        bound,
        plan,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::primes::sieve;
    use approx::assert_abs_diff_eq;

    fn table() -> PrimeTable {
        sieve(100_000).unwrap()
    }

    #[test]
    fn phases_are_normalized() {
        let x = PhaseVector::list([3.0 * PI, -PI, 7.0]);
        assert_eq!(x.phase(1), PI);
        assert_eq!(x.phase(2), PI);
        assert_abs_diff_eq!(x.phase(3), 7.0 - TAU, epsilon = 1e-15);
        assert_eq!(x.phase(4), 0.0);
        assert_eq!(PhaseVector::constant(-PI).phase(9), PI);
    }

    #[test]
    fn parse_specs() {
        assert_eq!(PhaseVector::parse("zero").unwrap(), PhaseVector::zero());
        assert_eq!(PhaseVector::parse("pi").unwrap(), PhaseVector::liouville());
        assert_eq!(
            PhaseVector::parse("pi/2").unwrap(),
            PhaseVector::quarter_turn()
        );
        assert_eq!(
            PhaseVector::parse("-pi/2").unwrap(),
            PhaseVector::constant(-FRAC_PI_2)
        );
        let l = PhaseVector::parse("list:0.5,-pi/4,3pi/4").unwrap();
        assert_eq!(l.stored().len(), 3);
        assert_abs_diff_eq!(l.phase(2), -PI / 4.0);
        assert_abs_diff_eq!(l.phase(3), 0.75 * PI);
        assert!(PhaseVector::parse("tau").is_err());
    }

    #[test]
    fn coefficient_phase_examples() {
        let t = table();
        let half = PhaseVector::quarter_turn();
        assert_eq!(coefficient_phase(1, &half, &t).unwrap(), 0.0);
        // 12 = 2²·3: 3π/2 ≡ −π/2.
        assert_abs_diff_eq!(
            coefficient_phase(12, &half, &t).unwrap(),
            -FRAC_PI_2,
            epsilon = 1e-15
        );
        // 30 has three prime factors: 3π ≡ π, a_30 = −1.
        assert_abs_diff_eq!(
            coefficient_phase(30, &PhaseVector::liouville(), &t).unwrap(),
            PI,
            epsilon = 1e-15
        );
        for n in 1..2000 {
            assert_eq!(coefficient_phase(n, &PhaseVector::zero(), &t).unwrap(), 0.0);
        }
    }

    #[test]
    fn multiplicative_phases_match_factorization() {
        let t = table();
        let x = PhaseVector::list([0.3, -1.1, 2.9, 0.7, -2.2]);
        let phases = coefficient_phases(&x, 5000, &t).unwrap();
        for n in 1..=5000u64 {
            let direct = coefficient_phase(n, &x, &t).unwrap();
            assert!(
                circular_distance(phases[n as usize], direct) < 1e-12,
                "n = {n}"
            );
        }
    }

    #[test]
    fn points_outside_half_plane_are_rejected() {
        assert!(ComplexPoint::new(1.0, 0.0).is_err());
        assert!(ComplexPoint::new(0.5, 3.0).is_err());
        assert!(ComplexPoint::new(f64::NAN, 0.0).is_err());
        let plan = TruncationPlan::new(100, 10, 0.5).unwrap();
        let s = ComplexPoint::new(1.2, 0.0).unwrap();
        assert!(matches!(
            dirichlet_eval(&PhaseVector::zero(), &s, &plan, &table()),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn zeta_on_real_axis_is_at_least_one() {
        let t = table();
        for sigma in [1.1, 1.5, 2.0, 7.0] {
            let s = ComplexPoint::real(sigma).unwrap();
            let plan = TruncationPlan::new(1000, 0, sigma - 1.0).unwrap();
            let v = dirichlet_eval(&PhaseVector::zero(), &s, &plan, &t).unwrap();
            assert!(v.value.re >= 1.0 && v.value.im == 0.0);
        }
    }

    #[test]
    fn euler_small_product_is_direct() {
        let t = table();
        let s = ComplexPoint::real(2.0).unwrap();
        let plan = TruncationPlan::new(1, 4, 1.0).unwrap();
        let v = euler_eval(&PhaseVector::quarter_turn(), &s, &plan, &t).unwrap();
        let mut direct = Complex64::new(1.0, 0.0);
        for p in [2.0f64, 3.0, 5.0, 7.0] {
            direct /= Complex64::new(1.0, -p.powi(-2));
        }
        assert!((v.value - direct).norm() < 1e-14);
        // |1 − i r| = sqrt(1 + r²) > 1, so the modulus sits just below 1 and
        // above Π (1 + p^{-2})^{-1}.
        let floor: f64 = [2.0f64, 3.0, 5.0, 7.0]
            .iter()
            .map(|p| 1.0 / (1.0 + p.powi(-2)))
            .product();
        assert!(v.abs() < 1.0 && v.abs() >= floor);
    }

    #[test]
    fn euler_value_never_vanishes() {
        let t = table();
        let plan = TruncationPlan::new(1, 1000, 0.01).unwrap();
        for (sigma, time) in [(1.01, 0.0), (1.01, 14.1347), (1.5, -3.0), (3.0, 1e6)] {
            let s = ComplexPoint::new(sigma, time).unwrap();
            for x in [
                PhaseVector::zero(),
                PhaseVector::liouville(),
                PhaseVector::quarter_turn(),
            ] {
                let v = euler_eval(&x, &s, &plan, &t).unwrap();
                assert!(v.abs() > 0.0);
            }
        }
    }

    #[test]
    fn euler_with_no_primes_is_rejected() {
        let plan = TruncationPlan::new(1, 0, 1.0).unwrap();
        let s = ComplexPoint::real(2.0).unwrap();
        assert!(euler_eval(&PhaseVector::zero(), &s, &plan, &table()).is_err());
    }

    #[test]
    fn identity_values() {
        let s = ComplexPoint::real(2.0).unwrap();
        let z = identity_eval(IdentityMember::Riemann, &s, 10_000).unwrap();
        assert!(z.contains(Complex64::new(PI * PI / 6.0, 0.0)));
        let l = identity_eval(IdentityMember::Liouville, &s, 10_000).unwrap();
        assert!(l.contains(Complex64::new(PI * PI / 15.0, 0.0)));
        let m = identity_eval(IdentityMember::Moebius, &s, 10_000).unwrap();
        assert!(m.contains(Complex64::new(6.0 / (PI * PI), 0.0)));
        assert!(l.error_radius < 1e-8 && m.error_radius < 1e-8);
        let far = identity_eval(
            IdentityMember::Liouville,
            &ComplexPoint::real(50.0).unwrap(),
            100,
        )
        .unwrap();
        assert!((far.value.re - 1.0).abs() < 1e-14);
    }

    #[test]
    fn euler_maclaurin_agrees_with_dirichlet_off_axis() {
        let t = table();
        let s = ComplexPoint::new(1.5, 10.0).unwrap();
        let em = identity_eval(IdentityMember::Riemann, &s, 10_000).unwrap();
        let plan = TruncationPlan::new(100_000, 0, 0.5).unwrap();
        let d = dirichlet_eval(&PhaseVector::zero(), &s, &plan, &t).unwrap();
        assert!(em.agrees_with(&d));
        assert!(em.error_radius < 1e-4);
    }

    #[test]
    fn circular_distance_wraps() {
        assert_abs_diff_eq!(circular_distance(PI - 0.1, -PI + 0.1), 0.2, epsilon = 1e-12);
        assert_eq!(circular_distance(1.0, 1.0), 0.0);
        assert_abs_diff_eq!(circular_distance(0.0, PI), PI);
    }
}
