//! Closed-form upper bounds for the tails of Dirichlet sums, Euler products
//! and prime sums. Every function returns a proven upper bound, inflated by
//! [`ROUND_UP`] to cover the handful of roundings made while evaluating it.

use serde::Serialize;

/// Inflation applied to each closed-form bound.
pub const ROUND_UP: f64 = 1.0 + 1e-12;

/// Constant in π(x) < 1.25506 x / ln x, valid for all x > 1
/// (Rosser–Schoenfeld 1962).
pub const ROSSER_SCHOENFELD: f64 = 1.25506;

/// Upper bound for π/3 = arcsin(1/2) / (1/2).
#[allow(clippy::approx_constant)]
const ARCSIN_SLOPE: f64 = 1.047_197_551_196_6;

/// Which inequality produced an error radius.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TailBound {
    /// Σ_{n>N} n^{-σ} ≤ N^{1-σ}/(σ-1).
    IntegerComparison,
    /// ζ(1+δ)·Σ_{k≥P} k^{-(1+δ)}, uniform on σ ≥ 1+δ.
    UniformProduct,
    /// |Π_m|·(e^η − 1) with η bounding Σ_{k>m} |log(1 − w_k)|.
    LogProduct,
    /// First-order Euler–Maclaurin remainder |s| N^{-σ} / (2σ).
    EulerMaclaurin,
    /// Propagated through a quotient of certified values.
    Quotient,
}

/// Σ_{n>N} n^{-σ} ≤ N^{1-σ}/(σ-1).
pub fn dirichlet_tail(cutoff: u64, sigma: f64) -> f64 {
    debug_assert!(sigma > 1.0 && cutoff >= 1);
    let n = cutoff as f64;
    n.powf(1.0 - sigma) / (sigma - 1.0) * ROUND_UP
}

/// Σ_{n≥P} n^{-σ} ≤ P^{-σ} + P^{1-σ}/(σ-1).
pub fn integer_tail_from(start: u64, sigma: f64) -> f64 {
    let p = start as f64;
    (p.powf(-sigma) + p.powf(1.0 - sigma) / (sigma - 1.0)) * ROUND_UP
}

/// Upper bound for Σ p^{-σ} over primes p ≥ `start`.
///
/// `start` only has to be a lower bound for the first prime left out. The
/// prime-counting bound comes from partial summation against
/// π(x) < 1.25506 x / ln x:
/// Σ_{p≥Q} p^{-σ} ≤ σ ∫_Q^∞ π(x) x^{-σ-1} dx ≤ 1.25506 σ Q^{1-σ} / ((σ-1) ln Q).
pub fn prime_tail(start: u64, sigma: f64) -> f64 {
    let integer = integer_tail_from(start, sigma);
    if start < 17 {
        return integer;
    }
    let q = start as f64;
    let counting =
        ROSSER_SCHOENFELD * sigma * q.powf(1.0 - sigma) / ((sigma - 1.0) * q.ln()) * ROUND_UP;
    integer.min(counting)
}

/// ζ(1+δ) < 1 + 1/δ.
pub fn zeta_one_plus_upper(delta: f64) -> f64 {
    (1.0 + 1.0 / delta) * ROUND_UP
}

/// Error of the truncated Euler product uniformly on σ ≥ 1+δ:
/// ζ(1+δ)·Σ_{k≥P} k^{-(1+δ)} ≤ (1 + 1/δ)(P^{-δ}/δ + P^{-(1+δ)}).
pub fn euler_uniform_tail(start: u64, delta: f64) -> f64 {
    let p = start as f64;
    zeta_one_plus_upper(delta) * (p.powf(-delta) / delta + p.powf(-(1.0 + delta))) * ROUND_UP
}

/// η ≥ Σ_{k>m} |log(1 − e^{iθ_k} p_k^{-σ})|, using |log(1−w)| ≤ |w|/(1−|w|).
pub fn euler_log_tail(start: u64, sigma: f64) -> f64 {
    let r = (start as f64).powf(-sigma);
    prime_tail(start, sigma) / (1.0 - r) * ROUND_UP
}

/// Relative error e^η − 1 of the truncated product for a log-tail η.
pub fn relative_from_log_tail(eta: f64) -> f64 {
    eta.exp_m1() * ROUND_UP
}

/// Bound for Σ_{k>m} |Arg(1 − e^{iθ_k} p_k^{-σ})|.
///
/// The disc {1 − w : |w| ≤ r} is seen from the origin under half-angle
/// arcsin r, and arcsin r ≤ (π/3) r for r ≤ 1/2, which holds for every prime
/// when σ > 1.
pub fn arg_tail(start: u64, sigma: f64) -> f64 {
    ARCSIN_SLOPE * prime_tail(start, sigma) * ROUND_UP
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_prime_sum(from: u64, to: u64, sigma: f64) -> f64 {
        (from..=to)
            .filter(|&n| n > 1 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0))
            .map(|p| (p as f64).powf(-sigma))
            .sum()
    }

    #[test]
    fn dirichlet_tail_dominates_partial_tail() {
        for sigma in [1.1, 1.5, 2.0, 4.0] {
            let brute: f64 = (101..200_000u64).map(|n| (n as f64).powf(-sigma)).sum();
            assert!(brute <= dirichlet_tail(100, sigma));
        }
    }

    #[test]
    fn prime_tail_dominates_partial_prime_sums() {
        for sigma in [1.05, 1.3, 2.0, 3.0, 10.0] {
            for start in [2u64, 11, 101, 1009] {
                let brute = brute_prime_sum(start, 100_000, sigma);
                assert!(
                    brute <= prime_tail(start, sigma),
                    "sigma {sigma} start {start}"
                );
            }
        }
    }

    #[test]
    fn prime_counting_bound_wins_near_one() {
        let start = 100_000_000;
        assert!(prime_tail(start, 1.5) < 0.2 * integer_tail_from(start, 1.5));
    }

    #[test]
    fn uniform_tail_matches_closed_form() {
        // δ = 1, P = 10: 2 · (1/10 + 1/100).
        assert!((euler_uniform_tail(10, 1.0) - 0.22).abs() < 1e-12);
    }

    #[test]
    fn arcsin_slope_is_an_upper_bound() {
        const { assert!(ARCSIN_SLOPE >= std::f64::consts::FRAC_PI_3) };
        for i in 1..=500 {
            let r = 0.5 * i as f64 / 500.0;
            assert!(r.asin() <= ARCSIN_SLOPE * r * ROUND_UP);
        }
    }
}
