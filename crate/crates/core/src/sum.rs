//! Compensated (Kahan–Babuška–Neumaier) accumulation.
//!
//! The running error of each addition is captured with the two-sum error-free
//! transformation and folded back in at the end, so the result is as accurate
//! as if the sum had been carried in twice the working precision.

use std::ops::AddAssign;

use num_complex::Complex64;

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Neumaier {
    sum: f64,
    compensation: f64,
}

impl Neumaier {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    /// Merge another accumulator (used when partial sums are reduced).
    pub fn merge(&mut self, other: &Neumaier) {
        self.add(other.sum);
        self.add(other.compensation);
    }

    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

impl AddAssign<f64> for Neumaier {
    fn add_assign(&mut self, x: f64) {
        self.add(x);
    }
}

impl FromIterator<f64> for Neumaier {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = Neumaier::new();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}

/// Compensated sum of complex terms, real and imaginary parts kept apart.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct ComplexNeumaier {
    re: Neumaier,
    im: Neumaier,
}

impl ComplexNeumaier {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, z: Complex64) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    pub fn merge(&mut self, other: &ComplexNeumaier) {
        self.re.merge(&other.re);
        self.im.merge(&other.im);
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_cancelled_terms() {
        let acc: Neumaier = [1.0, 1e100, 1.0, -1e100].into_iter().collect();
        assert_eq!(acc.value(), 2.0);
    }

    #[test]
    fn beats_naive_on_harmonic_tail() {
        // Sum of 0.1 ten million times; naive summation drifts by ~1e-4.
        let mut acc = Neumaier::new();
        let mut naive = 0.0;
        for _ in 0..10_000_000 {
            acc += 0.1;
            naive += 0.1;
        }
        assert!((acc.value() - 1_000_000.0).abs() < 1e-8);
        assert!((naive - 1_000_000.0f64).abs() > 1e-6);
    }

    #[test]
    fn merge_matches_single_pass() {
        let xs: Vec<f64> = (1..=1000).map(|n| 1.0 / (n as f64).powi(2)).collect();
        let whole: Neumaier = xs.iter().copied().collect();
        let mut left: Neumaier = xs[..400].iter().copied().collect();
        let right: Neumaier = xs[400..].iter().copied().collect();
        left.merge(&right);
        assert!((whole.value() - left.value()).abs() <= 2.0 * f64::EPSILON);
    }
}
