//! Sphere constants: dimension, Gegenbauer order λ = (n−1)/2, surface measure.

use crate::error::{Error, Result};
use std::f64::consts::PI;

/// The unit sphere Sⁿ ⊂ ℝⁿ⁺¹ together with the derived constants used
/// throughout: the Gegenbauer order λ = (n−1)/2 and the total surface
/// measure Σ_n = 2π^{(n+1)/2} / Γ((n+1)/2).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SphereDim {
    n: u32,
}

impl SphereDim {
    /// Requires n ≥ 2.
    pub fn new(n: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::Parameter(format!("sphere dimension n = {n} must be ≥ 2")));
        }
        Ok(SphereDim { n })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// λ = (n−1)/2, exact in f64 (a half-integer).
    pub fn lambda(&self) -> f64 {
        (self.n - 1) as f64 / 2.0
    }

    /// Numerator of λ as the exact rational (n−1)/2.
    pub fn lambda_rational(&self) -> (i64, i64) {
        ((self.n - 1) as i64, 2)
    }

    /// Σ_n, the surface measure of Sⁿ.
    pub fn surface_measure(&self) -> f64 {
        2.0 * PI.powf((self.n as f64 + 1.0) / 2.0) / gamma_half(self.n + 1)
    }
}

/// Γ(k/2) for integer k ≥ 1 by the downward product; exact for the small
/// half-integer arguments needed here (k ≤ 340 before overflow).
pub(crate) fn gamma_half(k: u32) -> f64 {
    debug_assert!(k >= 1 && k <= 340);
    let mut x = k as f64 / 2.0;
    let mut acc = 1.0;
    while x > 1.0 {
        x -= 1.0;
        acc *= x;
    }
    if (x - 0.5).abs() < 1e-12 {
        acc * PI.sqrt()
    } else {
        acc // Γ(1) = 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn rejects_n_below_two() {
        assert!(SphereDim::new(0).is_err());
        assert!(SphereDim::new(1).is_err());
        assert!(SphereDim::new(2).is_ok());
    }

    #[test]
    fn gamma_half_small_values() {
        assert_relative_eq!(gamma_half(1), PI.sqrt(), max_relative = 1e-15);
        assert_relative_eq!(gamma_half(2), 1.0, max_relative = 1e-15);
        assert_relative_eq!(gamma_half(3), PI.sqrt() / 2.0, max_relative = 1e-15);
        assert_relative_eq!(gamma_half(4), 1.0, max_relative = 1e-15);
        assert_relative_eq!(gamma_half(5), 0.75 * PI.sqrt(), max_relative = 1e-15);
        assert_relative_eq!(gamma_half(8), 6.0, max_relative = 1e-15);
    }

    #[test]
    fn surface_measure_known_dimensions() {
        // S²: 4π, S³: 2π².
        let s2 = SphereDim::new(2).unwrap();
        let s3 = SphereDim::new(3).unwrap();
        assert_relative_eq!(s2.surface_measure(), 4.0 * PI, max_relative = 1e-14);
        assert_relative_eq!(s3.surface_measure(), 2.0 * PI * PI, max_relative = 1e-14);
        // S⁴: 8π²/3, S⁵: π³.
        let s4 = SphereDim::new(4).unwrap();
        let s5 = SphereDim::new(5).unwrap();
        assert_relative_eq!(s4.surface_measure(), 8.0 * PI * PI / 3.0, max_relative = 1e-14);
        assert_relative_eq!(s5.surface_measure(), PI.powi(3), max_relative = 1e-14);
    }

    #[test]
    fn lambda_is_half_integer() {
        for n in 2..20 {
            let dim = SphereDim::new(n).unwrap();
            assert_relative_eq!(dim.lambda(), (n as f64 - 1.0) / 2.0);
            let (num, den) = dim.lambda_rational();
            assert_eq!(num as f64 / den as f64, dim.lambda());
        }
    }
}
