//! Poisson kernel of the unit sphere,
//!
//! ```text
//! p_r^λ(cos ϑ) = (1/Σ_n) Σ_{l≥0} r^l (λ+l)/λ C_l^λ(cos ϑ)
//!              = (1/Σ_n) (1−r²) / (1−2r cos ϑ + r²)^{(n+1)/2},
//! ```
//!
//! absolutely convergent for r ∈ [0, 1).

use crate::error::{Error, Result};
use crate::gegenbauer::gegenbauer_sup_bound;
use crate::sphere::SphereDim;

fn check_args(r: f64, t: f64) -> Result<()> {
    if !(r >= 0.0 && r < 1.0) {
        return Err(Error::Domain(format!("Poisson kernel radius r = {r} outside [0, 1)")));
    }
    if !(t.abs() <= 1.0) {
        return Err(Error::Domain(format!("Poisson kernel argument t = {t} outside [-1, 1]")));
    }
    Ok(())
}

/// Closed form of the kernel.
pub fn poisson_kernel(r: f64, t: f64, dim: SphereDim) -> Result<f64> {
    check_args(r, t)?;
    Ok(poisson_kernel_sum_unchecked(r, t, dim) / dim.surface_measure())
}

/// Σ_n · p_r^λ(t) = (1−r²)/(1−2rt+r²)^{(n+1)/2} without the measure factor.
pub(crate) fn poisson_kernel_sum_unchecked(r: f64, t: f64, dim: SphereDim) -> f64 {
    let denom = 1.0 - 2.0 * r * t + r * r;
    (1.0 - r * r) / denom.powf((dim.n() as f64 + 1.0) / 2.0)
}

/// The defining Gegenbauer series, truncated once the uniform-bound tail
/// estimate drops below `tail_tol`. Used as the second route in the
/// series/closed-form agreement checks.
pub fn poisson_kernel_series(r: f64, t: f64, dim: SphereDim, tail_tol: f64) -> Result<f64> {
    check_args(r, t)?;
    if !(tail_tol > 0.0) {
        return Err(Error::Parameter("tail_tol must be positive".into()));
    }
    let lambda = dim.lambda();
    let n = dim.n();
    let mut sum = 0.0;
    // Recurrence state for C_l^λ(t).
    let mut cm2 = 0.0;
    let mut cm1 = 0.0;
    let mut rl = 1.0; // r^l
    let mut l = 0u32;
    loop {
        let c = match l {
            0 => 1.0,
            1 => 2.0 * lambda * t,
            _ => {
                let lf = l as f64;
                (2.0 * (lf + lambda - 1.0) * t * cm1 - (lf + 2.0 * lambda - 2.0) * cm2) / lf
            }
        };
        sum += rl * (lambda + l as f64) / lambda * c;
        cm2 = cm1;
        cm1 = c;
        rl *= r;
        l += 1;

        // Geometric tail bound: terms are dominated by
        // b_l = r^l (λ+l)/λ (n+l−2)^{n−2}, and for l ≥ l0 the ratio
        // b_{l+1}/b_l ≤ ρ = r (1+1/(λ+l0)) (1+1/(n+l0−2))^{n−2}.
        if l >= 8 {
            let lf = l as f64;
            let rho = r
                * (1.0 + 1.0 / (lambda + lf))
                * (1.0 + 1.0 / (n as f64 + lf - 2.0)).powi(n as i32 - 2);
            if rho < 1.0 {
                let b = rl * (lambda + lf) / lambda * gegenbauer_sup_bound(l, dim);
                if b / (1.0 - rho) < tail_tol {
                    break;
                }
            }
        }
        if l > 2_000_000 {
            return Err(Error::Quadrature {
                requested: tail_tol,
                achieved: f64::INFINITY,
                subdivisions: l as usize,
            });
        }
    }
    Ok(sum / dim.surface_measure())
}
