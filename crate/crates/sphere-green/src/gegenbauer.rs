//! Gegenbauer (ultraspherical) polynomials C_l^λ on [−1, 1].
//!
//! Evaluation uses the ascending three-term recurrence
//!
//! ```text
//! C_0^λ(t) = 1,   C_1^λ(t) = 2λt,
//! l C_l^λ(t) = 2(l+λ−1) t C_{l−1}^λ(t) − (l+2λ−2) C_{l−2}^λ(t),
//! ```
//!
//! which is stable on the interval for the orders arising from sphere
//! dimensions (λ = (n−1)/2).

use crate::error::{Error, Result};
use crate::sphere::SphereDim;

fn check_args(lambda: f64, t: f64) -> Result<()> {
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(Error::Domain(format!("Gegenbauer order λ = {lambda} must be positive")));
    }
    if !(t.abs() <= 1.0) {
        return Err(Error::Domain(format!("Gegenbauer argument t = {t} outside [-1, 1]")));
    }
    Ok(())
}

/// C_l^λ(t) by the three-term recurrence.
pub fn gegenbauer(l: u32, lambda: f64, t: f64) -> Result<f64> {
    check_args(lambda, t)?;
    Ok(gegenbauer_unchecked(l, lambda, t))
}

pub(crate) fn gegenbauer_unchecked(l: u32, lambda: f64, t: f64) -> f64 {
    match l {
        0 => 1.0,
        1 => 2.0 * lambda * t,
        _ => {
            let mut cm2 = 1.0;
            let mut cm1 = 2.0 * lambda * t;
            let mut c = 0.0;
            for k in 2..=l {
                let kf = k as f64;
                c = (2.0 * (kf + lambda - 1.0) * t * cm1 - (kf + 2.0 * lambda - 2.0) * cm2) / kf;
                cm2 = cm1;
                cm1 = c;
            }
            c
        }
    }
}

/// All of C_0^λ(t), ..., C_{l_max}^λ(t) in one recurrence sweep.
pub fn gegenbauer_all(l_max: u32, lambda: f64, t: f64) -> Result<Vec<f64>> {
    check_args(lambda, t)?;
    let mut out = Vec::with_capacity(l_max as usize + 1);
    out.push(1.0);
    if l_max == 0 {
        return Ok(out);
    }
    out.push(2.0 * lambda * t);
    for k in 2..=l_max {
        let kf = k as f64;
        let c = (2.0 * (kf + lambda - 1.0) * t * out[k as usize - 1]
            - (kf + 2.0 * lambda - 2.0) * out[k as usize - 2])
            / kf;
        out.push(c);
    }
    Ok(out)
}

/// C_l^λ(1) = binom(l+2λ−1, l), the maximum of |C_l^λ| on [−1, 1].
pub fn gegenbauer_at_one(l: u32, lambda: f64) -> f64 {
    // ∏_{k=1}^{l} (k + 2λ − 1) / k
    let mut acc = 1.0;
    for k in 1..=l {
        acc *= (k as f64 + 2.0 * lambda - 1.0) / k as f64;
    }
    acc
}

/// Uniform bound (n+l−2)^{n−2} ≥ |C_l^λ(cos ϑ)| for λ = (n−1)/2.
///
/// For n = 2 the exponent is zero and the bound reduces to 1, the sharp
/// Legendre bound |P_l| ≤ 1.
pub fn gegenbauer_sup_bound(l: u32, dim: SphereDim) -> f64 {
    let n = dim.n();
    if n == 2 {
        return 1.0;
    }
    ((n + l - 2) as f64).powi(n as i32 - 2)
}

/// Eigenvalue of the zonal Laplace–Beltrami operator on degree-l harmonics,
/// −l(l+2λ) = −l(l+n−1).
pub fn laplace_beltrami_eigenvalue(l: u32, dim: SphereDim) -> f64 {
    let lf = l as f64;
    -lf * (lf + 2.0 * dim.lambda())
}

/// Squared norms h_l^λ = ∫₋₁¹ [C_l^λ(t)]² (1−t²)^{λ−1/2} dt
///               = π 2^{1−2λ} Γ(l+2λ) / ((l+λ) Γ(λ)² l!)
/// for l = 0, ..., l_max, built by the overflow-free ratio recurrence
/// h_l / h_{l−1} = (l+2λ−1)(l+λ−1) / (l (l+λ)).
pub fn gegenbauer_norms(l_max: u32, lambda: f64) -> Result<Vec<f64>> {
    let two_lambda = 2.0 * lambda;
    let k = (two_lambda).round();
    if !(lambda > 0.0) || (two_lambda - k).abs() > 1e-12 {
        return Err(Error::Domain(format!("Gegenbauer order λ = {lambda} must be a positive half-integer")));
    }
    let g2l = crate::sphere::gamma_half(2 * k as u32);
    let gl = crate::sphere::gamma_half(k as u32);
    let h0 = std::f64::consts::PI * (2.0f64).powf(1.0 - two_lambda) * g2l / (lambda * gl * gl);
    let mut out = Vec::with_capacity(l_max as usize + 1);
    out.push(h0);
    for l in 1..=l_max {
        let lf = l as f64;
        let ratio = (lf + two_lambda - 1.0) * (lf + lambda - 1.0) / (lf * (lf + lambda));
        let prev = out[l as usize - 1];
        out.push(prev * ratio);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    // Explicit low-degree polynomials, independent of the recurrence:
    //   C_2^λ(t) = 2λ(λ+1)t² − λ
    //   C_3^λ(t) = (2/3)λ(λ+1)[2(λ+2)t³ − 3t]
    //   C_4^λ(t) = (2/3)λ(λ+1)(λ+2)(λ+3)t⁴ − 2λ(λ+1)(λ+2)t² + λ(λ+1)/2
    fn c2(lambda: f64, t: f64) -> f64 {
        2.0 * lambda * (lambda + 1.0) * t * t - lambda
    }
    fn c3(lambda: f64, t: f64) -> f64 {
        2.0 / 3.0 * lambda * (lambda + 1.0) * (2.0 * (lambda + 2.0) * t.powi(3) - 3.0 * t)
    }
    fn c4(lambda: f64, t: f64) -> f64 {
        2.0 / 3.0 * lambda * (lambda + 1.0) * (lambda + 2.0) * (lambda + 3.0) * t.powi(4)
            - 2.0 * lambda * (lambda + 1.0) * (lambda + 2.0) * t * t
            + lambda * (lambda + 1.0) / 2.0
    }

    #[test]
    fn degree_zero_and_one() {
        assert_eq!(gegenbauer(0, 1.0, 0.37).unwrap(), 1.0);
        assert_eq!(gegenbauer(1, 1.0, 0.5).unwrap(), 1.0); // 2λt = 1
        assert_relative_eq!(gegenbauer(1, 1.5, 0.1).unwrap(), 0.3, max_relative = 1e-15);
    }

    #[test]
    fn matches_explicit_low_degrees() {
        let lambdas = [0.5, 1.0, 1.5, 2.5, 5.0];
        for &lambda in &lambdas {
            for i in 0..=40 {
                let t = -1.0 + i as f64 * 0.05;
                let scale = gegenbauer_at_one(4, lambda);
                assert_relative_eq!(gegenbauer(2, lambda, t).unwrap(), c2(lambda, t), epsilon = 1e-13 * scale);
                assert_relative_eq!(gegenbauer(3, lambda, t).unwrap(), c3(lambda, t), epsilon = 1e-13 * scale);
                assert_relative_eq!(gegenbauer(4, lambda, t).unwrap(), c4(lambda, t), epsilon = 1e-13 * scale);
            }
        }
        // C_2^1(t) = 4t² − 1 vanishes at t = 1/2.
        assert_relative_eq!(gegenbauer(2, 1.0, 0.5).unwrap(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn chebyshev_u_special_case() {
        // λ = 1 gives Chebyshev U_l: U_l(cos θ) = sin((l+1)θ)/sin θ.
        for l in 0..30u32 {
            for &theta in &[0.3_f64, 1.0, 1.9, 2.7] {
                let expected = ((l as f64 + 1.0) * theta).sin() / theta.sin();
                assert_relative_eq!(
                    gegenbauer(l, 1.0, theta.cos()).unwrap(),
                    expected,
                    epsilon = 1e-11
                );
            }
        }
    }

    #[test]
    fn value_at_one_is_binomial() {
        // binom(l+2λ−1, l) for λ = 1 is l+1; for λ = 1/2 it is 1.
        for l in 0..50u32 {
            assert_relative_eq!(gegenbauer_at_one(l, 1.0), l as f64 + 1.0, max_relative = 1e-13);
            assert_relative_eq!(gegenbauer_at_one(l, 0.5), 1.0, max_relative = 1e-13);
            assert_relative_eq!(
                gegenbauer(l, 1.0, 1.0).unwrap(),
                l as f64 + 1.0,
                max_relative = 1e-12
            );
        }
        // λ = 3/2: binom(l+2, l) = (l+1)(l+2)/2.
        for l in 0..20u32 {
            let lf = l as f64;
            assert_relative_eq!(
                gegenbauer_at_one(l, 1.5),
                (lf + 1.0) * (lf + 2.0) / 2.0,
                max_relative = 1e-13
            );
        }
    }

    #[test]
    fn sup_bound_formula_and_validity() {
        let s3 = SphereDim::new(3).unwrap();
        let s4 = SphereDim::new(4).unwrap();
        let s2 = SphereDim::new(2).unwrap();
        assert_eq!(gegenbauer_sup_bound(3, s3), 4.0); // (3+3−2)^1
        assert_eq!(gegenbauer_sup_bound(0, s2), 1.0);
        assert_eq!(gegenbauer_sup_bound(5, s4), 49.0); // (4+5−2)²
        for n in 2..=6u32 {
            let dim = SphereDim::new(n).unwrap();
            for l in 0..=50u32 {
                let bound = gegenbauer_sup_bound(l, dim);
                for i in 0..=100 {
                    let t = -1.0 + i as f64 * 0.02;
                    let v = gegenbauer(l, dim.lambda(), t).unwrap();
                    assert!(
                        v.abs() <= bound * (1.0 + 1e-12),
                        "bound violated: n={n} l={l} t={t}: |{v}| > {bound}"
                    );
                }
            }
        }
    }

    #[test]
    fn domain_errors() {
        assert!(gegenbauer(2, 1.0, 1.1).is_err());
        assert!(gegenbauer(2, 0.0, 0.5).is_err());
        assert!(gegenbauer(2, -1.0, 0.5).is_err());
        assert!(gegenbauer(2, 1.0, f64::NAN).is_err());
    }

    #[test]
    fn sweep_agrees_with_single() {
        let all = gegenbauer_all(30, 2.5, -0.37).unwrap();
        for (l, &v) in all.iter().enumerate() {
            assert_eq!(v, gegenbauer(l as u32, 2.5, -0.37).unwrap());
        }
    }

    #[test]
    fn norm_constants_low_orders() {
        // λ = 1/2 (Legendre): h_l = 2/(2l+1).
        let h = gegenbauer_norms(6, 0.5).unwrap();
        for (l, &hl) in h.iter().enumerate() {
            assert_relative_eq!(hl, 2.0 / (2.0 * l as f64 + 1.0), max_relative = 1e-13);
        }
        // λ = 1 (Chebyshev U): h_l = π/2 for every l.
        let h = gegenbauer_norms(6, 1.0).unwrap();
        for &hl in &h {
            assert_relative_eq!(hl, std::f64::consts::PI / 2.0, max_relative = 1e-13);
        }
    }

    #[test]
    fn recurrence_residual_is_tiny() {
        // Residual of the defining recurrence, recomputed from the sweep.
        for &lambda in &[0.5, 1.0, 1.5, 2.5, 5.0] {
            for i in 0..=100 {
                let t = -1.0 + i as f64 * 0.02;
                let c = gegenbauer_all(50, lambda, t).unwrap();
                for l in 2..=50usize {
                    let lf = l as f64;
                    let lhs = lf * c[l];
                    let rhs = 2.0 * (lf + lambda - 1.0) * t * c[l - 1]
                        - (lf + 2.0 * lambda - 2.0) * c[l - 2];
                    let scale = lhs.abs().max(rhs.abs()).max(1.0);
                    assert!((lhs - rhs).abs() <= 1e-12 * scale);
                }
            }
        }
    }
}
