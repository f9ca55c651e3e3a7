//! The parameter pair (a, L) of the shifted biharmonic operator (Δ²+a):
//! conversions a ↔ L, resonance classification, partial-fraction data, and
//! exact enumeration of the parameter sets with rational or integer
//! exponents λ ± √(λ²−2Lλ−L²).

use crate::error::{Error, Result};
use crate::sphere::SphereDim;
use num_integer::Integer;
use num_rational::Ratio;

/// Tolerance for classifying L as a nonnegative integer (resonance).
const RESONANCE_TOL: f64 = 1e-9;

/// Zero-order shift `a` together with the degree parameter L ≥ 0 solving
/// a = −L²(L+2λ)². For a > 0 no real L exists and the integral and
/// closed-form routes are unavailable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GreenParameter {
    dim: SphereDim,
    a: f64,
    l_param: Option<f64>,
    resonant: Option<u32>,
}

impl GreenParameter {
    /// Build from the shift a (any real).
    pub fn from_a(dim: SphereDim, a: f64) -> Result<Self> {
        if !a.is_finite() {
            return Err(Error::Parameter(format!("a = {a} must be finite")));
        }
        let l_param = if a < 0.0 {
            Some(l_from_a(a, dim)?)
        } else if a == 0.0 {
            Some(0.0)
        } else {
            None
        };
        Ok(Self::assemble(dim, a, l_param))
    }

    /// Build from the degree parameter L ≥ 0; sets a = −L²(L+2λ)².
    pub fn from_l(dim: SphereDim, l: f64) -> Result<Self> {
        if !(l >= 0.0 && l.is_finite()) {
            return Err(Error::Parameter(format!("L = {l} must be finite and ≥ 0")));
        }
        let a = a_from_l(l, dim);
        Ok(Self::assemble(dim, a, Some(l)))
    }

    fn assemble(dim: SphereDim, a: f64, l_param: Option<f64>) -> Self {
        let resonant = l_param.and_then(|l| {
            let rounded = l.round();
            if (l - rounded).abs() <= RESONANCE_TOL * l.abs().max(1.0) && rounded >= 0.0 {
                Some(rounded as u32)
            } else {
                None
            }
        });
        GreenParameter { dim, a, l_param, resonant }
    }

    pub fn dim(&self) -> SphereDim {
        self.dim
    }

    pub fn lambda(&self) -> f64 {
        self.dim.lambda()
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    /// L with a = −L²(L+2λ)², when a ≤ 0.
    pub fn l_param(&self) -> Option<f64> {
        self.l_param
    }

    /// True iff L is a nonnegative integer: a is an eigenvalue of −Δ² and
    /// the operator has a kernel in degree L.
    pub fn is_resonant(&self) -> bool {
        self.resonant.is_some()
    }

    pub fn resonant_degree(&self) -> Option<u32> {
        self.resonant
    }

    /// λ² − 2Lλ − L².
    pub fn discriminant(&self) -> Option<f64> {
        let l = self.l_param?;
        let lambda = self.lambda();
        Some(lambda * lambda - 2.0 * l * lambda - l * l)
    }

    /// The exponents λ ± √(λ²−2Lλ−L²), present when the discriminant is ≥ 0.
    pub fn exponents(&self) -> Option<(f64, f64)> {
        let d = self.discriminant()?;
        if d < 0.0 {
            return None;
        }
        let lambda = self.lambda();
        Some((lambda + d.sqrt(), lambda - d.sqrt()))
    }

    /// The spectral denominator l²(l+2λ)² + a at (possibly non-integer) l.
    pub fn denominator(&self, l: f64) -> f64 {
        let q = l * (l + 2.0 * self.lambda());
        q * q + self.a
    }
}

/// L = √(λ²+√(−a)) − λ for a < 0, in the cancellation-free form
/// √(−a) / (λ + √(λ²+√(−a))).
pub fn l_from_a(a: f64, dim: SphereDim) -> Result<f64> {
    if !(a < 0.0) {
        return Err(Error::Domain(format!("l_from_a requires a < 0, got {a}")));
    }
    let lambda = dim.lambda();
    let s = (-a).sqrt();
    Ok(s / (lambda + (lambda * lambda + s).sqrt()))
}

/// a = −L²(L+2λ)².
pub fn a_from_l(l: f64, dim: SphereDim) -> f64 {
    let q = l * (l + 2.0 * dim.lambda());
    -(q * q)
}

/// The coefficients of the four-term partial-fraction decomposition of
/// 1/(l²(l+2λ)²+a):
///
/// ```text
/// A = 1 / (4L(L+λ)(L+2λ)),   B = 1 / (4L(L+2λ)√(λ²−2Lλ−L²)).
/// ```
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PartialFractionCoeffs {
    pub a_coeff: f64,
    pub b_coeff: f64,
}

pub fn partial_fraction_coeffs(p: &GreenParameter) -> Result<PartialFractionCoeffs> {
    let l = p
        .l_param()
        .ok_or_else(|| Error::Parameter(format!("no real L for a = {}", p.a())))?;
    if l <= 0.0 {
        return Err(Error::Parameter("partial fractions degenerate at L = 0".into()));
    }
    let d = p.discriminant().expect("L present");
    if d <= 0.0 {
        return Err(Error::Parameter(format!(
            "discriminant λ²−2Lλ−L² = {d} must be positive (need 0 < L < (√2−1)λ)"
        )));
    }
    let lambda = p.lambda();
    let a_coeff = 1.0 / (4.0 * l * (l + lambda) * (l + 2.0 * lambda));
    let b_coeff = 1.0 / (4.0 * l * (l + 2.0 * lambda) * d.sqrt());
    Ok(PartialFractionCoeffs { a_coeff, b_coeff })
}

/// |LHS − RHS| of the decomposition at spectral index l:
///
/// ```text
/// 1/(l²(l+2λ)²+a) = A/(l−L) − A/(l+L+2λ) + B/(l+λ+√d) − B/(l+λ−√d).
/// ```
pub fn decomposition_residual(
    p: &GreenParameter,
    l: f64,
    coeffs: &PartialFractionCoeffs,
) -> Result<f64> {
    let lp = p
        .l_param()
        .ok_or_else(|| Error::Parameter(format!("no real L for a = {}", p.a())))?;
    let lambda = p.lambda();
    let d = p.discriminant().expect("L present");
    if d <= 0.0 {
        return Err(Error::Parameter("positive discriminant required".into()));
    }
    let sqrt_d = d.sqrt();
    let poles = [lp, -(lp + 2.0 * lambda), -(lambda + sqrt_d), -(lambda - sqrt_d)];
    if poles.iter().any(|&pole| (l - pole).abs() < 1e-9 * l.abs().max(1.0)) {
        return Err(Error::Domain(format!("l = {l} hits a pole of the decomposition")));
    }
    let lhs = 1.0 / p.denominator(l);
    let rhs = coeffs.a_coeff / (l - lp) - coeffs.a_coeff / (l + lp + 2.0 * lambda)
        + coeffs.b_coeff / (l + lambda + sqrt_d)
        - coeffs.b_coeff / (l + lambda - sqrt_d);
    Ok((lhs - rhs).abs())
}

/// A parameter pair with exactly rational data: λ, L and the two exponents
/// λ ± √(λ²−2Lλ−L²), all as reduced fractions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExponentPair {
    pub n: u32,
    pub lambda: Ratio<i64>,
    pub l_value: Ratio<i64>,
    pub e_plus: Ratio<i64>,
    pub e_minus: Ratio<i64>,
}

impl ExponentPair {
    pub fn is_integer(&self) -> bool {
        self.e_plus.is_integer() && self.e_minus.is_integer()
    }

    /// a = −L²(L+2λ)² as an exact rational.
    pub fn a_value(&self) -> Ratio<i64> {
        let q = self.l_value * (self.l_value + Ratio::from_integer(2) * self.lambda);
        -(q * q)
    }
}

/// The family L = 2(α−1)/(α²+1)·λ, α ∈ ℚ ∩ [1, ∞), which makes
/// √(λ²−2Lλ−L²) rational. All arithmetic is exact.
pub fn rational_l_family(lambda: Ratio<i64>, alpha: Ratio<i64>) -> Result<ExponentPair> {
    if lambda <= Ratio::from_integer(0) || !(*lambda.denom() == 1 || *lambda.denom() == 2) {
        return Err(Error::Parameter(format!("λ = {lambda} must be a positive half-integer")));
    }
    if alpha < Ratio::from_integer(1) {
        return Err(Error::Parameter(format!("α = {alpha} must be ≥ 1")));
    }
    let n_i64 = (lambda * Ratio::from_integer(2) + Ratio::from_integer(1)).to_integer();
    if n_i64 < 2 || n_i64 > u32::MAX as i64 {
        return Err(Error::Parameter(format!("λ = {lambda} out of range")));
    }

    // p/q = 2b(a−b)/(a²+b²) in lowest terms, with α = a/b reduced.
    let (av, bv) = (*alpha.numer(), *alpha.denom());
    let num = 2i64
        .checked_mul(bv)
        .and_then(|x| x.checked_mul(av - bv))
        .ok_or_else(|| Error::Parameter("α too large".into()))?;
    let den = av
        .checked_mul(av)
        .and_then(|x| bv.checked_mul(bv).and_then(|y| x.checked_add(y)))
        .ok_or_else(|| Error::Parameter("α too large".into()))?;
    let ratio = Ratio::new(num, den); // p/q, reduced
    let (p, q) = (*ratio.numer(), *ratio.denom());
    debug_assert!(p >= 0 && p % 2 == 0 && q % 2 == 1);

    let s = 2 * q * q - (p + q) * (p + q);
    let k = exact_sqrt(s).ok_or_else(|| {
        Error::Parameter(format!("2q²−(p+q)² = {s} is not a perfect square for p/q = {p}/{q}"))
    })?;

    let l_value = ratio * lambda;
    let sqrt_disc = Ratio::new(k, q) * lambda;
    Ok(ExponentPair {
        n: n_i64 as u32,
        lambda,
        l_value,
        e_plus: lambda + sqrt_disc,
        e_minus: lambda - sqrt_disc,
    })
}

fn exact_sqrt(x: i64) -> Option<i64> {
    if x < 0 {
        return None;
    }
    let k = (x as u64).isqrt() as i64;
    for c in [k - 1, k, k + 1] {
        if c >= 0 && c * c == x {
            return Some(c);
        }
    }
    None
}

/// Exact integer sieve over reduced fractions L = (p/q)·λ with p even,
/// q odd, q | (n−1), 0 < p ≤ (√2−1)q and 2q²−(p+q)² a perfect square:
/// exactly the pairs (λ, L), L > 0, whose exponents λ ± √(λ²−2Lλ−L²) are
/// integers, for 2 ≤ n ≤ n_max. Sorted by (n, L).
pub fn enumerate_integer_exponent_pairs(n_max: u32) -> Vec<ExponentPair> {
    let mut out = Vec::new();
    for n in 2..=n_max {
        let m = (n - 1) as i64; // 2λ
        for q in (1..=m).filter(|q| q % 2 == 1 && m % q == 0) {
            let mut p = 2i64;
            while (p + q) * (p + q) < 2 * q * q {
                if p.gcd(&q) == 1 {
                    if let Some(k) = exact_sqrt(2 * q * q - (p + q) * (p + q)) {
                        let lambda = Ratio::new(m, 2);
                        let l_value = Ratio::new(p * m, 2 * q);
                        let sqrt_disc = Ratio::new(k, q) * lambda;
                        let pair = ExponentPair {
                            n,
                            lambda,
                            l_value,
                            e_plus: lambda + sqrt_disc,
                            e_minus: lambda - sqrt_disc,
                        };
                        debug_assert!(pair.is_integer());
                        out.push(pair);
                    }
                }
                p += 2;
            }
        }
    }
    out.sort_by(|x, y| (x.n, x.l_value).cmp(&(y.n, y.l_value)));
    out
}
