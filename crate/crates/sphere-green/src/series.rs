//! Direct Gegenbauer-series evaluation of the Green function
//!
//! ```text
//! G_a(cos ϑ) = Σ_{l≥0, l≠skip} 1/(l²(l+2λ)²+a) · (λ+l)/λ · C_l^λ(cos ϑ),
//! ```
//!
//! with rigorous truncation control from the uniform Gegenbauer bound, and
//! Abel/Richardson summation for dimensions where pointwise summation
//! diverges (n ≥ 5).

use crate::error::{Error, Result};
use crate::gegenbauer::gegenbauer_sup_bound;
use crate::params::GreenParameter;

/// Truncation policy for [`green_series_eval`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesOptions {
    /// Hard cap on the summation degree.
    pub l_max: u32,
    /// Stop early once the uniform-bound tail estimate drops below this.
    pub tail_tol: f64,
    /// Abel summation: evaluate the r-damped series on r_k = 1−2^{−k} up to
    /// this radius and extrapolate r → 1 by Richardson. Required for n ≥ 5.
    pub abel_r: Option<f64>,
    /// Degree to omit (the resonant degree when a = −L²(L+2λ)²).
    pub skip_l: Option<u32>,
}

impl SeriesOptions {
    pub fn validate(&self) -> Result<()> {
        if self.l_max < 1 {
            return Err(Error::Parameter("l_max must be ≥ 1".into()));
        }
        if !(self.tail_tol > 0.0) {
            return Err(Error::Parameter("tail_tol must be positive".into()));
        }
        if let Some(r) = self.abel_r {
            if !(r > 0.0 && r < 1.0) {
                return Err(Error::Parameter(format!("abel_r = {r} must lie in (0, 1)")));
            }
        }
        Ok(())
    }
}

impl Default for SeriesOptions {
    fn default() -> Self {
        SeriesOptions {
            l_max: 200_000,
            tail_tol: 1e-10,
            abel_r: None,
            skip_l: None,
        }
    }
}

/// A series value together with the achieved tail bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesValue {
    pub value: f64,
    /// Rigorous bound on the truncated tail (∞ when no bound converges),
    /// or the extrapolation-difference estimate in Abel mode.
    pub tail_bound: f64,
    pub terms_used: u32,
}

/// Upper bound on |Σ_{l>l0} term_l| using |C_l^λ| ≤ (n+l−2)^{n−2} (≤ 1 for
/// n = 2). Monotone nonincreasing in l0; +∞ where the bounding series
/// diverges (n ≥ 4) or l0 is too small for the closed form.
pub fn series_tail_bound(p: &GreenParameter, l0: u32) -> f64 {
    let n = p.dim().n();
    if n >= 4 {
        return f64::INFINITY;
    }
    let lambda = p.lambda();
    let l0f = l0 as f64;
    let l_param = p.l_param().unwrap_or(0.0);
    if l0 < 1 || l0f <= l_param {
        return f64::INFINITY;
    }
    // Denominator floor: l²(l+2λ)²+a ≥ l⁴(1−q), q = max(0,−a)/l0⁴.
    let q = (-p.a()).max(0.0) / l0f.powi(4);
    if q > 0.5 {
        return f64::INFINITY;
    }
    let growth = if n == 2 {
        1.0
    } else {
        (1.0 + (n as f64 - 2.0) / l0f).powi(n as i32 - 2)
    };
    let c = (1.0 / lambda) * (1.0 + lambda / l0f) * growth / (1.0 - q);
    // Σ_{l>l0} c·l^{n−5} ≤ c ∫_{l0}^∞ x^{n−5} dx = c·l0^{n−4}/(4−n).
    c * l0f.powi(n as i32 - 4) / (4.0 - n as f64)
}

/// Evaluate the Green-function series at polar angle ϑ ∈ [0, π].
///
/// ϑ = 0 is admitted for n ≤ 3 where the series converges at the pole; the
/// (n = 3, ϑ = 0) case adds the exact telescoping tail
/// Σ_{l>l0} 1/(l(l+2)) = (1/(l0+1) + 1/(l0+2))/2 so that only an O(l0⁻³)
/// remainder is left.
pub fn green_series_eval(p: &GreenParameter, theta: f64, opts: &SeriesOptions) -> Result<SeriesValue> {
    opts.validate()?;
    if !(theta >= 0.0 && theta <= std::f64::consts::PI) {
        return Err(Error::Domain(format!("ϑ = {theta} outside [0, π]")));
    }
    check_resonance(p, opts)?;
    let n = p.dim().n();
    if theta == 0.0 && n > 3 && opts.abel_r.is_none() {
        return Err(Error::DivergentSeries { n });
    }
    if let Some(r) = opts.abel_r {
        return abel_eval(p, theta.cos(), r, opts);
    }
    if n >= 5 {
        return Err(Error::DivergentSeries { n });
    }
    green_series_eval_t(p, theta.cos(), opts)
}

/// Same series as a function of t = cos ϑ directly. Evaluations at equal t
/// are bitwise identical regardless of which ϑ produced it.
pub fn green_series_eval_t(p: &GreenParameter, t: f64, opts: &SeriesOptions) -> Result<SeriesValue> {
    opts.validate()?;
    if !(t.abs() <= 1.0) {
        return Err(Error::Domain(format!("t = {t} outside [-1, 1]")));
    }
    check_resonance(p, opts)?;
    let n = p.dim().n();
    if n >= 5 {
        return Err(Error::DivergentSeries { n });
    }
    if t == 1.0 && n > 3 {
        return Err(Error::DivergentSeries { n });
    }

    let lambda = p.lambda();
    let mut sum = 0.0;
    let mut comp = 0.0; // Neumaier compensation
    let mut cm2 = 0.0;
    let mut cm1 = 0.0;
    let mut tail = f64::INFINITY;
    let mut l = 0u32;
    let l_param = p.l_param().unwrap_or(-1.0);
    while l <= opts.l_max {
        let c = match l {
            0 => 1.0,
            1 => 2.0 * lambda * t,
            _ => {
                let lf = l as f64;
                (2.0 * (lf + lambda - 1.0) * t * cm1 - (lf + 2.0 * lambda - 2.0) * cm2) / lf
            }
        };
        if Some(l) != opts.skip_l {
            let lf = l as f64;
            let term = (lambda + lf) / lambda * c / p.denominator(lf);
            let s = sum + term;
            comp += if sum.abs() >= term.abs() { (sum - s) + term } else { (term - s) + sum };
            sum = s;
        }
        cm2 = cm1;
        cm1 = c;
        if l % 16 == 0 && l as f64 > l_param {
            tail = series_tail_bound(p, l);
            if tail < opts.tail_tol {
                break;
            }
        }
        l += 1;
    }
    let l0 = l.min(opts.l_max);
    let mut value = sum + comp;
    let mut tail_bound = tail.min(series_tail_bound(p, l0));

    // Exact telescoping tail at the pole for n = 3.
    if t == 1.0 && n == 3 && l0 >= 2 {
        let lf = l0 as f64;
        value += 0.5 * (1.0 / (lf + 1.0) + 1.0 / (lf + 2.0));
        tail_bound = (1.0 + 2.0 * p.a().abs() / (lf * lf)) / (3.0 * lf.powi(3)) * 1.1;
    }
    Ok(SeriesValue { value, tail_bound, terms_used: l0 })
}

fn check_resonance(p: &GreenParameter, opts: &SeriesOptions) -> Result<()> {
    if let Some(deg) = p.resonant_degree() {
        if opts.skip_l != Some(deg) {
            return Err(Error::Resonance(format!(
                "a = {} matches the degree-{deg} eigenvalue; set skip_l = {deg}",
                p.a()
            )));
        }
    }
    Ok(())
}

/// Damped series Σ term_l r^l with a geometric tail certificate.
fn damped_sum(p: &GreenParameter, t: f64, r: f64, opts: &SeriesOptions, tol: f64) -> Result<f64> {
    let lambda = p.lambda();
    let dim = p.dim();
    let n = dim.n();
    let l_param = p.l_param().unwrap_or(-1.0);
    let mut sum = 0.0;
    let mut cm2 = 0.0;
    let mut cm1 = 0.0;
    let mut rl = 1.0;
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
        if Some(l) != opts.skip_l {
            let lf = l as f64;
            sum += rl * (lambda + lf) / lambda * c / p.denominator(lf);
        }
        cm2 = cm1;
        cm1 = c;
        rl *= r;
        l += 1;
        if l % 16 == 0 && l as f64 > l_param.max(4.0) {
            let lf = l as f64;
            // First unadded term bound and the geometric ratio certificate.
            let rho = r
                * (1.0 + 1.0 / (lambda + lf))
                * (1.0 + 1.0 / (n as f64 + lf - 2.0)).powi(n as i32 - 2);
            if rho < 1.0 {
                let b = rl * (lambda + lf) / lambda * gegenbauer_sup_bound(l, dim)
                    / p.denominator(lf).abs();
                if b / (1.0 - rho) < tol {
                    return Ok(sum);
                }
            }
        }
        if l >= opts.l_max.max(4_000_000) {
            return Err(Error::Quadrature {
                requested: tol,
                achieved: f64::INFINITY,
                subdivisions: l as usize,
            });
        }
    }
}

/// Abel summation: Richardson (Neville) extrapolation of the damped sums on
/// r_k = 1 − 2^{−k} toward r = 1. Valid pointwise away from the pole, where
/// the Abel means extend analytically in 1−r.
fn abel_eval(p: &GreenParameter, t: f64, abel_r: f64, opts: &SeriesOptions) -> Result<SeriesValue> {
    let k_max = (-(1.0 - abel_r).log2()).ceil().clamp(4.0, 20.0) as i32;
    let tol = (opts.tail_tol / 100.0).max(1e-15);
    let mut hs = Vec::new();
    let mut vals = Vec::new();
    for k in 1..=k_max {
        let h = (2.0f64).powi(-k);
        hs.push(h);
        vals.push(damped_sum(p, t, 1.0 - h, opts, tol)?);
    }
    // Neville tableau evaluated at h = 0.
    let m = vals.len();
    let mut tab = vals.clone();
    let mut prev_diag = tab[0];
    let mut diag = tab[m - 1];
    for j in 1..m {
        for i in (j..m).rev() {
            let num = hs[i - j] * tab[i] - hs[i] * tab[i - 1];
            tab[i] = num / (hs[i - j] - hs[i]);
        }
        prev_diag = diag;
        diag = tab[m - 1];
    }
    Ok(SeriesValue {
        value: diag,
        tail_bound: (diag - prev_diag).abs(),
        terms_used: 0,
    })
}
