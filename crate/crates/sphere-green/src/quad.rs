//! Adaptive quadrature: 15-point Gauss–Kronrod with interval bisection, and
//! Gauss–Gegenbauer rules (weight (1−t²)^{λ−1/2}) via Golub–Welsch.

use crate::error::{Error, Result};
use crate::sphere::gamma_half;
use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use std::collections::BinaryHeap;

/// Tolerances and budget for the adaptive integrators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
    pub singularity: SingularityFlags,
}

/// Annotations for improper integrals on (0, 1); the integral evaluators use
/// them to pick the endpoint substitution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SingularityFlags {
    /// Integrand behaves like r^γ with non-integer γ at the left endpoint.
    pub left_endpoint_power: bool,
    /// Integrand carries a ln r factor at the left endpoint.
    pub log_endpoint: bool,
}

impl QuadratureSpec {
    pub fn new(abs_tol: f64, rel_tol: f64, max_subdivisions: usize) -> Result<Self> {
        if !(abs_tol > 0.0) || !(rel_tol > 0.0) {
            return Err(Error::Parameter("quadrature tolerances must be positive".into()));
        }
        if max_subdivisions < 1 {
            return Err(Error::Parameter("max_subdivisions must be ≥ 1".into()));
        }
        Ok(QuadratureSpec {
            abs_tol,
            rel_tol,
            max_subdivisions,
            singularity: SingularityFlags::default(),
        })
    }

    /// Same absolute and relative tolerance, generous subdivision budget.
    pub fn with_tol(tol: f64) -> Result<Self> {
        QuadratureSpec::new(tol, tol, 4000)
    }
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            abs_tol: 1e-10,
            rel_tol: 1e-10,
            max_subdivisions: 4000,
            singularity: SingularityFlags::default(),
        }
    }
}

/// Value of an adaptive integration together with its error estimate.
#[derive(Debug, Clone, Copy)]
pub struct QuadResult<T> {
    pub value: T,
    pub error: f64,
    pub subdivisions: usize,
}

/// Scalar types the Gauss–Kronrod kernel can accumulate.
pub trait QuadValue: Copy {
    fn zero() -> Self;
    fn add(self, other: Self) -> Self;
    fn sub(self, other: Self) -> Self;
    fn scale(self, s: f64) -> Self;
    fn norm(self) -> f64;
}

impl QuadValue for f64 {
    fn zero() -> Self {
        0.0
    }
    fn add(self, o: Self) -> Self {
        self + o
    }
    fn sub(self, o: Self) -> Self {
        self - o
    }
    fn scale(self, s: f64) -> Self {
        self * s
    }
    fn norm(self) -> f64 {
        self.abs()
    }
}

impl QuadValue for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn add(self, o: Self) -> Self {
        self + o
    }
    fn sub(self, o: Self) -> Self {
        self - o
    }
    fn scale(self, s: f64) -> Self {
        self * s
    }
    fn norm(self) -> f64 {
        Complex64::norm(self)
    }
}

// 15-point Kronrod abscissae (positive half) and weights, with the embedded
// 7-point Gauss weights. QUADPACK QK15 constants.
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

/// QUADPACK-style rescaling of the raw |K − G| difference.
fn rescale_error(err: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut scaled = err.abs();
    if res_asc != 0.0 && scaled != 0.0 {
        let scale = (200.0 * scaled / res_asc).powf(1.5);
        scaled = if scale < 1.0 { res_asc * scale } else { res_asc };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        scaled = scaled.max(50.0 * f64::EPSILON * res_abs);
    }
    scaled
}

fn gk15<T: QuadValue, F: FnMut(f64) -> T>(f: &mut F, a: f64, b: f64) -> (T, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);

    let mut res_gauss = fc.scale(WG[3]);
    let mut res_kronrod = fc.scale(WGK[7]);
    let mut res_abs = fc.norm() * WGK[7];
    let mut fv = [T::zero(); 15];
    fv[7] = fc;

    for j in 0..7 {
        let x = half * XGK[j];
        let f1 = f(center - x);
        let f2 = f(center + x);
        fv[j] = f1;
        fv[14 - j] = f2;
        let fsum = f1.add(f2);
        res_kronrod = res_kronrod.add(fsum.scale(WGK[j]));
        res_abs += WGK[j] * (f1.norm() + f2.norm());
        if j % 2 == 1 {
            res_gauss = res_gauss.add(fsum.scale(WG[j / 2]));
        }
    }

    let mean = res_kronrod.scale(0.5);
    let mut res_asc = WGK[7] * fv[7].sub(mean).norm();
    for j in 0..7 {
        res_asc += WGK[j] * (fv[j].sub(mean).norm() + fv[14 - j].sub(mean).norm());
    }

    let raw_err = res_kronrod.sub(res_gauss).norm() * half.abs();
    let err = rescale_error(raw_err, res_abs * half.abs(), res_asc * half.abs());
    (res_kronrod.scale(half), err)
}

struct Segment<T> {
    a: f64,
    b: f64,
    value: T,
    error: f64,
}

impl<T> PartialEq for Segment<T> {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl<T> Eq for Segment<T> {}
impl<T> PartialOrd for Segment<T> {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl<T> Ord for Segment<T> {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// Adaptive Gauss–Kronrod integration of `f` over [a, b].
pub fn integrate_adaptive<T: QuadValue, F: FnMut(f64) -> T>(
    mut f: F,
    a: f64,
    b: f64,
    spec: &QuadratureSpec,
) -> Result<QuadResult<T>> {
    if !(a.is_finite() && b.is_finite() && a < b) {
        return Err(Error::Domain(format!("invalid integration interval [{a}, {b}]")));
    }
    let (v0, e0) = gk15(&mut f, a, b);
    if !v0.norm().is_finite() {
        return Err(Error::Domain("integrand returned a non-finite value".into()));
    }
    let mut heap = BinaryHeap::new();
    heap.push(Segment { a, b, value: v0, error: e0 });
    let mut total_value = v0;
    let mut total_error = e0;
    let mut subdivisions = 0usize;

    loop {
        let tol = self::tol(total_value.norm(), spec);
        if total_error <= tol {
            break;
        }
        if subdivisions >= spec.max_subdivisions {
            return Err(Error::Quadrature {
                requested: tol,
                achieved: total_error,
                subdivisions,
            });
        }
        let worst = heap.pop().expect("heap cannot be empty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // Interval at the resolution limit; accept its estimate as is.
            heap.push(worst);
            break;
        }
        let (v1, e1) = gk15(&mut f, worst.a, mid);
        let (v2, e2) = gk15(&mut f, mid, worst.b);
        if !(v1.norm().is_finite() && v2.norm().is_finite()) {
            return Err(Error::Domain("integrand returned a non-finite value".into()));
        }
        total_value = total_value.sub(worst.value).add(v1).add(v2);
        total_error = total_error - worst.error + e1 + e2;
        heap.push(Segment { a: worst.a, b: mid, value: v1, error: e1 });
        heap.push(Segment { a: mid, b: worst.b, value: v2, error: e2 });
        subdivisions += 1;
    }

    // Re-sum from segments for a numerically clean total.
    let mut value = T::zero();
    let mut error = 0.0;
    for seg in heap.iter() {
        value = value.add(seg.value);
        error += seg.error;
    }
    Ok(QuadResult { value, error, subdivisions })
}

fn tol(result_norm: f64, spec: &QuadratureSpec) -> f64 {
    spec.abs_tol.max(spec.rel_tol * result_norm)
}

/// Real-valued adaptive integral.
pub fn integrate<F: FnMut(f64) -> f64>(f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<QuadResult<f64>> {
    integrate_adaptive(f, a, b, spec)
}

/// Complex-valued adaptive integral (both parts driven by one error estimate).
pub fn integrate_complex<F: FnMut(f64) -> Complex64>(
    f: F,
    a: f64,
    b: f64,
    spec: &QuadratureSpec,
) -> Result<QuadResult<Complex64>> {
    integrate_adaptive(f, a, b, spec)
}

/// Nodes and weights of the N-point Gauss rule for the Gegenbauer weight
/// (1−t²)^{λ−1/2} on [−1, 1], by Golub–Welsch on the monic Jacobi matrix.
///
/// Exact for polynomial integrands of degree ≤ 2N−1 against the weight.
/// λ must be a half-integer (it always is here: λ = (n−1)/2).
pub fn gauss_gegenbauer(n_nodes: usize, lambda: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    if n_nodes < 1 {
        return Err(Error::Parameter("quadrature rule needs at least one node".into()));
    }
    let two_lambda = 2.0 * lambda;
    if !(lambda > 0.0) || (two_lambda - two_lambda.round()).abs() > 1e-12 {
        return Err(Error::Parameter(format!("Gegenbauer weight exponent λ = {lambda} must be a positive half-integer")));
    }
    // μ₀ = ∫ (1−t²)^{λ−1/2} dt = √π Γ(λ+1/2)/Γ(λ+1).
    let k = two_lambda.round() as u32;
    let mu0 = std::f64::consts::PI.sqrt() * gamma_half(k + 1) / gamma_half(k + 2);

    let mut m = DMatrix::<f64>::zeros(n_nodes, n_nodes);
    for j in 1..n_nodes {
        let jf = j as f64;
        // Monic recurrence p_{k+1} = t p_k − c_k p_{k−1}.
        let c = jf * (jf + two_lambda - 1.0) / (4.0 * (jf + lambda) * (jf + lambda - 1.0));
        let beta = c.sqrt();
        m[(j - 1, j)] = beta;
        m[(j, j - 1)] = beta;
    }
    let eig = SymmetricEigen::new(m);
    let mut pairs: Vec<(f64, f64)> = (0..n_nodes)
        .map(|i| {
            let node = eig.eigenvalues[i];
            let w = mu0 * eig.eigenvectors[(0, i)] * eig.eigenvectors[(0, i)];
            (node, w)
        })
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(pairs.into_iter().unzip())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn polynomial_is_exact() {
        let spec = QuadratureSpec::default();
        let r = integrate(|x| x * x * x - 2.0 * x + 1.0, 0.0, 2.0, &spec).unwrap();
        assert_relative_eq!(r.value, 4.0 - 4.0 + 2.0, epsilon = 1e-13);
    }

    #[test]
    fn oscillatory_integral() {
        let spec = QuadratureSpec::with_tol(1e-12).unwrap();
        let r = integrate(|x| (10.0 * x).cos(), 0.0, PI, &spec).unwrap();
        assert_relative_eq!(r.value, (10.0 * PI).sin() / 10.0, epsilon = 1e-12);
    }

    #[test]
    fn integrable_endpoint_singularity() {
        // ∫₀¹ 1/√x dx = 2; the open rule plus bisection handles it.
        let spec = QuadratureSpec::new(1e-9, 1e-9, 10_000).unwrap();
        let r = integrate(|x| 1.0 / x.sqrt(), 0.0, 1.0, &spec).unwrap();
        assert_relative_eq!(r.value, 2.0, epsilon = 1e-7);
    }

    #[test]
    fn budget_exhaustion_is_an_error() {
        let spec = QuadratureSpec::new(1e-14, 1e-14, 3).unwrap();
        let res = integrate(|x: f64| (1.0 / (1e-6 + x * x)).sin(), 0.0, 1.0, &spec);
        assert!(matches!(res, Err(Error::Quadrature { .. })));
    }

    #[test]
    fn complex_conjugate_pair_is_real() {
        let spec = QuadratureSpec::with_tol(1e-12).unwrap();
        let theta: f64 = 1.1;
        let r = integrate_complex(
            |u| {
                let z1 = Complex64::new(1.0 - u * theta.cos(), -u * theta.sin());
                let z2 = z1.conj();
                z1.powf(-2.0) * z2.powf(-2.0)
            },
            0.0,
            1.0,
            &spec,
        )
        .unwrap();
        let direct = integrate(
            |u| (1.0 - 2.0 * u * theta.cos() + u * u).powf(-2.0),
            0.0,
            1.0,
            &spec,
        )
        .unwrap();
        assert!(r.value.im.abs() < 1e-12);
        assert_relative_eq!(r.value.re, direct.value, epsilon = 1e-11);
    }

    #[test]
    fn gauss_gegenbauer_legendre_case() {
        // λ = 1/2 reduces to Gauss–Legendre; check the classical 5-point rule.
        let (x, w) = gauss_gegenbauer(5, 0.5).unwrap();
        let x_should = [
            -0.906_179_845_938_664,
            -0.538_469_310_105_683_1,
            0.0,
            0.538_469_310_105_683_1,
            0.906_179_845_938_664,
        ];
        let w_should = [
            0.236_926_885_056_189_08,
            0.478_628_670_499_366_47,
            0.568_888_888_888_888_9,
            0.478_628_670_499_366_47,
            0.236_926_885_056_189_08,
        ];
        for i in 0..5 {
            assert_relative_eq!(x[i], x_should[i], epsilon = 1e-13);
            assert_relative_eq!(w[i], w_should[i], epsilon = 1e-13);
        }
    }

    #[test]
    fn gauss_gegenbauer_moments() {
        // ∫ t^k (1−t²)^{λ−1/2} dt for λ = 1 (weight √(1−t²)):
        // k=0: π/2, k=2: π/8, k=4: π/16.
        let (x, w) = gauss_gegenbauer(8, 1.0).unwrap();
        let moment = |p: i32| -> f64 { x.iter().zip(&w).map(|(&xi, &wi)| wi * xi.powi(p)).sum() };
        assert_relative_eq!(moment(0), PI / 2.0, epsilon = 1e-13);
        assert_relative_eq!(moment(1), 0.0, epsilon = 1e-14);
        assert_relative_eq!(moment(2), PI / 8.0, epsilon = 1e-13);
        assert_relative_eq!(moment(4), PI / 16.0, epsilon = 1e-13);
        // λ = 3/2: ∫ (1−t²) dt = 4/3, ∫ t²(1−t²) dt = 4/15.
        let (x, w) = gauss_gegenbauer(6, 1.5).unwrap();
        let m0: f64 = w.iter().sum();
        let m2: f64 = x.iter().zip(&w).map(|(&xi, &wi)| wi * xi * xi).sum();
        assert_relative_eq!(m0, 4.0 / 3.0, epsilon = 1e-13);
        assert_relative_eq!(m2, 4.0 / 15.0, epsilon = 1e-13);
    }

    #[test]
    fn gauss_gegenbauer_rejects_general_lambda() {
        assert!(gauss_gegenbauer(4, 0.7).is_err());
        assert!(gauss_gegenbauer(4, -0.5).is_err());
    }
}
