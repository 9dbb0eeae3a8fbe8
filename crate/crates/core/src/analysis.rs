//! Floating-point layer: the integrals `I_beta(k)`, the correlation
//! `omega_f(k; xi)` and the asymptotic laws it satisfies.
//!
//! All integrals over `alpha in [0, 1]` with the weight `1/sqrt(alpha(2-alpha))`
//! are evaluated after `alpha = 1 - cos(theta)`, which turns the weight into
//! `d theta` on `[0, pi/2]`. `1 - cos(theta)` is computed as `2 sin^2(theta/2)`.

use std::f64::consts::{FRAC_PI_2, PI};

use num_traits::{One, Zero};

use statrs::function::gamma::ln_gamma;
use thiserror::Error;

use crate::exactnum::{binomial_int, int, ln_integer, Integer, Rational};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalysisError {
    #[error("beta = {0} puts a pole of the integrand in [0, 1]")]
    PoleInRange(f64),
    #[error("quadrature did not converge: {panels} panels, last change {change:e}")]
    NoConvergence { panels: usize, change: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("vanishing denominator in the terminating sum")]
    SingularParameter,
}

pub type Result<T> = std::result::Result<T, AnalysisError>;

/// Composite Gauss-Legendre with panel doubling.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub panels: usize,
    pub nodes_per_panel: usize,
    pub max_panels: usize,
    pub tol: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec { panels: 8, nodes_per_panel: 16, max_panels: 1 << 14, tol: 1e-12 }
    }
}

/// Above this `k` the panel edges are graded quadratically toward `theta = 0`.
pub const GRADING_THRESHOLD: u64 = 500;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    /// `|result(panels) - result(panels / 2)|`
    pub err_estimate: f64,
    pub panels: usize,
}

/// Nodes and weights of the `m`-point Gauss-Legendre rule on `[-1, 1]`.
pub fn gauss_legendre(m: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; m];
    let mut weights = vec![0.0; m];
    for i in 0..m.div_ceil(2) {
        let mut z = (PI * (i as f64 + 0.75) / (m as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for j in 2..=m {
                let p2 = ((2 * j - 1) as f64 * z * p1 - (j - 1) as f64 * p0) / j as f64;
                p0 = p1;
                p1 = p2;
            }
            let p = if m == 0 { 1.0 } else { p1 };
            let pm1 = if m == 1 { 1.0 } else { p0 };
            dp = m as f64 * (z * p - pm1) / (z * z - 1.0);
            let dz = p / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        nodes[i] = -z;
        nodes[m - 1 - i] = z;
        let w = 2.0 / ((1.0 - z * z) * dp * dp);
        weights[i] = w;
        weights[m - 1 - i] = w;
    }
    (nodes, weights)
}

/// `int_0^{pi/2} f`, doubling panels until the relative change is below `q.tol`.
pub fn integrate_theta<F>(f: F, q: &QuadratureSpec, graded: bool) -> Result<Quadrature>
where
    F: Fn(f64) -> f64,
{
    if q.panels == 0 || q.nodes_per_panel == 0 {
        return Err(AnalysisError::InvalidParameter("empty quadrature rule".into()));
    }
    let (nodes, weights) = gauss_legendre(q.nodes_per_panel);
    let rule = |panels: usize| -> f64 {
        let edge = |j: usize| {
            let t = j as f64 / panels as f64;
            FRAC_PI_2 * if graded { t * t } else { t }
        };
        let mut total = 0.0;
        for j in 0..panels {
            let (a, b) = (edge(j), edge(j + 1));
            let (mid, half) = (0.5 * (a + b), 0.5 * (b - a));
            let s: f64 = nodes.iter().zip(&weights).map(|(z, w)| w * f(mid + half * z)).sum();
            total += half * s;
        }
        total
    };
    let mut panels = q.panels;
    let mut prev = rule(panels);
    loop {
        panels *= 2;
        if panels > q.max_panels {
            return Err(AnalysisError::NoConvergence { panels: panels / 2, change: f64::NAN });
        }
        let cur = rule(panels);
        let change = (cur - prev).abs();
        if change <= q.tol * cur.abs() || change == 0.0 {
            return Ok(Quadrature { value: cur, err_estimate: change, panels });
        }
        if panels * 2 > q.max_panels {
            return Err(AnalysisError::NoConvergence { panels, change });
        }
        prev = cur;
    }
}

fn one_minus_cos(theta: f64) -> f64 {
    let s = (0.5 * theta).sin();
    2.0 * s * s
}

/// `I_beta(k) = int_0^1 (1-a)^{4k+2} / ((1 + a/beta) sqrt(a(2-a))) da`.
pub fn integral_i(beta: f64, k: u64, q: &QuadratureSpec) -> Result<Quadrature> {
    if !beta.is_finite() || (-1.0..=0.0).contains(&beta) {
        return Err(AnalysisError::PoleInRange(beta));
    }
    let power = 4 * k as i32 + 2;
    integrate_theta(
        |t| t.cos().powi(power) / (1.0 + one_minus_cos(t) / beta),
        q,
        k >= GRADING_THRESHOLD,
    )
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationValue {
    pub k: u64,
    pub xi: f64,
    /// `exp(log_value)`; may underflow to 0 or overflow to infinity.
    pub value: f64,
    pub log_value: f64,
    /// Absolute error estimate on `value`, propagated from the quadrature.
    pub err_estimate: f64,
    /// `err_estimate / value`, kept separately so it survives underflow.
    pub rel_err_estimate: f64,
}

/// `ln C(4k+1, 2k)`.
pub fn ln_central_binomial(k: u64) -> f64 {
    if k <= 10_000 {
        ln_integer(&binomial_int(4 * k as i64 + 1, 2 * k as i64))
    } else {
        let k = k as f64;
        ln_gamma(4.0 * k + 2.0) - ln_gamma(2.0 * k + 1.0) - ln_gamma(2.0 * k + 2.0)
    }
}

/// `ln[(1/pi) C(4k+1,2k) (1+xi)^{-(4k+2)} (xi(2+xi))^{-1/2}]`, the common
/// prefactor of both forms of the correlation.
///
/// The `xi^{-1/2}` is what the limit of the exact finite ratios at `x = xi n`
/// requires (see the finite-convergence tests); it is invisible at `xi = 1`.
fn ln_prefactor(k: u64, xi: f64) -> f64 {
    -PI.ln() + ln_central_binomial(k) - (4 * k + 2) as f64 * xi.ln_1p() - 0.5 * (xi * (2.0 + xi)).ln()
}

fn check_xi(xi: f64) -> Result<()> {
    if xi.is_finite() && xi > 0.0 {
        Ok(())
    } else {
        Err(AnalysisError::InvalidParameter(format!("xi = {xi} must be positive")))
    }
}

fn correlation(k: u64, xi: f64, ln_pre: f64, integral: Quadrature) -> CorrelationValue {
    let log_value = ln_pre + integral.value.ln();
    let value = log_value.exp();
    let rel = integral.err_estimate / integral.value.abs();
    CorrelationValue { k, xi, value, log_value, err_estimate: value * rel, rel_err_estimate: rel }
}

/// `omega_f(k; xi)` from the single-integral form of the correlation.
pub fn omega_f(k: u64, xi: f64, q: &QuadratureSpec) -> Result<CorrelationValue> {
    check_xi(xi)?;
    let power = 4 * k as i32 + 3;
    let integral = integrate_theta(
        |t| {
            let a = one_minus_cos(t);
            2.0 * t.cos().powi(power) / ((1.0 + a / xi) * (1.0 - a / (2.0 + xi)))
        },
        q,
        k >= GRADING_THRESHOLD,
    )?;
    Ok(correlation(k, xi, ln_prefactor(k, xi), integral))
}

/// `omega_f(k; xi)` from `(xi+2) I_xi(k) - xi I_{-(2+xi)}(k)`.
pub fn omega_f_two_integral(k: u64, xi: f64, q: &QuadratureSpec) -> Result<CorrelationValue> {
    check_xi(xi)?;
    let a = integral_i(xi, k, q)?;
    let b = integral_i(-(2.0 + xi), k, q)?;
    let combined = Quadrature {
        value: (xi + 2.0) * a.value - xi * b.value,
        err_estimate: (xi + 2.0) * a.err_estimate + xi * b.err_estimate,
        panels: a.panels.max(b.panels),
    };
    Ok(correlation(k, xi, ln_prefactor(k, xi), combined))
}

/// `(1 / (pi (1+xi)^2 sqrt(xi(2+xi)))) (1/k) (2/(1+xi))^{4k}`.
pub fn omega_asymptotic(k: u64, xi: f64) -> f64 {
    ln_omega_asymptotic(k, xi).exp()
}

pub fn ln_omega_asymptotic(k: u64, xi: f64) -> f64 {
    let k = k as f64;
    -(PI * (1.0 + xi).powi(2) * (xi * (2.0 + xi)).sqrt()).ln() - k.ln() + 4.0 * k * (2.0 / (1.0 + xi)).ln()
}

/// `omega_f(k; 1) * 4 pi sqrt(3) k`, which tends to 1.
pub fn theorem1_check(k: u64, q: &QuadratureSpec) -> Result<f64> {
    let w = omega_f(k, 1.0, q)?;
    Ok((w.log_value + (4.0 * PI * 3f64.sqrt() * k as f64).ln()).exp())
}

/// `k (omega_f(k+1; 1) / omega_f(k; 1) - 1)`, which tends to -1.
pub fn theorem2_check(k: u64, q: &QuadratureSpec) -> Result<f64> {
    let a = omega_f(k, 1.0, q)?;
    let b = omega_f(k + 1, 1.0, q)?;
    Ok(k as f64 * (b.log_value - a.log_value).exp_m1())
}

/// `D_k = 3 I_1(k) - I_{-3}(k)`.
pub fn d_sequence(k: u64, q: &QuadratureSpec) -> Result<f64> {
    Ok(3.0 * integral_i(1.0, k, q)?.value - integral_i(-3.0, k, q)?.value)
}

/// `sqrt(2/pi) I_beta(k)`, the limit of `f5_4_partial(n, k, beta) / sqrt(n)`.
pub fn lemma12_limit(beta: f64, k: u64, q: &QuadratureSpec) -> Result<f64> {
    Ok((2.0 / PI).sqrt() * integral_i(beta, k, q)?.value)
}

/// `sum_{l=0}^{n-k-1} F(n, l)` with
/// `F(n,l) = (-2n)_l (1/2)_l (-n+k+1)_l^2 (b)_l / ((-2n+1/2)_l (-n-k)_l^2 (b+1)_l l!)`
/// and `b = beta_n n`, exactly.
pub fn f5_4_partial(n: u64, k: u64, beta_n: &Rational) -> Result<Rational> {
    if n <= k {
        return Err(AnalysisError::InvalidParameter(format!("need n > k, got n = {n}, k = {k}")));
    }
    let b = beta_n * int(n as i64);
    let (ni, ki) = (n as i64, k as i64);
    let terms = ni - ki;
    if (0..terms).any(|l| (&b + int(l)).is_zero()) {
        return Err(AnalysisError::SingularParameter);
    }
    let (pb, qb) = (b.numer(), b.denom());
    // Nested evaluation 1 + r_0 (1 + r_1 (1 + ...)) with r_l = F(n,l+1)/F(n,l),
    // carried as an unreduced numerator/denominator pair.
    let mut num = Integer::one();
    let mut den = Integer::one();
    for l in (0..terms - 1).rev() {
        let m = ni - ki - l - 1;
        let p = ni + ki - l;
        let r_num = Integer::from((2 * ni - l) * m * m * (2 * l + 1)) * (pb + qb * l);
        let r_den = Integer::from((4 * ni - 2 * l - 1) * p * p * (l + 1)) * (pb + qb * (l + 1));
        num = &r_den * &den + r_num * num;
        den *= r_den;
    }
    Ok(Rational::new(num, den))
}
