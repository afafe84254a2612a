//! Digamma, real zeta, Gamma near 1 and on the critical line, and the
//! error-term integral of the smoothed L-value argument.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{domain, Result};
use crate::quadrature;

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_61;

/// `B_{2k}` for `k = 1..=7`.
const BERNOULLI: [f64; 7] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
];

/// `psi(x) = Gamma'(x)/Gamma(x)` for `x > 0`: upward recurrence to `x >= 10`,
/// then the asymptotic series through `B_14`.
pub fn digamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return domain(format!("digamma requires finite x > 0, got {x}"));
    }
    let mut x = x;
    let mut acc = 0.0;
    while x < 10.0 {
        acc -= 1.0 / x;
        x += 1.0;
    }
    let inv2 = 1.0 / (x * x);
    let mut pow = inv2;
    let mut series = 0.0;
    for (k, b) in BERNOULLI.iter().enumerate() {
        series += b / (2.0 * (k as f64 + 1.0)) * pow;
        pow *= inv2;
    }
    Ok(acc + x.ln() - 0.5 / x - series)
}

/// `zeta(s)` for real `s > 1` by Euler-Maclaurin summation.
pub fn zeta_real(s: f64) -> Result<f64> {
    if !(s > 1.0) || !s.is_finite() {
        return domain(format!("zeta_real requires finite s > 1, got {s}"));
    }
    const N: f64 = 16.0;
    let head: f64 = (1..16).map(|n| (n as f64).powf(-s)).sum();
    let mut sum = head + N.powf(1.0 - s) / (s - 1.0) + 0.5 * N.powf(-s);
    // term_k = B_{2k}/(2k)! * s(s+1)...(s+2k-2) * N^{-s-2k+1}
    let mut rising = s;
    let mut factorial = 2.0;
    let mut npow = N.powf(-s - 1.0);
    for (k, b) in BERNOULLI.iter().enumerate() {
        let k = k as f64 + 1.0;
        sum += b / factorial * rising * npow;
        rising *= (s + 2.0 * k - 1.0) * (s + 2.0 * k);
        factorial *= (2.0 * k + 1.0) * (2.0 * k + 2.0);
        npow /= N * N;
    }
    Ok(sum)
}

/// `Gamma(1 + x)` for `|x| <= 1/2` from
/// `ln Gamma(1 + x) = -gamma x + sum_{k>=2} (-1)^k zeta(k) x^k / k`.
pub fn gamma_one_plus(x: f64) -> Result<f64> {
    if !(x.abs() <= 0.5) {
        return domain(format!("gamma_one_plus requires |x| <= 1/2, got {x}"));
    }
    let mut log = -EULER_GAMMA * x;
    let mut pow = -x;
    for k in 2..200 {
        pow *= -x;
        let term = zeta_real(k as f64)? * pow / k as f64;
        log += term;
        if term.abs() < 1e-18 {
            break;
        }
    }
    Ok(log.exp())
}

/// `|Gamma(1/2 + it)| = sqrt(pi sech(pi t))`.
pub fn abs_gamma_half_line(t: f64) -> f64 {
    (PI / (PI * t).cosh()).sqrt()
}

/// Which form of the error-term integrand to integrate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Lemma4Integrand {
    /// Product of the two critical-line bounds: `|5/2 + it|^{3/2}` enters as
    /// `(25/4 + t^2)^{3/4}`.
    LineBounds,
    /// The variant with `(25/4 + t^2)^{3/2}` in place of the 3/4 power. It
    /// dominates [`Lemma4Integrand::LineBounds`] pointwise.
    ThreeHalves,
}

impl Lemma4Integrand {
    fn exponent(self) -> f64 {
        match self {
            Lemma4Integrand::LineBounds => 0.75,
            Lemma4Integrand::ThreeHalves => 1.5,
        }
    }
}

pub const LEMMA4_TRUNCATION: f64 = 40.0;
pub const LEMMA4_INTEGRAL_BOUND: f64 = 62.0;

/// `zeta(3/2)^4 / (4 pi^2)`.
pub fn lemma4_prefactor() -> f64 {
    let z = zeta_real(1.5).expect("1.5 > 1");
    z.powi(4) / (4.0 * PI * PI)
}

/// Full integrand including the `zeta(3/2)^4/(4 pi^2)` prefactor.
pub fn lemma4_integrand(t: f64, variant: Lemma4Integrand) -> f64 {
    let t2 = t * t;
    lemma4_prefactor()
        * (6.25 + t2).powf(variant.exponent())
        * (2.25 + t2).sqrt()
        * 2.0
        * (1.0 + t2).powf(0.005)
        / (1.0 + 4.0 * t2).sqrt()
        * abs_gamma_half_line(t)
}

/// `int_T^inf t^n e^{-a t} dt = e^{-aT} sum_{k=0}^n n!/k! T^k / a^{n-k+1}`.
fn gamma_tail(n: u32, a: f64, t: f64) -> f64 {
    let mut sum = 0.0;
    let mut coeff = 1.0; // n!/k! for k = n, n-1, ...
    for k in (0..=n).rev() {
        sum += coeff * t.powi(k as i32) / a.powi((n - k + 1) as i32);
        coeff *= k as f64;
    }
    (-a * t).exp() * sum
}

/// Upper bound for the integral over `[t, inf)`, `t >= 3`.
///
/// For `t >= 3` every factor `c + t^2` with `c <= 25/4` is at most `2 t^2`,
/// `sqrt(1 + 4t^2) >= 2t` and `sqrt(pi sech pi t) <= sqrt(2 pi) e^{-pi t/2}`,
/// giving `2.4 t^2` (line bounds) or `4.1 t^4` (3/2 power) for the algebraic part.
pub fn lemma4_tail_bound(t: f64, variant: Lemma4Integrand) -> f64 {
    assert!(t >= 3.0, "tail bound derived for t >= 3");
    let (c, n) = match variant {
        Lemma4Integrand::LineBounds => (2.4, 2),
        Lemma4Integrand::ThreeHalves => (4.1, 4),
    };
    lemma4_prefactor() * c * (2.0 * PI).sqrt() * gamma_tail(n, PI / 2.0, t)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadratureResult {
    pub value: f64,
    /// Quadrature error estimate on `[0, T]` plus the analytic tail bound.
    pub abs_error_estimate: f64,
    pub truncation_point: f64,
    pub tail_bound: f64,
}

pub fn lemma4_error_integral_with(variant: Lemma4Integrand, tol: f64) -> Result<QuadratureResult> {
    let q = quadrature::integrate(
        |t| lemma4_integrand(t, variant),
        0.0,
        LEMMA4_TRUNCATION,
        tol,
    )?;
    let tail = lemma4_tail_bound(LEMMA4_TRUNCATION, variant);
    Ok(QuadratureResult {
        value: q.value,
        abs_error_estimate: q.abs_error + tail,
        truncation_point: LEMMA4_TRUNCATION,
        tail_bound: tail,
    })
}

/// The error-term integral built from the critical-line bounds.
pub fn lemma4_error_integral() -> Result<QuadratureResult> {
    lemma4_error_integral_with(Lemma4Integrand::LineBounds, 1e-10)
}
