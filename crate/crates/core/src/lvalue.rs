//! Lower bound `L(Sym^2 E, 1) >= 0.033/log n2` and its constants.

use std::f64::consts::PI;

use serde::Serialize;

use crate::arith::primes_up_to;
use crate::cert::{all_pass, Waypoint};
use crate::curve::{self, CurveModel};
use crate::error::{Error, Result};
use crate::special::{self, Lemma4Integrand, QuadratureResult};
use crate::zero_free::MIN_N2;

/// Numerator of the lower bound.
pub const SYMSQ_CONSTANT: f64 = 0.033;
/// Constant in `|E(X)| <= 20 sqrt(n2) X^{1/2-b}`.
pub const ERROR_CONSTANT: f64 = 20.0;

fn require(n2: u128) -> Result<f64> {
    if n2 < MIN_N2 {
        return Err(Error::Precondition(format!("n2 = {n2} is below {MIN_N2}")));
    }
    Ok(n2 as f64)
}

/// `0.033 / log n2`.
pub fn symsq_lower_bound(n2: u128) -> Result<f64> {
    Ok(SYMSQ_CONSTANT / require(n2)?.ln())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LineBounds {
    /// Bound for `|L(Sym^2 E, 1/2 + it)|`.
    pub symsq_halfline: f64,
    /// Bound for `|zeta(1/2 + it)|`.
    pub zeta_halfline: f64,
}

/// Convexity bounds on the critical line:
/// `zeta(3/2)^3 sqrt(n2/(8 pi^3)) |5/2 + it|^{3/2}` and
/// `zeta(3/2)/sqrt(2 pi) sqrt(9/4 + t^2)`.
pub fn rademacher_line_bounds(t: f64, n2: u128) -> LineBounds {
    let z = special::zeta_real(1.5).expect("1.5 > 1");
    let t2 = t * t;
    LineBounds {
        symsq_halfline: z.powi(3)
            * (n2 as f64 / (8.0 * PI.powi(3))).sqrt()
            * (6.25 + t2).powf(0.75),
        zeta_halfline: z / (2.0 * PI).sqrt() * (2.25 + t2).sqrt(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Lemma4Cert {
    #[serde(serialize_with = "crate::json::u128_exact")]
    pub n2: u128,
    pub b: f64,
    #[serde(rename = "X")]
    pub x: f64,
    pub log_x: f64,
    /// `X^{1-b}`.
    pub x_power: f64,
    pub gamma_1mb: f64,
    pub gamma_1mb_bound: f64,
    pub e_const: f64,
    pub error_integral: QuadratureResult,
    /// The integral with `(25/4 + t^2)^{3/2}`, reported only.
    pub error_integral_printed: f64,
    pub lower_bound: f64,
    pub waypoints: Vec<Waypoint>,
    pub overall_pass: bool,
    pub notes: Vec<String>,
}

/// Certifies every constant in the smoothed-sum argument for the given `n2`.
///
/// With `b = 1 - 1/(25 log n2)` and `X = (4e6 n2)^{50/49}` the argument gives
/// `e^{-1/X} <= R X^{1-b} Gamma(1-b) + |E(X)|`, from which `R` is bounded below.
pub fn lemma4_certify(n2: u128) -> Result<Lemma4Cert> {
    let n = require(n2)?;
    let log_n2 = n.ln();
    let b = 1.0 - 1.0 / (25.0 * log_n2);
    let log_x = 50.0 / 49.0 * (4.0e6 * n).ln();
    let x = log_x.exp();
    let x_power = ((1.0 - b) * log_x).exp();
    let gamma_1mb = special::gamma_one_plus(1.0 - b)? / (1.0 - b);
    let gamma_1mb_bound = 25.0 * log_n2;
    let integral = special::lemma4_error_integral()?;
    let printed = special::lemma4_error_integral_with(Lemma4Integrand::ThreeHalves, 1e-8)?;
    let error_term = ERROR_CONSTANT * n.sqrt() * ((0.5 - b) * log_x).exp();
    let main_term = (-1.0 / x).exp();

    // R from the computed constants and from the rounded ones
    let r_computed = (main_term - error_term) / (x_power * gamma_1mb);
    let r_chain = ((-1e-6f64).exp() - 0.01) / (1.19 * gamma_1mb_bound);

    let waypoints = vec![
        Waypoint::at_least("b", b, 0.99),
        Waypoint::at_most("log_X", log_x, 4.2 * log_n2),
        Waypoint::at_most("X_pow_1mb", x_power, 1.19),
        Waypoint::at_most("exp_4.2_over_25", (4.2f64 / 25.0).exp(), 1.19),
        Waypoint::at_most("gamma_1mb", gamma_1mb, gamma_1mb_bound),
        Waypoint::less_than(
            "error_integral",
            integral.value,
            special::LEMMA4_INTEGRAL_BOUND,
        ),
        Waypoint::at_most(
            "error_integral_quadrature_error",
            integral.abs_error_estimate,
            1e-6,
        ),
        Waypoint::less_than(
            "error_integral_over_pi",
            integral.value / PI,
            ERROR_CONSTANT,
        ),
        Waypoint::at_most("inv_X", 1.0 / x, 1e-6),
        Waypoint::at_most("error_term", error_term, 0.01),
        Waypoint::at_least("R_log_n2_chain", r_chain * log_n2, SYMSQ_CONSTANT),
        Waypoint::at_least("R_log_n2_computed", r_computed * log_n2, SYMSQ_CONSTANT),
    ];
    let notes = vec![
        format!(
            "error integral uses |5/2+it|^(3/2) = (25/4+t^2)^(3/4); with (25/4+t^2)^(3/2) it is {:.6}",
            printed.value
        ),
        "the zero parameter in L(beta) <= 0 is read as b".to_string(),
    ];
    let overall_pass = all_pass(&waypoints);
    Ok(Lemma4Cert {
        n2,
        b,
        x,
        log_x,
        x_power,
        gamma_1mb,
        gamma_1mb_bound,
        e_const: ERROR_CONSTANT,
        error_integral: integral,
        error_integral_printed: printed.value,
        lower_bound: SYMSQ_CONSTANT / log_n2,
        waypoints,
        overall_pass,
        notes,
    })
}

/// Truncated Euler product for `L(Sym^2 E, 1)` over good primes `p <= cutoff`.
///
/// Not rigorous: the tail is ignored and bad primes are skipped.
pub fn symsq_value_estimate(curve: &CurveModel, prime_cutoff: u64) -> Result<f64> {
    if prime_cutoff > curve::POINT_COUNT_CUTOFF {
        return Err(Error::PrimeTooLarge {
            p: prime_cutoff,
            cutoff: curve::POINT_COUNT_CUTOFF,
        });
    }
    let mut log_sum = 0.0;
    for p in primes_up_to(prime_cutoff) {
        if curve.conductor % p == 0 {
            continue;
        }
        let ap = match curve::trace_of_frobenius(curve, p) {
            Ok(a) => a as f64,
            Err(Error::BadReduction(_)) => continue,
            Err(e) => return Err(e),
        };
        let pf = p as f64;
        // (1 - a^2 p^-2)(1 - p^-1)(1 - b^2 p^-2) with a b = p, a + b = a_p
        let local = (1.0 - 1.0 / pf) * (1.0 - (ap * ap - 2.0 * pf - 1.0) / (pf * pf));
        log_sum -= local.ln();
    }
    Ok(log_sum.exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lower_bound_values() {
        assert!((symsq_lower_bound(142).unwrap() - 0.006_659_0).abs() < 1e-6);
        assert!((symsq_lower_bound(1000).unwrap() - 0.004_777_2).abs() < 1e-6);
        assert!(symsq_lower_bound(100).is_err());
    }

    #[test]
    fn line_bounds_at_zero() {
        let z = special::zeta_real(1.5).unwrap();
        let l = rademacher_line_bounds(0.0, 142);
        let expect = z.powi(3) * (142.0 / (8.0 * PI.powi(3))).sqrt() * 2.5f64.powf(1.5);
        assert!((l.symsq_halfline - expect).abs() < 1e-12 * expect);
        assert!((l.zeta_halfline - 1.5632).abs() < 1e-3);
        let l2 = rademacher_line_bounds(3.0, 142);
        assert!(l2.symsq_halfline > l.symsq_halfline && l2.zeta_halfline > l.zeta_halfline);
    }

    #[test]
    fn certify_142() {
        let c = lemma4_certify(142).unwrap();
        assert!(c.overall_pass, "{:#?}", c.waypoints);
        assert!((c.b - 0.991_928_693_327_05).abs() < 1e-12);
        assert!((c.log_x - 20.569).abs() < 1e-3);
        assert!((c.x_power - 1.1806).abs() < 1e-3);
        assert!((c.error_integral.value - 16.182_221_888_6).abs() < 1e-7);
        assert!((c.error_integral_printed - 69.283_135_558_4).abs() < 1e-6);
        assert!(lemma4_certify(141).is_err());
    }

    #[test]
    fn estimate_37a1_is_stable() {
        let e = CurveModel::from_i64([0, 0, 1, -1, 0], 37).unwrap();
        let a = symsq_value_estimate(&e, 1000).unwrap();
        let b = symsq_value_estimate(&e, 10_000).unwrap();
        assert!(a > 0.0 && b > 0.0);
        assert!((a / b - 1.0).abs() < 0.05);
    }
}
