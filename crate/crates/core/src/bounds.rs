//! Lower bounds for the modular degree.
//!
//! Everything starts from `deg phi = N c^2/(2 pi Omega) L(Sym^2 E, 1) prod U_p(1)^{-1}`
//! with `c = 1`.

use std::f64::consts::PI;

use serde::Serialize;

use crate::arith::is_prime;
use crate::error::{domain, Result};
use crate::fudge::{prime_product_multiplier, FudgeFactor, FudgeRule, MIN_CONDUCTOR};
use crate::lvalue::SYMSQ_CONSTANT;

/// `N/(2 pi Omega) * L * prod u`.
pub fn degree_formula_bound(
    conductor: f64,
    omega: f64,
    l_value_lower: f64,
    fudge_inverses: &[f64],
) -> Result<f64> {
    if !(conductor > 0.0 && omega > 0.0 && l_value_lower > 0.0)
        || fudge_inverses.iter().any(|&u| !(u > 0.0))
    {
        return domain("degree formula needs positive inputs");
    }
    let prod: f64 = fudge_inverses.iter().product();
    Ok(conductor / (2.0 * PI * omega) * l_value_lower * prod)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Theorem1Bounds {
    pub analytic: f64,
    pub closed_form: f64,
    pub below_threshold: bool,
}

/// Semistable bound: `N/(2 pi Omega) * 0.033/(2 log N) >= N^{7/6}/(5350 log N)`.
pub fn theorem1(conductor: u64, omega: f64) -> Result<Theorem1Bounds> {
    if conductor < 2 || !(omega > 0.0) {
        return domain(format!(
            "theorem1 needs N >= 2 and omega > 0, got N = {conductor}, omega = {omega}"
        ));
    }
    let n = conductor as f64;
    let log_n = n.ln();
    Ok(Theorem1Bounds {
        analytic: n / (2.0 * PI * omega) * SYMSQ_CONSTANT / (2.0 * log_n),
        closed_form: theorem1_closed_form(log_n).exp(),
        below_threshold: conductor < MIN_CONDUCTOR,
    })
}

/// `log` of `N^{7/6}/(5350 log N)` from `log N`.
pub fn theorem1_closed_form(log_n: f64) -> f64 {
    7.0 / 6.0 * log_n - 5350f64.ln() - log_n.ln()
}

/// `log` of `(N^{7/6}/log N) / 10300 / sqrt(0.02 + log log N)` from `log N`.
pub fn theorem2_closed_form(log_n: f64) -> f64 {
    7.0 / 6.0 * log_n - log_n.ln() - 10300f64.ln() - 0.5 * (0.02 + log_n.ln()).ln()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Theorem2Bounds {
    /// `N/(2 pi Omega) * 0.033/log n2 * prod U_p(1)^{-1}`.
    pub analytic: f64,
    /// `N^{7/6}/(7150 log n2) * prod_{p^2 | N, p = 1 (3)} (1 - 1/p)`.
    pub intermediate: f64,
    pub closed_form: f64,
    /// Primes `p = 5 mod 12` with `u = 1 - 1/p`, `p^2 || N` and `p^3 | D`,
    /// where `N_p D_p^{1/6} U_p(1)^{-1} >= N_p^{7/6}`.
    pub p5_credits: Vec<u64>,
    /// `e^{0.33}/sqrt(0.02 + log log N)`.
    pub prime_multiplier: f64,
    pub chain_ok: bool,
    pub below_threshold: bool,
}

/// General bound. `disc_valuation(p)` gives `v_p(D)` of the model.
pub fn theorem2(
    conductor: u64,
    n2: u128,
    omega: f64,
    fudge: &[FudgeFactor],
    disc_valuation: impl Fn(u64) -> u32,
) -> Result<Theorem2Bounds> {
    if conductor < 3 || n2 < 2 || !(omega > 0.0) {
        return domain(format!(
            "theorem2 needs N >= 3, n2 >= 2, omega > 0 (N = {conductor}, n2 = {n2})"
        ));
    }
    let n = conductor as f64;
    let log_n2 = (n2 as f64).ln();
    let u: Vec<f64> = fudge.iter().map(|f| f.u_inverse_at_1).collect();
    let analytic = degree_formula_bound(n, omega, SYMSQ_CONSTANT / log_n2, &u)?;
    let one_mod_3: f64 = fudge
        .iter()
        .filter(|f| f.p % 3 == 1)
        .map(|f| 1.0 - 1.0 / f.p as f64)
        .product();
    let intermediate = n.powf(7.0 / 6.0) / (7150.0 * log_n2) * one_mod_3;
    let closed_form = theorem2_closed_form(n.ln()).exp();
    let p5_credits = fudge
        .iter()
        .filter(|f| {
            f.p % 12 == 5
                && f.epsilon == Some(1)
                && f.rule != FudgeRule::NonMinimal
                && conductor % (f.p * f.p) == 0
                && conductor % (f.p * f.p * f.p) != 0
                && disc_valuation(f.p) >= 3
        })
        .map(|f| f.p)
        .collect();
    Ok(Theorem2Bounds {
        analytic,
        intermediate,
        closed_form,
        p5_credits,
        prime_multiplier: prime_product_multiplier(n.ln()),
        chain_ok: analytic >= intermediate && intermediate >= closed_form,
        below_threshold: conductor < MIN_CONDUCTOR,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LinearBounds {
    /// `7N/1600`.
    pub abramovich: f64,
    /// `N/192`.
    pub abramovich_selberg: f64,
    /// `pN/(12 (p+1)^2)`; heuristic, never used for consistency.
    pub ogg_estimate: f64,
    pub ogg_prime: u64,
}

/// Linear bounds. Without an explicit prime the smallest prime not dividing
/// `N` is used for the Ogg estimate.
pub fn linear_bounds(conductor: u64, p: Option<u64>) -> Result<LinearBounds> {
    if conductor == 0 {
        return domain("conductor must be positive");
    }
    let p = match p {
        Some(p) if !is_prime(p) || conductor % p == 0 => {
            return domain(format!("{p} is not a good prime for N = {conductor}"))
        }
        Some(p) => p,
        None => (2..)
            .find(|&q| is_prime(q) && conductor % q != 0)
            .expect("infinitely many primes"),
    };
    let n = conductor as f64;
    let pf = p as f64;
    Ok(LinearBounds {
        abramovich: 7.0 * n / 1600.0,
        abramovich_selberg: n / 192.0,
        ogg_estimate: pf * n / (12.0 * (pf + 1.0).powi(2)),
        ogg_prime: p,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Crossover {
    pub log_n_star: f64,
    pub lo: f64,
    pub hi: f64,
    pub iterations: u32,
}

/// `log` of the closed form divided by `N`.
fn crossover_gap(log_n: f64) -> f64 {
    theorem2_closed_form(log_n) - log_n
}

/// Smallest `log N` with closed form `>= N`, by bisection on `[10, 200]`.
pub fn crossover_check() -> Crossover {
    let (mut lo, mut hi) = (10.0f64, 200.0f64);
    let mut iterations = 0;
    while hi - lo > 1e-12 && iterations < 200 {
        let mid = 0.5 * (lo + hi);
        if crossover_gap(mid) >= 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
        iterations += 1;
    }
    Crossover {
        log_n_star: hi,
        lo,
        hi,
        iterations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formula_identity() {
        let omega = 1.7;
        let l = 2.0 * PI * omega / 37.0;
        assert!((degree_formula_bound(37.0, omega, l, &[]).unwrap() - 1.0).abs() < 1e-14);
        let b = degree_formula_bound(20000.0, 1.0, 0.033 / (20000f64.powi(2)).ln(), &[]).unwrap();
        assert!((b - 5.303_296_534_853).abs() < 1e-9);
        assert!(degree_formula_bound(37.0, 0.0, 1.0, &[]).is_err());
        assert!(degree_formula_bound(37.0, 1.0, 1.0, &[0.0]).is_err());
    }

    #[test]
    fn closed_forms() {
        let t = theorem1(20000, 1.0).unwrap();
        assert!((t.closed_form - 1.966_647).abs() < 1e-5);
        assert!(!t.below_threshold);
        let t = theorem1(1_000_000, 1.0).unwrap();
        assert!((t.closed_form - 135.294_2).abs() < 1e-3);
        assert!(theorem1(10_000, 1.0).unwrap().below_threshold);
        let c = theorem2_closed_form(20000f64.ln()).exp();
        assert!((c - 0.671_685).abs() < 1e-5);
    }

    #[test]
    fn theorem2_empty_product() {
        let t = theorem2(20011, 20011u128 * 20011, 0.5, &[], |_| 1).unwrap();
        let expect = 20011f64.powf(7.0 / 6.0) / (7150.0 * (20011f64 * 20011.0).ln());
        assert!((t.intermediate / expect - 1.0).abs() < 1e-13);
        assert!(t.chain_ok);
    }

    #[test]
    fn linear() {
        let l = linear_bounds(1600, None).unwrap();
        assert_eq!(l.abramovich, 7.0);
        assert_eq!(
            linear_bounds(192 * 5, None).unwrap().abramovich_selberg,
            5.0
        );
        let o = linear_bounds(1_000_000, Some(3)).unwrap();
        assert!((o.ogg_estimate - 3e6 / 192.0).abs() < 1e-9);
        assert!((linear_bounds(1_000_001, Some(5)).unwrap().ogg_estimate - 11_574.08).abs() < 0.1);
        assert!(linear_bounds(1_000_000, Some(5)).is_err());
        assert_eq!(linear_bounds(1_000_000, None).unwrap().ogg_prime, 3);
    }

    #[test]
    fn crossover() {
        assert!(crossover_gap(80.0) < 0.0);
        assert!(crossover_gap(90.0) > 0.0);
        let c = crossover_check();
        assert!((c.log_n_star - 86.716).abs() < 1e-3);
    }
}
