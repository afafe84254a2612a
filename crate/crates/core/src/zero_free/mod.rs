//! Real-zero-free regions near `s = 1` for `L(Sym^2 E, s)` and numeric
//! certification of each inequality used to rule out a zero.
//!
//! All three cases share one shape. A zero `beta` in the region forces
//! `K delta eta^2 + (K delta + c0 - c1) eta + c0 <= 0` for `eta` the
//! distance parameter, and the contradiction is evaluated at the endpoint
//! `delta_max` where that quadratic has a double root.

pub mod trig;

use std::f64::consts::{PI, SQRT_2};

use num_bigint::BigUint;
use serde::Serialize;

use crate::cert::{all_pass, Bound, Waypoint};
use crate::error::{domain, Error, Result};
use crate::special::digamma;

/// Smallest conductor bound for which the regions are claimed.
pub const MIN_N2: u128 = 142;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ZeroFreeCase {
    Noncm,
    CmQi,
    CmZeta3,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConductorSource {
    Supplied,
    FallbackNSquared,
}

/// Conductors of the symmetric powers that enter the regions.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SymPowerConductors {
    #[serde(serialize_with = "crate::json::u128_exact")]
    pub n2: u128,
    /// Upper bound for the fourth-power conductor, `n2^2`.
    #[serde(serialize_with = "crate::json::biguint")]
    pub n4_bound: BigUint,
    /// Sixth-power conductor when known (equals `n4` for `Q(zeta_3)` unless `3^3 || N`).
    #[serde(serialize_with = "crate::json::opt_biguint")]
    pub n6_info: Option<BigUint>,
    pub source: ConductorSource,
}

impl SymPowerConductors {
    pub fn supplied(n2: u128) -> Self {
        Self::build(n2, ConductorSource::Supplied)
    }

    /// `n2 = N^2`, always an upper bound.
    pub fn fallback(conductor: u64) -> Self {
        let n = conductor as u128;
        Self::build(n * n, ConductorSource::FallbackNSquared)
    }

    fn build(n2: u128, source: ConductorSource) -> Self {
        let n = BigUint::from(n2);
        SymPowerConductors {
            n2,
            n4_bound: &n * &n,
            n6_info: None,
            source,
        }
    }

    pub fn with_n6(mut self, n6: BigUint) -> Self {
        self.n6_info = Some(n6);
        self
    }
}

/// Smaller root of `a2 x^2 + a1 x + a0` when both roots are positive.
/// Discriminants in `(-1e-12, 0)` are treated as zero.
pub fn eta_smaller_root(a2: f64, a1: f64, a0: f64) -> Result<f64> {
    let disc = a1 * a1 - 4.0 * a2 * a0;
    if !disc.is_finite() || disc < -1e-12 {
        return domain(format!("complex roots: discriminant {disc}"));
    }
    if !(a2 != 0.0 && a0 / a2 > 0.0 && -a1 / a2 > 0.0) {
        return domain(format!("roots of ({a2}, {a1}, {a0}) are not both positive"));
    }
    let s = disc.max(0.0).sqrt();
    // the conjugate form avoids cancellation in -a1 - s
    let root = if a2 > 0.0 {
        2.0 * a0 / (-a1 + s)
    } else {
        2.0 * a0 / (-a1 - s)
    };
    Ok(root)
}

/// Constants of one zero-free region.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RegionConstants {
    pub case: ZeroFreeCase,
    pub delta_max: f64,
    #[serde(rename = "C")]
    pub c: u32,
    /// `eta * delta` at `delta_max`.
    pub eta_delta_max: f64,
    /// Coefficient of `log(n2/C)` in the explicit formula.
    pub k: f64,
    /// Weight of the pole.
    pub c0: f64,
    /// Weight of the hypothetical zero.
    pub c1: f64,
}

impl RegionConstants {
    /// Coefficients `(a2, a1, a0)` of the quadratic in `eta`.
    pub fn quadratic(&self, delta: f64) -> (f64, f64, f64) {
        let kd = self.k * delta;
        (kd, kd + self.c0 - self.c1, self.c0)
    }

    pub fn eta_at(&self, delta: f64) -> Result<f64> {
        if !(delta > 0.0) {
            return domain(format!("delta must be positive, got {delta}"));
        }
        let (a2, a1, a0) = self.quadratic(delta);
        eta_smaller_root(a2, a1, a0)
    }

    /// Discriminant at `delta_max`, divided by `max(1, a1^2)` so that the
    /// large coefficients of the cubic case do not swamp the rounding.
    pub fn endpoint_discriminant(&self) -> f64 {
        let (a2, a1, a0) = self.quadratic(self.delta_max);
        (a1 * a1 - 4.0 * a2 * a0) / (a1 * a1).max(1.0)
    }

    fn log_ratio(&self, n2: u128) -> f64 {
        (n2 as f64 / self.c as f64).ln()
    }

    /// `1 + eta delta / log(n2/C)`.
    pub fn sigma_max(&self, n2: u128) -> f64 {
        1.0 + self.eta_delta_max / self.log_ratio(n2)
    }

    /// `sigma - 1 + beta` at the extremal zero, `1 + (eta delta - delta)/log(n2/C)`.
    pub fn shifted_sigma(&self, n2: u128) -> f64 {
        1.0 + (self.eta_delta_max - self.delta_max) / self.log_ratio(n2)
    }
}

/// `delta_max = 2(5 - 2 sqrt 6)/5`, `C = 96`.
pub fn region_noncm() -> RegionConstants {
    let r6 = 6f64.sqrt();
    RegionConstants {
        case: ZeroFreeCase::Noncm,
        delta_max: 2.0 / (5.0 * (5.0 + 2.0 * r6)),
        c: 96,
        eta_delta_max: 2.0 * (r6 - 2.0) / 5.0,
        k: 2.5,
        c0: 2.0,
        c1: 3.0,
    }
}

/// `delta_max = sqrt 2 + 2 - 2^{7/4}`, `C = 100`.
pub fn region_cm_qi() -> RegionConstants {
    let q = 2f64.powf(0.25);
    RegionConstants {
        case: ZeroFreeCase::CmQi,
        delta_max: (6.0 - 4.0 * SQRT_2) / (2.0 + SQRT_2 + 2f64.powf(1.75)),
        c: 100,
        eta_delta_max: SQRT_2 * (q - 1.0),
        k: SQRT_2,
        c0: 2.0,
        c1: 2.0 * SQRT_2,
    }
}

/// `delta_max = (554 - 12 sqrt 2014)/261`, `C = 64`.
pub fn region_cm_zeta3() -> RegionConstants {
    let r = 2014f64.sqrt();
    RegionConstants {
        case: ZeroFreeCase::CmZeta3,
        delta_max: 16900.0 / (261.0 * (554.0 + 12.0 * r)),
        c: 64,
        eta_delta_max: (6.0 * r - 212.0) / 261.0,
        k: 130.5,
        c0: 106.0,
        c1: 171.0,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CertReport {
    pub case_tag: ZeroFreeCase,
    #[serde(serialize_with = "crate::json::u128_exact")]
    pub n2: u128,
    pub sigma_max: f64,
    pub waypoints: Vec<Waypoint>,
    pub overall_pass: bool,
    pub notes: Vec<String>,
}

/// `sum w psi(scale sigma + offset)`.
fn digamma_sum(terms: &[(f64, f64, f64)], sigma: f64) -> Result<f64> {
    terms.iter().try_fold(0.0, |acc, &(w, scale, offset)| {
        Ok(acc + w * digamma(scale * sigma + offset)?)
    })
}

struct Chain {
    region: RegionConstants,
    psi_terms: Vec<(f64, f64, f64)>,
    constant_block: f64,
    sigma_bound: f64,
    gamma_name: &'static str,
    gamma_bound: Bound,
    middle_bound: f64,
    total_bound: f64,
}

fn require_n2(n2: &SymPowerConductors) -> Result<u128> {
    if n2.n2 < MIN_N2 {
        return Err(Error::Precondition(format!(
            "n2 = {} is below {MIN_N2}",
            n2.n2
        )));
    }
    Ok(n2.n2)
}

fn run_chain(chain: Chain, n2: u128) -> Result<(f64, Vec<Waypoint>, f64)> {
    let r = chain.region;
    let sigma = r.sigma_max(n2);
    let shift = r.shifted_sigma(n2);
    let gamma_sum = digamma_sum(&chain.psi_terms, sigma)?;
    let middle = r.c0 / sigma - r.c1 / shift;
    let log_c = r.k * (r.c as f64).ln();
    let gamma_bound_value = match chain.gamma_bound {
        Bound::AtMost { bound } | Bound::LessThan { bound } => bound,
        _ => unreachable!("gamma bounds are upper bounds"),
    };
    let total_chain = chain.middle_bound + chain.constant_block + gamma_bound_value + log_c;
    let total_computed = middle + chain.constant_block + gamma_sum + log_c;
    let wps = vec![
        Waypoint::at_most("sigma_max", sigma, chain.sigma_bound),
        Waypoint::new(chain.gamma_name, gamma_sum, chain.gamma_bound),
        Waypoint::at_most("middle_term", middle, chain.middle_bound),
        Waypoint::at_most("total_chain", total_chain, chain.total_bound),
        Waypoint::less_than("total_computed", total_computed, 0.0),
        Waypoint::at_most(
            "endpoint_discriminant",
            r.endpoint_discriminant().abs(),
            1e-12,
        ),
    ];
    Ok((sigma, wps, log_c))
}

fn report(
    case_tag: ZeroFreeCase,
    n2: u128,
    sigma: f64,
    waypoints: Vec<Waypoint>,
    notes: Vec<String>,
) -> CertReport {
    let overall_pass = all_pass(&waypoints);
    CertReport {
        case_tag,
        n2,
        sigma_max: sigma,
        waypoints,
        overall_pass,
        notes,
    }
}

pub fn certify_noncm(n2: &SymPowerConductors) -> Result<CertReport> {
    let n2 = require_n2(n2)?;
    let log_32_pi8 = 32f64.ln() + 8.0 * PI.ln();
    let chain = Chain {
        region: region_noncm(),
        psi_terms: vec![
            (3.0, 0.5, 0.0),
            (4.0, 1.0, 1.0),
            (3.0, 0.5, 0.5),
            (1.0, 1.0, 2.0),
        ],
        constant_block: -log_32_pi8,
        sigma_bound: 1.46,
        gamma_name: "digamma_sum",
        gamma_bound: Bound::AtMost { bound: 1.74 },
        middle_bound: -0.84,
        total_bound: -0.30,
    };
    let (sigma, mut wps, _) = run_chain(chain, n2)?;
    wps.insert(3, Waypoint::within("log_32_pi8", log_32_pi8, 12.62, 12.63));
    let notes = vec![
        "endpoint delta = 2(5-2*sqrt 6)/5, where the quadratic discriminant 25d^2-100d+4 vanishes; \
         (5-2*sqrt 6)/5 is not an endpoint"
            .to_string(),
    ];
    Ok(report(ZeroFreeCase::Noncm, n2, sigma, wps, notes))
}

pub fn certify_cm_qi(n2: &SymPowerConductors) -> Result<CertReport> {
    let n2 = require_n2(n2)?;
    let constant_block = 2.0 * (1.0 / PI).ln() + 2.0 * SQRT_2 * (1.0 / (4.0 * PI)).ln();
    let chain = Chain {
        region: region_cm_qi(),
        psi_terms: vec![(2.0, 0.5, 0.0), (2.0 * SQRT_2, 1.0, 1.0), (1.0, 1.0, 2.0)],
        constant_block,
        sigma_bound: 1.8,
        gamma_name: "gamma_terms",
        gamma_bound: Bound::AtMost { bound: 2.821 },
        middle_bound: -0.612,
        total_bound: -0.726,
    };
    let (sigma, mut wps, _) = run_chain(chain, n2)?;
    wps.insert(
        3,
        Waypoint::within("constant_block_abs", -constant_block, 9.447, 9.449),
    );

    // the same chain with C = 64 also reaches a contradiction
    let alt = RegionConstants {
        c: 64,
        ..region_cm_qi()
    };
    let s64 = alt.sigma_max(n2);
    let g64 = digamma_sum(
        &[(2.0, 0.5, 0.0), (2.0 * SQRT_2, 1.0, 1.0), (1.0, 1.0, 2.0)],
        s64,
    )?;
    let total64 =
        alt.c0 / s64 - alt.c1 / alt.shifted_sigma(n2) + constant_block + g64 + alt.k * 64f64.ln();
    wps.push(Waypoint::less_than("total_computed_c64", total64, 0.0));
    let notes = vec![
        "the Q(i) chain uses C = 100; the same chain with C = 64 is evaluated as total_computed_c64"
            .to_string(),
    ];
    Ok(report(ZeroFreeCase::CmQi, n2, sigma, wps, notes))
}

pub fn certify_cm_zeta3(n2: &SymPowerConductors) -> Result<CertReport> {
    let n2 = require_n2(n2)?;
    let constant_block = 339.0 * (1.0 / PI).ln() - (53.0 * 3f64.ln() + 286.0 * 2f64.ln());
    let chain = Chain {
        region: region_cm_zeta3(),
        psi_terms: vec![
            (106.0, 0.5, 0.0),
            (171.0, 1.0, 1.0),
            (90.0, 1.0, 2.0),
            (25.0, 1.0, 3.0),
        ],
        constant_block,
        sigma_bound: 1.28,
        gamma_name: "gamma_sum",
        gamma_bound: Bound::LessThan { bound: 153.0 },
        middle_bound: -59.0,
        total_bound: -7.0,
    };
    let (sigma, mut wps, log_c) = run_chain(chain, n2)?;
    wps.insert(
        3,
        Waypoint::within("constant_block", constant_block, -645.0, -644.0),
    );
    wps.insert(4, Waypoint::within("log_c_term", log_c, 542.0, 543.0));
    let q = trig::quintic_beta_optimum();
    wps.push(Waypoint::within(
        "beta_star",
        q.beta_star,
        2.629_152_166 - 1e-8,
        2.629_152_166 + 1e-8,
    ));
    let notes = vec![format!(
        "weight (1+cos t)(1+5/2 cos t)^2; the quintic also has the positive root {:.10}, \
         the optimum uses the smaller one",
        q.positive_roots.last().copied().unwrap_or(f64::NAN)
    )];
    Ok(report(ZeroFreeCase::CmZeta3, n2, sigma, wps, notes))
}

/// Certification for the given case.
pub fn certify(case: ZeroFreeCase, n2: &SymPowerConductors) -> Result<CertReport> {
    match case {
        ZeroFreeCase::Noncm => certify_noncm(n2),
        ZeroFreeCase::CmQi => certify_cm_qi(n2),
        ZeroFreeCase::CmZeta3 => certify_cm_zeta3(n2),
    }
}
