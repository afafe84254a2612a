//! Periods and the area of the fundamental parallelogram via the
//! arithmetic-geometric mean, and the lower bound `1/Omega >= D^{1/6}/14.045`.

use std::f64::consts::PI;

use serde::Serialize;

use crate::curve::{self, Invariants, RootData};
use crate::error::{domain, Result};

/// Constant in the lower bound for `1/Omega`.
pub const LEMMA1_CONSTANT: f64 = 14.045;

const AGM_MAX_ITER: usize = 64;

/// Arithmetic-geometric mean of two positive reals.
pub fn agm(x: f64, y: f64) -> Result<f64> {
    if !(x > 0.0 && y > 0.0) || !x.is_finite() || !y.is_finite() {
        return domain(format!(
            "agm requires finite positive arguments, got ({x}, {y})"
        ));
    }
    let (mut a, mut b) = (x, y);
    for _ in 0..AGM_MAX_ITER {
        if (a - b).abs() <= 1e-15 * a {
            break;
        }
        let next = 0.5 * (a + b);
        b = (a * b).sqrt();
        a = next;
    }
    Ok(a)
}

fn m(x: f64) -> f64 {
    agm(1.0, x).expect("positive argument")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PeriodCase {
    PosDisc,
    NegDisc,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PeriodData {
    /// Real period times the imaginary part of the second period.
    pub omega: f64,
    pub real_period: f64,
    pub imag_part: f64,
    pub inv_omega: f64,
    pub case_tag: PeriodCase,
    /// `t = (e1-e2)/(e1-e3)` for positive discriminant, `c = r_tilde/Z` otherwise.
    pub t_or_c: f64,
}

impl PeriodData {
    fn new(real_period: f64, imag_part: f64, case_tag: PeriodCase, t_or_c: f64) -> Self {
        let omega = real_period * imag_part;
        PeriodData {
            omega,
            real_period,
            imag_part,
            inv_omega: 1.0 / omega,
            case_tag,
            t_or_c,
        }
    }
}

/// Three real roots `e1 > e2 > e3` of the 2-torsion polynomial.
pub fn area_pos_disc(e1: f64, e2: f64, e3: f64) -> Result<PeriodData> {
    if !(e1 > e2 && e2 > e3) {
        return domain(format!(
            "roots must satisfy e1 > e2 > e3, got ({e1}, {e2}, {e3})"
        ));
    }
    area_from_gaps(e1 - e2, e1 - e3, e2 - e3)
}

fn area_from_gaps(d12: f64, d13: f64, d23: f64) -> Result<PeriodData> {
    if !(d12 > 0.0 && d23 > 0.0) {
        return domain(format!("root gaps must be positive, got {d12} and {d23}"));
    }
    let real = PI / agm(d12.sqrt(), d13.sqrt())?;
    let imag = PI / agm(d23.sqrt(), d13.sqrt())?;
    Ok(PeriodData::new(real, imag, PeriodCase::PosDisc, d12 / d13))
}

/// Root gaps with the smaller of `e1 - e2`, `e2 - e3` recomputed from
/// `D = 16 (e1-e2)^2 (e1-e3)^2 (e2-e3)^2`, which keeps it accurate near a
/// double root.
fn stable_gaps(e1: f64, e2: f64, e3: f64, abs_disc: f64) -> (f64, f64, f64) {
    let (d12, d13, d23) = (e1 - e2, e1 - e3, e2 - e3);
    let root_d = abs_disc.sqrt() / 4.0;
    if d12 <= d23 {
        (root_d / (d13 * d23), d13, d23)
    } else {
        (d12, d13, root_d / (d12 * d13))
    }
}

/// `1/Omega = (e1-e3) agm(1, sqrt t) agm(1, sqrt(1-t)) / pi^2`.
pub fn pos_disc_product_formula(e1: f64, e2: f64, e3: f64) -> f64 {
    let t = (e1 - e2) / (e1 - e3);
    (e1 - e3) * m(t.sqrt()) * m((1.0 - t).sqrt()) / (PI * PI)
}

/// One real root `r` of `4x^3 + b2 x^2 + 2 b4 x + b6`.
///
/// With `A = 3r + b2/4` and `B = sqrt(3r^2 + b2 r/2 + b4/2)`, the real period
/// is `2 pi/agm(2 sqrt B, sqrt(2B+A))` and the vertical part of the second
/// period is `pi/agm(2 sqrt B, sqrt(2B-A))`.
pub fn area_neg_disc(r: f64, b2: f64, b4: f64) -> Result<PeriodData> {
    let a = 3.0 * r + b2 / 4.0;
    let b = (3.0 * r * r + b2 * r / 2.0 + b4 / 2.0).sqrt();
    if !(2.0 * b > a.abs()) {
        return domain(format!("need 2B > |A|, got A = {a}, B = {b}"));
    }
    let real = 2.0 * PI / agm(2.0 * b.sqrt(), (2.0 * b + a).sqrt())?;
    let imag = PI / agm(2.0 * b.sqrt(), (2.0 * b - a).sqrt())?;
    let r_tilde = a / 3.0;
    let z = (b * b - 2.25 * r_tilde * r_tilde).sqrt();
    Ok(PeriodData::new(
        real,
        imag,
        PeriodCase::NegDisc,
        r_tilde / z,
    ))
}

/// [`area_neg_disc`] from `r_tilde = A/3` and `Z`, using `4B^2 - A^2 = 4Z^2`
/// so that neither `2B + A` nor `2B - A` loses digits.
fn area_neg_disc_pair(r_tilde: f64, z: f64) -> Result<PeriodData> {
    let a = 3.0 * r_tilde;
    let b = (2.25 * r_tilde * r_tilde + z * z).sqrt();
    let (plus, minus) = if a >= 0.0 {
        (2.0 * b + a, 4.0 * z * z / (2.0 * b + a))
    } else {
        (4.0 * z * z / (2.0 * b - a), 2.0 * b - a)
    };
    if !(minus > 0.0 && plus > 0.0) {
        return domain(format!("degenerate complex pair, Z = {z}"));
    }
    let real = 2.0 * PI / agm(2.0 * b.sqrt(), plus.sqrt())?;
    let imag = PI / agm(2.0 * b.sqrt(), minus.sqrt())?;
    Ok(PeriodData::new(
        real,
        imag,
        PeriodCase::NegDisc,
        r_tilde / z,
    ))
}

fn neg_disc_agm_factor(c: f64) -> f64 {
    let s = 3.0 * c / (16.0 + 36.0 * c * c).sqrt();
    m((0.5 + s).sqrt()) * m((0.5 - s).sqrt())
}

/// `1/Omega` from `Z` and `c` in closed form:
/// `D^{1/6} (1+9c^2/4)^{1/6} M(..) M(..) / pi^2` with `D^{1/6} = 2Z(1+9c^2/4)^{1/3}`.
pub fn neg_disc_closed_form(z: f64, c: f64) -> f64 {
    let w = 1.0 + 2.25 * c * c;
    let d_sixth = 2.0 * z * w.cbrt();
    d_sixth * w.powf(1.0 / 6.0) * neg_disc_agm_factor(c) / (PI * PI)
}

/// `D^{1/6} / (1/Omega)` as a function of `t` in the positive case.
pub fn case1_profile(t: f64) -> f64 {
    PI * PI * (4.0 * t * (1.0 - t)).cbrt() / (m(t.sqrt()) * m((1.0 - t).sqrt()))
}

/// `D^{1/6} / (1/Omega)` as a function of `c` in the negative case.
pub fn case2_profile(c: f64) -> f64 {
    PI * PI / ((1.0 + 2.25 * c * c).powf(1.0 / 6.0) * neg_disc_agm_factor(c))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExtremalConstants {
    /// `pi^2 / agm(1, 1/sqrt 2)^2`, the worst case at `t = 1/2`.
    pub k1: f64,
    /// Worst case at `c = ±sqrt(4/3)`.
    pub k2: f64,
}

pub fn lemma1_extremal_constants() -> ExtremalConstants {
    let k1 = PI * PI / m(0.5f64.sqrt()).powi(2);
    let s = 3f64.sqrt() / 4.0;
    let k2 = PI * PI / (4f64.powf(1.0 / 6.0) * m((0.5 + s).sqrt()) * m((0.5 - s).sqrt()));
    ExtremalConstants { k1, k2 }
}

/// Periods of the model with the given invariants.
pub fn periods(inv: &Invariants) -> Result<PeriodData> {
    match curve::two_torsion_roots(inv)? {
        RootData::ThreeReal { e1, e2, e3 } => {
            let (d12, d13, d23) = stable_gaps(e1, e2, e3, curve::to_f64(&inv.abs_disc));
            area_from_gaps(d12, d13, d23)
        }
        RootData::OneReal { z, r_tilde, .. } => area_neg_disc_pair(r_tilde, z),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Lemma1Check {
    pub inv_omega: f64,
    pub rhs: f64,
    pub ok: bool,
    pub margin: f64,
    pub periods: PeriodData,
}

/// Compares `1/Omega` with `D^{1/6}/14.045`.
pub fn lemma1_check(inv: &Invariants) -> Result<Lemma1Check> {
    let periods = periods(inv)?;
    let d = curve::to_f64(&inv.abs_disc);
    let rhs = d.powf(1.0 / 6.0) / LEMMA1_CONSTANT;
    Ok(Lemma1Check {
        inv_omega: periods.inv_omega,
        rhs,
        ok: periods.inv_omega >= rhs,
        margin: periods.inv_omega - rhs,
        periods,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    // Plain AGM iteration run to a fixed iteration count.
    fn agm_reference(mut a: f64, mut b: f64) -> f64 {
        for _ in 0..40 {
            let n = 0.5 * (a + b);
            b = (a * b).sqrt();
            a = n;
        }
        a
    }

    #[test]
    fn agm_basics() {
        for x in [1.0, 2.5, 1e6] {
            assert_eq!(agm(x, x).unwrap(), x);
        }
        let g = agm(1.0, 0.5f64.sqrt()).unwrap();
        assert!((g - 0.847_213_084_793_979_1).abs() < 1e-15);
        assert!((g - agm_reference(1.0, 0.5f64.sqrt())).abs() < 1e-15);
        assert!(agm(1.0, 0.0).is_err());
        assert!(agm(-1.0, 2.0).is_err());
    }

    #[test]
    fn roots_one_zero_minus_one() {
        let p = area_pos_disc(1.0, 0.0, -1.0).unwrap();
        let expect = agm(1.0, 2f64.sqrt()).unwrap().powi(2) / (PI * PI);
        assert!((p.inv_omega / expect - 1.0).abs() < 1e-12);
        assert!((p.inv_omega - 0.145_450_614_204_335_5).abs() < 1e-13);
        assert!((pos_disc_product_formula(1.0, 0.0, -1.0) / p.inv_omega - 1.0).abs() < 1e-12);
        assert!((p.inv_omega * p.omega - 1.0).abs() < 1e-12);
        let rhs = 2.0 / LEMMA1_CONSTANT;
        assert!((p.inv_omega - rhs - 0.003_05).abs() < 1e-5);
    }

    #[test]
    fn scaling_roots_scales_inverse_area() {
        let p1 = area_pos_disc(1.0, 0.0, -1.0).unwrap();
        let p2 = area_pos_disc(2.0, 0.0, -2.0).unwrap();
        assert!((p2.omega / p1.omega - 0.5).abs() < 1e-14);
        assert!(area_pos_disc(0.0, 1.0, -1.0).is_err());
    }

    #[test]
    fn neg_disc_symmetric_case() {
        // r_tilde = 0 means c = 0; use b2 = 0, r = 0, b4 > 0
        let p = area_neg_disc(0.0, 0.0, 2.0).unwrap();
        assert_eq!(p.t_or_c, 0.0);
        let z = 1.0; // B = sqrt(b4/2) = 1 = Z when c = 0
        let d_sixth = 2.0 * z;
        let lhs = p.inv_omega * PI * PI / d_sixth;
        assert!((lhs - m(0.5f64.sqrt()).powi(2)).abs() < 1e-13);
        assert!((neg_disc_closed_form(z, 0.0) / p.inv_omega - 1.0).abs() < 1e-12);
        assert!(area_neg_disc(1.0, 0.0, -10.0).is_err());
    }

    #[test]
    fn extremal_constants() {
        let k = lemma1_extremal_constants();
        assert!((k.k1 - 13.750_371_636_040_746).abs() < 1e-12);
        assert!((k.k2 - 14.044_556_133_045_614).abs() < 1e-12);
        assert!(k.k1.max(k.k2) <= LEMMA1_CONSTANT);
        assert!((case1_profile(0.5) - k.k1).abs() < 1e-12);
        assert!((case2_profile((4.0f64 / 3.0).sqrt()) - k.k2).abs() < 1e-12);
        assert!((case2_profile(-(4.0f64 / 3.0).sqrt()) - k.k2).abs() < 1e-12);
    }
}
