use std::f64::consts::{FRAC_PI_2, PI};

use moddeg_core::curve::{two_torsion_roots, Invariants, RootData};
use moddeg_core::periods::{self, agm};
use moddeg_core::quadrature::integrate;
use num_bigint::BigInt;
use proptest::prelude::*;

fn inv(a: [i64; 5]) -> Invariants {
    Invariants::from_a(&a.map(BigInt::from)).unwrap()
}

/// Quadrature to about 1e-13 relative to the integrand's scale on `[a, b]`.
fn quad(f: impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    let scale = (0..=16)
        .map(|i| f(a + (b - a) * i as f64 / 16.0).abs())
        .fold(0.0, f64::max)
        * (b - a);
    integrate(f, a, b, 1e-13 * scale).unwrap().value
}

/// `2 int_0^inf du / sqrt((u^2 + d)^2 + z^2)` with `u = s/(1-s)`, split at
/// the peak `u = sqrt(-d)` when there is one.
fn half_line(d: f64, z: f64) -> f64 {
    const CUT: f64 = 1e-12;
    let f = |s: f64| {
        let u = s / (1.0 - s);
        1.0 / ((1.0 - s) * (1.0 - s) * ((u * u + d).powi(2) + z * z).sqrt())
    };
    // the transformed integrand tends to 1 at s = 1
    let tail = 2.0 * CUT;
    if d < 0.0 {
        let u = (-d).sqrt();
        let peak = u / (1.0 + u);
        tail + 2.0 * (quad(f, 0.0, peak) + quad(f, peak, 1.0 - CUT))
    } else {
        tail + 2.0 * quad(f, 0.0, 1.0 - CUT)
    }
}

/// Periods by direct integration of `dx/sqrt(4x^3 + b2 x^2 + 2 b4 x + b6)`.
fn oracle(i: &Invariants) -> (f64, f64) {
    match two_torsion_roots(i).unwrap() {
        RootData::ThreeReal { e1, e2, e3 } => {
            // x = e3 + (e2-e3) sin^2 and x = e2 + (e1-e2) sin^2
            let real = 2.0
                * quad(
                    |t| 1.0 / (e1 - e3 - (e2 - e3) * t.sin().powi(2)).sqrt(),
                    0.0,
                    FRAC_PI_2,
                );
            let imag = 2.0
                * quad(
                    |t| 1.0 / (e2 - e3 + (e1 - e2) * t.sin().powi(2)).sqrt(),
                    0.0,
                    FRAC_PI_2,
                );
            (real, imag)
        }
        RootData::OneReal { z, r_tilde, .. } => {
            // roots r and p +- iz with r - p = 3 r_tilde / 2
            let d = 1.5 * r_tilde;
            let real = half_line(d, z);
            let back = half_line(-d, z);
            (real, back / 2.0)
        }
    }
}

const SAMPLES: [[i64; 5]; 24] = [
    [0, 0, 1, -1, 0],
    [0, 1, 1, -2, 0],
    [0, 0, 1, -7, 6],
    [0, -1, 1, -10, -20],
    [1, 0, 1, 4, -6],
    [1, 1, 1, -10, -10],
    [1, -1, 1, -1, -14],
    [0, 1, 1, -9, -15],
    [0, 1, 0, 4, 4],
    [1, 0, 0, -4, -1],
    [1, 0, 1, -5, -8],
    [0, 0, 0, -1, 1],
    [0, 0, 0, 4, 0],
    [0, 0, 1, 0, -7],
    [1, -1, 0, -2, -1],
    [0, 0, 0, 0, 1],
    [0, 0, 0, -1, 0],
    [0, 0, 0, -2, 0],
    [0, 0, 0, -43, 166],
    [0, 0, 0, 1, 0],
    [1, 0, 0, -11, 11],
    [0, 0, 1, -2728, 0],
    [0, 0, 0, 10_000, -3],
    [1, -1, 1, -588, 0],
];

#[test]
fn agm_matches_quadrature() {
    let (mut pos, mut neg) = (0, 0);
    for a in SAMPLES {
        let i = inv(a);
        let p = periods::periods(&i).unwrap();
        let (real, imag) = oracle(&i);
        assert!(
            (p.real_period / real - 1.0).abs() < 1e-9,
            "{a:?}: {} vs {real}",
            p.real_period
        );
        assert!(
            (p.imag_part / imag - 1.0).abs() < 1e-9,
            "{a:?}: {} vs {imag}",
            p.imag_part
        );
        if i.disc_positive {
            pos += 1
        } else {
            neg += 1
        }
    }
    assert!(pos >= 5 && neg >= 5, "{pos} positive, {neg} negative");
}

#[test]
fn product_and_closed_forms_agree() {
    for a in SAMPLES {
        let i = inv(a);
        let p = periods::periods(&i).unwrap();
        let alt = match two_torsion_roots(&i).unwrap() {
            RootData::ThreeReal { e1, e2, e3 } => periods::pos_disc_product_formula(e1, e2, e3),
            RootData::OneReal { z, r_tilde, .. } => periods::neg_disc_closed_form(z, r_tilde / z),
        };
        assert!((alt / p.inv_omega - 1.0).abs() < 1e-10, "{a:?}");
    }
}

#[test]
fn extremal_profiles() {
    let k = periods::lemma1_extremal_constants();
    assert!((periods::case1_profile(0.5) - k.k1).abs() < 1e-12);
    assert!((periods::case2_profile((4.0f64 / 3.0).sqrt()) - k.k2).abs() < 1e-10);
    for i in 1..200 {
        let t = i as f64 / 200.0;
        assert!(periods::case1_profile(t) <= k.k1 + 1e-12, "t = {t}");
        let c = -6.0 + 12.0 * t;
        assert!(
            periods::case2_profile(c) <= k.k2 + 1e-12,
            "c = {c}: {} > {}",
            periods::case2_profile(c),
            k.k2
        );
    }
}

proptest! {
    #[test]
    fn agm_homogeneous_and_symmetric(x in 1e-3f64..1e3, y in 1e-3f64..1e3, l in 1e-2f64..1e2) {
        let m = agm(x, y).unwrap();
        prop_assert!((agm(l * x, l * y).unwrap() / (l * m) - 1.0).abs() < 1e-13);
        prop_assert!((agm(y, x).unwrap() / m - 1.0).abs() < 1e-14);
        prop_assert!((x * y).sqrt() * (1.0 - 1e-14) <= m && m <= 0.5 * (x + y) * (1.0 + 1e-14));
    }

    #[test]
    fn complete_elliptic_integral(k in 0.0f64..0.99) {
        // K(k) = pi / (2 agm(1, sqrt(1-k^2)))
        let kk = quad(|t| 1.0 / (1.0 - k * k * t.sin().powi(2)).sqrt(), 0.0, FRAC_PI_2);
        prop_assert!((PI / (2.0 * agm(1.0, (1.0 - k * k).sqrt()).unwrap()) / kk - 1.0).abs() < 1e-12);
    }

    #[test]
    fn lemma1_holds(a in proptest::array::uniform5(-1000i64..1000)) {
        let i = Invariants::from_a(&a.map(BigInt::from));
        prop_assume!(i.is_ok());
        let c = periods::lemma1_check(&i.unwrap()).unwrap();
        prop_assert!(c.ok, "{a:?}: 1/Omega = {} < {}", c.inv_omega, c.rhs);
    }
}
