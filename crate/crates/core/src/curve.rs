//! Weierstrass models: exact invariants, 2-torsion roots, point counting
//! and CM detection.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::arith;
use crate::error::{Error, Result};

/// Largest prime accepted by [`trace_of_frobenius`].
pub const POINT_COUNT_CUTOFF: u64 = 1_000_000;

/// A rational elliptic curve `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6`
/// together with its (supplied, never computed) conductor.
///
/// The discriminant used everywhere downstream is that of this exact model;
/// nothing is re-minimalised.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveModel {
    pub a: [BigInt; 5],
    pub conductor: u64,
    pub label: Option<String>,
    pub known_degree: Option<u64>,
    pub n2: Option<u128>,
}

impl CurveModel {
    pub fn new(a: [BigInt; 5], conductor: u64) -> Result<Self> {
        if conductor == 0 {
            return Err(Error::Input("conductor must be at least 1".into()));
        }
        let curve = CurveModel {
            a,
            conductor,
            label: None,
            known_degree: None,
            n2: None,
        };
        derive_invariants(&curve)?;
        Ok(curve)
    }

    pub fn from_i64(a: [i64; 5], conductor: u64) -> Result<Self> {
        Self::new(a.map(BigInt::from), conductor)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn with_known_degree(mut self, degree: u64) -> Result<Self> {
        if degree == 0 {
            return Err(Error::Input("known degree must be at least 1".into()));
        }
        self.known_degree = Some(degree);
        Ok(self)
    }

    pub fn with_n2(mut self, n2: u128) -> Result<Self> {
        if n2 == 0 {
            return Err(Error::Input(
                "symmetric-square conductor must be at least 1".into(),
            ));
        }
        self.n2 = Some(n2);
        Ok(self)
    }
}

/// Standard b- and c-invariants, discriminant and j-invariant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Invariants {
    #[serde(serialize_with = "crate::json::bigint")]
    pub b2: BigInt,
    #[serde(serialize_with = "crate::json::bigint")]
    pub b4: BigInt,
    #[serde(serialize_with = "crate::json::bigint")]
    pub b6: BigInt,
    #[serde(serialize_with = "crate::json::bigint")]
    pub b8: BigInt,
    #[serde(serialize_with = "crate::json::bigint")]
    pub c4: BigInt,
    #[serde(serialize_with = "crate::json::bigint")]
    pub c6: BigInt,
    #[serde(serialize_with = "crate::json::bigint")]
    pub disc: BigInt,
    #[serde(serialize_with = "crate::json::bigint")]
    pub abs_disc: BigInt,
    pub disc_positive: bool,
    /// `j = j_num / j_den` in lowest terms with `j_den > 0`.
    #[serde(serialize_with = "crate::json::bigint")]
    pub j_num: BigInt,
    #[serde(serialize_with = "crate::json::bigint")]
    pub j_den: BigInt,
}

impl Invariants {
    pub fn from_a(a: &[BigInt; 5]) -> Result<Self> {
        let [a1, a2, a3, a4, a6] = a;
        let b2: BigInt = a1 * a1 + 4 * a2;
        let b4: BigInt = 2 * a4 + a1 * a3;
        let b6: BigInt = a3 * a3 + 4 * a6;
        let b8: BigInt = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
        let c4: BigInt = &b2 * &b2 - 24 * &b4;
        let b2_cubed: BigInt = &b2 * &b2 * &b2;
        let c6: BigInt = 36 * &b2 * &b4 - 216 * &b6 - b2_cubed;
        let b2b2b8: BigInt = &b2 * &b2 * &b8;
        let disc: BigInt = 9 * &b2 * &b4 * &b6 - 8 * &b4 * &b4 * &b4 - 27 * &b6 * &b6 - b2b2b8;
        if disc.is_zero() {
            return Err(Error::SingularCurve);
        }
        let c4_cubed: BigInt = &c4 * &c4 * &c4;
        let g = c4_cubed.gcd(&disc);
        let (mut j_num, mut j_den) = (c4_cubed / &g, &disc / &g);
        if j_den.is_negative() {
            j_num = -j_num;
            j_den = -j_den;
        }
        Ok(Invariants {
            abs_disc: disc.abs(),
            disc_positive: disc.is_positive(),
            b2,
            b4,
            b6,
            b8,
            c4,
            c6,
            disc,
            j_num,
            j_den,
        })
    }

    /// Integral j-invariant, if `j` is an integer that fits in `i64`.
    pub fn j_integral(&self) -> Option<i64> {
        if self.j_den == BigInt::from(1) {
            self.j_num.to_i64()
        } else {
            None
        }
    }
}

pub(crate) fn to_f64(x: &BigInt) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

pub fn derive_invariants(curve: &CurveModel) -> Result<Invariants> {
    Invariants::from_a(&curve.a)
}

/// Real roots of the 2-torsion polynomial `4x^3 + b2 x^2 + 2 b4 x + b6`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RootData {
    /// `e1 > e2 > e3`.
    ThreeReal { e1: f64, e2: f64, e3: f64 },
    /// Real root `r`; the complex pair is `-r_tilde/2 - b2/12 ± iZ` with
    /// `r_tilde = r + b2/12`.
    OneReal { r: f64, z: f64, r_tilde: f64 },
}

/// Roots via the depressed cubic `u^3 - (c4/48) u - c6/864` (`x = u - b2/12`),
/// trigonometric or Cardano form, then one Newton step.
pub fn two_torsion_roots(inv: &Invariants) -> Result<RootData> {
    let c4 = to_f64(&inv.c4);
    let c6 = to_f64(&inv.c6);
    let shift = to_f64(&inv.b2) / 12.0;
    let p = -c4 / 48.0;
    let q = -c6 / 864.0;
    let polish = |u: f64| {
        let g = (u * u + p) * u + q;
        let dg = 3.0 * u * u + p;
        if dg != 0.0 {
            let v = u - g / dg;
            if ((v * v + p) * v + q).abs() <= g.abs() {
                return v;
            }
        }
        u
    };

    if inv.disc_positive {
        if c4 <= 0.0 {
            return Err(Error::Numeric("positive discriminant with c4 <= 0".into()));
        }
        let m = c4.sqrt() / 6.0;
        let cos_phi = (c6 / c4.powf(1.5)).clamp(-1.0, 1.0);
        let third = cos_phi.acos() / 3.0;
        let tau = 2.0 * std::f64::consts::PI / 3.0;
        let mut u = [
            polish(m * third.cos()),
            polish(m * (third - tau).cos()),
            polish(m * (third + tau).cos()),
        ];
        u.sort_by(|a, b| b.total_cmp(a));
        Ok(RootData::ThreeReal {
            e1: u[0] - shift,
            e2: u[1] - shift,
            e3: u[2] - shift,
        })
    } else {
        let s = (q * q / 4.0 + p * p * p / 27.0).max(0.0).sqrt();
        let u = if q == 0.0 {
            // p > 0 here, so the only real root is 0.
            0.0
        } else {
            let a = -q.signum() * (q.abs() / 2.0 + s).cbrt();
            a - p / (3.0 * a)
        };
        let u = polish(u);
        // the pair is -u/2 +- iz with z^2 (9u^2/4 + z^2)^2 = |D|/64; solving this
        // avoids the cancellation in z^2 = 3u^2/4 + p near a double root
        let a = 2.25 * u * u;
        let k = to_f64(&inv.abs_disc) / 64.0;
        let mut w = k.cbrt();
        for _ in 0..200 {
            let f = w * (a + w) * (a + w) - k;
            let step = f / ((a + w) * (a + 3.0 * w));
            w -= step;
            if step.abs() <= 1e-16 * w {
                break;
            }
        }
        if !(w > 0.0 && w.is_finite()) {
            return Err(Error::Numeric(
                "negative discriminant but no complex pair".into(),
            ));
        }
        Ok(RootData::OneReal {
            r: u - shift,
            z: w.sqrt(),
            r_tilde: u,
        })
    }
}

/// The nontrivial rational CM j-invariants with the discriminant of the CM field.
pub const CM_J_INVARIANTS: [(i64, i64); 13] = [
    (0, -3),
    (54_000, -3),
    (-12_288_000, -3),
    (1728, -4),
    (287_496, -4),
    (-3375, -7),
    (16_581_375, -7),
    (8000, -8),
    (-32_768, -11),
    (-884_736, -19),
    (-884_736_000, -43),
    (-147_197_952_000, -67),
    (-262_537_412_640_768_000, -163),
];

/// Discriminant of the CM field, or `None` for curves without CM.
pub fn cm_discriminant(inv: &Invariants) -> Option<i64> {
    let j = inv.j_integral()?;
    CM_J_INVARIANTS
        .iter()
        .find(|&&(cm_j, _)| cm_j == j)
        .map(|&(_, d)| d)
}

pub fn is_cm(inv: &Invariants) -> bool {
    cm_discriminant(inv).is_some()
}

fn mod_p(x: &BigInt, p: u64) -> u64 {
    x.mod_floor(&BigInt::from(p))
        .to_u64()
        .expect("residue fits in u64")
}

/// `a_p = p + 1 - #E(F_p)` by enumeration over `F_p`.
///
/// Requires `p` prime, `p <= POINT_COUNT_CUTOFF` and `p` not dividing the
/// discriminant of the model.
pub fn trace_of_frobenius(curve: &CurveModel, p: u64) -> Result<i64> {
    if !arith::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p > POINT_COUNT_CUTOFF {
        return Err(Error::PrimeTooLarge {
            p,
            cutoff: POINT_COUNT_CUTOFF,
        });
    }
    let inv = derive_invariants(curve)?;
    if mod_p(&inv.disc, p) == 0 {
        return Err(Error::BadReduction(p));
    }
    let count = if p == 2 {
        count_points_f2(&curve.a)
    } else {
        count_points_odd(&inv, p)
    };
    let ap = p as i64 + 1 - count as i64;
    if (ap * ap) as u64 > 4 * p {
        return Err(Error::Numeric(format!(
            "Hasse bound violated: a_{p} = {ap}"
        )));
    }
    Ok(ap)
}

fn count_points_f2(a: &[BigInt; 5]) -> u64 {
    let [a1, a2, a3, a4, a6] = a.clone().map(|x| mod_p(&x, 2));
    let mut count = 1;
    for x in 0..2u64 {
        for y in 0..2u64 {
            let lhs = y * y + a1 * x * y + a3 * y;
            let rhs = x * x * x + a2 * x * x + a4 * x + a6;
            if (lhs + rhs) % 2 == 0 {
                count += 1;
            }
        }
    }
    count
}

// For odd p, (2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6.
fn count_points_odd(inv: &Invariants, p: u64) -> u64 {
    let b2 = mod_p(&inv.b2, p);
    let b4 = 2 * mod_p(&inv.b4, p) % p;
    let b6 = mod_p(&inv.b6, p);
    let mut is_square = vec![false; p as usize];
    for y in 0..p {
        is_square[(y * y % p) as usize] = true;
    }
    let mut count = 1;
    for x in 0..p {
        let f = (((4 * x % p + b2) % p * x % p + b4) % p * x % p + b6) % p;
        count += if f == 0 {
            1
        } else if is_square[f as usize] {
            2
        } else {
            0
        };
    }
    count
}
