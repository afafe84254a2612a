//! Local factors `U_p(1)^{-1}` at primes with `p^2 | N`, the growth
//! comparison under quadratic twists, and the product over `p = 1 mod 3`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use crate::arith::{factorize, is_prime, valuation};
use crate::curve::Invariants;
use crate::error::{domain, Error, Result};

/// Smallest conductor for which the closed forms are claimed.
pub const MIN_CONDUCTOR: u64 = 20_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FudgeRule {
    OneMod12,
    ElevenMod12,
    FiveMod12,
    SevenMod12,
    Fallback,
    Three,
    TwoExact8,
    TwoOther,
    NonMinimal,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FudgeFactor {
    pub p: u64,
    /// `epsilon_p` when the factor has the form `1 - epsilon_p/p`.
    pub epsilon: Option<i8>,
    pub u_inverse_at_1: f64,
    pub determined: bool,
    pub rule: FudgeRule,
}

impl FudgeFactor {
    fn from_epsilon(p: u64, eps: i8, determined: bool, rule: FudgeRule) -> Self {
        let u = 1.0 - eps as f64 / p as f64;
        FudgeFactor {
            p,
            epsilon: Some(eps),
            u_inverse_at_1: u,
            determined,
            rule,
        }
    }
}

fn divides(p: u64, k: u32, x: &BigInt) -> bool {
    let m = BigInt::from(p).pow(k);
    x.is_zero() || x.mod_floor(&m).is_zero()
}

// p^2 | c6 and p || c4
fn c_conditions(inv: &Invariants, p: u64) -> bool {
    divides(p, 2, &inv.c6) && divides(p, 1, &inv.c4) && !divides(p, 2, &inv.c4)
}

fn check_square_divides(p: u64, conductor: u64) -> Result<()> {
    if conductor % (p * p) != 0 {
        return domain(format!(
            "p^2 does not divide N for p = {p}, N = {conductor}"
        ));
    }
    Ok(())
}

/// `epsilon_p` for a twist-minimal curve at a prime `p >= 5` with `p^2 | N`.
/// Undecided cases fall back to `+1`, the smallest factor.
pub fn epsilon_p(inv: &Invariants, p: u64, conductor: u64) -> Result<FudgeFactor> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p < 5 {
        return domain(format!("p = {p} uses the dedicated rule for 2 and 3"));
    }
    check_square_divides(p, conductor)?;
    let f = match p % 12 {
        1 => FudgeFactor::from_epsilon(p, 1, true, FudgeRule::OneMod12),
        11 => FudgeFactor::from_epsilon(p, -1, true, FudgeRule::ElevenMod12),
        5 if c_conditions(inv, p) => FudgeFactor::from_epsilon(p, 1, true, FudgeRule::FiveMod12),
        7 if c_conditions(inv, p) => FudgeFactor::from_epsilon(p, -1, true, FudgeRule::SevenMod12),
        _ => FudgeFactor::from_epsilon(p, 1, false, FudgeRule::Fallback),
    };
    Ok(f)
}

/// Factors at 2 and 3: `2/3` at 3; at 2, `1/2` when `2^8 || N`, otherwise `5/8`.
pub fn u_p_special(p: u64, conductor: u64) -> Result<FudgeFactor> {
    check_square_divides(p, conductor)?;
    match p {
        3 => Ok(FudgeFactor::from_epsilon(3, 1, false, FudgeRule::Three)),
        2 if valuation(conductor, 2) == 8 => {
            Ok(FudgeFactor::from_epsilon(2, 1, true, FudgeRule::TwoExact8))
        }
        2 => Ok(FudgeFactor {
            p: 2,
            epsilon: None,
            u_inverse_at_1: 5.0 / 8.0,
            determined: false,
            rule: FudgeRule::TwoOther,
        }),
        _ => domain(format!("u_p_special handles p = 2, 3 only, got {p}")),
    }
}

fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Lower bound at a prime where the curve is not twist-minimal: the least of
/// `(p-1)(p+1-a)(p+1+a)/p^3` over `|a| <= 2 sqrt p`, which is below `1 - 1/p`.
pub fn non_minimal_factor(p: u64) -> FudgeFactor {
    let a = isqrt(4 * p) as f64;
    let pf = p as f64;
    let u = (pf - 1.0) * ((pf + 1.0).powi(2) - a * a) / pf.powi(3);
    FudgeFactor {
        p,
        epsilon: None,
        u_inverse_at_1: u,
        determined: false,
        rule: FudgeRule::NonMinimal,
    }
}

/// One factor for every prime with `p^2 | N`.
pub fn fudge_factors(
    inv: &Invariants,
    conductor: u64,
    twist_minimal: bool,
) -> Result<Vec<FudgeFactor>> {
    factorize(conductor)
        .into_iter()
        .filter(|&(_, e)| e >= 2)
        .map(|(p, _)| match p {
            2 => u_p_special(2, conductor),
            _ if !twist_minimal => Ok(non_minimal_factor(p)),
            3 => u_p_special(3, conductor),
            _ => epsilon_p(inv, p, conductor),
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Reduction {
    Additive,
    Multiplicative,
    Good,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TwistGrowth {
    pub lhs_factor: f64,
    pub rhs_factor: f64,
    pub ok: bool,
}

/// Growth of the degree versus the growth of `N^{7/6}`-type right sides when
/// twisting by an odd prime `p`.
pub fn twist_growth_check(p: u64, a_p: i64, reduction: Reduction) -> Result<TwistGrowth> {
    if p < 3 || !is_prime(p) {
        return domain(format!("twist growth needs an odd prime, got {p}"));
    }
    let pf = p as f64;
    let (lhs, rhs) = match reduction {
        Reduction::Additive => (pf, 1.0),
        Reduction::Multiplicative => (pf * pf - 1.0, pf.powf(7.0 / 6.0)),
        Reduction::Good => {
            if (a_p as i128).pow(2) > 4 * p as i128 {
                return domain(format!(
                    "|a_p| = {} violates the Hasse bound at p = {p}",
                    a_p.abs()
                ));
            }
            let (pi, a) = (p as i128, a_p as i128);
            let exact = (pi - 1) * (pi + 1 - a) * (pi + 1 + a);
            (exact as f64, pf.powf(7.0 / 3.0))
        }
    };
    Ok(TwistGrowth {
        lhs_factor: lhs,
        rhs_factor: rhs,
        ok: lhs >= rhs,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PrimeProductBound {
    /// `sum 1/p + 0.02`.
    pub actual_log_sum: f64,
    /// `0.5 log log(1.02 log N) - 0.33`.
    pub closed_form: f64,
    /// `e^{0.33}/sqrt(0.02 + log log N)`.
    pub multiplier: f64,
    pub holds: bool,
    /// Every prime is `1 mod 3` and at most `1.02 log N`.
    pub hypothesis_ok: bool,
}

/// `e^{0.33}/sqrt(0.02 + log log N)` as a function of `log N`.
pub fn prime_product_multiplier(log_n: f64) -> f64 {
    0.33f64.exp() / (0.02 + log_n.ln()).sqrt()
}

pub fn prime_product_bound(conductor: u64, primes: &[u64]) -> Result<PrimeProductBound> {
    if conductor < MIN_CONDUCTOR {
        return Err(Error::Precondition(format!(
            "N = {conductor} is below {MIN_CONDUCTOR}"
        )));
    }
    let log_n = (conductor as f64).ln();
    let limit = 1.02 * log_n;
    let actual = primes.iter().map(|&p| 1.0 / p as f64).sum::<f64>() + 0.02;
    let closed = 0.5 * limit.ln().ln() - 0.33;
    let hypothesis_ok = primes
        .iter()
        .all(|&p| is_prime(p) && p % 3 == 1 && (p as f64) <= limit);
    Ok(PrimeProductBound {
        actual_log_sum: actual,
        closed_form: closed,
        multiplier: prime_product_multiplier(log_n),
        holds: actual <= closed,
        hypothesis_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::Invariants;

    fn inv(a: [i64; 5]) -> Invariants {
        Invariants::from_a(&a.map(BigInt::from)).unwrap()
    }

    #[test]
    fn congruence_rules() {
        let i = inv([0, 0, 1, -1, 0]);
        let f = epsilon_p(&i, 13, 169).unwrap();
        assert_eq!((f.epsilon, f.determined), (Some(1), true));
        assert!((f.u_inverse_at_1 - 12.0 / 13.0).abs() < 1e-15);
        let f = epsilon_p(&i, 11, 121).unwrap();
        assert_eq!((f.epsilon, f.determined), (Some(-1), true));
        let f = epsilon_p(&i, 5, 25).unwrap();
        assert_eq!((f.epsilon, f.determined), (Some(1), false));
        assert!(epsilon_p(&i, 13, 13).is_err());
        assert!(epsilon_p(&i, 3, 9).is_err());
    }

    #[test]
    fn five_mod_12_condition() {
        // y^2 = x^3 - 5x + 25: c4 = 240 = 5 * 48, c6 = -21600 = -864 * 25
        let i = inv([0, 0, 0, -5, 25]);
        assert!(c_conditions(&i, 5));
        let f = epsilon_p(&i, 5, 25).unwrap();
        assert_eq!((f.epsilon, f.determined), (Some(1), true));
    }

    #[test]
    fn special_primes() {
        assert!((u_p_special(3, 9).unwrap().u_inverse_at_1 - 2.0 / 3.0).abs() < 1e-15);
        assert_eq!(u_p_special(2, 256 * 3).unwrap().u_inverse_at_1, 0.5);
        assert_eq!(u_p_special(2, 16 * 3).unwrap().u_inverse_at_1, 0.625);
        assert!(u_p_special(5, 25).is_err());
        // 5/8 is the p = 2 value of the non-minimal rule
        assert_eq!(non_minimal_factor(2).u_inverse_at_1, 0.625);
    }

    #[test]
    fn growth_examples() {
        let m = twist_growth_check(3, 0, Reduction::Multiplicative).unwrap();
        assert_eq!(m.lhs_factor, 8.0);
        assert!((m.rhs_factor - 3.602_810_865_528).abs() < 1e-9 && m.ok);
        let g = twist_growth_check(3, 3, Reduction::Good).unwrap();
        assert_eq!(g.lhs_factor, 14.0);
        assert!((g.rhs_factor - 12.98).abs() < 1e-2 && g.ok);
        let a = twist_growth_check(5, 0, Reduction::Additive).unwrap();
        assert_eq!((a.lhs_factor, a.rhs_factor, a.ok), (5.0, 1.0, true));
        assert!(twist_growth_check(5, 5, Reduction::Good).is_err());
        assert!(twist_growth_check(2, 0, Reduction::Good).is_err());
    }

    #[test]
    fn prime_product() {
        let b = prime_product_bound(20_000, &[]).unwrap();
        assert!((b.closed_form - 0.089_205_6).abs() < 1e-6);
        assert!((b.multiplier - 0.9147).abs() < 5e-4);
        assert!(b.holds && b.hypothesis_ok);
        let b = prime_product_bound(20_000, &[7]).unwrap();
        assert!(b.hypothesis_ok && !b.holds);
        assert!(!prime_product_bound(20_000, &[13]).unwrap().hypothesis_ok);
        assert!(prime_product_bound(10_000, &[]).is_err());
    }
}
