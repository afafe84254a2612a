//! Cosine polynomials and the optimal weight for the cubic/sextic case.

use num_rational::Rational64;
use num_traits::{Num, ToPrimitive};

/// `sum_k coeffs[k] cos(k theta)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CosinePoly<T>(pub Vec<T>);

impl<T: Num + Clone> CosinePoly<T> {
    pub fn constant(c: T) -> Self {
        CosinePoly(vec![c])
    }

    /// `a + b cos(theta)`.
    pub fn linear(a: T, b: T) -> Self {
        CosinePoly(vec![a, b])
    }

    /// Product via `cos(j t) cos(k t) = (cos((j+k) t) + cos((j-k) t)) / 2`.
    pub fn mul(&self, other: &Self) -> Self {
        let two = T::one() + T::one();
        let len = self.0.len() + other.0.len() - 1;
        let mut out = vec![T::zero(); len];
        for (j, a) in self.0.iter().enumerate() {
            for (k, b) in other.0.iter().enumerate() {
                let ab = a.clone() * b.clone();
                if j == 0 || k == 0 {
                    out[j + k] = out[j + k].clone() + ab;
                } else {
                    let half = ab / two.clone();
                    out[j + k] = out[j + k].clone() + half.clone();
                    let d = j.abs_diff(k);
                    out[d] = out[d].clone() + half;
                }
            }
        }
        CosinePoly(out)
    }
}

impl<T: ToPrimitive> CosinePoly<T> {
    pub fn eval(&self, theta: f64) -> f64 {
        self.0
            .iter()
            .enumerate()
            .map(|(k, c)| c.to_f64().unwrap_or(f64::NAN) * (k as f64 * theta).cos())
            .sum()
    }

    /// Minimum over `n` equally spaced points of `[0, 2 pi)`.
    pub fn min_on_grid(&self, n: usize) -> f64 {
        (0..n)
            .map(|i| self.eval(2.0 * std::f64::consts::PI * i as f64 / n as f64))
            .fold(f64::INFINITY, f64::min)
    }
}

/// `(1 + cos t)(1 + beta cos t)^2` in the cosine basis.
pub fn weight_family<T: Num + Clone>(beta: T) -> CosinePoly<T> {
    let one = CosinePoly::linear(T::one(), T::one());
    let f = CosinePoly::linear(T::one(), beta);
    one.mul(&f).mul(&f)
}

/// Exact coefficients of `(1 + cos t)(1 + beta cos t)^2` on
/// `{1, cos t, cos 2t, cos 3t}`.
pub fn trig_poly_expand(beta: Rational64) -> [Rational64; 4] {
    let p = weight_family(beta);
    let mut out = [Rational64::from_integer(0); 4];
    for (slot, c) in out.iter_mut().zip(p.0) {
        *slot = c;
    }
    out
}

/// `(1 + sqrt 2 cos t)^2 = 2 + 2 sqrt 2 cos t + cos 2t`.
pub fn gaussian_weight() -> CosinePoly<f64> {
    let f = CosinePoly::linear(1.0, std::f64::consts::SQRT_2);
    f.mul(&f)
}

/// Coefficients of `x^5 - 25x^4 - 4x^3 + 30x^2 + 19x + 3`, constant term first.
pub const QUINTIC: [f64; 6] = [3.0, 19.0, 30.0, -4.0, -25.0, 1.0];

pub fn quintic(x: f64) -> f64 {
    QUINTIC.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct QuinticOptimum {
    /// Smallest positive root.
    pub root: f64,
    pub beta_star: f64,
    pub residual: f64,
    /// Every positive root, increasing.
    pub positive_roots: Vec<f64>,
}

fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let flo = f(lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if (f(mid) > 0.0) == (flo > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Positive roots of the quintic bracketed on a grid over `(0, 32]` (all
/// roots lie below the Cauchy bound `1 + 30 = 31`) and bisected.
/// The weight is twice the smallest one.
pub fn quintic_beta_optimum() -> QuinticOptimum {
    let step = 1.0 / 256.0;
    let mut roots = Vec::new();
    let mut x = step;
    while x < 32.0 {
        let y = x + step;
        if (quintic(x) > 0.0) != (quintic(y) > 0.0) {
            roots.push(bisect(quintic, x, y));
        }
        x = y;
    }
    let root = roots[0];
    QuinticOptimum {
        root,
        beta_star: 2.0 * root,
        residual: quintic(root).abs(),
        positive_roots: roots,
    }
}
