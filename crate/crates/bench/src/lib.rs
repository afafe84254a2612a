//! Shared inputs for the benchmarks.

use moddeg_core::CurveModel;

/// A few curves of both discriminant signs and growing height.
pub fn sample_curves() -> Vec<CurveModel> {
    [
        ([0, -1, 1, -10, -20], 11),
        ([0, 0, 1, -1, 0], 37),
        ([0, 1, 1, -2, 0], 389),
        ([0, 0, 1, -7, 6], 5077),
        ([1, -1, 0, -2, -1], 49),
    ]
    .into_iter()
    .map(|(a, n)| CurveModel::from_i64(a, n).expect("nonsingular sample"))
    .collect()
}
