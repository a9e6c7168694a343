use serde::Serialize;

use super::points::PointSet;

/// `A ∩ B(0, 1/ε) ⊆ B + B̄(0, ε)`.
fn one_sided(a: &PointSet, b: &PointSet, eps: f64) -> bool {
    a.points().iter().all(|p| {
        let norm = p[0].hypot(p[1]);
        norm * eps >= 1.0 || b.distance_to(*p) <= eps
    })
}

/// The symmetric window predicate, monotone in `ε`.
pub fn within(a: &PointSet, b: &PointSet, eps: f64) -> bool {
    one_sided(a, b, eps) && one_sided(b, a, eps)
}

/// Chabauty–Fell distance by bisection on `ε ∈ [0, 1]`; the returned value
/// is at most `tol` above the infimum.
pub fn chabauty_fell_distance(a: &PointSet, b: &PointSet, tol: f64) -> f64 {
    if within(a, b, 0.0) {
        return 0.0;
    }
    if !within(a, b, 1.0) {
        return 1.0;
    }
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    while hi - lo > tol {
        let m = 0.5 * (lo + hi);
        if within(a, b, m) {
            hi = m;
        } else {
            lo = m;
        }
    }
    hi
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RestrictedDistance {
    pub radius: f64,
    pub points: usize,
    pub distance: f64,
    pub bound: f64,
    pub ok: bool,
}

/// `d(A, A ∩ B̄(0, R))` for each radius, against the bound `max(tol, 1/R)`.
pub fn restricted_convergence_check(
    a: &PointSet,
    radii: &[f64],
    tol: f64,
) -> Vec<RestrictedDistance> {
    radii
        .iter()
        .map(|&radius| {
            let sub = a.restricted(radius);
            let distance = chabauty_fell_distance(a, &sub, tol);
            let bound = tol.max(1.0 / radius);
            RestrictedDistance {
                radius,
                points: sub.len(),
                distance,
                bound,
                ok: distance <= bound + tol,
            }
        })
        .collect()
}
