use serde::Serialize;

use super::DeloneError;
use crate::gifs::{dist, Point};

/// Finite planar point set without repeated points.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PointSet {
    points: Vec<Point>,
}

impl PointSet {
    pub fn new(points: Vec<Point>) -> Result<Self, DeloneError> {
        if let Some(p) = points
            .iter()
            .find(|p| !(p[0].is_finite() && p[1].is_finite()))
        {
            return Err(DeloneError::NonFinite(*p));
        }
        let set = PointSet { points };
        if let Some((i, j, d)) = set.closest_pair() {
            if d == 0.0 {
                return Err(DeloneError::Duplicate {
                    point: set.points[i],
                    index: j,
                });
            }
        }
        Ok(set)
    }

    pub fn empty() -> Self {
        PointSet { points: Vec::new() }
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Points with norm at most `radius`.
    pub fn restricted(&self, radius: f64) -> PointSet {
        PointSet {
            points: self
                .points
                .iter()
                .copied()
                .filter(|p| p[0].hypot(p[1]) <= radius)
                .collect(),
        }
    }

    /// Distance from `q` to the nearest point, `∞` for the empty set.
    pub fn distance_to(&self, q: Point) -> f64 {
        self.points
            .iter()
            .map(|p| dist(*p, q))
            .fold(f64::INFINITY, f64::min)
    }

    /// Indices and distance of a closest pair (sweep over x-sorted points).
    pub fn closest_pair(&self) -> Option<(usize, usize, f64)> {
        let mut order: Vec<usize> = (0..self.points.len()).collect();
        order.sort_by(|&a, &b| self.points[a][0].total_cmp(&self.points[b][0]));
        let mut best: Option<(usize, usize, f64)> = None;
        for (k, &i) in order.iter().enumerate() {
            let p = self.points[i];
            for &j in &order[k + 1..] {
                let q = self.points[j];
                let bound = best.map_or(f64::INFINITY, |b| b.2);
                if q[0] - p[0] > bound {
                    break;
                }
                let d = dist(p, q);
                if d < bound {
                    best = Some((i.min(j), i.max(j), d));
                }
            }
        }
        best
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Discreteness {
    Certified,
    /// Two points closer than `2r`.
    Violation {
        i: usize,
        j: usize,
        distance: f64,
    },
}

impl Discreteness {
    pub fn certified(&self) -> bool {
        matches!(self, Discreteness::Certified)
    }
}

/// Every open `r`-ball holds at most one point iff all distances are `≥ 2r`.
pub fn check_uniform_discrete(ps: &PointSet, r: f64) -> Discreteness {
    match ps.closest_pair() {
        Some((i, j, d)) if d < 2.0 * r => Discreteness::Violation { i, j, distance: d },
        _ => Discreteness::Certified,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn duplicates_rejected() {
        assert!(PointSet::new(vec![[0.0, 0.0], [1.0, 0.0], [0.0, 0.0]]).is_err());
        assert!(PointSet::new(vec![[f64::NAN, 0.0]]).is_err());
    }

    #[test]
    fn open_ball_boundary() {
        let ps = PointSet::new(vec![[0.0, 0.0], [0.3, 0.0]]).unwrap();
        assert!(check_uniform_discrete(&ps, 0.15).certified());
        assert!(!check_uniform_discrete(&ps, 0.151).certified());
    }

    #[test]
    fn closest_pair_matches_brute_force() {
        let pts: Vec<Point> = (0..60)
            .map(|k| {
                let k = k as f64;
                [
                    (k * 0.618_034).fract() * 10.0,
                    (k * 0.414_213_5).fract() * 7.0,
                ]
            })
            .collect();
        let ps = PointSet::new(pts.clone()).unwrap();
        let mut brute = f64::INFINITY;
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                brute = brute.min(dist(pts[i], pts[j]));
            }
        }
        assert_eq!(ps.closest_pair().unwrap().2, brute);
    }
}
