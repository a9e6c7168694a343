use std::f64::consts::{PI, TAU};

use serde::Serialize;

use super::points::PointSet;
use super::DeloneError;
use crate::gifs::{dist, Point};

/// Relative slack on `R` for floating-point ties at tile vertices.
pub const COVER_TOL: f64 = 1e-9;

/// Region on which relative denseness is checked.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Region {
    Disk {
        center: Point,
        radius: f64,
    },
    /// Union of closed triangles.
    Triangles(Vec<[Point; 3]>),
}

/// Convex piece of a region.
#[derive(Clone, Copy, Debug)]
enum Piece {
    Tri([Point; 3]),
    /// Annular sector `{center + ρ·e^{iθ}: ρ ∈ [r1, r2], θ ∈ [t1, t2]}`.
    Sector {
        center: Point,
        r1: f64,
        r2: f64,
        t1: f64,
        t2: f64,
    },
}

fn polar(c: Point, r: f64, t: f64) -> Point {
    [c[0] + r * t.cos(), c[1] + r * t.sin()]
}

fn mid(a: Point, b: Point) -> Point {
    [(a[0] + b[0]) / 2.0, (a[1] + b[1]) / 2.0]
}

impl Piece {
    /// Boundary points of the piece that belong to the region.
    fn corners(&self) -> Vec<Point> {
        match *self {
            Piece::Tri(v) => v.to_vec(),
            Piece::Sector {
                center,
                r1,
                r2,
                t1,
                t2,
            } => vec![
                polar(center, r1, t1),
                polar(center, r1, t2),
                polar(center, r2, t1),
                polar(center, r2, t2),
            ],
        }
    }

    /// Largest distance from `p` to a point of the piece.
    fn farthest(&self, p: Point) -> f64 {
        let mut far = self
            .corners()
            .into_iter()
            .map(|q| dist(p, q))
            .fold(0.0, f64::max);
        if let Piece::Sector {
            center, r2, t1, t2, ..
        } = *self
        {
            // the outer arc may bulge past its endpoints
            let away = (center[1] - p[1]).atan2(center[0] - p[0]);
            let off = (away - t1).rem_euclid(TAU);
            if off <= t2 - t1 {
                far = far.max(dist(p, center) + r2);
            }
        }
        far
    }

    fn diameter(&self) -> f64 {
        match *self {
            Piece::Tri([a, b, c]) => dist(a, b).max(dist(b, c)).max(dist(a, c)),
            Piece::Sector { r1, r2, t1, t2, .. } => (r2 - r1) + r2 * (t2 - t1).min(PI),
        }
    }

    fn split(&self) -> Vec<Piece> {
        match *self {
            Piece::Tri([a, b, c]) => {
                let (ab, bc, ca) = (mid(a, b), mid(b, c), mid(c, a));
                vec![
                    Piece::Tri([a, ab, ca]),
                    Piece::Tri([ab, b, bc]),
                    Piece::Tri([ca, bc, c]),
                    Piece::Tri([ab, bc, ca]),
                ]
            }
            Piece::Sector {
                center,
                r1,
                r2,
                t1,
                t2,
            } => {
                let (rm, tm) = ((r1 + r2) / 2.0, (t1 + t2) / 2.0);
                let mut out = Vec::with_capacity(4);
                for (a, b) in [(r1, rm), (rm, r2)] {
                    for (s, e) in [(t1, tm), (tm, t2)] {
                        out.push(Piece::Sector {
                            center,
                            r1: a,
                            r2: b,
                            t1: s,
                            t2: e,
                        });
                    }
                }
                out
            }
        }
    }
}

impl Region {
    fn pieces(&self) -> Vec<Piece> {
        match self {
            Region::Disk { center, radius } => (0..8)
                .map(|k| Piece::Sector {
                    center: *center,
                    r1: 0.0,
                    r2: *radius,
                    t1: k as f64 * PI / 4.0,
                    t2: (k + 1) as f64 * PI / 4.0,
                })
                .collect(),
            Region::Triangles(ts) => ts.iter().map(|t| Piece::Tri(*t)).collect(),
        }
    }

    fn is_empty(&self) -> bool {
        match self {
            Region::Disk { radius, .. } => radius.is_nan() || *radius < 0.0,
            Region::Triangles(ts) => ts.is_empty(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Covering {
    /// Every closed `R`-ball centred in the region meets the set.
    Certified { pieces: usize },
    /// A region point farther than `R` from every point.
    Counterexample { point: Point, distance: f64 },
    /// Pieces of diameter below the step that could not be decided.
    Inconclusive { unresolved: usize },
}

impl Covering {
    pub fn certified(&self) -> bool {
        matches!(self, Covering::Certified { .. })
    }
}

/// Refines the region into convex pieces until each piece lies in a single
/// closed `R`-ball around a point of `ps` (distance to a convex piece is
/// maximized at its extreme points), a region point with no point within
/// `R` turns up, or pieces get smaller than `h`.
pub fn check_relatively_dense(
    ps: &PointSet,
    r_cover: f64,
    region: &Region,
    h: f64,
) -> Result<Covering, DeloneError> {
    if r_cover.is_nan() || r_cover <= 0.0 {
        return Err(DeloneError::NonPositive("R", r_cover));
    }
    if h.is_nan() || h <= 0.0 {
        return Err(DeloneError::NonPositive("h", h));
    }
    if region.is_empty() {
        return Err(DeloneError::EmptyRegion);
    }
    let limit = r_cover * (1.0 + COVER_TOL);
    let mut stack = region.pieces();
    let mut done = 0usize;
    let mut unresolved = 0usize;
    while let Some(piece) = stack.pop() {
        let corners = piece.corners();
        let anchor = corners[0];
        let reach = limit + piece.diameter();
        let covered = ps
            .points()
            .iter()
            .filter(|p| dist(**p, anchor) <= reach)
            .any(|p| piece.farthest(*p) <= limit);
        if covered {
            done += 1;
            continue;
        }
        for q in corners {
            let d = ps.distance_to(q);
            if d > limit {
                return Ok(Covering::Counterexample {
                    point: q,
                    distance: d,
                });
            }
        }
        if piece.diameter() < h {
            unresolved += 1;
        } else {
            stack.extend(piece.split());
        }
    }
    Ok(if unresolved == 0 {
        Covering::Certified { pieces: done }
    } else {
        Covering::Inconclusive { unresolved }
    })
}
