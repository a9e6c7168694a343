use std::f64::consts::TAU;

use serde::Serialize;

use super::similitude::{Point, Similitude};
use super::system::{children_of, dist, Angles, Gifs, MapLabel, Prototile, TileKind};
use super::GifsError;

/// Relative slack on the stopping rule so tiles of area exactly ε stop.
const TIE_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TileInstance {
    pub kind: TileKind,
    pub transform: Similitude,
    pub depth: usize,
}

impl TileInstance {
    pub fn root(kind: TileKind) -> Self {
        TileInstance {
            kind,
            transform: Similitude::IDENTITY,
            depth: 0,
        }
    }

    pub fn area(&self) -> f64 {
        self.transform.scale * self.transform.scale
    }

    pub fn orientation(&self) -> f64 {
        self.transform.orientation()
    }

    pub fn parity(&self) -> bool {
        self.transform.reflect
    }

    pub fn vertices(&self, proto: &Prototile) -> [Point; 3] {
        proto.vertices.map(|p| self.transform.apply(p))
    }

    pub fn centroid(&self, proto: &Prototile) -> Point {
        self.transform.apply(proto.centroid)
    }
}

/// The four children in union-equation order.
pub fn subdivide(tile: &TileInstance, gifs: &Gifs) -> [TileInstance; 4] {
    children_of(tile.kind).map(|label| child(tile, label, gifs))
}

fn child(tile: &TileInstance, label: MapLabel, gifs: &Gifs) -> TileInstance {
    TileInstance {
        kind: label.source(),
        transform: tile.transform.compose(gifs.map(label)),
        depth: tile.depth + 1,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Patch {
    pub angles: Angles,
    pub epsilon: f64,
    pub inflated: bool,
    pub prototiles: [Prototile; 2],
    pub tiles: Vec<TileInstance>,
}

impl Patch {
    pub fn prototile(&self, kind: TileKind) -> &Prototile {
        &self.prototiles[kind.index()]
    }

    pub fn len(&self) -> usize {
        self.tiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tiles.is_empty()
    }

    pub fn triangles(&self) -> Vec<[Point; 3]> {
        self.tiles
            .iter()
            .map(|t| t.vertices(self.prototile(t.kind)))
            .collect()
    }

    pub fn total_area(&self) -> f64 {
        self.tiles.iter().map(TileInstance::area).sum()
    }

    pub fn area_range(&self) -> (f64, f64) {
        self.tiles.iter().fold((f64::INFINITY, 0.0), |(lo, hi), t| {
            (lo.min(t.area()), hi.max(t.area()))
        })
    }

    /// Axis-aligned bounding box `(min, max)` of all tile vertices.
    pub fn bounds(&self) -> (Point, Point) {
        let mut lo = [f64::INFINITY; 2];
        let mut hi = [f64::NEG_INFINITY; 2];
        for tri in self.triangles() {
            for p in tri {
                for i in 0..2 {
                    lo[i] = lo[i].min(p[i]);
                    hi[i] = hi[i].max(p[i]);
                }
            }
        }
        (lo, hi)
    }

    /// Applies `m` after every tile transform.
    pub fn transformed(&self, m: &Similitude) -> Patch {
        Patch {
            tiles: self
                .tiles
                .iter()
                .map(|t| TileInstance {
                    transform: m.compose(&t.transform),
                    ..*t
                })
                .collect(),
            ..self.clone()
        }
    }
}

/// Subdivides while area > ε, then inflates by `1/√ε` about the origin.
pub fn epsilon_rule(start: TileKind, epsilon: f64, gifs: &Gifs) -> Result<Patch, GifsError> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(GifsError::EpsilonOutOfRange(epsilon));
    }
    let mut tiles = Vec::new();
    let mut stack = vec![(TileInstance::root(start), 1.0f64)];
    let limit = epsilon * (1.0 + TIE_TOL);
    while let Some((tile, area)) = stack.pop() {
        if area > limit {
            for label in children_of(tile.kind).into_iter().rev() {
                let s = gifs.map(label).scale;
                stack.push((child(&tile, label, gifs), area * s * s));
            }
        } else {
            tiles.push(tile);
        }
    }
    let factor = 1.0 / epsilon.sqrt();
    for t in &mut tiles {
        t.transform = t.transform.dilated(factor);
    }
    Ok(Patch {
        angles: gifs.angles,
        epsilon,
        inflated: true,
        prototiles: gifs.prototiles,
        tiles,
    })
}

/// Centroid image of every tile, in tile order.
pub fn point_set(patch: &Patch) -> Vec<Point> {
    patch
        .tiles
        .iter()
        .map(|t| t.centroid(patch.prototile(t.kind)))
        .collect()
}

/// `(orientation mod 2π, reflected)` per tile.
pub fn orientation_angles(patch: &Patch) -> Vec<(f64, bool)> {
    patch
        .tiles
        .iter()
        .map(|t| (t.orientation(), t.parity()))
        .collect()
}

pub const MAX_STATIONARY_STEPS: usize = 6;
pub const NESTING_TOL: f64 = 1e-6;

/// `P_0, …, P_n` where `P_k` is the ε₀ᵏ-rule patch of the scalene tile
/// placed by `f3⁻ᵏ`: inflation by `ε₀^{-k/2}` and rotation by `−kγ` about
/// the fixed point of `f3`.
pub fn stationary_sequence(gifs: &Gifs, n: usize) -> Result<Vec<Patch>, GifsError> {
    if n > MAX_STATIONARY_STEPS {
        return Err(GifsError::TooManySteps {
            n,
            max: MAX_STATIONARY_STEPS,
        });
    }
    let eps0 = gifs.epsilon0();
    let back = gifs.map(MapLabel::F3).inverse();
    let mut place = Similitude::IDENTITY;
    let mut out = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let eps = eps0.powi(k as i32);
        let patch = if k == 0 {
            Patch {
                angles: gifs.angles,
                epsilon: 1.0,
                inflated: true,
                prototiles: gifs.prototiles,
                tiles: vec![TileInstance::root(TileKind::Scalene)],
            }
        } else {
            let mut p = epsilon_rule(TileKind::Scalene, eps, gifs)?;
            for t in &mut p.tiles {
                t.transform = place.compose(&t.transform.dilated(eps.sqrt()));
            }
            p
        };
        out.push(patch);
        place = back.compose(&place);
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct NestingReport {
    pub matched: usize,
    pub total: usize,
    /// Largest centroid distance over matched tiles.
    pub max_offset: f64,
}

impl NestingReport {
    pub fn complete(&self) -> bool {
        self.matched == self.total
    }
}

fn angle_gap(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(TAU);
    d.min(TAU - d)
}

/// For every tile of `inner`, the index of a tile of `outer` with the same
/// kind, parity, orientation and scale whose centroid lies within `tol`.
pub fn match_tiles(inner: &Patch, outer: &Patch, tol: f64) -> Vec<Option<(usize, f64)>> {
    let mut index: Vec<(f64, usize)> = outer
        .tiles
        .iter()
        .enumerate()
        .map(|(i, t)| (t.centroid(outer.prototile(t.kind))[0], i))
        .collect();
    index.sort_by(|a, b| a.0.total_cmp(&b.0));
    inner
        .tiles
        .iter()
        .map(|t| {
            let c = t.centroid(inner.prototile(t.kind));
            let start = index.partition_point(|(x, _)| *x < c[0] - tol);
            index[start..]
                .iter()
                .take_while(|(x, _)| *x <= c[0] + tol)
                .filter_map(|&(_, i)| {
                    let o = &outer.tiles[i];
                    let same = o.kind == t.kind
                        && o.parity() == t.parity()
                        && angle_gap(o.orientation(), t.orientation()) <= tol
                        && (o.transform.scale - t.transform.scale).abs() <= tol * t.transform.scale;
                    let d = dist(o.centroid(outer.prototile(o.kind)), c);
                    (same && d <= tol).then_some((i, d))
                })
                .min_by(|a, b| a.1.total_cmp(&b.1))
        })
        .collect()
}

pub fn nesting_report(inner: &Patch, outer: &Patch, tol: f64) -> NestingReport {
    let matches = match_tiles(inner, outer, tol);
    NestingReport {
        matched: matches.iter().flatten().count(),
        total: inner.len(),
        max_offset: matches.iter().flatten().map(|m| m.1).fold(0.0, f64::max),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gifs::{build_gifs, triangle_depth};

    fn opt1() -> Gifs {
        build_gifs(&Angles::optimal1()).unwrap()
    }

    #[test]
    fn children_kinds() {
        let g = opt1();
        let k1: Vec<u8> = subdivide(&TileInstance::root(TileKind::Scalene), &g)
            .iter()
            .map(|t| t.kind as u8)
            .collect();
        assert_eq!(k1, vec![2, 1, 1, 1]);
        let kids = subdivide(&TileInstance::root(TileKind::Isosceles), &g);
        let k2: Vec<u8> = kids.iter().map(|t| t.kind as u8).collect();
        assert_eq!(k2, vec![2, 2, 1, 1]);
        let area: f64 = kids.iter().map(TileInstance::area).sum();
        assert!((area - 1.0).abs() < 1e-12);
        assert!(kids.iter().all(|t| t.depth == 1));
    }

    #[test]
    fn epsilon_window() {
        let g = opt1();
        let p = epsilon_rule(TileKind::Scalene, 0.2, &g).unwrap();
        let (lo, hi) = p.area_range();
        assert!(lo >= g.a_min() - 1e-12 && hi <= 1.0 + 1e-12);
        let n = p.len() as f64;
        assert!((p.total_area() - 5.0).abs() < 1e-9 * n);
        assert!(n >= 5.0 && n <= 5.0 / g.a_min());
        assert!(epsilon_rule(TileKind::Scalene, 1.0, &g).is_err());
        assert!(epsilon_rule(TileKind::Scalene, 0.0, &g).is_err());
    }

    #[test]
    fn points_inside_tiles() {
        let g = opt1();
        let p = epsilon_rule(TileKind::Isosceles, 0.05, &g).unwrap();
        let pts = point_set(&p);
        assert_eq!(pts.len(), p.len());
        for (tri, c) in p.triangles().iter().zip(&pts) {
            assert!(triangle_depth(tri, *c) > 0.0);
        }
    }

    #[test]
    fn stationary_nests() {
        let g = opt1();
        let seq = stationary_sequence(&g, 3).unwrap();
        assert_eq!(seq[0].len(), 1);
        for k in 1..seq.len() {
            let r = nesting_report(&seq[k - 1], &seq[k], NESTING_TOL);
            assert!(r.complete(), "k={k} {r:?}");
        }
        assert!(stationary_sequence(&g, 7).is_err());
    }

    #[test]
    fn root_orientation() {
        let g = opt1();
        let p = Patch {
            angles: g.angles,
            epsilon: 1.0,
            inflated: true,
            prototiles: g.prototiles,
            tiles: vec![TileInstance::root(TileKind::Scalene)],
        };
        assert_eq!(orientation_angles(&p), vec![(0.0, false)]);
    }
}
