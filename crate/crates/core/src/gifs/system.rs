use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::similitude::{Point, Similitude};
use super::GifsError;

pub const ANGLE_SUM_TOL: f64 = 1e-12;

/// Interior angles of the scalene prototile, in radians.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Angles {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl Angles {
    pub fn new(alpha: f64, beta: f64, gamma: f64) -> Result<Self, GifsError> {
        let a = Angles { alpha, beta, gamma };
        a.validate()?;
        Ok(a)
    }

    pub fn validate(&self) -> Result<(), GifsError> {
        let ok = [self.alpha, self.beta, self.gamma]
            .iter()
            .all(|v| v.is_finite() && *v > 0.0)
            && (self.alpha + self.beta + self.gamma - PI).abs() <= ANGLE_SUM_TOL
            && self.gamma < PI / 2.0;
        if ok {
            Ok(())
        } else {
            Err(GifsError::InvalidAngles(*self))
        }
    }

    /// α = (2−√3)π, β = γ = (√3−1)π/2.
    pub fn optimal1() -> Self {
        let r3 = 3f64.sqrt();
        let beta = (r3 - 1.0) * PI / 2.0;
        Angles {
            alpha: PI - 2.0 * beta,
            beta,
            gamma: beta,
        }
    }

    /// α = (√2−1)π, β = γ = (2−√2)π/2.
    pub fn optimal2() -> Self {
        let r2 = 2f64.sqrt();
        let beta = (2.0 - r2) * PI / 2.0;
        Angles {
            alpha: PI - 2.0 * beta,
            beta,
            gamma: beta,
        }
    }

    pub fn equilateral() -> Self {
        Angles {
            alpha: PI / 3.0,
            beta: PI / 3.0,
            gamma: PI / 3.0,
        }
    }
}

impl fmt::Display for Angles {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.alpha, self.beta, self.gamma)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DerivedConstants {
    pub s: f64,
    pub t: f64,
    pub u: f64,
    pub c: f64,
    pub a: f64,
    pub b: f64,
    /// The second printed expression for `u`, kept for comparison only.
    pub u_alternate: f64,
}

impl DerivedConstants {
    pub fn u_discrepancy(&self) -> f64 {
        (self.u - self.u_alternate).abs()
    }
}

pub fn derive_constants(angles: &Angles) -> Result<DerivedConstants, GifsError> {
    angles.validate()?;
    let Angles { alpha, beta, gamma } = *angles;
    let (sa, sb, sg, cg) = (alpha.sin(), beta.sin(), gamma.sin(), gamma.cos());
    let cot_g = cg / sg;
    let s = sb / sg;
    let t = sa / sb;
    let u = 2.0 * s * t * t * cg;
    let k = 1.0 + t * t;
    let c = 2.0 * k * k * sa * cot_g / (t * (s * t + u) * (1.0 + 2.0 * t * cg));
    let a = (2.0 / (s * sa)).sqrt() / k;
    let b = 2.0 * (cot_g / (s * t * (s * t + u) * (2.0 * t * cg + 1.0))).sqrt();
    let u_alternate = 2.0 * sg * sg / (sb * gamma.tan());
    let out = DerivedConstants {
        s,
        t,
        u,
        c,
        a,
        b,
        u_alternate,
    };
    if [s, t, u, c, a, b].iter().all(|v| v.is_finite() && *v > 0.0) {
        Ok(out)
    } else {
        Err(GifsError::InvalidAngles(*angles))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TileKind {
    Scalene = 1,
    Isosceles = 2,
}

impl TileKind {
    pub fn index(self) -> usize {
        self as usize - 1
    }

    pub fn from_number(n: u8) -> Option<TileKind> {
        match n {
            1 => Some(TileKind::Scalene),
            2 => Some(TileKind::Isosceles),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Prototile {
    pub kind: TileKind,
    pub vertices: [Point; 3],
    pub centroid: Point,
    /// Distance from the centroid to the nearest side.
    pub inner_radius: f64,
    /// Distance from the centroid to the farthest vertex.
    pub outer_radius: f64,
}

impl Prototile {
    fn from_vertices(kind: TileKind, vertices: [Point; 3]) -> Self {
        let centroid = [
            (vertices[0][0] + vertices[1][0] + vertices[2][0]) / 3.0,
            (vertices[0][1] + vertices[1][1] + vertices[2][1]) / 3.0,
        ];
        let inner_radius = triangle_depth(&vertices, centroid);
        let outer_radius = vertices
            .iter()
            .map(|v| dist(*v, centroid))
            .fold(0.0, f64::max);
        Prototile {
            kind,
            vertices,
            centroid,
            inner_radius,
            outer_radius,
        }
    }

    pub fn area(&self) -> f64 {
        triangle_area(&self.vertices)
    }
}

pub fn dist(a: Point, b: Point) -> f64 {
    (a[0] - b[0]).hypot(a[1] - b[1])
}

pub fn triangle_area(v: &[Point; 3]) -> f64 {
    0.5 * ((v[1][0] - v[0][0]) * (v[2][1] - v[0][1]) - (v[2][0] - v[0][0]) * (v[1][1] - v[0][1]))
        .abs()
}

/// Signed distance from `p` to the boundary of the triangle, positive inside.
pub fn triangle_depth(v: &[Point; 3], p: Point) -> f64 {
    let orient =
        (v[1][0] - v[0][0]) * (v[2][1] - v[0][1]) - (v[2][0] - v[0][0]) * (v[1][1] - v[0][1]);
    let sign = orient.signum();
    (0..3)
        .map(|i| {
            let (a, b) = (v[i], v[(i + 1) % 3]);
            let cross = (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0]);
            sign * cross / dist(a, b)
        })
        .fold(f64::INFINITY, f64::min)
}

/// Both prototiles at unit area with their bottom-left corner at the origin.
pub fn build_prototiles(angles: &Angles) -> Result<[Prototile; 2], GifsError> {
    angles.validate()?;
    let Angles { alpha, beta, gamma } = *angles;
    // side = k·sin(opposite angle) gives area 1
    let k = (2.0 / (alpha.sin() * beta.sin() * gamma.sin())).sqrt();
    let base = k * gamma.sin();
    let left = k * beta.sin();
    let t1 = [
        [0.0, 0.0],
        [base, 0.0],
        [left * alpha.cos(), left * alpha.sin()],
    ];
    let width = 2.0 * (1.0 / gamma.tan()).sqrt();
    let t2 = [
        [0.0, 0.0],
        [width, 0.0],
        [width / 2.0, width / 2.0 * gamma.tan()],
    ];
    Ok([
        Prototile::from_vertices(TileKind::Scalene, t1),
        Prototile::from_vertices(TileKind::Isosceles, t2),
    ])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MapLabel {
    F1,
    F2,
    F3,
    F4,
    F5,
    G1,
    G2,
    G3,
}

impl MapLabel {
    pub const ALL: [MapLabel; 8] = [
        MapLabel::F1,
        MapLabel::F2,
        MapLabel::F3,
        MapLabel::F4,
        MapLabel::F5,
        MapLabel::G1,
        MapLabel::G2,
        MapLabel::G3,
    ];

    /// Prototile the map is applied to.
    pub fn source(self) -> TileKind {
        match self {
            MapLabel::G1 | MapLabel::G2 | MapLabel::G3 => TileKind::Isosceles,
            _ => TileKind::Scalene,
        }
    }
}

impl fmt::Display for MapLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = format!("{self:?}");
        f.write_str(&s.to_lowercase())
    }
}

/// Edge order of the union equations.
pub fn children_of(kind: TileKind) -> [MapLabel; 4] {
    match kind {
        TileKind::Scalene => [MapLabel::G1, MapLabel::F1, MapLabel::F2, MapLabel::F3],
        TileKind::Isosceles => [MapLabel::G2, MapLabel::G3, MapLabel::F4, MapLabel::F5],
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Gifs {
    pub angles: Angles,
    pub constants: DerivedConstants,
    pub prototiles: [Prototile; 2],
    maps: [Similitude; 8],
}

impl Gifs {
    pub fn map(&self, label: MapLabel) -> &Similitude {
        &self.maps[label as usize]
    }

    pub fn prototile(&self, kind: TileKind) -> &Prototile {
        &self.prototiles[kind.index()]
    }

    /// Smallest squared contraction over all maps.
    pub fn a_min(&self) -> f64 {
        self.maps
            .iter()
            .map(|m| m.scale * m.scale)
            .fold(f64::INFINITY, f64::min)
    }

    /// Centroid ball radius contained in both prototiles.
    pub fn r0(&self) -> f64 {
        self.prototiles[0]
            .inner_radius
            .min(self.prototiles[1].inner_radius)
    }

    /// Centroid ball radius containing both prototiles.
    pub fn big_r0(&self) -> f64 {
        self.prototiles[0]
            .outer_radius
            .max(self.prototiles[1].outer_radius)
    }

    /// Squared contraction of the central map `f3`.
    pub fn epsilon0(&self) -> f64 {
        let t = self.constants.t;
        t * t / ((1.0 + t * t) * (1.0 + t * t))
    }
}

/// The eight similitudes, without validation.
pub fn gifs_maps(angles: &Angles) -> Result<Gifs, GifsError> {
    let k = derive_constants(angles)?;
    let prototiles = build_prototiles(angles)?;
    let DerivedConstants {
        s, t, u, c, a, b, ..
    } = k;
    let Angles { alpha, beta, gamma } = *angles;
    let q = 1.0 + t * t;
    let rc = c.sqrt();
    let apex = [a + a * t * gamma.cos(), a * t * gamma.sin()];
    let f4_origin = [b * u, 0.0];
    let mut maps = [Similitude::IDENTITY; 8];
    maps[MapLabel::F1 as usize] = Similitude::new(1.0 / q, 0.0, false, [0.0, 0.0]);
    maps[MapLabel::F2 as usize] = Similitude::new(t / (s * q), PI - beta, true, apex);
    maps[MapLabel::F3 as usize] = Similitude::new(t / q, gamma, false, [a, 0.0]);
    maps[MapLabel::F4 as usize] = Similitude::new(rc * t / q, alpha + PI, true, f4_origin);
    maps[MapLabel::F5 as usize] = Similitude::new(
        rc * t / q,
        alpha,
        true,
        [b * u + b * t * alpha.cos(), b * t * alpha.sin()],
    );
    maps[MapLabel::G1 as usize] = Similitude::new(u / (rc * (s * t + u)), PI - beta, false, apex);
    maps[MapLabel::G2 as usize] = Similitude::new(u / (s * t + u), 0.0, false, [0.0, 0.0]);
    maps[MapLabel::G3 as usize] = Similitude::new(
        s * t / (s * t + u),
        0.0,
        false,
        [b * s * t * t * gamma.cos(), b * s * t * t * gamma.sin()],
    );
    Ok(Gifs {
        angles: *angles,
        constants: k,
        prototiles,
        maps,
    })
}

/// Geometric defects of the two union equations.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ClosureReport {
    /// `|Σ scale² − 1|` per parent kind.
    pub area_defect: [f64; 2],
    /// Largest distance by which a child vertex leaves its parent.
    pub containment_defect: f64,
    /// Sample points lying in the interior of two children.
    pub overlap_samples: usize,
    /// Sample points (inside the parent) covered by no child.
    pub uncovered_samples: usize,
    pub samples: usize,
}

pub const AREA_TOL: f64 = 1e-12;
pub const GEOM_TOL: f64 = 1e-9;

impl ClosureReport {
    pub fn max_defect(&self) -> f64 {
        self.area_defect[0]
            .max(self.area_defect[1])
            .max(self.containment_defect)
    }

    pub fn ok(&self) -> bool {
        self.area_defect.iter().all(|d| *d <= AREA_TOL)
            && self.containment_defect <= GEOM_TOL
            && self.overlap_samples == 0
            && self.uncovered_samples == 0
    }
}

/// Barycentric lattice of interior sample points, about `n²/2` of them.
fn lattice_samples(v: &[Point; 3], n: usize) -> Vec<Point> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n - i {
            let (a, b) = (
                (i as f64 + 1.0 / 3.0) / n as f64,
                (j as f64 + 1.0 / 3.0) / n as f64,
            );
            out.push([
                v[0][0] + a * (v[1][0] - v[0][0]) + b * (v[2][0] - v[0][0]),
                v[0][1] + a * (v[1][1] - v[0][1]) + b * (v[2][1] - v[0][1]),
            ]);
        }
    }
    out
}

fn image(gifs: &Gifs, label: MapLabel) -> [Point; 3] {
    let m = gifs.map(label);
    gifs.prototile(label.source()).vertices.map(|p| m.apply(p))
}

/// Checks both union equations with `samples_per_parent` lattice points each.
pub fn closure_report(gifs: &Gifs, samples_per_parent: usize) -> ClosureReport {
    let n = ((2 * samples_per_parent) as f64).sqrt().ceil() as usize;
    let mut report = ClosureReport {
        area_defect: [0.0; 2],
        containment_defect: 0.0,
        overlap_samples: 0,
        uncovered_samples: 0,
        samples: 0,
    };
    for kind in [TileKind::Scalene, TileKind::Isosceles] {
        let parent = gifs.prototile(kind).vertices;
        let labels = children_of(kind);
        let area: f64 = labels.iter().map(|&l| gifs.map(l).scale.powi(2)).sum();
        report.area_defect[kind.index()] = (area - 1.0).abs();
        let kids: Vec<[Point; 3]> = labels.iter().map(|&l| image(gifs, l)).collect();
        for kid in &kids {
            for &p in kid {
                report.containment_defect =
                    report.containment_defect.max(-triangle_depth(&parent, p));
            }
        }
        for p in lattice_samples(&parent, n) {
            report.samples += 1;
            let depths: Vec<f64> = kids.iter().map(|k| triangle_depth(k, p)).collect();
            if depths.iter().filter(|&&d| d > GEOM_TOL).count() > 1 {
                report.overlap_samples += 1;
            }
            if depths.iter().all(|&d| d < -GEOM_TOL) {
                report.uncovered_samples += 1;
            }
        }
    }
    report
}

pub const VALIDATION_SAMPLES: usize = 10_000;

/// Builds the GIFS and rejects angle triples where the union equations fail.
pub fn build_gifs(angles: &Angles) -> Result<Gifs, GifsError> {
    let gifs = gifs_maps(angles)?;
    let report = closure_report(&gifs, VALIDATION_SAMPLES);
    if report.ok() {
        Ok(gifs)
    } else {
        Err(GifsError::ClosureDefect {
            max_defect: report.max_defect(),
            overlaps: report.overlap_samples,
        })
    }
}
