//! Presets and patch exporters (JSON, CSV, SVG).

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gifs::{
    build_prototiles, point_set, Angles, GifsError, Patch, Point, Similitude, TileInstance,
    TileKind,
};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("unknown preset {0:?}")]
    UnknownPreset(String),
    #[error("malformed angle triple {0:?}")]
    BadAngles(String),
    #[error("unknown tile kind {0}")]
    BadKind(u8),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Gifs(#[from] GifsError),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Preset {
    Optimal1,
    Optimal2,
    Equilateral,
    Custom(Angles),
}

impl Preset {
    pub fn name(&self) -> &'static str {
        match self {
            Preset::Optimal1 => "optimal1",
            Preset::Optimal2 => "optimal2",
            Preset::Equilateral => "equilateral",
            Preset::Custom(_) => "custom",
        }
    }

    pub fn angles(&self) -> Angles {
        match self {
            Preset::Optimal1 => Angles::optimal1(),
            Preset::Optimal2 => Angles::optimal2(),
            Preset::Equilateral => Angles::equilateral(),
            Preset::Custom(a) => *a,
        }
    }
}

impl FromStr for Preset {
    type Err = IoError;

    fn from_str(s: &str) -> Result<Self, IoError> {
        match s.trim() {
            "optimal1" => Ok(Preset::Optimal1),
            "optimal2" => Ok(Preset::Optimal2),
            "equilateral" => Ok(Preset::Equilateral),
            other => Err(IoError::UnknownPreset(other.to_string())),
        }
    }
}

/// Parses `alpha,beta,gamma` in radians.
pub fn parse_angles(s: &str) -> Result<Angles, IoError> {
    let parts: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| IoError::BadAngles(s.to_string()))?;
    match parts[..] {
        [a, b, c] => Ok(Angles::new(a, b, c)?),
        _ => Err(IoError::BadAngles(s.to_string())),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
struct TileRecord {
    kind: u8,
    scale: f64,
    rotation: f64,
    reflect: bool,
    translation: Point,
    depth: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
struct PatchRecord {
    epsilon: f64,
    angles: [f64; 3],
    tiles: Vec<TileRecord>,
    points: Vec<Point>,
}

pub fn patch_to_json(patch: &Patch) -> String {
    let rec = PatchRecord {
        epsilon: patch.epsilon,
        angles: [patch.angles.alpha, patch.angles.beta, patch.angles.gamma],
        tiles: patch
            .tiles
            .iter()
            .map(|t| TileRecord {
                kind: t.kind as u8,
                scale: t.transform.scale,
                rotation: t.transform.rotation,
                reflect: t.transform.reflect,
                translation: t.transform.translation,
                depth: t.depth,
            })
            .collect(),
        points: point_set(patch),
    };
    let mut s = serde_json::to_string(&rec).expect("patch serializes");
    s.push('\n');
    s
}

/// Inverse of [`patch_to_json`]; the stored points are recomputed from the tiles.
pub fn patch_from_json(s: &str) -> Result<Patch, IoError> {
    let rec: PatchRecord = serde_json::from_str(s)?;
    let [alpha, beta, gamma] = rec.angles;
    let angles = Angles::new(alpha, beta, gamma)?;
    let tiles = rec
        .tiles
        .into_iter()
        .map(|t| {
            Ok(TileInstance {
                kind: TileKind::from_number(t.kind).ok_or(IoError::BadKind(t.kind))?,
                transform: Similitude::new(t.scale, t.rotation, t.reflect, t.translation),
                depth: t.depth,
            })
        })
        .collect::<Result<Vec<_>, IoError>>()?;
    Ok(Patch {
        angles,
        epsilon: rec.epsilon,
        inflated: true,
        prototiles: build_prototiles(&angles)?,
        tiles,
    })
}

/// `x,y` header and one row per point, 17 significant digits.
pub fn points_to_csv(points: &[Point]) -> String {
    let mut out = String::from("x,y\n");
    for p in points {
        let _ = writeln!(out, "{:.16e},{:.16e}", p[0], p[1]);
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct SvgOptions {
    /// Stroke width as a fraction of the larger bounding-box side.
    pub stroke: f64,
    /// Point radius as a fraction of the larger bounding-box side.
    pub point_radius: f64,
    pub show_points: bool,
    /// Tile indices drawn with the `highlight` class.
    pub highlight: Vec<usize>,
}

impl Default for SvgOptions {
    fn default() -> Self {
        SvgOptions {
            stroke: 0.002,
            point_radius: 0.004,
            show_points: true,
            highlight: Vec::new(),
        }
    }
}

/// One stroked path per tile and one disk per centroid; y points up.
pub fn export_svg(patch: &Patch, opts: &SvgOptions) -> String {
    let (lo, hi) = if patch.is_empty() {
        ([0.0, 0.0], [1.0, 1.0])
    } else {
        patch.bounds()
    };
    let side = (hi[0] - lo[0]).max(hi[1] - lo[1]).max(f64::MIN_POSITIVE);
    let mx = 0.02 * (hi[0] - lo[0]).max(side * 1e-3);
    let my = 0.02 * (hi[1] - lo[1]).max(side * 1e-3);
    let (x0, y0) = (lo[0] - mx, -hi[1] - my);
    let (w, h) = (hi[0] - lo[0] + 2.0 * mx, hi[1] - lo[1] + 2.0 * my);
    let mut hl = vec![false; patch.len()];
    for &i in &opts.highlight {
        if i < hl.len() {
            hl[i] = true;
        }
    }
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{x0:.6} {y0:.6} {w:.6} {h:.6}">"#
    );
    let _ = writeln!(
        out,
        "<style>path{{fill:none;stroke:#222;stroke-width:{:.6}}} path.highlight{{stroke:#c21;stroke-width:{:.6}}} circle{{fill:#15c}}</style>",
        opts.stroke * side,
        2.0 * opts.stroke * side
    );
    out.push_str("<g class=\"tiles\">\n");
    for (i, (tri, tile)) in patch.triangles().iter().zip(&patch.tiles).enumerate() {
        let class = if hl[i] { " highlight" } else { "" };
        let _ = writeln!(
            out,
            r#"<path class="t{}{class}" d="M{:.6} {:.6}L{:.6} {:.6}L{:.6} {:.6}Z"/>"#,
            tile.kind as u8, tri[0][0], -tri[0][1], tri[1][0], -tri[1][1], tri[2][0], -tri[2][1]
        );
    }
    out.push_str("</g>\n");
    if opts.show_points {
        out.push_str("<g class=\"points\">\n");
        for p in point_set(patch) {
            let _ = writeln!(
                out,
                r#"<circle cx="{:.6}" cy="{:.6}" r="{:.6}"/>"#,
                p[0],
                -p[1],
                opts.point_radius * side
            );
        }
        out.push_str("</g>\n");
    }
    out.push_str("</svg>\n");
    out
}
