//! Delone certificates, the Chabauty–Fell distance between finite point
//! sets, and star discrepancy of tile orientations.

mod covering;
mod discrepancy;
mod distance;
mod points;

use serde::Serialize;
use thiserror::Error;

use crate::gifs::{gifs_maps, point_set, GifsError, Patch, Point};

pub use covering::{check_relatively_dense, Covering, Region, COVER_TOL};
pub use discrepancy::{orientation_discrepancy, star_discrepancy, OrientationDiscrepancy};
pub use distance::{
    chabauty_fell_distance, restricted_convergence_check, within, RestrictedDistance,
};
pub use points::{check_uniform_discrete, Discreteness, PointSet};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DeloneError {
    #[error("non-finite point {0:?}")]
    NonFinite(Point),
    #[error("point {point:?} repeated at index {index}")]
    Duplicate { point: Point, index: usize },
    #[error("{0} must be positive, got {1}")]
    NonPositive(&'static str, f64),
    #[error("region is empty")]
    EmptyRegion,
    #[error("sample is empty")]
    EmptySample,
    #[error("value {0} outside [0, 1)")]
    OutOfUnit(f64),
    #[error(transparent)]
    Gifs(#[from] GifsError),
}

pub const DEFAULT_RADII: [f64; 3] = [5.0, 10.0, 20.0];
pub const CF_TOL: f64 = 1e-9;

/// Radii `r = √a_min·r0` and `R = R0` for the patch's angle triple.
pub fn delone_radii(patch: &Patch) -> Result<(f64, f64), DeloneError> {
    let gifs = gifs_maps(&patch.angles)?;
    Ok((gifs.a_min().sqrt() * gifs.r0(), gifs.big_r0()))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DeloneReport {
    pub r_certified: bool,
    #[serde(rename = "R_certified")]
    pub big_r_certified: bool,
    pub r: f64,
    #[serde(rename = "R")]
    pub big_r: f64,
    pub cf_distances: Vec<RestrictedDistance>,
    pub discrepancy: OrientationDiscrepancy,
}

impl DeloneReport {
    pub fn pass(&self) -> bool {
        self.r_certified && self.big_r_certified && self.cf_distances.iter().all(|d| d.ok)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Full analysis of a patch's centroid set on the union of its tiles.
pub fn analyze_patch(patch: &Patch) -> Result<DeloneReport, DeloneError> {
    let (r, big_r) = delone_radii(patch)?;
    let ps = PointSet::new(point_set(patch))?;
    let region = Region::Triangles(patch.triangles());
    let cover = check_relatively_dense(&ps, big_r, &region, 1e-4 * big_r)?;
    Ok(DeloneReport {
        r_certified: check_uniform_discrete(&ps, r).certified(),
        big_r_certified: cover.certified(),
        r,
        big_r,
        cf_distances: restricted_convergence_check(&ps, &DEFAULT_RADII, CF_TOL),
        discrepancy: orientation_discrepancy(patch)?,
    })
}
