//! Graph-directed IFS for triangle tilings with two prototiles, the ε-rule
//! and stationary patch sequences.

mod patch;
mod similitude;
mod system;

use thiserror::Error;

pub use patch::{
    epsilon_rule, match_tiles, nesting_report, orientation_angles, point_set, stationary_sequence,
    subdivide, NestingReport, Patch, TileInstance, MAX_STATIONARY_STEPS, NESTING_TOL,
};
pub use similitude::{Point, Similitude};
pub use system::{
    build_gifs, build_prototiles, children_of, closure_report, derive_constants, dist, gifs_maps,
    triangle_area, triangle_depth, Angles, ClosureReport, DerivedConstants, Gifs, MapLabel,
    Prototile, TileKind, ANGLE_SUM_TOL, AREA_TOL, GEOM_TOL, VALIDATION_SAMPLES,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GifsError {
    #[error("angles {0} are not an admissible triple")]
    InvalidAngles(Angles),
    #[error("union equations fail: max defect {max_defect:e}, {overlaps} overlapping samples")]
    ClosureDefect { max_defect: f64, overlaps: usize },
    #[error("epsilon must lie in (0, 1), got {0}")]
    EpsilonOutOfRange(f64),
    #[error("stationary sequence limited to n <= {max}, got {n}")]
    TooManySteps { n: usize, max: usize },
}
