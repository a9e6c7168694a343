use std::f64::consts::TAU;

use serde::Serialize;

use super::DeloneError;
use crate::gifs::Patch;

/// Star discrepancy `D*_N` from the sorted sample.
pub fn star_discrepancy(xs: &[f64]) -> Result<f64, DeloneError> {
    if xs.is_empty() {
        return Err(DeloneError::EmptySample);
    }
    if let Some(x) = xs.iter().find(|x| !(**x >= 0.0 && **x < 1.0)) {
        return Err(DeloneError::OutOfUnit(*x));
    }
    let mut sorted = xs.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len() as f64;
    Ok(sorted
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let i = i as f64 + 1.0;
            (i / n - x).max(x - (i - 1.0) / n)
        })
        .fold(0.0, f64::max))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct OrientationDiscrepancy {
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(rename = "Dstar")]
    pub dstar: f64,
}

/// Discrepancy of the tile orientations scaled to `[0, 1)`.
pub fn orientation_discrepancy(patch: &Patch) -> Result<OrientationDiscrepancy, DeloneError> {
    let below_one = 1.0 - f64::EPSILON / 2.0;
    let xs: Vec<f64> = patch
        .tiles
        .iter()
        .map(|t| (t.orientation() / TAU).min(below_one))
        .collect();
    Ok(OrientationDiscrepancy {
        n: xs.len(),
        dstar: star_discrepancy(&xs)?,
    })
}
