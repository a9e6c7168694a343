use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

pub type Point = [f64; 2];

/// `p ↦ scale · R(rotation) · N^reflect(p) + translation`, `N(x, y) = (−x, y)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Similitude {
    pub scale: f64,
    pub rotation: f64,
    pub reflect: bool,
    pub translation: Point,
}

impl Similitude {
    pub const IDENTITY: Similitude = Similitude {
        scale: 1.0,
        rotation: 0.0,
        reflect: false,
        translation: [0.0, 0.0],
    };

    pub fn new(scale: f64, rotation: f64, reflect: bool, translation: Point) -> Self {
        Similitude {
            scale,
            rotation,
            reflect,
            translation,
        }
    }

    /// Linear part only: `scale · R(rotation) · N^reflect(p)`.
    pub fn linear(&self, p: Point) -> Point {
        let x = if self.reflect { -p[0] } else { p[0] };
        let (s, c) = self.rotation.sin_cos();
        [
            self.scale * (c * x - s * p[1]),
            self.scale * (s * x + c * p[1]),
        ]
    }

    pub fn apply(&self, p: Point) -> Point {
        let q = self.linear(p);
        [q[0] + self.translation[0], q[1] + self.translation[1]]
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Similitude) -> Similitude {
        let rotation = if self.reflect {
            self.rotation - other.rotation
        } else {
            self.rotation + other.rotation
        };
        Similitude {
            scale: self.scale * other.scale,
            rotation: rotation.rem_euclid(TAU),
            reflect: self.reflect ^ other.reflect,
            translation: self.apply(other.translation),
        }
    }

    pub fn inverse(&self) -> Similitude {
        let rotation = if self.reflect {
            self.rotation
        } else {
            -self.rotation
        };
        let mut inv = Similitude {
            scale: 1.0 / self.scale,
            rotation: rotation.rem_euclid(TAU),
            reflect: self.reflect,
            translation: [0.0, 0.0],
        };
        let t = inv.linear(self.translation);
        inv.translation = [-t[0], -t[1]];
        inv
    }

    /// Dilation about the origin applied after `self`.
    pub fn dilated(&self, factor: f64) -> Similitude {
        Similitude {
            scale: self.scale * factor,
            translation: [self.translation[0] * factor, self.translation[1] * factor],
            ..*self
        }
    }

    /// Fixed point of a contraction without reflection.
    pub fn fixed_point(&self) -> Option<Point> {
        if self.reflect || (self.scale - 1.0).abs() < 1e-15 {
            return None;
        }
        // (I − L) p = τ with L = scale·R
        let (s, c) = self.rotation.sin_cos();
        let (a, b) = (1.0 - self.scale * c, self.scale * s);
        let det = a * a + b * b;
        let [tx, ty] = self.translation;
        Some([(a * tx - b * ty) / det, (b * tx + a * ty) / det])
    }

    /// Rotation angle normalized to [0, 2π).
    pub fn orientation(&self) -> f64 {
        let r = self.rotation.rem_euclid(TAU);
        if r >= TAU {
            0.0
        } else {
            r
        }
    }
}
