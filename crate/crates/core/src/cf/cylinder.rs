use std::cmp::Ordering;

use num_traits::ToPrimitive;

use super::{CfError, Digit, Mobius};
use crate::quadfield::Rat;

/// Set of numbers in (0,1) whose expansion starts with a given word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cylinder {
    word: Vec<Digit>,
    map: Mobius,
}

/// Interval `[lo, hi]` with one open end: the convergent `P_n/Q_n` is excluded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CylinderInterval {
    pub lo: Rat,
    pub hi: Rat,
    pub lo_closed: bool,
}

impl CylinderInterval {
    pub fn hi_closed(&self) -> bool {
        !self.lo_closed
    }

    pub fn contains(&self, x: &Rat) -> bool {
        let above = if self.lo_closed {
            x >= &self.lo
        } else {
            x > &self.lo
        };
        let below = if self.lo_closed {
            x < &self.hi
        } else {
            x <= &self.hi
        };
        above && below
    }
}

impl Cylinder {
    /// The whole unit interval.
    pub fn root() -> Self {
        Cylinder {
            word: Vec::new(),
            map: Mobius::identity(),
        }
    }

    pub fn new(word: &[Digit]) -> Result<Self, CfError> {
        let mut c = Cylinder::root();
        for &b in word {
            if b == 0 {
                return Err(CfError::ZeroDigit);
            }
            c = c.child(b);
        }
        Ok(c)
    }

    pub fn child(&self, b: Digit) -> Cylinder {
        let mut word = self.word.clone();
        word.push(b);
        let mut map = self.map.clone();
        map.push(b);
        Cylinder { word, map }
    }

    pub fn word(&self) -> &[Digit] {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn map(&self) -> &Mobius {
        &self.map
    }

    /// `P_n/Q_n`, the open endpoint.
    pub fn convergent(&self) -> Rat {
        Rat::new(self.map.p.clone(), self.map.q.clone())
    }

    /// `(P_n + P_{n-1})/(Q_n + Q_{n-1})`, the closed endpoint.
    pub fn mediant(&self) -> Rat {
        Rat::new(
            &self.map.p + &self.map.p_prev,
            &self.map.q + &self.map.q_prev,
        )
    }

    pub fn interval(&self) -> CylinderInterval {
        let (a, b) = (self.convergent(), self.mediant());
        match a.cmp(&b) {
            Ordering::Less => CylinderInterval {
                lo: a,
                hi: b,
                lo_closed: false,
            },
            _ => CylinderInterval {
                lo: b,
                hi: a,
                lo_closed: true,
            },
        }
    }

    /// Closed hull `(lo, hi)`.
    pub fn hull(&self) -> (Rat, Rat) {
        let iv = self.interval();
        (iv.lo, iv.hi)
    }

    /// Exact width `1/(Q_n (Q_n + Q_{n-1}))`.
    pub fn width(&self) -> Rat {
        Rat::new(1.into(), &self.map.q * (&self.map.q + &self.map.q_prev))
    }

    pub fn width_f64(&self) -> f64 {
        self.width().to_f64().unwrap_or(0.0)
    }
}

/// Cylinder interval of `word`, with the open-endpoint flag.
pub fn cylinder_interval(word: &[Digit]) -> Result<CylinderInterval, CfError> {
    Ok(Cylinder::new(word)?.interval())
}
