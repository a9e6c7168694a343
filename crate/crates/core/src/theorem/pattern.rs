use num_traits::ToPrimitive;
use serde::Serialize;

use super::TheoremError;
use crate::cf::{eval_finite, Cylinder, Digit};
use crate::quadfield::Rat;

/// Hull `[r1, r2]` of a forbidden pattern with ∞-terminated endpoint words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForbiddenPattern {
    pub form: u8,
    pub k: usize,
    pub ell: usize,
    pub s: Digit,
    pub r1: Rat,
    pub r2: Rat,
}

impl ForbiddenPattern {
    pub fn contains(&self, lo: &Rat, hi: &Rat) -> bool {
        &self.r1 <= lo && hi <= &self.r2
    }

    pub fn label(&self) -> String {
        format!(
            "form{}(k={},l={},s={})",
            self.form, self.k, self.ell, self.s
        )
    }
}

fn pattern_word(prefix_twos: usize, ell: usize, s: Option<Digit>) -> Vec<Digit> {
    let mut w = vec![2; prefix_twos];
    if let Some(s) = s {
        for _ in 0..ell {
            w.extend([2, 1]);
        }
        w.push(s);
    }
    w
}

/// Exact hull of the forbidden pattern with parameters `(form, k, ℓ, s)`.
pub fn forbidden_interval(
    form: u8,
    k: usize,
    ell: usize,
    s: Digit,
) -> Result<ForbiddenPattern, TheoremError> {
    if k == 0 || s < 3 {
        return Err(TheoremError::Param(format!(
            "need k ≥ 1 and s ≥ 3, got k={k}, s={s}"
        )));
    }
    let (lower, upper) = match form {
        1 => (
            pattern_word(2 * k - 1, ell, Some(s)),
            pattern_word(2 * k - 1, 0, None),
        ),
        2 => (
            pattern_word(2 * k, 0, None),
            pattern_word(2 * k, ell, Some(s)),
        ),
        _ => {
            return Err(TheoremError::Param(format!(
                "form must be 1 or 2, got {form}"
            )))
        }
    };
    let (r1, r2) = (eval_finite(&lower), eval_finite(&upper));
    debug_assert!(r1 < r2);
    Ok(ForbiddenPattern {
        form,
        k,
        ell,
        s,
        r1,
        r2,
    })
}

fn leading_twos(w: &[Digit]) -> usize {
    w.iter().take_while(|&&a| a == 2).count()
}

/// Reads `(2,1)^ℓ, s` with `s ≥ 3` off the front of `rest`.
fn alternating_then_large(rest: &[Digit]) -> Option<(usize, Digit)> {
    let mut ell = 0;
    let mut i = 0;
    loop {
        match rest.get(i) {
            Some(&s) if s >= 3 => return Some((ell, s)),
            Some(2) if rest.get(i + 1) == Some(&1) => {
                ell += 1;
                i += 2;
            }
            _ => return None,
        }
    }
}

/// Recognizes an interval `[lower, upper]` given by endpoint words (with
/// arbitrary tails) as a forbidden pattern, returning its ∞-terminated hull.
pub fn classify_pattern(lower: &[Digit], upper: &[Digit]) -> Option<ForbiddenPattern> {
    let run = leading_twos(lower).min(leading_twos(upper));
    (1..=run).find_map(|m| {
        let (form, shaped) = if m % 2 == 1 {
            (1, &lower[m..])
        } else {
            (2, &upper[m..])
        };
        let (ell, s) = alternating_then_large(shaped)?;
        forbidden_interval(form, m.div_ceil(2), ell, s).ok()
    })
}

/// Outcome of the B₂-exclusion oracle on an interval.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Exclusion {
    CertifiedEmpty,
    Witness(Vec<Digit>),
    Inconclusive,
}

const SLIVER_WIDTH: f64 = 1e-15;

/// Depth-first search over {1,2}-cylinders meeting `[lo, hi]`.
pub fn excludes_b2(lo: &Rat, hi: &Rat, depth: usize) -> Exclusion {
    let mut stack = vec![Cylinder::root()];
    let mut inconclusive = false;
    while let Some(cyl) = stack.pop() {
        for b in [2, 1] {
            let child = cyl.child(b);
            let (clo, chi) = child.hull();
            if &chi <= lo || &clo >= hi {
                continue;
            }
            if lo <= &clo && &chi <= hi {
                return Exclusion::Witness(child.word().to_vec());
            }
            if child.len() < depth {
                stack.push(child);
            } else if child.width().to_f64().unwrap_or(0.0) >= SLIVER_WIDTH {
                inconclusive = true;
            }
        }
    }
    if inconclusive {
        Exclusion::Inconclusive
    } else {
        Exclusion::CertifiedEmpty
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rat {
        Rat::new(n.into(), d.into())
    }

    #[test]
    fn pattern_examples() {
        let p = forbidden_interval(1, 1, 0, 3).unwrap();
        assert_eq!((p.r1, p.r2), (r(3, 7), r(1, 2)));
        let p = forbidden_interval(1, 1, 1, 3).unwrap();
        assert_eq!((p.r1, p.r2), (r(11, 26), r(1, 2)));
        let p = forbidden_interval(2, 1, 0, 3).unwrap();
        assert_eq!((p.r1, p.r2), (r(2, 5), r(7, 17)));
        assert!(forbidden_interval(1, 0, 0, 3).is_err());
        assert!(forbidden_interval(1, 1, 0, 2).is_err());
        assert!(forbidden_interval(3, 1, 0, 3).is_err());
    }

    #[test]
    fn classification() {
        let p = classify_pattern(&[2, 3], &[2, 3, 1]).unwrap();
        assert_eq!((p.form, p.k, p.ell, p.s), (1, 1, 0, 3));
        let p = classify_pattern(&[2, 2, 3, 1], &[2, 2, 3]).unwrap();
        assert_eq!((p.form, p.k, p.ell, p.s), (2, 1, 0, 3));
        let p = classify_pattern(&[2, 2, 1, 2, 1, 20], &[2, 2, 1]).unwrap();
        assert_eq!((p.form, p.k, p.ell, p.s), (1, 1, 2, 20));
        assert!(classify_pattern(&[2, 2], &[2, 1]).is_none());
    }

    #[test]
    fn exclusion_examples() {
        assert_eq!(
            excludes_b2(&r(3, 7), &r(1, 2), 30),
            Exclusion::CertifiedEmpty
        );
        assert_eq!(
            excludes_b2(&r(1, 100), &r(1, 50), 10),
            Exclusion::CertifiedEmpty
        );
        // (√3 − 1)/2 to 12 places
        let v = r(366_025_403_784, 1_000_000_000_000);
        let eps = r(1, 1_000_000);
        let found = excludes_b2(&(&v - &eps), &(&v + &eps), 30);
        match found {
            Exclusion::Witness(w) => assert_eq!(&w[..4], &[2, 1, 2, 1]),
            other => panic!("{other:?}"),
        }
    }
}
