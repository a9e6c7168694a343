//! Closed forms in Q(√2) for the endpoints of row 2.1 of the even table,
//! checked against the exact cylinder endpoints for a given even `n`.

use super::TheoremError;
use crate::cf::{eval_finite, Cylinder};
use crate::quadfield::{QuadRat, Rat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Case21Check {
    pub n: usize,
    /// Closed forms agree with the exact cylinder and pattern endpoints.
    pub endpoints_match: bool,
    /// Both gap expressions equal their factored quotients.
    pub gaps_match: bool,
    /// Numerators and denominators of both quotients are positive.
    pub signs_positive: bool,
}

impl Case21Check {
    pub fn pass(&self) -> bool {
        self.endpoints_match && self.gaps_match && self.signs_positive
    }
}

fn q(a: i64, b: i64, c: i64) -> QuadRat {
    QuadRat::new(a, b, c, 2).expect("radicand 2 is supported")
}

fn hull_as_quad(word: &[u64]) -> Result<(QuadRat, QuadRat), TheoremError> {
    let (lo, hi) = Cylinder::new(word)?.hull();
    Ok((QuadRat::from_rat(&lo, 2)?, QuadRat::from_rat(&hi, 2)?))
}

fn rat(r: &Rat) -> QuadRat {
    QuadRat::from_rat(r, 2).expect("radicand 2 is supported")
}

pub fn check_case21(n: usize) -> Result<Case21Check, TheoremError> {
    if !n.is_multiple_of(2) {
        return Err(TheoremError::ParityMismatch {
            row: "2.1".into(),
            n,
        });
    }
    let n64 = n as u64;
    let one = q(1, 0, 1);
    let unit = q(1, 1, 1);
    let conj = q(1, -1, 1);
    let w = q(-3, 2, 1);
    let base = q(2, -1, 2);

    let a_n = &base + &(q(12, -19, 1) / (q(-19, 6, 1) + q(17, 0, 1) * unit.unit_pow(2 * n64 + 4)));
    let b_n = &base + &(q(10, 1, 1) / (q(1, 5, 1) - q(7, 0, 1) * unit.unit_pow(2 * n64 + 5)));
    let c_n = &base + &(q(0, 1, 1) / (&one - &unit.unit_pow(2 * n64 + 8)));
    let d_n = &base + &(q(0, 1, 1) / (&one + &unit.unit_pow(2 * n64 + 8)));
    let wp = w.unit_pow(n64 + 2);
    let left = (&wp + &one) / (&conj * &wp + q(1, 1, 1));
    let right = (q(9, 4, 7) * &wp + one.clone()) / (q(1, -5, 7) * &wp + q(1, 1, 1));

    let mut x_word = vec![3];
    x_word.extend(std::iter::repeat_n(2, n));
    let mut y_word = x_word.clone();
    x_word.extend([1, 2]);
    y_word.extend([2, 2]);
    let (x_lo, x_hi) = hull_as_quad(&x_word)?;
    let (y_lo, y_hi) = hull_as_quad(&y_word)?;
    let mut lw = vec![2; n + 1];
    lw.push(3);
    let mut rw = lw.clone();
    rw.push(1);

    let endpoints_match = (x_lo, x_hi) == (a_n.clone(), b_n.clone())
        && (y_lo, y_hi) == (c_n.clone(), d_n.clone())
        && left == rat(&eval_finite(&lw))
        && right == rat(&eval_finite(&rw));

    let un = unit.unit_pow(n64);
    let cn = conj.unit_pow(n64);
    let u3 = unit.unit_pow(n64 + 3);
    let c3 = conj.unit_pow(n64 + 3);
    let u6 = unit.unit_pow(2 * n64 + 6);
    let c6 = conj.unit_pow(2 * n64 + 6);

    let num1 = &un * &q(24, 16, 1) - &cn * &q(-24, 16, 1);
    let den1 = (-&c3 - &u3) * (q(10, 0, 1) + q(-1, 2, 1) * &c6 - q(1, 2, 1) * &u6);
    let gap1 = &one - &b_n - &d_n - &left;

    let num2 = &un * &q(72, 60, 1) - &cn * &q(-72, 60, 1);
    let den2 = (&c3 * &q(4, 1, 1) + &u3 * &q(4, -1, 1))
        * (q(-28, 0, 1) + &c6 * &q(6, -1, 1) + &u6 * &q(6, 1, 1));
    let gap2 = &right - &(&one - &a_n - &c_n);

    let gaps_match = gap1 == &num1 / &den1 && gap2 == &num2 / &den2;
    let signs_positive = [&num1, &den1, &num2, &den2].iter().all(|v| v.signum() > 0);
    Ok(Case21Check {
        n,
        endpoints_match,
        gaps_match,
        signs_positive,
    })
}
