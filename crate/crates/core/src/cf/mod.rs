//! Regular continued fractions `[a1, a2, ...]` of numbers in (0, 1).
//!
//! Finite words carry the `[a1,...,an,∞]` semantics; periodic words are a
//! preperiod followed by an infinitely repeated period.

mod cylinder;
mod expand;
mod syntax;

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::quadfield::{QuadError, QuadRat, Rat};

pub use cylinder::{cylinder_interval, Cylinder, CylinderInterval};
pub use expand::{
    expand_interval, expand_quadratic, expand_rational, expand_real, gauss_map, parse_decimal,
    CertifiedExpansion, EXPAND_ITERATION_CAP,
};
pub use syntax::{parse_cf, CfWord};

pub type Digit = u64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CfError {
    #[error("continued fraction word is empty")]
    EmptyWord,
    #[error("partial quotients must be positive")]
    ZeroDigit,
    #[error("period discriminant {0} does not lie in Q(sqrt 2) or Q(sqrt 3)")]
    UnsupportedDiscriminant(BigInt),
    #[error("value is rational; use the finite expansion")]
    RationalInput,
    #[error("value must lie strictly between 0 and 1")]
    OutOfRange,
    #[error("no period detected within {0} steps")]
    IterationCap(usize),
    #[error("input precision exhausted before any digit was certified")]
    PrecisionExhausted,
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Quad(#[from] QuadError),
}

/// Möbius map `y ↦ (p + y·p_prev)/(q + y·q_prev)` built from a digit word:
/// `[b1,...,bn + y]` in the sense `1/(b1 + 1/(... + 1/(bn + y)))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mobius {
    pub p_prev: BigInt,
    pub p: BigInt,
    pub q_prev: BigInt,
    pub q: BigInt,
}

impl Mobius {
    pub fn identity() -> Self {
        Mobius {
            p_prev: BigInt::one(),
            p: BigInt::zero(),
            q_prev: BigInt::zero(),
            q: BigInt::one(),
        }
    }

    pub fn from_word(word: &[Digit]) -> Self {
        let mut m = Mobius::identity();
        for &b in word {
            m.push(b);
        }
        m
    }

    /// Appends one partial quotient (the convergent recurrence).
    pub fn push(&mut self, b: Digit) {
        let b = BigInt::from(b);
        let p = &b * &self.p + &self.p_prev;
        let q = &b * &self.q + &self.q_prev;
        self.p_prev = std::mem::replace(&mut self.p, p);
        self.q_prev = std::mem::replace(&mut self.q, q);
    }

    pub fn apply(&self, y: &QuadRat) -> Result<QuadRat, CfError> {
        let d = y.d();
        let num = QuadRat::from_int(self.p.clone(), d)?
            .checked_add(&QuadRat::from_int(self.p_prev.clone(), d)?.checked_mul(y)?)?;
        let den = QuadRat::from_int(self.q.clone(), d)?
            .checked_add(&QuadRat::from_int(self.q_prev.clone(), d)?.checked_mul(y)?)?;
        Ok(num.checked_div(&den)?)
    }

    /// `P_n Q_{n-1} - P_{n-1} Q_n`.
    pub fn determinant(&self) -> BigInt {
        &self.p * &self.q_prev - &self.p_prev * &self.q
    }
}

fn check_digits(digits: &[Digit]) -> Result<(), CfError> {
    if digits.contains(&0) {
        Err(CfError::ZeroDigit)
    } else {
        Ok(())
    }
}

/// Finite word `[a1,...,an,∞]`, stored exactly as written.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteCF {
    digits: Vec<Digit>,
}

impl FiniteCF {
    pub fn new(digits: Vec<Digit>) -> Result<Self, CfError> {
        if digits.is_empty() {
            return Err(CfError::EmptyWord);
        }
        check_digits(&digits)?;
        Ok(FiniteCF { digits })
    }

    pub fn digits(&self) -> &[Digit] {
        &self.digits
    }

    /// The representation not ending in 1 (except the single word `[1]`).
    pub fn canonical(&self) -> FiniteCF {
        let mut digits = self.digits.clone();
        while digits.len() > 1 && digits[digits.len() - 1] == 1 {
            digits.pop();
            *digits.last_mut().unwrap() += 1;
        }
        FiniteCF { digits }
    }

    pub fn value(&self) -> Rat {
        eval_finite(&self.digits)
    }
}

/// Exact value of `[digits..., ∞]`.
pub fn eval_finite(digits: &[Digit]) -> Rat {
    let m = Mobius::from_word(digits);
    Rat::new(m.p, m.q)
}

/// Value of `[digits..., tail]` where `tail` is the final (real) partial
/// quotient: `1/(d1 + 1/(... + 1/(dn + 1/tail)))`.
pub fn eval_with_tail(digits: &[Digit], tail: &QuadRat) -> Result<QuadRat, CfError> {
    Mobius::from_word(digits).apply(&tail.recip()?)
}

/// Eventually periodic word, kept canonical: primitive period, minimal preperiod.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PeriodicCF {
    preperiod: Vec<Digit>,
    period: Vec<Digit>,
}

impl PeriodicCF {
    pub fn new(preperiod: Vec<Digit>, period: Vec<Digit>) -> Result<Self, CfError> {
        if period.is_empty() {
            return Err(CfError::EmptyWord);
        }
        check_digits(&preperiod)?;
        check_digits(&period)?;
        let mut cf = PeriodicCF { preperiod, period };
        cf.canonicalize();
        Ok(cf)
    }

    /// Purely periodic word.
    pub fn pure(period: Vec<Digit>) -> Result<Self, CfError> {
        Self::new(Vec::new(), period)
    }

    fn canonicalize(&mut self) {
        let n = self.period.len();
        if let Some(k) = (1..=n)
            .filter(|k| n.is_multiple_of(*k))
            .find(|&k| (k..n).all(|i| self.period[i] == self.period[i - k]))
        {
            self.period.truncate(k);
        }
        while let Some(&last) = self.preperiod.last() {
            if last != *self.period.last().unwrap() {
                break;
            }
            self.preperiod.pop();
            self.period.rotate_right(1);
        }
    }

    pub fn preperiod(&self) -> &[Digit] {
        &self.preperiod
    }

    pub fn period(&self) -> &[Digit] {
        &self.period
    }

    /// Partial quotient at 0-based index `i`.
    pub fn digit(&self, i: usize) -> Digit {
        if i < self.preperiod.len() {
            self.preperiod[i]
        } else {
            self.period[(i - self.preperiod.len()) % self.period.len()]
        }
    }

    /// First `n` partial quotients.
    pub fn prefix(&self, n: usize) -> Vec<Digit> {
        (0..n).map(|i| self.digit(i)).collect()
    }

    /// The word with its first `k` digits removed (the `k`-th Gauss shift).
    pub fn tail(&self, k: usize) -> PeriodicCF {
        if k <= self.preperiod.len() {
            return PeriodicCF {
                preperiod: self.preperiod[k..].to_vec(),
                period: self.period.clone(),
            };
        }
        let mut period = self.period.clone();
        period.rotate_left((k - self.preperiod.len()) % self.period.len());
        PeriodicCF {
            preperiod: Vec::new(),
            period,
        }
    }

    /// Word with `digits` prepended.
    pub fn prepend(&self, digits: &[Digit]) -> Result<PeriodicCF, CfError> {
        let mut pre = digits.to_vec();
        pre.extend_from_slice(&self.preperiod);
        PeriodicCF::new(pre, self.period.clone())
    }

    /// Exact value in Q(√d).
    pub fn value(&self) -> Result<QuadRat, CfError> {
        eval_periodic(self)
    }

    /// Smallest bound B of the eventual digits and the last index exceeding it.
    pub fn bad_class(&self) -> BadClass {
        let bound = *self.period.iter().max().unwrap();
        let index = self
            .preperiod
            .iter()
            .rposition(|&a| a > bound)
            .map_or(0, |i| i + 1);
        BadClass { bound, index }
    }

    /// Membership in `B_{B,j}`: digits ≤ B+1 up to position j, ≤ B afterwards.
    pub fn in_class(&self, bound: Digit, j: usize) -> bool {
        let head = self.preperiod.len().max(j) + self.period.len();
        (0..head).all(|i| {
            let a = self.digit(i);
            if i < j {
                a <= bound + 1
            } else {
                a <= bound
            }
        })
    }

    /// Membership in `B_B`.
    pub fn in_bad(&self, bound: Digit) -> bool {
        self.in_class(bound, 0)
    }

    /// Largest partial quotient anywhere in the word.
    pub fn max_digit(&self) -> Digit {
        self.preperiod
            .iter()
            .chain(&self.period)
            .copied()
            .max()
            .unwrap()
    }
}

/// `(B, j)`: eventually B-bad with the last larger digit at position j.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct BadClass {
    pub bound: Digit,
    pub index: usize,
}

/// Exact value of a periodic word: the attracting fixed point of the period's
/// Möbius map, pushed through the preperiod's map.
pub fn eval_periodic(cf: &PeriodicCF) -> Result<QuadRat, CfError> {
    let m = Mobius::from_word(cf.period());
    // q_prev·y² + (q − p_prev)·y − p = 0
    let lin = &m.q - &m.p_prev;
    let disc = &lin * &lin + BigInt::from(4) * &m.q_prev * &m.p;
    let (d, root) = [2u32, 3]
        .into_iter()
        .find_map(|d| {
            let (quot, rem) = disc.div_rem(&BigInt::from(d));
            if !rem.is_zero() {
                return None;
            }
            let r = num_integer::Roots::sqrt(&quot);
            (&r * &r == quot).then_some((d, r))
        })
        .ok_or_else(|| CfError::UnsupportedDiscriminant(disc.clone()))?;
    let y = QuadRat::new(-lin, root, BigInt::from(2) * &m.q_prev, d)?;
    Mobius::from_word(cf.preperiod()).apply(&y)
}

/// `1 − x` on digit words: `[1, a1−1, a2, ...]` if `a1 ≥ 2`, `[1+a2, a3, ...]` if `a1 = 1`.
pub fn one_minus_periodic(cf: &PeriodicCF) -> Result<PeriodicCF, CfError> {
    let a1 = cf.digit(0);
    if a1 >= 2 {
        cf.tail(1).prepend(&[1, a1 - 1])
    } else {
        cf.tail(2).prepend(&[1 + cf.digit(1)])
    }
}

/// `1 − x` for a finite word; the result is canonical.
pub fn one_minus_finite(cf: &FiniteCF) -> Result<FiniteCF, CfError> {
    let d = cf.digits();
    let out = match (d[0], d.len()) {
        (1, 1) => return Err(CfError::OutOfRange),
        (1, _) => {
            let mut v = vec![1 + d[1]];
            v.extend_from_slice(&d[2..]);
            v
        }
        (a1, _) => {
            let mut v = vec![1, a1 - 1];
            v.extend_from_slice(&d[1..]);
            v
        }
    };
    Ok(FiniteCF::new(out)?.canonical())
}

/// Orders two infinite words by value using the alternating digit rule:
/// at the first disagreement n (1-based), `x < y` iff `(−1)^n a_n < (−1)^n b_n`.
pub fn cf_compare(x: &PeriodicCF, y: &PeriodicCF) -> Ordering {
    let horizon = x.preperiod.len().max(y.preperiod.len()) + x.period.len().lcm(&y.period.len());
    for i in 0..horizon {
        let (a, b) = (x.digit(i), y.digit(i));
        if a != b {
            let odd_position = i % 2 == 0;
            return if odd_position { b.cmp(&a) } else { a.cmp(&b) };
        }
    }
    Ordering::Equal
}

impl fmt::Display for FiniteCF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for a in &self.digits {
            write!(f, "{a},")?;
        }
        write!(f, "inf]")
    }
}

impl fmt::Display for PeriodicCF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for a in &self.preperiod {
            write!(f, "{a},")?;
        }
        let per: Vec<String> = self.period.iter().map(|a| a.to_string()).collect();
        write!(f, "per({})]", per.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64, c: i64, d: u32) -> QuadRat {
        QuadRat::new(a, b, c, d).unwrap()
    }

    fn per(pre: &[Digit], period: &[Digit]) -> PeriodicCF {
        PeriodicCF::new(pre.to_vec(), period.to_vec()).unwrap()
    }

    fn r(n: i64, d: i64) -> Rat {
        Rat::new(n.into(), d.into())
    }

    #[test]
    fn finite_values() {
        assert_eq!(eval_finite(&[3]), r(1, 3));
        assert_eq!(eval_finite(&[2, 3]), r(3, 7));
        assert_eq!(eval_finite(&[2, 3, 1]), r(4, 9));
        assert_eq!(
            FiniteCF::new(vec![2, 3, 1]).unwrap().canonical().digits(),
            &[2, 4]
        );
        assert_eq!(FiniteCF::new(vec![1]).unwrap().canonical().digits(), &[1]);
        assert_eq!(FiniteCF::new(vec![]), Err(CfError::EmptyWord));
        assert_eq!(FiniteCF::new(vec![2, 0]), Err(CfError::ZeroDigit));
    }

    #[test]
    fn periodic_values() {
        assert_eq!(per(&[], &[2]).value().unwrap(), q(-1, 1, 1, 2));
        assert_eq!(per(&[], &[2, 1]).value().unwrap(), q(-1, 1, 2, 3));
        assert_eq!(per(&[3], &[1, 2]).value().unwrap(), q(2, -1, 1, 3));
        assert_eq!(per(&[3], &[2]).value().unwrap(), q(2, -1, 2, 2));
        assert!(matches!(
            per(&[], &[1]).value(),
            Err(CfError::UnsupportedDiscriminant(_))
        ));
    }

    #[test]
    fn canonical_periodic() {
        assert_eq!(per(&[2, 2], &[2, 2]), per(&[], &[2]));
        assert_eq!(per(&[1, 2], &[1, 2]), per(&[], &[1, 2]));
        assert_eq!(per(&[3, 2, 1], &[2, 1]), per(&[3], &[2, 1]));
        assert_eq!(per(&[3, 1], &[2, 1]).preperiod(), &[3]);
        assert_eq!(per(&[3, 1], &[2, 1]).period(), &[1, 2]);
    }

    #[test]
    fn one_minus_words() {
        assert_eq!(
            one_minus_periodic(&per(&[], &[2])).unwrap(),
            per(&[1, 1], &[2])
        );
        assert_eq!(
            one_minus_periodic(&per(&[], &[2, 1])).unwrap(),
            per(&[1, 1, 1], &[2, 1])
        );
        assert_eq!(
            one_minus_periodic(&per(&[1, 1], &[2])).unwrap(),
            per(&[], &[2])
        );
        let f = FiniteCF::new(vec![2, 3]).unwrap();
        assert_eq!(one_minus_finite(&f).unwrap().value(), r(4, 7));
        assert_eq!(
            one_minus_finite(&FiniteCF::new(vec![2]).unwrap())
                .unwrap()
                .digits(),
            &[2]
        );
        assert_eq!(
            one_minus_finite(&FiniteCF::new(vec![1]).unwrap()),
            Err(CfError::OutOfRange)
        );
    }

    #[test]
    fn compare_extremes_of_b2() {
        assert_eq!(
            cf_compare(&per(&[], &[2, 1]), &per(&[], &[1, 2])),
            Ordering::Less
        );
        let x = per(&[3], &[2]);
        assert_eq!(cf_compare(&x, &x), Ordering::Equal);
    }

    #[test]
    fn classes() {
        assert_eq!(per(&[], &[2]).bad_class(), BadClass { bound: 2, index: 0 });
        assert_eq!(per(&[3], &[2]).bad_class(), BadClass { bound: 2, index: 1 });
        assert_eq!(
            per(&[3, 3], &[1, 2]).bad_class(),
            BadClass { bound: 2, index: 2 }
        );
        let x = per(&[3, 3], &[1, 2]);
        assert!(!x.in_class(2, 1));
        assert!(x.in_class(2, 2));
        assert!(x.in_class(2, 3));
        assert!(x.in_bad(3));
        assert!(!x.in_bad(2));
    }

    #[test]
    fn tails_and_prefix() {
        let x = per(&[3], &[1, 2]);
        assert_eq!(x.prefix(5), vec![3, 1, 2, 1, 2]);
        assert_eq!(x.tail(1), per(&[], &[1, 2]));
        assert_eq!(x.tail(2), per(&[], &[2, 1]));
    }

    #[test]
    fn tail_evaluation() {
        // [3, 1/x − 1] at x = 1/2 is 1/(3 + 1) = 1/4.
        let half = QuadRat::new(1, 0, 2, 2).unwrap();
        let t = half.recip().unwrap() - QuadRat::from_int(1, 2).unwrap();
        assert_eq!(eval_with_tail(&[3], &t).unwrap(), q(1, 0, 4, 2));
    }

    #[test]
    fn determinant_alternates() {
        let mut m = Mobius::identity();
        for (n, b) in [3u64, 1, 2, 2, 1, 5].into_iter().enumerate() {
            m.push(b);
            let expected = if n % 2 == 0 { 1 } else { -1 };
            assert_eq!(m.determinant(), BigInt::from(expected));
        }
    }
}
