//! Exact arithmetic in Q and in the real quadratic fields Q(√2), Q(√3).
//!
//! Every value is kept in the canonical form `(a + b·√d)/c` with `c > 0` and
//! `gcd(a, b, c) = 1`, so equality is structural. Signs and floors are decided
//! with integer comparisons only.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Arbitrary-precision rational, always reduced with a positive denominator.
pub type Rat = BigRational;

/// Radicands supported by [`QuadRat`].
pub const SUPPORTED_RADICANDS: [u32; 2] = [2, 3];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuadError {
    #[error("radicand mismatch: sqrt({left}) vs sqrt({right})")]
    RadicandMismatch { left: u32, right: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("unsupported radicand {0} (expected 2 or 3)")]
    UnsupportedRadicand(u32),
    #[error("zero denominator")]
    ZeroDenominator,
}

/// Element `(a + b·√d)/c` of Q(√d).
#[derive(Clone, Debug)]
pub struct QuadRat {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: u32,
}

/// Arithmetic operation selector for [`qr_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
    Neg,
}

/// Applies `op` to `lhs` and `rhs` (`rhs` is ignored for `Neg`).
pub fn qr_arith(op: ArithOp, lhs: &QuadRat, rhs: &QuadRat) -> Result<QuadRat, QuadError> {
    match op {
        ArithOp::Add => lhs.checked_add(rhs),
        ArithOp::Sub => lhs.checked_sub(rhs),
        ArithOp::Mul => lhs.checked_mul(rhs),
        ArithOp::Div => lhs.checked_div(rhs),
        ArithOp::Neg => Ok(-lhs),
    }
}

impl QuadRat {
    pub fn new(
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
        d: u32,
    ) -> Result<Self, QuadError> {
        if !SUPPORTED_RADICANDS.contains(&d) {
            return Err(QuadError::UnsupportedRadicand(d));
        }
        let c = c.into();
        if c.is_zero() {
            return Err(QuadError::ZeroDenominator);
        }
        Ok(Self::normalized(a.into(), b.into(), c, d))
    }

    /// Rational value embedded in Q(√d).
    pub fn from_rat(r: &Rat, d: u32) -> Result<Self, QuadError> {
        Self::new(r.numer().clone(), BigInt::zero(), r.denom().clone(), d)
    }

    pub fn from_int(n: impl Into<BigInt>, d: u32) -> Result<Self, QuadError> {
        Self::new(n, 0, 1, d)
    }

    /// `√d` itself.
    pub fn sqrt(d: u32) -> Result<Self, QuadError> {
        Self::new(0, 1, 1, d)
    }

    fn normalized(mut a: BigInt, mut b: BigInt, mut c: BigInt, d: u32) -> Self {
        if a.is_zero() && b.is_zero() {
            return QuadRat {
                a,
                b,
                c: BigInt::one(),
                d,
            };
        }
        let g = a.gcd(&b).gcd(&c);
        if !g.is_one() {
            a /= &g;
            b /= &g;
            c /= &g;
        }
        if c.is_negative() {
            a = -a;
            b = -b;
            c = -c;
        }
        QuadRat { a, b, c, d }
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn c(&self) -> &BigInt {
        &self.c
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// The rational value, if `b = 0`.
    pub fn to_rat(&self) -> Option<Rat> {
        self.is_rational()
            .then(|| Rat::new(self.a.clone(), self.c.clone()))
    }

    /// Radicand shared by both operands. Rationals adapt to the other side.
    fn common_radicand(&self, other: &Self) -> Result<u32, QuadError> {
        if self.d == other.d || other.is_rational() {
            Ok(self.d)
        } else if self.is_rational() {
            Ok(other.d)
        } else {
            Err(QuadError::RadicandMismatch {
                left: self.d,
                right: other.d,
            })
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, QuadError> {
        let d = self.common_radicand(other)?;
        Ok(Self::normalized(
            &self.a * &other.c + &other.a * &self.c,
            &self.b * &other.c + &other.b * &self.c,
            &self.c * &other.c,
            d,
        ))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, QuadError> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, QuadError> {
        let d = self.common_radicand(other)?;
        let dd = BigInt::from(d);
        Ok(Self::normalized(
            &self.a * &other.a + dd * &self.b * &other.b,
            &self.a * &other.b + &self.b * &other.a,
            &self.c * &other.c,
            d,
        ))
    }

    /// Multiplicative inverse, `c(a − b√d)/(a² − d·b²)`.
    pub fn recip(&self) -> Result<Self, QuadError> {
        if self.is_zero() {
            return Err(QuadError::DivisionByZero);
        }
        let norm = &self.a * &self.a - BigInt::from(self.d) * &self.b * &self.b;
        Ok(Self::normalized(
            &self.c * &self.a,
            -(&self.c * &self.b),
            norm,
            self.d,
        ))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, QuadError> {
        self.common_radicand(other)?;
        self.checked_mul(&other.recip()?)
    }

    /// Exact sign of the value: -1, 0 or +1.
    pub fn signum(&self) -> i32 {
        // c > 0, so the sign is that of a + b·√d.
        let sa = self.a.sign();
        let sb = self.b.sign();
        match (sa, sb) {
            (Sign::NoSign, Sign::NoSign) => 0,
            (Sign::Plus | Sign::NoSign, Sign::Plus | Sign::NoSign) => 1,
            (Sign::Minus | Sign::NoSign, Sign::Minus | Sign::NoSign) => -1,
            _ => {
                let a2 = &self.a * &self.a;
                let db2 = BigInt::from(self.d) * &self.b * &self.b;
                let cmp = a2.cmp(&db2);
                match (sa, cmp) {
                    (_, Ordering::Equal) => unreachable!("sqrt(d) is irrational"),
                    (Sign::Plus, Ordering::Greater) | (Sign::Minus, Ordering::Less) => 1,
                    _ => -1,
                }
            }
        }
    }

    /// Exact comparison of values.
    pub fn cmp_value(&self, other: &Self) -> Result<Ordering, QuadError> {
        Ok(self.checked_sub(other)?.signum().cmp(&0))
    }

    /// `⌊value⌋`.
    pub fn floor(&self) -> BigInt {
        let d_b2 = BigInt::from(self.d) * &self.b * &self.b;
        let root = d_b2.sqrt();
        // floor(b·√d): exact for b = 0, otherwise √d·|b| is irrational.
        let floor_b_sqrt = match self.b.sign() {
            Sign::Minus => -root - 1,
            _ => root,
        };
        (&self.a + floor_b_sqrt).div_floor(&self.c)
    }

    /// `self^k` by binary exponentiation.
    pub fn unit_pow(&self, mut k: u64) -> Self {
        let mut acc = QuadRat::normalized(BigInt::one(), BigInt::zero(), BigInt::one(), self.d);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Decimal expansion truncated toward zero after `digits` fractional digits.
    pub fn to_decimal(&self, digits: usize) -> String {
        let negative = self.signum() < 0;
        let abs = if negative { -self } else { self.clone() };
        let scale = num_traits::pow(BigInt::from(10), digits);
        let scaled = QuadRat::normalized(&abs.a * &scale, &abs.b * &scale, abs.c.clone(), abs.d);
        let n = scaled.floor();
        let s = n.to_string();
        let (int_part, frac_part) = if digits == 0 {
            (s, String::new())
        } else if s.len() > digits {
            let (i, f) = s.split_at(s.len() - digits);
            (i.to_string(), f.to_string())
        } else {
            ("0".to_string(), format!("{s:0>digits$}"))
        };
        let sign = if negative && !n.is_zero() { "-" } else { "" };
        if digits == 0 {
            format!("{sign}{int_part}")
        } else {
            format!("{sign}{int_part}.{frac_part}")
        }
    }

    /// Approximate value, for reporting and plotting only.
    pub fn to_f64(&self) -> f64 {
        let scaled =
            QuadRat::normalized(&self.a << 80u32, &self.b << 80u32, self.c.clone(), self.d);
        scaled.floor().to_f64().unwrap_or(f64::NAN) / 2f64.powi(80)
    }
}

impl PartialEq for QuadRat {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a
            && self.b == other.b
            && self.c == other.c
            && (self.d == other.d || self.b.is_zero())
    }
}

impl Eq for QuadRat {}

impl Hash for QuadRat {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.a.hash(state);
        self.b.hash(state);
        self.c.hash(state);
        if !self.b.is_zero() {
            self.d.hash(state);
        }
    }
}

impl PartialOrd for QuadRat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.cmp_value(other).ok()
    }
}

impl Neg for &QuadRat {
    type Output = QuadRat;
    fn neg(self) -> QuadRat {
        QuadRat {
            a: -&self.a,
            b: -&self.b,
            c: self.c.clone(),
            d: self.d,
        }
    }
}

impl Neg for QuadRat {
    type Output = QuadRat;
    fn neg(self) -> QuadRat {
        -&self
    }
}

// Operator forms panic on radicand mismatch or division by zero; the
// `checked_*` methods report those as errors instead.
macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&QuadRat> for &QuadRat {
            type Output = QuadRat;
            fn $method(self, rhs: &QuadRat) -> QuadRat {
                self.$checked(rhs)
                    .unwrap_or_else(|e| panic!("QuadRat::{}: {e}", stringify!($method)))
            }
        }
        impl $tr<QuadRat> for QuadRat {
            type Output = QuadRat;
            fn $method(self, rhs: QuadRat) -> QuadRat {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&QuadRat> for QuadRat {
            type Output = QuadRat;
            fn $method(self, rhs: &QuadRat) -> QuadRat {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);
forward_binop!(Div, div, checked_div);

impl fmt::Display for QuadRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = if self.b.is_zero() {
            self.a.to_string()
        } else {
            let surd = if self.b.is_one() {
                format!("sqrt({})", self.d)
            } else if self.b == -BigInt::one() {
                format!("-sqrt({})", self.d)
            } else {
                format!("{}*sqrt({})", self.b, self.d)
            };
            if self.a.is_zero() {
                surd
            } else if self.b.is_positive() {
                format!("{}+{}", self.a, surd)
            } else {
                format!("{}{}", self.a, surd)
            }
        };
        if self.c.is_one() {
            write!(f, "{num}")
        } else if self.b.is_zero() || self.a.is_zero() {
            write!(f, "{num}/{}", self.c)
        } else {
            write!(f, "({num})/{}", self.c)
        }
    }
}

/// Parses `2-sqrt(3)`, `(sqrt(3)-1)/2`, `-1+2*sqrt(2)`, `3/7` and similar.
pub fn parse_quad(text: &str) -> Result<QuadRat, String> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err("empty expression".into());
    }
    let (num, den) = match s.rfind('/') {
        Some(i) if !s[i + 1..].contains(')') => (&s[..i], &s[i + 1..]),
        _ => (s.as_str(), "1"),
    };
    let den: BigInt = den
        .parse()
        .map_err(|_| format!("bad denominator `{den}`"))?;
    let num = num
        .strip_prefix('(')
        .and_then(|n| n.strip_suffix(')'))
        .unwrap_or(num);
    let mut a = BigInt::zero();
    let mut b = BigInt::zero();
    let mut d: Option<u32> = None;
    let mut rest = num;
    while !rest.is_empty() {
        let (negative, body) = match rest.as_bytes()[0] {
            b'+' => (false, &rest[1..]),
            b'-' => (true, &rest[1..]),
            _ => (false, rest),
        };
        let end = body[1.min(body.len())..]
            .find(['+', '-'])
            .map(|i| i + 1)
            .unwrap_or(body.len());
        let term = &body[..end];
        rest = &body[end..];
        if let Some(pos) = term.find("sqrt") {
            let coef = term[..pos].trim_end_matches('*');
            let coef: BigInt = if coef.is_empty() {
                BigInt::one()
            } else {
                coef.parse()
                    .map_err(|_| format!("bad coefficient `{coef}`"))?
            };
            let rad = term[pos + 4..]
                .trim_start_matches('(')
                .trim_end_matches(')');
            let rad: u32 = rad.parse().map_err(|_| format!("bad radicand `{rad}`"))?;
            if d.is_some_and(|old| old != rad) {
                return Err("mixed radicands".into());
            }
            d = Some(rad);
            b += if negative { -coef } else { coef };
        } else {
            let v: BigInt = term.parse().map_err(|_| format!("bad term `{term}`"))?;
            a += if negative { -v } else { v };
        }
    }
    QuadRat::new(a, b, den, d.unwrap_or(2)).map_err(|e| e.to_string())
}
