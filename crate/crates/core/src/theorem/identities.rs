use num_traits::{One, Zero};
use serde::Serialize;

use super::TheoremError;
use crate::quadfield::{QuadError, QuadRat, Rat};

/// Which word is inserted into a solution triple.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum InsertionKind {
    /// Inserts a 2 after the leading digit.
    Two,
    /// Inserts the block 1,1,2,1,1 into z and 3,1 into x and y.
    OneOneTwoOneOne,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Insertion {
    pub x: QuadRat,
    pub y: QuadRat,
    pub z: QuadRat,
    /// `1 − X − Y − Z` computed from the transformed values.
    pub residual: QuadRat,
    /// Closed-form value of the residual when `x + y + z = 1`.
    pub closed_form: QuadRat,
}

fn pole(e: QuadError) -> TheoremError {
    match e {
        QuadError::DivisionByZero => TheoremError::Pole,
        other => TheoremError::Quad(other),
    }
}

/// `1/(d1 + 1/(... + 1/(dn + 1/t)))` with pole detection.
fn chain(digits: &[i64], t: &QuadRat) -> Result<QuadRat, TheoremError> {
    let d = t.d();
    let mut v = t.recip().map_err(pole)?;
    for &a in digits.iter().rev() {
        v = QuadRat::from_int(a, d)?
            .checked_add(&v)?
            .recip()
            .map_err(pole)?;
    }
    Ok(v)
}

fn int(n: i64, d: u32) -> QuadRat {
    QuadRat::from_int(n, d).expect("supported radicand")
}

/// Applies one insertion to `(x, y, z)` and evaluates the residual.
pub fn insertion(
    kind: InsertionKind,
    x: &QuadRat,
    y: &QuadRat,
    z: &QuadRat,
) -> Result<Insertion, TheoremError> {
    let d = [x, y, z]
        .iter()
        .find(|v| !v.is_rational())
        .map_or(2, |v| v.d());
    let one = int(1, d);
    let (nx, ny, nz, closed) = match kind {
        InsertionKind::Two => {
            let tx = x.recip().map_err(pole)?.checked_sub(&one)?;
            let ty = y.recip().map_err(pole)?.checked_sub(&one)?;
            let nz = int(2, d).checked_add(z)?.recip().map_err(pole)?;
            let num = x.checked_sub(y)?;
            let num = num.checked_mul(&num)?;
            let den = int(3, d)
                .checked_sub(&int(2, d).checked_mul(x)?)?
                .checked_mul(&int(3, d).checked_sub(&int(2, d).checked_mul(y)?)?)?
                .checked_mul(&int(3, d).checked_sub(x)?.checked_sub(y)?)?;
            (
                chain(&[3], &tx)?,
                chain(&[3], &ty)?,
                nz,
                num.checked_div(&den).map_err(pole)?,
            )
        }
        InsertionKind::OneOneTwoOneOne => {
            let tz = z.recip().map_err(pole)?.checked_sub(&one)?;
            let num = x.checked_sub(y)?;
            let num = int(-5, d).checked_mul(&num.checked_mul(&num)?)?;
            let ten_plus = |v: &QuadRat| int(10, d).checked_mul(v)?.checked_add(&int(13, d));
            let den = ten_plus(x)?.checked_mul(&ten_plus(y)?)?.checked_mul(
                &int(5, d)
                    .checked_mul(&x.checked_add(y)?)?
                    .checked_add(&int(13, d))?,
            )?;
            (
                chain(&[3, 3], &one.checked_add(x)?)?,
                chain(&[3, 3], &one.checked_add(y)?)?,
                chain(&[2, 1, 1, 2, 1], &tz)?,
                num.checked_div(&den).map_err(pole)?,
            )
        }
    };
    let residual = one.checked_sub(&nx)?.checked_sub(&ny)?.checked_sub(&nz)?;
    Ok(Insertion {
        x: nx,
        y: ny,
        z: nz,
        residual,
        closed_form: closed,
    })
}

/// Further rational identities of the same shape as the insertions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ExtraIdentity {
    A,
    B,
    C,
    Lucky1,
    Lucky2,
}

impl ExtraIdentity {
    pub const ALL: [ExtraIdentity; 5] = [
        ExtraIdentity::A,
        ExtraIdentity::B,
        ExtraIdentity::C,
        ExtraIdentity::Lucky1,
        ExtraIdentity::Lucky2,
    ];
}

fn rdiv(a: Rat, b: Rat) -> Result<Rat, TheoremError> {
    if b.is_zero() {
        Err(TheoremError::Pole)
    } else {
        Ok(a / b)
    }
}

fn rchain(digits: &[i64], t: Rat) -> Result<Rat, TheoremError> {
    let mut v = rdiv(Rat::one(), t)?;
    for &a in digits.iter().rev() {
        v = rdiv(Rat::one(), Rat::from_integer(a.into()) + v)?;
    }
    Ok(v)
}

/// Evaluates both sides of an identity at rational `(x, y)`.
pub fn extra_identity(id: ExtraIdentity, x: &Rat, y: &Rat) -> Result<(Rat, Rat), TheoremError> {
    let k = |n: i64| Rat::from_integer(n.into());
    let one = k(1);
    let w = &one - x - y;
    let inv = |v: &Rat| rdiv(one.clone(), v.clone());
    let sq = (x - y) * (x - y);
    match id {
        ExtraIdentity::A => {
            let lhs = &one
                - rchain(&[2, 1, 3], inv(x)? - &one)?
                - rchain(&[2, 1, 3], inv(y)? - &one)?
                - rchain(&[3, 1, 1], inv(&w)?)?;
            let den = (k(8) * x - k(11)) * (k(8) * y - k(11)) * (k(11) - k(4) * x - k(4) * y);
            Ok((lhs, rdiv(k(4) * sq, den)?))
        }
        ExtraIdentity::B => {
            let lhs = &one
                - rchain(&[3, 1, 1], inv(x)?)?
                - rchain(&[3, 1, 1], inv(y)?)?
                - rchain(&[2, 3, 1], inv(&w)? - &one)?;
            let den = (k(4) * x + k(7)) * (k(4) * y + k(7)) * (k(2) * x + k(2) * y + k(7));
            Ok((lhs, rdiv(k(-2) * sq, den)?))
        }
        ExtraIdentity::C => {
            let lhs = &one
                - rchain(&[3, 3, 1], inv(x)? - k(2))?
                - rchain(&[3, 3, 1], inv(y)? - k(2))?
                - rchain(&[2, 1, 1, 1], w.clone())?;
            let den = (k(16) * x - k(13)) * (k(16) * y - k(13)) * (k(13) - k(8) * x - k(8) * y);
            Ok((lhs, rdiv(k(8) * sq, den)?))
        }
        ExtraIdentity::Lucky1 => {
            let lhs = &one
                - rchain(&[3], inv(x)? - &one)?
                - rchain(&[3], inv(y)? - &one)?
                - rchain(&[2, 2], inv(&w)?)?;
            let num = k(2) * (x + y - k(3)) * (k(2) * x * y - k(2) * x - k(2) * y + &one);
            let den = (k(2) * x - k(3)) * (k(2) * y - k(3)) * (k(7) - k(2) * x - k(2) * y);
            Ok((lhs, rdiv(num, den)?))
        }
        ExtraIdentity::Lucky2 => {
            let big_x = rchain(&[3], inv(x)? - &one)?;
            let big_y = rchain(&[3], inv(y)? - &one)?;
            let lhs = k(2) * &big_x * &big_y - k(2) * &big_x - k(2) * &big_y + &one;
            let num = -(k(2) * x * y - k(2) * x - k(2) * y + &one);
            let den = (k(2) * x - k(3)) * (k(2) * y - k(3));
            Ok((lhs, rdiv(num, den)?))
        }
    }
}
