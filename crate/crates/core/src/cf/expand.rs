use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{CfError, Digit, FiniteCF, PeriodicCF};
use crate::quadfield::{QuadRat, Rat};

pub const EXPAND_ITERATION_CAP: usize = 1_000_000;

fn in_unit_interval(x: &QuadRat) -> bool {
    x.signum() > 0 && x.floor().is_zero()
}

/// One step of the Gauss map `x ↦ 1/x − ⌊1/x⌋`, returning the digit as well.
fn gauss_step(x: &QuadRat) -> Result<(Digit, QuadRat), CfError> {
    let inv = x.recip()?;
    let a = inv.floor();
    let digit: Digit = a.clone().try_into().map_err(|_| CfError::OutOfRange)?;
    let rest = inv.checked_sub(&QuadRat::from_int(a, x.d())?)?;
    Ok((digit, rest))
}

pub fn gauss_map(x: &QuadRat) -> Result<QuadRat, CfError> {
    if !in_unit_interval(x) {
        return Err(CfError::OutOfRange);
    }
    Ok(gauss_step(x)?.1)
}

/// Exact periodic expansion of a quadratic irrational in (0,1).
pub fn expand_quadratic(x: &QuadRat) -> Result<PeriodicCF, CfError> {
    if x.is_rational() {
        return Err(CfError::RationalInput);
    }
    if !in_unit_interval(x) {
        return Err(CfError::OutOfRange);
    }
    let mut seen: HashMap<QuadRat, usize> = HashMap::new();
    let mut digits = Vec::new();
    let mut state = x.clone();
    for step in 0..EXPAND_ITERATION_CAP {
        if let Some(&start) = seen.get(&state) {
            let period = digits.split_off(start);
            return PeriodicCF::new(digits, period);
        }
        seen.insert(state.clone(), step);
        let (a, next) = gauss_step(&state)?;
        digits.push(a);
        state = next;
    }
    Err(CfError::IterationCap(EXPAND_ITERATION_CAP))
}

/// Euclidean expansion of a rational in (0,1), canonical form.
pub fn expand_rational(x: &Rat) -> Result<FiniteCF, CfError> {
    if !x.is_positive() || x >= &Rat::one() {
        return Err(CfError::OutOfRange);
    }
    let (mut p, mut q) = (x.numer().clone(), x.denom().clone());
    let mut digits = Vec::new();
    while !p.is_zero() {
        let (a, r) = q.div_rem(&p);
        digits.push(a.try_into().map_err(|_| CfError::OutOfRange)?);
        q = std::mem::replace(&mut p, r);
    }
    Ok(FiniteCF::new(digits)?.canonical())
}

/// Digits known to be correct for every value in the input interval.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct CertifiedExpansion {
    pub digits: Vec<Digit>,
    pub certified: usize,
    /// The input was an exact rational whose expansion ended.
    pub terminated: bool,
}

/// Expands every number in `[lo, hi]` simultaneously, stopping at the first
/// digit on which the endpoints disagree.
pub fn expand_interval(lo: &Rat, hi: &Rat, terms: usize) -> Result<CertifiedExpansion, CfError> {
    if lo > hi || !lo.is_positive() || hi >= &Rat::one() {
        return Err(CfError::OutOfRange);
    }
    let (mut lo, mut hi) = (lo.clone(), hi.clone());
    let mut digits = Vec::new();
    let mut terminated = false;
    while digits.len() < terms {
        if lo.is_zero() && hi.is_zero() {
            terminated = true;
            break;
        }
        if !lo.is_positive() {
            break;
        }
        let (inv_lo, inv_hi) = (hi.recip(), lo.recip());
        let a = inv_lo.floor();
        if a != inv_hi.floor() {
            break;
        }
        digits.push(a.to_integer().try_into().map_err(|_| CfError::OutOfRange)?);
        lo = inv_lo - &a;
        hi = inv_hi - &a;
    }
    if digits.is_empty() && !terminated && terms > 0 {
        return Err(CfError::PrecisionExhausted);
    }
    if terminated {
        if let Some(fixed) = FiniteCF::new(digits.clone()).ok().map(|f| f.canonical()) {
            digits = fixed.digits().to_vec();
        }
    }
    Ok(CertifiedExpansion {
        certified: digits.len(),
        digits,
        terminated,
    })
}

/// Parses a decimal literal such as `0.14758` or `1e-60` into an exact rational.
pub fn parse_decimal(text: &str) -> Result<Rat, CfError> {
    let text = text.trim();
    let (mantissa, exp) = match text.split_once(['e', 'E']) {
        Some((m, e)) => (
            m,
            e.parse::<i32>()
                .map_err(|_| CfError::Parse(format!("not a decimal: {text:?}")))?,
        ),
        None => (text, 0),
    };
    let r = parse_plain(mantissa)?;
    let scale = Rat::from_integer(num_traits::pow(
        BigInt::from(10),
        exp.unsigned_abs() as usize,
    ));
    Ok(if exp >= 0 { r * scale } else { r / scale })
}

fn parse_plain(text: &str) -> Result<Rat, CfError> {
    let (neg, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty()
        || !int_part
            .chars()
            .chain(frac_part.chars())
            .all(|c| c.is_ascii_digit())
    {
        return Err(CfError::Parse(format!("not a decimal: {text:?}")));
    }
    let digits = format!("{int_part}{frac_part}");
    let numer: BigInt = if digits.is_empty() {
        BigInt::zero()
    } else {
        digits
            .parse()
            .map_err(|_| CfError::Parse(text.to_string()))?
    };
    let denom = num_traits::pow(BigInt::from(10), frac_part.len());
    let r = Rat::new(numer, denom);
    Ok(if neg { -r } else { r })
}

/// Certified expansion of `value ± err`, `value` given as a decimal string.
pub fn expand_real(value: &str, err: &Rat, terms: usize) -> Result<CertifiedExpansion, CfError> {
    let v = parse_decimal(value)?;
    expand_interval(&(&v - err), &(&v + err), terms)
}
