//! Small helpers on top of `num-rational` used by the lattice and flux code.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Builds a rational from a `[num, den]` pair, rejecting a zero denominator.
pub fn from_pair(pair: [i64; 2]) -> Result<BigRational> {
    if pair[1] == 0 {
        return Err(Error::InvalidInput(format!(
            "zero denominator in rational {}/{}",
            pair[0], pair[1]
        )));
    }
    Ok(ratio(pair[0], pair[1]))
}

/// Inverse of [`from_pair`]; fails when numerator or denominator overflow `i64`.
pub fn to_pair(q: &BigRational) -> Result<[i64; 2]> {
    match (q.numer().to_i64(), q.denom().to_i64()) {
        (Some(n), Some(d)) => Ok([n, d]),
        _ => Err(Error::InvalidInput(format!("rational {q} does not fit in i64"))),
    }
}

pub fn to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

pub fn lcm_denominators<'a>(values: impl IntoIterator<Item = &'a BigRational>) -> BigInt {
    values.into_iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

/// Best rational approximation of `x` with denominator at most `max_den`
/// (continued fraction convergents and the best semiconvergent).
pub fn rationalize(x: f64, max_den: u64) -> Result<BigRational> {
    if !x.is_finite() {
        return Err(Error::InvalidInput(format!("cannot rationalize {x}")));
    }
    let exact = BigRational::from_float(x).ok_or_else(|| Error::InvalidInput(format!("cannot rationalize {x}")))?;
    if exact.denom() <= &BigInt::from(max_den) {
        return Ok(exact);
    }
    let max_den = BigInt::from(max_den);
    let (mut p0, mut q0) = (BigInt::zero(), BigInt::one());
    let (mut p1, mut q1) = (BigInt::one(), BigInt::zero());
    let mut rest = exact.clone();
    loop {
        let a = rest.floor().to_integer();
        let q2 = &q0 + &a * &q1;
        if q2 > max_den {
            // largest admissible semiconvergent
            let k = (&max_den - &q0) / &q1;
            let semi = BigRational::new(&p0 + &k * &p1, &q0 + &k * &q1);
            let conv = BigRational::new(p1.clone(), q1.clone());
            let better = if (&semi - &exact).abs() < (&conv - &exact).abs() {
                semi
            } else {
                conv
            };
            return Ok(better);
        }
        let p2 = &p0 + &a * &p1;
        p0 = std::mem::replace(&mut p1, p2);
        q0 = std::mem::replace(&mut q1, q2);
        let frac = &rest - BigRational::from_integer(a);
        if frac.is_zero() {
            return Ok(BigRational::new(p1, q1));
        }
        rest = frac.recip();
    }
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}
