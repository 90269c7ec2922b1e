//! Exact rational scalars and the small number-theoretic helpers built on them.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational; the coordinate type for all polytope work.
pub type Rational = BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn from_usize(v: usize) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"p"` or `"p/q"` (surrounding whitespace allowed, `q != 0`).
/// The result is normalized so that the denominator is positive.
pub fn parse(s: &str) -> Result<Rational> {
    let err = || Error::ParseRational(s.to_string());
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| err())?;
    let den: BigInt = den.parse().map_err(|_| err())?;
    if den.is_zero() {
        return Err(err());
    }
    Ok(Rational::new(num, den))
}

/// Canonical text form: `"p"` for integers, `"p/q"` with `q > 0` and
/// `gcd(p, q) = 1` otherwise.
pub fn format(r: &Rational) -> String {
    r.to_string()
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// The rational with the smallest denominator in the closed interval
/// `[lo, hi]`; among integers, the one closest to zero.
pub fn simplest_between(lo: &Rational, hi: &Rational) -> Rational {
    assert!(lo <= hi, "empty interval");
    if lo.is_positive() || lo.is_zero() {
        simplest_nonneg(lo, hi)
    } else if hi.is_negative() {
        -simplest_nonneg(&-hi, &-lo)
    } else {
        Rational::zero()
    }
}

fn simplest_nonneg(lo: &Rational, hi: &Rational) -> Rational {
    let fl = lo.floor();
    if &fl == lo {
        return fl;
    }
    let next = &fl + Rational::one();
    if &next <= hi {
        return next;
    }
    // lo and hi share the integer part; recurse on reciprocals of the
    // fractional parts.
    let a = lo - &fl;
    let b = hi - &fl;
    fl + simplest_nonneg(&b.recip(), &a.recip()).recip()
}

/// Closest rational to `x` whose denominator does not exceed `max_den`.
pub fn limit_denominator(x: f64, max_den: u64) -> Result<Rational> {
    assert!(max_den >= 1, "denominator bound must be positive");
    let exact = Rational::from_float(x).ok_or(Error::NonFinite)?;
    let max = BigInt::from(max_den);
    if exact.denom() <= &max {
        return Ok(exact);
    }
    let (mut p0, mut q0, mut p1, mut q1) = (
        BigInt::zero(),
        BigInt::one(),
        BigInt::one(),
        BigInt::zero(),
    );
    let (mut n, mut d) = (exact.numer().clone(), exact.denom().clone());
    loop {
        let a = n.div_floor(&d);
        let q2 = &q0 + &a * &q1;
        if q2 > max {
            break;
        }
        let p2 = &p0 + &a * &p1;
        p0 = std::mem::replace(&mut p1, p2);
        q0 = std::mem::replace(&mut q1, q2);
        let r = &n - &a * &d;
        n = std::mem::replace(&mut d, r);
    }
    let k = (&max - &q0).div_floor(&q1);
    let lower = Rational::new(&p0 + &k * &p1, &q0 + &k * &q1);
    let upper = Rational::new(p1, q1);
    if (&upper - &exact).abs() <= (&lower - &exact).abs() {
        Ok(upper)
    } else {
        Ok(lower)
    }
}
