//! The scalar type: exact rationals with arbitrary-precision integer parts.
//!
//! `Rat` is `num_rational::BigRational`, which already keeps values fully
//! reduced with a positive denominator (zero is 0/1). The helpers here cover
//! what the rest of the crate needs beyond plain arithmetic: construction
//! from machine integers, the canonical `num/den` string form, and
//! p-locality tests.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rat = num_rational::BigRational;

/// Integer as a rational.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Reduced fraction n/d. Panics on d = 0 (programmer error, not input).
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parse the canonical `num/den` form; the `/den` part may be omitted.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let bad = || Error::BadRational(s.to_string());
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num: BigInt = num.trim().parse().map_err(|_| bad())?;
    let den: BigInt = den.trim().parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rat::new(num, den))
}

/// Canonical string form: `num/den`, with `/den` omitted when den = 1.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// True iff the (reduced) denominator is coprime to p, i.e. the value lies
/// in the subring Z_(p) of the rationals.
pub fn is_p_integral(r: &Rat, p: u64) -> bool {
    !(r.denom() % BigInt::from(p)).is_zero()
}

/// True iff the value is a unit of Z_(p): both numerator and denominator
/// coprime to p.
pub fn is_p_unit(r: &Rat, p: u64) -> bool {
    let p = BigInt::from(p);
    !r.is_zero() && !(r.numer() % &p).is_zero() && !(r.denom() % &p).is_zero()
}

/// True iff the value is an integer.
pub fn is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}

/// True iff the value is a unit of the integers, i.e. 1 or -1.
pub fn is_integer_unit(r: &Rat) -> bool {
    r.denom().is_one() && r.numer().abs().is_one()
}

/// Deterministic trial-division primality check; inputs here are small.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}
