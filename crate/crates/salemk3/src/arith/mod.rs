//! Base layer: exact rationals, square classes of `Q^x / (Q^x)^2`, p-adic
//! valuations and squares, Hilbert symbols, and quaternion (Brauer) classes
//! represented by their finite ramification support.

mod hilbert;
mod primes;
mod square_class;

use std::cmp::Ordering;
use std::fmt;

use num::bigint::BigUint;
use num::{BigInt, BigRational, One, Signed, Zero};
use thiserror::Error;

pub use hilbert::{hilbert_symbol, is_padic_square, padic_valuation, quaternion_class};
pub use primes::{
    factor, is_perfect_square, is_prime, is_prime_strict, odd_exponent_primes, small_primes,
    FactorBudget,
};
pub use square_class::{is_square, is_sum_of_two_squares, square_class, SquareClass};

/// Exact rational scalar. `num::BigRational` keeps the canonical reduced
/// form with a positive denominator, which is exactly the invariant we need.
pub type Rat = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("zero input is not allowed here")]
    ZeroInput,
    #[error("{0} is not a prime")]
    NotPrime(String),
    #[error("factorization budget exhausted on {0}")]
    FactorizationBudget(String),
    #[error("input exceeds the deterministic primality range")]
    PrimalityRange,
    #[error("cannot parse {0:?} as a rational number")]
    BadRational(String),
}

/// Convenience constructor for small rationals.
pub fn rat(n: i64, d: i64) -> Rat {
    assert!(d != 0, "zero denominator");
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Convenience constructor for small integers as rationals.
pub fn rat_int(n: i64) -> Rat {
    Rat::from(BigInt::from(n))
}

/// Parses `"p/q"` or `"p"` with arbitrary-precision parts.
pub fn parse_rat(s: &str) -> Result<Rat, ArithError> {
    let t = s.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: BigInt = num.parse().map_err(|_| ArithError::BadRational(s.into()))?;
    let d: BigInt = den.parse().map_err(|_| ArithError::BadRational(s.into()))?;
    if d.is_zero() {
        return Err(ArithError::BadRational(s.into()));
    }
    Ok(Rat::new(n, d))
}

/// Formats a rational as `"p/q"`, or `"p"` when the denominator is 1.
pub fn format_rat(q: &Rat) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// A place of `Q`: the real place or a finite prime.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Place {
    /// The archimedean (real) place.
    Infinity,
    /// A finite prime. The constructor checks primality.
    Finite(BigUint),
}

impl Place {
    /// Builds a finite place, verifying that `p` is prime.
    pub fn finite(p: u64) -> Result<Place, ArithError> {
        Place::finite_big(BigUint::from(p))
    }

    pub fn finite_big(p: BigUint) -> Result<Place, ArithError> {
        if !is_prime(&p) {
            return Err(ArithError::NotPrime(p.to_string()));
        }
        Ok(Place::Finite(p))
    }

    /// Builds a finite place without a primality check. For internal use on
    /// values that already come out of a factorization.
    pub(crate) fn finite_unchecked(p: BigUint) -> Place {
        Place::Finite(p)
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Place::Infinity)
    }

    pub fn prime(&self) -> Option<&BigUint> {
        match self {
            Place::Infinity => None,
            Place::Finite(p) => Some(p),
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Infinity => write!(f, "inf"),
            Place::Finite(p) => write!(f, "{p}"),
        }
    }
}

impl Ord for Place {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Place::Finite(a), Place::Finite(b)) => a.cmp(b),
            (Place::Finite(_), Place::Infinity) => Ordering::Less,
            (Place::Infinity, Place::Finite(_)) => Ordering::Greater,
            (Place::Infinity, Place::Infinity) => Ordering::Equal,
        }
    }
}

impl PartialOrd for Place {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sign of a nonzero rational as `+1` or `-1`.
pub(crate) fn sign_of(q: &Rat) -> i8 {
    if q.is_negative() {
        -1
    } else {
        1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_roundtrip() {
        let q = parse_rat("-12/8").unwrap();
        assert_eq!(q, rat(-3, 2));
        assert_eq!(format_rat(&q), "-3/2");
        assert_eq!(format_rat(&rat_int(7)), "7");
        assert!(parse_rat("3/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn place_ordering_and_display() {
        let p2 = Place::finite(2).unwrap();
        let p7 = Place::finite(7).unwrap();
        assert!(p2 < p7);
        assert!(p7 < Place::Infinity);
        assert_eq!(p2.to_string(), "2");
        assert_eq!(Place::Infinity.to_string(), "inf");
        assert!(Place::finite(6).is_err());
    }
}
