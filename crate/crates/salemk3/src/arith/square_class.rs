//! Square classes: canonical representatives of `Q^x / (Q^x)^2` as a sign
//! together with a squarefree radical. Equality of square classes is then
//! structural equality, which is what every determinant and discriminant
//! comparison in the higher modules reduces to.

use std::fmt;

use num::bigint::BigUint;
use num::integer::Roots;
use num::{One, Signed, Zero};

use super::primes::{is_perfect_square, odd_exponent_primes, FactorBudget};
use super::{sign_of, ArithError, Rat};

/// An element of `Q^x / (Q^x)^2` in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SquareClass {
    sign: i8,
    radical: BigUint,
}

impl SquareClass {
    /// The trivial class (the class of 1).
    pub fn one() -> SquareClass {
        SquareClass {
            sign: 1,
            radical: BigUint::one(),
        }
    }

    /// The class of -1.
    pub fn minus_one() -> SquareClass {
        SquareClass {
            sign: -1,
            radical: BigUint::one(),
        }
    }

    /// Builds a class from a sign and an already-squarefree radical.
    /// Panics if the radical is zero; squarefreeness is the caller's duty
    /// (everything inside this crate goes through `square_class`).
    pub fn from_parts(sign: i8, radical: BigUint) -> SquareClass {
        assert!(sign == 1 || sign == -1, "sign must be +1 or -1");
        assert!(!radical.is_zero(), "radical must be nonzero");
        SquareClass { sign, radical }
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn radical(&self) -> &BigUint {
        &self.radical
    }

    pub fn is_trivial(&self) -> bool {
        self.sign == 1 && self.radical.is_one()
    }

    /// Group law. The product radical is `r1 r2 / gcd(r1, r2)^2`, which stays
    /// squarefree without any factorization.
    pub fn mul(&self, other: &SquareClass) -> SquareClass {
        let g = num::Integer::gcd(&self.radical, &other.radical);
        SquareClass {
            sign: self.sign * other.sign,
            radical: (&self.radical / &g) * (&other.radical / &g),
        }
    }

    /// The class of `-q` for `q` in this class.
    pub fn negate(&self) -> SquareClass {
        SquareClass {
            sign: -self.sign,
            radical: self.radical.clone(),
        }
    }

    /// `self^m` in the group: trivial for even m, self for odd m.
    pub fn pow(&self, m: u64) -> SquareClass {
        if m % 2 == 0 {
            SquareClass::one()
        } else {
            self.clone()
        }
    }

    /// The canonical rational representative `sign * radical`.
    pub fn representative(&self) -> Rat {
        let n = num::BigInt::from(self.radical.clone());
        let signed = if self.sign < 0 { -n } else { n };
        Rat::from(signed)
    }
}

impl fmt::Display for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign < 0 {
            write!(f, "-{}", self.radical)
        } else {
            write!(f, "{}", self.radical)
        }
    }
}

/// Canonical square class of a nonzero rational: `(sign q, squarefree part
/// of numerator * denominator)`.
pub fn square_class(q: &Rat) -> Result<SquareClass, ArithError> {
    square_class_with(q, &FactorBudget::default())
}

pub fn square_class_with(q: &Rat, budget: &FactorBudget) -> Result<SquareClass, ArithError> {
    if q.is_zero() {
        return Err(ArithError::ZeroInput);
    }
    let num = q.numer().abs().to_biguint().expect("abs is nonnegative");
    let den = q.denom().to_biguint().expect("denominator is positive");
    // Odd-exponent primes of numerator XOR denominator; q and num*den
    // differ by the square den^2.
    let mut primes = odd_exponent_primes(&num, budget)?;
    for p in odd_exponent_primes(&den, budget)? {
        if !primes.remove(&p) {
            primes.insert(p);
        }
    }
    let radical = primes.into_iter().fold(BigUint::one(), |acc, p| acc * p);
    Ok(SquareClass {
        sign: sign_of(q),
        radical,
    })
}

/// Exact test for being the square of a rational. Zero counts as a square.
/// Never factors anything: a reduced fraction is a square iff numerator and
/// denominator are both perfect squares.
pub fn is_square(q: &Rat) -> bool {
    if q.is_zero() {
        return true;
    }
    if q.is_negative() {
        return false;
    }
    let num = q.numer().to_biguint().expect("positive");
    let den = q.denom().to_biguint().expect("positive");
    is_perfect_square(&num) && is_perfect_square(&den)
}

/// Fermat's two-square criterion with a constructive witness: returns
/// `Some((u, v))` with `u^2 + v^2 = d` iff no prime `p = 3 (mod 4)` divides
/// `d` to an odd power. The witness comes from a bounded search over
/// `u <= sqrt(d)`.
pub fn is_sum_of_two_squares(d: u64) -> Option<(u64, u64)> {
    assert!(d >= 1, "d must be positive");
    let r = d.sqrt();
    for u in 0..=r {
        let rest = d - u * u;
        let v = rest.sqrt();
        if v * v == rest {
            return Some((u, v));
        }
        if u * u > rest {
            break;
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat_int};

    #[test]
    fn canonical_classes() {
        assert_eq!(
            square_class(&rat_int(18)).unwrap(),
            SquareClass::from_parts(1, BigUint::from(2u32))
        );
        assert_eq!(
            square_class(&rat_int(-12)).unwrap(),
            SquareClass::from_parts(-1, BigUint::from(3u32))
        );
        assert_eq!(square_class(&rat(4, 9)).unwrap(), SquareClass::one());
        assert_eq!(square_class(&rat(5, 3)).unwrap().radical(), &BigUint::from(15u32));
        assert!(square_class(&rat_int(0)).is_err());
    }

    #[test]
    fn square_tests() {
        assert!(is_square(&rat_int(81)));
        assert!(is_square(&rat_int(1)));
        assert!(is_square(&rat_int(0)));
        assert!(!is_square(&rat_int(-4)));
        assert!(is_square(&rat(49, 64)));
        assert!(!is_square(&rat(2, 1)));
    }

    #[test]
    fn class_group_law() {
        let a = square_class(&rat_int(6)).unwrap();
        let b = square_class(&rat_int(10)).unwrap();
        // 6 * 10 = 60 ~ 15
        assert_eq!(a.mul(&b), square_class(&rat_int(15)).unwrap());
        assert!(a.mul(&a).is_trivial());
        assert_eq!(a.pow(3), a);
        assert!(a.pow(2).is_trivial());
        assert_eq!(a.negate().sign(), -1);
    }

    #[test]
    fn two_squares() {
        assert_eq!(is_sum_of_two_squares(5), Some((1, 2)));
        assert_eq!(is_sum_of_two_squares(2), Some((1, 1)));
        assert_eq!(is_sum_of_two_squares(3), None);
        assert_eq!(is_sum_of_two_squares(1), Some((0, 1)));
        // Matches the prime-factor criterion on a window.
        for d in 1..2000u64 {
            let brute = (0..).take_while(|u| u * u <= d).any(|u| {
                let rest = d - u * u;
                let v = rest.sqrt();
                v * v == rest
            });
            assert_eq!(is_sum_of_two_squares(d).is_some(), brute, "d = {d}");
        }
    }
}
