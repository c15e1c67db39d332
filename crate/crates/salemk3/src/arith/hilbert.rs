//! p-adic valuations, local squares, and Hilbert symbols. The quaternion
//! class of a pair `(a, b)` is returned as its ramification support: the
//! finite, even-cardinality set of places where the symbol is -1. Brauer
//! group addition then becomes symmetric difference of supports.

use std::collections::BTreeSet;

use num::bigint::BigUint;
use num::{Integer, One, Signed, Zero};

use super::primes::{odd_exponent_primes, FactorBudget};
use super::{ArithError, Place, Rat};

/// Exact exponent of the prime `p` in the nonzero rational `q`.
pub fn padic_valuation(q: &Rat, p: &BigUint) -> Result<i64, ArithError> {
    if q.is_zero() {
        return Err(ArithError::ZeroInput);
    }
    let num = q.numer().abs().to_biguint().expect("nonzero");
    let den = q.denom().to_biguint().expect("positive");
    Ok(int_valuation(&num, p) - int_valuation(&den, p))
}

fn int_valuation(n: &BigUint, p: &BigUint) -> i64 {
    let mut v = 0i64;
    let mut m = n.clone();
    loop {
        let (q, r) = m.div_rem(p);
        if !r.is_zero() {
            return v;
        }
        v += 1;
        m = q;
    }
}

/// The p-adic unit part of `q` reduced mod `modulus` (which must be odd or a
/// power of two coprime to the unit's denominator). For an odd denominator d
/// and modulus 8, `d^{-1} = d (mod 8)`, and for a prime modulus we invert by
/// Fermat.
fn unit_part_mod(q: &Rat, p: &BigUint, modulus: &BigUint) -> BigUint {
    let v_num = int_valuation(&q.numer().abs().to_biguint().unwrap(), p);
    let v_den = int_valuation(&q.denom().to_biguint().unwrap(), p);
    let num_unit = q.numer().abs().to_biguint().unwrap() / num::pow::pow(p.clone(), v_num as usize);
    let den_unit = q.denom().to_biguint().unwrap() / num::pow::pow(p.clone(), v_den as usize);
    let n = &num_unit % modulus;
    let d = &den_unit % modulus;
    let d_inv = if *modulus == BigUint::from(8u32) {
        d.clone() // d * d = 1 (mod 8) for odd d
    } else {
        d.modpow(&(modulus - BigUint::from(2u32)), modulus)
    };
    let mut u = (n * d_inv) % modulus;
    if q.is_negative() {
        u = (modulus - u) % modulus;
    }
    u
}

/// Legendre symbol of a unit `u (mod p)` for an odd prime p, as +1 or -1.
fn legendre(u: &BigUint, p: &BigUint) -> i8 {
    let e = (p - BigUint::one()) >> 1;
    let r = u.modpow(&e, p);
    if r.is_one() {
        1
    } else {
        -1
    }
}

/// Whether the nonzero rational `q` is a square in `Q_p`: even valuation and
/// a square unit part (a quadratic residue for odd p; `= 1 (mod 8)` for p=2).
pub fn is_padic_square(q: &Rat, p: &BigUint) -> bool {
    if q.is_zero() {
        return false;
    }
    let v = padic_valuation(q, p).expect("nonzero");
    if v % 2 != 0 {
        return false;
    }
    if *p == BigUint::from(2u32) {
        // The sign of q is already folded into the unit part.
        unit_part_mod(q, p, &BigUint::from(8u32)).is_one()
    } else {
        legendre(&unit_part_mod(q, p, p), p) == 1
    }
}

/// The Hilbert symbol `(a, b)_v` for nonzero rationals, as +1 or -1.
///
/// At the real place it is -1 iff both arguments are negative. At p = 2 it
/// is `(-1)^{e(u)e(w) + a*o(w) + b*o(u)}` with `u, w` the unit parts,
/// `e(u) = (u-1)/2` and `o(u) = (u^2-1)/8` taken mod 2. At an odd prime it
/// is the Legendre symbol of `(-1)^{ab} u^b w^a`.
pub fn hilbert_symbol(a: &Rat, b: &Rat, v: &Place) -> Result<i8, ArithError> {
    if a.is_zero() || b.is_zero() {
        return Err(ArithError::ZeroInput);
    }
    match v {
        Place::Infinity => Ok(if a.is_negative() && b.is_negative() {
            -1
        } else {
            1
        }),
        Place::Finite(p) => {
            let alpha = padic_valuation(a, p)?.rem_euclid(2) as u32;
            let beta = padic_valuation(b, p)?.rem_euclid(2) as u32;
            if *p == BigUint::from(2u32) {
                let eight = BigUint::from(8u32);
                let u = unit_part_mod(a, p, &eight);
                let w = unit_part_mod(b, p, &eight);
                let eps = |x: &BigUint| -> u32 {
                    let x = x.to_u32_digits().first().copied().unwrap_or(0);
                    u32::from(x == 3 || x == 7)
                };
                let omg = |x: &BigUint| -> u32 {
                    let x = x.to_u32_digits().first().copied().unwrap_or(0);
                    u32::from(x == 3 || x == 5)
                };
                let expo = eps(&u) * eps(&w) + alpha * omg(&w) + beta * omg(&u);
                Ok(if expo % 2 == 0 { 1 } else { -1 })
            } else {
                let u = unit_part_mod(a, p, p);
                let w = unit_part_mod(b, p, p);
                let mut e = BigUint::one();
                if alpha * beta % 2 == 1 {
                    e = p - BigUint::one(); // -1 mod p
                }
                if beta == 1 {
                    e = (e * &u) % p;
                }
                if alpha == 1 {
                    e = (e * &w) % p;
                }
                Ok(legendre(&(e % p), p))
            }
        }
    }
}

/// Ramification support of the quaternion algebra `(a, b)`: the set of
/// places where the Hilbert symbol is -1. Always has even cardinality by the
/// product formula. Only the real place, 2, and the odd primes appearing to
/// an odd power in `a` or `b` can ramify.
pub fn quaternion_class(a: &Rat, b: &Rat) -> Result<BTreeSet<Place>, ArithError> {
    quaternion_class_with(a, b, &FactorBudget::default())
}

pub fn quaternion_class_with(
    a: &Rat,
    b: &Rat,
    budget: &FactorBudget,
) -> Result<BTreeSet<Place>, ArithError> {
    if a.is_zero() || b.is_zero() {
        return Err(ArithError::ZeroInput);
    }
    let mut candidates: BTreeSet<BigUint> = BTreeSet::new();
    for q in [a, b] {
        let nd = q.numer().abs().to_biguint().unwrap() * q.denom().to_biguint().unwrap();
        candidates.extend(odd_exponent_primes(&nd, budget)?);
    }
    candidates.insert(BigUint::from(2u32));
    let mut support = BTreeSet::new();
    for p in candidates {
        let place = Place::finite_unchecked(p);
        if hilbert_symbol(a, b, &place)? == -1 {
            support.insert(place);
        }
    }
    if hilbert_symbol(a, b, &Place::Infinity)? == -1 {
        support.insert(Place::Infinity);
    }
    debug_assert!(support.len() % 2 == 0, "product formula violated");
    Ok(support)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat_int};

    fn p(n: u64) -> Place {
        Place::finite(n).unwrap()
    }

    #[test]
    fn valuations() {
        assert_eq!(padic_valuation(&rat_int(8), &BigUint::from(2u32)).unwrap(), 3);
        assert_eq!(padic_valuation(&rat(9, 2), &BigUint::from(3u32)).unwrap(), 2);
        assert_eq!(padic_valuation(&rat_int(5), &BigUint::from(7u32)).unwrap(), 0);
        assert_eq!(padic_valuation(&rat(1, 4), &BigUint::from(2u32)).unwrap(), -2);
        assert!(padic_valuation(&rat_int(0), &BigUint::from(2u32)).is_err());
    }

    #[test]
    fn padic_squares() {
        let five = BigUint::from(5u32);
        let two = BigUint::from(2u32);
        assert!(is_padic_square(&rat_int(-1), &five)); // 2^2 = -1 mod 5
        assert!(!is_padic_square(&rat_int(2), &five));
        assert!(is_padic_square(&rat_int(17), &two)); // 17 = 1 mod 8
        assert!(!is_padic_square(&rat_int(3), &two));
        assert!(!is_padic_square(&rat_int(2), &two));
        assert!(is_padic_square(&rat(4, 9), &BigUint::from(7u32)));
        assert!(is_padic_square(&rat_int(-7), &two)); // -7 = 1 mod 8
    }

    #[test]
    fn hilbert_symbol_values() {
        let m1 = rat_int(-1);
        assert_eq!(hilbert_symbol(&m1, &m1, &Place::Infinity).unwrap(), -1);
        assert_eq!(hilbert_symbol(&m1, &m1, &p(2)).unwrap(), -1);
        assert_eq!(hilbert_symbol(&m1, &m1, &p(3)).unwrap(), 1);
        assert_eq!(hilbert_symbol(&rat_int(2), &rat_int(3), &p(7)).unwrap(), 1);
        // (p, p)_p = (-1, p)_p
        assert_eq!(hilbert_symbol(&rat_int(3), &rat_int(3), &p(3)).unwrap(), -1);
        assert_eq!(hilbert_symbol(&rat_int(5), &rat_int(5), &p(5)).unwrap(), 1);
        // (2, 3)_2: u = 1 branch
        assert_eq!(hilbert_symbol(&rat_int(2), &rat_int(3), &p(2)).unwrap(), -1);
        assert_eq!(hilbert_symbol(&rat_int(1), &rat_int(-17), &p(2)).unwrap(), 1);
    }

    #[test]
    fn quaternion_supports() {
        let s = quaternion_class(&rat_int(-1), &rat_int(-1)).unwrap();
        assert_eq!(s, [p(2), Place::Infinity].into_iter().collect());
        assert!(quaternion_class(&rat_int(1), &rat_int(77)).unwrap().is_empty());
        assert!(quaternion_class(&rat_int(-1), &rat_int(1)).unwrap().is_empty());
        // (a, -a) always splits
        for a in [-30i64, -5, 7, 15, 210] {
            assert!(quaternion_class(&rat_int(a), &rat_int(-a)).unwrap().is_empty());
        }
        // (2, 5): 2 is a non-residue mod 5, so ramified at 5 and 2.
        let s = quaternion_class(&rat_int(2), &rat_int(5)).unwrap();
        assert_eq!(s, [p(2), p(5)].into_iter().collect());
    }

    #[test]
    fn product_formula_random() {
        // Deterministic small sweep; the heavier randomized sweep lives in
        // the integration suite.
        let vals = [-15i64, -8, -3, -1, 2, 5, 6, 9, 14, 21];
        for &a in &vals {
            for &b in &vals {
                let s = quaternion_class(&rat_int(a), &rat_int(b)).unwrap();
                assert_eq!(s.len() % 2, 0, "({a},{b})");
            }
        }
    }
}
