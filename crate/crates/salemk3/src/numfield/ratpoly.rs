//! Polynomials over `Q`, used for field-element arithmetic mod the minimal
//! polynomial.

use num::{BigInt, Integer, One, Zero};

use crate::arith::Rat;

use super::intpoly::IntPolynomial;
use super::NumfieldError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatPoly {
    coeffs: Vec<Rat>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> RatPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn from_int(p: &IntPolynomial) -> RatPoly {
        RatPoly {
            coeffs: p
                .coeffs()
                .iter()
                .map(|c| Rat::from_integer(c.clone()))
                .collect(),
        }
    }

    pub fn zero() -> RatPoly {
        RatPoly { coeffs: vec![] }
    }

    pub fn one() -> RatPoly {
        RatPoly {
            coeffs: vec![Rat::one()],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn deg(&self) -> usize {
        self.degree().expect("degree of zero polynomial")
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn leading(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn add(&self, other: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        RatPoly::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        RatPoly::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn neg(&self) -> RatPoly {
        RatPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> RatPoly {
        if c.is_zero() {
            return RatPoly::zero();
        }
        RatPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul(&self, other: &RatPoly) -> RatPoly {
        if self.is_zero() || other.is_zero() {
            return RatPoly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPoly::new(out)
    }

    /// Exact division with remainder; divisor must be nonzero.
    pub fn divrem(&self, d: &RatPoly) -> (RatPoly, RatPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.deg();
        let lc_inv = Rat::one() / d.leading();
        let mut r = self.coeffs.clone();
        let mut q = vec![Rat::zero(); self.coeffs.len().saturating_sub(dd)];
        while r.len() > dd {
            let c = r.last().unwrap() * &lc_inv;
            let k = r.len() - 1 - dd;
            if !c.is_zero() {
                for (i, dc) in d.coeffs.iter().enumerate() {
                    let v = &r[k + i] - &(&c * dc);
                    r[k + i] = v;
                }
                q[k] = c;
            }
            r.pop();
        }
        (RatPoly::new(q), RatPoly::new(r))
    }

    pub fn rem(&self, d: &RatPoly) -> RatPoly {
        self.divrem(d).1
    }

    /// Inverse of `self` modulo `m` via the extended Euclidean algorithm.
    /// Errors when `gcd(self, m)` is nonconstant (never happens for
    /// irreducible `m` and nonzero `self` of smaller degree).
    pub fn inverse_mod(&self, m: &RatPoly) -> Result<RatPoly, NumfieldError> {
        if self.is_zero() {
            return Err(NumfieldError::DivisionByZero);
        }
        let (mut r0, mut r1) = (m.clone(), self.rem(m));
        let (mut t0, mut t1) = (RatPoly::zero(), RatPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let t = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            t0 = t1;
            t1 = t;
        }
        if r0.deg() != 0 {
            return Err(NumfieldError::InvalidInput(
                "element not invertible modulo a reducible modulus".into(),
            ));
        }
        let g = r0.coeff(0);
        Ok(t0.scale(&(Rat::one() / g)))
    }

    /// Primitive integer model: clears denominators and divides by the
    /// content, preserving the leading sign.
    pub fn to_int_primitive(&self) -> IntPolynomial {
        if self.is_zero() {
            return IntPolynomial::zero();
        }
        let mut lcm = BigInt::one();
        for c in &self.coeffs {
            lcm = lcm.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| {
                let scaled = c * Rat::from_integer(lcm.clone());
                debug_assert!(scaled.is_integer());
                scaled.to_integer()
            })
            .collect();
        IntPolynomial::new(ints).primitive_part()
    }
}

/// Monic rescaling with integer coefficients: for primitive `f` of degree
/// `n` and leading coefficient `c`, returns `c^(n-1) f(x/c)`, a monic
/// integer polynomial with the same splitting behavior over `Q`.
pub fn monic_model(f: &IntPolynomial) -> IntPolynomial {
    assert!(!f.is_zero());
    let n = f.deg();
    let c = f.leading();
    if c.is_one() {
        return f.clone();
    }
    let mut coeffs = Vec::with_capacity(n + 1);
    // coefficient of x^i becomes a_i * c^(n-1-i)
    let mut pw = BigInt::one();
    let mut pows = vec![BigInt::one()];
    for _ in 0..n {
        pw *= &c;
        pows.push(pw.clone());
    }
    for i in 0..=n {
        coeffs.push(f.coeff(i) * &pows[n - 1 - i.min(n - 1)]);
    }
    // leading term a_n * c^(n-1-n) = a_n / c = 1 exactly
    coeffs[n] = BigInt::one();
    IntPolynomial::new(coeffs)
}
