//! Integer polynomials, ascending coefficient order, trailing zeros trimmed.

use std::fmt;

use num::{BigInt, BigUint, Integer, One, Signed, Zero};

use crate::arith::Rat;

use super::NumfieldError;

/// Polynomial over `Z`. The zero polynomial has an empty coefficient vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> IntPolynomial {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> IntPolynomial {
        IntPolynomial::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> IntPolynomial {
        IntPolynomial { coeffs: vec![] }
    }

    pub fn one() -> IntPolynomial {
        IntPolynomial::from_i64(&[1])
    }

    pub fn x() -> IntPolynomial {
        IntPolynomial::from_i64(&[0, 1])
    }

    pub fn constant(c: BigInt) -> IntPolynomial {
        IntPolynomial::new(vec![c])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree of a known-nonzero polynomial.
    pub fn deg(&self) -> usize {
        self.degree().expect("degree of zero polynomial")
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(0)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_rat(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + Rat::from_integer(c.clone());
        }
        acc
    }

    pub fn add(&self, other: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + other.coeff(i));
        }
        IntPolynomial::new(out)
    }

    pub fn sub(&self, other: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) - other.coeff(i));
        }
        IntPolynomial::new(out)
    }

    pub fn neg(&self) -> IntPolynomial {
        IntPolynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || other.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }

    pub fn mul_scalar(&self, c: &BigInt) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiplication by `x^k`.
    pub fn shift(&self, k: usize) -> IntPolynomial {
        if self.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); k];
        out.extend(self.coeffs.iter().cloned());
        IntPolynomial { coeffs: out }
    }

    pub fn pow(&self, e: usize) -> IntPolynomial {
        let mut out = IntPolynomial::one();
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    pub fn derivative(&self) -> IntPolynomial {
        if self.coeffs.len() <= 1 {
            return IntPolynomial::zero();
        }
        IntPolynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// GCD of the coefficients, as a nonnegative integer (0 for the zero
    /// polynomial).
    pub fn content(&self) -> BigUint {
        let mut g = BigUint::zero();
        for c in &self.coeffs {
            g = g.gcd(c.magnitude());
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides out the content. Sign of the leading coefficient is kept.
    pub fn primitive_part(&self) -> IntPolynomial {
        let c = self.content();
        if c.is_zero() || c.is_one() {
            return self.clone();
        }
        let c = BigInt::from(c);
        IntPolynomial {
            coeffs: self.coeffs.iter().map(|a| a / &c).collect(),
        }
    }

    /// Coefficient reversal `x^deg f(1/x)`. Degree drops if `f(0) = 0`.
    pub fn reverse(&self) -> IntPolynomial {
        let mut c = self.coeffs.clone();
        c.reverse();
        IntPolynomial::new(c)
    }

    /// `f(-x)`.
    pub fn compose_neg_x(&self) -> IntPolynomial {
        IntPolynomial {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        }
    }

    /// Pseudo-division: returns `(q, r, m)` with `m * self = q * d + r`,
    /// `deg r < deg d`, and `m = |lc(d)|^(deg self - deg d + 1)` positive.
    /// Keeping the multiplier positive preserves sign sequences.
    pub fn pseudo_divrem(&self, d: &IntPolynomial) -> (IntPolynomial, IntPolynomial, BigInt) {
        assert!(!d.is_zero(), "pseudo-division by zero");
        let dd = d.deg();
        if self.is_zero() || self.deg() < dd {
            return (IntPolynomial::zero(), self.clone(), BigInt::one());
        }
        let lc = d.leading();
        let steps = self.deg() - dd + 1;
        let m = lc.abs().pow(steps as u32);
        // Work with |lc| by flipping d's sign when lc < 0.
        let (dpos, flip) = if lc.is_negative() {
            (d.neg(), true)
        } else {
            (d.clone(), false)
        };
        let lpos = dpos.leading();
        let mut r = self.clone();
        let mut q = vec![BigInt::zero(); steps];
        let mut done = 0usize;
        while !r.is_zero() && r.deg() >= dd {
            let k = r.deg() - dd;
            let c = r.leading();
            // Scale up the remainder so the division is exact.
            r = r.mul_scalar(&lpos).sub(&dpos.mul_scalar(&c).shift(k));
            for qc in q.iter_mut() {
                *qc *= &lpos;
            }
            q[k] += &c;
            done += 1;
            debug_assert!(done <= steps);
        }
        // Bring q and r to the common multiplier m = lpos^steps.
        for _ in done..steps {
            r = r.mul_scalar(&lpos);
            for qc in q.iter_mut() {
                *qc *= &lpos;
            }
        }
        let mut qp = IntPolynomial::new(q);
        if flip {
            qp = qp.neg();
        }
        (qp, r, m)
    }

    /// Exact division by a monic divisor. Errors if the division leaves a
    /// remainder.
    pub fn div_exact_monic(&self, d: &IntPolynomial) -> Result<IntPolynomial, NumfieldError> {
        assert!(d.is_monic(), "divisor must be monic");
        let (q, r, _) = self.pseudo_divrem(d);
        if r.is_zero() {
            Ok(q)
        } else {
            Err(NumfieldError::InvalidInput(
                "inexact polynomial division".into(),
            ))
        }
    }

    /// Primitive GCD with positive leading coefficient.
    pub fn gcd(&self, other: &IntPolynomial) -> IntPolynomial {
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.is_zero() {
            return b.positive_leading();
        }
        loop {
            if b.is_zero() {
                return a.positive_leading();
            }
            let (_, r, _) = a.pseudo_divrem(&b);
            a = b;
            b = r.primitive_part();
        }
    }

    fn positive_leading(&self) -> IntPolynomial {
        if self.leading().is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }

    /// True when `gcd(f, f')` is constant.
    pub fn is_squarefree(&self) -> bool {
        if self.is_zero() {
            return false;
        }
        if self.deg() == 0 {
            return true;
        }
        self.gcd(&self.derivative()).deg() == 0
    }

    /// Parses expressions like `x^22 - 5x^21 + 5x^16 - 5x - 1` (any single
    /// letter works as the variable) or a bare integer.
    pub fn parse_expr(s: &str) -> Result<IntPolynomial, NumfieldError> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(NumfieldError::InvalidInput("empty polynomial".into()));
        }
        let bad = |msg: &str| NumfieldError::InvalidInput(format!("{msg} in {s:?}"));
        let bytes = compact.as_bytes();
        let mut i = 0usize;
        let mut var: Option<u8> = None;
        let mut acc = IntPolynomial::zero();
        while i < bytes.len() {
            let mut sign = BigInt::one();
            while i < bytes.len() && (bytes[i] == b'+' || bytes[i] == b'-') {
                if bytes[i] == b'-' {
                    sign = -sign;
                }
                i += 1;
            }
            if i >= bytes.len() {
                return Err(bad("trailing sign"));
            }
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let coeff_digits = &compact[start..i];
            // Optional "*" between coefficient and variable.
            if i < bytes.len() && bytes[i] == b'*' && !coeff_digits.is_empty() {
                i += 1;
            }
            let mut exp = 0usize;
            if i < bytes.len() && bytes[i].is_ascii_alphabetic() {
                match var {
                    None => var = Some(bytes[i]),
                    Some(v) if v == bytes[i] => {}
                    Some(_) => return Err(bad("mixed variable names")),
                }
                i += 1;
                exp = 1;
                if i < bytes.len() && bytes[i] == b'^' {
                    i += 1;
                    let es = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    if es == i {
                        return Err(bad("missing exponent"));
                    }
                    exp = compact[es..i]
                        .parse::<usize>()
                        .map_err(|_| bad("exponent overflow"))?;
                }
            } else if coeff_digits.is_empty() {
                return Err(bad("expected coefficient or variable"));
            }
            let coeff: BigInt = if coeff_digits.is_empty() {
                BigInt::one()
            } else {
                coeff_digits.parse().map_err(|_| bad("bad coefficient"))?
            };
            let mut term = vec![BigInt::zero(); exp + 1];
            term[exp] = sign * coeff;
            acc = acc.add(&IntPolynomial::new(term));
        }
        Ok(acc)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if i == 0 {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}")?;
                }
                if i == 1 {
                    write!(f, "x")?;
                } else {
                    write!(f, "x^{i}")?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_ops() {
        let f = IntPolynomial::from_i64(&[1, 0, -3, 0, 1]); // x^4 - 3x^2 + 1
        assert_eq!(f.deg(), 4);
        assert_eq!(f.eval_int(&BigInt::from(2)), BigInt::from(5));
        assert_eq!(f.derivative(), IntPolynomial::from_i64(&[0, -6, 0, 4]));
        assert_eq!(f.reverse(), f);
        let g = IntPolynomial::from_i64(&[-1, -1, 1]); // x^2 - x - 1
        let h = IntPolynomial::from_i64(&[-1, 1, 1]); // x^2 + x - 1
        assert_eq!(g.mul(&h), f);
    }

    #[test]
    fn pseudo_division_identity() {
        let a = IntPolynomial::from_i64(&[3, -2, 0, 7, 1, 4]);
        let d = IntPolynomial::from_i64(&[1, -3, 2]);
        let (q, r, m) = a.pseudo_divrem(&d);
        assert_eq!(a.mul_scalar(&m), q.mul(&d).add(&r));
        assert!(r.degree().unwrap_or(0) < d.deg());

        // Negative leading divisor keeps the multiplier positive.
        let d2 = IntPolynomial::from_i64(&[1, 0, -2]);
        let (q2, r2, m2) = a.pseudo_divrem(&d2);
        assert!(m2 > BigInt::zero());
        assert_eq!(a.mul_scalar(&m2), q2.mul(&d2).add(&r2));
    }

    #[test]
    fn gcd_and_squarefree() {
        let g = IntPolynomial::from_i64(&[-1, -1, 1]);
        let a = g.mul(&IntPolynomial::from_i64(&[2, 3]));
        let b = g.mul(&IntPolynomial::from_i64(&[-5, 0, 1]));
        assert_eq!(a.gcd(&b), g);
        assert!(a.is_squarefree());
        assert!(!g.mul(&g).is_squarefree());
        let sq = IntPolynomial::from_i64(&[4, -4, 1]); // (x-2)^2
        assert!(!sq.is_squarefree());
    }

    #[test]
    fn parse_and_display() {
        let lehmer = IntPolynomial::parse_expr("x^10+x^9-x^7-x^6-x^5-x^4-x^3+x+1").unwrap();
        assert_eq!(
            lehmer,
            IntPolynomial::from_i64(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1])
        );
        let f = IntPolynomial::parse_expr("y^2 - y - 4").unwrap();
        assert_eq!(f, IntPolynomial::from_i64(&[-4, -1, 1]));
        assert_eq!(IntPolynomial::parse_expr("7").unwrap().to_string(), "7");
        assert_eq!(f.to_string(), "x^2 - x - 4");
        assert!(IntPolynomial::parse_expr("x^2 + y").is_err());
        assert!(IntPolynomial::parse_expr("").is_err());
    }

    #[test]
    fn content_and_primitive() {
        let f = IntPolynomial::from_i64(&[6, -9, 12]);
        assert_eq!(f.content(), BigUint::from(3u32));
        assert_eq!(f.primitive_part(), IntPolynomial::from_i64(&[2, -3, 4]));
    }
}
