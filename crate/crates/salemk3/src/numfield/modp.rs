//! Polynomial arithmetic and factorization over `F_p` for arbitrary prime
//! `p` (BigUint moduli): distinct-degree factorization plus seeded
//! Cantor-Zassenhaus equal-degree splitting, with the trace-map variant at
//! `p = 2`. Used by the irreducibility sieve and by split-prime analysis.

use num::{BigInt, BigUint, Integer, One, Zero};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith;

use super::intpoly::IntPolynomial;
use super::NumfieldError;

/// Prime modulus context.
#[derive(Debug, Clone)]
pub struct PrimeCtx {
    p: BigUint,
}

impl PrimeCtx {
    pub fn new(p: BigUint) -> Result<PrimeCtx, NumfieldError> {
        if !arith::is_prime(&p) {
            return Err(NumfieldError::InvalidInput(format!("{p} is not prime")));
        }
        Ok(PrimeCtx { p })
    }

    pub fn prime(&self) -> &BigUint {
        &self.p
    }

    fn add(&self, a: &BigUint, b: &BigUint) -> BigUint {
        let s = a + b;
        if s >= self.p {
            s - &self.p
        } else {
            s
        }
    }

    fn sub(&self, a: &BigUint, b: &BigUint) -> BigUint {
        if a >= b {
            a - b
        } else {
            a + &self.p - b
        }
    }

    pub(crate) fn mul(&self, a: &BigUint, b: &BigUint) -> BigUint {
        (a * b) % &self.p
    }

    pub(crate) fn inv(&self, a: &BigUint) -> BigUint {
        debug_assert!(!a.is_zero());
        a.modpow(&(&self.p - 2u32), &self.p)
    }
}

/// Polynomial over `F_p`, ascending coefficients in `[0, p)`, trimmed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModPoly {
    c: Vec<BigUint>,
}

impl ModPoly {
    fn trim(mut c: Vec<BigUint>) -> ModPoly {
        while c.last().is_some_and(|v| v.is_zero()) {
            c.pop();
        }
        ModPoly { c }
    }

    pub fn zero() -> ModPoly {
        ModPoly { c: vec![] }
    }

    pub fn one() -> ModPoly {
        ModPoly {
            c: vec![BigUint::one()],
        }
    }

    pub fn x() -> ModPoly {
        ModPoly {
            c: vec![BigUint::zero(), BigUint::one()],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn deg(&self) -> usize {
        self.degree().expect("degree of zero polynomial")
    }

    pub fn coeffs(&self) -> &[BigUint] {
        &self.c
    }

    fn coeff(&self, i: usize) -> BigUint {
        self.c.get(i).cloned().unwrap_or_else(BigUint::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.c.last().is_some_and(|v| v.is_one())
    }

    /// Reduction of an integer polynomial mod p.
    pub fn reduce(ctx: &PrimeCtx, f: &IntPolynomial) -> ModPoly {
        let p = BigInt::from(ctx.p.clone());
        ModPoly::trim(
            f.coeffs()
                .iter()
                .map(|a| a.mod_floor(&p).to_biguint().expect("nonnegative residue"))
                .collect(),
        )
    }

    /// Lift to integer coefficients in the symmetric range `(-p/2, p/2]`.
    pub fn lift_symmetric(&self, modulus: &BigUint) -> IntPolynomial {
        let half = modulus / 2u32;
        IntPolynomial::new(
            self.c
                .iter()
                .map(|a| {
                    if a > &half {
                        BigInt::from(a.clone()) - BigInt::from(modulus.clone())
                    } else {
                        BigInt::from(a.clone())
                    }
                })
                .collect(),
        )
    }
}

pub fn add(ctx: &PrimeCtx, a: &ModPoly, b: &ModPoly) -> ModPoly {
    let n = a.c.len().max(b.c.len());
    ModPoly::trim((0..n).map(|i| ctx.add(&a.coeff(i), &b.coeff(i))).collect())
}

pub fn sub(ctx: &PrimeCtx, a: &ModPoly, b: &ModPoly) -> ModPoly {
    let n = a.c.len().max(b.c.len());
    ModPoly::trim((0..n).map(|i| ctx.sub(&a.coeff(i), &b.coeff(i))).collect())
}

pub fn mul(ctx: &PrimeCtx, a: &ModPoly, b: &ModPoly) -> ModPoly {
    if a.is_zero() || b.is_zero() {
        return ModPoly::zero();
    }
    let mut out = vec![BigUint::zero(); a.c.len() + b.c.len() - 1];
    for (i, x) in a.c.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.c.iter().enumerate() {
            let v = ctx.add(&out[i + j], &ctx.mul(x, y));
            out[i + j] = v;
        }
    }
    ModPoly::trim(out)
}

pub fn divrem(ctx: &PrimeCtx, a: &ModPoly, b: &ModPoly) -> (ModPoly, ModPoly) {
    assert!(!b.is_zero(), "division by zero polynomial");
    let db = b.deg();
    if a.is_zero() || a.deg() < db {
        return (ModPoly::zero(), a.clone());
    }
    let lcinv = ctx.inv(b.c.last().unwrap());
    let mut r = a.c.clone();
    let mut q = vec![BigUint::zero(); a.deg() - db + 1];
    while r.len() > db {
        let c = ctx.mul(r.last().unwrap(), &lcinv);
        let k = r.len() - 1 - db;
        if !c.is_zero() {
            for (i, bc) in b.c.iter().enumerate() {
                let v = ctx.sub(&r[k + i], &ctx.mul(&c, bc));
                r[k + i] = v;
            }
        }
        q[k] = c;
        r.pop();
    }
    (ModPoly::trim(q), ModPoly::trim(r))
}

pub fn rem(ctx: &PrimeCtx, a: &ModPoly, b: &ModPoly) -> ModPoly {
    divrem(ctx, a, b).1
}

pub fn monic(ctx: &PrimeCtx, a: &ModPoly) -> ModPoly {
    if a.is_zero() || a.is_monic() {
        return a.clone();
    }
    let inv = ctx.inv(a.c.last().unwrap());
    ModPoly::trim(a.c.iter().map(|v| ctx.mul(v, &inv)).collect())
}

/// Monic gcd.
pub fn gcd(ctx: &PrimeCtx, a: &ModPoly, b: &ModPoly) -> ModPoly {
    let mut a = a.clone();
    let mut b = b.clone();
    while !b.is_zero() {
        let r = rem(ctx, &a, &b);
        a = b;
        b = r;
    }
    monic(ctx, &a)
}

/// Extended gcd: returns `(g, s, t)` with `s*a + t*b = g`, `g` monic.
pub fn ext_gcd(ctx: &PrimeCtx, a: &ModPoly, b: &ModPoly) -> (ModPoly, ModPoly, ModPoly) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (ModPoly::one(), ModPoly::zero());
    let (mut t0, mut t1) = (ModPoly::zero(), ModPoly::one());
    while !r1.is_zero() {
        let (q, r) = divrem(ctx, &r0, &r1);
        let s = sub(ctx, &s0, &mul(ctx, &q, &s1));
        let t = sub(ctx, &t0, &mul(ctx, &q, &t1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
        t0 = t1;
        t1 = t;
    }
    if r0.is_zero() || r0.is_monic() {
        return (r0, s0, t0);
    }
    let lcinv = ctx.inv(r0.c.last().unwrap());
    let scl = |p: &ModPoly| ModPoly::trim(p.c.iter().map(|v| ctx.mul(v, &lcinv)).collect());
    (scl(&r0), scl(&s0), scl(&t0))
}

/// `base^exp mod m` by square-and-multiply.
pub fn pow_mod(ctx: &PrimeCtx, base: &ModPoly, exp: &BigUint, m: &ModPoly) -> ModPoly {
    let mut result = ModPoly::one();
    let mut b = rem(ctx, base, m);
    let mut e = exp.clone();
    while !e.is_zero() {
        if e.is_odd() {
            result = rem(ctx, &mul(ctx, &result, &b), m);
        }
        b = rem(ctx, &mul(ctx, &b, &b), m);
        e >>= 1;
    }
    result
}

pub fn derivative(ctx: &PrimeCtx, a: &ModPoly) -> ModPoly {
    if a.c.len() <= 1 {
        return ModPoly::zero();
    }
    ModPoly::trim(
        a.c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, v)| ctx.mul(v, &(BigUint::from(i) % &ctx.p)))
            .collect(),
    )
}

/// Squarefreeness mod p. A vanishing derivative (p-th power) counts as not
/// squarefree.
pub fn is_squarefree_mod_p(ctx: &PrimeCtx, f: &IntPolynomial) -> Result<bool, NumfieldError> {
    let fp = ModPoly::reduce(ctx, f);
    if fp.is_zero() {
        return Err(NumfieldError::InvalidInput(
            "polynomial vanishes mod p".into(),
        ));
    }
    if fp.deg() == 0 {
        return Ok(true);
    }
    let d = derivative(ctx, &fp);
    if d.is_zero() {
        return Ok(false);
    }
    Ok(gcd(ctx, &fp, &d).deg() == 0)
}

/// Distinct-degree factorization of a monic squarefree polynomial:
/// returns pairs (product of all irreducible factors of degree d, d).
pub fn distinct_degree(ctx: &PrimeCtx, f: &ModPoly) -> Vec<(ModPoly, usize)> {
    debug_assert!(f.is_monic());
    let mut parts = Vec::new();
    let mut v = f.clone();
    let mut h = rem(ctx, &ModPoly::x(), &v);
    let mut d = 0usize;
    while v.deg() >= 2 * (d + 1) {
        d += 1;
        h = pow_mod(ctx, &h, &ctx.p.clone(), &v);
        let g = gcd(ctx, &v, &sub(ctx, &h, &ModPoly::x()));
        if g.deg() > 0 {
            parts.push((g.clone(), d));
            let (q, r) = divrem(ctx, &v, &g);
            debug_assert!(r.is_zero());
            v = q;
            h = rem(ctx, &h, &v);
        }
        if v.deg() == 0 {
            return parts;
        }
    }
    if v.deg() > 0 {
        parts.push((v.clone(), v.deg()));
    }
    parts
}

/// Multiset of irreducible factor degrees (no splitting work).
pub fn degree_pattern(ctx: &PrimeCtx, f: &ModPoly) -> Vec<usize> {
    let mut out = Vec::new();
    for (g, d) in distinct_degree(ctx, f) {
        for _ in 0..(g.deg() / d) {
            out.push(d);
        }
    }
    out.sort_unstable();
    out
}

fn random_poly(ctx: &PrimeCtx, rng: &mut ChaCha8Rng, deg_below: usize) -> ModPoly {
    let bytes = (ctx.p.bits() as usize).div_ceil(8) + 1;
    let mut coeffs = Vec::with_capacity(deg_below);
    for _ in 0..deg_below {
        let mut buf = vec![0u8; bytes];
        rng.fill_bytes(&mut buf);
        coeffs.push(BigUint::from_bytes_le(&buf) % &ctx.p);
    }
    ModPoly::trim(coeffs)
}

/// Splits a monic squarefree product `g` of irreducibles all of degree `d`
/// into those irreducibles (Cantor-Zassenhaus; trace map at p = 2). The
/// RNG is seeded deterministically, so results are reproducible.
fn equal_degree(ctx: &PrimeCtx, g: &ModPoly, d: usize, out: &mut Vec<ModPoly>) {
    if g.deg() == d {
        out.push(g.clone());
        return;
    }
    let mut seed = 0x9e37_79b9_7f4a_7c15u64 ^ ((g.deg() as u64) << 32) ^ d as u64;
    for c in g.coeffs().iter().take(4) {
        seed = seed.wrapping_mul(0x100_0000_01b3).wrapping_add(
            c.iter_u64_digits().next().unwrap_or(0),
        );
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let two = BigUint::from(2u32);
    loop {
        let a = random_poly(ctx, &mut rng, g.deg());
        if a.is_zero() || a.deg() == 0 {
            continue;
        }
        let shared = gcd(ctx, &a, g);
        let candidate = if shared.deg() > 0 && shared.deg() < g.deg() {
            shared
        } else if ctx.p == two {
            // Trace map over F_{2^d}: a + a^2 + ... + a^(2^(d-1)).
            let mut t = a.clone();
            let mut aq = a.clone();
            for _ in 1..d {
                aq = rem(ctx, &mul(ctx, &aq, &aq), g);
                t = add(ctx, &t, &aq);
            }
            gcd(ctx, &t, g)
        } else {
            let e = (ctx.p.pow(d as u32) - 1u32) / &two;
            let b = pow_mod(ctx, &a, &e, g);
            gcd(ctx, &sub(ctx, &b, &ModPoly::one()), g)
        };
        if candidate.deg() > 0 && candidate.deg() < g.deg() {
            let (co, r) = divrem(ctx, g, &candidate);
            debug_assert!(r.is_zero());
            equal_degree(ctx, &candidate, d, out);
            equal_degree(ctx, &co, d, out);
            return;
        }
    }
}

/// Full factorization of a monic squarefree polynomial mod p, sorted
/// deterministically (degree, then coefficients from the top).
pub fn factor_mod_p(ctx: &PrimeCtx, f: &IntPolynomial) -> Result<Vec<ModPoly>, NumfieldError> {
    let fp = ModPoly::reduce(ctx, f);
    if fp.is_zero() || fp.deg() != f.deg() {
        return Err(NumfieldError::InvalidInput(
            "leading coefficient vanishes mod p".into(),
        ));
    }
    if !is_squarefree_mod_p(ctx, f)? {
        return Err(NumfieldError::InvalidInput(
            "polynomial is not squarefree mod p".into(),
        ));
    }
    let fm = monic(ctx, &fp);
    let mut out = Vec::new();
    for (g, d) in distinct_degree(ctx, &fm) {
        equal_degree(ctx, &g, d, &mut out);
    }
    out.sort_by(|a, b| {
        a.deg()
            .cmp(&b.deg())
            .then_with(|| a.c.iter().rev().cmp(b.c.iter().rev()))
    });
    Ok(out)
}
