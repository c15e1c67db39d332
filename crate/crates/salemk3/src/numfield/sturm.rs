//! Sturm sequences, certified real-root counting and isolation, and exact
//! rational interval arithmetic. No floating point anywhere.

use num::{BigInt, One, Signed, Zero};

use crate::arith::{sign_of, Rat};

use super::intpoly::IntPolynomial;
use super::ratpoly::RatPoly;
use super::NumfieldError;

/// Closed rational interval `[lo, hi]`. A point interval (`lo == hi`)
/// represents an exactly known value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatInterval {
    pub lo: Rat,
    pub hi: Rat,
}

impl RatInterval {
    pub fn new(lo: Rat, hi: Rat) -> RatInterval {
        assert!(lo <= hi, "interval endpoints out of order");
        RatInterval { lo, hi }
    }

    pub fn point(v: Rat) -> RatInterval {
        RatInterval {
            lo: v.clone(),
            hi: v,
        }
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rat {
        (&self.lo + &self.hi) / Rat::from_integer(2.into())
    }

    pub fn contains(&self, v: &Rat) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    /// The sign if it is determined: +1 when `lo > 0`, -1 when `hi < 0`,
    /// 0 for the zero point interval, None when the interval straddles 0.
    pub fn determined_sign(&self) -> Option<i8> {
        if self.lo.is_positive() {
            Some(1)
        } else if self.hi.is_negative() {
            Some(-1)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(0)
        } else {
            None
        }
    }

    pub fn add(&self, other: &RatInterval) -> RatInterval {
        RatInterval {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
        }
    }

    pub fn mul(&self, other: &RatInterval) -> RatInterval {
        let products = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let mut lo = products[0].clone();
        let mut hi = products[0].clone();
        for p in &products[1..] {
            if p < &lo {
                lo = p.clone();
            }
            if p > &hi {
                hi = p.clone();
            }
        }
        RatInterval { lo, hi }
    }
}

/// Interval Horner evaluation: encloses `{ p(t) : t in iv }`.
pub fn eval_interval(p: &RatPoly, iv: &RatInterval) -> RatInterval {
    let mut acc = RatInterval::point(Rat::zero());
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(iv).add(&RatInterval::point(c.clone()));
    }
    acc
}

/// Interval endpoint, allowing the infinities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Endpoint {
    NegInf,
    Finite(Rat),
    PosInf,
}

/// Sturm chain of a squarefree polynomial: primitive parts with signs
/// preserved (pseudo-division multipliers are kept positive).
pub fn sturm_chain(f: &IntPolynomial) -> Vec<IntPolynomial> {
    let mut chain = Vec::new();
    let p0 = f.primitive_part();
    if p0.is_zero() {
        return chain;
    }
    chain.push(p0.clone());
    if p0.deg() == 0 {
        return chain;
    }
    let mut a = p0;
    let mut b = f.derivative().primitive_part();
    while !b.is_zero() {
        chain.push(b.clone());
        let (_, r, _) = a.pseudo_divrem(&b);
        a = b;
        b = r.neg().primitive_part();
    }
    chain
}

fn sign_at(p: &IntPolynomial, x: &Endpoint) -> i8 {
    match x {
        Endpoint::Finite(v) => sign_of(&p.eval_rat(v)),
        Endpoint::PosInf => {
            if p.is_zero() {
                0
            } else if p.leading().is_positive() {
                1
            } else {
                -1
            }
        }
        Endpoint::NegInf => {
            if p.is_zero() {
                0
            } else {
                let s = if p.leading().is_positive() { 1 } else { -1 };
                if p.deg() % 2 == 0 {
                    s
                } else {
                    -s
                }
            }
        }
    }
}

fn sign_variations(chain: &[IntPolynomial], x: &Endpoint) -> usize {
    let mut count = 0usize;
    let mut last = 0i8;
    for p in chain {
        let s = sign_at(p, x);
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// Exact count of real roots of squarefree `f` in the open interval
/// `(a, b)`. Errors when a finite endpoint is itself a root.
pub fn count_real_roots_in(
    f: &IntPolynomial,
    a: &Endpoint,
    b: &Endpoint,
) -> Result<usize, NumfieldError> {
    if f.is_zero() {
        return Err(NumfieldError::InvalidInput("zero polynomial".into()));
    }
    for e in [a, b] {
        if let Endpoint::Finite(v) = e {
            if f.eval_rat(v).is_zero() {
                return Err(NumfieldError::EndpointRoot);
            }
        }
    }
    if f.deg() == 0 {
        return Ok(0);
    }
    let chain = sturm_chain(f);
    let va = sign_variations(&chain, a);
    let vb = sign_variations(&chain, b);
    Ok(va.saturating_sub(vb))
}

/// `1 + max |a_i| / |lc|`: every real root lies strictly inside `(-B, B)`.
pub fn cauchy_root_bound(f: &IntPolynomial) -> Rat {
    assert!(!f.is_zero());
    let lc = f.leading().abs();
    let mut m = BigInt::zero();
    for c in &f.coeffs()[..f.coeffs().len() - 1] {
        let a = c.abs();
        if a > m {
            m = a;
        }
    }
    Rat::one() + Rat::new(m, lc)
}

/// Isolating intervals for all real roots of squarefree `f`, sorted in
/// ascending order and pairwise disjoint. Rational roots discovered during
/// bisection come back as point intervals; every non-point interval
/// carries a sign change of `f`.
pub fn isolate_real_roots(f: &IntPolynomial) -> Result<Vec<RatInterval>, NumfieldError> {
    if f.is_zero() {
        return Err(NumfieldError::InvalidInput("zero polynomial".into()));
    }
    if f.deg() == 0 {
        return Ok(vec![]);
    }
    if !f.is_squarefree() {
        return Err(NumfieldError::InvalidInput(
            "root isolation needs a squarefree polynomial".into(),
        ));
    }
    let mut points: Vec<Rat> = Vec::new();
    let mut intervals: Vec<RatInterval> = Vec::new();
    let mut work = f.primitive_part();

    // Whenever a bisection midpoint hits a rational root exactly, divide
    // it out and restart on the quotient; `work` ends with no root at any
    // probed point.
    'restart: loop {
        let chain = sturm_chain(&work);
        let b = cauchy_root_bound(&work);
        let vneg = sign_variations(&chain, &Endpoint::NegInf);
        let vpos = sign_variations(&chain, &Endpoint::PosInf);
        if vneg == vpos {
            break;
        }
        let mut stack = vec![(-b.clone(), b.clone(), vneg, vpos)];
        intervals.clear();
        while let Some((lo, hi, vlo, vhi)) = stack.pop() {
            let count = vlo - vhi;
            if count == 0 {
                continue;
            }
            if count == 1 {
                intervals.push(RatInterval::new(lo, hi));
                continue;
            }
            let mid = (&lo + &hi) / Rat::from_integer(2.into());
            if work.eval_rat(&mid).is_zero() {
                points.push(mid.clone());
                let root_factor = RatPoly::new(vec![-mid, Rat::one()]);
                let (q, rem) = RatPoly::from_int(&work).divrem(&root_factor);
                debug_assert!(rem.is_zero());
                work = q.to_int_primitive();
                if work.is_zero() || work.deg() == 0 {
                    intervals.clear();
                    break 'restart;
                }
                continue 'restart;
            }
            let vmid = sign_variations(&chain, &Endpoint::Finite(mid.clone()));
            stack.push((lo, mid.clone(), vlo, vmid));
            stack.push((mid, hi, vmid, vhi));
        }
        break;
    }

    // Each interval isolates one root of `work` (hence a sign change of
    // `work` across it), but may still contain extracted rational roots of
    // `f`: shrink against `work` until every point is excluded, which also
    // restores the sign-change property for `f` itself.
    let mut out: Vec<RatInterval> = points.iter().cloned().map(RatInterval::point).collect();
    for iv in intervals {
        let mut cur = iv;
        while points.iter().any(|p| cur.contains(p)) {
            cur = bisect_once(&work, &cur);
        }
        out.push(cur);
    }
    out.sort_by(|a, b| a.lo.cmp(&b.lo));

    // Adjacent intervals can share a bisection midpoint as an endpoint
    // (never a root); shrink until all are strictly separated. Touching
    // pairs are never both points, and roots are distinct, so this stops.
    let mut moved = true;
    while moved {
        moved = false;
        for i in 1..out.len() {
            if out[i - 1].hi >= out[i].lo {
                let j = if out[i - 1].is_point() { i } else { i - 1 };
                out[j] = bisect_once(&work, &out[j]);
                moved = true;
            }
        }
    }
    #[cfg(debug_assertions)]
    for iv in &out {
        debug_assert!(
            iv.is_point()
                || sign_of(&f.eval_rat(&iv.lo)) == -sign_of(&f.eval_rat(&iv.hi))
        );
    }
    Ok(out)
}

/// Bisects an isolating interval of `f` (carrying a sign change) until its
/// width is below `target`. Point intervals pass through unchanged.
pub fn refine_to_width(f: &IntPolynomial, iv: &RatInterval, target: &Rat) -> RatInterval {
    if iv.is_point() {
        return iv.clone();
    }
    let mut lo = iv.lo.clone();
    let mut hi = iv.hi.clone();
    let slo = sign_of(&f.eval_rat(&lo));
    debug_assert!(slo != 0 && slo != sign_of(&f.eval_rat(&hi)));
    while (&hi - &lo) >= *target {
        let mid = (&lo + &hi) / Rat::from_integer(2.into());
        let smid = sign_of(&f.eval_rat(&mid));
        if smid == 0 {
            // Rational midpoint hit the root exactly.
            return RatInterval::point(mid);
        }
        if smid == slo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    RatInterval::new(lo, hi)
}

/// One bisection step on an isolating interval with a sign change.
pub fn bisect_once(f: &IntPolynomial, iv: &RatInterval) -> RatInterval {
    if iv.is_point() {
        return iv.clone();
    }
    let mid = iv.midpoint();
    let smid = sign_of(&f.eval_rat(&mid));
    if smid == 0 {
        return RatInterval::point(mid);
    }
    let slo = sign_of(&f.eval_rat(&iv.lo));
    if smid == slo {
        RatInterval::new(mid, iv.hi.clone())
    } else {
        RatInterval::new(iv.lo.clone(), mid)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat_int};

    fn finite(n: i64) -> Endpoint {
        Endpoint::Finite(rat_int(n))
    }

    #[test]
    fn counts() {
        let f = IntPolynomial::from_i64(&[-2, 0, 1]); // x^2 - 2
        assert_eq!(count_real_roots_in(&f, &finite(0), &finite(2)).unwrap(), 1);
        assert_eq!(
            count_real_roots_in(&f, &Endpoint::NegInf, &Endpoint::PosInf).unwrap(),
            2
        );
        let g = IntPolynomial::from_i64(&[1, 0, 1]); // x^2 + 1
        assert_eq!(
            count_real_roots_in(&g, &Endpoint::NegInf, &Endpoint::PosInf).unwrap(),
            0
        );
        // y^2 - y - 4 has one root beyond 2.
        let h = IntPolynomial::from_i64(&[-4, -1, 1]);
        assert_eq!(
            count_real_roots_in(&h, &finite(2), &Endpoint::PosInf).unwrap(),
            1
        );
        assert_eq!(
            count_real_roots_in(&f, &Endpoint::Finite(rat_int(0)), &Endpoint::PosInf).unwrap(),
            1
        );
        assert!(matches!(
            count_real_roots_in(&IntPolynomial::from_i64(&[-4, 0, 1]), &finite(2), &finite(3)),
            Err(NumfieldError::EndpointRoot)
        ));
    }

    #[test]
    fn isolation_sqrt5() {
        let f = IntPolynomial::from_i64(&[-5, 0, 1]);
        let roots = isolate_real_roots(&f).unwrap();
        assert_eq!(roots.len(), 2);
        assert!(roots[0].hi < roots[1].lo);
        assert!(roots[0].lo < rat_int(-2) && roots[0].hi > rat(-9, 4));
        let refined = refine_to_width(&f, &roots[1], &rat(1, 1_000_000));
        assert!(refined.lo > rat(2236, 1000) && refined.hi < rat(2237, 1000));
    }

    #[test]
    fn isolation_with_rational_roots() {
        // (x^2 - 2)(x - 1)x has rational roots 0 and 1.
        let f = IntPolynomial::from_i64(&[-2, 0, 1])
            .mul(&IntPolynomial::from_i64(&[-1, 1]))
            .mul(&IntPolynomial::from_i64(&[0, 1]));
        let roots = isolate_real_roots(&f).unwrap();
        assert_eq!(roots.len(), 4);
        // 0 is the first bisection midpoint, so it comes back as a point;
        // 1 never lands on a midpoint and stays bracketed.
        assert!(roots.iter().any(|iv| iv.is_point() && iv.lo == rat_int(0)));
        let one = rat_int(1);
        assert_eq!(roots.iter().filter(|iv| iv.contains(&one)).count(), 1);
        for w in roots.windows(2) {
            assert!(w[0].hi < w[1].lo);
        }
    }

    #[test]
    fn lehmer_has_two_real_roots() {
        let lehmer = IntPolynomial::from_i64(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1]);
        let roots = isolate_real_roots(&lehmer).unwrap();
        assert_eq!(roots.len(), 2);
        // Both positive, one below 1 and one above 1.
        assert!(roots[0].lo > rat_int(0) || roots[0].hi > rat_int(0));
        let r1 = refine_to_width(&lehmer, &roots[1], &rat(1, 1_000_000));
        assert!(r1.lo > rat(11762, 10000) && r1.hi < rat(11763, 10000));
    }

    #[test]
    fn interval_eval_sign() {
        let p = RatPoly::from_int(&IntPolynomial::from_i64(&[-4, 0, 1])); // t^2 - 4
        let iv = RatInterval::new(rat(5, 2), rat(26, 10));
        assert_eq!(eval_interval(&p, &iv).determined_sign(), Some(1));
        let iv2 = RatInterval::new(rat(-8, 5), rat(-3, 2));
        assert_eq!(eval_interval(&p, &iv2).determined_sign(), Some(-1));
        let wide = RatInterval::new(rat_int(-3), rat_int(3));
        assert_eq!(eval_interval(&p, &wide).determined_sign(), None);
    }
}
