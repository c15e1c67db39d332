//! Salem polynomial certificates: validation through the trace polynomial,
//! Salem number isolation, the discriminant shortcut, split-prime analysis
//! of `E tensor Q_p`, and the realization conditions matching a rational
//! quadratic form against a Salem field.

pub mod corpus;

use std::fmt;

use num::{BigInt, BigUint, One, Signed, Zero};
use thiserror::Error;

use crate::arith::{is_padic_square, rat_int, square_class, ArithError, Place, Rat, SquareClass};
use crate::numfield::{
    count_real_roots_in, factor_mod_p, is_squarefree_mod_p, isolate_real_roots, refine_to_width,
    Endpoint, FieldElement, IntPolynomial, Involution, ModPoly, NumberField, NumfieldError,
    PrimeCtx, RatInterval,
};
use crate::qforms::{equivalent_over_qp, named_form, NamedForm, QformsError, QuadraticFormQ};

#[derive(Debug, Error)]
pub enum SalemError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    Numfield(#[from] NumfieldError),
    #[error(transparent)]
    Qforms(#[from] QformsError),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// A named reason a polynomial fails Salem certification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SalemDefect {
    NotMonic,
    OddDegree,
    DegreeBelowFour,
    ConstantTermNotOne,
    NotSelfReciprocal,
    Reducible,
    TracePolyVanishesAtTwo,
    /// Real-root distribution of the trace polynomial: needs exactly one
    /// root in (2, inf) and `d - 1` in (-2, 2).
    RootDistribution {
        above_two: usize,
        interior: usize,
        expected_interior: usize,
    },
}

impl fmt::Display for SalemDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SalemDefect::NotMonic => write!(f, "not monic"),
            SalemDefect::OddDegree => write!(f, "odd degree"),
            SalemDefect::DegreeBelowFour => write!(f, "degree below 4"),
            SalemDefect::ConstantTermNotOne => write!(f, "constant term is not 1"),
            SalemDefect::NotSelfReciprocal => write!(f, "not self-reciprocal"),
            SalemDefect::Reducible => write!(f, "reducible over Q"),
            SalemDefect::TracePolyVanishesAtTwo => {
                write!(f, "trace polynomial vanishes at 2 or -2")
            }
            SalemDefect::RootDistribution {
                above_two,
                interior,
                expected_interior,
            } => {
                // interior == d means every root of the trace polynomial
                // lies in (-2, 2), i.e. every root of S is on the circle.
                if *above_two == 0 && *interior == *expected_interior + 1 {
                    write!(f, "all roots on the unit circle")
                } else {
                    write!(
                        f,
                        "trace polynomial has {above_two} roots in (2, inf) (need 1) \
                         and {interior} in (-2, 2) (need {expected_interior})"
                    )
                }
            }
        }
    }
}

/// Certified Salem polynomial: monic irreducible self-reciprocal `S` of
/// even degree `2d >= 4` with exactly two roots off the unit circle, both
/// real positive. Certification is entirely real-algebraic: the root
/// location is read off the trace polynomial by Sturm counts.
#[derive(Debug, Clone)]
pub struct SalemPolynomial {
    poly: IntPolynomial,
    trace_poly: IntPolynomial,
    lambda_interval: RatInterval,
    disc_class: SquareClass,
}

impl SalemPolynomial {
    pub fn poly(&self) -> &IntPolynomial {
        &self.poly
    }

    /// `f_0` with `f_0(x + 1/x) x^d = S(x)`.
    pub fn trace_poly(&self) -> &IntPolynomial {
        &self.trace_poly
    }

    /// Isolating interval in `(1, inf)` for the Salem number.
    pub fn lambda_interval(&self) -> &RatInterval {
        &self.lambda_interval
    }

    /// Square class of the field discriminant, `(-1)^d S(1) S(-1)`.
    pub fn disc_class(&self) -> &SquareClass {
        &self.disc_class
    }

    pub fn degree(&self) -> usize {
        self.poly.deg()
    }

    /// `d`: degree of the totally real subfield.
    pub fn half_degree(&self) -> usize {
        self.poly.deg() / 2
    }

    /// The Salem field `Q[x]/(S)` (irreducibility already certified).
    pub fn field(&self) -> Result<NumberField, SalemError> {
        Ok(NumberField::new_preverified(self.poly.clone())?)
    }

    /// The totally real subfield `Q[y]/(f_0)`.
    pub fn trace_field(&self) -> Result<NumberField, SalemError> {
        Ok(NumberField::new_preverified(self.trace_poly.clone())?)
    }
}

/// A Salem field given either by its reciprocal-certificate polynomial or
/// relatively, as `E_0(sqrt(alpha))` over a totally real base.
#[derive(Debug, Clone)]
pub enum SalemFieldPresentation {
    Reciprocal(SalemPolynomial),
    Relative {
        base: NumberField,
        alpha: FieldElement,
    },
}

impl SalemFieldPresentation {
    /// Relative presentation `E = E_0(sqrt(alpha))`; `alpha` must be
    /// positive at exactly one real embedding of the totally real base.
    pub fn relative(base: NumberField, alpha: FieldElement) -> Result<Self, SalemError> {
        if !base.is_totally_real() {
            return Err(SalemError::InvalidInput(
                "relative presentation needs a totally real base field".into(),
            ));
        }
        if alpha.is_zero() {
            return Err(SalemError::InvalidInput("alpha must be nonzero".into()));
        }
        let signs = base.sign_at_real_embeddings(&alpha)?;
        let positives = signs.iter().filter(|s| **s > 0).count();
        if positives != 1 {
            return Err(SalemError::InvalidInput(format!(
                "alpha must be positive at exactly one real embedding, found {positives}"
            )));
        }
        Ok(SalemFieldPresentation::Relative { base, alpha })
    }
}

/// Local behavior of `E tensor Q_p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SplitStatus {
    Split,
    NonSplit,
    /// Only at ramified primes (p divides disc S), where the unramified
    /// factorization test does not apply.
    Indeterminate,
}

/// Outcome of matching a rational form against the Salem realization
/// conditions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Realization {
    Yes,
    No(String),
    /// Every decidable condition holds, but these ramified primes have an
    /// unresolved local condition.
    Conditional(Vec<BigUint>),
}

/// Coefficient reversal `x^deg f(1/x)`.
pub fn reciprocal(f: &IntPolynomial) -> Result<IntPolynomial, SalemError> {
    if f.is_zero() || f.constant_term().is_zero() {
        return Err(SalemError::InvalidInput(
            "reciprocal needs a nonzero constant term".into(),
        ));
    }
    Ok(f.reverse())
}

pub fn is_self_reciprocal(f: &IntPolynomial) -> bool {
    !f.is_zero() && !f.constant_term().is_zero() && f.reverse() == *f
}

/// The monic `f_0` of degree `d` with `f_0(x + 1/x) x^d = S(x)`, via the
/// recurrence `C_0 = 2, C_1 = y, C_k = y C_{k-1} - C_{k-2}` expressing
/// `x^k + x^{-k}` in `y = x + 1/x`.
pub fn trace_polynomial(s: &IntPolynomial) -> Result<IntPolynomial, SalemError> {
    let n = if s.is_zero() { 0 } else { s.deg() };
    if n == 0 || n % 2 != 0 || !is_self_reciprocal(s) {
        return Err(SalemError::InvalidInput(
            "trace polynomial needs a self-reciprocal polynomial of even degree".into(),
        ));
    }
    let d = n / 2;
    let mut c_prev = IntPolynomial::constant(BigInt::from(2)); // C_0
    let mut c_cur = IntPolynomial::x(); // C_1
    let mut f0 = IntPolynomial::constant(s.coeff(d));
    for k in 1..=d {
        f0 = f0.add(&c_cur.mul_scalar(&s.coeff(d + k)));
        let next = IntPolynomial::x().mul(&c_cur).sub(&c_prev);
        c_prev = c_cur;
        c_cur = next;
    }
    debug_assert!(f0.is_monic() && f0.deg() == d);
    debug_assert_eq!(reexpand(&f0, d), *s);
    Ok(f0)
}

/// `x^d f_0(x + 1/x)` as an integer polynomial (the inverse substitution).
fn reexpand(f0: &IntPolynomial, d: usize) -> IntPolynomial {
    // sum_j b_j (x^2 + 1)^j x^(d - j)
    let base = IntPolynomial::from_i64(&[1, 0, 1]);
    let mut out = IntPolynomial::new(vec![]);
    for (j, b) in f0.coeffs().iter().enumerate() {
        if b.is_zero() {
            continue;
        }
        let term = base.pow(j).shift(d - j).mul_scalar(b);
        out = out.add(&term);
    }
    out
}

/// Certifies `f` as a Salem polynomial or reports every defect found, in
/// check order: monic, degree, constant term, self-reciprocity,
/// irreducibility, trace-poly nonvanishing at endpoints, root counts.
pub fn validate_salem(f: &IntPolynomial) -> Result<SalemPolynomial, Vec<SalemDefect>> {
    let mut defects = Vec::new();
    if f.is_zero() {
        return Err(vec![SalemDefect::DegreeBelowFour]);
    }
    if !f.is_monic() {
        defects.push(SalemDefect::NotMonic);
    }
    let n = f.deg();
    if n % 2 == 1 {
        defects.push(SalemDefect::OddDegree);
    }
    if n < 4 {
        defects.push(SalemDefect::DegreeBelowFour);
    }
    if f.constant_term() != BigInt::one() {
        defects.push(SalemDefect::ConstantTermNotOne);
    }
    if !f.constant_term().is_zero() && f.reverse() != *f {
        defects.push(SalemDefect::NotSelfReciprocal);
    }
    if !defects.is_empty() {
        return Err(defects);
    }
    match crate::numfield::irreducible_over_q(f) {
        Ok(true) => {}
        Ok(false) => return Err(vec![SalemDefect::Reducible]),
        Err(e) => panic!("irreducibility test failed on validated input: {e}"),
    }
    let d = n / 2;
    let f0 = trace_polynomial(f).expect("structural checks passed");
    if f0.eval_int(&BigInt::from(2)).is_zero() || f0.eval_int(&BigInt::from(-2)).is_zero() {
        return Err(vec![SalemDefect::TracePolyVanishesAtTwo]);
    }
    let two = Endpoint::Finite(rat_int(2));
    let neg_two = Endpoint::Finite(rat_int(-2));
    let above = count_real_roots_in(&f0, &two, &Endpoint::PosInf)
        .expect("endpoints checked nonvanishing");
    let interior =
        count_real_roots_in(&f0, &neg_two, &two).expect("endpoints checked nonvanishing");
    if above != 1 || interior != d - 1 {
        return Err(vec![SalemDefect::RootDistribution {
            above_two: above,
            interior,
            expected_interior: d - 1,
        }]);
    }

    // lambda > 1 is the unique root of S in (1, B), B the Cauchy bound.
    let bound = crate::numfield::cauchy_root_bound(f);
    let start = RatInterval::new(rat_int(1), bound);
    debug_assert!(f.eval_rat(&rat_int(1)).is_negative());
    let lambda_interval = refine_to_width(f, &start, &Rat::new(BigInt::one(), BigInt::from(1024)));

    let s1 = f.eval_int(&BigInt::one());
    let sm1 = f.eval_int(&BigInt::from(-1));
    let mut disc = &s1 * &sm1;
    if d % 2 == 1 {
        disc = -disc;
    }
    let disc_class =
        square_class(&Rat::from_integer(disc)).expect("S(1)S(-1) is a nonzero integer");
    // disc is negative exactly when 4 | deg S.
    debug_assert_eq!(disc_class.sign() == -1, d % 2 == 0);

    Ok(SalemPolynomial {
        poly: f.clone(),
        trace_poly: f0,
        lambda_interval,
        disc_class,
    })
}

/// Isolating interval of width below `2^-precision_bits` for the Salem
/// number, by exact bisection.
pub fn salem_lambda(s: &SalemPolynomial, precision_bits: u32) -> RatInterval {
    let target = Rat::new(BigInt::one(), BigInt::one() << precision_bits);
    refine_to_width(&s.poly, &s.lambda_interval, &target)
}

/// Square class of `(-1)^d S(1) S(-1)`, the field discriminant class.
pub fn salem_disc_class(s: &SalemPolynomial) -> SquareClass {
    s.disc_class.clone()
}

/// Whether `E tensor Q_p` is split. Away from ramification this factors
/// `S` mod `p` and asks whether the reciprocal involution acts freely on
/// the irreducible factors; at ramified primes only the discriminant
/// obstruction is available.
pub fn split_status(s: &SalemPolynomial, p: &BigUint) -> Result<SplitStatus, SalemError> {
    let ctx = PrimeCtx::new(p.clone())?;
    if !is_squarefree_mod_p(&ctx, &s.poly)? {
        // p | disc(S): a split algebra forces the discriminant to be a
        // local square, so a nonsquare settles it; otherwise undecided.
        if !is_padic_square(&s.disc_class.representative(), p) {
            return Ok(SplitStatus::NonSplit);
        }
        return Ok(SplitStatus::Indeterminate);
    }
    let factors = factor_mod_p(&ctx, &s.poly)?;
    for g in &factors {
        if is_self_reciprocal_mod_p(&ctx, g) {
            return Ok(SplitStatus::NonSplit);
        }
    }
    Ok(SplitStatus::Split)
}

/// Monic-normalized coefficient reversal equals the factor itself.
/// `g(0) != 0` because the factors divide `S` with `S(0) = 1`.
fn is_self_reciprocal_mod_p(ctx: &PrimeCtx, g: &ModPoly) -> bool {
    let coeffs = g.coeffs();
    debug_assert!(!coeffs[0].is_zero());
    let inv0 = ctx.inv(&coeffs[0]);
    let rev: Vec<BigUint> = coeffs.iter().rev().map(|c| ctx.mul(c, &inv0)).collect();
    rev == coeffs
}

/// Matches `U` against the realization conditions for the Salem field of
/// `S`: dimension, determinant `(-1)^d Delta_E`, odd-odd signature, and
/// the local hyperbolicity condition at split primes.
pub fn realization_check(
    s: &SalemPolynomial,
    u: &QuadraticFormQ,
) -> Result<Realization, SalemError> {
    let d = s.half_degree();
    let inv = u.invariants()?;
    if inv.dim != 2 * d {
        return Ok(Realization::No(format!(
            "dimension {} differs from deg S = {}",
            inv.dim,
            2 * d
        )));
    }
    let mut target_det = s.disc_class.clone();
    if d % 2 == 1 {
        target_det = target_det.negate();
    }
    if inv.det != target_det {
        return Ok(Realization::No(format!(
            "determinant class {} differs from (-1)^d Delta_E = {}",
            inv.det, target_det
        )));
    }
    let (pos, neg) = inv.signature;
    if pos % 2 == 0 || neg % 2 == 0 {
        return Ok(Realization::No(format!(
            "signature ({pos}, {neg}) is not of the form (1+2a, 1+2b)"
        )));
    }

    // Local condition U ~ H^d over Q_p, required at split primes only.
    // Away from {2} and the Hasse support of U the two forms agree
    // locally whenever p is split (split forces Delta_E to be a p-adic
    // square, which settles the determinant ratio), so those are the only
    // primes that can decide or defer the verdict.
    let hyperbolic = named_form(&NamedForm::HPow(d as u32))?;
    let mut bad: Vec<BigUint> = vec![BigUint::from(2u32)];
    for place in &inv.hasse {
        if let Some(p) = place.prime() {
            if !bad.contains(p) {
                bad.push(p.clone());
            }
        }
    }
    bad.sort();
    let mut unresolved = Vec::new();
    for p in bad {
        let place = Place::finite_big(p.clone())?;
        let locally_eq = equivalent_over_qp(u, &hyperbolic, &place)?;
        match split_status(s, &p)? {
            SplitStatus::Split => {
                if !locally_eq {
                    return Ok(Realization::No(format!(
                        "not locally hyperbolic at the split prime {p}"
                    )));
                }
            }
            SplitStatus::NonSplit => {}
            SplitStatus::Indeterminate => {
                if !locally_eq {
                    unresolved.push(p);
                }
            }
        }
    }
    if unresolved.is_empty() {
        Ok(Realization::Yes)
    } else {
        Ok(Realization::Conditional(unresolved))
    }
}

/// An involution-fixed element whose sign vector at the `d - 1` interior
/// trace-field embeddings has exactly `a_plus` positives: `1` when every
/// sign is positive, otherwise `x + 1/x - t` for a rational threshold `t`
/// splitting the interior roots at the right index.
pub fn find_alpha_with_signature(
    s: &SalemPolynomial,
    a_plus: usize,
) -> Result<FieldElement, SalemError> {
    let d = s.half_degree();
    if a_plus > d - 1 {
        return Err(SalemError::InvalidInput(format!(
            "target positive count {a_plus} exceeds d - 1 = {}",
            d - 1
        )));
    }
    let field = s.field()?;
    if a_plus == d - 1 {
        return Ok(field.one());
    }
    // Interior roots ascending, then the single root above 2. A rational
    // threshold t in the gap after the k-th interior root leaves exactly
    // (d - 1) - k interior roots above it; we want a_plus above.
    let roots = isolate_real_roots(&s.trace_poly)?;
    debug_assert_eq!(roots.len(), d);
    let k = d - 1 - a_plus;
    let t = (&roots[k - 1].hi + &roots[k].lo) / rat_int(2);
    let x = field.generator();
    let alpha = field.sub(&field.add(&x, &field.inverse(&x)?), &field.from_rational(t.clone()));
    debug_assert_eq!(
        field.apply_involution(&alpha, Involution::Reciprocal)?,
        alpha
    );
    // Exact verification of the sign pattern on the trace field.
    let base = s.trace_field()?;
    let g = base.sub(&base.generator(), &base.from_rational(t));
    let signs = base.sign_at_real_embeddings(&g)?;
    let positives = signs[..d - 1].iter().filter(|v| **v > 0).count();
    debug_assert_eq!(positives, a_plus);
    if positives != a_plus {
        return Err(SalemError::InvalidInput(
            "internal: sign pattern verification failed".into(),
        ));
    }
    Ok(alpha)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn poly(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    fn lehmer() -> IntPolynomial {
        poly(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1])
    }

    fn smyth() -> IntPolynomial {
        let mut c = vec![0i64; 23];
        c[0] = 1;
        c[1] = -5;
        c[6] = 5;
        c[11] = -5;
        c[16] = 5;
        c[21] = -5;
        c[22] = 1;
        poly(&c)
    }

    #[test]
    fn reciprocal_and_predicate() {
        assert!(is_self_reciprocal(&lehmer()));
        assert!(is_self_reciprocal(&poly(&[1, -3, 1])));
        assert!(!is_self_reciprocal(&poly(&[-2, 0, 0, 1])));
        assert_eq!(
            reciprocal(&poly(&[-2, 0, 0, 1])).unwrap(),
            poly(&[1, 0, 0, -2])
        );
        assert!(reciprocal(&poly(&[0, 1])).is_err());
    }

    #[test]
    fn trace_polynomial_examples() {
        assert_eq!(
            trace_polynomial(&poly(&[1, -1, -2, -1, 1])).unwrap(),
            poly(&[-4, -1, 1])
        );
        assert_eq!(
            trace_polynomial(&poly(&[1, 0, 0, 0, 1])).unwrap(),
            poly(&[-2, 0, 1])
        );
        assert_eq!(
            trace_polynomial(&lehmer()).unwrap(),
            poly(&[3, 4, -5, -5, 1, 1])
        );
    }

    #[test]
    fn validate_accepts_salem_polynomials() {
        let s = validate_salem(&smyth()).unwrap();
        assert_eq!(s.degree(), 22);
        assert_eq!(s.half_degree(), 11);
        assert_eq!(*s.disc_class(), SquareClass::one());

        let l = validate_salem(&lehmer()).unwrap();
        assert_eq!(*l.disc_class(), SquareClass::one());

        let q = validate_salem(&poly(&[1, -1, -2, -1, 1])).unwrap();
        assert_eq!(*q.disc_class(), SquareClass::minus_one());
    }

    #[test]
    fn validate_rejects_with_named_reasons() {
        // Cyclotomic: all roots on the unit circle.
        let reasons = validate_salem(&poly(&[1, 1, 1, 1, 1])).unwrap_err();
        assert_eq!(
            reasons,
            vec![SalemDefect::RootDistribution {
                above_two: 0,
                interior: 2,
                expected_interior: 1
            }]
        );
        assert_eq!(reasons[0].to_string(), "all roots on the unit circle");

        // Trace poly y^2 + y - 4 has a root below -2.
        let reasons = validate_salem(&poly(&[1, 1, -2, 1, 1])).unwrap_err();
        assert!(matches!(
            reasons[0],
            SalemDefect::RootDistribution { above_two: 0, .. }
        ));

        let reasons = validate_salem(&poly(&[2, 1, -2, 1, 2])).unwrap_err();
        assert!(reasons.contains(&SalemDefect::NotMonic));
        assert!(reasons.contains(&SalemDefect::ConstantTermNotOne));

        let reasons = validate_salem(&poly(&[1, -1, 0, -1, 1, 1])).unwrap_err();
        assert!(reasons.contains(&SalemDefect::OddDegree));

        // (x^2-3x+1)(x^2+3x+1) is self-reciprocal but reducible.
        let prod = poly(&[1, -3, 1]).mul(&poly(&[1, 3, 1]));
        assert_eq!(validate_salem(&prod).unwrap_err(), vec![SalemDefect::Reducible]);
    }

    #[test]
    fn lambda_isolation() {
        let l = validate_salem(&lehmer()).unwrap();
        let iv = salem_lambda(&l, 45);
        assert!(iv.lo > rat(11762808182, 10000000000));
        assert!(iv.hi < rat(11762808183, 10000000000));
        assert_eq!(
            l.poly().eval_rat(&iv.lo).is_negative(),
            !l.poly().eval_rat(&iv.hi).is_negative()
        );

        let q = validate_salem(&poly(&[1, -1, -2, -1, 1])).unwrap();
        let iv = salem_lambda(&q, 30);
        assert!(iv.lo > rat(20810, 10000) && iv.hi < rat(20811, 10000));
    }

    #[test]
    fn disc_class_values() {
        let s = validate_salem(&smyth()).unwrap();
        assert_eq!(s.poly().eval_int(&BigInt::one()), BigInt::from(-3));
        assert_eq!(s.poly().eval_int(&BigInt::from(-1)), BigInt::from(27));
        assert_eq!(salem_disc_class(&s), SquareClass::one());
    }

    #[test]
    fn split_status_quartic() {
        // disc(S) = -1156 = -2^2 17^2; Delta_E class = -1.
        let s = validate_salem(&poly(&[1, -1, -2, -1, 1])).unwrap();
        let status = |p: u32| split_status(&s, &BigUint::from(p)).unwrap();
        assert_eq!(status(5), SplitStatus::Split);
        assert_eq!(status(3), SplitStatus::NonSplit); // irreducible, self-reciprocal
        assert_eq!(status(13), SplitStatus::NonSplit); // a self-reciprocal quadratic factor
        assert_eq!(status(17), SplitStatus::Indeterminate); // ramified, -1 = 4^2 in Q_17
        assert_eq!(status(2), SplitStatus::NonSplit); // ramified, -1 not a 2-adic square
    }

    #[test]
    fn split_never_contradicts_disc_obstruction() {
        let s = validate_salem(&lehmer()).unwrap();
        for p in [3u32, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
            let p = BigUint::from(p);
            if split_status(&s, &p).unwrap() == SplitStatus::Split {
                assert!(is_padic_square(&s.disc_class().representative(), &p));
            }
        }
    }

    #[test]
    fn realization_examples() {
        let smyth = validate_salem(&smyth()).unwrap();
        let vk3 = named_form(&NamedForm::VK3).unwrap();
        assert_eq!(realization_check(&smyth, &vk3).unwrap(), Realization::Yes);

        let quartic = validate_salem(&poly(&[1, -1, -2, -1, 1])).unwrap();
        assert!(matches!(
            realization_check(&quartic, &vk3).unwrap(),
            Realization::No(reason) if reason.contains("dimension")
        ));

        // I(4) has determinant +1; the target is (-1)^d Delta_E = -1.
        let i4 = named_form(&NamedForm::I(4)).unwrap();
        assert!(matches!(
            realization_check(&quartic, &i4).unwrap(),
            Realization::No(reason) if reason.contains("determinant")
        ));
    }

    #[test]
    fn alpha_with_prescribed_signs() {
        let q = validate_salem(&poly(&[1, -1, -2, -1, 1])).unwrap();
        let alpha = find_alpha_with_signature(&q, 1).unwrap();
        assert_eq!(alpha, q.field().unwrap().one());

        let l = validate_salem(&lehmer()).unwrap();
        for a_plus in 0..=4usize {
            let alpha = find_alpha_with_signature(&l, a_plus).unwrap();
            assert!(!alpha.is_zero());
        }
        assert!(find_alpha_with_signature(&l, 5).is_err());
    }

    #[test]
    fn relative_presentation_sign_check() {
        // Base Q(sqrt 2); alpha = -(1 + sqrt 2) is positive only at the
        // embedding sending sqrt 2 to its negative root.
        let base = NumberField::new(poly(&[-2, 0, 1])).unwrap();
        let alpha = base.from_coords(vec![rat_int(-1), rat_int(-1)]);
        assert!(SalemFieldPresentation::relative(base.clone(), alpha).is_ok());

        let bad = base.one();
        assert!(SalemFieldPresentation::relative(base, bad).is_err());
    }
}
