//! Period vectors for the K3-type Hodge structures carried by transfer
//! forms: the line T^{2,0} = C omega with (omega, omega) = 0 and
//! (omega, conj omega) > 0, plus its conjugate and the orthogonal T^{1,1}.
//!
//! Floats stop at this module's boundary.  Internally every period
//! component is an exact rational approximant computed to a requested bit
//! precision, and every residual is evaluated in exact arithmetic against
//! the exact transfer Gram matrix; `f64` appears only when a value is
//! exported for display.  Exact side checks (signatures via Sturm chains,
//! the companion isometry identity) back up each numeric claim.

use num::{BigInt, One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::arith::Rat;
use crate::numfield::{refine_to_width, FieldElement, Involution, NumfieldError, RatInterval};
use crate::qforms::{block_diag, mat_mul, transpose};
use crate::salem::{SalemError, SalemPolynomial};
use crate::transfer::{
    closed_form_signature, restrict_to_trace_field, DiagonalFormOverField, FieldKind,
    TransferError,
};

#[derive(Debug, Error)]
pub enum PeriodError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("signature mismatch: expected {expected}, found {found}")]
    SignatureMismatch { expected: String, found: String },
    #[error("sampler failed to find a positive period in {attempts} attempts")]
    SamplingFailed { attempts: u32 },
    #[error(transparent)]
    Transfer(#[from] TransferError),
    #[error(transparent)]
    Numfield(#[from] NumfieldError),
    #[error(transparent)]
    Salem(#[from] SalemError),
}

/// Complex number with exact rational real and imaginary parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexRat {
    pub re: Rat,
    pub im: Rat,
}

impl ComplexRat {
    pub fn new(re: Rat, im: Rat) -> ComplexRat {
        ComplexRat { re, im }
    }

    pub fn from_rat(re: Rat) -> ComplexRat {
        ComplexRat {
            re,
            im: Rat::zero(),
        }
    }

    pub fn zero() -> ComplexRat {
        ComplexRat {
            re: Rat::zero(),
            im: Rat::zero(),
        }
    }

    pub fn conj(&self) -> ComplexRat {
        ComplexRat {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    pub fn add(&self, o: &ComplexRat) -> ComplexRat {
        ComplexRat {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
        }
    }

    pub fn sub(&self, o: &ComplexRat) -> ComplexRat {
        ComplexRat {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }

    pub fn mul(&self, o: &ComplexRat) -> ComplexRat {
        ComplexRat {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    pub fn scale(&self, c: &Rat) -> ComplexRat {
        ComplexRat {
            re: &self.re * c,
            im: &self.im * c,
        }
    }

    /// Max norm, an exact stand-in for the modulus in residual bounds.
    pub fn abs_max(&self) -> Rat {
        let r = self.re.abs();
        let i = self.im.abs();
        if r >= i {
            r
        } else {
            i
        }
    }

    /// |z|^2, exact.
    pub fn norm_sq(&self) -> Rat {
        &self.re * &self.re + &self.im * &self.im
    }
}

/// A period vector with its residual report.
///
/// `omega` spans the candidate T^{2,0}; its componentwise conjugate spans
/// T^{0,2}, so conjugation symmetry of the Hodge decomposition holds by
/// construction.  All residuals are exact rationals measuring how far the
/// rational approximants are from the ideal relations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodData {
    pub omega: Vec<ComplexRat>,
    /// Index of the embedding used: for Salem periods, the position among
    /// the ascending interior trace-field embeddings; for real
    /// multiplication, the chosen real embedding.
    pub embedding_index: usize,
    /// Max-norm of the bilinear value (omega, omega); ideally zero.
    pub residual_isotropy: Rat,
    /// The bilinear value (omega, conj omega), exactly real; must be > 0.
    pub pairing_value: Rat,
    /// Max over a spanning set of the claimed T^{1,1} of the pairing
    /// residuals against omega and conj omega.
    pub max_t11_orthogonality: Rat,
    pub precision_bits: u32,
}

/// One pass/fail line of [`verify_period`].
#[derive(Debug, Clone, PartialEq)]
pub struct PeriodCheck {
    pub name: String,
    pub value: f64,
    pub bound: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PeriodReport {
    pub checks: Vec<PeriodCheck>,
}

impl PeriodReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Float view of an exact rational, safe for arbitrarily large numerators
/// and denominators (the ratio is rescaled by a power of two first).
pub fn rat_to_f64(q: &Rat) -> f64 {
    if q.is_zero() {
        return 0.0;
    }
    let nb = q.numer().bits() as i64;
    let db = q.denom().bits() as i64;
    // Rescale so the integer quotient carries ~96 significant bits.
    let s = 96 - (nb - db);
    let scaled: BigInt = if s >= 0 {
        (q.numer() << s as usize) / q.denom()
    } else {
        q.numer() / (q.denom() << (-s) as usize)
    };
    let mantissa = scaled.to_f64().unwrap_or(f64::MAX);
    mantissa * 2f64.powi(-s as i32)
}

/// Rational r >= 0 with |r - sqrt(q)| <= 2^-bits.  Integer square root of
/// the suitably rescaled floor.
fn rat_sqrt_approx(q: &Rat, bits: u32) -> Rat {
    debug_assert!(!q.is_negative());
    let extra = (bits + 8) as usize;
    let scaled: BigInt = (q.numer() << (2 * extra)) / q.denom();
    let root = scaled.max(BigInt::zero()).sqrt();
    Rat::new(root, BigInt::one() << extra)
}

fn pow2_inv(bits: u32) -> Rat {
    Rat::new(BigInt::one(), BigInt::one() << bits as usize)
}

/// Nearest rational with denominator 2^bits (ties away from zero).
/// Synthetic division compounds denominators geometrically; snapping every
/// intermediate to a fixed dyadic grid keeps the arithmetic small at an
/// error cost of 2^-bits per step, within the approximation budget.
fn round_dyadic(q: &Rat, bits: u32) -> Rat {
    let den = BigInt::one() << bits as usize;
    let scaled = q * Rat::from_integer(den.clone());
    let half = Rat::new(BigInt::one(), BigInt::from(2));
    let nearest = if scaled.is_negative() {
        -(-scaled + half).floor()
    } else {
        (scaled + half).floor()
    };
    Rat::new(nearest.to_integer(), den)
}

/// Coefficients of the quotient S(x) / (x - z) by synthetic division,
/// ascending, each snapped to the dyadic grid.  When z approximates a root
/// of S this is (a scalar multiple of) the z-eigenvector of the companion
/// matrix in the power basis.
fn quotient_eigenvector(
    poly: &crate::numfield::IntPolynomial,
    z: &ComplexRat,
    bits: u32,
) -> Vec<ComplexRat> {
    let n = poly.deg();
    let grid = bits + 16;
    let mut b = vec![ComplexRat::zero(); n];
    b[n - 1] = ComplexRat::from_rat(Rat::from_integer(poly.coeff(n)));
    for j in (1..n).rev() {
        let a_j = Rat::from_integer(poly.coeff(j));
        let exact = z.mul(&b[j]).add(&ComplexRat::from_rat(a_j));
        b[j - 1] = ComplexRat::new(
            round_dyadic(&exact.re, grid),
            round_dyadic(&exact.im, grid),
        );
    }
    b
}

/// Real quotient f(x) / (x - r), ascending coefficients on the dyadic grid.
fn real_quotient_eigenvector(
    poly: &crate::numfield::IntPolynomial,
    r: &Rat,
    bits: u32,
) -> Vec<Rat> {
    let n = poly.deg();
    let grid = bits + 16;
    let mut b = vec![Rat::zero(); n];
    b[n - 1] = Rat::from_integer(poly.coeff(n));
    for j in (1..n).rev() {
        b[j - 1] = round_dyadic(&(r * &b[j] + Rat::from_integer(poly.coeff(j))), grid);
    }
    b
}

fn gram_apply(gram: &[Vec<Rat>], v: &[ComplexRat]) -> Vec<ComplexRat> {
    gram.iter()
        .map(|row| {
            let mut acc = ComplexRat::zero();
            for (g, x) in row.iter().zip(v) {
                acc = acc.add(&x.scale(g));
            }
            acc
        })
        .collect()
}

fn dot(u: &[ComplexRat], v: &[ComplexRat]) -> ComplexRat {
    let mut acc = ComplexRat::zero();
    for (a, b) in u.iter().zip(v) {
        acc = acc.add(&a.mul(b));
    }
    acc
}

struct Residuals {
    isotropy: Rat,
    pairing: Rat,
    t11: Rat,
}

/// Exact residual evaluation of a candidate period against a Gram matrix.
/// The T^{1,1} spanning set is the projection of the standard basis along
/// omega and its conjugate.
fn residuals(gram: &[Vec<Rat>], omega: &[ComplexRat]) -> Residuals {
    let n = omega.len();
    let omega_bar: Vec<ComplexRat> = omega.iter().map(|z| z.conj()).collect();
    let g_omega = gram_apply(gram, omega);
    let g_omega_bar: Vec<ComplexRat> = g_omega.iter().map(|z| z.conj()).collect();

    let iso = dot(omega, &g_omega);
    let pairing_c = dot(omega, &g_omega_bar);
    // The imaginary part contracts to zero against a symmetric Gram.
    debug_assert!(pairing_c.im.is_zero());
    let pairing = pairing_c.re;

    let mut t11 = Rat::zero();
    if !pairing.is_zero() {
        let inv_pairing = Rat::one() / &pairing;
        for k in 0..n {
            // t_k = e_k - ((e_k, conj omega)/pi) omega - ((e_k, omega)/pi) conj omega
            let ck_bar = g_omega_bar[k].scale(&inv_pairing);
            let ck = g_omega[k].scale(&inv_pairing);
            let mut t = vec![ComplexRat::zero(); n];
            for i in 0..n {
                t[i] = t[i]
                    .sub(&ck_bar.mul(&omega[i]))
                    .sub(&ck.mul(&omega_bar[i]));
            }
            t[k] = t[k].add(&ComplexRat::from_rat(Rat::one()));
            let r1 = dot(&t, &g_omega).abs_max();
            let r2 = dot(&t, &g_omega_bar).abs_max();
            for r in [r1, r2] {
                if r > t11 {
                    t11 = r;
                }
            }
        }
    }
    Residuals {
        isotropy: iso.abs_max(),
        pairing,
        t11,
    }
}

fn refined_midpoint(
    poly: &crate::numfield::IntPolynomial,
    interval: &RatInterval,
    bits: u32,
) -> Rat {
    let refined = refine_to_width(poly, interval, &pow2_inv(bits));
    refined.midpoint()
}

/// Period vector of the rank-one hermitian transfer of a Salem field.
///
/// Requires the transfer form to have signature (3, 2d-3), checked first
/// through the closed-form signature rule; equivalently, alpha is positive
/// at exactly one complex place of E.  That place determines theta with
/// z = e^{i theta}, 2 cos theta the corresponding interior root of the
/// trace polynomial, and omega is the z-eigenvector of the companion
/// matrix, scaled to have top coefficient 1.
pub fn period_from_salem(
    s: &SalemPolynomial,
    alpha: &FieldElement,
    precision_bits: u32,
) -> Result<PeriodData, PeriodError> {
    let d = s.half_degree();
    // Closed-form signature from the interior signs of alpha; no
    // factorization of the transfer determinant is needed for a period.
    let alpha0 = restrict_to_trace_field(s, alpha)?;
    let e0 = s.trace_field()?;
    let signs = e0.sign_at_real_embeddings(&alpha0)?;
    let interior = &signs[..d - 1];
    let found = closed_form_signature(FieldKind::SM, interior)?;
    let expected = (3, 2 * d - 3);
    if found != expected {
        return Err(PeriodError::SignatureMismatch {
            expected: format!("{expected:?}"),
            found: format!("{found:?}"),
        });
    }
    let k = interior.iter().position(|s| *s > 0).ok_or_else(|| {
        PeriodError::InvalidInput(
            "no positive interior embedding despite matching signature".into(),
        )
    })?;

    let y = refined_midpoint(s.trace_poly(), &e0.real_embeddings()[k], precision_bits);
    let c = &y / Rat::from_integer(BigInt::from(2));
    let s_sq = Rat::one() - &c * &c;
    let z = ComplexRat::new(c, rat_sqrt_approx(&s_sq, precision_bits));

    let omega = quotient_eigenvector(s.poly(), &z, precision_bits);
    let gram = s
        .field()?
        .trace_form_gram(alpha, Involution::Reciprocal)?;
    let res = residuals(&gram, &omega);
    if !res.pairing.is_positive() {
        return Err(PeriodError::InvalidInput(
            "pairing (omega, conj omega) came out nonpositive; raise the precision".into(),
        ));
    }
    Ok(PeriodData {
        omega,
        embedding_index: k,
        residual_isotropy: res.isotropy,
        pairing_value: res.pairing,
        max_t11_orthogonality: res.t11,
        precision_bits,
    })
}

const SAMPLE_ATTEMPTS: u32 = 64;

/// Period vector for a diagonal form over a totally real field, at the
/// real embedding of the given index.
///
/// The form must have signature (2, m-2) or (3, m-3) at that embedding.
/// A point on the quadric (omega, omega) = 0 with (omega, conj omega) > 0
/// is sampled from the seeded generator: random rational direction, then
/// the quadratic constraint is solved exactly, retrying until positivity
/// holds.  The solution set has m - 2 free complex parameters, so distinct
/// seeds generically give distinct periods.  Staying clear of the
/// countably many degenerate loci inside the period domain is generic but
/// is not certified per sample.
pub fn period_from_rm(
    w: &DiagonalFormOverField,
    sigma_index: usize,
    seed: u64,
    precision_bits: u32,
) -> Result<PeriodData, PeriodError> {
    let field = w.field();
    let d = field.degree();
    if sigma_index >= d {
        return Err(PeriodError::InvalidInput(format!(
            "embedding index {sigma_index} out of range for a degree {d} field"
        )));
    }
    let m = w.rank();
    let mut n_plus = 0usize;
    for entry in w.entries() {
        if field.sign_at_real_embeddings(entry)?[sigma_index] > 0 {
            n_plus += 1;
        }
    }
    if n_plus != 2 && n_plus != 3 {
        return Err(PeriodError::SignatureMismatch {
            expected: format!("(2, {}) or (3, {})", m.saturating_sub(2), m.saturating_sub(3)),
            found: format!("({}, {})", n_plus, m - n_plus),
        });
    }

    // Approximate sigma-eigenvector of multiplication by the generator,
    // shared by every block; the exact Gram is assembled blockwise and the
    // local value of each entry at sigma is its Gram evaluated on the
    // eigenvector.
    let r = refined_midpoint(
        field.min_poly(),
        &field.real_embeddings()[sigma_index],
        precision_bits,
    );
    let q_vec = real_quotient_eigenvector(field.min_poly(), &r, precision_bits);
    let mut gram: Vec<Vec<Rat>> = Vec::new();
    let mut local: Vec<Rat> = Vec::with_capacity(m);
    for a in w.entries() {
        let g = field.trace_form_gram(a, Involution::Identity)?;
        let gq: Vec<Rat> = g
            .iter()
            .map(|row| row.iter().zip(&q_vec).map(|(x, y)| x * y).sum())
            .collect();
        local.push(q_vec.iter().zip(&gq).map(|(x, y)| x * y).sum());
        gram = block_diag(&gram, &g);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..SAMPLE_ATTEMPTS {
        let a: Vec<Rat> = (0..m)
            .map(|_| Rat::from_integer(BigInt::from(rng.gen_range(-9i64..=9))))
            .collect();
        let b: Vec<Rat> = (0..m)
            .map(|_| Rat::from_integer(BigInt::from(rng.gen_range(-9i64..=9))))
            .collect();
        // omega weights a + t b solve A t^2 + B t + C = 0 with complex t.
        let qa: Rat = local.iter().zip(&a).map(|(c, x)| c * x * x).sum();
        let qb: Rat = local.iter().zip(&b).map(|(c, x)| c * x * x).sum();
        let qab: Rat = local.iter().zip(&a).zip(&b).map(|((c, x), y)| c * x * y).sum();
        if qb.is_zero() {
            continue;
        }
        let disc = &qab * &qab - &qa * &qb;
        if !disc.is_negative() {
            continue;
        }
        let t_re = -&qab / &qb;
        let t_im = rat_sqrt_approx(&(-&disc / (&qb * &qb)), precision_bits);
        let t = ComplexRat::new(t_re, t_im);

        let mut omega = Vec::with_capacity(d * m);
        for (ai, bi) in a.iter().zip(&b) {
            let weight = t.scale(bi).add(&ComplexRat::from_rat(ai.clone()));
            for q in &q_vec {
                omega.push(weight.scale(q));
            }
        }
        let res = residuals(&gram, &omega);
        if !res.pairing.is_positive() {
            continue;
        }
        return Ok(PeriodData {
            omega,
            embedding_index: sigma_index,
            residual_isotropy: res.isotropy,
            pairing_value: res.pairing,
            max_t11_orthogonality: res.t11,
            precision_bits,
        });
    }
    Err(PeriodError::SamplingFailed {
        attempts: SAMPLE_ATTEMPTS,
    })
}

/// Recompute every residual of `p` against an exact Gram matrix and
/// compare with a relative tolerance.  Infinite tolerance passes
/// everything; the report never errors.
pub fn verify_period(p: &PeriodData, gram: &[Vec<Rat>], tol: f64) -> PeriodReport {
    let n = p.omega.len();
    if gram.len() != n || gram.iter().any(|row| row.len() != n) {
        return PeriodReport {
            checks: vec![PeriodCheck {
                name: "dimensions match".into(),
                value: gram.len() as f64,
                bound: n as f64,
                pass: false,
            }],
        };
    }
    let res = residuals(gram, &p.omega);
    let norm_sq: Rat = p.omega.iter().map(|z| z.norm_sq()).sum();
    let unlimited = tol.is_infinite();
    let tol_rat = if unlimited {
        Rat::zero()
    } else {
        Rat::from_float(tol).unwrap_or_else(Rat::zero)
    };

    let iso_bound = &tol_rat * &norm_sq;
    let iso_pass = unlimited || res.isotropy <= iso_bound;
    let pos_pass = res.pairing.is_positive();
    // T^{1,1} spanning vectors have max norm within a small factor of 1 +
    // |omega|^2 / pairing; bound against the same relative scale.
    let t11_bound = &tol_rat * &norm_sq;
    let t11_pass = unlimited || res.t11 <= t11_bound;

    PeriodReport {
        checks: vec![
            PeriodCheck {
                name: "isotropy |(omega, omega)| within tolerance".into(),
                value: rat_to_f64(&res.isotropy),
                bound: rat_to_f64(&iso_bound),
                pass: iso_pass,
            },
            PeriodCheck {
                name: "pairing (omega, conj omega) positive".into(),
                value: rat_to_f64(&res.pairing),
                bound: 0.0,
                pass: pos_pass,
            },
            PeriodCheck {
                name: "T11 orthogonal to omega and conj omega within tolerance".into(),
                value: rat_to_f64(&res.t11),
                bound: rat_to_f64(&t11_bound),
                pass: t11_pass,
            },
        ],
    }
}

/// Exact check that the companion matrix M of S preserves the transfer
/// Gram: M^T G M = G.  This is the matrix form of (x u, x v) = (u, v),
/// which holds because x conj(x) = 1 in the Salem field.
pub fn companion_isometry_check(
    s: &SalemPolynomial,
    alpha: &FieldElement,
) -> Result<bool, PeriodError> {
    let e = s.field()?;
    let m = e.mult_matrix(&e.generator());
    let g = e.trace_form_gram(alpha, Involution::Reciprocal)?;
    Ok(mat_mul(&transpose(&m), &mat_mul(&g, &m)) == g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat_int};
    use crate::numfield::{IntPolynomial, NumberField};
    use crate::salem::{corpus, find_alpha_with_signature};
    use crate::transfer::transfer_quadratic;

    fn salem(name: &str) -> SalemPolynomial {
        corpus::find(name).unwrap().certify()
    }

    fn salem_gram(s: &SalemPolynomial, alpha: &FieldElement) -> Vec<Vec<Rat>> {
        s.field()
            .unwrap()
            .trace_form_gram(alpha, Involution::Reciprocal)
            .unwrap()
    }

    #[test]
    fn sqrt_approx_brackets() {
        let two = rat_int(2);
        let r = rat_sqrt_approx(&two, 40);
        let err = (&r * &r - &two).abs();
        // |r^2 - 2| = |r - sqrt 2| * |r + sqrt 2| < 2^-40 * 3
        assert!(err < rat(3, 1) * pow2_inv(40));
        assert!(rat_sqrt_approx(&Rat::zero(), 20).is_zero());
    }

    #[test]
    fn rat_to_f64_handles_huge_components() {
        let big = Rat::new(BigInt::one() << 3000, (BigInt::one() << 3002) + BigInt::one());
        let v = rat_to_f64(&big);
        assert!((v - 0.25).abs() < 1e-12, "{v}");
        assert_eq!(rat_to_f64(&Rat::zero()), 0.0);
        assert!((rat_to_f64(&rat(-355, 113)) + 355.0 / 113.0).abs() < 1e-12);
    }

    #[test]
    fn quartic_period() {
        // x^4 - x^3 - 2x^2 - x + 1 with alpha = 1: d = 2, the single
        // interior embedding is the positive one.
        let s = salem("deg4b");
        let one = s.field().unwrap().one();
        let p = period_from_salem(&s, &one, 64).unwrap();
        assert_eq!(p.omega.len(), 4);
        assert_eq!(p.embedding_index, 0);
        assert!(p.pairing_value.is_positive());
        // top coefficient of the quotient eigenvector is exactly 1.
        assert_eq!(p.omega[3], ComplexRat::from_rat(Rat::one()));

        let report = verify_period(&p, &salem_gram(&s, &one), 1e-9);
        assert!(report.all_pass(), "{report:?}");
    }

    #[test]
    fn lehmer_period_embedding_index() {
        let s = salem("lehmer");
        let alpha = find_alpha_with_signature(&s, 1).unwrap();
        let p = period_from_salem(&s, &alpha, 64).unwrap();
        assert_eq!(p.omega.len(), 10);
        // alpha = x + 1/x - t with t below the top interior root: positive
        // exactly at the last of the four interior embeddings.
        assert_eq!(p.embedding_index, 3);
        assert_eq!(p.precision_bits, 64);
        let report = verify_period(&p, &salem_gram(&s, &alpha), 1e-9);
        assert!(report.all_pass(), "{report:?}");
    }

    #[test]
    fn wrong_signature_is_rejected() {
        // alpha = 1 is totally positive: a+ = d - 1, so for d > 2 the
        // transfer signature is not (3, 2d-3).
        let s = salem("lehmer");
        let one = s.field().unwrap().one();
        match period_from_salem(&s, &one, 32) {
            Err(PeriodError::SignatureMismatch { expected, found }) => {
                assert_eq!(expected, "(3, 7)");
                assert_eq!(found, "(9, 1)");
            }
            other => panic!("expected signature mismatch, got {other:?}"),
        }
    }

    #[test]
    fn period_is_companion_eigenvector() {
        let s = salem("deg6");
        let alpha = find_alpha_with_signature(&s, 1).unwrap();
        let p = period_from_salem(&s, &alpha, 64).unwrap();
        // Recover z from the division relation b_{n-2} = a_{n-1} + z.
        let n = p.omega.len();
        let a_top = Rat::from_integer(s.poly().coeff(n - 1));
        let z = p.omega[n - 2].sub(&ComplexRat::from_rat(a_top));
        let e = s.field().unwrap();
        let m = e.mult_matrix(&e.generator());
        let m_omega: Vec<ComplexRat> = (0..n)
            .map(|i| {
                let mut acc = ComplexRat::zero();
                for j in 0..n {
                    acc = acc.add(&p.omega[j].scale(&m[i][j]));
                }
                acc
            })
            .collect();
        let tol = rat(1, 1_000_000_000);
        for (lhs, rhs) in m_omega.iter().zip(p.omega.iter().map(|w| w.mul(&z))) {
            assert!(lhs.sub(&rhs).abs_max() < tol);
        }
    }

    #[test]
    fn corpus_periods_verify() {
        for entry in corpus::CORPUS {
            let s = entry.certify();
            let alpha = find_alpha_with_signature(&s, 1).unwrap();
            let p = period_from_salem(&s, &alpha, 53).unwrap();
            assert!(p.pairing_value.is_positive(), "{}", entry.name);
            let report = verify_period(&p, &salem_gram(&s, &alpha), 1e-9);
            assert!(report.all_pass(), "{}: {report:?}", entry.name);
            assert!(companion_isometry_check(&s, &alpha).unwrap(), "{}", entry.name);
        }
    }

    #[test]
    fn precision_scaling() {
        for name in ["deg6", "deg8"] {
            let s = salem(name);
            let alpha = find_alpha_with_signature(&s, 1).unwrap();
            let coarse = period_from_salem(&s, &alpha, 30).unwrap();
            let fine = period_from_salem(&s, &alpha, 60).unwrap();
            assert!(!coarse.residual_isotropy.is_zero());
            assert!(
                &fine.residual_isotropy * rat_int(2) <= coarse.residual_isotropy,
                "{name}: doubling precision must at least halve the residual"
            );
        }
    }

    fn sqrt5_form(entries: Vec<i64>) -> DiagonalFormOverField {
        let f = NumberField::new(IntPolynomial::from_i64(&[-5, 0, 1])).unwrap();
        let elems: Vec<FieldElement> = entries.iter().map(|c| f.from_rational(rat_int(*c))).collect();
        DiagonalFormOverField::new(f, elems).unwrap()
    }

    #[test]
    fn rm_period_over_sqrt5() {
        let w = sqrt5_form(vec![1, 1, -1]);
        let p = period_from_rm(&w, 0, 7, 64).unwrap();
        assert_eq!(p.omega.len(), 6);
        assert_eq!(p.embedding_index, 0);
        assert!(p.pairing_value.is_positive());
        let gram = transfer_quadratic(&w).unwrap().form.gram();
        let report = verify_period(&p, &gram, 1e-9);
        assert!(report.all_pass(), "{report:?}");

        // determinism: same seed, same period; new seed, new period.
        let again = period_from_rm(&w, 0, 7, 64).unwrap();
        assert_eq!(p, again);
        let other = period_from_rm(&w, 0, 8, 64).unwrap();
        assert_ne!(p.omega, other.omega);
        assert!(verify_period(&other, &gram, 1e-9).all_pass());
    }

    #[test]
    fn rm_signature_depends_on_embedding() {
        // entries (sqrt 5, 1, -1): signs (-,+,-) at the negative embedding
        // but (+,+,-) at the positive one.
        let f = NumberField::new(IntPolynomial::from_i64(&[-5, 0, 1])).unwrap();
        let entries = vec![f.generator(), f.one(), f.neg(&f.one())];
        let w = DiagonalFormOverField::new(f, entries).unwrap();
        match period_from_rm(&w, 0, 7, 48) {
            Err(PeriodError::SignatureMismatch { found, .. }) => assert_eq!(found, "(1, 2)"),
            other => panic!("expected signature mismatch, got {other:?}"),
        }
        let p = period_from_rm(&w, 1, 7, 48).unwrap();
        assert_eq!(p.embedding_index, 1);
    }

    #[test]
    fn rm_rejects_bad_inputs() {
        let w = sqrt5_form(vec![1, 1, -1]);
        assert!(matches!(
            period_from_rm(&w, 2, 7, 48),
            Err(PeriodError::InvalidInput(_))
        ));
        let neg = sqrt5_form(vec![-1, -1, -1]);
        assert!(matches!(
            period_from_rm(&neg, 0, 7, 48),
            Err(PeriodError::SignatureMismatch { .. })
        ));
    }

    #[test]
    fn signature_three_block_accepted() {
        // four entries with three positive: signature (3, 1) at sigma.
        let w = sqrt5_form(vec![1, 1, 1, -1]);
        let p = period_from_rm(&w, 0, 11, 64).unwrap();
        let gram = transfer_quadratic(&w).unwrap().form.gram();
        assert!(verify_period(&p, &gram, 1e-9).all_pass());
    }

    #[test]
    fn verify_detects_perturbation() {
        let s = salem("deg4b");
        let one = s.field().unwrap().one();
        let p = period_from_salem(&s, &one, 64).unwrap();
        let gram = salem_gram(&s, &one);

        let mut bent = p.clone();
        bent.omega[0].re += rat(1, 1000);
        let report = verify_period(&bent, &gram, 1e-9);
        assert!(!report.all_pass());
        assert!(!report.checks[0].pass, "isotropy must fail: {report:?}");

        // infinite tolerance accepts anything with positive pairing.
        assert!(verify_period(&bent, &gram, f64::INFINITY).all_pass());

        // dimension mismatch is reported, not panicked.
        let small = vec![vec![Rat::one()]];
        assert!(!verify_period(&p, &small, 1e-9).all_pass());
    }

    #[test]
    fn companion_isometry() {
        let s = salem("lehmer");
        let e = s.field().unwrap();
        assert!(companion_isometry_check(&s, &e.one()).unwrap());
        let alpha = find_alpha_with_signature(&s, 1).unwrap();
        assert!(companion_isometry_check(&s, &alpha).unwrap());

        // scaling the matrix breaks the identity.
        let m = e.mult_matrix(&e.generator());
        let g = e.trace_form_gram(&e.one(), Involution::Reciprocal).unwrap();
        let doubled: Vec<Vec<Rat>> = m
            .iter()
            .map(|row| row.iter().map(|x| x * rat_int(2)).collect())
            .collect();
        assert_ne!(mat_mul(&transpose(&doubled), &mat_mul(&g, &doubled)), g);
    }
}
