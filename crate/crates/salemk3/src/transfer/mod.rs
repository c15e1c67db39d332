//! The transfer to Q: Gram matrices and invariants of trace forms of
//! diagonal quadratic forms over totally real fields and of rank-1
//! hermitian forms over Salem fields, the closed-form signature calculus,
//! determinant laws, and the explicit quartic constructions.

use num::{BigInt, BigUint, One, Zero};
use thiserror::Error;

use crate::arith::{is_sum_of_two_squares, rat, rat_int, square_class, ArithError, Rat};
use crate::numfield::{
    FieldElement, IntPolynomial, Involution, NumberField, NumfieldError,
};
use crate::qforms::{
    block_diag, equivalent_over_q, named_form, FormInvariants, NamedForm, QformsError,
    QuadraticFormQ,
};
use crate::salem::{SalemError, SalemFieldPresentation, SalemPolynomial};

#[derive(Debug, Error)]
pub enum TransferError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    Numfield(#[from] NumfieldError),
    #[error(transparent)]
    Qforms(#[from] QformsError),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Salem(#[from] Box<SalemError>),
}

impl From<SalemError> for TransferError {
    fn from(e: SalemError) -> TransferError {
        TransferError::Salem(Box::new(e))
    }
}

/// Which signature table applies to a sign vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldKind {
    /// Totally real field, trivial involution.
    RM,
    /// CM field over a totally real base.
    CM,
    /// Salem field with the reciprocal involution.
    SM,
}

/// Diagonal form `<a_1, ..., a_m>` over a number field.
#[derive(Debug, Clone)]
pub struct DiagonalFormOverField {
    field: NumberField,
    entries: Vec<FieldElement>,
}

impl DiagonalFormOverField {
    pub fn new(
        field: NumberField,
        entries: Vec<FieldElement>,
    ) -> Result<DiagonalFormOverField, TransferError> {
        if entries.is_empty() {
            return Err(TransferError::InvalidInput("empty diagonal form".into()));
        }
        if entries.iter().any(|e| e.is_zero()) {
            return Err(TransferError::InvalidInput(
                "diagonal entries must be nonzero".into(),
            ));
        }
        Ok(DiagonalFormOverField { field, entries })
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn entries(&self) -> &[FieldElement] {
        &self.entries
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }
}

/// Transfer output: the rational form on the power basis, its invariants,
/// and, when sign data is available, the tabulated signature (which must
/// agree with the exact one).
#[derive(Debug, Clone)]
pub struct TransferResult {
    pub form: QuadraticFormQ,
    pub invariants: FormInvariants,
    pub closed_form_signature: Option<(usize, usize)>,
}

/// Signature of the transfer of a rank-1 form from the sign vector of its
/// entry, by field kind: RM (a+, a-); CM (2a+, 2a-); SM (1+2a+, 1+2a-).
pub fn closed_form_signature(
    kind: FieldKind,
    signs: &[i8],
) -> Result<(usize, usize), TransferError> {
    if signs.is_empty() && kind != FieldKind::SM {
        return Err(TransferError::InvalidInput("empty sign vector".into()));
    }
    if signs.iter().any(|s| *s == 0) {
        return Err(TransferError::InvalidInput(
            "sign vector contains a zero".into(),
        ));
    }
    let pos = signs.iter().filter(|s| **s > 0).count();
    let neg = signs.len() - pos;
    Ok(match kind {
        FieldKind::RM => (pos, neg),
        FieldKind::CM => (2 * pos, 2 * neg),
        FieldKind::SM => (1 + 2 * pos, 1 + 2 * neg),
    })
}

/// `T(W)` for a diagonal form over a totally real field: block-diagonal
/// Gram of the trace forms `Tr(a_i x^j x^k)`, dimension `d * m`.
pub fn transfer_quadratic(w: &DiagonalFormOverField) -> Result<TransferResult, TransferError> {
    let f = w.field();
    if !f.is_totally_real() {
        return Err(TransferError::InvalidInput(
            "transfer_quadratic needs a totally real field".into(),
        ));
    }
    let mut gram: Vec<Vec<Rat>> = Vec::new();
    let (mut pos, mut neg) = (0usize, 0usize);
    for a in w.entries() {
        let block = f.trace_form_gram(a, Involution::Identity)?;
        gram = if gram.is_empty() {
            block
        } else {
            block_diag(&gram, &block)
        };
        let signs = f.sign_at_real_embeddings(a)?;
        let (p, n) = closed_form_signature(FieldKind::RM, &signs)?;
        pos += p;
        neg += n;
    }
    let form = QuadraticFormQ::from_gram(gram)?;
    let invariants = form.invariants()?;
    debug_assert_eq!(invariants.signature, (pos, neg));
    Ok(TransferResult {
        form,
        invariants,
        closed_form_signature: Some((pos, neg)),
    })
}

/// `T(W)` for `W = <alpha>` hermitian over the Salem field of `S` with
/// the reciprocal involution: `G[i][j] = Tr(alpha x^i x^-j)`.
pub fn transfer_hermitian_rank1(
    s: &SalemPolynomial,
    alpha: &FieldElement,
) -> Result<TransferResult, TransferError> {
    let e = s.field()?;
    let gram = e.trace_form_gram(alpha, Involution::Reciprocal)?;
    let form = QuadraticFormQ::from_gram(gram)?;
    let invariants = form.invariants()?;

    let alpha0 = restrict_in_field(s, &e, alpha)?;
    let e0 = s.trace_field()?;
    let signs = e0.sign_at_real_embeddings(&alpha0)?;
    // Interior embeddings (ascending, all below the lambda one) extend to
    // the complex places of E; the last drives the hyperbolic summand.
    let closed = closed_form_signature(FieldKind::SM, &signs[..s.half_degree() - 1])?;
    debug_assert_eq!(invariants.signature, closed);
    Ok(TransferResult {
        form,
        invariants,
        closed_form_signature: Some(closed),
    })
}

/// Rewrites an involution-fixed element of `E` in the power basis of the
/// totally real subfield `E_0 = Q(x + 1/x)`.
pub fn restrict_to_trace_field(
    s: &SalemPolynomial,
    alpha: &FieldElement,
) -> Result<FieldElement, TransferError> {
    restrict_in_field(s, &s.field()?, alpha)
}

fn restrict_in_field(
    s: &SalemPolynomial,
    e: &NumberField,
    alpha: &FieldElement,
) -> Result<FieldElement, TransferError> {
    let d = s.half_degree();
    let x = e.generator();
    let y = e.add(&x, &e.inverse(&x)?);
    let mut cols: Vec<Vec<Rat>> = Vec::with_capacity(d);
    let mut cur = e.one();
    for _ in 0..d {
        cols.push(cur.coords().to_vec());
        cur = e.mul(&cur, &y);
    }
    let coords = solve_columns(&cols, alpha.coords()).ok_or_else(|| {
        TransferError::InvalidInput("element is not fixed by the involution".into())
    })?;
    Ok(s.trace_field()?.from_coords(coords))
}

/// Solves `sum_k c_k cols[k] = rhs` exactly; `None` when inconsistent.
fn solve_columns(cols: &[Vec<Rat>], rhs: &[Rat]) -> Option<Vec<Rat>> {
    let n = rhs.len();
    let m = cols.len();
    let mut a: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            let mut row: Vec<Rat> = cols.iter().map(|c| c[i].clone()).collect();
            row.push(rhs[i].clone());
            row
        })
        .collect();
    let mut pivot_rows = Vec::with_capacity(m);
    let mut r = 0;
    for c in 0..m {
        let Some(p) = (r..n).find(|&i| !a[i][c].is_zero()) else {
            return None; // columns are independent, so every one pivots
        };
        a.swap(r, p);
        let inv = Rat::one() / a[r][c].clone();
        for j in c..=m {
            a[r][j] = &a[r][j] * &inv;
        }
        for i in 0..n {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in c..=m {
                    a[i][j] = &a[i][j] - &f * &a[r][j];
                }
            }
        }
        pivot_rows.push(r);
        r += 1;
    }
    if a.iter().skip(r).any(|row| !row[m].is_zero()) {
        return None; // rhs outside the column span
    }
    Some((0..m).map(|k| a[pivot_rows[k]][m].clone()).collect())
}

/// det T(W) = Delta_E^m * N(det W) for the trivial involution.
pub fn check_transfer_det(
    w: &DiagonalFormOverField,
    result: &TransferResult,
) -> Result<bool, TransferError> {
    let f = w.field();
    let mut det_w = f.one();
    for a in w.entries() {
        det_w = f.mul(&det_w, a);
    }
    let target = f
        .disc_class()?
        .pow(w.rank() as u64)
        .mul(&square_class(&f.norm(&det_w))?);
    Ok(result.invariants.det == target)
}

/// det T(W) = [(-1)^d Delta_E]^m for the reciprocal involution (rank 1
/// here, so the class is (-1)^d Delta_E independent of alpha).
pub fn check_transfer_det_reciprocal(
    s: &SalemPolynomial,
    result: &TransferResult,
) -> Result<bool, TransferError> {
    let mut target = s.disc_class().clone();
    if s.half_degree() % 2 == 1 {
        target = target.negate();
    }
    Ok(result.invariants.det == target)
}

/// A rank-1 form over `Q(sqrt d)` transferring to `<1,1>`.
#[derive(Debug, Clone)]
pub struct H11Witness {
    pub field: NumberField,
    pub alpha: FieldElement,
    pub transfer: TransferResult,
}

/// For squarefree `d = u^2 + v^2`, the element `alpha = (d + u sqrt d)/(2d)`
/// has `T(<alpha>) ~ <1,1>`; when `d` is not a sum of two squares no rank-1
/// form over `Q(sqrt d)` transfers to `<1,1>`, and `None` is returned.
pub fn construct_h11_witness(d: u64) -> Result<Option<H11Witness>, TransferError> {
    let field = real_quadratic_field(d)?;
    let Some((u, _)) = is_sum_of_two_squares(d) else {
        return Ok(None);
    };
    let alpha = field.from_coords(vec![
        rat(1, 2),
        Rat::new(BigInt::from(u), BigInt::from(2 * d)),
    ]);
    let w = DiagonalFormOverField::new(field.clone(), vec![alpha.clone()])?;
    let transfer = transfer_quadratic(&w)?;
    let i2 = named_form(&NamedForm::I(2))?;
    if !equivalent_over_q(&transfer.form, &i2)? {
        return Err(TransferError::InvalidInput(
            "internal: witness transfer is not <1,1>".into(),
        ));
    }
    Ok(Some(H11Witness {
        field,
        alpha,
        transfer,
    }))
}

fn real_quadratic_field(d: u64) -> Result<NumberField, TransferError> {
    if d < 2 {
        return Err(TransferError::InvalidInput(format!(
            "need d >= 2, got {d}"
        )));
    }
    let class = square_class(&rat_int(d as i64))?;
    if class.radical() != &BigUint::from(d) {
        return Err(TransferError::InvalidInput(format!(
            "{d} is not squarefree"
        )));
    }
    Ok(NumberField::new(IntPolynomial::from_i64(&[
        -(d as i64),
        0,
        1,
    ]))?)
}

/// The explicit quartic construction from a two-square decomposition.
#[derive(Debug, Clone)]
pub struct SalemBinaryConstruction {
    /// `E = Q(sqrt d)(z)` with `z^2 = -(u + sqrt d)`, presented relatively.
    pub presentation: SalemFieldPresentation,
    /// `Q[z]/(z^4 + 2u z^2 + (u^2 - d))`.
    pub quartic: NumberField,
    /// `(d + u sqrt d)/d` rewritten in the power basis of `z`.
    pub alpha: FieldElement,
    /// `T(<alpha>)`, verified equivalent to `H + <1,1>`.
    pub transfer: TransferResult,
}

/// Builds the quartic field `Q(sqrt(-(u + sqrt d)))` for `d = u^2 + v^2`
/// squarefree, the hermitian entry `alpha = (d + u sqrt d)/d`, and its
/// transfer, which is always `H + <1,1>` of signature (3,1).
pub fn construct_salem_from_binary(
    d: u64,
    u: u64,
    v: u64,
) -> Result<SalemBinaryConstruction, TransferError> {
    if u == 0 || v == 0 || u * u + v * v != d {
        return Err(TransferError::InvalidInput(format!(
            "{u}^2 + {v}^2 != {d}"
        )));
    }
    let base = real_quadratic_field(d)?;

    // z^2 = -(u + sqrt d) has minimal polynomial z^4 + 2u z^2 + (u^2 - d).
    let quartic = NumberField::new(IntPolynomial::from_i64(&[
        u as i64 * u as i64 - d as i64,
        0,
        2 * u as i64,
        0,
        1,
    ]))?;
    debug_assert_eq!(quartic.signature(), (2, 1));

    // alpha = (d + u sqrt d)/d = (v^2 - u z^2)/d, fixed by z -> -z.
    let di = BigInt::from(d);
    let alpha = quartic.from_coords(vec![
        Rat::new(BigInt::from(v * v), di.clone()),
        Rat::zero(),
        -Rat::new(BigInt::from(u), di),
        Rat::zero(),
    ]);
    let gram = quartic.trace_form_gram(&alpha, Involution::Negation)?;
    let form = QuadraticFormQ::from_gram(gram)?;
    let invariants = form.invariants()?;

    // Closed form: the complex place of E lies over the embedding of
    // Q(sqrt d) where z^2 = -(u + sqrt d) is negative.
    let beta = base.from_coords(vec![rat_int(-(u as i64)), rat_int(-1)]);
    let alpha0 = base.from_coords(vec![Rat::one(), Rat::new(BigInt::from(u), BigInt::from(d))]);
    let beta_signs = base.sign_at_real_embeddings(&beta)?;
    let alpha_signs = base.sign_at_real_embeddings(&alpha0)?;
    let sm_vector: Vec<i8> = beta_signs
        .iter()
        .zip(&alpha_signs)
        .filter(|(b, _)| **b < 0)
        .map(|(_, a)| *a)
        .collect();
    let closed = closed_form_signature(FieldKind::SM, &sm_vector)?;
    debug_assert_eq!(invariants.signature, closed);

    let target = named_form(&NamedForm::H)?.direct_sum(&named_form(&NamedForm::I(2))?);
    if !equivalent_over_q(&form, &target)? {
        return Err(TransferError::InvalidInput(
            "internal: quartic transfer is not H + <1,1>".into(),
        ));
    }

    let presentation = SalemFieldPresentation::relative(base, beta)?;
    Ok(SalemBinaryConstruction {
        presentation,
        quartic,
        alpha,
        transfer: TransferResult {
            form,
            invariants,
            closed_form_signature: Some(closed),
        },
    })
}
