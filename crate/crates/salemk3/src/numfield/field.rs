//! The field `Q[x]/(f)` for monic irreducible integer `f`: element
//! arithmetic, trace/norm, embedding data, embedding signs, involutions,
//! and trace-form Gram matrices.

use num::{BigInt, One, Zero};

use crate::arith::{sign_of, square_class, Rat, SquareClass};
use crate::qforms::det;

use super::intpoly::IntPolynomial;
use super::irreducible::irreducible_over_q;
use super::ratpoly::RatPoly;
use super::sturm::{bisect_once, eval_interval, isolate_real_roots, RatInterval};
use super::NumfieldError;

/// Field automorphism of order at most 2 induced by a symmetry of the
/// minimal polynomial: `x -> x`, `x -> 1/x` (self-reciprocal minimal
/// polynomial), or `x -> -x` (even/odd minimal polynomial).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Involution {
    Identity,
    Reciprocal,
    Negation,
}

impl Involution {
    pub fn name(&self) -> &'static str {
        match self {
            Involution::Identity => "identity",
            Involution::Reciprocal => "reciprocal",
            Involution::Negation => "negation",
        }
    }
}

/// Element written in the power basis `1, x, ..., x^(n-1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldElement {
    coords: Vec<Rat>,
}

impl FieldElement {
    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    /// The rational value when the element is a constant.
    pub fn as_rational(&self) -> Option<Rat> {
        if self.coords.iter().skip(1).all(|c| c.is_zero()) {
            Some(self.coords.first().cloned().unwrap_or_else(Rat::zero))
        } else {
            None
        }
    }
}

#[derive(Debug, Clone)]
pub struct NumberField {
    min_poly: IntPolynomial,
    min_poly_rat: RatPoly,
    degree: usize,
    real_roots: Vec<RatInterval>,
    complex_pairs: usize,
    power_sums: Vec<Rat>,
}

impl NumberField {
    /// Builds `Q[x]/(f)` after verifying `f` is monic and irreducible.
    /// Real roots of `f` are isolated here, once.
    pub fn new(min_poly: IntPolynomial) -> Result<NumberField, NumfieldError> {
        NumberField::build(min_poly, true)
    }

    /// Same as `new` but trusts the caller's irreducibility proof (for
    /// polynomials already certified elsewhere).
    pub(crate) fn new_preverified(min_poly: IntPolynomial) -> Result<NumberField, NumfieldError> {
        NumberField::build(min_poly, false)
    }

    fn build(min_poly: IntPolynomial, check: bool) -> Result<NumberField, NumfieldError> {
        if min_poly.is_zero() || min_poly.deg() == 0 {
            return Err(NumfieldError::InvalidInput(
                "minimal polynomial must have degree >= 1".into(),
            ));
        }
        if !min_poly.is_monic() {
            return Err(NumfieldError::InvalidInput(
                "minimal polynomial must be monic (scale with monic_model first)".into(),
            ));
        }
        let degree = min_poly.deg();
        if check && degree > 1 && !irreducible_over_q(&min_poly)? {
            return Err(NumfieldError::Reducible);
        }
        let real_roots = isolate_real_roots(&min_poly)?;
        debug_assert_eq!((degree - real_roots.len()) % 2, 0);
        let complex_pairs = (degree - real_roots.len()) / 2;
        let power_sums = newton_power_sums(&min_poly);
        Ok(NumberField {
            min_poly_rat: RatPoly::from_int(&min_poly),
            min_poly,
            degree,
            real_roots,
            complex_pairs,
            power_sums,
        })
    }

    pub fn min_poly(&self) -> &IntPolynomial {
        &self.min_poly
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Isolating intervals of the real roots, ascending.
    pub fn real_embeddings(&self) -> &[RatInterval] {
        &self.real_roots
    }

    /// (number of real embeddings, number of complex-conjugate pairs).
    pub fn signature(&self) -> (usize, usize) {
        (self.real_roots.len(), self.complex_pairs)
    }

    pub fn is_totally_real(&self) -> bool {
        self.complex_pairs == 0
    }

    // ---- element construction ----

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            coords: vec![Rat::zero(); self.degree],
        }
    }

    pub fn one(&self) -> FieldElement {
        self.from_rational(Rat::one())
    }

    pub fn from_rational(&self, c: Rat) -> FieldElement {
        let mut coords = vec![Rat::zero(); self.degree];
        coords[0] = c;
        FieldElement { coords }
    }

    /// The class of `x`.
    pub fn generator(&self) -> FieldElement {
        self.from_ratpoly(&RatPoly::new(vec![Rat::zero(), Rat::one()]))
    }

    /// Coordinates in the power basis; longer vectors are reduced mod the
    /// minimal polynomial.
    pub fn from_coords(&self, coords: Vec<Rat>) -> FieldElement {
        self.from_ratpoly(&RatPoly::new(coords))
    }

    pub fn from_int_poly(&self, p: &IntPolynomial) -> FieldElement {
        self.from_ratpoly(&RatPoly::from_int(p))
    }

    pub fn from_ratpoly(&self, p: &RatPoly) -> FieldElement {
        let r = if p.degree().is_some_and(|d| d >= self.degree) {
            p.rem(&self.min_poly_rat)
        } else {
            p.clone()
        };
        let mut coords = vec![Rat::zero(); self.degree];
        for (i, c) in r.coeffs().iter().enumerate() {
            coords[i] = c.clone();
        }
        FieldElement { coords }
    }

    fn poly_of(&self, e: &FieldElement) -> RatPoly {
        RatPoly::new(e.coords.clone())
    }

    // ---- arithmetic ----

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldElement {
            coords: a
                .coords
                .iter()
                .zip(&b.coords)
                .map(|(x, y)| x + y)
                .collect(),
        }
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldElement {
            coords: a
                .coords
                .iter()
                .zip(&b.coords)
                .map(|(x, y)| x - y)
                .collect(),
        }
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        FieldElement {
            coords: a.coords.iter().map(|x| -x).collect(),
        }
    }

    pub fn scale(&self, a: &FieldElement, c: &Rat) -> FieldElement {
        FieldElement {
            coords: a.coords.iter().map(|x| x * c).collect(),
        }
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.from_ratpoly(&self.poly_of(a).mul(&self.poly_of(b)))
    }

    pub fn inverse(&self, a: &FieldElement) -> Result<FieldElement, NumfieldError> {
        if a.is_zero() {
            return Err(NumfieldError::DivisionByZero);
        }
        let inv = self.poly_of(a).inverse_mod(&self.min_poly_rat)?;
        Ok(self.from_ratpoly(&inv))
    }

    pub fn pow(&self, a: &FieldElement, e: usize) -> FieldElement {
        let mut out = self.one();
        for _ in 0..e {
            out = self.mul(&out, a);
        }
        out
    }

    // ---- trace, norm, characteristic polynomial ----

    /// Trace via precomputed power sums `Tr(x^k)`.
    pub fn trace(&self, e: &FieldElement) -> Rat {
        e.coords
            .iter()
            .zip(&self.power_sums)
            .map(|(c, s)| c * s)
            .sum()
    }

    /// Matrix of multiplication by `e` on the power basis (columns are
    /// `e * x^j`).
    pub fn mult_matrix(&self, e: &FieldElement) -> Vec<Vec<Rat>> {
        let n = self.degree;
        let mut cols = Vec::with_capacity(n);
        let mut cur = e.clone();
        cols.push(cur.coords.clone());
        let x = self.generator();
        for _ in 1..n {
            cur = self.mul(&cur, &x);
            cols.push(cur.coords.clone());
        }
        let mut m = vec![vec![Rat::zero(); n]; n];
        for (j, col) in cols.iter().enumerate() {
            for (i, v) in col.iter().enumerate() {
                m[i][j] = v.clone();
            }
        }
        m
    }

    pub fn norm(&self, e: &FieldElement) -> Rat {
        det(&self.mult_matrix(e))
    }

    /// Characteristic polynomial of multiplication by `e`, monic of degree
    /// `n`, by the Faddeev-LeVerrier recurrence.
    pub fn char_poly(&self, e: &FieldElement) -> RatPoly {
        let n = self.degree;
        let m = self.mult_matrix(e);
        let mut coeffs = vec![Rat::zero(); n + 1];
        coeffs[n] = Rat::one();
        let mut a = m.clone();
        for k in 1..=n {
            let tr: Rat = (0..n).map(|i| a[i][i].clone()).sum();
            let c = -tr / Rat::from_integer(BigInt::from(k));
            coeffs[n - k] = c.clone();
            if k == n {
                break;
            }
            // a <- m (a + c I)
            for (i, row) in a.iter_mut().enumerate() {
                row[i] += &c;
            }
            let mut next = vec![vec![Rat::zero(); n]; n];
            for i in 0..n {
                for t in 0..n {
                    if m[i][t].is_zero() {
                        continue;
                    }
                    for j in 0..n {
                        let v = &next[i][j] + &(&m[i][t] * &a[t][j]);
                        next[i][j] = v;
                    }
                }
            }
            a = next;
        }
        RatPoly::new(coeffs)
    }

    // ---- embeddings ----

    /// Sign of `e` at each real embedding, ordered by ascending root.
    /// Certified by exact interval arithmetic with bisection refinement.
    pub fn sign_at_real_embeddings(
        &self,
        e: &FieldElement,
    ) -> Result<Vec<i8>, NumfieldError> {
        if e.is_zero() {
            return Err(NumfieldError::InvalidInput(
                "sign vector of the zero element".into(),
            ));
        }
        let p = self.poly_of(e);
        let mut out = Vec::with_capacity(self.real_roots.len());
        for iv in &self.real_roots {
            if iv.is_point() {
                out.push(sign_of(&p.eval(&iv.lo)));
                continue;
            }
            let mut cur = iv.clone();
            loop {
                if let Some(s) = eval_interval(&p, &cur).determined_sign() {
                    debug_assert!(s != 0);
                    out.push(s);
                    break;
                }
                cur = bisect_once(&self.min_poly, &cur);
            }
        }
        Ok(out)
    }

    // ---- involutions ----

    /// Whether the involution is an automorphism of this field.
    pub fn supports_involution(&self, inv: Involution) -> bool {
        match inv {
            Involution::Identity => true,
            Involution::Reciprocal => {
                let rev = self.min_poly.reverse();
                rev == self.min_poly || rev == self.min_poly.neg()
            }
            Involution::Negation => {
                let neg = self.min_poly.compose_neg_x();
                neg == self.min_poly || neg == self.min_poly.neg()
            }
        }
    }

    /// Image of `x` under the involution.
    pub fn involution_generator(
        &self,
        inv: Involution,
    ) -> Result<FieldElement, NumfieldError> {
        if !self.supports_involution(inv) {
            return Err(NumfieldError::InvalidInvolution(inv.name().into()));
        }
        match inv {
            Involution::Identity => Ok(self.generator()),
            Involution::Reciprocal => self.inverse(&self.generator()),
            Involution::Negation => Ok(self.neg(&self.generator())),
        }
    }

    pub fn apply_involution(
        &self,
        e: &FieldElement,
        inv: Involution,
    ) -> Result<FieldElement, NumfieldError> {
        match inv {
            Involution::Identity => {
                if !self.supports_involution(inv) {
                    unreachable!();
                }
                Ok(e.clone())
            }
            Involution::Negation => {
                if !self.supports_involution(inv) {
                    return Err(NumfieldError::InvalidInvolution(inv.name().into()));
                }
                Ok(FieldElement {
                    coords: e
                        .coords
                        .iter()
                        .enumerate()
                        .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                        .collect(),
                })
            }
            Involution::Reciprocal => {
                let xi = self.involution_generator(inv)?;
                // Horner evaluation of the coordinate polynomial at 1/x.
                let mut acc = self.zero();
                for c in e.coords.iter().rev() {
                    acc = self.mul(&acc, &xi);
                    let mut step = acc;
                    step.coords[0] += c;
                    acc = step;
                }
                Ok(acc)
            }
        }
    }

    /// Gram matrix `G[i][j] = Tr(alpha * x^i * inv(x^j))` on the power
    /// basis. `alpha` must be nonzero and fixed by the involution.
    pub fn trace_form_gram(
        &self,
        alpha: &FieldElement,
        inv: Involution,
    ) -> Result<Vec<Vec<Rat>>, NumfieldError> {
        if alpha.is_zero() {
            return Err(NumfieldError::InvalidInput(
                "trace form needs a nonzero alpha".into(),
            ));
        }
        if self.apply_involution(alpha, inv)? != *alpha {
            return Err(NumfieldError::InvalidInput(
                "alpha is not fixed by the involution".into(),
            ));
        }
        let n = self.degree;
        let x = self.generator();
        let xi = self.involution_generator(inv)?;
        let mut rows = Vec::with_capacity(n);
        let mut u = alpha.clone(); // alpha * x^i
        let mut conj_pows = Vec::with_capacity(n); // inv(x)^j
        let mut v = self.one();
        for _ in 0..n {
            conj_pows.push(v.clone());
            v = self.mul(&v, &xi);
        }
        for _ in 0..n {
            let row: Vec<Rat> = conj_pows
                .iter()
                .map(|c| self.trace(&self.mul(&u, c)))
                .collect();
            rows.push(row);
            u = self.mul(&u, &x);
        }
        #[cfg(debug_assertions)]
        for i in 0..n {
            for j in (i + 1)..n {
                debug_assert_eq!(rows[i][j], rows[j][i], "trace form must be symmetric");
            }
        }
        Ok(rows)
    }

    /// Square class of the discriminant of the minimal polynomial, which
    /// represents the field discriminant class.
    pub fn disc_class(&self) -> Result<SquareClass, NumfieldError> {
        let n = self.degree;
        let fp = self.from_int_poly(&self.min_poly.derivative());
        let mut d = self.norm(&fp);
        if (n * (n - 1) / 2) % 2 == 1 {
            d = -d;
        }
        Ok(square_class(&d)?)
    }
}

/// `Tr(x^k)` for `k < deg f` via Newton's identities on monic `f`.
fn newton_power_sums(f: &IntPolynomial) -> Vec<Rat> {
    let n = f.deg();
    let a = |i: usize| Rat::from_integer(f.coeff(i));
    let mut s = Vec::with_capacity(n);
    s.push(Rat::from_integer(BigInt::from(n)));
    for k in 1..n {
        let mut acc = Rat::from_integer(BigInt::from(k as i64)) * a(n - k);
        for j in 1..k {
            acc += a(n - j) * &s[k - j];
        }
        s.push(-acc);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat_int};

    fn sqrt5() -> NumberField {
        NumberField::new(IntPolynomial::from_i64(&[-5, 0, 1])).unwrap()
    }

    #[test]
    fn quadratic_field_basics() {
        let k = sqrt5();
        assert_eq!(k.signature(), (2, 0));
        assert!(k.is_totally_real());
        assert_eq!(k.trace(&k.one()), rat_int(2));
        let x = k.generator();
        assert_eq!(k.trace(&x), rat_int(0));
        assert_eq!(k.norm(&x), rat_int(-5));
        let e = k.from_coords(vec![rat_int(2), rat_int(1)]); // 2 + sqrt5
        assert_eq!(k.norm(&e), rat_int(-1));
        let gram = k.trace_form_gram(&k.one(), Involution::Identity).unwrap();
        assert_eq!(
            gram,
            vec![
                vec![rat_int(2), rat_int(0)],
                vec![rat_int(0), rat_int(10)]
            ]
        );
        assert_eq!(k.disc_class().unwrap(), SquareClass::from_parts(1, 5u32.into()));
        assert_eq!(k.sign_at_real_embeddings(&x).unwrap(), vec![-1, 1]);
        let inv = k.inverse(&e).unwrap();
        assert_eq!(k.mul(&e, &inv), k.one());
    }

    #[test]
    fn char_poly_and_norm_consistency() {
        let k = sqrt5();
        let x = k.generator();
        let cp = k.char_poly(&x);
        assert_eq!(
            cp,
            RatPoly::from_int(&IntPolynomial::from_i64(&[-5, 0, 1]))
        );
        let e = k.from_coords(vec![rat(1, 2), rat_int(3)]);
        let cp = k.char_poly(&e);
        // char poly is x^2 - Tr x + N
        assert_eq!(cp.coeff(1), -k.trace(&e));
        assert_eq!(cp.coeff(0), k.norm(&e));
    }

    #[test]
    fn quartic_mixed_signature() {
        let k = NumberField::new(IntPolynomial::from_i64(&[-1, 0, 2, 0, 1])).unwrap();
        assert_eq!(k.signature(), (2, 1));
        assert!(!k.is_totally_real());
        // disc(x^4 + 2x^2 - 1) = -1024 = -(2^5)^2.
        assert_eq!(k.disc_class().unwrap(), SquareClass::minus_one());
        assert!(k.supports_involution(Involution::Negation));
        assert!(!k.supports_involution(Involution::Reciprocal));
        // x -> -x fixes even elements.
        let even = k.from_coords(vec![rat_int(3), rat_int(0), rat(1, 2), rat_int(0)]);
        assert_eq!(
            k.apply_involution(&even, Involution::Negation).unwrap(),
            even
        );
    }

    #[test]
    fn reciprocal_involution() {
        let k = NumberField::new(IntPolynomial::from_i64(&[1, 0, 0, 0, 1])).unwrap();
        assert!(k.supports_involution(Involution::Reciprocal));
        let e = k.from_coords(vec![rat_int(1), rat_int(2), rat_int(0), rat_int(3)]);
        let c = k.apply_involution(&e, Involution::Reciprocal).unwrap();
        assert_eq!(
            k.apply_involution(&c, Involution::Reciprocal).unwrap(),
            e
        );
        assert_eq!(k.trace(&c), k.trace(&e));
        // x^(-1) = -x^3 here.
        let xi = k.involution_generator(Involution::Reciprocal).unwrap();
        assert_eq!(
            xi,
            k.from_coords(vec![rat_int(0), rat_int(0), rat_int(0), rat_int(-1)])
        );
    }

    #[test]
    fn embedding_signs_quadratic_shifted() {
        // y^2 - y - 4: roots (1 +- sqrt17)/2, approx -1.56 and 2.56.
        let k = NumberField::new(IntPolynomial::from_i64(&[-4, -1, 1])).unwrap();
        let y = k.generator();
        let e = k.sub(&k.mul(&y, &y), &k.from_rational(rat_int(4))); // y^2 - 4
        assert_eq!(k.sign_at_real_embeddings(&e).unwrap(), vec![-1, 1]);
        // A totally positive element.
        let tp = k.add(&k.mul(&y, &y), &k.one());
        assert_eq!(k.sign_at_real_embeddings(&tp).unwrap(), vec![1, 1]);
    }

    #[test]
    fn sign_vector_multiplicativity() {
        let k = NumberField::new(IntPolynomial::from_i64(&[1, -4, -1, 1])).unwrap();
        assert_eq!(k.signature(), (3, 0));
        let elems = [
            k.generator(),
            k.from_coords(vec![rat_int(-2), rat_int(1)]),
            k.from_coords(vec![rat_int(1), rat(1, 3), rat_int(2)]),
        ];
        for a in &elems {
            for b in &elems {
                let sa = k.sign_at_real_embeddings(a).unwrap();
                let sb = k.sign_at_real_embeddings(b).unwrap();
                let sab = k.sign_at_real_embeddings(&k.mul(a, b)).unwrap();
                let prod: Vec<i8> = sa.iter().zip(&sb).map(|(x, y)| x * y).collect();
                assert_eq!(sab, prod);
            }
        }
    }

    #[test]
    fn disc_class_matches_trace_gram_det() {
        for coeffs in [
            [-5i64, 0, 1].as_slice(),
            &[-4, -1, 1],
            &[-1, 0, 2, 0, 1],
            &[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1],
        ] {
            let k = NumberField::new(IntPolynomial::from_i64(coeffs)).unwrap();
            let gram = k.trace_form_gram(&k.one(), Involution::Identity).unwrap();
            let by_gram = square_class(&det(&gram)).unwrap();
            assert_eq!(k.disc_class().unwrap(), by_gram, "{coeffs:?}");
        }
    }

    #[test]
    fn rejects_reducible() {
        assert!(matches!(
            NumberField::new(IntPolynomial::from_i64(&[-1, 0, 0, 0, 1])),
            Err(NumfieldError::Reducible)
        ));
        assert!(NumberField::new(IntPolynomial::from_i64(&[-5, 0, 2])).is_err());
    }

    #[test]
    fn lehmer_field_signature() {
        let k = NumberField::new(IntPolynomial::from_i64(&[
            1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1,
        ]))
        .unwrap();
        assert_eq!(k.signature(), (2, 4));
        assert!(k.supports_involution(Involution::Reciprocal));
    }
}
