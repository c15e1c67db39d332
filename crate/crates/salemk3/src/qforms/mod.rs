//! Nondegenerate rational quadratic forms and their complete invariant set:
//! dimension, determinant square class, real signature, and the Hasse
//! invariant stored as a ramification support. Global equivalence is decided
//! by Hasse-Minkowski (the invariant tuple), local equivalence by the
//! local data at one place.

mod matrix;
mod named;

use std::collections::BTreeSet;
use std::sync::OnceLock;

use num::Zero;
use thiserror::Error;

use crate::arith::{
    self, hilbert_symbol, is_padic_square, quaternion_class, square_class, ArithError, Place, Rat,
    SquareClass,
};

pub use matrix::{block_diag, det, identity_gram, is_symmetric, mat_mul, transpose};
pub use named::{named_form, BbfType, NamedForm};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QformsError {
    #[error("form is degenerate (determinant zero)")]
    DegenerateForm,
    #[error("gram matrix is not symmetric or not square")]
    NotSymmetric,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// Complete invariant tuple of a nondegenerate form over `Q`. By
/// Hasse-Minkowski two forms are equivalent iff these agree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormInvariants {
    pub dim: usize,
    pub det: SquareClass,
    /// (positive count, negative count)
    pub signature: (usize, usize),
    /// Support of the Hasse-Witt invariant `sum_{i<j} (a_i, a_j)` in the
    /// Brauer group: the set of places where that class ramifies.
    pub hasse: BTreeSet<Place>,
}

impl FormInvariants {
    /// Total signature (index): positives minus negatives.
    pub fn index(&self) -> isize {
        self.signature.0 as isize - self.signature.1 as isize
    }

    /// Hasse sign at one place as +1/-1.
    pub fn hasse_at(&self, v: &Place) -> i8 {
        if self.hasse.contains(v) {
            -1
        } else {
            1
        }
    }
}

/// A nondegenerate quadratic form over `Q`, kept as the representation it
/// was built from (diagonal entries or a symmetric Gram matrix), with its
/// invariants cached once computed.
#[derive(Debug)]
pub struct QuadraticFormQ {
    repr: Repr,
    cache: OnceLock<FormInvariants>,
}

#[derive(Debug, Clone)]
enum Repr {
    Diag(Vec<Rat>),
    Gram(Vec<Vec<Rat>>),
}

impl Clone for QuadraticFormQ {
    fn clone(&self) -> Self {
        let cache = OnceLock::new();
        if let Some(v) = self.cache.get() {
            let _ = cache.set(v.clone());
        }
        QuadraticFormQ {
            repr: self.repr.clone(),
            cache,
        }
    }
}

impl QuadraticFormQ {
    /// Diagonal form `<d_1, ..., d_n>`. All entries must be nonzero.
    pub fn from_diag(entries: Vec<Rat>) -> Result<QuadraticFormQ, QformsError> {
        if entries.is_empty() {
            return Err(QformsError::InvalidInput("empty form".into()));
        }
        if entries.iter().any(|e| e.is_zero()) {
            return Err(QformsError::DegenerateForm);
        }
        Ok(QuadraticFormQ {
            repr: Repr::Diag(entries),
            cache: OnceLock::new(),
        })
    }

    /// Form given by a symmetric Gram matrix. Degenerate matrices are
    /// rejected here, by running the exact diagonalization once.
    pub fn from_gram(gram: Vec<Vec<Rat>>) -> Result<QuadraticFormQ, QformsError> {
        if !is_symmetric(&gram) {
            return Err(QformsError::NotSymmetric);
        }
        diagonalize(&gram)?; // errors on degeneracy
        Ok(QuadraticFormQ {
            repr: Repr::Gram(gram),
            cache: OnceLock::new(),
        })
    }

    pub fn dim(&self) -> usize {
        match &self.repr {
            Repr::Diag(d) => d.len(),
            Repr::Gram(g) => g.len(),
        }
    }

    /// A diagonalization of the form (the stored one, or a fresh exact
    /// congruence diagonalization of the Gram matrix).
    pub fn diagonal(&self) -> Result<Vec<Rat>, QformsError> {
        match &self.repr {
            Repr::Diag(d) => Ok(d.clone()),
            Repr::Gram(g) => diagonalize(g),
        }
    }

    /// The Gram matrix of the stored representation.
    pub fn gram(&self) -> Vec<Vec<Rat>> {
        match &self.repr {
            Repr::Diag(d) => {
                let n = d.len();
                let mut g = vec![vec![Rat::zero(); n]; n];
                for (i, e) in d.iter().enumerate() {
                    g[i][i] = e.clone();
                }
                g
            }
            Repr::Gram(g) => g.clone(),
        }
    }

    pub fn is_diagonal(&self) -> bool {
        matches!(self.repr, Repr::Diag(_))
    }

    /// Orthogonal (block) sum.
    pub fn direct_sum(&self, other: &QuadraticFormQ) -> QuadraticFormQ {
        match (&self.repr, &other.repr) {
            (Repr::Diag(a), Repr::Diag(b)) => {
                let mut d = a.clone();
                d.extend(b.iter().cloned());
                QuadraticFormQ {
                    repr: Repr::Diag(d),
                    cache: OnceLock::new(),
                }
            }
            _ => QuadraticFormQ {
                repr: Repr::Gram(block_diag(&self.gram(), &other.gram())),
                cache: OnceLock::new(),
            },
        }
    }

    /// Computes (and caches) the invariant tuple.
    pub fn invariants(&self) -> Result<FormInvariants, QformsError> {
        if let Some(v) = self.cache.get() {
            return Ok(v.clone());
        }
        let inv = invariants_of_diagonal(&self.diagonal()?)?;
        let _ = self.cache.set(inv.clone());
        Ok(inv)
    }

    /// The odd primes appearing in the square-class radical of any diagonal
    /// entry, plus 2. Outside this set (and the real place) the form is
    /// unimodular with unit determinant, so all local behavior is decided
    /// by the invariant tuple alone.
    pub fn prime_support(&self) -> Result<BTreeSet<num::BigUint>, QformsError> {
        let mut set = BTreeSet::new();
        set.insert(num::BigUint::from(2u32));
        for e in self.diagonal()? {
            let c = square_class(&e)?;
            let b = arith::factor(c.radical(), &Default::default())?;
            for (p, _) in b {
                set.insert(p);
            }
        }
        Ok(set)
    }
}

/// Exact symmetric Gaussian congruence diagonalization. Pivot search swaps
/// rows/columns to a nonzero diagonal entry; when the whole remaining
/// diagonal is zero, a row (and matching column) addition creates one.
pub fn diagonalize(gram: &[Vec<Rat>]) -> Result<Vec<Rat>, QformsError> {
    if !is_symmetric(gram) {
        return Err(QformsError::NotSymmetric);
    }
    let n = gram.len();
    if n == 0 {
        return Err(QformsError::InvalidInput("empty matrix".into()));
    }
    let mut g: Vec<Vec<Rat>> = gram.to_vec();
    let mut diag = Vec::with_capacity(n);
    for k in 0..n {
        if g[k][k].is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !g[j][j].is_zero()) {
                swap_sym(&mut g, k, j);
            } else {
                // Whole remaining diagonal is zero; find any nonzero entry.
                let mut found = None;
                'search: for i in k..n {
                    for j in (i + 1)..n {
                        if !g[i][j].is_zero() {
                            found = Some((i, j));
                            break 'search;
                        }
                    }
                }
                let Some((i, j)) = found else {
                    return Err(QformsError::DegenerateForm);
                };
                // row_i += row_j and col_i += col_j makes g[i][i] = 2 g[i][j].
                for t in 0..n {
                    let v = &g[i][t] + &g[j][t];
                    g[i][t] = v;
                }
                for t in 0..n {
                    let v = &g[t][i] + &g[t][j];
                    g[t][i] = v;
                }
                if i != k {
                    swap_sym(&mut g, k, i);
                }
            }
        }
        let pivot = g[k][k].clone();
        debug_assert!(!pivot.is_zero());
        for i in (k + 1)..n {
            if g[i][k].is_zero() {
                continue;
            }
            let f = &g[i][k] / &pivot;
            for t in 0..n {
                let v = &g[i][t] - &(&f * &g[k][t]);
                g[i][t] = v;
            }
            for t in 0..n {
                let v = &g[t][i] - &(&f * &g[t][k]);
                g[t][i] = v;
            }
        }
        diag.push(pivot);
    }
    Ok(diag)
}

fn swap_sym(g: &mut [Vec<Rat>], a: usize, b: usize) {
    g.swap(a, b);
    for row in g.iter_mut() {
        row.swap(a, b);
    }
}

/// Invariants of a diagonal form. Entries are first reduced to their square
/// class representatives (an equivalence), which keeps all Hilbert symbol
/// work on small integers.
pub fn invariants_of_diagonal(diag: &[Rat]) -> Result<FormInvariants, QformsError> {
    if diag.iter().any(|e| e.is_zero()) {
        return Err(QformsError::DegenerateForm);
    }
    let classes: Vec<SquareClass> = diag
        .iter()
        .map(square_class)
        .collect::<Result<_, _>>()?;
    let mut det = SquareClass::one();
    let mut pos = 0usize;
    let mut neg = 0usize;
    for c in &classes {
        det = det.mul(c);
        if c.sign() > 0 {
            pos += 1;
        } else {
            neg += 1;
        }
    }
    let reps: Vec<Rat> = classes.iter().map(|c| c.representative()).collect();
    let mut hasse: BTreeSet<Place> = BTreeSet::new();
    for i in 0..reps.len() {
        for j in (i + 1)..reps.len() {
            for v in quaternion_class(&reps[i], &reps[j])? {
                // Brauer addition = symmetric difference of supports.
                if !hasse.remove(&v) {
                    hasse.insert(v);
                }
            }
        }
    }
    debug_assert!(hasse.len() % 2 == 0);
    Ok(FormInvariants {
        dim: diag.len(),
        det,
        signature: (pos, neg),
        hasse,
    })
}

/// Local equivalence over `Q_v`. At the real place: equal signatures. At a
/// finite prime: equal dimension, determinant ratio a p-adic square, and
/// equal Hasse sign at p.
pub fn equivalent_over_qp(
    f: &QuadraticFormQ,
    g: &QuadraticFormQ,
    v: &Place,
) -> Result<bool, QformsError> {
    let fi = f.invariants()?;
    let gi = g.invariants()?;
    match v {
        Place::Infinity => Ok(fi.signature == gi.signature),
        Place::Finite(p) => {
            if fi.dim != gi.dim {
                return Ok(false);
            }
            let ratio = fi.det.mul(&gi.det); // = det_f / det_g mod squares
            let dets_match = ratio.is_trivial() || is_padic_square(&ratio.representative(), p);
            Ok(dets_match && fi.hasse_at(v) == gi.hasse_at(v))
        }
    }
}

/// Global equivalence over `Q` by Hasse-Minkowski: equal dimension,
/// signature, determinant class, and Hasse support.
pub fn equivalent_over_q(f: &QuadraticFormQ, g: &QuadraticFormQ) -> Result<bool, QformsError> {
    Ok(f.invariants()? == g.invariants()?)
}

/// Whether the Witt class of `f - g` is torsion, i.e. the total signatures
/// agree (torsion classes in the Witt group of `Q` are exactly those with
/// vanishing signature).
pub fn witt_is_torsion(f: &QuadraticFormQ, g: &QuadraticFormQ) -> Result<bool, QformsError> {
    Ok(f.invariants()?.index() == g.invariants()?.index())
}

/// Direct-sum rule for Hasse supports:
/// `w(V + V') = w(V) + w(V') + (det V, det V')` in the Brauer group.
pub fn hasse_of_sum(
    a: &FormInvariants,
    b: &FormInvariants,
) -> Result<BTreeSet<Place>, QformsError> {
    let mut out = a.hasse.clone();
    for v in &b.hasse {
        if !out.remove(v) {
            out.insert(v.clone());
        }
    }
    let cross = quaternion_class(&a.det.representative(), &b.det.representative())?;
    for v in cross {
        if !out.remove(&v) {
            out.insert(v);
        }
    }
    Ok(out)
}

/// Hilbert symbol of the two determinants at one place; used by callers
/// assembling local data for sums.
pub fn det_symbol_at(
    a: &FormInvariants,
    b: &FormInvariants,
    v: &Place,
) -> Result<i8, QformsError> {
    Ok(hilbert_symbol(
        &a.det.representative(),
        &b.det.representative(),
        v,
    )?)
}
