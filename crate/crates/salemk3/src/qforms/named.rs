//! Named integral forms used throughout: the hyperbolic plane and its
//! powers, (negative) identity forms, the K3 second cohomology form, and
//! the Beauville-Bogomolov-Fujiki forms of the known hyperkahler
//! deformation types.

use num::Zero;

use crate::arith::{rat_int, Rat};

use super::{block_diag, QformsError, QuadraticFormQ, Repr};
use std::sync::OnceLock;

/// Beauville-Bogomolov-Fujiki form selector. The parameter is half the
/// complex dimension of the manifold.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BbfType {
    /// Generalized Kummer of dimension `2n`, `n >= 2`: `H^3 + <-2(n+1)>`.
    Kummer(u32),
    /// Hilbert scheme of `n` points on a K3, `n >= 2`: `V_K3 + <-2(n-1)>`.
    K3n(u32),
    /// O'Grady's six-dimensional type: `H^3 + <-1, -1>`.
    Og6,
    /// O'Grady's ten-dimensional type: `V_K3 + <-2, -6>`.
    Og10,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NamedForm {
    /// Hyperbolic plane `[[0,1],[1,0]]`.
    H,
    /// Orthogonal sum of `n` hyperbolic planes.
    HPow(u32),
    /// `<1, ..., 1>` of rank `n`.
    I(u32),
    /// `<-1, ..., -1>` of rank `n`.
    NegI(u32),
    /// K3 second cohomology: `<-1>^16 + H^3`, signature (3,19).
    VK3,
    Bbf(BbfType),
}

impl NamedForm {
    /// Parses names like `H`, `H^3`, `I(4)`, `-I(8)`, `VK3`,
    /// `BBF(kummer,2)`, `BBF(k3n,3)`, `BBF(og6)`, `BBF(og10)`.
    pub fn parse(s: &str) -> Result<NamedForm, QformsError> {
        let t = s.trim();
        let bad = || QformsError::InvalidInput(format!("unknown form name: {s}"));
        if t.eq_ignore_ascii_case("H") {
            return Ok(NamedForm::H);
        }
        if t.eq_ignore_ascii_case("VK3") || t.eq_ignore_ascii_case("V_K3") {
            return Ok(NamedForm::VK3);
        }
        if let Some(rest) = t.strip_prefix("H^").or_else(|| t.strip_prefix("h^")) {
            let n: u32 = rest.trim().parse().map_err(|_| bad())?;
            return Ok(NamedForm::HPow(n));
        }
        let paren = |body: &str, prefix: &str| -> Option<String> {
            let r = body.strip_prefix(prefix)?.strip_prefix('(')?;
            let r = r.strip_suffix(')')?;
            Some(r.to_string())
        };
        if let Some(arg) = paren(t, "I").or_else(|| paren(t, "i")) {
            let n: u32 = arg.trim().parse().map_err(|_| bad())?;
            return Ok(NamedForm::I(n));
        }
        if let Some(arg) = paren(t, "-I").or_else(|| paren(t, "-i")) {
            let n: u32 = arg.trim().parse().map_err(|_| bad())?;
            return Ok(NamedForm::NegI(n));
        }
        if let Some(arg) = paren(t, "BBF").or_else(|| paren(t, "bbf")) {
            let parts: Vec<&str> = arg.split(',').map(|x| x.trim()).collect();
            return match parts.as_slice() {
                [kind] if kind.eq_ignore_ascii_case("og6") => Ok(NamedForm::Bbf(BbfType::Og6)),
                [kind] if kind.eq_ignore_ascii_case("og10") => Ok(NamedForm::Bbf(BbfType::Og10)),
                [kind, n] if kind.eq_ignore_ascii_case("kummer") => {
                    let n: u32 = n.parse().map_err(|_| bad())?;
                    Ok(NamedForm::Bbf(BbfType::Kummer(n)))
                }
                [kind, n] if kind.eq_ignore_ascii_case("k3n") => {
                    let n: u32 = n.parse().map_err(|_| bad())?;
                    Ok(NamedForm::Bbf(BbfType::K3n(n)))
                }
                _ => Err(bad()),
            };
        }
        Err(bad())
    }
}

fn h_gram() -> Vec<Vec<Rat>> {
    vec![
        vec![Rat::zero(), rat_int(1)],
        vec![rat_int(1), Rat::zero()],
    ]
}

fn h_pow_gram(n: u32) -> Vec<Vec<Rat>> {
    let mut g = h_gram();
    for _ in 1..n {
        g = block_diag(&g, &h_gram());
    }
    g
}

fn diag_gram(entries: &[i64]) -> Vec<Vec<Rat>> {
    let n = entries.len();
    let mut g = vec![vec![Rat::zero(); n]; n];
    for (i, &e) in entries.iter().enumerate() {
        g[i][i] = rat_int(e);
    }
    g
}

fn vk3_gram() -> Vec<Vec<Rat>> {
    block_diag(&diag_gram(&[-1; 16]), &h_pow_gram(3))
}

fn from_gram_unchecked(gram: Vec<Vec<Rat>>) -> QuadraticFormQ {
    // All named forms are unimodular-or-scaled integral lattices, never
    // degenerate, so the construction check is skipped.
    QuadraticFormQ {
        repr: Repr::Gram(gram),
        cache: OnceLock::new(),
    }
}

/// Builds the Gram matrix of a named form.
pub fn named_form(name: &NamedForm) -> Result<QuadraticFormQ, QformsError> {
    let gram = match name {
        NamedForm::H => h_gram(),
        NamedForm::HPow(n) => {
            if *n == 0 {
                return Err(QformsError::InvalidInput("H^0 is empty".into()));
            }
            h_pow_gram(*n)
        }
        NamedForm::I(n) => {
            if *n == 0 {
                return Err(QformsError::InvalidInput("I(0) is empty".into()));
            }
            diag_gram(&vec![1i64; *n as usize])
        }
        NamedForm::NegI(n) => {
            if *n == 0 {
                return Err(QformsError::InvalidInput("-I(0) is empty".into()));
            }
            diag_gram(&vec![-1i64; *n as usize])
        }
        NamedForm::VK3 => vk3_gram(),
        NamedForm::Bbf(BbfType::Kummer(n)) => {
            if *n < 2 {
                return Err(QformsError::InvalidInput(
                    "generalized Kummer needs n >= 2".into(),
                ));
            }
            block_diag(&h_pow_gram(3), &diag_gram(&[-2 * (*n as i64 + 1)]))
        }
        NamedForm::Bbf(BbfType::K3n(n)) => {
            if *n < 2 {
                return Err(QformsError::InvalidInput(
                    "Hilbert scheme type needs n >= 2".into(),
                ));
            }
            block_diag(&vk3_gram(), &diag_gram(&[-2 * (*n as i64 - 1)]))
        }
        NamedForm::Bbf(BbfType::Og6) => block_diag(&h_pow_gram(3), &diag_gram(&[-1, -1])),
        NamedForm::Bbf(BbfType::Og10) => block_diag(&vk3_gram(), &diag_gram(&[-2, -6])),
    };
    Ok(from_gram_unchecked(gram))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::SquareClass;

    #[test]
    fn parse_names() {
        assert_eq!(NamedForm::parse("H").unwrap(), NamedForm::H);
        assert_eq!(NamedForm::parse("H^3").unwrap(), NamedForm::HPow(3));
        assert_eq!(NamedForm::parse("I(4)").unwrap(), NamedForm::I(4));
        assert_eq!(NamedForm::parse("-I(8)").unwrap(), NamedForm::NegI(8));
        assert_eq!(NamedForm::parse("VK3").unwrap(), NamedForm::VK3);
        assert_eq!(
            NamedForm::parse("BBF(kummer,2)").unwrap(),
            NamedForm::Bbf(BbfType::Kummer(2))
        );
        assert_eq!(
            NamedForm::parse("BBF(og10)").unwrap(),
            NamedForm::Bbf(BbfType::Og10)
        );
        assert!(NamedForm::parse("J(3)").is_err());
    }

    #[test]
    fn bbf_shapes() {
        let cases: [(NamedForm, usize, (usize, usize), SquareClass); 4] = [
            (
                NamedForm::Bbf(BbfType::Kummer(2)),
                7,
                (3, 4),
                SquareClass::from_parts(1, 6u32.into()),
            ),
            (
                NamedForm::Bbf(BbfType::Og6),
                8,
                (3, 5),
                SquareClass::minus_one(),
            ),
            (
                NamedForm::Bbf(BbfType::K3n(2)),
                23,
                (3, 20),
                SquareClass::from_parts(1, 2u32.into()),
            ),
            (
                NamedForm::Bbf(BbfType::Og10),
                24,
                (3, 21),
                SquareClass::from_parts(-1, 3u32.into()),
            ),
        ];
        for (name, dim, sig, det) in cases {
            let inv = named_form(&name).unwrap().invariants().unwrap();
            assert_eq!(inv.dim, dim, "{name:?}");
            assert_eq!(inv.signature, sig, "{name:?}");
            assert_eq!(inv.det, det, "{name:?}");
        }
    }
}
