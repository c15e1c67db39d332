//! Frozen Salem polynomial corpus: one entry per even degree from 4 to
//! 24, including Lehmer's polynomial and Smyth's degree 22 example. Each
//! entry carries its expected discriminant class and a two-sided bound on
//! the Salem number in millionths, re-certified exactly by the tests.

use crate::numfield::IntPolynomial;

#[derive(Debug, Clone, Copy)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub note: &'static str,
    /// Ascending coefficients (all entries are palindromic).
    pub coeffs: &'static [i64],
    pub disc_sign: i8,
    pub disc_radical: u64,
    /// Open bounds on the Salem number, in units of 10^-6.
    pub lambda_micro: (i64, i64),
}

impl CorpusEntry {
    pub fn poly(&self) -> IntPolynomial {
        IntPolynomial::from_i64(self.coeffs)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Runs the full Salem certificate; corpus entries never fail.
    pub fn certify(&self) -> super::SalemPolynomial {
        super::validate_salem(&self.poly())
            .unwrap_or_else(|e| panic!("corpus entry {} failed certification: {e:?}", self.name))
    }
}

pub static CORPUS: &[CorpusEntry] = &[
    CorpusEntry {
        name: "deg4",
        note: "smallest quartic Salem number",
        coeffs: &[1, -1, -1, -1, 1],
        disc_sign: -1,
        disc_radical: 3,
        lambda_micro: (1_722_082, 1_722_085),
    },
    CorpusEntry {
        name: "deg4b",
        note: "quartic with discriminant class -1",
        coeffs: &[1, -1, -2, -1, 1],
        disc_sign: -1,
        disc_radical: 1,
        lambda_micro: (2_081_017, 2_081_020),
    },
    CorpusEntry {
        name: "deg6",
        note: "smallest known degree 6 Salem number",
        coeffs: &[1, 0, -1, -1, -1, 0, 1],
        disc_sign: 1,
        disc_radical: 1,
        lambda_micro: (1_401_267, 1_401_270),
    },
    CorpusEntry {
        name: "deg8",
        note: "smallest known degree 8 Salem number",
        coeffs: &[1, 0, 0, -1, -1, -1, 0, 0, 1],
        disc_sign: -1,
        disc_radical: 3,
        lambda_micro: (1_280_637, 1_280_640),
    },
    CorpusEntry {
        name: "deg8b",
        note: "degree 8 with discriminant class -1",
        coeffs: &[1, -2, -2, 1, 2, 1, -2, -2, 1],
        disc_sign: -1,
        disc_radical: 1,
        lambda_micro: (2_512_744, 2_512_747),
    },
    CorpusEntry {
        name: "lehmer",
        note: "Lehmer's polynomial, smallest known Salem number",
        coeffs: &[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1],
        disc_sign: 1,
        disc_radical: 1,
        lambda_micro: (1_176_279, 1_176_282),
    },
    CorpusEntry {
        name: "deg10b",
        note: "sparse degree 10 instance",
        coeffs: &[1, 0, 0, 0, -1, -1, -1, 0, 0, 0, 1],
        disc_sign: 1,
        disc_radical: 1,
        lambda_micro: (1_216_390, 1_216_393),
    },
    CorpusEntry {
        name: "deg12",
        note: "all-ones band, degree 12",
        coeffs: &[1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, 1],
        disc_sign: -1,
        disc_radical: 3,
        lambda_micro: (1_999_263, 1_999_266),
    },
    CorpusEntry {
        name: "deg14",
        note: "banded degree 14 with a central gap",
        coeffs: &[1, -1, -1, -1, -1, -1, -1, 0, -1, -1, -1, -1, -1, -1, 1],
        disc_sign: 1,
        disc_radical: 5,
        lambda_micro: (1_991_832, 1_991_835),
    },
    CorpusEntry {
        name: "deg16",
        note: "all-ones band, degree 16",
        coeffs: &[
            1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, 1,
        ],
        disc_sign: -1,
        disc_radical: 39,
        lambda_micro: (1_999_953, 1_999_956),
    },
    CorpusEntry {
        name: "deg18",
        note: "second-smallest known Salem number",
        coeffs: &[
            1, -1, 1, -1, 0, 0, -1, 1, -1, 1, -1, 1, -1, 0, 0, -1, 1, -1, 1,
        ],
        disc_sign: 1,
        disc_radical: 1,
        lambda_micro: (1_188_367, 1_188_370),
    },
    CorpusEntry {
        name: "deg20",
        note: "banded degree 20 with a central gap",
        coeffs: &[
            1, -1, -1, -1, -1, -1, -1, -1, -1, -1, 0, -1, -1, -1, -1, -1, -1, -1, -1, -1, 1,
        ],
        disc_sign: -1,
        disc_radical: 1,
        lambda_micro: (1_999_015, 1_999_018),
    },
    CorpusEntry {
        name: "smyth",
        note: "Smyth's degree 22 example, trace -3",
        coeffs: &[
            1, -5, 0, 0, 0, 0, 5, 0, 0, 0, 0, -5, 0, 0, 0, 0, 5, 0, 0, 0, 0, -5, 1,
        ],
        disc_sign: 1,
        disc_radical: 1,
        lambda_micro: (4_998_396, 4_998_399),
    },
    CorpusEntry {
        name: "deg24",
        note: "degree 24 with discriminant class -3",
        coeffs: &[
            1, -1, -1, -1, -1, -1, -1, -1, -1, -1, 0, -1, 0, -1, 0, -1, -1, -1, -1, -1, -1, -1,
            -1, -1, 1,
        ],
        disc_sign: -1,
        disc_radical: 3,
        lambda_micro: (1_998_709, 1_998_712),
    },
];

pub fn find(name: &str) -> Option<&'static CorpusEntry> {
    CORPUS.iter().find(|e| e.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, SquareClass};
    use crate::salem::salem_lambda;
    use num::BigInt;

    #[test]
    fn every_entry_certifies() {
        for entry in CORPUS {
            let s = entry.certify();
            assert_eq!(s.degree(), entry.degree(), "{}", entry.name);
            assert_eq!(
                *s.disc_class(),
                SquareClass::from_parts(entry.disc_sign, entry.disc_radical.into()),
                "{}",
                entry.name
            );
            let iv = salem_lambda(&s, 30);
            let (lo, hi) = entry.lambda_micro;
            assert!(rat(lo, 1_000_000) < iv.lo, "{} lambda low", entry.name);
            assert!(iv.hi < rat(hi, 1_000_000), "{} lambda high", entry.name);
        }
    }

    #[test]
    fn trace_at_one_negative_and_disc_sign_law() {
        for entry in CORPUS {
            let p = entry.poly();
            let s1 = p.eval_int(&BigInt::from(1));
            assert!(s1 < BigInt::from(0), "{}", entry.name);
            let d = entry.degree() / 2;
            assert_eq!(entry.disc_sign == -1, d % 2 == 0, "{}", entry.name);
        }
    }

    #[test]
    fn covers_every_even_degree_up_to_24() {
        let mut degs: Vec<usize> = CORPUS.iter().map(|e| e.degree()).collect();
        degs.sort();
        degs.dedup();
        assert_eq!(degs, vec![4, 6, 8, 10, 12, 14, 16, 18, 20, 22, 24]);
        assert_eq!(CORPUS.len(), 14);
    }

    #[test]
    fn names_unique_and_findable() {
        for entry in CORPUS {
            assert!(std::ptr::eq(find(entry.name).unwrap(), entry));
        }
        assert!(find("nope").is_none());
    }

    #[test]
    fn named_oracles() {
        let lehmer = find("lehmer").unwrap().certify();
        let iv = salem_lambda(&lehmer, 45);
        assert!(iv.lo > rat(11762808182, 10000000000));
        assert!(iv.hi < rat(11762808183, 10000000000));

        let smyth = find("smyth").unwrap();
        let p = smyth.poly();
        assert_eq!(p.eval_int(&BigInt::from(1)), BigInt::from(-3));
        assert_eq!(p.eval_int(&BigInt::from(-1)), BigInt::from(27));
    }
}
