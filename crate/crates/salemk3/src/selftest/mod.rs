//! End-to-end checks over the public API, shared by the `selftest` CLI
//! subcommand and the acceptance test target.
//!
//! Each check exercises one advertised guarantee of the library against
//! independently computed expectations: closed-form invariant tables,
//! classical identities (Hilbert product formula, sum-of-two-squares), and
//! cross-validation between the exact and the closed-form code paths.  All
//! randomized checks use fixed seeds, so `run_all` is deterministic.

use num::bigint::BigUint;
use num::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::arith::{
    factor, hilbert_symbol, is_sum_of_two_squares, rat, rat_int, FactorBudget, Place, Rat,
};
use crate::classify::{
    classify_hk_sm, classify_k3_salem_automorphism, classify_k3_sm, quad_norm_solvable,
    rm_k3_exists, Answer, HKType, Witness,
};
use crate::numfield::{IntPolynomial, Involution, NumberField};
use crate::qforms::{equivalent_over_q, named_form, NamedForm};
use crate::salem::{corpus, validate_salem, find_alpha_with_signature, SalemPolynomial};
use crate::transfer::{
    closed_form_signature, construct_salem_from_binary, restrict_to_trace_field,
    transfer_hermitian_rank1, transfer_quadratic, DiagonalFormOverField, FieldKind,
};
use crate::periods::{companion_isometry_check, period_from_salem, verify_period};

/// Result of one acceptance check.
#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

fn outcome(name: &'static str, r: Result<String, String>) -> CheckOutcome {
    match r {
        Ok(detail) => CheckOutcome {
            name,
            pass: true,
            detail,
        },
        Err(detail) => CheckOutcome {
            name,
            pass: false,
            detail,
        },
    }
}

fn lib<E: std::fmt::Display>(e: E) -> String {
    format!("library error: {e}")
}

fn certified(name: &str) -> Result<SalemPolynomial, String> {
    let entry = corpus::find(name).ok_or_else(|| format!("corpus entry {name} missing"))?;
    validate_salem(&entry.poly()).map_err(|d| format!("{name} failed certification: {d:?}"))
}

/// Smyth's degree-22 example: SM classification says yes (81 is a square),
/// the stricter integral-automorphism classification says no (3 is not).
pub fn smyth_example() -> CheckOutcome {
    outcome("smyth degree-22 example", (|| {
        let s = certified("smyth")?;
        let sm = classify_k3_sm(&s);
        if sm.answer != Answer::Yes {
            return Err(format!("sm answer {:?}, expected yes", sm.answer));
        }
        let want = [("S(1)", "-3"), ("S(-1)", "27")];
        for (cond, val) in want {
            let row = sm
                .evidence
                .iter()
                .find(|e| e.condition == cond)
                .ok_or_else(|| format!("missing evidence row {cond}"))?;
            if row.value != val {
                return Err(format!("{cond} = {}, expected {val}", row.value));
            }
        }
        let square_row = sm
            .evidence
            .iter()
            .find(|e| e.condition.contains("perfect square"))
            .ok_or("missing square-condition row")?;
        if square_row.value != "81" || !square_row.pass {
            return Err(format!(
                "square condition row: value {} pass {}",
                square_row.value, square_row.pass
            ));
        }
        let auto = classify_k3_salem_automorphism(&s);
        if auto.answer != Answer::No {
            return Err(format!("automorphism answer {:?}, expected no", auto.answer));
        }
        let s1_row = auto
            .evidence
            .iter()
            .find(|e| e.condition == "|S(1)| is a perfect square")
            .ok_or("missing |S(1)| row")?;
        if s1_row.value != "3" || s1_row.pass {
            return Err(format!(
                "|S(1)| row: value {} pass {}",
                s1_row.value, s1_row.pass
            ));
        }
        Ok("sm yes (|S(1)S(-1)| = 81 square), automorphism no (|S(1)| = 3)".into())
    })())
}

/// Invariants of H^n for n = 1..12 (Hasse set empty iff n = 0, 1 mod 4,
/// else {2, inf}) and of the K3 form (det -1, signature (3,19), {2, inf}).
pub fn hasse_table() -> CheckOutcome {
    outcome("hasse invariants of standard forms", (|| {
        let two_inf: BTreeSet<Place> = [Place::finite(2).map_err(lib)?, Place::Infinity]
            .into_iter()
            .collect();
        for n in 1u32..=12 {
            let form = named_form(&NamedForm::HPow(n)).map_err(lib)?;
            let inv = form.invariants().map_err(lib)?;
            let expect_empty = n % 4 == 0 || n % 4 == 1;
            let expected: BTreeSet<Place> = if expect_empty {
                BTreeSet::new()
            } else {
                two_inf.clone()
            };
            if inv.hasse != expected {
                return Err(format!("hasse(H^{n}) = {:?}, expected {:?}", inv.hasse, expected));
            }
            if inv.signature != (n as usize, n as usize) {
                return Err(format!("signature(H^{n}) = {:?}", inv.signature));
            }
        }
        let vk3 = named_form(&NamedForm::VK3).map_err(lib)?;
        let inv = vk3.invariants().map_err(lib)?;
        if inv.det.sign() != -1 || !inv.det.radical().is_one() {
            return Err(format!("det(VK3) = {}, expected -1", inv.det));
        }
        if inv.signature != (3, 19) {
            return Err(format!("signature(VK3) = {:?}, expected (3, 19)", inv.signature));
        }
        if inv.hasse != two_inf {
            return Err(format!("hasse(VK3) = {:?}, expected {{2, inf}}", inv.hasse));
        }
        Ok("H^1..H^12 and VK3 match the closed-form invariant table".into())
    })())
}

fn real_quadratic(d: u64) -> Result<NumberField, String> {
    NumberField::new(IntPolynomial::from_i64(&[-(d as i64), 0, 1])).map_err(lib)
}

/// Transfer from real quadratic fields: T(<sqrt d>) is the hyperbolic plane
/// and T(I_4) is I_8, for several squarefree d.
pub fn quadratic_transfer_identities() -> CheckOutcome {
    outcome("rank-1 and rank-4 quadratic transfers", (|| {
        let h = named_form(&NamedForm::H).map_err(lib)?;
        let i8form = named_form(&NamedForm::I(8)).map_err(lib)?;
        for d in [2u64, 3, 5, 6, 7, 10] {
            let f = real_quadratic(d)?;
            let sqrt_d = f.generator();
            let w = DiagonalFormOverField::new(f.clone(), vec![sqrt_d]).map_err(lib)?;
            let t = transfer_quadratic(&w).map_err(lib)?;
            if !equivalent_over_q(&t.form, &h).map_err(lib)? {
                return Err(format!("T(<sqrt {d}>) is not equivalent to H"));
            }
            let ones = vec![f.one(); 4];
            let w4 = DiagonalFormOverField::new(f.clone(), ones).map_err(lib)?;
            let t4 = transfer_quadratic(&w4).map_err(lib)?;
            if !equivalent_over_q(&t4.form, &i8form).map_err(lib)? {
                return Err(format!("T(I_4) over Q(sqrt {d}) is not equivalent to I(8)"));
            }
        }
        Ok("T(<sqrt d>) ~ H and T(I_4) ~ I_8 for d in {2,3,5,6,7,10}".into())
    })())
}

/// Rank-11 diagonal forms over Q(sqrt d) whose transfer is the full K3
/// form, for d in {2, 5, 13} and both signs of the third entry.
pub fn vk3_transfers() -> CheckOutcome {
    outcome("K3 form as a quadratic transfer", (|| {
        let vk3 = named_form(&NamedForm::VK3).map_err(lib)?;
        for d in [2u64, 5, 13] {
            for sign in [1i64, -1] {
                let f = real_quadratic(d)?;
                let g = f.generator();
                let third = f.scale(&g, &rat_int(sign));
                let minus_one = f.from_rational(rat_int(-1));
                let mut entries = vec![g.clone(), g.clone(), third];
                entries.extend(std::iter::repeat(minus_one).take(8));
                let w = DiagonalFormOverField::new(f, entries).map_err(lib)?;
                let t = transfer_quadratic(&w).map_err(lib)?;
                if !equivalent_over_q(&t.form, &vk3).map_err(lib)? {
                    return Err(format!(
                        "T(<sqrt d, sqrt d, {sign} sqrt d> + -I_8) over Q(sqrt {d}) is not VK3"
                    ));
                }
            }
        }
        Ok("rank-11 witnesses over Q(sqrt d) transfer to VK3 for d in {2,5,13}".into())
    })())
}

/// The quartic construction from a two-squares decomposition d = u^2 + v^2:
/// its rank-1 transfer must be H + <1,1>.
pub fn binary_reconstruction() -> CheckOutcome {
    outcome("quartic transfer from two-squares data", (|| {
        let h = named_form(&NamedForm::H).map_err(lib)?;
        let i2 = named_form(&NamedForm::I(2)).map_err(lib)?;
        let target = h.direct_sum(&i2);
        for (d, u, v) in [(2u64, 1u64, 1u64), (5, 1, 2), (13, 2, 3)] {
            let c = construct_salem_from_binary(d, u, v).map_err(lib)?;
            if !equivalent_over_q(&c.transfer.form, &target).map_err(lib)? {
                return Err(format!("transfer for d = {d} is not H + <1,1>"));
            }
            if c.quartic.degree() != 4 {
                return Err(format!("presentation for d = {d} is not quartic"));
            }
        }
        Ok("(2,1,1), (5,1,2), (13,2,3) all transfer to H + <1,1>".into())
    })())
}

/// Two independent discriminant computations agree on the whole corpus:
/// the square class of (-1)^d S(1) S(-1) equals the discriminant class of
/// the Salem field computed from the resultant, and the sign follows the
/// parity of d (one complex place less than half the degree).
pub fn corpus_disc_cross_check() -> CheckOutcome {
    outcome("corpus discriminant cross-check", (|| {
        let mut n = 0usize;
        for entry in corpus::CORPUS {
            let s = certified(entry.name)?;
            let from_values = s.disc_class().clone();
            let from_field = s.field().map_err(lib)?.disc_class().map_err(lib)?;
            if from_values != from_field {
                return Err(format!(
                    "{}: resultant class {} != field class {}",
                    entry.name, from_values, from_field
                ));
            }
            let d = s.half_degree();
            let sign_law = if d % 2 == 0 { -1 } else { 1 };
            if from_values.sign() != sign_law {
                return Err(format!(
                    "{}: disc sign {} violates the parity law",
                    entry.name,
                    from_values.sign()
                ));
            }
            n += 1;
        }
        if n < 10 {
            return Err(format!("only {n} corpus entries checked, need at least 10"));
        }
        Ok(format!("{n} corpus entries: both computations agree, sign law holds"))
    })())
}

fn random_nonzero_coords(rng: &mut ChaCha8Rng, n: usize) -> Vec<Rat> {
    loop {
        let coords: Vec<Rat> = (0..n).map(|_| rat_int(rng.gen_range(-3..=3))).collect();
        if coords.iter().any(|c| !c.is_zero()) {
            return coords;
        }
    }
}

/// Closed-form transfer signatures against the exact ones, on 100
/// randomized inputs: 50 diagonal forms over totally real fields and 50
/// rank-1 twists of Salem trace forms.
pub fn signature_closed_forms() -> CheckOutcome {
    outcome("closed-form vs exact transfer signatures", (|| {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5167);
        let fields = [
            real_quadratic(2)?,
            real_quadratic(5)?,
            NumberField::new(IntPolynomial::from_i64(&[1, 0, -4, 0, 1])).map_err(lib)?,
        ];
        for i in 0..50usize {
            let f = &fields[i % fields.len()];
            let deg = f.degree();
            let rank = 1 + i % 3;
            let mut entries = Vec::with_capacity(rank);
            let mut signs: Vec<i8> = Vec::new();
            while entries.len() < rank {
                let a = f.from_coords(random_nonzero_coords(&mut rng, deg));
                match f.sign_at_real_embeddings(&a) {
                    Ok(s) => {
                        signs.extend(s);
                        entries.push(a);
                    }
                    Err(_) => continue,
                }
            }
            let w = DiagonalFormOverField::new(f.clone(), entries).map_err(lib)?;
            let t = transfer_quadratic(&w).map_err(lib)?;
            let closed = closed_form_signature(FieldKind::RM, &signs).map_err(lib)?;
            if t.invariants.signature != closed {
                return Err(format!(
                    "RM case {i}: exact {:?} != closed form {:?}",
                    t.invariants.signature, closed
                ));
            }
        }
        let s = certified("deg6")?;
        let e = s.field().map_err(lib)?;
        let g = e.generator();
        let y = e.add(&g, &e.inverse(&g).map_err(lib)?);
        let y2 = e.mul(&y, &y);
        for i in 0..50usize {
            let alpha = loop {
                let c: Vec<i64> = (0..3).map(|_| rng.gen_range(-3..=3)).collect();
                if c.iter().all(|&x| x == 0) {
                    continue;
                }
                let mut a = e.from_rational(rat_int(c[0]));
                a = e.add(&a, &e.scale(&y, &rat_int(c[1])));
                a = e.add(&a, &e.scale(&y2, &rat_int(c[2])));
                break a;
            };
            let t = transfer_hermitian_rank1(&s, &alpha).map_err(lib)?;
            let alpha0 = restrict_to_trace_field(&s, &alpha).map_err(lib)?;
            let signs = s
                .trace_field()
                .map_err(lib)?
                .sign_at_real_embeddings(&alpha0)
                .map_err(lib)?;
            let interior = &signs[..s.half_degree() - 1];
            let closed = closed_form_signature(FieldKind::SM, interior).map_err(lib)?;
            if t.invariants.signature != closed {
                return Err(format!(
                    "SM case {i}: exact {:?} != closed form {:?}",
                    t.invariants.signature, closed
                ));
            }
        }
        Ok("100 randomized transfers: exact signature equals closed form".into())
    })())
}

fn bad_places(values: &[&Rat]) -> Result<BTreeSet<Place>, String> {
    let mut places: BTreeSet<Place> = BTreeSet::new();
    places.insert(Place::Infinity);
    places.insert(Place::finite(2).map_err(lib)?);
    let budget = FactorBudget::default();
    for v in values {
        for part in [v.numer().magnitude(), v.denom().magnitude()] {
            if part.is_zero() || part.is_one() {
                continue;
            }
            for (p, _) in factor(part, &budget).map_err(lib)? {
                if p != BigUint::from(2u32) {
                    places.insert(Place::Finite(p));
                }
            }
        }
    }
    Ok(places)
}

/// Hilbert product formula: the symbol (a, b)_v is +1 for all but finitely
/// many v and the product over the joint bad set is +1, on 500 randomized
/// rational pairs.
pub fn hilbert_product_formula() -> CheckOutcome {
    outcome("hilbert symbol product formula", (|| {
        let mut rng = ChaCha8Rng::seed_from_u64(0x811B);
        for case in 0..500usize {
            let mut draw = || -> Rat {
                loop {
                    let n = rng.gen_range(-30i64..=30);
                    if n == 0 {
                        continue;
                    }
                    let d = rng.gen_range(1i64..=30);
                    return rat(n, d);
                }
            };
            let a = draw();
            let b = draw();
            let mut product = 1i8;
            for v in bad_places(&[&a, &b])? {
                product *= hilbert_symbol(&a, &b, &v).map_err(lib)?;
            }
            if product != 1 {
                return Err(format!("case {case}: product over bad places is -1 for ({a}, {b})"));
            }
        }
        Ok("500 randomized pairs satisfy the product formula".into())
    })())
}

/// Solvability of x^2 + y^2 = norm form value: the local criterion agrees
/// with the elementary sum-of-two-squares test for every squarefree d up
/// to 500.
pub fn two_squares_norm_criterion() -> CheckOutcome {
    outcome("norm equation vs sum of two squares", (|| {
        let mut checked = 0usize;
        for d in 2u64..=500 {
            let class = crate::arith::square_class(&rat_int(d as i64)).map_err(lib)?;
            if class.radical() != &BigUint::from(d) {
                continue;
            }
            let verdict = quad_norm_solvable(d, &rat_int(-1), false).map_err(lib)?;
            let local = verdict.answer == Answer::Yes;
            let elementary = is_sum_of_two_squares(d).is_some();
            if local != elementary {
                return Err(format!(
                    "d = {d}: local solvability {local}, two-squares test {elementary}"
                ));
            }
            checked += 1;
        }
        Ok(format!("{checked} squarefree d <= 500: the two criteria agree"))
    })())
}

/// The K3 real-multiplication grid: existence for degree d and rank
/// multiplier m is exactly (m >= 3 and d m <= 22), with family dimension
/// m - 2 reported on every yes.
pub fn rm_k3_grid() -> CheckOutcome {
    outcome("real multiplication existence grid", (|| {
        for d in 1u32..=8 {
            for m in 1u32..=12 {
                let verdict = rm_k3_exists(d, m).map_err(lib)?;
                let expected = m >= 3 && d * m <= 22;
                let got = verdict.answer == Answer::Yes;
                if got != expected {
                    return Err(format!("(d, m) = ({d}, {m}): got {got}, expected {expected}"));
                }
                if got {
                    match verdict.witness {
                        Some(Witness::FamilyDim { family_dim }) if family_dim == (m - 2) as usize => {}
                        other => {
                            return Err(format!(
                                "(d, m) = ({d}, {m}): witness {other:?}, expected family dim {}",
                                m - 2
                            ))
                        }
                    }
                }
            }
        }
        Ok("96 grid points match (m >= 3 and d m <= 22) with family dim m - 2".into())
    })())
}

/// Boundary cases of the hyperkahler tables: Kummer type rejects
/// half-degree 5 (Lehmer), OG6 accepts half-degree 2, and OG10 accepts a
/// half-degree-12 field precisely because its disc class is -3.
pub fn hk_boundary_cases() -> CheckOutcome {
    outcome("hyperkahler boundary cases", (|| {
        let lehmer = certified("lehmer")?;
        let v = classify_hk_sm(&lehmer, &HKType::Kummer(2)).map_err(lib)?;
        if v.answer != Answer::No {
            return Err(format!("Kummer at half-degree 5: {:?}, expected no", v.answer));
        }
        let quartic = certified("deg4b")?;
        let v = classify_hk_sm(&quartic, &HKType::OG6).map_err(lib)?;
        if v.answer != Answer::Yes {
            return Err(format!("OG6 at half-degree 2: {:?}, expected yes", v.answer));
        }
        let deg24 = certified("deg24")?;
        if deg24.half_degree() != 12 {
            return Err("deg24 entry does not have half-degree 12".into());
        }
        let v = classify_hk_sm(&deg24, &HKType::OG10).map_err(lib)?;
        if v.answer != Answer::Yes {
            return Err(format!("OG10 at half-degree 12: {:?}, expected yes", v.answer));
        }
        let row = v
            .evidence
            .iter()
            .find(|e| e.condition == "disc class equals -3")
            .ok_or("OG10 verdict is missing the disc-class row")?;
        if !row.pass {
            return Err("OG10 disc-class row did not pass".into());
        }
        Ok("Kummer/OG6/OG10 boundaries behave as tabulated".into())
    })())
}

/// Period construction across the corpus at signature (3, 2d-3): the
/// isotropy and T^{1,1}-orthogonality residuals stay below 1e-9 relative,
/// the pairing is positive, and the companion matrix is an exact isometry.
pub fn corpus_period_residuals() -> CheckOutcome {
    outcome("corpus period residuals", (|| {
        let tol = 1e-9;
        let mut n = 0usize;
        for entry in corpus::CORPUS {
            let s = certified(entry.name)?;
            let alpha = find_alpha_with_signature(&s, 1).map_err(lib)?;
            let p = period_from_salem(&s, &alpha, 53).map_err(lib)?;
            let gram = s
                .field()
                .map_err(lib)?
                .trace_form_gram(&alpha, Involution::Reciprocal)
                .map_err(lib)?;
            let report = verify_period(&p, &gram, tol);
            if !report.all_pass() {
                let failing: Vec<String> = report
                    .checks
                    .iter()
                    .filter(|c| !c.pass)
                    .map(|c| c.name.clone())
                    .collect();
                return Err(format!("{}: failing checks {:?}", entry.name, failing));
            }
            if !companion_isometry_check(&s, &alpha).map_err(lib)? {
                return Err(format!("{}: companion matrix is not an isometry", entry.name));
            }
            n += 1;
        }
        Ok(format!("{n} corpus periods verified at 1e-9 relative tolerance"))
    })())
}

/// Logical consistency across the corpus: an integral automorphism verdict
/// of yes always comes with an SM verdict of yes, and the Smyth example
/// separates the two notions.
pub fn automorphism_implies_sm() -> CheckOutcome {
    outcome("automorphism implies sm", (|| {
        let mut separation = false;
        for entry in corpus::CORPUS {
            let s = certified(entry.name)?;
            let auto = classify_k3_salem_automorphism(&s);
            let sm = classify_k3_sm(&s);
            if auto.answer == Answer::Yes && sm.answer != Answer::Yes {
                return Err(format!(
                    "{}: automorphism yes but sm {:?}",
                    entry.name, sm.answer
                ));
            }
            if sm.answer == Answer::Yes && auto.answer == Answer::No {
                separation = true;
            }
        }
        if !separation {
            return Err("no corpus entry separates sm from automorphism".into());
        }
        Ok("implication holds corpus-wide; smyth separates the two verdicts".into())
    })())
}

/// Runs every acceptance check, in a fixed order.
pub fn run_all() -> Vec<CheckOutcome> {
    vec![
        smyth_example(),
        hasse_table(),
        quadratic_transfer_identities(),
        vk3_transfers(),
        binary_reconstruction(),
        corpus_disc_cross_check(),
        signature_closed_forms(),
        hilbert_product_formula(),
        two_squares_norm_criterion(),
        rm_k3_grid(),
        hk_boundary_cases(),
        corpus_period_residuals(),
        automorphism_implies_sm(),
    ]
}

/// Formats outcomes as one line per check, `PASS`/`FAIL` first.
pub fn render(outcomes: &[CheckOutcome]) -> String {
    let mut out = String::new();
    for o in outcomes {
        let tag = if o.pass { "PASS" } else { "FAIL" };
        let _ = writeln!(out, "{tag}  {}: {}", o.name, o.detail);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_checks_pass() {
        for check in [
            smyth_example(),
            hasse_table(),
            binary_reconstruction(),
            hk_boundary_cases(),
            automorphism_implies_sm(),
        ] {
            assert!(check.pass, "{}: {}", check.name, check.detail);
        }
    }

    #[test]
    fn render_is_one_line_per_check() {
        let outcomes = vec![
            CheckOutcome {
                name: "a",
                pass: true,
                detail: "fine".into(),
            },
            CheckOutcome {
                name: "b",
                pass: false,
                detail: "broken".into(),
            },
        ];
        let text = render(&outcomes);
        assert_eq!(text.lines().count(), 2);
        assert!(text.starts_with("PASS  a: fine"));
        assert!(text.contains("FAIL  b: broken"));
    }
}
