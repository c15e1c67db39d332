//! Conversions from library values to JSON and human-readable text.
//! Rationals serialize as `"p/q"` strings, square classes as sign plus
//! radical, Hasse sets as arrays with `"inf"` for the real place.  All
//! output is deterministic: the same input yields the same bytes.

use serde_json::{json, Value};
use std::fmt::Write as _;

use salemk3::numfield::{FieldElement, IntPolynomial, RatInterval};
use salemk3::periods::{rat_to_f64, PeriodData, PeriodReport};
use salemk3::qforms::FormInvariants;
use salemk3::{Place, Rat, SquareClass};

pub fn rat_json(q: &Rat) -> Value {
    Value::String(q.to_string())
}

pub fn square_class_json(c: &SquareClass) -> Value {
    json!({
        "sign": c.sign(),
        "radical": c.radical().to_string(),
    })
}

pub fn poly_json(p: &IntPolynomial) -> Value {
    let coeffs: Vec<Value> = p
        .coeffs()
        .iter()
        .map(|c| Value::String(c.to_string()))
        .collect();
    json!({ "coeffs": coeffs })
}

pub fn place_json(v: &Place) -> Value {
    match v {
        Place::Infinity => Value::String("inf".into()),
        Place::Finite(p) => match u64::try_from(p) {
            Ok(small) => json!(small),
            Err(_) => Value::String(p.to_string()),
        },
    }
}

pub fn invariants_json(inv: &FormInvariants) -> Value {
    let hasse: Vec<Value> = inv.hasse.iter().map(place_json).collect();
    json!({
        "dim": inv.dim,
        "det": square_class_json(&inv.det),
        "signature": [inv.signature.0, inv.signature.1],
        "hasse": hasse,
    })
}

pub fn invariants_human(inv: &FormInvariants) -> String {
    let hasse: Vec<String> = inv.hasse.iter().map(|v| v.to_string()).collect();
    format!(
        "dim {}  det {}  signature ({}, {})  hasse {{{}}}",
        inv.dim,
        inv.det,
        inv.signature.0,
        inv.signature.1,
        hasse.join(", ")
    )
}

pub fn gram_json(gram: &[Vec<Rat>]) -> Value {
    Value::Array(
        gram.iter()
            .map(|row| Value::Array(row.iter().map(rat_json).collect()))
            .collect(),
    )
}

pub fn gram_human(gram: &[Vec<Rat>]) -> String {
    let mut out = String::new();
    for row in gram {
        let cells: Vec<String> = row.iter().map(|c| c.to_string()).collect();
        let _ = writeln!(out, "[{}]", cells.join(", "));
    }
    out
}

pub fn element_json(a: &FieldElement) -> Value {
    Value::Array(a.coords().iter().map(rat_json).collect())
}

pub fn element_human(a: &FieldElement) -> String {
    let cells: Vec<String> = a.coords().iter().map(|c| c.to_string()).collect();
    format!("[{}]", cells.join(", "))
}

/// Decimal rendering of an exact rational, 17 significant digits.
pub fn decimal(q: &Rat) -> String {
    format!("{:.17e}", rat_to_f64(q))
}

pub fn interval_json(i: &RatInterval) -> Value {
    json!({
        "lo": rat_json(&i.lo),
        "hi": rat_json(&i.hi),
        "decimal_lo": decimal(&i.lo),
        "decimal_hi": decimal(&i.hi),
    })
}

pub fn interval_human(i: &RatInterval) -> String {
    format!("({}, {})", decimal(&i.lo), decimal(&i.hi))
}

pub fn signature_json(sig: Option<(usize, usize)>) -> Value {
    match sig {
        Some((p, q)) => json!([p, q]),
        None => Value::Null,
    }
}

pub fn signature_human(sig: Option<(usize, usize)>) -> String {
    match sig {
        Some((p, q)) => format!("({p}, {q})"),
        None => "unavailable".into(),
    }
}

pub fn period_json(p: &PeriodData) -> Value {
    let omega: Vec<Value> = p
        .omega
        .iter()
        .map(|z| json!({ "re": decimal(&z.re), "im": decimal(&z.im) }))
        .collect();
    json!({
        "omega": omega,
        "embedding_index": p.embedding_index,
        "residuals": {
            "isotropy": decimal(&p.residual_isotropy),
            "pairing": decimal(&p.pairing_value),
            "t11_orthogonality": decimal(&p.max_t11_orthogonality),
        },
        "precision_bits": p.precision_bits,
    })
}

pub fn period_human(p: &PeriodData) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "embedding index {}", p.embedding_index);
    for (k, z) in p.omega.iter().enumerate() {
        let _ = writeln!(out, "omega[{k}] = {} + {} i", decimal(&z.re), decimal(&z.im));
    }
    let _ = writeln!(out, "isotropy residual    {}", decimal(&p.residual_isotropy));
    let _ = writeln!(out, "pairing value        {}", decimal(&p.pairing_value));
    let _ = writeln!(
        out,
        "T11 orthogonality    {}",
        decimal(&p.max_t11_orthogonality)
    );
    let _ = writeln!(out, "precision bits       {}", p.precision_bits);
    out
}

pub fn report_json(r: &PeriodReport) -> Value {
    Value::Array(
        r.checks
            .iter()
            .map(|c| {
                json!({
                    "name": c.name,
                    "value": format!("{:.17e}", c.value),
                    "bound": format!("{:.17e}", c.bound),
                    "pass": c.pass,
                })
            })
            .collect(),
    )
}

pub fn report_human(r: &PeriodReport) -> String {
    let mut out = String::new();
    for c in &r.checks {
        let tag = if c.pass { "ok  " } else { "FAIL" };
        let _ = writeln!(out, "{tag} {}  value {:.3e}  bound {:.3e}", c.name, c.value, c.bound);
    }
    out
}

pub fn verdict_json(v: &salemk3::classify::Verdict) -> Value {
    serde_json::to_value(v).expect("verdicts always serialize")
}

pub fn verdict_human(v: &salemk3::classify::Verdict) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "answer: {:?}", v.answer);
    for e in &v.evidence {
        let tag = if e.pass { "ok  " } else { "no  " };
        let _ = writeln!(out, "  {tag} {} = {}", e.condition, e.value);
    }
    if let Some(w) = &v.witness {
        let _ = writeln!(out, "  witness: {}", serde_json::to_value(w).expect("witness"));
    }
    out
}
