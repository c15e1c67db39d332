//! Argument resolution: polynomials, forms, and field elements arrive as
//! file paths, inline text, JSON, or corpus names.  Every parser reports
//! which argument was malformed, so the caller can map the failure to a
//! usage error.

use num::bigint::BigInt;
use std::path::Path;
use std::str::FromStr;

use salemk3::numfield::{IntPolynomial, NumberField};
use salemk3::qforms::{named_form, NamedForm, QuadraticFormQ};
use salemk3::salem::corpus;
use salemk3::Rat;

use crate::CliError;

fn usage(msg: String) -> CliError {
    CliError::Usage(msg)
}

/// Reads `arg` as a file if one exists at that path, otherwise returns the
/// argument text itself.
fn text_of(arg: &str) -> Result<String, CliError> {
    if Path::new(arg).is_file() {
        std::fs::read_to_string(arg).map_err(|e| usage(format!("cannot read {arg}: {e}")))
    } else {
        Ok(arg.to_string())
    }
}

pub fn parse_rational(s: &str) -> Result<Rat, CliError> {
    Rat::from_str(s.trim()).map_err(|_| usage(format!("not a rational number: {s}")))
}

fn coeff_from_json(v: &serde_json::Value, context: &str) -> Result<BigInt, CliError> {
    match v {
        serde_json::Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(BigInt::from(i))
            } else {
                Err(usage(format!("{context}: non-integer coefficient {n}")))
            }
        }
        serde_json::Value::String(s) => BigInt::from_str(s.trim())
            .map_err(|_| usage(format!("{context}: bad coefficient {s}"))),
        other => Err(usage(format!("{context}: bad coefficient {other}"))),
    }
}

fn poly_from_json(v: &serde_json::Value, context: &str) -> Result<IntPolynomial, CliError> {
    let coeffs = v
        .get("coeffs")
        .and_then(|c| c.as_array())
        .ok_or_else(|| usage(format!("{context}: expected {{\"coeffs\": [...]}}")))?;
    let coeffs = coeffs
        .iter()
        .map(|c| coeff_from_json(c, context))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(IntPolynomial::new(coeffs))
}

/// Polynomial argument: a file, a corpus entry name, a JSON object with
/// ascending `coeffs`, a comma-separated ascending coefficient list, or an
/// expression like `x^4 - x^3 - x^2 - x + 1`.
pub fn resolve_poly(arg: &str) -> Result<IntPolynomial, CliError> {
    if !Path::new(arg).is_file() {
        if let Some(entry) = corpus::find(arg.trim()) {
            return Ok(entry.poly());
        }
    }
    let text = text_of(arg)?;
    let t = text.trim();
    if t.starts_with('{') {
        let v: serde_json::Value =
            serde_json::from_str(t).map_err(|e| usage(format!("{arg}: bad JSON: {e}")))?;
        return poly_from_json(&v, arg);
    }
    if t.contains(',') && !t.contains('x') {
        let coeffs = t
            .split(',')
            .map(|c| {
                BigInt::from_str(c.trim())
                    .map_err(|_| usage(format!("{arg}: bad coefficient {c}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        return Ok(IntPolynomial::new(coeffs));
    }
    IntPolynomial::parse_expr(t).map_err(|e| usage(format!("{arg}: {e}")))
}

fn rat_from_json(v: &serde_json::Value, context: &str) -> Result<Rat, CliError> {
    match v {
        serde_json::Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Rat::from_integer(BigInt::from(i)))
            } else {
                Err(usage(format!("{context}: non-integer entry {n}")))
            }
        }
        serde_json::Value::String(s) => parse_rational(s),
        other => Err(usage(format!("{context}: bad rational {other}"))),
    }
}

/// Form argument: a named form (`H^3`, `I(4)`, `VK3`, `BBF(og10)`), a file,
/// or JSON with either a `gram` matrix or a `diag` vector of rationals.
pub fn resolve_form(arg: &str) -> Result<QuadraticFormQ, CliError> {
    if !Path::new(arg).is_file() {
        if let Ok(name) = NamedForm::parse(arg) {
            return named_form(&name)
                .map_err(|e| CliError::Computation(format!("{arg}: {e}")));
        }
    }
    let text = text_of(arg)?;
    let t = text.trim();
    let v: serde_json::Value =
        serde_json::from_str(t).map_err(|e| usage(format!("{arg}: not a form name or JSON: {e}")))?;
    if let Some(rows) = v.get("gram").and_then(|g| g.as_array()) {
        let gram = rows
            .iter()
            .map(|row| {
                row.as_array()
                    .ok_or_else(|| usage(format!("{arg}: gram rows must be arrays")))?
                    .iter()
                    .map(|e| rat_from_json(e, arg))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        return QuadraticFormQ::from_gram(gram)
            .map_err(|e| CliError::Computation(format!("{arg}: {e}")));
    }
    if let Some(diag) = v.get("diag").and_then(|d| d.as_array()) {
        let entries = diag
            .iter()
            .map(|e| rat_from_json(e, arg))
            .collect::<Result<Vec<_>, _>>()?;
        return QuadraticFormQ::from_diag(entries)
            .map_err(|e| CliError::Computation(format!("{arg}: {e}")));
    }
    if let Some(name) = v.get("named").and_then(|n| n.as_str()) {
        let name = NamedForm::parse(name).map_err(|e| usage(format!("{arg}: {e}")))?;
        return named_form(&name).map_err(|e| CliError::Computation(format!("{arg}: {e}")));
    }
    Err(usage(format!(
        "{arg}: expected a form name or JSON with gram, diag, or named"
    )))
}

/// Splits on `sep` at bracket depth zero.
fn split_top_level(s: &str, sep: char) -> Vec<String> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut current = String::new();
    for c in s.chars() {
        match c {
            '[' => {
                depth += 1;
                current.push(c);
            }
            ']' => {
                depth -= 1;
                current.push(c);
            }
            c if c == sep && depth == 0 => {
                parts.push(std::mem::take(&mut current));
            }
            _ => current.push(c),
        }
    }
    parts.push(current);
    parts
}

/// One element of a number field: a rational, an integer-coefficient
/// expression in the field generator (any letter), or bracketed coordinates
/// `[c0, c1, ...]` in the power basis.
pub fn parse_element(
    field: &NumberField,
    s: &str,
) -> Result<salemk3::numfield::FieldElement, CliError> {
    let t = s.trim();
    if t.is_empty() {
        return Err(usage("empty field element".into()));
    }
    if let Some(inner) = t.strip_prefix('[') {
        let inner = inner
            .strip_suffix(']')
            .ok_or_else(|| usage(format!("unclosed bracket in {s}")))?;
        let mut coords = inner
            .split(',')
            .map(parse_rational)
            .collect::<Result<Vec<_>, _>>()?;
        if coords.len() > field.degree() {
            return Err(usage(format!(
                "{s}: {} coordinates for a degree-{} field",
                coords.len(),
                field.degree()
            )));
        }
        coords.resize(field.degree(), Rat::from_integer(BigInt::from(0)));
        return Ok(field.from_coords(coords));
    }
    if t.chars().any(|c| c.is_ascii_alphabetic()) {
        let p = IntPolynomial::parse_expr(t).map_err(|e| usage(format!("{s}: {e}")))?;
        return Ok(field.from_int_poly(&p));
    }
    Ok(field.from_rational(parse_rational(t)?))
}

/// Comma-separated field elements (brackets protect inner commas).
pub fn parse_elements(
    field: &NumberField,
    s: &str,
) -> Result<Vec<salemk3::numfield::FieldElement>, CliError> {
    split_top_level(s, ',')
        .iter()
        .filter(|part| !part.trim().is_empty())
        .map(|part| parse_element(field, part))
        .collect()
}

/// Witness file: JSON `{"field": {"coeffs": [...]}, "alpha": [...]}`.
pub fn resolve_witness(arg: &str) -> Result<(NumberField, Vec<Rat>), CliError> {
    let text = text_of(arg)?;
    let v: serde_json::Value =
        serde_json::from_str(text.trim()).map_err(|e| usage(format!("{arg}: bad JSON: {e}")))?;
    let poly = poly_from_json(
        v.get("field")
            .ok_or_else(|| usage(format!("{arg}: missing field")))?,
        arg,
    )?;
    let field =
        NumberField::new(poly).map_err(|e| CliError::Computation(format!("{arg}: {e}")))?;
    let alpha = v
        .get("alpha")
        .and_then(|a| a.as_array())
        .ok_or_else(|| usage(format!("{arg}: missing alpha coordinates")))?
        .iter()
        .map(|c| rat_from_json(c, arg))
        .collect::<Result<Vec<_>, _>>()?;
    if alpha.len() != field.degree() {
        return Err(usage(format!(
            "{arg}: alpha has {} coordinates for a degree-{} field",
            alpha.len(),
            field.degree()
        )));
    }
    Ok((field, alpha))
}

pub fn parse_primes(s: &str) -> Result<Vec<u64>, CliError> {
    s.split(',')
        .map(|p| {
            p.trim()
                .parse::<u64>()
                .map_err(|_| usage(format!("bad prime: {p}")))
        })
        .collect()
}
