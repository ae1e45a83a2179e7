//! Parsing and canonical JSON forms for the CLI surface.
//!
//! Polynomials over F_q travel as coefficient lists low-degree first
//! (`[1,0,1]`; nested lists when the base field has e > 1), bivariate
//! polynomials as `[[z_exp, coeffs], ...]` pairs, and field elements as
//! coordinate vectors in the same convention. Prime-field polynomials are
//! also accepted in symbolic form (`t^4+t+1`, `2t^2+1`).

use dtors_core::error::{Error, Result};
use dtors_core::ffield::{ExtFieldElem, FieldCtx, Fq, FqElem};
use dtors_core::polyring::{BiPoly, RatFunc, UPoly};
use serde_json::Value;

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

// --- element (FqElem) helpers ---

fn fq_elem_from_json(v: &Value, fq: &Fq) -> Result<FqElem> {
    if fq.e() == 1 {
        let n = v
            .as_u64()
            .ok_or_else(|| parse_err(format!("expected integer coefficient, got {v}")))?;
        Ok(fq.from_u64(n))
    } else {
        let arr = v
            .as_array()
            .ok_or_else(|| parse_err(format!("expected coordinate list, got {v}")))?;
        let coords: Vec<u64> = arr
            .iter()
            .map(|x| {
                x.as_u64()
                    .ok_or_else(|| parse_err(format!("expected integer coordinate, got {x}")))
            })
            .collect::<Result<_>>()?;
        fq.elem(&coords)
    }
}

pub fn fq_elem_to_json(c: &FqElem, fq: &Fq) -> Value {
    if fq.e() == 1 {
        Value::from(c.coords()[0])
    } else {
        Value::from(c.coords().to_vec())
    }
}

// --- UPoly ---

pub fn upoly_to_json(f: &UPoly, fq: &Fq) -> Value {
    Value::from(
        f.coeffs()
            .iter()
            .map(|c| fq_elem_to_json(c, fq))
            .collect::<Vec<_>>(),
    )
}

pub fn upoly_from_json(v: &Value, fq: &Fq) -> Result<UPoly> {
    let arr = v
        .as_array()
        .ok_or_else(|| parse_err(format!("expected coefficient list, got {v}")))?;
    let coeffs: Vec<FqElem> = arr
        .iter()
        .map(|x| fq_elem_from_json(x, fq))
        .collect::<Result<_>>()?;
    Ok(UPoly::from_coeffs(fq, &coeffs))
}

/// Accepts the canonical list form or, over prime fields, a symbolic sum of
/// monomials in one variable (any of t, T, x, z).
pub fn parse_upoly(s: &str, fq: &Fq) -> Result<UPoly> {
    let s = s.trim();
    if s.starts_with('[') {
        let v: Value =
            serde_json::from_str(s).map_err(|e| parse_err(format!("bad list form: {e}")))?;
        return upoly_from_json(&v, fq);
    }
    if fq.e() > 1 {
        return Err(parse_err(
            "symbolic polynomials are only supported over prime fields; use the list form",
        ));
    }
    parse_symbolic(s, fq)
}

fn parse_symbolic(s: &str, fq: &Fq) -> Result<UPoly> {
    let p = fq.p();
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(parse_err("empty polynomial"));
    }
    // split into signed terms
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut current = String::new();
    let mut negative = false;
    for (i, ch) in compact.chars().enumerate() {
        match ch {
            '+' | '-' if i > 0 => {
                if current.is_empty() {
                    return Err(parse_err("dangling sign"));
                }
                terms.push((negative, std::mem::take(&mut current)));
                negative = ch == '-';
            }
            '-' => negative = true,
            _ => current.push(ch),
        }
    }
    if current.is_empty() {
        return Err(parse_err("dangling sign"));
    }
    terms.push((negative, current));

    let mut acc = UPoly::zero(fq);
    for (neg, term) in terms {
        let (coeff, exp) = parse_term(&term, p)?;
        let c = fq.from_u64(coeff);
        let c = if neg { fq.neg(&c) } else { c };
        acc = acc.add(&UPoly::monomial(fq, exp, c), fq);
    }
    Ok(acc)
}

fn parse_term(term: &str, p: u64) -> Result<(u64, usize)> {
    let vars = ['t', 'T', 'x', 'z'];
    let var_pos = term.find(|c| vars.contains(&c));
    match var_pos {
        None => {
            let n: u64 = term
                .parse()
                .map_err(|_| parse_err(format!("bad constant term '{term}'")))?;
            Ok((n % p, 0))
        }
        Some(pos) => {
            let coeff_str = term[..pos].trim_end_matches('*');
            let coeff = if coeff_str.is_empty() {
                1
            } else {
                coeff_str
                    .parse::<u64>()
                    .map_err(|_| parse_err(format!("bad coefficient '{coeff_str}'")))?
            };
            let rest = &term[pos + 1..];
            let exp = if rest.is_empty() {
                1
            } else {
                let e = rest
                    .strip_prefix('^')
                    .ok_or_else(|| parse_err(format!("bad exponent syntax '{term}'")))?;
                e.parse::<usize>()
                    .map_err(|_| parse_err(format!("bad exponent '{e}'")))?
            };
            Ok((coeff % p, exp))
        }
    }
}

// --- RatFunc ---

/// `num` or `num/den`, each side in any form [`parse_upoly`] accepts.
pub fn parse_ratfunc(s: &str, fq: &Fq) -> Result<RatFunc> {
    let s = s.trim();
    // a '/' inside brackets cannot occur, so a plain split is safe
    match s.split_once('/') {
        None => Ok(RatFunc::from_poly(parse_upoly(s, fq)?, fq)),
        Some((num, den)) => RatFunc::new(parse_upoly(num, fq)?, parse_upoly(den, fq)?, fq),
    }
}

// --- field elements ---

pub fn elem_to_json(a: &ExtFieldElem, ctx: &FieldCtx) -> Value {
    Value::from(
        a.coords(ctx)
            .iter()
            .map(|c| fq_elem_to_json(c, ctx.base()))
            .collect::<Vec<_>>(),
    )
}

pub fn parse_elem(s: &str, ctx: &FieldCtx) -> Result<ExtFieldElem> {
    let v: Value = serde_json::from_str(s.trim())
        .map_err(|e| parse_err(format!("bad element form: {e}")))?;
    elem_from_json(&v, ctx)
}

pub fn elem_from_json(v: &Value, ctx: &FieldCtx) -> Result<ExtFieldElem> {
    let arr = v
        .as_array()
        .ok_or_else(|| parse_err(format!("expected coordinate vector, got {v}")))?;
    let coords: Vec<FqElem> = arr
        .iter()
        .map(|x| fq_elem_from_json(x, ctx.base()))
        .collect::<Result<_>>()?;
    ctx.from_coords(&coords)
}

// --- BiPoly ---

pub fn bipoly_to_json(f: &BiPoly, fq: &Fq) -> Value {
    let mut pairs = Vec::new();
    for (i, c) in f.z_coeffs().iter().enumerate() {
        if !c.is_zero() {
            pairs.push(Value::from(vec![Value::from(i), upoly_to_json(c, fq)]));
        }
    }
    Value::from(pairs)
}

pub fn bipoly_from_json(v: &Value, fq: &Fq) -> Result<BiPoly> {
    let arr = v
        .as_array()
        .ok_or_else(|| parse_err(format!("expected [[exp, coeffs], ...], got {v}")))?;
    let mut acc = BiPoly::zero();
    for pair in arr {
        let pair = pair
            .as_array()
            .filter(|p| p.len() == 2)
            .ok_or_else(|| parse_err(format!("expected [exp, coeffs] pair, got {pair}")))?;
        let exp = pair[0]
            .as_u64()
            .ok_or_else(|| parse_err("z-exponent must be a nonnegative integer"))?
            as usize;
        let coeff = upoly_from_json(&pair[1], fq)?;
        acc = acc.add(&BiPoly::monomial(exp, coeff, fq), fq);
    }
    Ok(acc)
}

/// A polynomial system file: `{"p": .., "e": .., "system": [bipoly, ...]}`.
pub fn parse_system_file(text: &str) -> Result<(Fq, Vec<BiPoly>)> {
    let v: Value =
        serde_json::from_str(text).map_err(|e| parse_err(format!("bad system file: {e}")))?;
    let p = v["p"]
        .as_u64()
        .ok_or_else(|| parse_err("system file needs a prime \"p\""))?;
    let e = v["e"].as_u64().unwrap_or(1) as usize;
    let fq = Fq::new(p, e)?;
    let sys = v["system"]
        .as_array()
        .ok_or_else(|| parse_err("system file needs a \"system\" array"))?;
    let polys: Vec<BiPoly> = sys
        .iter()
        .map(|b| bipoly_from_json(b, &fq))
        .collect::<Result<_>>()?;
    Ok((fq, polys))
}
