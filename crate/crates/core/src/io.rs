//! JSON forms of ring elements, polynomials and code specifications.
//!
//! An element is an integer (its image in the ring) or a coordinate array:
//! `m` integers for a Galois ring, `e` entries for `F_q[u]/(u^e)` where
//! each entry is an integer or an array of residue-field coordinates.

use std::sync::Arc;

use serde_json::{json, Value};

use crate::code::Code;
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::ring::{Family, Ring, RingElem, RingSpec};

fn as_int(v: &Value) -> Result<i64> {
    v.as_i64()
        .ok_or_else(|| Error::Parse(format!("expected an integer, got {v}")))
}

pub fn parse_elem(ring: &Arc<Ring>, v: &Value) -> Result<RingElem> {
    match v {
        Value::Number(_) => Ok(ring.from_int(as_int(v)?)),
        Value::Array(items) => match ring.family() {
            Family::TruncatedFieldRing => {
                let field = ring.residue_field();
                let coords = items
                    .iter()
                    .map(|item| parse_elem(&field, item).map(|a| a.index() as i64))
                    .collect::<Result<Vec<_>>>()?;
                ring.from_coords(&coords)
            }
            _ => {
                let coords = items.iter().map(as_int).collect::<Result<Vec<_>>>()?;
                ring.from_coords(&coords)
            }
        },
        _ => Err(Error::Parse(format!("expected an element, got {v}"))),
    }
}

/// Parses an element from text: an integer or a JSON array.
pub fn parse_elem_str(ring: &Arc<Ring>, text: &str) -> Result<RingElem> {
    let v: Value = serde_json::from_str(text.trim())
        .map_err(|e| Error::Parse(format!("element {text:?}: {e}")))?;
    parse_elem(ring, &v)
}

pub fn elem_to_json(ring: &Ring, a: RingElem) -> Value {
    match ring.family() {
        Family::TruncatedFieldRing => {
            let m = ring.m();
            let q = ring.residue_order();
            let entries: Vec<Value> = ring
                .coords(a)
                .into_iter()
                .map(|c| {
                    if m == 1 {
                        json!(c)
                    } else {
                        // field coordinates in base p
                        let p = ring.p();
                        let mut idx = c % q;
                        let digits: Vec<u64> = (0..m)
                            .map(|_| {
                                let d = idx % p;
                                idx /= p;
                                d
                            })
                            .collect();
                        json!(digits)
                    }
                })
                .collect();
            Value::Array(entries)
        }
        _ if ring.m() == 1 => json!(a.index()),
        _ => json!(ring.coords(a)),
    }
}

/// Coefficients lowest degree first.
pub fn parse_poly(ring: &Arc<Ring>, v: &Value) -> Result<Poly> {
    let items = v
        .as_array()
        .ok_or_else(|| Error::Parse(format!("expected a coefficient array, got {v}")))?;
    let coeffs = items
        .iter()
        .map(|c| parse_elem(ring, c))
        .collect::<Result<Vec<_>>>()?;
    Ok(Poly::new(ring, coeffs))
}

pub fn poly_to_json(p: &Poly) -> Value {
    Value::Array(p.coeffs().iter().map(|&c| elem_to_json(p.ring(), c)).collect())
}

/// A vector of `N` elements.
pub fn parse_vector(ring: &Arc<Ring>, text: &str) -> Result<Vec<RingElem>> {
    let v: Value = serde_json::from_str(text.trim())
        .map_err(|e| Error::Parse(format!("vector {text:?}: {e}")))?;
    let items = v
        .as_array()
        .ok_or_else(|| Error::Parse(format!("expected an array, got {v}")))?;
    items.iter().map(|c| parse_elem(ring, c)).collect()
}

pub fn vector_to_json(ring: &Ring, v: &[RingElem]) -> Value {
    Value::Array(v.iter().map(|&c| elem_to_json(ring, c)).collect())
}

/// `{ring, lambda, N, exponents}`.
pub fn code_spec_to_json(code: &Code) -> Value {
    json!({
        "ring": code.ring().spec().to_string(),
        "lambda": elem_to_json(code.ring(), code.lambda()),
        "N": code.length(),
        "exponents": code.exponents(),
    })
}

pub fn parse_code_spec(v: &Value) -> Result<Code> {
    let field = |name: &str| {
        v.get(name)
            .ok_or_else(|| Error::Parse(format!("code spec is missing {name:?}")))
    };
    let ring_text = field("ring")?
        .as_str()
        .ok_or_else(|| Error::Parse("\"ring\" must be a string".into()))?;
    let ring = Ring::new(RingSpec::parse(ring_text)?)?;
    let lambda = parse_elem(&ring, field("lambda")?)?;
    let length = field("N")?
        .as_u64()
        .ok_or_else(|| Error::Parse("\"N\" must be a non-negative integer".into()))?
        as usize;
    let exponents = field("exponents")?
        .as_array()
        .ok_or_else(|| Error::Parse("\"exponents\" must be an array".into()))?
        .iter()
        .map(|k| {
            k.as_u64()
                .map(|k| k as usize)
                .ok_or_else(|| Error::Parse(format!("bad exponent {k}")))
        })
        .collect::<Result<Vec<_>>>()?;
    Code::new(&ring, lambda, length, &exponents)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn elements_round_trip() {
        for spec in ["GR(9,1)", "GR(4,2)", "FU(2,2)", "FU(4,2)", "F(4)"] {
            let ring = Ring::parse(spec).unwrap();
            for a in ring.elements() {
                let v = elem_to_json(&ring, a);
                assert_eq!(parse_elem(&ring, &v).unwrap(), a, "{spec} {v}");
            }
        }
    }

    #[test]
    fn negative_integers_reduce() {
        let gr = Ring::parse("GR(4,4)").unwrap();
        assert_eq!(parse_elem_str(&gr, "-1").unwrap(), gr.from_int(3));
        let fu = Ring::parse("FU(2,2)").unwrap();
        let one_plus_u = parse_elem_str(&fu, "[1,1]").unwrap();
        assert_eq!(one_plus_u, fu.add(fu.one(), fu.gamma()));
        assert!(parse_elem_str(&fu, "[1,1,1]").is_err());
        assert!(parse_elem_str(&fu, "\"x\"").is_err());
    }

    #[test]
    fn code_spec_round_trip() {
        let gr = Ring::parse("GR(4,4)").unwrap();
        let code = Code::new(&gr, gr.from_int(-1), 56, &[14, 12, 13]).unwrap();
        let v = code_spec_to_json(&code);
        assert_eq!(v["lambda"], json!([3, 0, 0, 0]));
        let back = parse_code_spec(&v).unwrap();
        assert_eq!(back, code);
        assert!(parse_code_spec(&json!({"ring": "GR(9,1)", "N": 18})).is_err());
    }
}
