//! JSON encodings for field elements, matrices, tensors and admissible
//! triples. Rationals and big integers are written as decimal strings.

use std::collections::{BTreeMap, BTreeSet};

use num::{BigInt, ToPrimitive};
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::bd::AdmissibleTriple;
use crate::field::{parse_rational, rational_to_string, Rational, SpecRef, TowerElem, TowerSpec};
use crate::lie::{GlIndex, Tensor};
use crate::matrix::MatK;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("malformed JSON input: {0}")]
pub struct JsonError(pub String);

fn bad(msg: impl Into<String>) -> JsonError {
    JsonError(msg.into())
}

pub fn rational(q: &Rational) -> Value {
    Value::String(rational_to_string(q))
}

/// Accepts `"p"`, `"p/q"` or a JSON integer.
pub fn parse_rational_value(v: &Value) -> Result<Rational, JsonError> {
    match v {
        Value::String(s) => parse_rational(s).ok_or_else(|| bad(format!("not a rational: {s:?}"))),
        Value::Number(n) => n
            .as_i64()
            .map(|i| Rational::from_integer(i.into()))
            .ok_or_else(|| bad(format!("not an integer: {n}"))),
        other => Err(bad(format!("expected a rational, got {other}"))),
    }
}

fn bigint_value(b: &BigInt) -> Value {
    match b.to_i64() {
        Some(i) => json!(i),
        None => Value::String(b.to_string()),
    }
}

fn parse_bigint(v: &Value) -> Result<BigInt, JsonError> {
    match v {
        Value::String(s) => s.parse().map_err(|_| bad(format!("not an integer: {s:?}"))),
        Value::Number(n) => n.as_i64().map(BigInt::from).ok_or_else(|| bad(format!("not an integer: {n}"))),
        other => Err(bad(format!("expected an integer, got {other}"))),
    }
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value, JsonError> {
    v.get(key).ok_or_else(|| bad(format!("missing field {key:?}")))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>, JsonError> {
    v.as_array().ok_or_else(|| bad(format!("{what} must be an array")))
}

fn usize_of(v: &Value, what: &str) -> Result<usize, JsonError> {
    v.as_u64()
        .and_then(|x| usize::try_from(x).ok())
        .ok_or_else(|| bad(format!("{what} must be a non-negative integer")))
}

pub fn spec(s: &TowerSpec) -> Value {
    json!({
        "generators": s.generators().iter().map(bigint_value).collect::<Vec<_>>(),
        "conj_index": s.conj_index(),
    })
}

pub fn parse_spec(v: &Value) -> Result<SpecRef, JsonError> {
    let gens = array(field(v, "generators")?, "generators")?
        .iter()
        .map(|g| parse_bigint(g).map(Rational::from_integer))
        .collect::<Result<Vec<_>, _>>()?;
    let conj = match v.get("conj_index") {
        None | Some(Value::Null) => None,
        Some(c) => Some(usize_of(c, "conj_index")?),
    };
    TowerSpec::new(&gens, conj).map_err(|e| bad(e.to_string()))
}

fn subset(mask: u32) -> Vec<u32> {
    (0..32).filter(|i| mask >> i & 1 == 1).collect()
}

fn coeffs(x: &TowerElem) -> Value {
    Value::Array(
        x.terms()
            .map(|(mask, c)| {
                json!({
                    "subset": subset(mask),
                    "num": c.numer().to_string(),
                    "den": c.denom().to_string(),
                })
            })
            .collect(),
    )
}

pub fn elem(x: &TowerElem) -> Value {
    let mut m = match spec(x.spec()) {
        Value::Object(m) => m,
        _ => unreachable!(),
    };
    m.insert("coeffs".into(), coeffs(x));
    Value::Object(m)
}

fn parse_coeffs(k: &SpecRef, v: &Value) -> Result<TowerElem, JsonError> {
    let mut terms = Vec::new();
    for t in array(v, "coeffs")? {
        let mut mask = 0u32;
        for i in array(field(t, "subset")?, "subset")? {
            let i = usize_of(i, "subset index")?;
            if i >= k.generators().len() {
                return Err(bad(format!("subset index {i} out of range")));
            }
            mask |= 1 << i;
        }
        let num = parse_bigint(field(t, "num")?)?;
        let den = parse_bigint(field(t, "den")?)?;
        if den == BigInt::from(0) {
            return Err(bad("zero denominator"));
        }
        terms.push((mask, Rational::new(num, den)));
    }
    TowerElem::from_terms(k, terms).map_err(|e| bad(e.to_string()))
}

pub fn parse_elem(v: &Value) -> Result<TowerElem, JsonError> {
    let k = parse_spec(v)?;
    parse_coeffs(&k, field(v, "coeffs")?)
}

/// Rows hold bare coefficient arrays; the tower is stated once.
pub fn matrix(m: &MatK) -> Value {
    let rows: Vec<Value> = m
        .rows()
        .iter()
        .map(|r| Value::Array(r.iter().map(coeffs).collect()))
        .collect();
    json!({ "n": m.n(), "spec": spec(m.spec()), "rows": rows })
}

pub fn parse_matrix(v: &Value) -> Result<MatK, JsonError> {
    let k = parse_spec(field(v, "spec")?)?;
    let n = usize_of(field(v, "n")?, "n")?;
    let rows = array(field(v, "rows")?, "rows")?
        .iter()
        .map(|r| array(r, "row")?.iter().map(|c| parse_coeffs(&k, c)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    if rows.len() != n {
        return Err(bad(format!("expected {n} rows, got {}", rows.len())));
    }
    MatK::from_rows(&k, rows).map_err(|e| bad(e.to_string()))
}

pub fn tensor<const K: usize>(t: &Tensor<K>) -> Value {
    let terms: Vec<Value> = t
        .terms()
        .map(|(legs, c)| {
            json!({
                "legs": legs.iter().map(|g| [g.i, g.j]).collect::<Vec<_>>(),
                "coeff": coeffs(c),
            })
        })
        .collect();
    json!({ "n": t.n(), "spec": spec(t.spec()), "terms": terms })
}

pub fn parse_tensor<const K: usize>(v: &Value) -> Result<Tensor<K>, JsonError> {
    let k = parse_spec(field(v, "spec")?)?;
    let n = usize_of(field(v, "n")?, "n")?;
    let mut out = Tensor::<K>::zero(&k, n);
    for t in array(field(v, "terms")?, "terms")? {
        let legs = array(field(t, "legs")?, "legs")?;
        if legs.len() != K {
            return Err(bad(format!("expected {K} legs, got {}", legs.len())));
        }
        let mut idx = [GlIndex::new(1, 1); K];
        for (slot, leg) in idx.iter_mut().zip(legs) {
            let pair = array(leg, "leg")?;
            let get = |p: usize| -> Result<u16, JsonError> {
                let x = usize_of(pair.get(p).ok_or_else(|| bad("leg needs two indices"))?, "leg index")?;
                if x == 0 || x > n {
                    return Err(bad(format!("leg index {x} out of 1..{n}")));
                }
                Ok(x as u16)
            };
            *slot = GlIndex::new(get(0)?, get(1)?);
        }
        out.add_term(idx, parse_coeffs(&k, field(t, "coeff")?)?);
    }
    Ok(out)
}

pub fn triple(t: &AdmissibleTriple) -> Value {
    let tau: Map<String, Value> = t.tau.iter().map(|(a, b)| (a.to_string(), json!(b))).collect();
    json!({
        "n": t.n,
        "gamma1": t.gamma1,
        "gamma2": t.gamma2,
        "tau": tau,
    })
}

/// Parses and validates an admissible triple.
pub fn parse_triple(v: &Value) -> Result<AdmissibleTriple, JsonError> {
    let n = usize_of(field(v, "n")?, "n")?;
    let set = |key: &str| -> Result<BTreeSet<usize>, JsonError> {
        match v.get(key) {
            None => Ok(BTreeSet::new()),
            Some(a) => array(a, key)?.iter().map(|x| usize_of(x, key)).collect(),
        }
    };
    let mut tau = BTreeMap::new();
    if let Some(m) = v.get("tau") {
        let m = m.as_object().ok_or_else(|| bad("tau must be an object"))?;
        for (k, val) in m {
            let a: usize = k.parse().map_err(|_| bad(format!("tau key {k:?} is not an index")))?;
            tau.insert(a, usize_of(val, "tau value")?);
        }
    }
    let t = AdmissibleTriple {
        n,
        gamma1: set("gamma1")?,
        gamma2: set("gamma2")?,
        tau,
    };
    t.check().map_err(JsonError)?;
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{rat, ratio};
    use crate::lie::{rdj, Tensor2};

    #[test]
    fn elem_layout() {
        let k = TowerSpec::new(&[rat(-1), rat(2)], Some(0)).unwrap();
        let x = TowerElem::from_terms(&k, [(1, rat(3))]).unwrap();
        assert_eq!(
            elem(&x),
            json!({"generators": [-1, 2], "conj_index": 0, "coeffs": [{"subset": [0], "num": "3", "den": "1"}]})
        );
    }

    #[test]
    fn round_trips() {
        let k = TowerSpec::new(&[rat(5), rat(-3)], Some(0)).unwrap();
        let x = TowerElem::from_terms(&k, [(0, ratio(-7, 2)), (3, ratio(1, 9))]).unwrap();
        assert_eq!(parse_elem(&elem(&x)).unwrap(), x);
        let m = MatK::from_rows(&k, vec![vec![x.clone(), x.inv().unwrap()], vec![TowerElem::one(&k), x.conj()]]).unwrap();
        assert_eq!(parse_matrix(&matrix(&m)).unwrap(), m);
        let r = rdj(&k, 3);
        assert_eq!(parse_tensor::<2>(&tensor(&r)).unwrap(), r);
        let t = AdmissibleTriple::from_pairs(4, &[(1, 2), (2, 3)]);
        assert_eq!(triple(&t), json!({"n": 4, "gamma1": [1, 2], "gamma2": [2, 3], "tau": {"1": 2, "2": 3}}));
        assert_eq!(parse_triple(&triple(&t)).unwrap(), t);
    }

    #[test]
    fn rejects_malformed() {
        assert!(parse_triple(&json!({"n": 3, "gamma1": [1], "gamma2": [1], "tau": {"1": 1}})).is_err());
        assert!(parse_elem(&json!({"generators": [4], "coeffs": []})).is_err());
        assert!(parse_tensor::<2>(&json!({"n": 2, "spec": {"generators": []}, "terms": [{"legs": [[1, 3], [1, 1]], "coeff": []}]})).is_err());
        let z: Result<Tensor2, _> = parse_tensor(&json!({"n": 2, "spec": {"generators": []}, "terms": []}));
        assert!(z.unwrap().is_zero());
        assert!(parse_rational_value(&json!("1/0")).is_err());
    }
}
