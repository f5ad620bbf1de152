//! Exact JSON encodings of the library types.

use serde_json::{json, Value};
use tropadic::text::{format_poly, format_prime, format_series};
use tropadic::{
    ContainmentWitness, ExtScalar, Face, FieldScalar, LexTuple, Polynomial, PrimeCongruence, Term,
    TruncatedSeries,
};

pub fn scalar(x: &FieldScalar) -> Value {
    json!({ "q": x.coords().iter().map(ToString::to_string).collect::<Vec<_>>() })
}

pub fn ext(x: &ExtScalar) -> Value {
    match x {
        ExtScalar::Bottom => json!("-inf"),
        ExtScalar::Finite(c) => scalar(c),
    }
}

/// A width-one tuple is written as its scalar.
pub fn tuple(t: &LexTuple) -> Value {
    match t.entries() {
        None => json!("-inf"),
        Some([x]) => scalar(x),
        Some(xs) => Value::Array(xs.iter().map(scalar).collect()),
    }
}

pub fn term(m: &Term) -> Value {
    json!({ "text": m.to_string(), "coeff": scalar(&m.coeff), "exp": m.exp })
}

pub fn poly(f: &Polynomial) -> Value {
    json!({ "text": format_poly(f), "terms": f.terms().map(|m| term(&m)).collect::<Vec<_>>() })
}

pub fn matrix(rows: &[Vec<ExtScalar>]) -> Value {
    Value::Array(rows.iter().map(|r| Value::Array(r.iter().map(ext).collect())).collect())
}

pub fn prime(p: &PrimeCongruence) -> Value {
    json!({
        "text": format_prime(p),
        "monoid": p.monoid().to_string(),
        "gamma": p.gamma().to_string(),
        "matrix": matrix(p.rows()),
    })
}

pub fn series(f: &TruncatedSeries) -> Value {
    json!({
        "text": format_series(f),
        "terms": poly(f.poly()),
        "precision": f.precision().map(tuple).unwrap_or(json!("exact")),
    })
}

/// Faces are listed by their rays.
pub fn face(p: &PrimeCongruence, f: &Face) -> Value {
    let sigma = p.monoid().sigma();
    json!(f.rays.iter().map(|&i| sigma.rays()[i].clone()).collect::<Vec<_>>())
}

pub fn containment_witness(w: &ContainmentWitness) -> Value {
    match w {
        ContainmentWitness::TermPair { m1, m2 } => json!({ "kind": "term_pair", "m1": term(m1), "m2": term(m2) }),
        ContainmentWitness::KernelMismatch { term: m } => json!({ "kind": "kernel_mismatch", "term": term(m) }),
    }
}
