//! Text grammars for scalars, polynomials, monoids, primes, series and streams.
//!
//! Every `format_*` output parses back to an equal value.

use crate::error::{Error, Result};
use crate::geometry::{Cone, IntVec};
use crate::linalg::Rat;
use crate::monomial::{fmt_intvec, Polynomial, Term, ToricMonoid};
use crate::prime::PrimeCongruence;
use crate::scalar::{CoefficientGroup, ExtScalar, FieldScalar, LexTuple};
use crate::series::{threshold, Certificate, SeriesStream, TruncatedSeries};
use num_bigint::BigInt;
use std::str::FromStr;

fn perr(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn parse_rat(s: &str) -> Result<Rat> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n = BigInt::from_str(n).map_err(|_| perr(format!("bad rational `{s}`")))?;
    let d = BigInt::from_str(d).map_err(|_| perr(format!("bad rational `{s}`")))?;
    if d == BigInt::from(0) || d.sign() == num_bigint::Sign::Minus {
        return Err(perr(format!("bad denominator in `{s}`")));
    }
    Ok(Rat::new(n, d))
}

/// `scalar ::= atom {('+'|'-') atom}`, `atom ::= ['-'] rational ['r2'|'r3'|'r6']`.
pub fn parse_scalar(s: &str) -> Result<FieldScalar> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(perr("empty scalar"));
    }
    let b = s.as_bytes();
    let mut coords: [Rat; 4] = Default::default();
    let mut i = 0;
    while i < b.len() {
        let mut neg = false;
        if i > 0 {
            match b[i] {
                b'+' => {}
                b'-' => neg = true,
                _ => return Err(perr(format!("expected sign in `{s}`"))),
            }
            i += 1;
        }
        if i < b.len() && b[i] == b'-' {
            neg = !neg;
            i += 1;
        }
        let start = i;
        while i < b.len() && (b[i].is_ascii_digit() || b[i] == b'/') {
            i += 1;
        }
        if start == i {
            return Err(perr(format!("expected digits in `{s}`")));
        }
        let mut q = parse_rat(&s[start..i])?;
        if neg {
            q = -q;
        }
        let slot = if i + 1 < b.len() && b[i] == b'r' {
            let k = match b[i + 1] {
                b'2' => 1,
                b'3' => 2,
                b'6' => 3,
                _ => return Err(perr(format!("bad radical in `{s}`"))),
            };
            i += 2;
            k
        } else {
            0
        };
        coords[slot] += q;
    }
    Ok(FieldScalar::from_coords(coords))
}

pub fn parse_ext(s: &str) -> Result<ExtScalar> {
    let t = s.trim();
    if t == "-inf" {
        Ok(ExtScalar::Bottom)
    } else {
        parse_scalar(t).map(ExtScalar::Finite)
    }
}

/// A lex tuple: `-inf` or `(<scalar>, …)`.
pub fn parse_tuple(s: &str) -> Result<LexTuple> {
    let t = s.trim();
    if t == "-inf" {
        return Ok(LexTuple::Bottom);
    }
    let inner = t
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| perr(format!("expected tuple, got `{t}`")))?;
    Ok(LexTuple::Tuple(split_top(inner, ',').iter().map(|x| parse_scalar(x)).collect::<Result<_>>()?))
}

/// Splits on `sep` outside of brackets and braces.
fn split_top(s: &str, sep: char) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for c in s.chars() {
        match c {
            '[' | '{' | '(' => depth += 1,
            ']' | '}' | ')' => depth -= 1,
            _ => {}
        }
        if c == sep && depth == 0 {
            out.push(std::mem::take(&mut cur));
        } else {
            cur.push(c);
        }
    }
    if !cur.trim().is_empty() || !out.is_empty() {
        out.push(cur);
    }
    out.into_iter().map(|x| x.trim().to_string()).filter(|x| !x.is_empty()).collect()
}

pub fn parse_intvec(s: &str) -> Result<IntVec> {
    let inner = s
        .trim()
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| perr(format!("expected integer list, got `{s}`")))?;
    split_top(inner, ',')
        .iter()
        .map(|x| x.parse::<i64>().map_err(|_| perr(format!("bad integer `{x}`"))))
        .collect()
}

/// `ZZ^n | NN^n | cone{rays=[[…],…]}`.
pub fn parse_monoid(s: &str) -> Result<ToricMonoid> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let rank = |r: &str| r.parse::<usize>().map_err(|_| perr(format!("bad rank in `{t}`")));
    if let Some(r) = t.strip_prefix("ZZ^") {
        return Ok(ToricMonoid::lattice(rank(r)?));
    }
    if let Some(r) = t.strip_prefix("NN^") {
        return Ok(ToricMonoid::affine(rank(r)?));
    }
    let body = t
        .strip_prefix("cone{rays=")
        .and_then(|r| r.strip_suffix('}'))
        .ok_or_else(|| perr(format!("unknown monoid `{t}`")))?;
    let inner = body
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| perr("expected ray list"))?;
    let rays: Vec<IntVec> = split_top(inner, ',').iter().map(|r| parse_intvec(r)).collect::<Result<_>>()?;
    let n = rays.first().map(Vec::len).ok_or_else(|| perr("cone needs at least one ray"))?;
    ToricMonoid::cone(Cone::new(n, rays)?)
}

pub fn format_monoid(m: &ToricMonoid) -> String {
    m.to_string()
}

/// `QQ | full | span[<scalar>,…]`.
pub fn parse_gamma(s: &str) -> Result<CoefficientGroup> {
    let t = s.trim();
    match t {
        "QQ" => Ok(CoefficientGroup::qq()),
        "full" => Ok(CoefficientGroup::full()),
        _ => {
            let inner = t
                .strip_prefix("span[")
                .and_then(|r| r.strip_suffix(']'))
                .ok_or_else(|| perr(format!("unknown coefficient group `{t}`")))?;
            let basis = split_top(inner, ',').iter().map(|x| parse_scalar(x)).collect::<Result<_>>()?;
            CoefficientGroup::span(basis)
        }
    }
}

pub fn format_gamma(g: &CoefficientGroup) -> String {
    g.to_string()
}

/// `term ::= 't^' ext {'*' 'x' index '^' integer}` with 1-based indices.
pub fn parse_term(s: &str, n: usize) -> Result<Term> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut parts = t.split('*');
    let head = parts.next().unwrap_or_default();
    let coeff = head
        .strip_prefix("t^")
        .ok_or_else(|| perr(format!("term must start with `t^`: `{t}`")))?;
    let coeff = match parse_ext(coeff)? {
        ExtScalar::Finite(c) => c,
        ExtScalar::Bottom => return Err(perr("the zero term has no exponent; write `0`")),
    };
    let mut exp = vec![0i64; n];
    for v in parts {
        let body = v.strip_prefix('x').ok_or_else(|| perr(format!("bad variable `{v}`")))?;
        let (idx, e) = body.split_once('^').unwrap_or((body, "1"));
        let idx: usize = idx.parse().map_err(|_| perr(format!("bad variable index `{v}`")))?;
        if idx == 0 || idx > n {
            return Err(perr(format!("variable index {idx} out of range 1..={n}")));
        }
        let e: i64 = e.parse().map_err(|_| perr(format!("bad exponent `{v}`")))?;
        exp[idx - 1] += e;
    }
    Ok(Term { coeff, exp })
}

/// Splits a polynomial at the `+` signs that start a new term.
fn split_terms(s: &str) -> Vec<String> {
    let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut out = Vec::new();
    let mut cur = String::new();
    for (i, &c) in chars.iter().enumerate() {
        if c == '+' && chars.get(i + 1) == Some(&'t') {
            out.push(std::mem::take(&mut cur));
        } else {
            cur.push(c);
        }
    }
    out.push(cur);
    out
}

/// `poly ::= term {'+' term} | '0'`.
pub fn parse_poly(s: &str, m: &ToricMonoid) -> Result<Polynomial> {
    if s.trim() == "0" {
        return Ok(Polynomial::zero(m));
    }
    let terms = split_terms(s).iter().map(|t| parse_term(t, m.rank())).collect::<Result<Vec<_>>>()?;
    Polynomial::from_terms(m, terms)
}

pub fn format_poly(f: &Polynomial) -> String {
    f.to_string()
}

fn fields(s: &str, kind: &str) -> Result<Vec<(String, String)>> {
    let t = s.trim();
    let body = t
        .strip_prefix(kind)
        .map(str::trim_start)
        .and_then(|r| r.strip_prefix('{'))
        .and_then(|r| r.strip_suffix('}'))
        .ok_or_else(|| perr(format!("expected `{kind} {{ … }}`")))?;
    split_top(body, ';')
        .into_iter()
        .map(|kv| {
            let (k, v) = kv.split_once(':').ok_or_else(|| perr(format!("expected `key: value`, got `{kv}`")))?;
            Ok((k.trim().to_string(), v.trim().to_string()))
        })
        .collect()
}

fn field<'a>(fs: &'a [(String, String)], key: &str) -> Result<&'a str> {
    fs.iter()
        .find(|(k, _)| k == key)
        .map(|(_, v)| v.as_str())
        .ok_or_else(|| perr(format!("missing field `{key}`")))
}

pub fn parse_matrix(s: &str) -> Result<Vec<Vec<ExtScalar>>> {
    let inner = s
        .trim()
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| perr("expected matrix `[[…],…]`"))?;
    split_top(inner, ',')
        .iter()
        .map(|row| {
            let r = row
                .strip_prefix('[')
                .and_then(|r| r.strip_suffix(']'))
                .ok_or_else(|| perr(format!("bad matrix row `{row}`")))?;
            split_top(r, ',').iter().map(|x| parse_ext(x)).collect()
        })
        .collect()
}

/// `prime { monoid: …; gamma: …; matrix: [[…],…] }`.
pub fn parse_prime(s: &str) -> Result<PrimeCongruence> {
    let fs = fields(s, "prime")?;
    let monoid = parse_monoid(field(&fs, "monoid")?)?;
    let gamma = parse_gamma(field(&fs, "gamma")?)?;
    let rows = parse_matrix(field(&fs, "matrix")?)?;
    PrimeCongruence::new(monoid, gamma, rows)
}

pub fn format_matrix(rows: &[Vec<ExtScalar>]) -> String {
    let rows: Vec<String> = rows
        .iter()
        .map(|r| format!("[{}]", r.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")))
        .collect();
    format!("[{}]", rows.join(", "))
}

pub fn format_prime(p: &PrimeCongruence) -> String {
    format!(
        "prime {{ monoid: {}; gamma: {}; matrix: {} }}",
        p.monoid(),
        p.gamma(),
        format_matrix(p.rows())
    )
}

/// `series { prime: <ref>; terms: <poly>; precision: <ext> | <tuple> | exact }`.
///
/// `resolve` turns the prime reference into a prime; an inline `prime { … }`
/// is accepted directly.
pub fn parse_series(s: &str, resolve: impl Fn(&str) -> Result<PrimeCongruence>) -> Result<TruncatedSeries> {
    let fs = fields(s, "series")?;
    let r = field(&fs, "prime")?;
    let p = if r.starts_with("prime") { parse_prime(r)? } else { resolve(r)? };
    let poly = parse_poly(field(&fs, "terms")?, p.monoid())?;
    let prec = field(&fs, "precision")?;
    if prec == "exact" {
        return TruncatedSeries::exact(&p, poly);
    }
    if prec.starts_with('(') {
        return TruncatedSeries::new(&p, poly, Some(parse_tuple(prec)?));
    }
    match parse_ext(prec)? {
        ExtScalar::Bottom => TruncatedSeries::exact(&p, poly),
        ExtScalar::Finite(g) => TruncatedSeries::with_radius(&p, poly, &g),
    }
}

/// Precision as an ext scalar when it is `Ψ(t^g)`, otherwise as a tuple.
pub fn format_precision(f: &TruncatedSeries) -> String {
    match f.precision() {
        None => "exact".into(),
        Some(e) => {
            let g = e.entries().expect("finite")[0].clone();
            if threshold(f.base(), &g) == *e {
                g.to_string()
            } else {
                e.to_string()
            }
        }
    }
}

/// Formats with the base inlined.
pub fn format_series(f: &TruncatedSeries) -> String {
    format!(
        "series {{ prime: {}; terms: {}; precision: {} }}",
        format_prime(f.base()),
        f.poly(),
        format_precision(f)
    )
}

/// `stream { coeff0: …; coeff_step: …; exp0: […]; exp_step: […]; cert: {N: int, ratio: <term>} }`.
pub fn parse_stream(s: &str) -> Result<SeriesStream> {
    let fs = fields(s, "stream")?;
    let exp0 = parse_intvec(field(&fs, "exp0")?)?;
    let n = exp0.len();
    let cert = match fs.iter().find(|(k, _)| k == "cert") {
        None => None,
        Some((_, v)) => {
            let inner = v
                .strip_prefix('{')
                .and_then(|r| r.strip_suffix('}'))
                .ok_or_else(|| perr("expected `{N: …, ratio: …}`"))?;
            let kv: Vec<(String, String)> = split_top(inner, ',')
                .iter()
                .map(|x| {
                    let (k, v) = x.split_once(':').ok_or_else(|| perr(format!("bad certificate entry `{x}`")))?;
                    Ok((k.trim().to_string(), v.trim().to_string()))
                })
                .collect::<Result<_>>()?;
            let start = field(&kv, "N")?.parse::<u64>().map_err(|_| perr("bad certificate index"))?;
            let ratio = parse_term(field(&kv, "ratio")?, n)?;
            Some(Certificate { start, ratio })
        }
    };
    SeriesStream::new(
        parse_ext(field(&fs, "coeff0")?)?,
        parse_ext(field(&fs, "coeff_step")?)?,
        exp0,
        parse_intvec(field(&fs, "exp_step")?)?,
        cert,
    )
}

pub fn format_stream(s: &SeriesStream) -> String {
    let cert = s
        .cert
        .as_ref()
        .map(|c| format!("; cert: {{N: {}, ratio: {}}}", c.start, c.ratio))
        .unwrap_or_default();
    format!(
        "stream {{ coeff0: {}; coeff_step: {}; exp0: {}; exp_step: {}{} }}",
        s.coeff0,
        s.coeff_step,
        fmt_intvec(&s.exp0),
        fmt_intvec(&s.exp_step),
        cert
    )
}
