//! Convergent power series at a prime, at finite precision.
//!
//! A [`TruncatedSeries`] is a polynomial part together with a precision
//! radius `ε`: it stands for every series whose terms above `ε` are exactly
//! the stored ones. Values are lex tuples of the normalized base matrix, so
//! `Ψ(t^g) = (g, 0, …, 0)` and `π` reads off the real part.

use crate::error::{Error, Result};
use crate::geometry::IntVec;
use crate::monomial::{Polynomial, Term};
use crate::prime::{contains, PrimeCongruence};
use crate::scalar::{ExtScalar, FieldScalar, LexTuple};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

/// Base prime of a series: in `Cont` with trivial ideal-kernel, normalized.
fn admit_base(p: &PrimeCongruence) -> Result<PrimeCongruence> {
    if !p.in_cont() || !p.has_trivial_kernel() {
        return Err(Error::NotInContInterior);
    }
    Ok(p.normalize())
}

/// Whether two admissible bases define the same congruence.
pub(crate) fn same_prime(a: &PrimeCongruence, b: &PrimeCongruence) -> bool {
    a == b
        || (contains(a, b).is_ok_and(|c| c.holds) && contains(b, a).is_ok_and(|c| c.holds))
}

/// `Ψ(t^g)` under a normalized base of width `k`.
pub fn threshold(base: &PrimeCongruence, g: &FieldScalar) -> LexTuple {
    base.normalize().psi_eval(&Term::new(g.clone(), vec![0; base.rank()]))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    base: PrimeCongruence,
    poly: Polynomial,
    precision: Option<LexTuple>,
}

impl TruncatedSeries {
    /// `precision = None` (or bottom) means the series is its polynomial part.
    /// Stored terms at or below the radius are dropped.
    pub fn new(base: &PrimeCongruence, poly: Polynomial, precision: Option<LexTuple>) -> Result<Self> {
        let base = admit_base(base)?;
        if poly.monoid() != base.monoid() {
            return Err(Error::MonoidMismatch);
        }
        for t in poly.terms() {
            base.check_term(&t)?;
        }
        let precision = precision.filter(|e| !e.is_bottom());
        if let Some(e) = &precision {
            if e.width() != Some(base.width()) {
                return Err(Error::WidthMismatch(e.width().unwrap_or(0), base.width()));
            }
        }
        Ok(Self::assemble(base, poly, precision))
    }

    pub fn exact(base: &PrimeCongruence, poly: Polynomial) -> Result<Self> {
        Self::new(base, poly, None)
    }

    /// Series with radius `Ψ(t^g)`.
    pub fn with_radius(base: &PrimeCongruence, poly: Polynomial, g: &FieldScalar) -> Result<Self> {
        let eps = threshold(base, g);
        Self::new(base, poly, Some(eps))
    }

    fn assemble(base: PrimeCongruence, poly: Polynomial, precision: Option<LexTuple>) -> Self {
        let poly = match &precision {
            Some(e) => poly.filter(|t| base.psi_eval(t) > *e),
            None => poly,
        };
        TruncatedSeries { base, poly, precision }
    }

    pub fn base(&self) -> &PrimeCongruence {
        &self.base
    }

    pub fn poly(&self) -> &Polynomial {
        &self.poly
    }

    pub fn precision(&self) -> Option<&LexTuple> {
        self.precision.as_ref()
    }

    pub fn is_exact(&self) -> bool {
        self.precision.is_none()
    }

    /// The radius, bottom when exact.
    pub fn eps(&self) -> LexTuple {
        self.precision.clone().unwrap_or(LexTuple::Bottom)
    }

    /// Maximum term value of the stored part.
    fn stored_norm(&self) -> LexTuple {
        self.base.psi_poly(&self.poly)
    }

    /// `|f|` joined with the radius, used in precision propagation.
    fn norm_bound(&self) -> LexTuple {
        self.stored_norm().tadd(&self.eps())
    }

    fn check_base(&self, o: &TruncatedSeries) -> Result<()> {
        if same_prime(&self.base, &o.base) {
            Ok(())
        } else {
            Err(Error::BaseMismatch)
        }
    }
}

pub fn series_add(f: &TruncatedSeries, g: &TruncatedSeries) -> Result<TruncatedSeries> {
    f.check_base(g)?;
    let eps = f.eps().tadd(&g.eps());
    let poly = f.poly.add(&g.poly)?;
    Ok(TruncatedSeries::assemble(f.base.clone(), poly, Some(eps).filter(|e| !e.is_bottom())))
}

pub fn series_mul(f: &TruncatedSeries, g: &TruncatedSeries) -> Result<TruncatedSeries> {
    f.check_base(g)?;
    let eps = f.eps().tmul(&g.norm_bound()).tadd(&g.eps().tmul(&f.norm_bound()));
    let poly = f.poly.mul(&g.poly)?;
    Ok(TruncatedSeries::assemble(f.base.clone(), poly, Some(eps).filter(|e| !e.is_bottom())))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Distance {
    Exact(LexTuple),
    /// The true distance is at most the bound.
    BelowPrecision(LexTuple),
}

impl Distance {
    /// Exact value or upper bound.
    pub fn bound(&self) -> &LexTuple {
        match self {
            Distance::Exact(v) | Distance::BelowPrecision(v) => v,
        }
    }
}

/// `d_P(f, g)`: the largest value of `(f_u + g_u) χ^u` over exponents
/// where the stored coefficients differ.
pub fn distance(f: &TruncatedSeries, g: &TruncatedSeries) -> Result<Distance> {
    f.check_base(g)?;
    let mut exps: Vec<&IntVec> = f.poly.exponents().chain(g.poly.exponents()).collect();
    exps.sort();
    exps.dedup();
    let mut value = LexTuple::Bottom;
    for u in exps {
        let (a, b) = (f.poly.coeff(u), g.poly.coeff(u));
        if a == b {
            continue;
        }
        let c = match (a, b) {
            (Some(x), Some(y)) => x.max(y),
            (Some(x), None) | (None, Some(x)) => x,
            (None, None) => unreachable!(),
        };
        value = value.tadd(&f.base.psi_eval(&Term::new(c.clone(), u.clone())));
    }
    let eps = f.eps().tadd(&g.eps());
    if value > eps || (f.is_exact() && g.is_exact()) {
        Ok(Distance::Exact(value))
    } else {
        Ok(Distance::BelowPrecision(eps))
    }
}

/// `|f|` under the canonical extension of the base.
pub fn norm_at(f: &TruncatedSeries) -> Result<LexTuple> {
    let v = f.stored_norm();
    if f.is_exact() || v > f.eps() {
        Ok(v)
    } else {
        Err(Error::InsufficientPrecision)
    }
}

/// Value and leading terms of `f` at the closure of `P′`.
///
/// Tail terms satisfy `π|m|_{P′} <= π(ε)`, so the stored leading value must
/// be strictly above `π(ε)` to be reported.
pub fn eval_at(f: &TruncatedSeries, pprime: &PrimeCongruence) -> Result<(LexTuple, Vec<Term>)> {
    if !crate::spectrum::extends_to_cnvg(pprime, &f.base)? {
        return Err(Error::NotInImage);
    }
    let pn = pprime.normalize();
    let (v, terms) = pn.leading_terms(&f.poly);
    if !f.is_exact() && v.pi() <= f.eps().pi() {
        return Err(Error::InsufficientPrecision);
    }
    Ok((v, terms))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub start: u64,
    pub ratio: Term,
}

/// Affine family `n ↦ t^{a₀ + nδ} χ^{u₀ + n w}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesStream {
    pub coeff0: FieldScalar,
    pub coeff_step: FieldScalar,
    pub exp0: IntVec,
    pub exp_step: IntVec,
    pub cert: Option<Certificate>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Convergence {
    Certified,
    VerifiedToHorizon,
    /// Indices whose terms exceed `threshold`.
    Diverges { threshold: LexTuple, indices: Vec<u64> },
}

impl SeriesStream {
    pub fn new(coeff0: ExtScalar, coeff_step: ExtScalar, exp0: IntVec, exp_step: IntVec, cert: Option<Certificate>) -> Result<Self> {
        let (Some(a), Some(d)) = (coeff0.finite(), coeff_step.finite()) else {
            return Err(Error::InvalidStream("coefficients must be finite".into()));
        };
        if exp0.len() != exp_step.len() {
            return Err(Error::DimensionMismatch { expected: exp0.len(), got: exp_step.len() });
        }
        if exp_step.iter().all(|&x| x == 0) {
            return Err(Error::InvalidStream("exponent step must be nonzero".into()));
        }
        Ok(SeriesStream { coeff0: a.clone(), coeff_step: d.clone(), exp0, exp_step, cert })
    }

    pub fn term(&self, n: u64) -> Term {
        let ni = n as i64;
        let coeff = &self.coeff0 + &self.coeff_step.mul_int(&BigInt::from(ni));
        let exp = self.exp0.iter().zip(&self.exp_step).map(|(a, w)| a + ni * w).collect();
        Term::new(coeff, exp)
    }

    fn step(&self) -> Term {
        Term::new(self.coeff_step.clone(), self.exp_step.clone())
    }

    fn check(&self, p: &PrimeCongruence) -> Result<()> {
        if self.exp0.len() != p.rank() {
            return Err(Error::DimensionMismatch { expected: p.rank(), got: self.exp0.len() });
        }
        p.check_term(&Term::new(self.coeff0.clone(), self.exp0.clone()))?;
        p.check_term(&self.step())?;
        Ok(())
    }
}

fn certificate_holds(s: &SeriesStream, base: &PrimeCongruence, c: &Certificate, horizon: u64) -> bool {
    let r = base.psi_eval(&c.ratio);
    if !r.pi().finite().is_some_and(FieldScalar::is_negative) {
        return false;
    }
    (c.start..=c.start + horizon).all(|n| base.psi_eval(&s.term(n + 1)) <= base.psi_eval(&s.term(n)).tmul(&r))
}

/// Decides whether the stream's sum converges at `P`.
///
/// Without a supplied certificate the step term itself is tried.
pub fn converges(s: &SeriesStream, p: &PrimeCongruence, horizon: u64) -> Result<Convergence> {
    let base = admit_base(p)?;
    s.check(&base)?;
    let auto = Certificate { start: 0, ratio: s.step() };
    let cert = s.cert.as_ref().unwrap_or(&auto);
    if certificate_holds(s, &base, cert, horizon) {
        return Ok(Convergence::Certified);
    }
    let d = base.psi_eval(&s.step()).pi();
    let d = d.finite().expect("trivial kernel");
    if d.is_negative() {
        return Ok(Convergence::VerifiedToHorizon);
    }
    // π(Ψ(m_n)) never decreases, so every term exceeds Ψ(t^g) for g below π(Ψ(m_0)).
    let p0 = base.psi_eval(&s.term(0)).pi();
    let g = FieldScalar::from_rat(crate::linalg::Rat::from_integer(p0.finite().expect("trivial kernel").floor() - 1));
    let b = base.psi_eval(&Term::new(g, vec![0; base.rank()]));
    let indices: Vec<u64> = (0..horizon.max(1)).filter(|&n| base.psi_eval(&s.term(n)) > b).collect();
    Ok(Convergence::Diverges { threshold: b, indices })
}

const CERT_HORIZON: u64 = 32;

/// Indices `n` with `Ψ(m_n) >= b` (or `> b` when `strict`), for a certified stream.
fn indices_above(s: &SeriesStream, base: &PrimeCongruence, b: &LexTuple, strict: bool) -> Result<Vec<u64>> {
    let Some(pb) = b.pi().finite().cloned() else {
        return Err(Error::InvalidStream("threshold must be finite".into()));
    };
    let d = base.psi_eval(&s.step()).pi().finite().cloned().expect("trivial kernel");
    let p0 = base.psi_eval(&s.term(0)).pi().finite().cloned().expect("trivial kernel");
    // π(Ψ(m_n)) = p0 + n d must be at least π(b).
    let last = (&p0 - &pb).checked_div(&-d)?.floor();
    if last.is_negative() {
        return Ok(Vec::new());
    }
    let last = last.to_u64().ok_or_else(|| Error::InvalidStream("too many terms above threshold".into()))?;
    Ok((0..=last)
        .filter(|&n| {
            let v = base.psi_eval(&s.term(n));
            if strict { v > *b } else { v >= *b }
        })
        .collect())
}

fn require_certified(s: &SeriesStream, p: &PrimeCongruence) -> Result<PrimeCongruence> {
    let base = admit_base(p)?;
    match converges(s, &base, CERT_HORIZON)? {
        Convergence::Certified => Ok(base),
        _ => Err(Error::NotCertified),
    }
}

/// Sum of the terms with `Ψ >= b`.
pub fn partial_sum(s: &SeriesStream, p: &PrimeCongruence, b: &LexTuple) -> Result<Polynomial> {
    let base = require_certified(s, p)?;
    let idx = indices_above(s, &base, b, false)?;
    Polynomial::from_terms(base.monoid(), idx.into_iter().map(|n| s.term(n)))
}

/// The stream's sum as a series with radius `b`.
pub fn to_series(s: &SeriesStream, p: &PrimeCongruence, b: &LexTuple) -> Result<TruncatedSeries> {
    let base = require_certified(s, p)?;
    let idx = indices_above(s, &base, b, true)?;
    let poly = Polynomial::from_terms(base.monoid(), idx.into_iter().map(|n| s.term(n)))?;
    TruncatedSeries::new(&base, poly, Some(b.clone()))
}
