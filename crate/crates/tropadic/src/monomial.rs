//! Toric monoids, terms `t^a χ^u`, and polynomials of the monoid algebra
//! `S[M]` with max-plus arithmetic.

use crate::error::{Error, Result};
use crate::geometry::{self, Cone, DualCone, IntVec};
use crate::scalar::FieldScalar;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MonoidKind {
    /// `M = ℤⁿ`.
    Lattice,
    /// `M = ℕⁿ`.
    Affine,
    /// `M = σ^∨ ∩ ℤⁿ`.
    Cone(Cone),
}

#[derive(Debug)]
struct Inner {
    n: usize,
    kind: MonoidKind,
    dual: Option<DualCone>,
    generators: OnceLock<Result<Vec<IntVec>>>,
}

/// A toric monoid `σ^∨ ∩ ℤⁿ`. Cheap to clone.
#[derive(Clone, Debug)]
pub struct ToricMonoid(Arc<Inner>);

impl ToricMonoid {
    fn build(n: usize, kind: MonoidKind, dual: Option<DualCone>) -> Self {
        ToricMonoid(Arc::new(Inner { n, kind, dual, generators: OnceLock::new() }))
    }

    pub fn lattice(n: usize) -> Self {
        Self::build(n, MonoidKind::Lattice, None)
    }

    pub fn affine(n: usize) -> Self {
        Self::build(n, MonoidKind::Affine, None)
    }

    /// Monoid of a strongly convex cone; the dual is computed here once.
    pub fn cone(sigma: Cone) -> Result<Self> {
        let dual = sigma.dual()?;
        Ok(Self::build(sigma.rank(), MonoidKind::Cone(sigma), Some(dual)))
    }

    pub fn rank(&self) -> usize {
        self.0.n
    }

    pub fn kind(&self) -> &MonoidKind {
        &self.0.kind
    }

    pub fn is_lattice(&self) -> bool {
        matches!(self.0.kind, MonoidKind::Lattice)
    }

    /// The cone `σ` with `M = σ^∨ ∩ ℤⁿ`.
    pub fn sigma(&self) -> Cone {
        match &self.0.kind {
            MonoidKind::Lattice => Cone::zero(self.0.n),
            MonoidKind::Affine => Cone::negative_orthant(self.0.n),
            MonoidKind::Cone(c) => c.clone(),
        }
    }

    pub fn contains(&self, u: &[i64]) -> Result<bool> {
        if u.len() != self.0.n {
            return Err(Error::DimensionMismatch { expected: self.0.n, got: u.len() });
        }
        Ok(match &self.0.kind {
            MonoidKind::Lattice => true,
            MonoidKind::Affine => u.iter().all(|&x| x >= 0),
            MonoidKind::Cone(_) => self.0.dual.as_ref().is_some_and(|d| d.contains(u)),
        })
    }

    /// Whether `u_j >= 0` on all of `M`.
    pub fn coordinate_nonnegative(&self, j: usize) -> Result<bool> {
        match &self.0.kind {
            MonoidKind::Lattice => Ok(false),
            MonoidKind::Affine => Ok(true),
            MonoidKind::Cone(c) => c.coordinate_nonnegative(j),
        }
    }

    /// A monoid generating set: `±e_i`, `e_i`, or a Hilbert basis.
    pub fn generators(&self) -> Result<Vec<IntVec>> {
        let n = self.0.n;
        let unit = |i: usize, s: i64| -> IntVec {
            (0..n).map(|j| if i == j { s } else { 0 }).collect()
        };
        match &self.0.kind {
            MonoidKind::Lattice => Ok((0..n).flat_map(|i| [unit(i, 1), unit(i, -1)]).collect()),
            MonoidKind::Affine => Ok((0..n).map(|i| unit(i, 1)).collect()),
            MonoidKind::Cone(c) => self
                .0
                .generators
                .get_or_init(|| {
                    if n > geometry::MAX_HILBERT_RANK {
                        Err(Error::NoGenerators(n))
                    } else {
                        geometry::hilbert_basis_of_cone(c)
                    }
                })
                .clone(),
        }
    }
}

impl PartialEq for ToricMonoid {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.n == other.0.n && self.0.kind == other.0.kind)
    }
}

impl Eq for ToricMonoid {}

impl fmt::Display for ToricMonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0.kind {
            MonoidKind::Lattice => write!(f, "ZZ^{}", self.0.n),
            MonoidKind::Affine => write!(f, "NN^{}", self.0.n),
            MonoidKind::Cone(c) => {
                f.write_str("cone{rays=[")?;
                for (i, r) in c.rays().iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{}", fmt_intvec(r))?;
                }
                write!(f, "]}}")
            }
        }
    }
}

pub(crate) fn fmt_intvec(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(","))
}

pub fn monoid_contains(m: &ToricMonoid, u: &[i64]) -> Result<bool> {
    m.contains(u)
}

/// A term `t^a χ^u`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub coeff: FieldScalar,
    pub exp: IntVec,
}

impl Term {
    pub fn new(coeff: impl Into<FieldScalar>, exp: IntVec) -> Self {
        Term { coeff: coeff.into(), exp }
    }

    pub fn mul(&self, o: &Term) -> Term {
        Term {
            coeff: &self.coeff + &o.coeff,
            exp: self.exp.iter().zip(&o.exp).map(|(a, b)| a + b).collect(),
        }
    }

    /// `self^β` for a positive integer `β`.
    pub fn pow(&self, beta: i64) -> Term {
        Term {
            coeff: self.coeff.mul_int(&beta.into()),
            exp: self.exp.iter().map(|x| x * beta).collect(),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t^{}", self.coeff)?;
        for (i, e) in self.exp.iter().enumerate() {
            if *e != 0 {
                write!(f, "*x{}^{}", i + 1, e)?;
            }
        }
        Ok(())
    }
}

/// A polynomial in canonical form: one coefficient per exponent.
#[derive(Clone, Debug)]
pub struct Polynomial {
    monoid: ToricMonoid,
    terms: BTreeMap<IntVec, FieldScalar>,
}

impl Polynomial {
    pub fn zero(monoid: &ToricMonoid) -> Self {
        Polynomial { monoid: monoid.clone(), terms: BTreeMap::new() }
    }

    /// Canonical sum of the given terms; exponents must lie in the monoid.
    pub fn from_terms(monoid: &ToricMonoid, terms: impl IntoIterator<Item = Term>) -> Result<Self> {
        let mut p = Self::zero(monoid);
        for t in terms {
            if !monoid.contains(&t.exp)? {
                return Err(Error::NotInMonoid(t.exp));
            }
            p.insert_max(t.exp, t.coeff);
        }
        Ok(p)
    }

    pub fn term(monoid: &ToricMonoid, t: Term) -> Result<Self> {
        Self::from_terms(monoid, [t])
    }

    fn insert_max(&mut self, exp: IntVec, coeff: FieldScalar) {
        match self.terms.get_mut(&exp) {
            Some(c) if *c >= coeff => {}
            Some(c) => *c = coeff,
            None => {
                self.terms.insert(exp, coeff);
            }
        }
    }

    pub fn monoid(&self) -> &ToricMonoid {
        &self.monoid
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: &[i64]) -> Option<&FieldScalar> {
        self.terms.get(exp)
    }

    pub fn terms(&self) -> impl Iterator<Item = Term> + '_ {
        self.terms.iter().map(|(u, a)| Term { coeff: a.clone(), exp: u.clone() })
    }

    pub fn exponents(&self) -> impl Iterator<Item = &IntVec> {
        self.terms.keys()
    }

    fn check(&self, o: &Polynomial) -> Result<()> {
        if self.monoid != o.monoid {
            return Err(Error::MonoidMismatch);
        }
        Ok(())
    }

    /// Exponentwise maximum.
    pub fn add(&self, o: &Polynomial) -> Result<Polynomial> {
        self.check(o)?;
        let mut p = self.clone();
        for (u, a) in &o.terms {
            p.insert_max(u.clone(), a.clone());
        }
        Ok(p)
    }

    /// Max-plus convolution.
    pub fn mul(&self, o: &Polynomial) -> Result<Polynomial> {
        self.check(o)?;
        let mut p = Self::zero(&self.monoid);
        for (u, a) in &self.terms {
            for (v, b) in &o.terms {
                let w: IntVec = u.iter().zip(v).map(|(x, y)| x + y).collect();
                p.insert_max(w, a + b);
            }
        }
        Ok(p)
    }

    /// Keeps only the terms satisfying `keep`.
    pub fn filter(&self, mut keep: impl FnMut(&Term) -> bool) -> Polynomial {
        Polynomial {
            monoid: self.monoid.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(u, a)| keep(&Term { coeff: (*a).clone(), exp: (*u).clone() }))
                .map(|(u, a)| (u.clone(), a.clone()))
                .collect(),
        }
    }
}

impl PartialEq for Polynomial {
    fn eq(&self, o: &Self) -> bool {
        self.monoid == o.monoid && self.terms == o.terms
    }
}

impl Eq for Polynomial {}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, t) in self.terms().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

pub fn poly_add(f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    f.add(g)
}

pub fn poly_mul(f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    f.mul(g)
}
