//! Prime congruences on `S[M]` given by defining matrices.
//!
//! A defining matrix `C` has `k` rows and `n + 1` columns; column 0 is the
//! coefficient column. A term `t^a χ^u` evaluates to the lex tuple
//! `Ψ(t^a χ^u) = C · (a; u)`, and two polynomials are congruent exactly when
//! their values (maxima over terms) agree.

use crate::error::{Error, Result};
use crate::geometry::{dot_i, Cone, Face, IntVec};
use crate::linalg::{self, Rat};
use crate::monomial::{MonoidKind, Polynomial, Term, ToricMonoid};
use crate::scalar::{CoefficientGroup, ExtScalar, FieldScalar, LexTuple};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeCongruence {
    monoid: ToricMonoid,
    gamma: CoefficientGroup,
    rows: Vec<Vec<ExtScalar>>,
}

/// The ideal-kernel of a prime: its bottom columns, the face `τ` of `σ`
/// with kernel `{t^a χ^u : u ∉ τ^⊥}`, and a basis of `ℤⁿ ∩ τ^⊥`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelFace {
    pub bottom_columns: Vec<usize>,
    pub face: Face,
    pub perp_basis: Vec<IntVec>,
}

impl KernelFace {
    pub fn is_trivial(&self) -> bool {
        self.face.is_zero()
    }
}

/// Outcome of a containment test `P′ ⊆ P`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Containment {
    pub holds: bool,
    pub witness: Option<ContainmentWitness>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ContainmentWitness {
    /// `m1 <= m2` under `P′` but `m1 > m2` under `P`.
    TermPair { m1: Term, m2: Term },
    /// A term in the ideal-kernel of exactly one of the two primes.
    KernelMismatch { term: Term },
}

impl PrimeCongruence {
    pub fn new(monoid: ToricMonoid, gamma: CoefficientGroup, rows: Vec<Vec<ExtScalar>>) -> Result<Self> {
        let n = monoid.rank();
        if rows.is_empty() {
            return Err(Error::InvalidMatrix("matrix has no rows".into()));
        }
        for r in &rows {
            if r.len() != n + 1 {
                return Err(Error::DimensionMismatch { expected: n + 1, got: r.len() });
            }
        }
        if rows.iter().any(|r| r[0].is_bottom()) {
            return Err(Error::InvalidMatrix("coefficient column contains -inf".into()));
        }
        let first: Vec<FieldScalar> = rows.iter().map(|r| r[0].finite().unwrap().clone()).collect();
        if LexTuple::Tuple(first) < LexTuple::zero(rows.len()) {
            return Err(Error::InvalidMatrix("coefficient column is lexicographically negative".into()));
        }
        for j in 1..=n {
            let bottoms = rows.iter().filter(|r| r[j].is_bottom()).count();
            if bottoms != 0 && bottoms != rows.len() {
                return Err(Error::InvalidMatrix(format!("column {j} is partially -inf")));
            }
            if bottoms != 0 && !monoid.coordinate_nonnegative(j - 1)? {
                return Err(Error::InvalidMatrix(format!(
                    "column {j} is -inf but the coordinate is not nonnegative on the monoid"
                )));
            }
        }
        Ok(PrimeCongruence { monoid, gamma, rows })
    }

    /// Convenience constructor for matrices without `-inf` entries.
    pub fn from_finite(monoid: ToricMonoid, gamma: CoefficientGroup, rows: Vec<Vec<FieldScalar>>) -> Result<Self> {
        Self::new(
            monoid,
            gamma,
            rows.into_iter()
                .map(|r| r.into_iter().map(ExtScalar::Finite).collect())
                .collect(),
        )
    }

    pub fn monoid(&self) -> &ToricMonoid {
        &self.monoid
    }

    pub fn gamma(&self) -> &CoefficientGroup {
        &self.gamma
    }

    pub fn rows(&self) -> &[Vec<ExtScalar>] {
        &self.rows
    }

    /// Number of rows.
    pub fn width(&self) -> usize {
        self.rows.len()
    }

    pub fn rank(&self) -> usize {
        self.monoid.rank()
    }

    /// Same matrix on another monoid of the same rank.
    pub fn with_monoid(&self, monoid: ToricMonoid) -> Result<Self> {
        Self::new(monoid, self.gamma.clone(), self.rows.clone())
    }

    /// Lattice coordinates (0-based) whose matrix column is `-inf`.
    pub fn bottom_columns(&self) -> Vec<usize> {
        (0..self.rank()).filter(|&j| self.rows[0][j + 1].is_bottom()).collect()
    }

    /// Finite part of row `r`, with bottom columns dropped.
    pub(crate) fn finite_row(&self, r: usize) -> Vec<FieldScalar> {
        self.rows[r].iter().filter_map(|e| e.finite().cloned()).collect()
    }

    pub fn check_term(&self, m: &Term) -> Result<()> {
        if !self.monoid.contains(&m.exp)? {
            return Err(Error::NotInMonoid(m.exp.clone()));
        }
        if !self.gamma.contains(&m.coeff) {
            return Err(Error::NotInGamma(m.coeff.to_string()));
        }
        Ok(())
    }

    pub fn psi_eval(&self, m: &Term) -> LexTuple {
        let mut out = Vec::with_capacity(self.rows.len());
        for row in &self.rows {
            let mut acc = &row[0].finite().cloned().unwrap_or_default() * &m.coeff;
            for (e, u) in row[1..].iter().zip(&m.exp) {
                match e {
                    ExtScalar::Finite(c) => {
                        if *u != 0 {
                            acc += &c.mul_int(&BigInt::from(*u));
                        }
                    }
                    ExtScalar::Bottom => {
                        debug_assert!(*u >= 0, "negative exponent on a -inf column");
                        if *u != 0 {
                            return LexTuple::Bottom;
                        }
                    }
                }
            }
            out.push(acc);
        }
        LexTuple::Tuple(out)
    }

    /// `Ψ(f)`: the maximum over the terms of `f`; bottom for `f = 0`.
    pub fn psi_poly(&self, f: &Polynomial) -> LexTuple {
        f.terms()
            .map(|t| self.psi_eval(&t))
            .max()
            .unwrap_or(LexTuple::Bottom)
    }

    pub fn compare_terms(&self, m1: &Term, m2: &Term) -> Ordering {
        self.psi_eval(m1).cmp(&self.psi_eval(m2))
    }

    /// The value of `f` and all terms attaining it.
    pub fn leading_terms(&self, f: &Polynomial) -> (LexTuple, Vec<Term>) {
        let vals: Vec<(Term, LexTuple)> = f.terms().map(|t| {
            let v = self.psi_eval(&t);
            (t, v)
        }).collect();
        let Some(best) = vals.iter().map(|(_, v)| v).max().cloned() else {
            return (LexTuple::Bottom, Vec::new());
        };
        let terms = vals.into_iter().filter(|(_, v)| *v == best).map(|(t, _)| t).collect();
        (best, terms)
    }

    /// Downward Gaussian elimination with positive row scaling.
    ///
    /// Each pivot row is divided by the absolute value of its leading entry
    /// and used to clear that column in the rows below; zero rows are
    /// removed (a single zero row is kept if nothing else remains).
    pub fn normalize(&self) -> PrimeCongruence {
        let bottoms = self.bottom_columns();
        let mut rows: Vec<Vec<FieldScalar>> = (0..self.rows.len()).map(|r| self.finite_row(r)).collect();
        let mut out: Vec<Vec<FieldScalar>> = Vec::new();
        for i in 0..rows.len() {
            let row = rows[i].clone();
            let Some(c) = row.iter().position(|x| !x.is_zero()) else {
                continue;
            };
            let inv = row[c].abs().inverse().expect("nonzero pivot");
            let pivot: Vec<FieldScalar> = row.iter().map(|x| x * &inv).collect();
            for below in rows.iter_mut().skip(i + 1) {
                if !below[c].is_zero() {
                    let f = &below[c] * &pivot[c].inverse().expect("nonzero pivot");
                    for (b, p) in below.iter_mut().zip(&pivot) {
                        *b = &*b - &(&f * p);
                    }
                }
            }
            out.push(pivot);
        }
        if out.is_empty() {
            out.push(vec![FieldScalar::zero(); self.rank() + 1 - bottoms.len()]);
        }
        let rows = out
            .into_iter()
            .map(|fin| reinsert_bottoms(fin, &bottoms, self.rank()))
            .collect();
        PrimeCongruence { monoid: self.monoid.clone(), gamma: self.gamma.clone(), rows }
    }

    /// Membership in `Cont_S`: the first nonzero row has a positive coefficient entry.
    pub fn in_cont(&self) -> bool {
        (0..self.rows.len())
            .map(|r| self.finite_row(r))
            .find(|row| row.iter().any(|x| !x.is_zero()))
            .is_some_and(|row| row[0].is_positive())
    }

    pub fn ideal_kernel_face(&self) -> Result<KernelFace> {
        let n = self.rank();
        let bottoms = self.bottom_columns();
        let identity: Vec<IntVec> = (0..n).map(|i| unit(n, i, 1)).collect();
        match self.monoid.kind() {
            MonoidKind::Lattice => Ok(KernelFace { bottom_columns: vec![], face: Face { rays: vec![] }, perp_basis: identity }),
            MonoidKind::Affine => Ok(KernelFace {
                face: Face { rays: bottoms.clone() },
                perp_basis: (0..n).filter(|j| !bottoms.contains(j)).map(|j| unit(n, j, 1)).collect(),
                bottom_columns: bottoms,
            }),
            MonoidKind::Cone(c) => {
                if bottoms.is_empty() {
                    return Ok(KernelFace { bottom_columns: vec![], face: Face { rays: vec![] }, perp_basis: identity });
                }
                let neg: Vec<IntVec> = bottoms.iter().map(|&j| unit(n, j, -1)).collect();
                let face = c.face_containing(&neg)?;
                let perp_basis = c.perp_lattice(&face);
                Ok(KernelFace { bottom_columns: bottoms, face, perp_basis })
            }
        }
    }

    pub fn has_trivial_kernel(&self) -> bool {
        self.bottom_columns().is_empty()
    }

    pub fn maximal_above(&self) -> Result<PrimeCongruence> {
        if !self.in_cont() {
            return Err(Error::NotInCont);
        }
        let mut n = self.normalize();
        n.rows.truncate(1);
        Ok(n)
    }

    /// Pullback along the sublattice spanned by `basis`: coefficient column
    /// unchanged, new columns `C · b`. The result lives on `M ∩ span(basis)`
    /// written in basis coordinates.
    pub fn restrict(&self, basis: &[IntVec]) -> Result<PrimeCongruence> {
        let n = self.rank();
        for b in basis {
            if b.len() != n {
                return Err(Error::DimensionMismatch { expected: n, got: b.len() });
            }
        }
        let mut rows = Vec::with_capacity(self.rows.len());
        for row in &self.rows {
            let mut out = vec![row[0].clone()];
            for b in basis {
                let mut acc = FieldScalar::zero();
                for (j, &bj) in b.iter().enumerate() {
                    if bj == 0 {
                        continue;
                    }
                    match &row[j + 1] {
                        ExtScalar::Finite(c) => acc += &c.mul_int(&BigInt::from(bj)),
                        ExtScalar::Bottom => return Err(Error::BottomColumnHit),
                    }
                }
                out.push(ExtScalar::Finite(acc));
            }
            rows.push(out);
        }
        let monoid = pullback_monoid(&self.monoid, basis)?;
        PrimeCongruence::new(monoid, self.gamma.clone(), rows)
    }

    /// Leading indices (1-based) realized by term values.
    pub fn arch_classes(&self) -> Result<Vec<usize>> {
        if !self.in_cont() {
            return Err(Error::NotInCont);
        }
        let k = self.ideal_kernel_face()?;
        let r = self.restrict(&k.perp_basis)?;
        let forms = r.linear_forms();
        let mut w = identity_basis(forms.dim);
        let mut out = Vec::new();
        for (i, f) in forms.rows.iter().enumerate() {
            if !f.vanishes_on(&w) {
                out.push(i + 1);
                w = f.kernel_on(&w);
            }
        }
        Ok(out)
    }

    /// The rows of a kernel-free matrix as Q-linear forms on the space of
    /// log-term vectors `(Γ-coordinates; u)`.
    pub(crate) fn linear_forms(&self) -> LinearForms {
        debug_assert!(self.has_trivial_kernel());
        let gb = self.gamma.basis();
        let rows = (0..self.rows.len())
            .map(|r| RowForm::new(&self.finite_row(r), &gb))
            .collect();
        LinearForms { dim: gb.len() + self.rank(), rows }
    }
}

fn unit(n: usize, i: usize, s: i64) -> IntVec {
    (0..n).map(|j| if i == j { s } else { 0 }).collect()
}

fn reinsert_bottoms(fin: Vec<FieldScalar>, bottoms: &[usize], n: usize) -> Vec<ExtScalar> {
    let mut it = fin.into_iter();
    let mut row = vec![ExtScalar::Finite(it.next().expect("coefficient entry"))];
    for j in 0..n {
        if bottoms.contains(&j) {
            row.push(ExtScalar::Bottom);
        } else {
            row.push(ExtScalar::Finite(it.next().expect("finite entry")));
        }
    }
    row
}

fn pullback_monoid(m: &ToricMonoid, basis: &[IntVec]) -> Result<ToricMonoid> {
    let k = basis.len();
    match m.kind() {
        MonoidKind::Lattice => return Ok(ToricMonoid::lattice(k)),
        MonoidKind::Affine => {
            let units: Vec<Option<usize>> = basis
                .iter()
                .map(|b| {
                    let nz: Vec<usize> = (0..b.len()).filter(|&j| b[j] != 0).collect();
                    (nz.len() == 1 && b[nz[0]] == 1).then(|| nz[0])
                })
                .collect();
            let mut idx: Vec<usize> = units.iter().flatten().copied().collect();
            idx.sort_unstable();
            idx.dedup();
            if idx.len() == k && units.iter().all(Option::is_some) {
                return Ok(ToricMonoid::affine(k));
            }
        }
        MonoidKind::Cone(_) => {}
    }
    let rays: Vec<IntVec> = m
        .sigma()
        .rays()
        .iter()
        .map(|v| basis.iter().map(|b| dot_i(v, b)).collect::<IntVec>())
        .filter(|r| r.iter().any(|&x| x != 0))
        .collect();
    if rays.is_empty() {
        return Ok(ToricMonoid::lattice(k));
    }
    ToricMonoid::cone(Cone::new(k, rays)?)
}

pub(crate) fn identity_basis(d: usize) -> Vec<Vec<Rat>> {
    (0..d)
        .map(|i| (0..d).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect())
        .collect()
}

/// A field-valued Q-linear form, stored as its four rational component forms.
#[derive(Clone, Debug)]
pub(crate) struct RowForm {
    pub comps: [Vec<Rat>; 4],
}

impl RowForm {
    /// Form `(q; u) -> c_0 · Σ q_i γ_i + Σ c_j u_j` for a finite row `c`.
    pub fn new(row: &[FieldScalar], gamma_basis: &[FieldScalar]) -> Self {
        let mut cols: Vec<FieldScalar> = gamma_basis.iter().map(|g| &row[0] * g).collect();
        cols.extend(row[1..].iter().cloned());
        let comps = std::array::from_fn(|t| cols.iter().map(|x| x.coords()[t].clone()).collect());
        RowForm { comps }
    }

    pub fn eval(&self, v: &[Rat]) -> FieldScalar {
        FieldScalar::from_coords(std::array::from_fn(|t| linalg::dot(&self.comps[t], v)))
    }

    /// Values on each basis vector of `w`.
    pub fn values_on(&self, w: &[Vec<Rat>]) -> Vec<FieldScalar> {
        w.iter().map(|b| self.eval(b)).collect()
    }

    pub fn vanishes_on(&self, w: &[Vec<Rat>]) -> bool {
        w.iter().all(|b| self.comps.iter().all(|c| linalg::dot(c, b).is_zero()))
    }

    /// Basis (in ambient coordinates) of `w ∩ ker(self)`.
    pub fn kernel_on(&self, w: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
        if w.is_empty() {
            return Vec::new();
        }
        let m: Vec<Vec<Rat>> = self
            .comps
            .iter()
            .map(|c| w.iter().map(|b| linalg::dot(c, b)).collect())
            .collect();
        combine(w, &linalg::nullspace(&m, w.len()))
    }
}

/// `Σ_j coeffs_j · w_j` for each coefficient vector.
pub(crate) fn combine(w: &[Vec<Rat>], coeffs: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let d = w.first().map_or(0, Vec::len);
    coeffs
        .iter()
        .map(|c| {
            let mut v = vec![Rat::zero(); d];
            for (cj, wj) in c.iter().zip(w) {
                if !cj.is_zero() {
                    for (x, y) in v.iter_mut().zip(wj) {
                        *x += cj * y;
                    }
                }
            }
            v
        })
        .collect()
}

#[derive(Clone, Debug)]
pub(crate) struct LinearForms {
    pub dim: usize,
    pub rows: Vec<RowForm>,
}

impl LinearForms {
    pub fn eval(&self, v: &[Rat]) -> LexTuple {
        LexTuple::Tuple(self.rows.iter().map(|r| r.eval(v)).collect())
    }
}

/// Where the containment recursion stopped.
enum Failure {
    /// `c` does not vanish on `w` but every row of `C′` does.
    Exhausted { w: Vec<Vec<Rat>>, c: RowForm },
    /// First surviving rows are not nonnegatively proportional on `w`.
    NotProportional { w: Vec<Vec<Rat>>, c: RowForm, cp: RowForm },
}

/// Decides `∀v ∈ W: C′v >=lex 0 ⇒ Cv >=lex 0` on `W = Q^dim`.
fn cone_procedure(fp: &LinearForms, f: &LinearForms) -> std::result::Result<(), Failure> {
    let mut w = identity_basis(f.dim);
    let (mut i, mut j) = (0, 0);
    loop {
        while j < f.rows.len() && f.rows[j].vanishes_on(&w) {
            j += 1;
        }
        while i < fp.rows.len() && fp.rows[i].vanishes_on(&w) {
            i += 1;
        }
        if j == f.rows.len() {
            return Ok(());
        }
        if i == fp.rows.len() {
            return Err(Failure::Exhausted { w, c: f.rows[j].clone() });
        }
        let a = f.rows[j].values_on(&w);
        let b = fp.rows[i].values_on(&w);
        let i0 = b.iter().position(|x| !x.is_zero()).expect("nonvanishing form");
        let lambda = a[i0].checked_div(&b[i0]).expect("nonzero");
        let proportional = a.iter().zip(&b).all(|(x, y)| *x == &lambda * y);
        if proportional && lambda.is_positive() {
            w = fp.rows[i].kernel_on(&w);
            i += 1;
            j += 1;
            continue;
        }
        return Err(Failure::NotProportional { w, c: f.rows[j].clone(), cp: fp.rows[i].clone() });
    }
}

/// Small-vector search for `v` with `C′v >=lex 0 > Cv`, ordered by max-norm.
fn search_violation(fp: &LinearForms, f: &LinearForms) -> Option<Vec<Rat>> {
    let d = f.dim;
    // About a thousand probes at most; the exact construction covers the rest.
    let max_r = match d {
        0..=2 => 4,
        3 => 3,
        4 => 2,
        5 => 1,
        _ => 0,
    };
    for r in 1..=max_r {
        let mut v = vec![-r; d];
        loop {
            if v.iter().any(|x| x.abs() == r) {
                let q: Vec<Rat> = v.iter().map(|&x| Rat::from_integer(x.into())).collect();
                let zero = LexTuple::zero(1);
                if fp.eval(&q) >= zero && f.eval(&q) < zero {
                    return Some(q);
                }
            }
            let mut k = d;
            loop {
                if k == 0 {
                    break;
                }
                k -= 1;
                if v[k] < r {
                    v[k] += 1;
                    for x in v.iter_mut().skip(k + 1) {
                        *x = -r;
                    }
                    break;
                }
                if k == 0 {
                    k = usize::MAX;
                    break;
                }
            }
            if k == usize::MAX || d == 0 {
                break;
            }
        }
    }
    None
}

/// Rational `x` close enough to the field element `target` that `ok(x)` holds;
/// refines dyadically.
fn dyadic_near(target: &[FieldScalar], ok: impl Fn(&[Rat]) -> bool) -> Vec<Rat> {
    for bits in 0..200u32 {
        let scale = BigInt::one() << bits;
        let s = FieldScalar::from_rat(Rat::from_integer(scale.clone()));
        let approx: Vec<Rat> = target
            .iter()
            .map(|x| Rat::new((x * &s).floor(), scale.clone()))
            .collect();
        if ok(&approx) {
            return approx;
        }
    }
    unreachable!("dyadic refinement did not converge")
}

/// A rational `v` in `w` with `cp(v) > 0 > c(v)`, or with `c(v) < 0` when `cp` is absent.
fn construct_violation(failure: &Failure) -> Vec<Rat> {
    match failure {
        Failure::Exhausted { w, c } => {
            let vals = c.values_on(w);
            let i = vals.iter().position(|x| !x.is_zero()).expect("nonvanishing");
            let mut v = w[i].clone();
            if vals[i].is_positive() {
                v.iter_mut().for_each(|x| *x = -x.clone());
            }
            v
        }
        Failure::NotProportional { w, c, cp } => {
            let a = c.values_on(w);
            let b = cp.values_on(w);
            let i0 = b.iter().position(|x| !x.is_zero()).expect("nonvanishing");
            let lambda = a[i0].checked_div(&b[i0]).expect("nonzero");
            if a.iter().zip(&b).all(|(x, y)| *x == &lambda * y) {
                // Negative multiple: any v with cp(v) > 0 works.
                let mut v = w[i0].clone();
                if b[i0].is_negative() {
                    v.iter_mut().for_each(|x| *x = -x.clone());
                }
                return v;
            }
            // a and b are R-linearly independent: pick a nonsingular 2x2 minor.
            let d = w.len();
            let (p, q, det) = (0..d)
                .flat_map(|p| (p + 1..d).map(move |q| (p, q)))
                .map(|(p, q)| (p, q, &(&b[p] * &a[q]) - &(&b[q] * &a[p])))
                .find(|(_, _, det)| !det.is_zero())
                .expect("independent forms have a nonzero minor");
            // Solve b_p x + b_q y = 1, a_p x + a_q y = -1.
            let inv = det.inverse().expect("nonzero");
            let x = &(&a[q] + &b[q]) * &inv;
            let y = &(-&(&a[p] + &b[p])) * &inv;
            let build = |xy: &[Rat]| -> Vec<Rat> {
                w[p].iter()
                    .zip(&w[q])
                    .map(|(s, t)| &xy[0] * s + &xy[1] * t)
                    .collect()
            };
            let xy = dyadic_near(&[x, y], |xy| {
                let v = build(xy);
                cp.eval(&v).is_positive() && c.eval(&v).is_negative()
            });
            build(&xy)
        }
    }
}

/// Decides `P′ ⊆ P`; on failure returns a separating term pair.
pub fn contains(pprime: &PrimeCongruence, p: &PrimeCongruence) -> Result<Containment> {
    if pprime.monoid != p.monoid {
        return Err(Error::MonoidMismatch);
    }
    if pprime.gamma != p.gamma {
        return Err(Error::GammaMismatch);
    }
    if !pprime.in_cont() || !p.in_cont() {
        return Err(Error::NotInCont);
    }
    let kp = pprime.ideal_kernel_face()?;
    let k = p.ideal_kernel_face()?;
    if kp.bottom_columns != k.bottom_columns {
        let term = kernel_mismatch_term(p, &kp.bottom_columns, &k.bottom_columns)?;
        return Ok(Containment { holds: false, witness: Some(ContainmentWitness::KernelMismatch { term }) });
    }
    let rp = pprime.restrict(&k.perp_basis)?;
    let r = p.restrict(&k.perp_basis)?;
    let fp = rp.linear_forms();
    let f = r.linear_forms();
    let failure = match cone_procedure(&fp, &f) {
        Ok(()) => return Ok(Containment { holds: true, witness: None }),
        Err(e) => e,
    };
    let v = search_violation(&fp, &f).unwrap_or_else(|| construct_violation(&failure));
    let (m1, m2) = lift_pair(p, &k, &v)?;
    Ok(Containment { holds: false, witness: Some(ContainmentWitness::TermPair { m1, m2 }) })
}

/// Turns a log-term vector `v = (q; c)` into terms `m1, m2` of `M` with
/// `m2 / m1 = t^a χ^{Bc}` up to positive scaling.
fn lift_pair(p: &PrimeCongruence, k: &KernelFace, v: &[Rat]) -> Result<(Term, Term)> {
    let g = p.gamma.dim();
    let lcm = v[g..].iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let scale = Rat::from_integer(lcm);
    let q: Vec<Rat> = v[..g].iter().map(|x| x * &scale).collect();
    let c: Vec<i64> = v[g..]
        .iter()
        .map(|x| (x * &scale).to_integer().to_i64().expect("witness exponent fits in i64"))
        .collect();
    let a = p.gamma.element(&q);
    let n = p.rank();
    let mut u = vec![0i64; n];
    for (cj, b) in c.iter().zip(&k.perp_basis) {
        for (x, y) in u.iter_mut().zip(b) {
            *x += cj * y;
        }
    }
    let base = relint_point(p, k)?;
    let mut u0 = vec![0i64; n];
    for _ in 0..10_000 {
        let shifted: IntVec = u0.iter().zip(&u).map(|(x, y)| x + y).collect();
        if p.monoid.contains(&u0)? && p.monoid.contains(&shifted)? {
            return Ok((Term::new(FieldScalar::zero(), u0), Term::new(a, shifted)));
        }
        u0.iter_mut().zip(&base).for_each(|(x, y)| *x += y);
    }
    unreachable!("relative-interior translate not found")
}

/// A lattice point in the relative interior of `M ∩ τ^⊥`.
fn relint_point(p: &PrimeCongruence, k: &KernelFace) -> Result<IntVec> {
    let n = p.rank();
    Ok(match p.monoid.kind() {
        MonoidKind::Lattice => vec![0; n],
        MonoidKind::Affine => (0..n).map(|j| i64::from(!k.bottom_columns.contains(&j))).collect(),
        MonoidKind::Cone(c) => {
            let mut s = vec![0i64; n];
            for g in c.dual_face_generators(&k.face)? {
                s.iter_mut().zip(&g).for_each(|(x, y)| *x += y);
            }
            s
        }
    })
}

fn kernel_mismatch_term(p: &PrimeCongruence, b1: &[usize], b2: &[usize]) -> Result<Term> {
    let n = p.rank();
    let in_face = |g: &[i64], b: &[usize]| b.iter().all(|&j| g[j] == 0);
    let candidates: Vec<IntVec> = match p.monoid.kind() {
        MonoidKind::Cone(c) => c.dual()?.generators(),
        _ => (0..n).map(|j| unit(n, j, 1)).collect(),
    };
    let g = candidates
        .into_iter()
        .find(|g| in_face(g, b1) != in_face(g, b2))
        .expect("distinct faces differ on a generator");
    Ok(Term::new(FieldScalar::zero(), g))
}
