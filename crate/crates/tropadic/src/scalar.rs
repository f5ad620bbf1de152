//! Exact scalars: the real field `Q(√2,√3)`, its extension by a bottom
//! element `-inf`, lexicographic value tuples, and coefficient groups.
//!
//! A [`FieldScalar`] stores four rationals `(a, b, c, d)` meaning
//! `a + b√2 + c√3 + d√6`. Signs are decided exactly by repeated squaring
//! inside the tower `Q ⊂ Q(√2) ⊂ Q(√2,√3)`.

use crate::error::{Error, Result};
use crate::linalg::{self, Rat};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct FieldScalar {
    c: [Rat; 4],
}

impl FieldScalar {
    pub fn new(a: Rat, b: Rat, c: Rat, d: Rat) -> Self {
        FieldScalar { c: [a, b, c, d] }
    }

    pub fn from_coords(c: [Rat; 4]) -> Self {
        FieldScalar { c }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_rat(Rat::one())
    }

    pub fn from_rat(q: Rat) -> Self {
        FieldScalar::new(q, Rat::zero(), Rat::zero(), Rat::zero())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rat(int(n))
    }

    pub fn sqrt2() -> Self {
        FieldScalar::new(Rat::zero(), Rat::one(), Rat::zero(), Rat::zero())
    }

    pub fn sqrt3() -> Self {
        FieldScalar::new(Rat::zero(), Rat::zero(), Rat::one(), Rat::zero())
    }

    pub fn sqrt6() -> Self {
        FieldScalar::new(Rat::zero(), Rat::zero(), Rat::zero(), Rat::one())
    }

    /// The four basis elements `1, √2, √3, √6`.
    pub fn basis() -> [FieldScalar; 4] {
        [Self::one(), Self::sqrt2(), Self::sqrt3(), Self::sqrt6()]
    }

    pub fn coords(&self) -> &[Rat; 4] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.c[1..].iter().all(Zero::is_zero)
    }

    /// The rational value, if the scalar is rational.
    pub fn as_rat(&self) -> Option<&Rat> {
        self.is_rational().then(|| &self.c[0])
    }

    pub fn scale(&self, q: &Rat) -> Self {
        FieldScalar {
            c: [&self.c[0] * q, &self.c[1] * q, &self.c[2] * q, &self.c[3] * q],
        }
    }

    pub fn mul_int(&self, n: &BigInt) -> Self {
        self.scale(&Rat::from_integer(n.clone()))
    }

    /// Galois conjugate sending √2 to −√2.
    fn conj2(&self) -> Self {
        let [a, b, c, d] = &self.c;
        FieldScalar::new(a.clone(), -b, c.clone(), -d)
    }

    /// Galois conjugate sending √3 to −√3.
    fn conj3(&self) -> Self {
        let [a, b, c, d] = &self.c;
        FieldScalar::new(a.clone(), b.clone(), -c, -d)
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // x * conj2(x) lies in Q(√3); multiplying by its √3-conjugate lands in Q.
        let y = self * &self.conj2();
        let y3 = y.conj3();
        let norm = (&y * &y3).c[0].clone();
        Ok((&self.conj2() * &y3).scale(&norm.recip()))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inverse()?)
    }

    pub fn signum(&self) -> Ordering {
        let [a, b, c, d] = &self.c;
        let sp = sign_quadratic(a, b, 2);
        let sq = sign_quadratic(c, d, 2);
        if sq == Ordering::Equal || sp == sq {
            return sp;
        }
        if sp == Ordering::Equal {
            return sq;
        }
        // p + q√3 with p, q of opposite signs: compare p² with 3q² inside Q(√2).
        let two = int(2);
        let three = int(3);
        let six = int(6);
        let d0 = a * a + &two * b * b - &three * c * c - &six * d * d;
        let d1 = &two * a * b - &six * c * d;
        match sign_quadratic(&d0, &d1, 2) {
            Ordering::Greater => sp,
            Ordering::Less => sq,
            Ordering::Equal => Ordering::Equal,
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    pub fn is_negative(&self) -> bool {
        self.signum() == Ordering::Less
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn to_f64(&self) -> f64 {
        let r = [1.0, 2f64.sqrt(), 3f64.sqrt(), 6f64.sqrt()];
        self.c
            .iter()
            .zip(r)
            .map(|(q, s)| q.to_f64().unwrap_or(f64::NAN) * s)
            .sum()
    }

    /// Largest integer `k` with `k <= self`.
    pub fn floor(&self) -> BigInt {
        let mut k = BigInt::from(self.to_f64().floor() as i64);
        while (self - &FieldScalar::from_rat(Rat::from_integer(k.clone()))).is_negative() {
            k -= 1;
        }
        while !(self - &FieldScalar::from_rat(Rat::from_integer(&k + 1))).is_negative() {
            k += 1;
        }
        k
    }
}

/// Sign of `a + b√m` for a non-square positive integer `m`.
fn sign_quadratic(a: &Rat, b: &Rat, m: i64) -> Ordering {
    let sa = signum_rat(a);
    let sb = signum_rat(b);
    if sb == Ordering::Equal || sa == sb {
        return sa;
    }
    if sa == Ordering::Equal {
        return sb;
    }
    match signum_rat(&(a * a - int(m) * b * b)) {
        Ordering::Greater => sa,
        Ordering::Less => sb,
        Ordering::Equal => Ordering::Equal,
    }
}

pub(crate) fn signum_rat(q: &Rat) -> Ordering {
    q.cmp(&Rat::zero())
}

impl Ord for FieldScalar {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum()
    }
}

impl PartialOrd for FieldScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<'a> Add<&'a FieldScalar> for &'a FieldScalar {
    type Output = FieldScalar;
    fn add(self, o: &FieldScalar) -> FieldScalar {
        FieldScalar {
            c: [
                &self.c[0] + &o.c[0],
                &self.c[1] + &o.c[1],
                &self.c[2] + &o.c[2],
                &self.c[3] + &o.c[3],
            ],
        }
    }
}

impl<'a> Sub<&'a FieldScalar> for &'a FieldScalar {
    type Output = FieldScalar;
    fn sub(self, o: &FieldScalar) -> FieldScalar {
        FieldScalar {
            c: [
                &self.c[0] - &o.c[0],
                &self.c[1] - &o.c[1],
                &self.c[2] - &o.c[2],
                &self.c[3] - &o.c[3],
            ],
        }
    }
}

impl<'a> Mul<&'a FieldScalar> for &'a FieldScalar {
    type Output = FieldScalar;
    fn mul(self, o: &FieldScalar) -> FieldScalar {
        let [a, b, c, d] = &self.c;
        let [e, f, g, h] = &o.c;
        let two = int(2);
        let three = int(3);
        let six = int(6);
        FieldScalar {
            c: [
                a * e + &two * b * f + &three * c * g + &six * d * h,
                a * f + b * e + &three * (c * h + d * g),
                a * g + c * e + &two * (b * h + d * f),
                a * h + d * e + b * g + c * f,
            ],
        }
    }
}

impl Neg for &FieldScalar {
    type Output = FieldScalar;
    fn neg(self) -> FieldScalar {
        FieldScalar {
            c: [-&self.c[0], -&self.c[1], -&self.c[2], -&self.c[3]],
        }
    }
}

impl Neg for FieldScalar {
    type Output = FieldScalar;
    fn neg(self) -> FieldScalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<FieldScalar> for FieldScalar {
            type Output = FieldScalar;
            fn $m(self, o: FieldScalar) -> FieldScalar {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a FieldScalar> for FieldScalar {
            type Output = FieldScalar;
            fn $m(self, o: &FieldScalar) -> FieldScalar {
                (&self).$m(o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<&FieldScalar> for FieldScalar {
    fn add_assign(&mut self, o: &FieldScalar) {
        for i in 0..4 {
            self.c[i] += &o.c[i];
        }
    }
}

fn fmt_rat(q: &Rat) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for FieldScalar {
    /// Renders in the scalar text grammar, e.g. `1-1/2r2+3r6`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const SUFFIX: [&str; 4] = ["", "r2", "r3", "r6"];
        let mut out = String::new();
        for (q, s) in self.c.iter().zip(SUFFIX) {
            if q.is_zero() {
                continue;
            }
            if out.is_empty() {
                out.push_str(&fmt_rat(q));
            } else {
                out.push(if q.is_negative() { '-' } else { '+' });
                out.push_str(&fmt_rat(&q.abs()));
            }
            out.push_str(s);
        }
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}

impl fmt::Debug for FieldScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<i64> for FieldScalar {
    fn from(n: i64) -> Self {
        FieldScalar::from_int(n)
    }
}

impl From<Rat> for FieldScalar {
    fn from(q: Rat) -> Self {
        FieldScalar::from_rat(q)
    }
}

/// A tropical scalar: a field element or the bottom element `-inf`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtScalar {
    Bottom,
    Finite(FieldScalar),
}

impl ExtScalar {
    pub fn zero() -> Self {
        ExtScalar::Finite(FieldScalar::zero())
    }

    pub fn is_bottom(&self) -> bool {
        matches!(self, ExtScalar::Bottom)
    }

    pub fn finite(&self) -> Option<&FieldScalar> {
        match self {
            ExtScalar::Finite(x) => Some(x),
            ExtScalar::Bottom => None,
        }
    }

    /// Tropical sum: the maximum.
    pub fn tadd(&self, o: &Self) -> Self {
        std::cmp::max(self, o).clone()
    }

    /// Tropical product: real addition, with bottom absorbing.
    pub fn tmul(&self, o: &Self) -> Self {
        match (self, o) {
            (ExtScalar::Finite(a), ExtScalar::Finite(b)) => ExtScalar::Finite(a + b),
            _ => ExtScalar::Bottom,
        }
    }

    /// `self · e` for a nonnegative integer exponent `e`, with `0 · -inf = 0`.
    pub fn times_exponent(&self, e: &BigInt) -> Self {
        match self {
            ExtScalar::Finite(a) => ExtScalar::Finite(a.mul_int(e)),
            ExtScalar::Bottom if e.is_zero() => ExtScalar::zero(),
            ExtScalar::Bottom => {
                debug_assert!(e.is_positive(), "negative multiple of -inf");
                ExtScalar::Bottom
            }
        }
    }
}

impl From<FieldScalar> for ExtScalar {
    fn from(x: FieldScalar) -> Self {
        ExtScalar::Finite(x)
    }
}

impl fmt::Display for ExtScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtScalar::Bottom => f.write_str("-inf"),
            ExtScalar::Finite(x) => fmt::Display::fmt(x, f),
        }
    }
}

impl fmt::Debug for ExtScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// An element of the lexicographically ordered semifield `R^k_lex`,
/// stored additively, or its bottom element.
///
/// Tuples of different widths compare as if the shorter one were padded
/// with zeros; [`lex_compare`] is the strict variant that rejects mixed widths.
#[derive(Clone)]
pub enum LexTuple {
    Bottom,
    Tuple(Vec<FieldScalar>),
}

impl LexTuple {
    pub fn zero(k: usize) -> Self {
        LexTuple::Tuple(vec![FieldScalar::zero(); k])
    }

    pub fn is_bottom(&self) -> bool {
        matches!(self, LexTuple::Bottom)
    }

    pub fn entries(&self) -> Option<&[FieldScalar]> {
        match self {
            LexTuple::Tuple(v) => Some(v),
            LexTuple::Bottom => None,
        }
    }

    pub fn width(&self) -> Option<usize> {
        self.entries().map(<[_]>::len)
    }

    pub fn is_identity(&self) -> bool {
        self.entries().is_some_and(|v| v.iter().all(FieldScalar::is_zero))
    }

    /// Lex-max.
    pub fn tadd(&self, o: &Self) -> Self {
        if self >= o {
            self.clone()
        } else {
            o.clone()
        }
    }

    /// Entrywise real addition with bottom absorbing.
    pub fn tmul(&self, o: &Self) -> Self {
        match (self, o) {
            (LexTuple::Tuple(a), LexTuple::Tuple(b)) => {
                let n = a.len().max(b.len());
                let z = FieldScalar::zero();
                LexTuple::Tuple(
                    (0..n)
                        .map(|i| a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z))
                        .collect(),
                )
            }
            _ => LexTuple::Bottom,
        }
    }

    /// Group inverse of a finite tuple (entrywise negation).
    pub fn inverse(&self) -> Option<Self> {
        self.entries()
            .map(|v| LexTuple::Tuple(v.iter().map(|x| -x).collect()))
    }

    /// Projection to the first factor.
    pub fn pi(&self) -> ExtScalar {
        match self {
            LexTuple::Bottom => ExtScalar::Bottom,
            LexTuple::Tuple(v) => ExtScalar::Finite(v.first().cloned().unwrap_or_default()),
        }
    }

    /// Inclusion `a -> (a, 0, ..., 0)` of width `k`.
    pub fn j(a: &ExtScalar, k: usize) -> Self {
        match a {
            ExtScalar::Bottom => LexTuple::Bottom,
            ExtScalar::Finite(x) => {
                let mut v = vec![FieldScalar::zero(); k.max(1)];
                v[0] = x.clone();
                LexTuple::Tuple(v)
            }
        }
    }

    /// Archimedean class: 1-based index of the first nonzero entry.
    pub fn class_of(&self) -> Result<usize> {
        self.entries()
            .and_then(|v| v.iter().position(|x| !x.is_zero()))
            .map(|i| i + 1)
            .ok_or(Error::IdentityHasNoClass)
    }
}

pub fn pi_truncate(x: &LexTuple) -> ExtScalar {
    x.pi()
}

pub fn j_include(a: &ExtScalar, k: usize) -> LexTuple {
    LexTuple::j(a, k)
}

/// Lexicographic comparison of equal-width tuples; bottom is least.
pub fn lex_compare(a: &LexTuple, b: &LexTuple) -> Result<Ordering> {
    if let (Some(x), Some(y)) = (a.width(), b.width()) {
        if x != y {
            return Err(Error::WidthMismatch(x, y));
        }
    }
    Ok(a.cmp(b))
}

impl Ord for LexTuple {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (LexTuple::Bottom, LexTuple::Bottom) => Ordering::Equal,
            (LexTuple::Bottom, _) => Ordering::Less,
            (_, LexTuple::Bottom) => Ordering::Greater,
            (LexTuple::Tuple(a), LexTuple::Tuple(b)) => {
                for i in 0..a.len().max(b.len()) {
                    let o = match (a.get(i), b.get(i)) {
                        (Some(x), Some(y)) => x.cmp(y),
                        (Some(x), None) => x.signum(),
                        (None, Some(y)) => y.signum().reverse(),
                        (None, None) => Ordering::Equal,
                    };
                    if o != Ordering::Equal {
                        return o;
                    }
                }
                Ordering::Equal
            }
        }
    }
}

impl PartialOrd for LexTuple {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq for LexTuple {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for LexTuple {}

impl fmt::Display for LexTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LexTuple::Bottom => f.write_str("-inf"),
            LexTuple::Tuple(v) => {
                f.write_str("(")?;
                for (i, x) in v.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{x}")?;
                }
                f.write_str(")")
            }
        }
    }
}

impl fmt::Debug for LexTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The value group `Γ = log S^×` of the coefficient semifield, as a
/// Q-subspace of the ambient field, or the whole field (`S = T`).
#[derive(Clone, Debug)]
pub enum CoefficientGroup {
    Span(Vec<FieldScalar>),
    Full,
}

impl CoefficientGroup {
    /// `Γ = Q`.
    pub fn qq() -> Self {
        CoefficientGroup::Span(vec![FieldScalar::one()])
    }

    pub fn full() -> Self {
        CoefficientGroup::Full
    }

    /// Q-span of `basis`, which must be linearly independent and contain 1 in its span.
    pub fn span(basis: Vec<FieldScalar>) -> Result<Self> {
        let rows: Vec<Vec<Rat>> = basis.iter().map(|x| x.coords().to_vec()).collect();
        if linalg::rank(&rows) != rows.len() {
            return Err(Error::InvalidGamma("basis is not Q-linearly independent".into()));
        }
        if !linalg::in_span(&rows, FieldScalar::one().coords()) {
            return Err(Error::InvalidGamma("span must contain 1".into()));
        }
        Ok(CoefficientGroup::Span(basis))
    }

    pub fn is_full(&self) -> bool {
        matches!(self, CoefficientGroup::Full)
    }

    /// A Q-basis; for the full group, the field basis `1, √2, √3, √6`.
    pub fn basis(&self) -> Vec<FieldScalar> {
        match self {
            CoefficientGroup::Span(b) => b.clone(),
            CoefficientGroup::Full => FieldScalar::basis().to_vec(),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            CoefficientGroup::Span(b) => b.len(),
            CoefficientGroup::Full => 4,
        }
    }

    pub fn contains(&self, x: &FieldScalar) -> bool {
        match self {
            CoefficientGroup::Full => true,
            CoefficientGroup::Span(b) => {
                let rows: Vec<Vec<Rat>> = b.iter().map(|y| y.coords().to_vec()).collect();
                linalg::in_span(&rows, x.coords())
            }
        }
    }

    /// Coordinates of `x` in [`Self::basis`], if `x` is a member.
    pub fn coordinates(&self, x: &FieldScalar) -> Option<Vec<Rat>> {
        let b = self.basis();
        let m: Vec<Vec<Rat>> = (0..4)
            .map(|i| b.iter().map(|y| y.coords()[i].clone()).collect())
            .collect();
        linalg::solve(&m, x.coords(), b.len())
    }

    /// The element with the given coordinates in [`Self::basis`].
    pub fn element(&self, coords: &[Rat]) -> FieldScalar {
        self.basis()
            .iter()
            .zip(coords)
            .fold(FieldScalar::zero(), |acc, (b, q)| acc + b.scale(q))
    }
}

impl PartialEq for CoefficientGroup {
    /// Equality as subspaces.
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (CoefficientGroup::Full, CoefficientGroup::Full) => true,
            (CoefficientGroup::Full, CoefficientGroup::Span(b))
            | (CoefficientGroup::Span(b), CoefficientGroup::Full) => b.len() == 4,
            (CoefficientGroup::Span(a), CoefficientGroup::Span(b)) => {
                a.len() == b.len() && b.iter().all(|x| self.contains(x))
            }
        }
    }
}

impl Eq for CoefficientGroup {}

impl fmt::Display for CoefficientGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientGroup::Full => f.write_str("full"),
            CoefficientGroup::Span(b) if b.len() == 1 && b[0] == FieldScalar::one() => {
                f.write_str("QQ")
            }
            CoefficientGroup::Span(b) => {
                f.write_str("span[")?;
                for (i, x) in b.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{x}")?;
                }
                f.write_str("]")
            }
        }
    }
}
