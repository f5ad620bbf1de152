//! Points of the continuous spectrum: the map `Φ`, property (*), and the
//! decisions built on them.

use crate::error::{Error, Result};
use crate::geometry::{Face, IntVec};
use crate::monomial::{MonoidKind, Polynomial, Term};
use crate::prime::{contains, PrimeCongruence};
use crate::scalar::{ExtScalar, FieldScalar};
use crate::series::{eval_at, same_prime, TruncatedSeries};
use num_bigint::BigInt;
use num_traits::One;

/// A monoid map `M → 𝕋`: `u ↦ ⟨values, u⟩` on `τ^⊥`, bottom elsewhere.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TropicalPoint {
    pub face: Face,
    /// One entry per lattice coordinate; bottom on the coordinates cut out by the face.
    pub values: Vec<ExtScalar>,
}

impl TropicalPoint {
    pub fn eval(&self, u: &[i64]) -> ExtScalar {
        let mut acc = FieldScalar::zero();
        for (v, &x) in self.values.iter().zip(u) {
            if x == 0 {
                continue;
            }
            match v {
                ExtScalar::Finite(c) => acc += &c.mul_int(&BigInt::from(x)),
                ExtScalar::Bottom => return ExtScalar::Bottom,
            }
        }
        ExtScalar::Finite(acc)
    }
}

pub fn phi(p: &PrimeCongruence) -> Result<TropicalPoint> {
    if !p.in_cont() {
        return Err(Error::NotInCont);
    }
    let values = p.normalize().rows()[0][1..].to_vec();
    Ok(TropicalPoint { face: p.ideal_kernel_face()?.face, values })
}

/// Outcome of a property (*) check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Crown {
    pub holds: bool,
    /// Separating term `m` with `|m|_P < 1 < |m|_{P′}`.
    pub witness: Option<Term>,
}

fn check_pair(pprime: &PrimeCongruence, p: &PrimeCongruence) -> Result<()> {
    if pprime.monoid() != p.monoid() {
        return Err(Error::MonoidMismatch);
    }
    if pprime.gamma() != p.gamma() {
        return Err(Error::GammaMismatch);
    }
    if !p.in_cont() || !pprime.in_cont() {
        return Err(Error::NotInCont);
    }
    if !p.has_trivial_kernel() {
        return Err(Error::NotInContInterior);
    }
    Ok(())
}

/// `t^α (χ^u)^β` with `βp < -α < βp′`, for `p < p′`.
fn separating_term(u: &IntVec, p: &FieldScalar, pp: &FieldScalar) -> Term {
    let mut beta: i64 = 1;
    loop {
        let b = BigInt::from(beta);
        let lo = p.mul_int(&b);
        let hi = pp.mul_int(&b);
        let neg_alpha = FieldScalar::from_rat((lo.floor() + BigInt::one()).into());
        if neg_alpha < hi {
            return Term::new(-neg_alpha, u.iter().map(|x| x * beta).collect());
        }
        beta += 1;
    }
}

/// Property (*) for `P′` relative to `P`, checked on monoid generators:
/// `Φ(P′)(u) <= Φ(P)(u)` for every generator `u`.
pub fn prop_star(pprime: &PrimeCongruence, p: &PrimeCongruence) -> Result<Crown> {
    check_pair(pprime, p)?;
    let gens = p.monoid().generators()?;
    let (a, b) = (phi(pprime)?, phi(p)?);
    for u in &gens {
        let (lhs, rhs) = (a.eval(u), b.eval(u));
        if lhs > rhs {
            let (ExtScalar::Finite(pp), ExtScalar::Finite(pv)) = (&lhs, &rhs) else {
                unreachable!("rhs is finite under a trivial kernel")
            };
            return Ok(Crown { holds: false, witness: Some(separating_term(u, pv, pp)) });
        }
    }
    Ok(Crown { holds: true, witness: None })
}

/// Coordinatewise comparison of `Φ` values, valid for `ℕⁿ`.
pub fn prop_star_affine(pprime: &PrimeCongruence, p: &PrimeCongruence) -> Result<bool> {
    check_pair(pprime, p)?;
    if !matches!(p.monoid().kind(), MonoidKind::Affine) {
        return Err(Error::MonoidMismatch);
    }
    let (a, b) = (phi(pprime)?, phi(p)?);
    Ok(a.values.iter().zip(&b.values).all(|(x, y)| x <= y))
}

/// Containment in the maximal prime above `P`, valid for `ℤⁿ`.
pub fn prop_star_torus(pprime: &PrimeCongruence, p: &PrimeCongruence) -> Result<bool> {
    check_pair(pprime, p)?;
    if !p.monoid().is_lattice() {
        return Err(Error::MonoidMismatch);
    }
    Ok(contains(pprime, &p.maximal_above()?)?.holds)
}

/// Whether `P′` is the restriction of a prime of `Cnvg_P`.
pub fn extends_to_cnvg(pprime: &PrimeCongruence, p: &PrimeCongruence) -> Result<bool> {
    Ok(prop_star(pprime, p)?.holds)
}

/// Whether `(f, g)` lies in the closure of `P′` in `Cnvg_P`.
pub fn closure_member(f: &TruncatedSeries, g: &TruncatedSeries, pprime: &PrimeCongruence, p: &PrimeCongruence) -> Result<bool> {
    if !same_prime(f.base(), &p.normalize()) || !same_prime(g.base(), &p.normalize()) {
        return Err(Error::BaseMismatch);
    }
    let (a, _) = eval_at(f, pprime)?;
    let (b, _) = eval_at(g, pprime)?;
    Ok(a == b)
}

/// Whether `p2` is a specialization of `p1`, i.e. `p2 ⊆ p1`.
pub fn specializes(p1: &PrimeCongruence, p2: &PrimeCongruence) -> Result<bool> {
    Ok(contains(p2, p1)?.holds)
}

/// Membership of `P0` in the basic open `R(f|g)`.
pub fn basic_open_member(p0: &PrimeCongruence, f: &Polynomial, g: &Polynomial) -> Result<bool> {
    if !p0.in_cont() {
        return Err(Error::NotInCont);
    }
    if f.monoid() != p0.monoid() || g.monoid() != p0.monoid() {
        return Err(Error::MonoidMismatch);
    }
    let (a, b) = (p0.psi_poly(f), p0.psi_poly(g));
    Ok(a <= b && !b.is_bottom())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Cone;
    use crate::monomial::ToricMonoid;
    use crate::scalar::CoefficientGroup;

    fn s(x: i64) -> FieldScalar {
        FieldScalar::from_int(x)
    }

    fn prime(m: &ToricMonoid, rows: Vec<Vec<ExtScalar>>) -> PrimeCongruence {
        PrimeCongruence::new(m.clone(), CoefficientGroup::qq(), rows).unwrap()
    }

    fn fin(v: Vec<FieldScalar>) -> Vec<ExtScalar> {
        v.into_iter().map(ExtScalar::Finite).collect()
    }

    #[test]
    fn phi_examples() {
        let z2 = ToricMonoid::lattice(2);
        let (r2, r3) = (FieldScalar::sqrt2(), FieldScalar::sqrt3());
        let p = prime(&z2, vec![fin(vec![s(1), r2.clone(), r3.clone()])]);
        assert_eq!(phi(&p).unwrap().values, fin(vec![r2, r3]));
        let a = prime(&ToricMonoid::affine(1), vec![vec![s(1).into(), ExtScalar::Bottom]]);
        let pt = phi(&a).unwrap();
        assert_eq!(pt.values, vec![ExtScalar::Bottom]);
        assert!(!pt.face.is_zero());
    }

    #[test]
    fn crown_on_ray_cone() {
        let m = ToricMonoid::cone(Cone::new(2, vec![vec![-1, -1]]).unwrap()).unwrap();
        let (r2, r3) = (FieldScalar::sqrt2(), FieldScalar::sqrt3());
        let p = prime(&m, vec![fin(vec![s(1), r2.clone(), r3.clone()])]);
        let pp = prime(&m, vec![fin(vec![s(1), s(0), &r3 - &r2])]);
        assert!(prop_star(&pp, &p).unwrap().holds);
    }

    #[test]
    fn crown_motivating_witness() {
        let z = ToricMonoid::lattice(1);
        let p = prime(&z, vec![fin(vec![s(1), s(0)])]);
        let pp = prime(&z, vec![fin(vec![s(1), s(1)]), fin(vec![s(0), s(1)])]);
        let c = prop_star(&pp, &p).unwrap();
        assert!(!c.holds);
        let m = c.witness.unwrap();
        assert_eq!(m, Term::new(-1, vec![2]));
        assert!(prop_star_torus(&pp, &p).unwrap() == c.holds);
    }

    #[test]
    fn affine_extension_example() {
        let n = ToricMonoid::affine(1);
        let p = prime(&n, vec![fin(vec![s(1), FieldScalar::sqrt2()])]);
        let pp = prime(&n, vec![fin(vec![s(1), s(0)]), fin(vec![s(0), s(1)])]);
        assert!(extends_to_cnvg(&pp, &p).unwrap());
        assert!(prop_star_affine(&pp, &p).unwrap());
        assert!(extends_to_cnvg(&p, &p).unwrap());
    }

    #[test]
    fn basic_opens() {
        let z = ToricMonoid::lattice(1);
        let p = prime(&z, vec![fin(vec![s(1), s(0)])]);
        let f = Polynomial::term(&z, Term::new(1, vec![0])).unwrap();
        let g = Polynomial::term(&z, Term::new(0, vec![1])).unwrap();
        assert!(!basic_open_member(&p, &f, &g).unwrap());
        let one = Polynomial::term(&z, Term::new(0, vec![0])).unwrap();
        assert!(basic_open_member(&p, &one, &one).unwrap());
        assert!(!basic_open_member(&p, &Polynomial::zero(&z), &Polynomial::zero(&z)).unwrap());
    }

    #[test]
    fn specialization_examples() {
        let z = ToricMonoid::lattice(1);
        let p = prime(&z, vec![fin(vec![s(1), s(1)]), fin(vec![s(0), s(1)])]);
        assert!(specializes(&p, &p).unwrap());
        let top = p.maximal_above().unwrap();
        assert!(specializes(&top, &p).unwrap());
        assert!(!specializes(&p, &top).unwrap());
    }
}
