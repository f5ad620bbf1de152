//! Ranks, heights and dimension bounds for primes of `S[M]`, and maximal
//! chains below a prime.

use crate::error::{Error, Result};
use crate::linalg::{self, Rat};
use crate::monomial::ToricMonoid;
use crate::prime::{contains, PrimeCongruence};
use crate::scalar::{ExtScalar, FieldScalar};
use num_traits::Zero;

fn admit(p: &PrimeCongruence) -> Result<PrimeCongruence> {
    if !p.in_cont() || !p.has_trivial_kernel() {
        return Err(Error::NotInContInterior);
    }
    Ok(p.normalize())
}

/// A column of the matrix as a vector in `Q^{4k}`.
fn flatten(col: impl Iterator<Item = FieldScalar>) -> Vec<Rat> {
    col.flat_map(|x| x.coords().clone()).collect()
}

fn column(p: &PrimeCongruence, j: usize) -> Vec<Rat> {
    flatten(p.rows().iter().map(|r| r[j].finite().cloned().expect("finite matrix")))
}

/// Spanning vectors of `W = Γ·c₀` in `Q^{4k}`.
fn gamma_vectors(p: &PrimeCongruence) -> Vec<Vec<Rat>> {
    p.gamma()
        .basis()
        .iter()
        .map(|g| flatten(p.rows().iter().map(|r| r[0].finite().expect("finite") * g)))
        .collect()
}

/// `rk(κ(P)^× / S^×) = dim (V + W) / W`.
pub fn quotient_rank(p: &PrimeCongruence) -> Result<usize> {
    let p = admit(p)?;
    let w = gamma_vectors(&p);
    let mut vw = w.clone();
    vw.extend((1..=p.rank()).map(|j| column(&p, j)));
    Ok(linalg::rank(&vw) - linalg::rank(&w))
}

/// Basis of the log-kernel `{(q, u) : Ψ(t^{Σ qγ} χ^u) = 1}` over `Q`.
pub(crate) fn log_kernel(p: &PrimeCongruence) -> Vec<Vec<Rat>> {
    let mut cols = gamma_vectors(p);
    cols.extend((1..=p.rank()).map(|j| column(p, j)));
    let rows = cols.first().map_or(0, Vec::len);
    let m: Vec<Vec<Rat>> = (0..rows).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect();
    linalg::nullspace(&m, cols.len())
}

/// `rk(ker π_P)`, computed directly as the dimension of the log-kernel.
pub fn kernel_rank(p: &PrimeCongruence) -> Result<usize> {
    Ok(log_kernel(&admit(p)?).len())
}

/// Exponent parts of a basis of the log-kernel.
fn kernel_exponents(p: &PrimeCongruence) -> Vec<Vec<Rat>> {
    let g = p.gamma().dim();
    log_kernel(p).into_iter().map(|v| v[g..].to_vec()).collect()
}

pub fn dim_base(m: &ToricMonoid) -> usize {
    m.rank()
}

pub fn height(p: &PrimeCongruence) -> Result<usize> {
    Ok(p.rank() - quotient_rank(p)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exactness {
    TCoeffs,
    FullDimCone,
    BoundsOnly,
}

impl Exactness {
    pub fn tag(self) -> &'static str {
        match self {
            Exactness::TCoeffs => "T_COEFFS",
            Exactness::FullDimCone => "FULL_DIM_CONE",
            Exactness::BoundsOnly => "BOUNDS_ONLY",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimReport {
    pub dim_base: usize,
    pub q_rank: usize,
    pub height: usize,
    pub dim_top_lower: usize,
    pub dim_top_upper: usize,
    pub exact: bool,
    pub reason: Exactness,
}

pub fn dim_top_report(p: &PrimeCongruence) -> Result<DimReport> {
    let q_rank = quotient_rank(p)?;
    let n = dim_base(p.monoid());
    let reason = if p.gamma().is_full() {
        Exactness::TCoeffs
    } else if p.monoid().sigma().is_full_dimensional() {
        Exactness::FullDimCone
    } else {
        Exactness::BoundsOnly
    };
    let exact = reason != Exactness::BoundsOnly;
    Ok(DimReport {
        dim_base: n,
        q_rank,
        height: n - q_rank,
        dim_top_lower: if exact { n } else { n - q_rank },
        dim_top_upper: n,
        exact,
        reason,
    })
}

/// Refines `P` by the row `(0 | w)`.
pub fn extend_chain(p: &PrimeCongruence, w: &[Rat]) -> Result<PrimeCongruence> {
    let base = admit(p)?;
    if w.len() != p.rank() {
        return Err(Error::DimensionMismatch { expected: p.rank(), got: w.len() });
    }
    if kernel_exponents(&base).iter().all(|u| linalg::dot(u, w).is_zero()) {
        return Err(Error::WPerpendicular);
    }
    let mut rows = p.rows().to_vec();
    let mut extra = vec![ExtScalar::Finite(FieldScalar::zero())];
    extra.extend(w.iter().map(|x| ExtScalar::Finite(FieldScalar::from_rat(x.clone()))));
    rows.push(extra);
    PrimeCongruence::new(p.monoid().clone(), p.gamma().clone(), rows)
}

/// `P = P⁽⁰⁾ ⊋ P⁽¹⁾ ⊋ … ⊋ P⁽ᵏ⁾` with `k = height(P)`, each link checked by containment.
pub fn build_maximal_chain(p: &PrimeCongruence) -> Result<Vec<PrimeCongruence>> {
    let n = p.rank();
    let mut chain = vec![p.clone()];
    for _ in 0..height(p)? {
        let cur = chain.last().expect("nonempty");
        let exps = kernel_exponents(&admit(cur)?);
        let j = (0..n)
            .find(|&j| exps.iter().any(|u| !u[j].is_zero()))
            .expect("nonzero kernel has a nonzero coordinate");
        let w: Vec<Rat> = (0..n).map(|i| Rat::from_integer((i == j).into())).collect();
        let next = extend_chain(cur, &w)?;
        if !contains(&next, cur)?.holds || contains(cur, &next)?.holds {
            return Err(Error::InvalidMatrix("chain link is not a strict containment".into()));
        }
        chain.push(next);
    }
    Ok(chain)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Cone;
    use crate::scalar::{rat, CoefficientGroup};

    fn s(x: i64) -> FieldScalar {
        FieldScalar::from_int(x)
    }

    fn on(m: ToricMonoid, row: Vec<FieldScalar>) -> PrimeCongruence {
        PrimeCongruence::from_finite(m, CoefficientGroup::qq(), vec![row]).unwrap()
    }

    #[test]
    fn quotient_ranks() {
        let (r2, r3) = (FieldScalar::sqrt2(), FieldScalar::sqrt3());
        assert_eq!(quotient_rank(&on(ToricMonoid::lattice(1), vec![s(1), r2.clone()])).unwrap(), 1);
        assert_eq!(quotient_rank(&on(ToricMonoid::lattice(2), vec![s(1), r2.clone(), r3.clone()])).unwrap(), 2);
        assert_eq!(quotient_rank(&on(ToricMonoid::lattice(2), vec![s(1), s(2), s(3)])).unwrap(), 0);
        let p = on(ToricMonoid::lattice(3), vec![s(1), r2.clone(), r2, r3]);
        assert_eq!(quotient_rank(&p).unwrap() + kernel_rank(&p).unwrap(), 3);
    }

    #[test]
    fn heights_and_reports() {
        let ray = ToricMonoid::cone(Cone::new(2, vec![vec![-1, -1]]).unwrap()).unwrap();
        let (r2, r3) = (FieldScalar::sqrt2(), FieldScalar::sqrt3());
        assert_eq!(height(&on(ray.clone(), vec![s(1), s(0), &r3 - &r2])).unwrap(), 1);
        assert_eq!(height(&on(ToricMonoid::lattice(1), vec![s(1), s(0)])).unwrap(), 1);
        let r = dim_top_report(&on(ray, vec![s(1), r2, r3])).unwrap();
        assert_eq!((r.dim_top_lower, r.dim_top_upper, r.exact), (0, 2, false));
        let full = PrimeCongruence::from_finite(ToricMonoid::lattice(1), CoefficientGroup::full(), vec![vec![s(1), s(0)]])
            .unwrap();
        let r = dim_top_report(&full).unwrap();
        assert!(r.exact && r.dim_top_lower == 1 && r.reason == Exactness::TCoeffs);
    }

    #[test]
    fn chains() {
        let p = on(ToricMonoid::lattice(1), vec![s(1), s(0)]);
        let q = extend_chain(&p, &[rat(1, 1)]).unwrap();
        assert_eq!(q.rows().len(), 2);
        assert_eq!(extend_chain(&q, &[rat(1, 1)]), Err(Error::WPerpendicular));
        let p2 = on(ToricMonoid::lattice(2), vec![s(1), s(0), s(0)]);
        let chain = build_maximal_chain(&p2).unwrap();
        assert_eq!(chain.len(), 3);
        assert_eq!(chain[2].rows()[1][1], s(1).into());
        assert_eq!(chain[2].rows()[2][2], s(1).into());
        let irr = on(ToricMonoid::lattice(1), vec![s(1), FieldScalar::sqrt2()]);
        assert_eq!(build_maximal_chain(&irr).unwrap().len(), 1);
        assert_eq!(extend_chain(&p2, &[rat(0, 1), rat(0, 1)]), Err(Error::WPerpendicular));
    }
}
