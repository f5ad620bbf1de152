//! Rational polyhedral cones: dual cones, faces, desk-scale Hilbert bases,
//! and the strata of the toric stratification.
//!
//! Conventions follow the negative-cone normalization: for a cone `σ`,
//! `σ^∨ = {u : <v,u> <= 0 for all v in σ}`, so the negative orthant has
//! `ℕⁿ` as its monoid.

use crate::error::{Error, Result};
use crate::linalg::{self, Rat};
use crate::monomial::ToricMonoid;
use crate::prime::PrimeCongruence;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use std::collections::BTreeSet;

/// Largest rank for dual and face enumeration.
pub const MAX_DUAL_RANK: usize = 4;
/// Largest rank for Hilbert bases.
pub const MAX_HILBERT_RANK: usize = 3;

pub type IntVec = Vec<i64>;

pub fn dot_i(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn primitive(v: &[i64]) -> IntVec {
    let g = v.iter().fold(0i64, |acc, x| acc.gcd(x));
    if g == 0 {
        return v.to_vec();
    }
    v.iter().map(|x| x / g).collect()
}

fn to_rat(v: &[i64]) -> Vec<Rat> {
    v.iter().map(|&x| Rat::from_integer(x.into())).collect()
}

fn big_to_i64(v: &[BigInt]) -> IntVec {
    v.iter()
        .map(|x| x.to_i64().expect("lattice vector entry exceeds i64"))
        .collect()
}

/// A rational polyhedral cone given by primitive integer rays.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cone {
    n: usize,
    rays: Vec<IntVec>,
}

/// `σ^∨` as inequalities `<v,u> <= 0` (one per ray of `σ`) and as
/// generators: extreme rays of the pointed part plus `±` a lattice basis of
/// the lineality space `σ^⊥`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualCone {
    pub inequalities: Vec<IntVec>,
    pub extreme_rays: Vec<IntVec>,
    pub lineality: Vec<IntVec>,
}

impl DualCone {
    pub fn generators(&self) -> Vec<IntVec> {
        let mut g = self.extreme_rays.clone();
        for l in &self.lineality {
            g.push(l.clone());
            g.push(l.iter().map(|x| -x).collect());
        }
        g
    }

    pub fn contains(&self, u: &[i64]) -> bool {
        self.inequalities.iter().all(|v| dot_i(v, u) <= 0)
    }
}

/// A face of a cone, recorded by the indices of the rays it contains.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Face {
    pub rays: Vec<usize>,
}

impl Cone {
    /// Builds a strongly convex cone; rays are made primitive and deduplicated.
    pub fn new(n: usize, rays: Vec<IntVec>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        let mut clean = Vec::new();
        for r in rays {
            if r.len() != n {
                return Err(Error::DimensionMismatch { expected: n, got: r.len() });
            }
            if r.iter().all(|&x| x == 0) {
                return Err(Error::InvalidCone("zero ray".into()));
            }
            let p = primitive(&r);
            if seen.insert(p.clone()) {
                clean.push(p);
            }
        }
        let cone = Cone { n, rays: clean };
        if n <= MAX_DUAL_RANK && !cone.is_strongly_convex()? {
            return Err(Error::InvalidCone("cone contains a line".into()));
        }
        Ok(cone)
    }

    pub fn zero(n: usize) -> Self {
        Cone { n, rays: Vec::new() }
    }

    /// The totally negative orthant, whose monoid is `ℕⁿ`.
    pub fn negative_orthant(n: usize) -> Self {
        Cone {
            n,
            rays: (0..n)
                .map(|i| (0..n).map(|j| if i == j { -1 } else { 0 }).collect())
                .collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn rays(&self) -> &[IntVec] {
        &self.rays
    }

    /// Dimension of the linear span of the rays.
    pub fn dim(&self) -> usize {
        let rows: Vec<Vec<Rat>> = self.rays.iter().map(|r| to_rat(r)).collect();
        linalg::rank(&rows)
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dim() == self.n
    }

    pub fn is_strongly_convex(&self) -> Result<bool> {
        let d = self.dual()?;
        let rows: Vec<Vec<Rat>> = d.generators().iter().map(|g| to_rat(g)).collect();
        Ok(linalg::rank(&rows) == self.n)
    }

    pub fn dual(&self) -> Result<DualCone> {
        if self.n > MAX_DUAL_RANK {
            return Err(Error::RankTooLarge(self.n, MAX_DUAL_RANK));
        }
        let n = self.n;
        let big_rays: Vec<Vec<BigInt>> = self
            .rays
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        let lineality: Vec<IntVec> = linalg::integer_kernel(&big_rays, n)
            .iter()
            .map(|v| big_to_i64(v))
            .collect();
        let r = n - lineality.len();
        let mut extreme = BTreeSet::new();
        if r > 0 {
            let lin_rows: Vec<Vec<Rat>> = lineality.iter().map(|l| to_rat(l)).collect();
            for subset in subsets_of_size(self.rays.len(), r - 1) {
                let mut rows = lin_rows.clone();
                rows.extend(subset.iter().map(|&i| to_rat(&self.rays[i])));
                let ns = linalg::nullspace(&rows, n);
                if ns.len() != 1 {
                    continue;
                }
                let d = big_to_i64(&linalg::primitive_integer(&ns[0]));
                if self.rays.iter().all(|v| dot_i(v, &d) <= 0) {
                    extreme.insert(d);
                } else {
                    let m: IntVec = d.iter().map(|x| -x).collect();
                    if self.rays.iter().all(|v| dot_i(v, &m) <= 0) {
                        extreme.insert(m);
                    }
                }
            }
        }
        Ok(DualCone {
            inequalities: self.rays.clone(),
            extreme_rays: extreme.into_iter().collect(),
            lineality,
        })
    }

    /// Whether the vector `v` lies in the cone.
    pub fn contains_vector(&self, v: &[i64]) -> Result<bool> {
        let d = self.dual()?;
        Ok(d.generators().iter().all(|g| dot_i(g, v) <= 0))
    }

    /// All faces, from `{0}` up to the cone itself, ordered by ray count.
    pub fn faces(&self) -> Result<Vec<Face>> {
        let gens = self.dual()?.generators();
        if gens.len() > 20 {
            return Err(Error::RankTooLarge(gens.len(), 20));
        }
        let mut out = BTreeSet::new();
        for mask in 0u32..(1 << gens.len()) {
            let mut u = vec![0i64; self.n];
            for (i, g) in gens.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    u.iter_mut().zip(g).for_each(|(a, b)| *a += b);
                }
            }
            let rays: Vec<usize> = (0..self.rays.len())
                .filter(|&i| dot_i(&self.rays[i], &u) == 0)
                .collect();
            out.insert((rays.len(), Face { rays }));
        }
        Ok(out.into_iter().map(|(_, f)| f).collect())
    }

    pub fn face_cone(&self, face: &Face) -> Cone {
        Cone {
            n: self.n,
            rays: face.rays.iter().map(|&i| self.rays[i].clone()).collect(),
        }
    }

    /// A basis of the saturated lattice `ℤⁿ ∩ τ^⊥` for a face `τ`.
    pub fn perp_lattice(&self, face: &Face) -> Vec<IntVec> {
        let rows: Vec<Vec<BigInt>> = face
            .rays
            .iter()
            .map(|&i| self.rays[i].iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        let mut basis: Vec<IntVec> = linalg::integer_kernel(&rows, self.n)
            .iter()
            .map(|v| big_to_i64(v))
            .collect();
        basis.sort_by(|a, b| b.cmp(a));
        basis
    }
}

fn subsets_of_size(m: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            cur.push(i);
            go(i + 1, m, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, m, k, &mut Vec::new(), &mut out);
    out
}

pub fn dual_cone(sigma: &Cone) -> Result<DualCone> {
    sigma.dual()
}

pub fn faces(sigma: &Cone) -> Result<Vec<Face>> {
    sigma.faces()
}

/// Half-width of the enumeration box used for Hilbert bases. Every element
/// of the basis lies in the half-open parallelepiped of some simplicial
/// subcone spanned by dual generators, so `|u_k|` is at most the sum of
/// `|g_k|` over the generators `g`.
pub fn hilbert_box_bound(dual: &DualCone, n: usize) -> i64 {
    let gens = dual.generators();
    (0..n)
        .map(|k| gens.iter().map(|g| g[k].abs()).sum::<i64>())
        .max()
        .unwrap_or(0)
        .max(1)
}

/// Dense bitmap over the box `[-b, b]^n`.
pub(crate) struct BoxSet {
    n: usize,
    b: i64,
    bits: Vec<bool>,
}

impl BoxSet {
    pub(crate) fn new(n: usize, b: i64) -> Self {
        let side = (2 * b + 1) as usize;
        BoxSet { n, b, bits: vec![false; side.pow(n as u32)] }
    }

    fn index(&self, u: &[i64]) -> Option<usize> {
        let side = 2 * self.b + 1;
        let mut idx = 0i64;
        for &x in u {
            if x.abs() > self.b {
                return None;
            }
            idx = idx * side + (x + self.b);
        }
        Some(idx as usize)
    }

    pub(crate) fn contains(&self, u: &[i64]) -> bool {
        self.index(u).is_some_and(|i| self.bits[i])
    }

    /// Marks `u`; returns false if it was already marked or lies outside.
    pub(crate) fn insert(&mut self, u: &[i64]) -> bool {
        match self.index(u) {
            Some(i) if !self.bits[i] => {
                self.bits[i] = true;
                true
            }
            _ => false,
        }
    }

    pub(crate) fn dim(&self) -> usize {
        self.n
    }
}

fn extend_reachable(set: &mut BoxSet, work: &mut Vec<IntVec>, gens: &[IntVec]) {
    while let Some(p) = work.pop() {
        for g in gens {
            let q: IntVec = p.iter().zip(g).map(|(a, b)| a + b).collect();
            if set.insert(&q) {
                work.push(q);
            }
        }
    }
}

fn box_points(n: usize, b: i64) -> Vec<IntVec> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(out.len() * (2 * b + 1) as usize);
        for p in &out {
            for x in -b..=b {
                let mut q = p.clone();
                q.push(x);
                next.push(q);
            }
        }
        out = next;
    }
    out
}

/// Hilbert basis of `σ^∨ ∩ ℤⁿ` for a cone of rank at most 3.
///
/// Lattice points of the enumeration box are scanned by increasing degree
/// (pointed case only), then 1-norm, ties lexicographically larger first,
/// and kept iff they are not an ℕ-combination of points kept earlier. For
/// pointed monoids this is the set of irreducible elements; with a
/// lineality space it also keeps a basis of the units in both signs.
pub fn hilbert_basis_of_cone(sigma: &Cone) -> Result<Vec<IntVec>> {
    let n = sigma.rank();
    if n > MAX_HILBERT_RANK {
        return Err(Error::RankTooLarge(n, MAX_HILBERT_RANK));
    }
    let dual = sigma.dual()?;
    let b = hilbert_box_bound(&dual, n);
    let mut cands: Vec<IntVec> = box_points(n, b)
        .into_iter()
        .filter(|u| u.iter().any(|&x| x != 0) && dual.contains(u))
        .collect();
    // For pointed monoids `-<Σ rays, u>` is a positive grading, so summands
    // of a reducible point are scanned before it.
    let w: IntVec = if sigma.is_full_dimensional() {
        (0..n).map(|k| -sigma.rays.iter().map(|r| r[k]).sum::<i64>()).collect()
    } else {
        vec![0; n]
    };
    cands.sort_by_cached_key(|x| {
        let norm: i64 = x.iter().map(|a| a.abs()).sum();
        (dot_i(&w, x), norm, std::cmp::Reverse(x.clone()))
    });
    let outer = 2 * b;
    let mut reach = BoxSet::new(n, outer);
    let origin = vec![0i64; n];
    reach.insert(&origin);
    let mut kept: Vec<IntVec> = Vec::new();
    for u in cands {
        if reach.contains(&u) {
            continue;
        }
        kept.push(u.clone());
        let mut work: Vec<IntVec> = Vec::new();
        for p in collect_marked(&reach) {
            let q: IntVec = p.iter().zip(&u).map(|(a, c)| a + c).collect();
            if reach.insert(&q) {
                work.push(q);
            }
        }
        extend_reachable(&mut reach, &mut work, &kept);
    }
    Ok(kept)
}

fn collect_marked(set: &BoxSet) -> Vec<IntVec> {
    let side = 2 * set.b + 1;
    let mut out = Vec::new();
    for (i, &m) in set.bits.iter().enumerate() {
        if m {
            let mut idx = i as i64;
            let mut u = vec![0i64; set.dim()];
            for k in (0..set.dim()).rev() {
                u[k] = idx % side - set.b;
                idx /= side;
            }
            out.push(u);
        }
    }
    out
}

/// Monoid generating set of a toric monoid: `±e_i` for `ℤⁿ`, `e_i` for `ℕⁿ`,
/// the Hilbert basis for cone monoids of rank at most 3.
pub fn hilbert_basis(m: &ToricMonoid) -> Result<Vec<IntVec>> {
    m.generators()
}

/// Stratum data of a prime: the face `τ` given by its ideal-kernel and a
/// basis of `ℤⁿ ∩ τ^⊥`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stratum {
    pub face: Face,
    pub perp_basis: Vec<IntVec>,
}

pub fn stratum_of(p: &PrimeCongruence) -> Result<Stratum> {
    if !p.in_cont() {
        return Err(Error::NotInCont);
    }
    let k = p.ideal_kernel_face()?;
    Ok(Stratum { face: k.face, perp_basis: k.perp_basis })
}

/// The prime on `S[ℤⁿ ∩ τ^⊥]` corresponding to `p` in its stratum `V_τ`.
pub fn stratum_restrict(p: &PrimeCongruence) -> Result<PrimeCongruence> {
    let s = stratum_of(p)?;
    let r = p.restrict(&s.perp_basis)?;
    r.with_monoid(ToricMonoid::lattice(s.perp_basis.len()))
}

impl Cone {
    /// Whether every coordinate `u_j` is nonnegative on `σ^∨`, i.e. `-e_j ∈ σ`.
    pub fn coordinate_nonnegative(&self, j: usize) -> Result<bool> {
        let mut e = vec![0i64; self.n];
        e[j] = -1;
        self.contains_vector(&e)
    }

    /// The smallest face containing the given vectors of `σ`.
    pub fn face_containing(&self, vectors: &[IntVec]) -> Result<Face> {
        let d = self.dual()?;
        let face_gens: Vec<IntVec> = d
            .generators()
            .into_iter()
            .filter(|g| vectors.iter().all(|v| dot_i(v, g) == 0))
            .collect();
        Ok(Face {
            rays: (0..self.rays.len())
                .filter(|&i| face_gens.iter().all(|g| dot_i(&self.rays[i], g) == 0))
                .collect(),
        })
    }

    /// Integer generators of the face `σ^∨ ∩ τ^⊥` of the dual cone.
    pub fn dual_face_generators(&self, face: &Face) -> Result<Vec<IntVec>> {
        let d = self.dual()?;
        Ok(d.generators()
            .into_iter()
            .filter(|g| face.rays.iter().all(|&i| dot_i(&self.rays[i], g) == 0))
            .collect())
    }
}

impl Face {
    pub fn is_zero(&self) -> bool {
        self.rays.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: Vec<IntVec>) -> BTreeSet<IntVec> {
        v.into_iter().collect()
    }

    #[test]
    fn dual_of_negative_orthant() {
        let d = Cone::negative_orthant(2).dual().unwrap();
        assert_eq!(set(d.generators()), set(vec![vec![1, 0], vec![0, 1]]));
        assert!(d.lineality.is_empty());
    }

    #[test]
    fn dual_of_zero_cone_is_everything() {
        let d = Cone::zero(2).dual().unwrap();
        assert_eq!(d.lineality.len(), 2);
        assert!(d.contains(&[-5, 7]));
    }

    #[test]
    fn dual_of_diagonal_ray() {
        let c = Cone::new(2, vec![vec![-1, -1]]).unwrap();
        let d = c.dual().unwrap();
        assert_eq!(d.extreme_rays, vec![vec![1, 1]]);
        assert_eq!(d.lineality.len(), 1);
        assert!(d.contains(&[3, -2]));
        assert!(!d.contains(&[-2, 1]));
    }

    #[test]
    fn lines_are_rejected() {
        assert!(Cone::new(1, vec![vec![1], vec![-1]]).is_err());
        assert!(Cone::new(2, vec![vec![1, 0], vec![0, 1], vec![-1, -1]]).is_err());
    }

    #[test]
    fn face_counts() {
        let ray = Cone::new(2, vec![vec![-1, -1]]).unwrap();
        assert_eq!(ray.faces().unwrap().len(), 2);
        assert_eq!(Cone::negative_orthant(2).faces().unwrap().len(), 4);
        assert_eq!(Cone::zero(3).faces().unwrap(), vec![Face { rays: vec![] }]);
    }

    #[test]
    fn hilbert_bases() {
        let ray = Cone::new(2, vec![vec![-1, -1]]).unwrap();
        assert_eq!(
            set(hilbert_basis_of_cone(&ray).unwrap()),
            set(vec![vec![1, 0], vec![0, 1], vec![1, -1], vec![-1, 1]])
        );
        assert_eq!(
            set(hilbert_basis_of_cone(&Cone::negative_orthant(2)).unwrap()),
            set(vec![vec![1, 0], vec![0, 1]])
        );
        assert_eq!(
            set(hilbert_basis_of_cone(&Cone::zero(1)).unwrap()),
            set(vec![vec![1], vec![-1]])
        );
        assert!(matches!(
            hilbert_basis_of_cone(&Cone::zero(4)),
            Err(Error::RankTooLarge(4, 3))
        ));
    }

    #[test]
    fn hilbert_basis_of_non_simplicial_cone() {
        // σ^∨ = cone{(1,0),(1,2)}: Hilbert basis {(1,0),(1,1),(1,2)}.
        let c = Cone::new(2, vec![vec![0, -1], vec![-2, 1]]).unwrap();
        assert_eq!(
            set(hilbert_basis_of_cone(&c).unwrap()),
            set(vec![vec![1, 0], vec![1, 1], vec![1, 2]])
        );
    }

    #[test]
    fn perp_lattice_of_face() {
        let c = Cone::new(2, vec![vec![-1, 0], vec![1, -1]]).unwrap();
        let f = Face { rays: vec![0] };
        assert_eq!(c.perp_lattice(&f), vec![vec![0, 1]]);
    }
}
