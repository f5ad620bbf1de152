mod common;

use common::*;
use proptest::prelude::*;
use rand::Rng;
use std::collections::{BTreeSet, HashSet, VecDeque};
use tropadic::geometry::*;
use tropadic::{CoefficientGroup, Cone, Error, ExtScalar, FieldScalar, PrimeCongruence, Term, ToricMonoid};

fn set(v: Vec<Vec<i64>>) -> BTreeSet<Vec<i64>> {
    v.into_iter().collect()
}

fn ray() -> Cone {
    Cone::new(2, vec![vec![-1, -1]]).unwrap()
}

#[test]
fn dual_examples() {
    let d = dual_cone(&Cone::negative_orthant(2)).unwrap();
    assert_eq!(set(d.generators()), set(vec![vec![1, 0], vec![0, 1]]));
    let d = dual_cone(&Cone::zero(3)).unwrap();
    assert_eq!(d.lineality.len(), 3);
    assert!(d.contains(&[-4, 9, 1]));
    let d = dual_cone(&ray()).unwrap();
    assert_eq!(d.inequalities, vec![vec![-1, -1]]);
    for u in [[2, -2], [0, 0], [5, -1]] {
        assert!(d.contains(&u));
    }
    assert!(!d.contains(&[-1, 0]));
    assert!(matches!(dual_cone(&Cone::zero(5)), Err(Error::RankTooLarge(..))));
}

#[test]
fn face_examples() {
    assert_eq!(faces(&ray()).unwrap().len(), 2);
    assert_eq!(faces(&Cone::negative_orthant(2)).unwrap().len(), 4);
    assert_eq!(faces(&Cone::zero(2)).unwrap(), vec![Face { rays: vec![] }]);
    let square = Cone::new(3, vec![vec![-1, 0, -1], vec![0, -1, -1], vec![1, 0, -1], vec![0, 1, -1]]).unwrap();
    // Apex, four rays, four facets, the cone itself.
    assert_eq!(faces(&square).unwrap().len(), 10);
}

#[test]
fn hilbert_examples() {
    let m = ToricMonoid::cone(ray()).unwrap();
    assert_eq!(set(hilbert_basis(&m).unwrap()), set(vec![vec![1, 0], vec![0, 1], vec![1, -1], vec![-1, 1]]));
    assert_eq!(set(hilbert_basis(&ToricMonoid::affine(2)).unwrap()), set(vec![vec![1, 0], vec![0, 1]]));
    assert_eq!(set(hilbert_basis(&ToricMonoid::lattice(1)).unwrap()), set(vec![vec![1], vec![-1]]));
    let big = ToricMonoid::cone(Cone::new(4, vec![vec![-1, -1, -1, -1]]).unwrap()).unwrap();
    assert!(matches!(hilbert_basis(&big), Err(Error::NoGenerators(4))));
}

#[test]
fn stratum_examples() {
    let z = ToricMonoid::lattice(2);
    let p = prime(&z, vec![vec![s(1), r2(), s(3)]]);
    let st = stratum_of(&p).unwrap();
    assert!(st.face.is_zero());
    assert_eq!(stratum_restrict(&p).unwrap(), p);

    let n = ToricMonoid::affine(2);
    let p = PrimeCongruence::new(n, CoefficientGroup::qq(), vec![vec![s(1).into(), s(2).into(), ExtScalar::Bottom]]).unwrap();
    let st = stratum_of(&p).unwrap();
    assert_eq!(st.face, Face { rays: vec![1] });
    assert_eq!(st.perp_basis, vec![vec![1, 0]]);
    assert_eq!(stratum_restrict(&p).unwrap(), prime(&ToricMonoid::lattice(1), vec![vec![s(1), s(2)]]));
}

#[test]
fn stratum_of_a_cone_prime() {
    // M = {u2 >= 0, u1 + u2 >= 0}; x2 in the kernel cuts out the ray (0,-1).
    let m = ToricMonoid::cone(Cone::new(2, vec![vec![0, -1], vec![-1, -1]]).unwrap()).unwrap();
    let rows = vec![vec![s(1).into(), ExtScalar::Finite(r3()), ExtScalar::Bottom], vec![s(0).into(), s(1).into(), ExtScalar::Bottom]];
    let p = PrimeCongruence::new(m, CoefficientGroup::qq(), rows).unwrap();
    let st = stratum_of(&p).unwrap();
    assert_eq!(st.perp_basis.len(), 1);
    assert_eq!(st.perp_basis[0][1], 0);
    let res = stratum_restrict(&p).unwrap();
    assert!(res.has_trivial_kernel());
    assert_eq!(res.rank(), 1);
    for a in -2..=2 {
        for k in -3..=3i64 {
            let u: Vec<i64> = st.perp_basis[0].iter().map(|x| x * k).collect();
            assert_eq!(p.psi_eval(&Term::new(s(a), u)), res.psi_eval(&Term::new(s(a), vec![k])));
        }
    }
}

/// Pointed cone: every ray has negative coordinate sum.
fn rand_cone(r: &mut impl Rng, n: usize) -> Cone {
    loop {
        let k = r.gen_range(1..=4);
        let rays: Vec<Vec<i64>> = (0..k)
            .map(|_| loop {
                let v: Vec<i64> = (0..n).map(|_| r.gen_range(-2..=2)).collect();
                if v.iter().sum::<i64>() < 0 {
                    break v;
                }
            })
            .collect();
        if let Ok(c) = Cone::new(n, rays) {
            return c;
        }
    }
}

/// Lattice points of `[-b, b]ⁿ` reachable from 0 by adding generators.
fn reachable(gens: &[Vec<i64>], n: usize, b: i64) -> HashSet<Vec<i64>> {
    let mut seen = HashSet::from([vec![0; n]]);
    let mut queue = VecDeque::from([vec![0; n]]);
    while let Some(u) = queue.pop_front() {
        for g in gens {
            let v: Vec<i64> = u.iter().zip(g).map(|(a, c)| a + c).collect();
            if v.iter().all(|x| x.abs() <= b) && seen.insert(v.clone()) {
                queue.push_back(v);
            }
        }
    }
    seen
}

fn box_points(n: usize, b: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out.into_iter().flat_map(|p| (-b..=b).map(move |x| [p.clone(), vec![x]].concat())).collect();
    }
    out
}

proptest! {
    #![proptest_config(config(48))]

    #[test]
    fn hilbert_basis_certified_on_a_box(mut r in rng_seed(), n in 2usize..=3) {
        let c = rand_cone(&mut r, n);
        let d = c.dual().unwrap();
        let hb = hilbert_basis_of_cone(&c).unwrap();
        for h in &hb {
            prop_assert!(d.contains(h));
        }
        let b = if n == 2 { 4 } else { 2 };
        let reach = reachable(&hb, n, 4 * b);
        for u in box_points(n, b) {
            prop_assert_eq!(d.contains(&u), reach.contains(&u), "{:?}", u);
        }
        if c.is_full_dimensional() {
            for (i, h) in hb.iter().enumerate() {
                let rest: Vec<Vec<i64>> = hb.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, g)| g.clone()).collect();
                let bound = 4 * h.iter().map(|x| x.abs()).max().unwrap();
                prop_assert!(!reachable(&rest, n, bound).contains(h));
            }
        }
    }

    #[test]
    fn faces_form_a_lattice(mut r in rng_seed(), n in 2usize..=3) {
        let c = rand_cone(&mut r, n);
        let fs: BTreeSet<Face> = faces(&c).unwrap().into_iter().collect();
        let (apex, whole) = (Face { rays: vec![] }, Face { rays: (0..c.rays().len()).collect() });
        prop_assert!(fs.contains(&apex) && fs.contains(&whole));
        for a in &fs {
            for b in &fs {
                let meet = Face { rays: a.rays.iter().filter(|i| b.rays.contains(i)).copied().collect() };
                prop_assert!(fs.contains(&meet));
            }
            // A supporting functional cutting out exactly this face.
            let gens = c.dual_face_generators(a).unwrap();
            let u: Vec<i64> = (0..n).map(|k| gens.iter().map(|g| g[k]).sum()).collect();
            for (i, v) in c.rays().iter().enumerate() {
                prop_assert_eq!(dot_i(v, &u) == 0, a.rays.contains(&i));
            }
        }
    }

    #[test]
    fn refinements_stay_in_one_stratum(mut r in rng_seed()) {
        let n = r.gen_range(1..=3);
        let m = ToricMonoid::affine(n);
        let k = r.gen_range(1..=3);
        let mut rows: Vec<Vec<ExtScalar>> = rand_cont_rows(&mut r, n, k, 4, 0.3)
            .into_iter()
            .map(|row| row.into_iter().map(ExtScalar::Finite).collect())
            .collect();
        let cut: Vec<usize> = (1..=n).filter(|_| r.gen_bool(0.4)).collect();
        for row in rows.iter_mut() {
            for &j in &cut {
                row[j] = ExtScalar::Bottom;
            }
        }
        let coarse = PrimeCongruence::new(m.clone(), CoefficientGroup::qq(), rows[..1].to_vec()).unwrap();
        let fine = PrimeCongruence::new(m, CoefficientGroup::qq(), rows).unwrap();
        prop_assert!(tropadic::prime::contains(&fine, &coarse).unwrap().holds);
        let (a, b) = (stratum_of(&coarse).unwrap(), stratum_of(&fine).unwrap());
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(a.face.rays.len(), cut.len());
        let res = stratum_restrict(&fine).unwrap();
        prop_assert!(res.has_trivial_kernel());
        for _ in 0..8 {
            let w: Vec<i64> = (0..b.perp_basis.len()).map(|_| r.gen_range(0..=3)).collect();
            let mut u = vec![0; n];
            for (c, e) in w.iter().zip(&b.perp_basis) {
                u.iter_mut().zip(e).for_each(|(x, y)| *x += c * y);
            }
            let a0 = FieldScalar::from_rat(rand_rat(&mut r, 3, 2));
            prop_assert_eq!(fine.psi_eval(&Term::new(a0.clone(), u)), res.psi_eval(&Term::new(a0, w)));
        }
    }
}
