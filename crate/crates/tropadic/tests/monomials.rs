mod common;

use common::*;
use proptest::prelude::*;
use rand::Rng;
use std::collections::BTreeMap;
use tropadic::monomial::{monoid_contains, poly_add, poly_mul};
use tropadic::{Cone, Error, FieldScalar, Polynomial, Term, ToricMonoid};

fn ray_monoid() -> ToricMonoid {
    ToricMonoid::cone(Cone::new(2, vec![vec![-1, -1]]).unwrap()).unwrap()
}

fn poly(m: &ToricMonoid, terms: &[(i64, &[i64])]) -> Polynomial {
    Polynomial::from_terms(m, terms.iter().map(|(a, u)| Term::new(s(*a), u.to_vec()))).unwrap()
}

#[test]
fn membership_examples() {
    let m = ray_monoid();
    assert!(monoid_contains(&m, &[3, -2]).unwrap());
    assert!(!monoid_contains(&m, &[-2, 1]).unwrap());
    assert!(monoid_contains(&ToricMonoid::affine(2), &[0, 0]).unwrap());
    assert!(matches!(monoid_contains(&m, &[1]), Err(Error::DimensionMismatch { .. })));
}

#[test]
fn addition_examples() {
    let m = ToricMonoid::affine(1);
    let f = poly(&m, &[(0, &[0]), (1, &[1])]);
    let g = poly(&m, &[(2, &[0]), (0, &[1])]);
    assert_eq!(poly_add(&f, &g).unwrap(), poly(&m, &[(2, &[0]), (1, &[1])]));
    assert_eq!(poly_add(&f, &f).unwrap(), f);
    assert_eq!(poly_add(&f, &Polynomial::zero(&m)).unwrap(), f);
}

#[test]
fn product_examples() {
    let m = ToricMonoid::affine(1);
    let f = poly(&m, &[(0, &[0]), (0, &[1])]);
    assert_eq!(poly_mul(&f, &f).unwrap(), poly(&m, &[(0, &[0]), (0, &[1]), (0, &[2])]));
    let g = poly(&m, &[(1, &[0]), (0, &[1])]);
    assert_eq!(poly_mul(&g, &g).unwrap(), poly(&m, &[(2, &[0]), (1, &[1]), (0, &[2])]));
    let z = ToricMonoid::lattice(1);
    assert_eq!(poly_mul(&poly(&z, &[(0, &[1])]), &poly(&z, &[(0, &[-1])])).unwrap(), poly(&z, &[(0, &[0])]));
    let err = poly_mul(&f, &poly(&z, &[(0, &[1])]));
    assert_eq!(err, Err(Error::MonoidMismatch));
}

fn rand_poly(r: &mut impl Rng, m: &ToricMonoid, max_terms: usize) -> Polynomial {
    let n = m.rank();
    let mut terms = Vec::new();
    while terms.len() < r.gen_range(0..=max_terms) {
        let u = rand_exp(r, n, 3);
        if monoid_contains(m, &u).unwrap() {
            terms.push(Term::new(rand_scalar(r, 4, 3, 0.0), u));
        }
    }
    Polynomial::from_terms(m, terms).unwrap()
}

/// Max-plus convolution written as a double loop over term pairs.
fn brute_mul(f: &Polynomial, g: &Polynomial) -> BTreeMap<Vec<i64>, FieldScalar> {
    let mut out: BTreeMap<Vec<i64>, FieldScalar> = BTreeMap::new();
    for a in f.terms() {
        for b in g.terms() {
            let u: Vec<i64> = a.exp.iter().zip(&b.exp).map(|(x, y)| x + y).collect();
            let c = &a.coeff + &b.coeff;
            let e = out.entry(u).or_insert_with(|| c.clone());
            if c > *e {
                *e = c;
            }
        }
    }
    out
}

fn monoids() -> Vec<ToricMonoid> {
    vec![ToricMonoid::lattice(2), ToricMonoid::affine(2), ray_monoid()]
}

proptest! {
    #![proptest_config(config(128))]

    #[test]
    fn semiring_laws(mut r in rng_seed(), k in 0usize..3) {
        let m = &monoids()[k];
        let (f, g, h) = (rand_poly(&mut r, m, 6), rand_poly(&mut r, m, 6), rand_poly(&mut r, m, 6));
        prop_assert_eq!(poly_add(&f, &g).unwrap(), poly_add(&g, &f).unwrap());
        prop_assert_eq!(poly_mul(&f, &g).unwrap(), poly_mul(&g, &f).unwrap());
        prop_assert_eq!(poly_add(&poly_add(&f, &g).unwrap(), &h).unwrap(), poly_add(&f, &poly_add(&g, &h).unwrap()).unwrap());
        prop_assert_eq!(poly_mul(&poly_mul(&f, &g).unwrap(), &h).unwrap(), poly_mul(&f, &poly_mul(&g, &h).unwrap()).unwrap());
        prop_assert_eq!(
            poly_mul(&f, &poly_add(&g, &h).unwrap()).unwrap(),
            poly_add(&poly_mul(&f, &g).unwrap(), &poly_mul(&f, &h).unwrap()).unwrap()
        );
        prop_assert_eq!(poly_add(&f, &f).unwrap(), f.clone());
        let one = Polynomial::term(m, Term::new(s(0), vec![0; 2])).unwrap();
        prop_assert_eq!(poly_mul(&f, &one).unwrap(), f.clone());
        prop_assert!(poly_mul(&f, &Polynomial::zero(m)).unwrap().is_zero());
    }

    #[test]
    fn product_matches_double_loop(mut r in rng_seed(), k in 0usize..3) {
        let m = &monoids()[k];
        let (f, g) = (rand_poly(&mut r, m, 8), rand_poly(&mut r, m, 8));
        let fg = poly_mul(&f, &g).unwrap();
        let want = brute_mul(&f, &g);
        prop_assert_eq!(fg.len(), want.len());
        for (u, c) in &want {
            prop_assert_eq!(fg.coeff(u), Some(c));
            prop_assert!(monoid_contains(m, u).unwrap());
        }
    }
}
