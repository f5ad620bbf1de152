mod common;

use common::*;
use proptest::prelude::*;
use rand::Rng;
use tropadic::series::threshold;
use tropadic::text::*;
use tropadic::{
    Certificate, CoefficientGroup, Cone, ExtScalar, FieldScalar, Polynomial, PrimeCongruence, SeriesStream, Term,
    ToricMonoid, TruncatedSeries,
};

fn gammas() -> Vec<CoefficientGroup> {
    vec![
        CoefficientGroup::qq(),
        CoefficientGroup::full(),
        CoefficientGroup::span(vec![s(1), r2()]).unwrap(),
    ]
}

fn rand_monoid(r: &mut impl Rng) -> ToricMonoid {
    let n = r.gen_range(1..=3);
    match r.gen_range(0..3) {
        0 => ToricMonoid::lattice(n),
        1 => ToricMonoid::affine(n),
        _ => {
            let mut v = vec![-1i64; n];
            v[0] = -r.gen_range(1..=2);
            ToricMonoid::cone(Cone::new(n, vec![v]).unwrap()).unwrap()
        }
    }
}

/// Any valid prime; on `ℕⁿ` some columns may be bottom.
fn rand_prime(r: &mut impl Rng) -> PrimeCongruence {
    let m = rand_monoid(r);
    let gamma = gammas().swap_remove(r.gen_range(0..3));
    let n = m.rank();
    let k = r.gen_range(1..=3);
    let mut rows = rand_cont_rows(r, n, k, 6, 0.4);
    let mut ext: Vec<Vec<ExtScalar>> = rows.drain(..).map(|row| row.into_iter().map(ExtScalar::Finite).collect()).collect();
    if matches!(m.kind(), tropadic::MonoidKind::Affine) {
        for j in 1..=n {
            if r.gen_bool(0.3) {
                ext.iter_mut().for_each(|row| row[j] = ExtScalar::Bottom);
            }
        }
    }
    PrimeCongruence::new(m, gamma, ext).unwrap()
}

fn rand_poly_on(r: &mut impl Rng, p: &PrimeCongruence) -> Polynomial {
    let m = p.monoid();
    let mut terms = Vec::new();
    for _ in 0..r.gen_range(0..=5) {
        let u = rand_exp(r, m.rank(), 3);
        if m.contains(&u).unwrap() {
            let c = if p.gamma().is_full() { rand_scalar(r, 5, 4, 0.5) } else { FieldScalar::from_rat(rand_rat(r, 5, 4)) };
            terms.push(Term::new(c, u));
        }
    }
    Polynomial::from_terms(m, terms).unwrap()
}

#[test]
fn grammar_examples() {
    let p = parse_prime("prime { monoid: cone{rays=[[-1,-1]]}; gamma: span[1, 1r2]; matrix: [[1, 1r2, -1/2r3+2r6]] }").unwrap();
    assert_eq!(p.rank(), 2);
    assert_eq!(p.gamma().dim(), 2);
    let f = parse_poly("t^-5*x1^5 + t^0", &ToricMonoid::lattice(1)).unwrap();
    assert_eq!(f.len(), 2);
    assert_eq!(parse_poly("0", &ToricMonoid::lattice(2)).unwrap(), Polynomial::zero(&ToricMonoid::lattice(2)));
    assert_eq!(parse_term("t^1/2*x2", 2).unwrap(), Term::new(FieldScalar::from_rat(q(1, 2)), vec![0, 1]));
    assert_eq!(parse_monoid("NN^3").unwrap(), ToricMonoid::affine(3));
    assert!(parse_prime("prime { monoid: ZZ^1; gamma: QQ; matrix: [[1, 0, 0]] }").is_err());
    assert!(parse_prime("prime { monoid: ZZ^1; gamma: QQ; matrix: [[1, -inf]] }").is_err());
    assert!(parse_term("x1^2", 1).is_err());
    assert!(parse_term("t^0*x3", 2).is_err());
    assert!(parse_monoid("cone{rays=[[1,0],[-1,0]]}").is_err());
    assert_eq!(tropadic::Error::Parse(String::new()).code(), "ParseError");
}

#[test]
fn series_precision_forms() {
    let p = parse_prime("prime { monoid: ZZ^1; gamma: QQ; matrix: [[1, 0], [0, 1]] }").unwrap();
    let resolve = |_: &str| Ok(p.clone());
    let f = parse_series("series { prime: p; terms: t^0 + t^-1*x1; precision: -3 }", resolve).unwrap();
    assert_eq!(f.precision(), Some(&threshold(&p, &s(-3))));
    let g = parse_series("series { prime: p; terms: t^0; precision: (-3, 4) }", resolve).unwrap();
    assert_eq!(g.precision(), Some(&tuple(&[-3, 4])));
    assert!(parse_series("series { prime: p; terms: t^0; precision: exact }", resolve).unwrap().is_exact());
    assert!(parse_series("series { prime: q; terms: t^0; precision: exact }", |r| Err(tropadic::Error::Parse(r.into()))).is_err());
}

proptest! {
    #![proptest_config(config(128))]

    #[test]
    fn scalars_round_trip(x in arb_scalar()) {
        prop_assert_eq!(parse_scalar(&x.to_string()).unwrap(), x.clone());
        prop_assert_eq!(parse_ext(&ExtScalar::Finite(x.clone()).to_string()).unwrap(), ExtScalar::Finite(x));
    }

    #[test]
    fn primes_round_trip(mut r in rng_seed()) {
        let p = rand_prime(&mut r);
        prop_assert_eq!(parse_prime(&format_prime(&p)).unwrap(), p);
    }

    #[test]
    fn polynomials_round_trip(mut r in rng_seed()) {
        let p = rand_prime(&mut r);
        let f = rand_poly_on(&mut r, &p);
        prop_assert_eq!(parse_poly(&format_poly(&f), p.monoid()).unwrap(), f);
    }

    #[test]
    fn series_round_trip(mut r in rng_seed()) {
        let n = r.gen_range(1..=2);
        let p = rand_lattice_prime(&mut r, n, 2, 0.4);
        let poly = rand_poly_on(&mut r, &p);
        let f = match r.gen_range(0..3) {
            0 => TruncatedSeries::exact(&p, poly).unwrap(),
            1 => TruncatedSeries::with_radius(&p, poly, &FieldScalar::from_rat(rand_rat(&mut r, 6, 2))).unwrap(),
            _ => {
                let eps: Vec<i64> = (0..p.normalize().rows().len()).map(|_| r.gen_range(-6..=0)).collect();
                TruncatedSeries::new(&p, poly, Some(tuple(&eps))).unwrap()
            }
        };
        let back = parse_series(&format_series(&f), |_| unreachable!()).unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn streams_round_trip(mut r in rng_seed(), with_cert in any::<bool>()) {
        let n = r.gen_range(1..=3);
        let mut step = rand_exp(&mut r, n, 3);
        if step.iter().all(|&x| x == 0) {
            step[0] = 1;
        }
        let cert = with_cert.then(|| Certificate { start: r.gen_range(0..5), ratio: rand_term(&mut r, n) });
        let st = SeriesStream::new(
            ExtScalar::Finite(rand_scalar(&mut r, 4, 3, 0.3)),
            ExtScalar::Finite(rand_scalar(&mut r, 4, 3, 0.3)),
            rand_exp(&mut r, n, 3),
            step,
            cert,
        ).unwrap();
        prop_assert_eq!(parse_stream(&format_stream(&st)).unwrap(), st);
    }
}
