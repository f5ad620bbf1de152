//! Shared random generators and independent oracles for the integration tests.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::cmp::Ordering;
use tropadic::{CoefficientGroup, ExtScalar, FieldScalar, LexTuple, PrimeCongruence, Term, ToricMonoid};

pub type Rat = BigRational;

pub fn seed() -> u64 {
    std::env::var("TROPADIC_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(20_241_015)
}

pub fn rng(stream: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed() ^ stream.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

/// Proptest configuration pinned to `TROPADIC_SEED`.
pub fn config(cases: u32) -> Config {
    Config { cases, rng_seed: RngSeed::Fixed(seed()), failure_persistence: None, ..Config::default() }
}

/// A generator seed, for composite objects built with the `rand_*` helpers.
pub fn rng_seed() -> impl Strategy<Value = ChaCha8Rng> {
    any::<u64>().prop_map(ChaCha8Rng::seed_from_u64)
}

prop_compose! {
    pub fn arb_rat(max_num: i64, max_den: i64)(n in -max_num..=max_num, d in 1..=max_den) -> Rat {
        q(n, d)
    }
}

prop_compose! {
    /// Field elements with small coordinates in all four basis directions.
    pub fn arb_scalar()(a in arb_rat(9, 6), b in arb_rat(3, 4), c in arb_rat(3, 4), d in arb_rat(2, 3)) -> FieldScalar {
        FieldScalar::from_coords([a, b, c, d])
    }
}

pub fn q(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

pub fn s(n: i64) -> FieldScalar {
    FieldScalar::from_int(n)
}

pub fn r2() -> FieldScalar {
    FieldScalar::sqrt2()
}

pub fn r3() -> FieldScalar {
    FieldScalar::sqrt3()
}

pub fn fin(v: Vec<FieldScalar>) -> Vec<ExtScalar> {
    v.into_iter().map(ExtScalar::Finite).collect()
}

pub fn tuple(v: &[i64]) -> LexTuple {
    LexTuple::Tuple(v.iter().map(|&x| s(x)).collect())
}

pub fn prime(m: &ToricMonoid, rows: Vec<Vec<FieldScalar>>) -> PrimeCongruence {
    PrimeCongruence::from_finite(m.clone(), CoefficientGroup::qq(), rows).unwrap()
}

pub fn rand_rat(r: &mut impl Rng, max_num: i64, max_den: i64) -> Rat {
    q(r.gen_range(-max_num..=max_num), r.gen_range(1..=max_den))
}

/// A rational plus, with probability `irr`, small `√2` and `√3` parts.
pub fn rand_scalar(r: &mut impl Rng, max_num: i64, max_den: i64, irr: f64) -> FieldScalar {
    let mut c: [Rat; 4] = [rand_rat(r, max_num, max_den), Rat::zero(), Rat::zero(), Rat::zero()];
    if r.gen_bool(irr) {
        c[1] = rand_rat(r, 2, 2);
    }
    if r.gen_bool(irr / 2.0) {
        c[2] = rand_rat(r, 2, 2);
    }
    FieldScalar::from_coords(c)
}

pub fn positive_scalar(r: &mut impl Rng, max_den: i64) -> FieldScalar {
    FieldScalar::from_rat(q(r.gen_range(1..=2 * max_den), max_den))
}

/// Random finite matrix with a positive coefficient entry in the first row.
pub fn rand_cont_rows(r: &mut impl Rng, n: usize, k: usize, max_den: i64, irr: f64) -> Vec<Vec<FieldScalar>> {
    (0..k)
        .map(|i| {
            let mut row = vec![if i == 0 { positive_scalar(r, max_den) } else { rand_scalar(r, 2, max_den, 0.0) }];
            row.extend((0..n).map(|_| rand_scalar(r, 3, max_den, irr)));
            row
        })
        .collect()
}

pub fn rand_lattice_prime(r: &mut impl Rng, n: usize, max_rows: usize, irr: f64) -> PrimeCongruence {
    let k = r.gen_range(1..=max_rows);
    prime(&ToricMonoid::lattice(n), rand_cont_rows(r, n, k, 6, irr))
}

pub fn rand_exp(r: &mut impl Rng, n: usize, b: i64) -> Vec<i64> {
    (0..n).map(|_| r.gen_range(-b..=b)).collect()
}

pub fn rand_term(r: &mut impl Rng, n: usize) -> Term {
    Term::new(rand_scalar(r, 4, 2, 0.3), rand_exp(r, n, 3))
}

/// Sign of a field element by interval refinement of `√2`, `√3`, `√6`,
/// independent of the exact tower arithmetic in the library.
pub fn oracle_sign(x: &FieldScalar) -> Ordering {
    let c = x.coords();
    if c.iter().all(Zero::is_zero) {
        return Ordering::Equal;
    }
    let mut bits = 8u32;
    loop {
        let scale = BigInt::one() << bits;
        let sq = |n: i64| {
            let s = (BigInt::from(n) * &scale * &scale).sqrt();
            (Rat::new(s.clone(), scale.clone()), Rat::new(s + 1, scale.clone()))
        };
        let roots = [sq(2), sq(3), sq(6)];
        let mut lo = c[0].clone();
        let mut hi = c[0].clone();
        for (coef, (rl, rh)) in c[1..].iter().zip(&roots) {
            if coef.is_negative() {
                lo += coef * rh;
                hi += coef * rl;
            } else {
                lo += coef * rl;
                hi += coef * rh;
            }
        }
        if lo.is_positive() {
            return Ordering::Greater;
        }
        if hi.is_negative() {
            return Ordering::Less;
        }
        bits += 16;
    }
}

pub fn oracle_cmp(a: &FieldScalar, b: &FieldScalar) -> Ordering {
    oracle_sign(&(a - b))
}

/// Lex comparison of finite tuples with the interval oracle, zero-padded.
pub fn oracle_lex(a: &[FieldScalar], b: &[FieldScalar]) -> Ordering {
    let k = a.len().max(b.len());
    let z = FieldScalar::zero();
    for i in 0..k {
        let o = oracle_cmp(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z));
        if o != Ordering::Equal {
            return o;
        }
    }
    Ordering::Equal
}

/// `C · (a; u)` for a finite matrix, written out directly.
pub fn oracle_psi(rows: &[Vec<FieldScalar>], a: &FieldScalar, u: &[i64]) -> Vec<FieldScalar> {
    rows.iter()
        .map(|row| {
            let mut acc = &row[0] * a;
            for (c, &x) in row[1..].iter().zip(u) {
                acc = &acc + &(c * &FieldScalar::from_int(x));
            }
            acc
        })
        .collect()
}

pub fn finite_rows(p: &PrimeCongruence) -> Vec<Vec<FieldScalar>> {
    p.rows().iter().map(|r| r.iter().map(|e| e.finite().cloned().expect("finite")).collect()).collect()
}

/// Rank of a rational matrix by textbook Gauss-Jordan elimination.
pub fn oracle_rank(rows: &[Vec<Rat>]) -> usize {
    let mut m: Vec<Vec<Rat>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(rank, piv);
        for i in 0..m.len() {
            if i != rank && !m[i][c].is_zero() {
                let f = &m[i][c] / &m[rank][c];
                for k in c..cols {
                    let d = &f * &m[rank][k];
                    m[i][k] -= d;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// `Q`-rank of `{(q, u) : Σ q_l c₀γ_l + Σ u_j C_j = 0}`, one equation per row
/// and field coordinate.
pub fn oracle_kernel_rank(rows: &[Vec<FieldScalar>], gamma_basis: &[FieldScalar]) -> usize {
    let n = rows[0].len() - 1;
    let mut eqs = Vec::new();
    for row in rows {
        for c in 0..4 {
            let mut eq: Vec<Rat> = gamma_basis.iter().map(|g| (&row[0] * g).coords()[c].clone()).collect();
            eq.extend((1..=n).map(|j| row[j].coords()[c].clone()));
            eqs.push(eq);
        }
    }
    gamma_basis.len() + n - oracle_rank(&eqs)
}
