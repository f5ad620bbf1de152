//! Exact linear algebra over the rationals and the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rat = BigRational;

/// Reduces `m` in place to reduced row echelon form and returns the pivot columns.
pub fn rref(m: &mut [Vec<Rat>]) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let d = &f * &m[r][j];
                    m[i][j] -= d;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &[Vec<Rat>]) -> usize {
    let mut w = m.to_vec();
    rref(&mut w).len()
}

/// Basis of `{x in Q^ncols : m x = 0}`.
pub fn nullspace(m: &[Vec<Rat>], ncols: usize) -> Vec<Vec<Rat>> {
    let mut w: Vec<Vec<Rat>> = m.to_vec();
    let pivots = rref(&mut w);
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rat::zero(); ncols];
        v[free] = Rat::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -w[r][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Some solution of `m x = b`, if one exists.
pub fn solve(m: &[Vec<Rat>], b: &[Rat], ncols: usize) -> Option<Vec<Rat>> {
    let mut aug: Vec<Vec<Rat>> = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![Rat::zero(); ncols];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[r][ncols].clone();
    }
    Some(x)
}

pub fn in_span(vectors: &[Vec<Rat>], v: &[Rat]) -> bool {
    let mut with = vectors.to_vec();
    with.push(v.to_vec());
    rank(&with) == rank(vectors)
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).fold(Rat::zero(), |acc, (x, y)| acc + x * y)
}

/// Primitive integer vector that is a positive multiple of `v`.
pub fn primitive_integer(v: &[Rat]) -> Vec<BigInt> {
    let l = v
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &l).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

/// Basis of the saturated integer kernel `{x in Z^n : rows x = 0}`,
/// by unimodular column reduction.
pub fn integer_kernel(rows: &[Vec<BigInt>], n: usize) -> Vec<Vec<BigInt>> {
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    let mut u: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| BigInt::from((i == j) as i64)).collect())
        .collect();
    let col_axpy = |m: &mut Vec<Vec<BigInt>>, dst: usize, src: usize, q: &BigInt| {
        for row in m.iter_mut() {
            let d = &row[src] * q;
            row[dst] -= d;
        }
    };
    let col_swap = |m: &mut Vec<Vec<BigInt>>, i: usize, j: usize| {
        for row in m.iter_mut() {
            row.swap(i, j);
        }
    };
    let mut piv = 0;
    for r in 0..a.len() {
        if piv == n {
            break;
        }
        for c in piv + 1..n {
            while !a[r][c].is_zero() {
                let q = a[r][piv].div_floor(&a[r][c]);
                col_axpy(&mut a, piv, c, &q);
                col_axpy(&mut u, piv, c, &q);
                col_swap(&mut a, piv, c);
                col_swap(&mut u, piv, c);
            }
        }
        if !a[r][piv].is_zero() {
            piv += 1;
        }
    }
    (piv..n)
        .map(|c| {
            let mut v: Vec<BigInt> = u.iter().map(|row| row[c].clone()).collect();
            if let Some(f) = v.iter().find(|x| !x.is_zero()) {
                if f.is_negative() {
                    v.iter_mut().for_each(|x| *x = -x.clone());
                }
            }
            v
        })
        .collect()
}
