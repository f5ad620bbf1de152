//! Algebraic independence and transcendence degree for finitely generated
//! extensions of `S` inside lex tuples. `Γ` sits in the first coordinate.

use crate::error::{Error, Result};
use crate::linalg::{self, Rat};
use crate::scalar::{CoefficientGroup, FieldScalar, LexTuple};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionSpec {
    base: CoefficientGroup,
    generators: Vec<LexTuple>,
    width: usize,
}

/// An integer relation `Σ uᵢ aᵢ = j(b)` with `b ∈ Γ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub indices: Vec<usize>,
    pub exponents: Vec<BigInt>,
    pub value: FieldScalar,
}

impl ExtensionSpec {
    pub fn new(base: CoefficientGroup, generators: Vec<LexTuple>) -> Result<Self> {
        let mut width = 1;
        for (i, g) in generators.iter().enumerate() {
            let Some(w) = g.width() else {
                return Err(Error::InvalidMatrix(format!("generator {i} is bottom")));
            };
            if i == 0 {
                width = w;
            } else if w != width {
                return Err(Error::WidthMismatch(width, w));
            }
        }
        Ok(ExtensionSpec { base, generators, width })
    }

    pub fn base(&self) -> &CoefficientGroup {
        &self.base
    }

    pub fn generators(&self) -> &[LexTuple] {
        &self.generators
    }

    fn flat(&self, i: usize) -> Vec<Rat> {
        self.generators[i]
            .entries()
            .expect("finite")
            .iter()
            .flat_map(|x| x.coords().clone())
            .collect()
    }

    fn gamma_vectors(&self) -> Vec<Vec<Rat>> {
        self.base
            .basis()
            .iter()
            .map(|g| {
                let mut v = g.coords().to_vec();
                v.resize(4 * self.width, Rat::zero());
                v
            })
            .collect()
    }

    fn rank_with(&self, subset: &[usize]) -> usize {
        let mut m = self.gamma_vectors();
        m.extend(subset.iter().map(|&i| self.flat(i)));
        linalg::rank(&m)
    }
}

/// `Ok(None)` when independent, otherwise a relation among the chosen generators.
pub fn is_alg_independent(ext: &ExtensionSpec, subset: &[usize]) -> Result<Option<Relation>> {
    for &i in subset {
        if i >= ext.generators.len() {
            return Err(Error::DimensionMismatch { expected: ext.generators.len(), got: i + 1 });
        }
    }
    let gv = ext.gamma_vectors();
    let mut cols: Vec<Vec<Rat>> = subset.iter().map(|&i| ext.flat(i)).collect();
    cols.extend(gv.iter().cloned());
    let rows = 4 * ext.width;
    let m: Vec<Vec<Rat>> = (0..rows).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect();
    let Some(v) = linalg::nullspace(&m, cols.len()).into_iter().next() else {
        return Ok(None);
    };
    let k = subset.len();
    let l = v[..k].iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let mut u: Vec<BigInt> = v[..k].iter().map(|x| (x * Rat::from_integer(l.clone())).to_integer()).collect();
    let g = u.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    u.iter_mut().for_each(|x| *x /= &g);
    if u.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        u.iter_mut().for_each(|x| *x = -x.clone());
    }
    let mut value = FieldScalar::zero();
    for (ui, &i) in u.iter().zip(subset) {
        value += &ext.generators[i].entries().expect("finite")[0].mul_int(ui);
    }
    Ok(Some(Relation { indices: subset.to_vec(), exponents: u, value }))
}

pub fn trdeg(ext: &ExtensionSpec) -> usize {
    let all: Vec<usize> = (0..ext.generators.len()).collect();
    ext.rank_with(&all) - ext.base.dim()
}

/// Greedy scan keeping each generator independent of `Γ` and the kept ones.
pub fn transcendence_basis(ext: &ExtensionSpec) -> Vec<usize> {
    let mut kept = Vec::new();
    let mut r = ext.base.dim();
    for i in 0..ext.generators.len() {
        kept.push(i);
        let r2 = ext.rank_with(&kept);
        if r2 > r {
            r = r2;
        } else {
            kept.pop();
        }
    }
    kept
}

/// Whether `subset` is a transcendence basis.
pub fn is_basis(ext: &ExtensionSpec, subset: &[usize]) -> bool {
    ext.rank_with(subset) - ext.base.dim() == subset.len() && subset.len() == trdeg(ext)
}
