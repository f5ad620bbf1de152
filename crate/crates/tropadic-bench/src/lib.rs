//! Fixed inputs for the benchmarks in `benches/`.

use tropadic::text::{parse_poly, parse_prime};
use tropadic::{Cone, FieldScalar, Polynomial, PrimeCongruence, SeriesStream, ToricMonoid, TruncatedSeries};

pub fn prime(src: &str) -> PrimeCongruence {
    parse_prime(src).expect("fixture parses")
}

/// A three-row prime on `ℤ³` with irrational entries.
pub fn deep_prime() -> PrimeCongruence {
    prime("prime { monoid: ZZ^3; gamma: QQ; matrix: [[2, 1r2, -1, 1r3], [0, 1, 1r6, 0], [0, 0, 1, -1/2r2]] }")
}

/// A refinement of `deep_prime` and a prime that orders its log-kernel the
/// other way.
pub fn containment_pair() -> (PrimeCongruence, PrimeCongruence, PrimeCongruence) {
    let p = deep_prime();
    let inside = prime(
        "prime { monoid: ZZ^3; gamma: QQ; matrix: [[2, 1r2, -1, 1r3], [0, 1, 1r6, 0], [0, 0, 1, -1/2r2], [0, 1, 0, 0]] }",
    );
    let outside = prime("prime { monoid: ZZ^3; gamma: QQ; matrix: [[2, 1r2, -1, 1r3], [0, 1r6, -1, 0]] }");
    (p, inside, outside)
}

pub fn ray_cone_pair() -> (PrimeCongruence, PrimeCongruence) {
    (
        prime("prime { monoid: cone{rays=[[-1,-1]]}; gamma: QQ; matrix: [[1, 1r2, 1r3]] }"),
        prime("prime { monoid: cone{rays=[[-1,-1]]}; gamma: QQ; matrix: [[1, 0, 1r3-1r2]] }"),
    )
}

/// A dense polynomial on `ℤ²` with `k²` terms.
pub fn dense_poly(k: i64) -> Polynomial {
    let mut src = Vec::new();
    for a in 0..k {
        for b in 0..k {
            src.push(format!("t^{}*x1^{a}*x2^{b}", -(a * b) % 7));
        }
    }
    parse_poly(&src.join(" + "), &ToricMonoid::lattice(2)).expect("fixture parses")
}

pub fn dense_series(k: i64) -> TruncatedSeries {
    let p = prime("prime { monoid: ZZ^2; gamma: QQ; matrix: [[1, -1, -1r2]] }");
    TruncatedSeries::with_radius(&p, dense_poly(k), &FieldScalar::from(-20)).expect("valid series")
}

pub fn geometric_stream() -> SeriesStream {
    tropadic::text::parse_stream("stream { coeff0: 0; coeff_step: -1; exp0: [0, 0]; exp_step: [1, 1] }").expect("fixture parses")
}

pub fn square_cone() -> Cone {
    Cone::new(3, vec![vec![-1, 0, -1], vec![0, -1, -1], vec![1, 0, -1], vec![0, 1, -1]]).expect("pointed")
}
