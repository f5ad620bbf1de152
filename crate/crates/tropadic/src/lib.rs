//! Exact computations with matrix-defined prime congruences on toric monoid
//! semirings over sub-semifields of the tropical semifield, and with power
//! series convergent at such primes.

pub mod dimension;
pub mod error;
pub mod geometry;
pub mod linalg;
pub mod monomial;
pub mod prime;
pub mod scalar;
pub mod series;
pub mod spectrum;
pub mod text;
pub mod transcendence;

pub use error::{Error, Result};
pub use geometry::{Cone, DualCone, Face, Stratum};
pub use monomial::{MonoidKind, Polynomial, Term, ToricMonoid};
pub use prime::{contains, Containment, ContainmentWitness, KernelFace, PrimeCongruence};
pub use scalar::{CoefficientGroup, ExtScalar, FieldScalar, LexTuple};
pub use series::{Certificate, Convergence, Distance, SeriesStream, TruncatedSeries};
pub use spectrum::{Crown, TropicalPoint};
pub use transcendence::{ExtensionSpec, Relation};
pub use dimension::{DimReport, Exactness};
