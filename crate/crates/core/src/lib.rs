//! Finite simplicial complexes and the machinery to rebuild, quotient,
//! flip-reduce and verify symmetric triangulations.

pub mod bistellar;
pub mod complex;
pub mod datasets;
pub mod error;
pub mod group;
pub mod homology;
pub mod isomorphism;
pub mod scalar;

pub use complex::{parse_facets, Complex, FVector, Face, Parsed, VertexTable};
pub use error::{Error, Result};
pub use group::{
    check_action, orbit_expand, parse_group_spec, quotient, Group, OrbitSpec, Permutation,
};
pub use homology::{homology, HomologyProfile, Ring};
pub use isomorphism::{are_isomorphic, automorphism_group, AutomorphismGroup};
pub use scalar::{EliminationScalar, Fp};

/// `Z/2`.
pub type Gf2 = Fp<2>;
/// `Z/3`.
pub type Gf3 = Fp<3>;
/// `Z/5`.
pub type Gf5 = Fp<5>;
/// Exact rationals.
pub type Rational = num_rational::BigRational;
/// Arbitrary precision integers.
pub type Integer = num_bigint::BigInt;
