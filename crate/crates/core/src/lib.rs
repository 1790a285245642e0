//! Exact finite-dimensional nonassociative algebras over the rationals.
//!
//! Algebras are given by structure constants on a basis. On top of that sit
//! linear operators and their defining identities (Rota–Baxter, averaging,
//! derivation, idempotent), constructions that derive a new product from an
//! operator, a polynomial-identity checker, and a search for elements whose
//! left multiplication operator has a prescribed property.

pub mod algebra;
pub mod certify;
pub mod construct;
pub mod error;
pub mod fixtures;
pub mod identity;
pub mod io;
mod kernel;
pub mod linalg;
pub mod operator;
pub mod random;
pub mod scalar;
pub mod search;
pub mod verdict;

pub use algebra::{induce_subalgebra, Algebra, Element, Embedding, Provenance};
pub use certify::{certify_parametric, Certificate, Parameter};
pub use construct::{derive, hadamard_algebra, Construction};
pub use error::{Error, Result};
pub use identity::{
    check_identity, check_identity_random, FormalIdentity, IdentityName, Polarization,
};
pub use linalg::Matrix;
pub use operator::{
    check_operator_property, left_multiplication_operator, LinearOperator, OperatorProperty,
};
pub use scalar::Scalar;
pub use search::{
    find_special, solve_linear, verify_element, AffineSpace, ElementFamily, LinearConstraint,
    QuadraticConstraint, SearchResult, Strategy,
};
pub use verdict::{Verdict, Witness, WitnessPoint};
