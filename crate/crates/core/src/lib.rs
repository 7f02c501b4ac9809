//! Clifford algebra `Cl(n)` and the hypercube `Q^n`.
//!
//! Right multiplication by `S = e_1 + ... + e_n` acts on the blade basis of
//! `Cl(n)` as a signed adjacency operator of the cube. Its `√n` eigenspace
//! has dimension `2^(n-1)`, so it meets the span of any `2^(n-1) + 1` blades,
//! and the largest coefficient of a vector in that intersection sits at a
//! vertex of degree at least `√n` in the induced subgraph. The same holds
//! with edge weights `a_i` and `λ = √(Σ a_i²)`.
//!
//! This crate implements the algebra, the operator and its eigenspaces, the
//! induced subgraph machinery, certificate extraction, exhaustive and
//! sampled verification, and a brute-force sensitivity checker.

pub mod boolean;
pub mod clifford;
pub mod cube;
mod error;
pub mod linalg;
mod parallel;
pub mod spectral;
pub mod verify;
mod weights;

pub use clifford::{blade_product, build_s, Blade, Multivector, Scalar, Sign};
pub use cube::{neighbor, InducedSubgraph};
pub use error::{Error, Result};
pub use spectral::{
    alpha, eigenspace_basis, huang_matrix, idempotent, operator_matrix, operator_matrix_exact,
    OperatorMatrix,
};
pub use verify::{
    extract_certificate, verify_exhaustive, verify_instance, verify_sampled, Certificate,
    Tolerances, VerifyReport,
};
pub use weights::WeightVector;
