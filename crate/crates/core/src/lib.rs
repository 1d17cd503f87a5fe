//! Exact computations with DG free algebras on degree-one generators:
//! differentials from crisscross matrix tuples, isomorphism witnesses, the
//! two-generator classification, cohomology, and free DG modules.

pub mod classify2;
pub mod cohomology;
pub mod dgcore;
pub mod dgmodule;
pub mod error;
pub mod freealg;
pub mod io;
pub mod isomorph;
pub mod linalg;
pub mod matrix;
pub mod rational;

pub use classify2::{canonical_tuple, classify, ClassLabel, Classification};
pub use cohomology::{class_equal, cohomology_basis, cohomology_dim, cohomology_table, CohomologyReport};
pub use dgcore::{random_tuple, DGFreeAlgebra, MatrixTuple};
pub use dgmodule::{make_module, EndoAlgebraReport, FreeDGModule};
pub use error::{Error, Result};
pub use freealg::{Element, Word};
pub use isomorph::{check_witness, IsoVerdict, WitnessMatrix};
pub use matrix::Matrix;
pub use rational::Rational;
