//! Almost hermitian structures with parallel skew-symmetric torsion on six-dimensional
//! model spaces: exterior algebra, the unitary model, torsion orbit normal forms,
//! Clifford and spinor computations, and homogeneous and nilpotent examples.

pub mod endo;
pub mod error;
pub mod forms;
pub mod invariants;
pub mod lie;
pub mod linalg;
pub mod nil;
pub mod catalog;
pub mod clifford;
pub mod commands;
pub mod curvature;
pub mod orbits;
pub mod scalar;
pub mod tables;
pub mod unitary;

pub use endo::SkewEndo;
pub use error::{Error, Result};
pub use forms::{Form, Monomial};
pub use scalar::{Backend, Rational, Real, Scalar, Surd};
