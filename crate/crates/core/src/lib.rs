//! Complex Clifford algebras `C_n`, their faithful complex matrix
//! representations, the universal matrices `P_n` that conjugate a diagonal
//! carrier of an element into its representation, and linear algebra over
//! Clifford numbers built on top of them.

pub mod cmatrix;
pub mod decomposition;
pub mod error;
pub mod linalg;
pub mod matrix;
pub mod multivector;
pub mod random;
pub mod representation;
pub mod signature;
pub mod universal;

pub use cmatrix::{CliffordMatrix, Side};
pub use error::{Error, Result};
pub use matrix::{ComplexMatrix, Polynomial};
pub use multivector::{volume_square, Multivector, DEFAULT_TOL};
pub use representation::RepMatrix;
pub use signature::{blade_product, AlgebraSignature, BladeIndex, MAX_GENERATORS};

/// Complex scalar used for every coefficient.
pub type Complex = num_complex::Complex64;
