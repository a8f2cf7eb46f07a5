//! Exact linear algebra over ℚ and GF(p).

pub mod elim;
pub mod factor;
pub mod field;
pub mod matrix;
pub mod poly;

pub use elim::{Kernel, SparseSystem};
pub use factor::{factor, is_irreducible};
pub use field::{Field, Scalar};
pub use matrix::Matrix;
pub use poly::{minimal_polynomial, Poly};
