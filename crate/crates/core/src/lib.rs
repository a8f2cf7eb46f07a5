//! Exact computations with finite-dimensional quiver representations.

pub mod classify;
pub mod decomp;
pub mod error;
pub mod forms;
pub mod io;
pub mod kronecker;
pub mod linalg;
pub mod quiver;
pub mod radical;
pub mod random;
pub mod reflect;
pub mod rep;
pub mod wild;

pub use error::{Error, Result};
pub use forms::{DimVector, FormData, Graph, GraphType};
pub use linalg::{Field, Matrix, Poly, Scalar};
pub use quiver::{Arrow, Path, Quiver};
pub use rep::{HomSpace, Morphism, Representation};
