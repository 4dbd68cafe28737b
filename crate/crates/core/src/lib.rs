pub mod constructions;
pub mod error;
pub mod fock;
pub mod lie;
pub mod linalg;
pub mod modes;
pub mod scalar;
pub mod vertex;

pub use error::{Error, Result};
pub use fock::{BasisState, GradedModule, StateVector};
pub use modes::{HalfInt, ModeKind, ModeSymbol, Parity};
pub use scalar::Scalar;
