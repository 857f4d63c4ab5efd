pub mod algebra;
pub mod brouwer;
pub mod congruence;
pub mod demorgan;
pub mod error;
pub mod format;
pub mod gen;
pub mod limits;
pub mod morphisms;
pub mod oracle;
pub mod quasivar;
pub mod suite;

pub use algebra::{Elem, FiniteAlgebra, Signature};
pub use error::{Error, Result};
pub use limits::Limits;
