//! Exact verification toolkit for Lie conformal algebras over free ℚ[∂]-modules.
//!
//! Every identity is reduced to an equality of polynomials in ∂ and λ-variables
//! with rational coefficients and checked exactly on generators.

pub mod algebra;
pub mod catalog;
pub mod cochain;
pub mod dsl;
pub mod dual;
pub mod error;
pub mod linalg;
pub mod module;
pub mod nslie;
pub mod operators;
pub mod perm;
pub mod poly;
pub mod random;
pub mod rb_cohomology;
pub mod report;
pub mod table;
pub mod tensor;
pub mod twilled;
pub mod value;

pub use algebra::{LieConformalAlgebra, Representation};
pub use error::{Error, Result};
pub use module::{FreeModule, ModuleMap};
pub use poly::{MultiPoly, Scalar, Var};
pub use report::{AxiomReport, Check};
pub use table::Table;
pub use value::{LambdaValue, ModuleElement};
