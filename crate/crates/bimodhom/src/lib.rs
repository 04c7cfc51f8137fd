//! Free bimodules over deformed function algebras and the calculus of their
//! internal homomorphisms: adjoint action, evaluation, composition,
//! invariant homs, the bimodule structure of homs, braiding, tensor products
//! of internal homs and the comparison map under twisting.

pub mod bimodule;
pub mod calculus;
pub mod error;
pub mod operator;
pub mod sampling;
pub mod shape;
pub mod suites;
pub mod twisting;

pub use bimodule::BimoduleCalculus;
pub use calculus::{block_names, HomCalculus};
pub use error::BimodError;
pub use operator::HomOperator;
pub use sampling::{OperatorSampler, SampleProfile};
pub use shape::{ModuleVec, Shape};
pub use twisting::TwistComparison;
