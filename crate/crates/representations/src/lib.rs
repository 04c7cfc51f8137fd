//! Left modules over the enveloping algebras of the presets realized on
//! polynomial functions, differential operators in normal form, and the
//! deformed (star) products of function algebras.

pub mod algebra;
pub mod diffop;
pub mod error;
pub mod poly;
pub mod rep;
pub mod sampling;

pub use algebra::AlgebraObject;
pub use diffop::DiffOperator;
pub use error::ReprError;
pub use poly::{default_names, monomial_triples, monomials_up_to, Exponents, PolyFunction};
pub use rep::{check_rep_bracket, DerivationRep};
pub use sampling::Sampler;
