//! Exact algebraic foundations: Gaussian-rational scalars, ℏ-series truncated
//! at a fixed order, PBW normal ordering in universal enveloping algebras of
//! admissibly ordered Lie algebras, and sparse elements of `H^{⊗n}[[ℏ]]`.

mod error;
mod lie;
mod scalar;
mod series;
mod tensor;

pub use error::CoreError;
pub use lie::{Combination, Gen, LiePresentation, PbwMonomial};
pub use scalar::GaussianRational;
pub use series::{series_inv, series_mul, HbarPoly};
pub use tensor::{
    extend_structure_map, nc_mul, normal_order, LegKey, MapKind, Slot, TensorElement,
};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;
