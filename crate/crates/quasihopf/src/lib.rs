//! Quasi-Hopf algebras on truncated enveloping algebras: structure data,
//! exact axiom checkers, cochain twists with their quasitriangular structure,
//! gauge transformations and the built-in example presets.

mod checks;
mod data;
mod error;
mod presets;
mod report;
mod twist;

pub use checks::{
    check_quasiantipode, check_quasibialgebra, check_quasitriangular, check_triangular,
    CheckOptions, ANCHOR_QUASIANTIPODE, ANCHOR_QUASIBIALGEBRA, ANCHOR_QUASITRIANGULAR,
    ANCHOR_TRIANGULAR,
};
pub use data::{invert_element, QuasiHopfData, QuasiHopfParts};
pub use error::HopfError;
pub use presets::{
    levi_civita, preset, standard_theta, DerivationTerm, FluxLayout, Preset, PresetName,
    PresetParams, RepDescriptor,
};
pub use report::{expect_equal, Report, Status};
pub use twist::{apply_twist, gauge_transform_antipode, CochainTwist};
