//! Reduced equations of state for the gas products of propellant and
//! explosive combustion: Noble-Abel, first-order virial (constant and linear
//! Cv), their N-component mixtures, and the calibration routines that fit
//! them to closed-bomb data.

// Negated comparisons are used on purpose so that NaN is rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod calibration;
pub mod error;
pub mod mixture;
pub mod noble_abel;
pub mod numerics;
pub mod thermo;
pub mod virial;
pub mod virial_cvt;

pub use calibration::{
    calibrate_cvt, calibrate_na, calibrate_vo1, frozenness_check, predict_closed_bomb, ClosedBombPrediction, CvtFit,
    FrozennessReport,
};
pub use error::{EosError, Result};
pub use mixture::{
    mixture_flame_temperature, mna_coefficients, MixtureFlame, MixtureSpec, Mna, MnaCoefficients, MnaState, Mvo1,
    Mvo1Solution,
};
pub use noble_abel::NobleAbel;
pub use thermo::{
    ClosedBombPoint, DensityRange, EntropyReference, EosModel, GasLaw, GasParams, InertGasParams, InertRunRecord,
    ThermoState,
};
pub use virial::Virial;
pub use virial_cvt::VirialCvt;
