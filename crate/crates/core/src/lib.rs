//! Covariant harmonic oscillator toolkit.
//!
//! Lorentz boosts along z act on the quark separation (z, t) as squeezes of
//! the light-cone coordinates. This crate provides the boost kinematics, the
//! rest and boosted oscillator wave functions, their momentum-energy
//! transforms, and the moment/density/coherence analyses built on them, all
//! checked against deterministic trapezoid quadrature.
//!
//! Numeric code is generic over [`Real`] (`f32` or `f64`); the aliases at the
//! crate root fix the scalar to `f64`, which every tolerance in the test suite
//! assumes.

// `!(x > 0)`-style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod error;
pub mod kinematics;
pub mod momentum;
pub mod numerics;
pub mod oscillator;
pub mod scalar;
pub mod verify;

pub use error::{Error, Result};
pub use kinematics::ETA_MAX;
pub use numerics::N_MAX;
pub use scalar::Real;

/// Default proton mass in GeV.
pub const PROTON_MASS_GEV: f64 = 0.938272;

pub type Rapidity = kinematics::Rapidity<f64>;
pub type SpacetimePoint = kinematics::SpacetimePoint<f64>;
pub type LightConePoint = kinematics::LightConePoint<f64>;
pub type FourVector = kinematics::FourVector<f64>;
pub type Grid1D = numerics::Grid1D<f64>;
pub type Grid2D = numerics::Grid2D<f64>;
pub type SampledField = numerics::SampledField<f64>;
pub type Direction = numerics::Direction<f64>;
pub type OscillatorState = oscillator::OscillatorState<f64>;
pub type Amplitude = oscillator::Amplitude<f64>;
pub type Residual = oscillator::Residual<f64>;
pub type MomentumPoint = momentum::MomentumPoint<f64>;
pub type LightConeMomentum = momentum::LightConeMomentum<f64>;
pub type ComplexField = momentum::ComplexField<f64>;
pub type MomentReport = analysis::MomentReport<f64>;
pub type CoherenceReport = analysis::CoherenceReport<f64>;
pub type DensityProfile = analysis::DensityProfile<f64>;
