//! Majorana constellations of spin-S pure states, their state multipoles,
//! and the closed forms that connect the two.
//!
//! The crate converts between amplitude vectors and star constellations,
//! computes multipole spectra through exact Clebsch-Gordan tables, and ships
//! parametrized constellation families and search drivers built on top.

pub mod analysis;
pub mod angular;
pub mod cli;
pub mod convert;
pub mod error;
pub mod io;
mod matching;
pub mod multipoles;
pub mod spin;
pub mod sympoly;
pub mod transitions;

pub use error::{Error, Result};
pub use spin::{state_equiv, Constellation, ExtComplex, RotationSU2, SpinLabel, SpinState, Star};
