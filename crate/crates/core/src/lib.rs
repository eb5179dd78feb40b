//! Steady-state Gaussian analysis of a driven four-mode chain
//! (optical cavity – phonon – magnon – microwave cavity).
//!
//! All rates and frequencies are angular (rad/s). Quadratures are
//! `x = a + a†`, `p = i(a† − a)`, so the vacuum covariance is the identity.

// `!(x > 0.0)` deliberately rejects NaN along with non-positive values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod dynamics;
pub mod entanglement;
pub mod error;
pub mod gaussian;
pub mod model;
pub mod presets;
pub mod scattering;
pub mod sweep;
pub mod teleport;

pub use error::{Error, Result};

pub use nalgebra::Complex;
pub type C64 = Complex<f64>;

pub const HBAR: f64 = 1.054_571_817e-34;
pub const K_B: f64 = 1.380_649e-23;
pub const TWO_PI: f64 = 2.0 * std::f64::consts::PI;
