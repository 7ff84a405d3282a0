//! Depth statistics of geodesic excursions into a cone-point neighborhood
//! of a hyperbolic orbifold.
//!
//! The crate has three layers:
//!
//! * closed forms for the region masses `Λ`, `Λ*` and the limiting depth
//!   distributions ([`closed_forms`]), built on the half-plane geometry in
//!   [`hyperbolic`] and the endpoint regions in [`regions`];
//! * independent numerical checks of those masses ([`verify`]);
//! * a simulation that walks sampled geodesics through a tiling of the
//!   modular (or a Hecke) surface and records every excursion
//!   ([`fuchsian`], [`excursion`]).

pub mod closed_forms;
pub mod error;
pub mod excursion;
pub mod fuchsian;
pub mod hyperbolic;
pub mod regions;
pub mod verify;

pub use error::{Error, Result};

/// Library version, embedded in every CLI artifact.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
