//! Apollonian metric geometry on the one-point completion of R^n.
//!
//! The crate is organized bottom-up:
//!
//! - [`extgeom`]: extended points, the chordal metric, cross-ratios, Apollonian balls;
//! - [`conformal`]: the conformal group acting on points, spheres, and regions;
//! - [`domain`]: domains given by closed obstacles and exact supremum queries;
//! - [`apollonian`]: the Apollonian distance, Finsler norm, conformal density, path lengths;
//! - [`contraction`]: the `tanh(Δ/4)` contraction coefficient and its verification;
//! - [`fractal`]: conformal iterated function systems and dimension bounds;
//! - [`scene`], [`svg`], and [`cli`]: the JSON scene format, SVG output, and the `apollon` command line;
//! - [`sampling`]: seeded random maps, directions, and domain points.

pub mod error;
pub mod extgeom;
pub mod region;
pub mod conformal;
pub mod domain;
pub mod apollonian;
pub mod sampling;
pub mod contraction;
pub mod fractal;
pub mod scene;
pub mod svg;
pub mod cli;

pub use error::{Error, Result};
pub use extgeom::{ExtendedPoint, Matrix, Vector};
