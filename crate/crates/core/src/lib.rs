// SPDX-License-Identifier: MIT OR Apache-2.0

//! Aperiodic monotile tilings through their dual rhomb construction, and the
//! word combinatorics behind them.
//!
//! A dual tile is a hexagon of three red&black rhombs with one red rhomb
//! attached. [`lattice`] fixes coordinates, [`patch`] holds coloured patches
//! and checks the matching rules, [`tiling`] colours the plane from three
//! families of lines, [`assemble`] groups rhombs into dual tiles and
//! [`analysis`] checks the structural properties of the result. [`bam`] and
//! [`fibcube`] build the metatiles, [`spectre`] and [`sturmian`] cover the
//! one-dimensional words, and [`render`] turns dual tiles into monotiles.

pub mod analysis;
pub mod assemble;
pub mod bam;
pub mod error;
pub mod fibcube;
pub mod lattice;
pub mod patch;
pub mod render;
pub mod spectre;
pub mod sturmian;
pub mod tiling;
pub mod word;

pub use error::{Error, Result};
