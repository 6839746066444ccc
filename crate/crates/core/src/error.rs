// SPDX-License-Identifier: MIT OR Apache-2.0

use crate::lattice::HexCoord;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("level {requested} exceeds the depth limit {limit}")]
    Depth { requested: u32, limit: u32 },
    #[error("out of range: {0}")]
    Range(String),
    #[error("ambiguous assembly at hex {hex} (down = {down}): {reason}")]
    AmbiguousAssembly { hex: HexCoord, down: bool, reason: String },
    #[error("slopes are not complementary: {a} + {b} != 1")]
    SlopeMismatch { a: f64, b: f64 },
    #[error("patch violates the matching rules at {0} edge(s)")]
    InvalidPatch(usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
