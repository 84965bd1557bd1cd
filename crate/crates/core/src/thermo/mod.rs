//! Cooling, temperature and thermographs.
//!
//! For a game `G` not equal to an integer, the raw scaffolds are
//!
//! ```text
//! λ̃_t(G) = max over G^L of ρ_t(G^L) - t
//! ρ̃_t(G) = min over G^R of λ_t(G^R) + t
//! ```
//!
//! The temperature `t(G)` is the least `t` where they meet, and the
//! thermograph walls `λ_t`, `ρ_t` follow the scaffolds up to `t(G)` and stay
//! at the meeting value (the mast) above it. Games equal to an integer `n`
//! have constant walls at `n` and temperature `-inf`.

mod cooling;
mod decision;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dyadic::{Dyadic, DyadicError, DyadicInt, Extended};
use crate::trajectory::{Trajectory, TrajectoryError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ThermoError {
    #[error("game {0} is equal to an integer; its scaffolds are not defined")]
    IntegerGame(String),
    #[error("temperature {0} is below the cooling domain t >= -1")]
    BelowDomain(String),
    #[error("t = {t} must exceed the temperature {temp}")]
    NotAboveTemperature { t: String, temp: String },
    #[error(transparent)]
    Trajectory(#[from] TrajectoryError),
    #[error(transparent)]
    Dyadic(#[from] DyadicError),
}

/// Thermograph of a game: its two walls, temperature and mast value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound(serialize = "I: DyadicInt", deserialize = "I: DyadicInt"))]
pub struct Thermograph<I: DyadicInt> {
    pub temp: Extended<I>,
    #[serde(rename = "mast")]
    pub mast_value: Dyadic<I>,
    /// `λ_t(G)`; slopes in `{0, -1}`.
    pub left: Trajectory<I>,
    /// `ρ_t(G)`; slopes in `{0, +1}`.
    pub right: Trajectory<I>,
}

impl<I: DyadicInt> Thermograph<I> {
    /// Every breakpoint of either wall, sorted and deduplicated.
    pub fn breakpoints(&self) -> Vec<Dyadic<I>> {
        let mut ts: Vec<_> = self
            .left
            .breakpoints()
            .chain(self.right.breakpoints())
            .cloned()
            .collect();
        ts.sort();
        ts.dedup();
        ts
    }
}

/// The unmasked scaffolds of a non-integer game and its integer bounds
/// `λ̄(G)`, `ρ̄(G)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoolingRecord<I: DyadicInt> {
    /// `λ̃_t(G)`: non-increasing, eventually slope -1.
    pub raw_left: Trajectory<I>,
    /// `ρ̃_t(G)`: non-decreasing, eventually slope +1.
    pub raw_right: Trajectory<I>,
    pub int_upper: I,
    pub int_lower: I,
}

/// Three-way classification by the sign of the temperature.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Classification {
    /// `t(G) < 0`.
    Number,
    /// `t(G) = 0`.
    NumberishNotNumber,
    /// `t(G) > 0`.
    Hot,
}
