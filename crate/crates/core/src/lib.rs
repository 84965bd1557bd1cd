//! Exact temperature theory for short combinatorial games.
//!
//! Games are scalar-free, hash-consed trees. Everything that produces
//! numbers (stops, thermographs, cooling, mean values) goes through an
//! [`Engine`] that is generic over the numerator integer of its dyadic
//! rationals; the aliases below fix the common choices.

pub mod corpus;
pub mod dyadic;
mod engine;
pub mod games;
pub mod notation;
pub mod selftest;
pub mod thermo;
pub mod trajectory;

use num_bigint::BigInt;

pub use dyadic::{simplest_strictly_between, Dyadic, DyadicError, DyadicInt, Extended};
pub use engine::Engine;
pub use games::{
    canonical_number_value, canonicalize, clear_caches, compare, geq, number_to_game,
    set_cache_limit, Game, GameId, GameOrdering, Stops,
};
pub use notation::{parse_game, ParseError};
pub use thermo::{Classification, CoolingRecord, ThermoError, Thermograph};
pub use trajectory::{Mast, Segment, Slope, Trajectory, TrajectoryError};

pub type Dyadic64 = Dyadic<i64>;
pub type Extended64 = Extended<i64>;
pub type Trajectory64 = Trajectory<i64>;
pub type Thermograph64 = Thermograph<i64>;
pub type Engine64 = Engine<i64>;

pub type BigDyadic = Dyadic<BigInt>;
pub type BigExtended = Extended<BigInt>;
pub type BigTrajectory = Trajectory<BigInt>;
pub type BigThermograph = Thermograph<BigInt>;
pub type BigEngine = Engine<BigInt>;
