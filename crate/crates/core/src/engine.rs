use std::sync::Arc;

use dashmap::DashMap;

use crate::dyadic::{Dyadic, DyadicInt};
use crate::games::{Game, GameId, Stops};
use crate::thermo::{CoolingRecord, Thermograph};

/// Memo tables for every value-level computation over numerator type `I`.
///
/// All methods take `&self`; the tables tolerate concurrent use, so one
/// engine can be shared across threads. Structural operations on games
/// (sums, comparison, canonical forms) are cached process-wide instead.
pub struct Engine<I: DyadicInt> {
    pub(crate) numbers: DashMap<GameId, Option<Dyadic<I>>>,
    pub(crate) stops: DashMap<GameId, Stops<I>>,
    pub(crate) bounds: DashMap<GameId, (I, I)>,
    pub(crate) records: DashMap<GameId, Arc<CoolingRecord<I>>>,
    pub(crate) thermographs: DashMap<GameId, Arc<Thermograph<I>>>,
    pub(crate) cooled: DashMap<(GameId, Dyadic<I>), Game>,
    pub(crate) decisions: DashMap<GameId, Option<I>>,
}

impl<I: DyadicInt> Engine<I> {
    pub fn new() -> Self {
        Engine {
            numbers: DashMap::new(),
            stops: DashMap::new(),
            bounds: DashMap::new(),
            records: DashMap::new(),
            thermographs: DashMap::new(),
            cooled: DashMap::new(),
            decisions: DashMap::new(),
        }
    }

    /// Drop every memo entry held by this engine.
    pub fn clear(&self) {
        self.numbers.clear();
        self.stops.clear();
        self.bounds.clear();
        self.records.clear();
        self.thermographs.clear();
        self.cooled.clear();
        self.decisions.clear();
    }
}

impl<I: DyadicInt> Default for Engine<I> {
    fn default() -> Self {
        Self::new()
    }
}
