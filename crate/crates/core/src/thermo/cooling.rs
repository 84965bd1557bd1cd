use std::sync::Arc;

use super::{Classification, CoolingRecord, ThermoError, Thermograph};
use crate::dyadic::{Dyadic, DyadicInt, Extended};
use crate::engine::Engine;
use crate::games::{canonicalize, number_to_game, Game};
use crate::trajectory::{Slope, Trajectory};

/// `g + x` for a number `x`, in canonical form.
fn translate<I: DyadicInt>(g: &Game, x: &Dyadic<I>) -> Game {
    canonicalize(&g.add(&number_to_game(x)))
}

impl<I: DyadicInt> Engine<I> {
    /// `(λ̄(G), ρ̄(G))`: `(n, n)` for a game equal to the integer `n`,
    /// otherwise `max ρ̄(G^L) + 1` and `min λ̄(G^R) - 1`.
    pub fn integer_bounds(&self, g: &Game) -> (I, I) {
        if let Some(b) = self.bounds.get(&g.id()) {
            return b.clone();
        }
        let b = match self.as_integer(g) {
            Some(n) => (n.clone(), n),
            None => {
                let upper = g
                    .left()
                    .iter()
                    .map(|gl| self.integer_bounds(gl).1 + I::one())
                    .max()
                    .expect("non-integer game has a left option");
                let lower = g
                    .right()
                    .iter()
                    .map(|gr| self.integer_bounds(gr).0 - I::one())
                    .min()
                    .expect("non-integer game has a right option");
                (upper, lower)
            }
        };
        self.bounds.insert(g.id(), b.clone());
        b
    }

    /// Raw scaffolds `λ̃`, `ρ̃` and integer bounds of a game not equal to an
    /// integer.
    pub fn cooling_record(&self, g: &Game) -> Result<Arc<CoolingRecord<I>>, ThermoError> {
        if let Some(r) = self.records.get(&g.id()) {
            return Ok(r.clone());
        }
        if self.as_integer(g).is_some() {
            return Err(ThermoError::IntegerGame(g.to_string()));
        }
        let zero = Dyadic::zero();
        let mut raw_left: Option<Trajectory<I>> = None;
        for gl in g.left() {
            let f = self.thermograph(gl)?.right.add_linear(Slope::Down, &zero)?;
            raw_left = Some(match raw_left {
                Some(acc) => acc.pointwise_max(&f)?,
                None => f,
            });
        }
        let mut raw_right: Option<Trajectory<I>> = None;
        for gr in g.right() {
            let f = self.thermograph(gr)?.left.add_linear(Slope::Up, &zero)?;
            raw_right = Some(match raw_right {
                Some(acc) => acc.pointwise_min(&f)?,
                None => f,
            });
        }
        let (int_upper, int_lower) = self.integer_bounds(g);
        let record = Arc::new(CoolingRecord {
            raw_left: raw_left.expect("non-integer game has a left option"),
            raw_right: raw_right.expect("non-integer game has a right option"),
            int_upper,
            int_lower,
        });
        self.records.insert(g.id(), record.clone());
        Ok(record)
    }

    pub fn thermograph(&self, g: &Game) -> Result<Arc<Thermograph<I>>, ThermoError> {
        if let Some(tg) = self.thermographs.get(&g.id()) {
            return Ok(tg.clone());
        }
        let tg = match self.as_integer(g) {
            Some(n) => {
                let x = Dyadic::from_integer(n);
                Thermograph {
                    temp: Extended::NegInf,
                    mast_value: x.clone(),
                    left: Trajectory::constant(x.clone()),
                    right: Trajectory::constant(x),
                }
            }
            None => {
                let rec = self.cooling_record(g)?;
                let (temp, mast_value) = rec.raw_left.first_meet(&rec.raw_right)?;
                Thermograph {
                    left: rec.raw_left.freeze_at(&temp)?,
                    right: rec.raw_right.freeze_at(&temp)?,
                    temp: Extended::Finite(temp),
                    mast_value,
                }
            }
        };
        let tg = Arc::new(tg);
        self.thermographs.insert(g.id(), tg.clone());
        Ok(tg)
    }

    /// `t(G)`: `-inf` for integers, otherwise the first meeting point of the
    /// raw scaffolds (always `> -1`).
    pub fn temperature(&self, g: &Game) -> Result<Extended<I>, ThermoError> {
        Ok(self.thermograph(g)?.temp.clone())
    }

    /// The mast value of the thermograph, i.e. the mean value of `g`.
    pub fn mean_value(&self, g: &Game) -> Result<Dyadic<I>, ThermoError> {
        Ok(self.thermograph(g)?.mast_value.clone())
    }

    pub fn classify(&self, g: &Game) -> Result<Classification, ThermoError> {
        let zero = Extended::Finite(Dyadic::zero());
        let temp = self.temperature(g)?;
        Ok(if temp < zero {
            Classification::Number
        } else if temp == zero {
            Classification::NumberishNotNumber
        } else {
            Classification::Hot
        })
    }

    /// `G_t` for `t >= -1`: the canonical integer for integer games, the raw
    /// cooled game up to `t(G)` and the canonical mast value above it.
    pub fn cooled(&self, g: &Game, t: &Dyadic<I>) -> Result<Game, ThermoError> {
        check_domain(t)?;
        let key = (g.id(), t.clone());
        if let Some(c) = self.cooled.get(&key) {
            return Ok(c.clone());
        }
        let c = if let Some(n) = self.as_integer(g) {
            number_to_game(&Dyadic::from_integer(n))
        } else {
            let tg = self.thermograph(g)?;
            match &tg.temp {
                Extended::Finite(temp) if t > temp => number_to_game(&tg.mast_value),
                _ => self.cooled_raw(g, t)?,
            }
        };
        self.cooled.insert(key, c.clone());
        Ok(c)
    }

    /// `G̃_t = { (G^L)_t - t | (G^R)_t + t }` for a game not equal to an
    /// integer, without the freeze above `t(G)`. Translated options are
    /// stored in canonical form.
    pub fn cooled_raw(&self, g: &Game, t: &Dyadic<I>) -> Result<Game, ThermoError> {
        check_domain(t)?;
        if self.as_integer(g).is_some() {
            return Err(ThermoError::IntegerGame(g.to_string()));
        }
        let minus_t = t.checked_neg()?;
        let left = g
            .left()
            .iter()
            .map(|gl| Ok(translate(&self.cooled(gl, t)?, &minus_t)))
            .collect::<Result<Vec<_>, ThermoError>>()?;
        let right = g
            .right()
            .iter()
            .map(|gr| Ok(translate(&self.cooled(gr, t)?, t)))
            .collect::<Result<Vec<_>, ThermoError>>()?;
        Ok(Game::new(left, right))
    }
}

fn check_domain<I: DyadicInt>(t: &Dyadic<I>) -> Result<(), ThermoError> {
    if *t < Dyadic::int(-1) {
        return Err(ThermoError::BelowDomain(t.to_string()));
    }
    Ok(())
}
