use super::ThermoError;
use crate::dyadic::{Dyadic, DyadicInt, Extended};
use crate::engine::Engine;
use crate::games::{canonicalize, geq, number_to_game, Game};
use crate::trajectory::Slope;

impl<I: DyadicInt> Engine<I> {
    /// Decides whether `g` equals an integer from the thermographs of its
    /// options alone: the integers in `[l, r]`, where `l` is the best
    /// `ρ_0(G^L)` (bumped by one when that option pins it) and `r` dually.
    /// Returns the member of least absolute value, or `None` when empty.
    pub fn integer_decision(&self, g: &Game) -> Result<Option<I>, ThermoError> {
        if let Some(v) = self.decisions.get(&g.id()) {
            return Ok(v.clone());
        }
        let (l, r) = self.integer_decision_interval(g)?;
        let lo = match &l {
            Extended::NegInf => None,
            Extended::Finite(x) => Some(x.ceil()),
            Extended::PosInf => unreachable!("left bound is never +inf"),
        };
        let hi = match &r {
            Extended::PosInf => None,
            Extended::Finite(x) => Some(x.floor()),
            Extended::NegInf => unreachable!("right bound is never -inf"),
        };
        let zero = I::zero();
        let v = match (lo, hi) {
            (Some(a), Some(b)) if a > b => None,
            (Some(a), _) if a > zero => Some(a),
            (_, Some(b)) if b < zero => Some(b),
            _ => Some(zero),
        };
        self.decisions.insert(g.id(), v.clone());
        Ok(v)
    }

    /// The bounds `(l, r)` whose integers form the candidate set.
    pub fn integer_decision_interval(&self, g: &Game) -> Result<(Extended<I>, Extended<I>), ThermoError> {
        Ok((
            self.decision_bound(g.left(), true)?,
            self.decision_bound(g.right(), false)?,
        ))
    }

    /// `l` for the left options (`left == true`) or `r` for the right ones.
    fn decision_bound(&self, options: &[Game], left: bool) -> Result<Extended<I>, ThermoError> {
        let zero = Dyadic::zero();
        let mut stops = Vec::with_capacity(options.len());
        for o in options {
            let tg = self.thermograph(o)?;
            let wall = if left { &tg.right } else { &tg.left };
            stops.push(wall.eval(&zero)?);
        }
        let best = if left {
            stops.iter().max()
        } else {
            stops.iter().min()
        };
        let Some(best) = best.cloned() else {
            return Ok(if left { Extended::NegInf } else { Extended::PosInf });
        };
        let Some(best_int) = best.to_integer() else {
            return Ok(Extended::Finite(best));
        };
        let mut bump = false;
        for (o, stop) in options.iter().zip(&stops) {
            if *stop != best {
                continue;
            }
            // the option equals the integer itself
            if self.integer_decision(o)? == Some(best_int.clone()) {
                bump = true;
                break;
            }
            if self.as_integer(o).is_none() {
                let rec = self.cooling_record(o)?;
                let raw = if left { &rec.raw_right } else { &rec.raw_left };
                if raw.slope_left_of(&zero)? == Slope::Flat {
                    bump = true;
                    break;
                }
            }
        }
        let one = Dyadic::one();
        Ok(Extended::Finite(match (bump, left) {
            (false, _) => best,
            (true, true) => best.checked_add(&one)?,
            (true, false) => best.checked_sub(&one)?,
        }))
    }

    /// Checks `n·m - C < nG < n·m + C` with `m` the mean value and
    /// `C = t + 1`, for `t` above both `t(G)` and `-1`.
    pub fn mean_bound_check(&self, g: &Game, n: u32, t: &Dyadic<I>) -> Result<bool, ThermoError> {
        if *t <= Dyadic::int(-1) {
            return Err(ThermoError::BelowDomain(t.to_string()));
        }
        let temp = self.temperature(g)?;
        if Extended::Finite(t.clone()) <= temp {
            return Err(ThermoError::NotAboveTemperature {
                t: t.to_string(),
                temp: temp.to_string(),
            });
        }
        let m = self.mean_value(g)?;
        let c = t.checked_add(&Dyadic::one())?;
        let nm = m.checked_mul_int(&I::from_u32(n).expect("n fits the numerator type"))?;
        let low = number_to_game(&nm.checked_sub(&c)?);
        let high = number_to_game(&nm.checked_add(&c)?);
        let mut sum = Game::zero();
        for _ in 0..n {
            sum = canonicalize(&sum.add(g));
        }
        let strictly = |a: &Game, b: &Game| geq(b, a) && !geq(a, b);
        Ok(strictly(&low, &sum) && strictly(&sum, &high))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> Dyadic<i64> {
        s.parse().unwrap()
    }

    fn n(x: &str) -> Game {
        number_to_game(&d(x))
    }

    fn sw(a: Game, b: Game) -> Game {
        Game::new(vec![a], vec![b])
    }

    #[test]
    fn decision_examples() {
        let e = Engine::<i64>::new();
        let fin = |x: &str| Extended::Finite(d(x));
        let g = sw(n("1"), n("0"));
        assert_eq!(e.integer_decision_interval(&g).unwrap(), (fin("2"), fin("-1")));
        assert_eq!(e.integer_decision(&g).unwrap(), None);
        let g = sw(n("0"), n("3"));
        assert_eq!(e.integer_decision_interval(&g).unwrap(), (fin("1"), fin("2")));
        assert_eq!(e.integer_decision(&g).unwrap(), Some(1));
        assert_eq!(
            e.integer_decision_interval(&Game::zero()).unwrap(),
            (Extended::NegInf, Extended::PosInf)
        );
        assert_eq!(e.integer_decision(&Game::zero()).unwrap(), Some(0));
        assert_eq!(e.integer_decision(&n("-3")).unwrap(), Some(-3));
        assert_eq!(e.integer_decision(&n("1/2")).unwrap(), None);
        assert_eq!(e.integer_decision(&Game::star()).unwrap(), None);
        assert_eq!(e.integer_decision(&sw(n("-5/2"), n("7/4"))).unwrap(), Some(0));
        assert_eq!(e.integer_decision(&sw(n("3/2"), n("7/2"))).unwrap(), Some(2));
        // {* | 2} = 0: ρ̃(*) rises into 0, so l stays at 0
        assert_eq!(e.integer_decision(&sw(Game::star(), n("2"))).unwrap(), Some(0));
    }

    #[test]
    fn mean_bound_examples() {
        let e = Engine::<i64>::new();
        let g = sw(n("2"), n("0"));
        assert!(e.mean_bound_check(&g, 3, &d("2")).unwrap());
        assert!(e.mean_bound_check(&Game::star(), 5, &d("1")).unwrap());
        assert!(e.mean_bound_check(&n("3/4"), 4, &d("0")).unwrap());
        assert!(e.mean_bound_check(&n("2"), 2, &d("-1/2")).unwrap());
        assert!(matches!(
            e.mean_bound_check(&g, 2, &d("1")),
            Err(ThermoError::NotAboveTemperature { .. })
        ));
        assert!(e.mean_bound_check(&g, 2, &d("-1")).is_err());
    }
}
