use std::sync::LazyLock;

use dashmap::DashMap;
use serde::{Deserialize, Serialize};

use super::{canonicalize, Game};
use crate::dyadic::{Dyadic, DyadicInt};
use crate::engine::Engine;

/// Left and right stops `(L(G), R(G))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(bound(serialize = "I: DyadicInt", deserialize = "I: DyadicInt"))]
pub struct Stops<I: DyadicInt> {
    pub left: Dyadic<I>,
    pub right: Dyadic<I>,
}

static NUMBER_GAMES: LazyLock<DashMap<(i128, u32), Game>> = LazyLock::new(DashMap::new);

/// The canonical form of the number `x`: `{n-1|}` for positive integers,
/// `{|n+1}` for negative ones and `{(k-1)/2^m | (k+1)/2^m}` for `k/2^m`.
pub fn number_to_game<I: DyadicInt>(x: &Dyadic<I>) -> Game {
    let key = x.numerator().to_i128().map(|n| (n, x.exponent()));
    if let Some(key) = key {
        if let Some(g) = NUMBER_GAMES.get(&key) {
            return g.clone();
        }
    }
    let g = if x.is_integer() {
        // build the chain from 0 outward so long integers do not recurse
        let steps = x
            .numerator()
            .abs()
            .to_u64()
            .expect("integer too large to build as a game");
        let positive = x.is_positive();
        let mut g = Game::zero();
        for _ in 0..steps {
            g = if positive {
                Game::new(vec![g], vec![])
            } else {
                Game::new(vec![], vec![g])
            };
        }
        g
    } else {
        let step = x.ulp();
        Game::new(
            vec![number_to_game(&(x - &step))],
            vec![number_to_game(&(x + &step))],
        )
    };
    if let Some(key) = key {
        NUMBER_GAMES.insert(key, g.clone());
    }
    g
}

/// `Some(x)` exactly when `g` is (structurally) the canonical form of the
/// number `x`. Returns `None` for everything else, including non-canonical
/// games equal to numbers and values that overflow `I`.
pub fn canonical_number_value<I: DyadicInt>(g: &Game) -> Option<Dyadic<I>> {
    let candidate = match (g.left(), g.right()) {
        ([], []) => return Some(Dyadic::zero()),
        ([l], []) => {
            let v = canonical_number_value::<I>(l)?;
            if !v.is_integer() || v.is_negative() {
                return None;
            }
            v.checked_add(&Dyadic::one()).ok()?
        }
        ([], [r]) => {
            let v = canonical_number_value::<I>(r)?;
            if !v.is_integer() || v.is_positive() {
                return None;
            }
            v.checked_sub(&Dyadic::one()).ok()?
        }
        ([l], [r]) => {
            let a = canonical_number_value::<I>(l)?;
            let b = canonical_number_value::<I>(r)?;
            if a >= b {
                return None;
            }
            a.checked_add(&b).ok()?.half().ok()?
        }
        _ => return None,
    };
    (number_to_game(&candidate) == *g).then_some(candidate)
}

impl<I: DyadicInt> Engine<I> {
    /// The number `g` is equal to, if any. Decided on the canonical form.
    pub fn as_number(&self, g: &Game) -> Option<Dyadic<I>> {
        let c = canonicalize(g);
        if let Some(v) = self.numbers.get(&c.id()) {
            return v.clone();
        }
        let v = canonical_number_value::<I>(&c);
        self.numbers.insert(c.id(), v.clone());
        v
    }

    pub fn as_integer(&self, g: &Game) -> Option<I> {
        self.as_number(g).and_then(|x| x.to_integer())
    }

    pub fn is_number(&self, g: &Game) -> bool {
        self.as_number(g).is_some()
    }

    /// `L(G)` is the value of `G` if it is a number, else the best right stop
    /// among left options; `R(G)` dually.
    pub fn stops(&self, g: &Game) -> Stops<I> {
        if let Some(s) = self.stops.get(&g.id()) {
            return s.clone();
        }
        let s = match self.as_number(g) {
            Some(x) => Stops {
                left: x.clone(),
                right: x,
            },
            None => {
                // a game with no left (or right) options always equals an integer
                let left = g
                    .left()
                    .iter()
                    .map(|gl| self.stops(gl).right)
                    .max()
                    .expect("non-number game has a left option");
                let right = g
                    .right()
                    .iter()
                    .map(|gr| self.stops(gr).left)
                    .min()
                    .expect("non-number game has a right option");
                Stops { left, right }
            }
        };
        self.stops.insert(g.id(), s.clone());
        s
    }

    /// `L(G) = R(G)`: infinitesimally close to a number.
    pub fn is_numberish(&self, g: &Game) -> bool {
        let s = self.stops(g);
        s.left == s.right
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::games::{compare, GameOrdering};

    type D = Dyadic<i64>;

    fn d(s: &str) -> D {
        s.parse().unwrap()
    }

    fn n(x: &str) -> Game {
        number_to_game(&d(x))
    }

    fn switch(a: &str, b: &str) -> Game {
        Game::new(vec![n(a)], vec![n(b)])
    }

    #[test]
    fn number_forms() {
        assert_eq!(n("0"), Game::zero());
        assert_eq!(n("1/2"), Game::new(vec![n("0")], vec![n("1")]));
        assert_eq!(n("-2"), Game::new(vec![], vec![n("-1")]));
        assert_eq!(n("2"), Game::new(vec![n("1")], vec![]));
        assert_eq!(n("3/4"), Game::new(vec![n("1/2")], vec![n("1")]));
        assert_eq!(n("-5/8").negate(), n("5/8"));
    }

    #[test]
    fn birthday_of_switch_two_zero() {
        assert_eq!(switch("2", "0").birthday(), 3);
    }

    #[test]
    fn recognizes_only_canonical_numbers() {
        for x in ["0", "3", "-2", "7/8", "-13/16"] {
            assert_eq!(canonical_number_value::<i64>(&n(x)), Some(d(x)));
        }
        assert_eq!(canonical_number_value::<i64>(&Game::star()), None);
        // {0|2} = 1 but is not canonical
        assert_eq!(canonical_number_value::<i64>(&switch("0", "2")), None);
    }

    #[test]
    fn as_number_examples() {
        let e = Engine::<i64>::new();
        assert_eq!(e.as_number(&Game::star()), None);
        assert_eq!(e.as_number(&switch("0", "1")), Some(d("1/2")));
        assert_eq!(e.as_number(&n("3")), Some(d("3")));
        assert_eq!(e.as_number(&switch("0", "2")), Some(d("1")));
    }

    #[test]
    fn as_integer_examples() {
        let e = Engine::<i64>::new();
        assert_eq!(e.as_integer(&Game::new(vec![n("1")], vec![])), Some(2));
        assert_eq!(e.as_integer(&switch("0", "1")), None);
        assert_eq!(e.as_integer(&switch("-1", "1")), Some(0));
    }

    #[test]
    fn stops_examples() {
        let e = Engine::<i64>::new();
        assert_eq!(
            e.stops(&Game::star()),
            Stops { left: d("0"), right: d("0") }
        );
        assert_eq!(
            e.stops(&switch("2", "0")),
            Stops { left: d("2"), right: d("0") }
        );
        assert_eq!(
            e.stops(&n("7/8")),
            Stops { left: d("7/8"), right: d("7/8") }
        );
    }

    #[test]
    fn numberish_examples() {
        let e = Engine::<i64>::new();
        assert!(e.is_numberish(&Game::star()));
        assert!(!e.is_numberish(&switch("2", "0")));
        assert!(e.is_numberish(&n("-3/4")));
    }

    #[test]
    fn number_games_compare_like_numbers() {
        let xs = ["-2", "-3/2", "-1/4", "0", "1/8", "1", "5/4", "3"];
        for a in xs {
            for b in xs {
                let expected = match d(a).cmp(&d(b)) {
                    std::cmp::Ordering::Less => GameOrdering::Less,
                    std::cmp::Ordering::Equal => GameOrdering::Equal,
                    std::cmp::Ordering::Greater => GameOrdering::Greater,
                };
                assert_eq!(compare(&n(a), &n(b)), expected);
            }
        }
    }
}
