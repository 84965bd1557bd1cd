//! Property suites over the test corpus.
//!
//! Each suite returns a [`Report`] with the number of individual checks and
//! a description of every failure. Suites run their games in parallel and
//! share one engine.

use std::fmt;

use rayon::prelude::*;

use crate::corpus;
use crate::dyadic::{Dyadic, Extended};
use crate::engine::Engine;
use crate::games::{canonicalize, compare, geq, number_to_game, Game, GameOrdering};
use crate::thermo::{Classification, ThermoError};
use crate::trajectory::Slope;

type D = Dyadic<i64>;
type E = Engine<i64>;

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub name: String,
    pub checked: usize,
    pub failures: Vec<String>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Several reports folded into one under `name`.
    pub fn merge(name: &str, parts: impl IntoIterator<Item = Report>) -> Report {
        let mut out = Report {
            name: name.to_string(),
            ..Report::default()
        };
        for p in parts {
            out.checked += p.checked;
            out.failures
                .extend(p.failures.into_iter().map(|f| format!("{}: {f}", p.name)));
        }
        out
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} checks, {} failures",
            self.name,
            self.checked,
            self.failures.len()
        )
    }
}

#[derive(Default)]
struct Tally {
    checked: usize,
    failures: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn absorb(&mut self, r: Result<(), ThermoError>, what: impl FnOnce() -> String) {
        if let Err(e) = r {
            self.checked += 1;
            self.failures.push(format!("{}: {e}", what()));
        }
    }
}

fn run<T: Sync>(name: &str, items: &[T], f: impl Fn(&T, &mut Tally) + Sync) -> Report {
    let tally = items
        .par_iter()
        .map(|x| {
            let mut t = Tally::default();
            f(x, &mut t);
            t
        })
        .reduce(Tally::default, |mut a, b| {
            a.checked += b.checked;
            a.failures.extend(b.failures);
            a
        });
    Report {
        name: name.to_string(),
        checked: tally.checked,
        failures: tally.failures,
    }
}

fn num(x: &D) -> Game {
    number_to_game(x)
}

/// Sizes of the generated parts of the corpus.
#[derive(Clone, Debug)]
pub struct Bounds {
    pub deep: usize,
    pub random_trees: usize,
    pub tree_depth: u32,
    pub pairs: usize,
    pub pair_depth: u32,
    pub seed: u64,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            deep: 150,
            random_trees: 500,
            tree_depth: 6,
            pairs: 300,
            pair_depth: 4,
            seed: 0x7e4d,
        }
    }
}

/// The unary suite: small suite, deep sample and random trees.
pub fn unary_suite(b: &Bounds) -> Vec<Game> {
    let mut games = corpus::small_suite();
    games.extend(corpus::deep_sample(b.deep, b.seed));
    games.extend(corpus::random_games(b.random_trees, b.tree_depth, b.seed + 1));
    games
}

pub fn pairs(b: &Bounds) -> Vec<(Game, Game)> {
    corpus::random_pairs(b.pairs, b.pair_depth, b.seed + 2)
}

/// `count` pairs `(g, h)` with `g >= h`: random pairs in whichever order
/// is comparable, topped up with `(h + x, h)` for non-negative numbers `x`.
pub fn ordered_pairs(b: &Bounds) -> Vec<(Game, Game)> {
    let candidates = corpus::random_pairs(b.pairs * 20, b.pair_depth, b.seed + 3);
    let mut out: Vec<(Game, Game)> = Vec::new();
    for (g, h) in candidates {
        if out.len() >= b.pairs {
            break;
        }
        if geq(&g, &h) {
            out.push((g, h));
        } else if geq(&h, &g) {
            out.push((h, g));
        }
    }
    let shifts: Vec<Game> = ["0", "1/2", "1", "3/4", "2"]
        .iter()
        .map(|x| num(&x.parse().unwrap()))
        .collect();
    let fill = corpus::random_games(b.pairs, b.pair_depth, b.seed + 4);
    for (i, h) in fill.into_iter().enumerate() {
        if out.len() >= b.pairs {
            break;
        }
        out.push((h.add(&shifts[i % shifts.len()]), h));
    }
    out
}

/// `count` pairs `(g, h)` with `g ⊳ h`, i.e. `h >= g` fails.
pub fn not_below_pairs(b: &Bounds) -> Vec<(Game, Game)> {
    corpus::random_pairs(b.pairs * 4, b.pair_depth, b.seed + 5)
        .into_iter()
        .flat_map(|(g, h)| [(g.clone(), h.clone()), (h, g)])
        .filter(|(g, h)| !geq(h, g))
        .take(b.pairs)
        .collect()
}

/// Canonical `k/2^m` for `m` in `1..=4` and odd `k` with `|k/2^m| <= 4`:
/// temperature `-1/2^m`, and cooling to it gives `k/2^m + *`.
pub fn dyadic_numbers(e: &E) -> Report {
    let mut xs = Vec::new();
    for m in 1..=4u32 {
        let lim = 4i64 << m;
        for k in (-lim..=lim).filter(|k| k % 2 != 0) {
            xs.push((k, m));
        }
    }
    run("dyadic numbers", &xs, |&(k, m), t| {
        let x = D::frac(k, m);
        let g = num(&x);
        let temp = D::frac(-1, m);
        t.check(e.temperature(&g) == Ok(Extended::Finite(temp.clone())), || {
            format!("t({x}) = {:?}", e.temperature(&g))
        });
        let target = g.add(&Game::star());
        let r = e.cooled(&g, &temp).map(|c| {
            t.check(compare(&c, &target) == GameOrdering::Equal, || {
                format!("{x} cooled by {temp} is {c}")
            })
        });
        t.absorb(r, || format!("cooling {x}"));
    })
}

/// The thermograph existence statements, checked per game.
pub fn existence(e: &E, games: &[Game]) -> Report {
    run("existence", games, |g, t| {
        let r = existence_one(e, g, t);
        t.absorb(r, || format!("existence of {g}"));
    })
}

fn existence_one(e: &E, g: &Game, t: &mut Tally) -> Result<(), ThermoError> {
    let tg = e.thermograph(g)?;
    let integer = e.as_integer(g).is_some();
    let minus_one = D::int(-1);
    let temp = tg.temp.clone();
    // (1)
    match &temp {
        Extended::NegInf => t.check(integer, || format!("{g}: t = -inf but not an integer")),
        Extended::Finite(x) => t.check(!integer && *x > minus_one, || format!("{g}: t = {x}")),
        Extended::PosInf => t.check(false, || format!("{g}: t = +inf")),
    }
    // (2), (3)
    t.check(tg.left.slopes().all(|s| s != Slope::Up), || {
        format!("{g}: left wall {:?}", tg.left)
    });
    t.check(tg.right.slopes().all(|s| s != Slope::Down), || {
        format!("{g}: right wall {:?}", tg.right)
    });
    // (4)
    let (lm, rm) = (tg.left.mast()?, tg.right.mast()?);
    t.check(lm.mast_value == tg.mast_value && rm.mast_value == tg.mast_value, || {
        format!("{g}: masts {} {} {}", lm.mast_value, rm.mast_value, tg.mast_value)
    });
    let meet_from = match &temp {
        Extended::Finite(x) if *x > minus_one => x.clone(),
        _ => minus_one.clone(),
    };
    let grid = corpus::augmented_grid(tg.breakpoints().into_iter().chain(temp.finite().cloned()), &minus_one);
    for s in &grid {
        let (l, r) = (tg.left.eval(s)?, tg.right.eval(s)?);
        let ok = if *s >= meet_from { l == r } else { l > r };
        t.check(ok, || format!("{g}: walls {l}, {r} at {s}"));
    }
    // (5), (6)
    let from = D::frac(-3, 2);
    for s in grid.iter().filter(|s| **s >= from) {
        let c = e.cooled(g, s)?;
        let stops = e.stops(&c);
        let expected = (tg.left.eval(s)?, tg.right.eval(s)?);
        t.check((stops.left.clone(), stops.right.clone()) == expected, || {
            format!("{g} at {s}: stops {}, {} vs walls {}, {}", stops.left, stops.right, expected.0, expected.1)
        });
        if integer {
            continue;
        }
        let at = Extended::Finite(s.clone());
        let numberish = stops.left == stops.right;
        let number = e.is_number(&c);
        let ok = match at.cmp(&temp) {
            std::cmp::Ordering::Less => !numberish,
            std::cmp::Ordering::Equal => numberish,
            std::cmp::Ordering::Greater => number,
        };
        t.check(ok, || format!("{g} at {s} (t = {temp}): cooled to {c}"));
    }
    Ok(())
}

/// Integer bounds against comparisons with integers `-4..=4`.
pub fn integer_stop(e: &E, games: &[Game]) -> Report {
    run("integer stops", games, |g, t| {
        if e.as_integer(g).is_some() {
            return;
        }
        let (upper, lower) = e.integer_bounds(g);
        for n in -4i64..=4 {
            let ng = num(&D::int(n));
            if upper <= n {
                t.check(
                    g.left().iter().all(|gl| !geq(gl, &ng)),
                    || format!("{g}: λ̄ = {upper} <= {n} but some left option >= {n}"),
                );
            } else {
                t.check(
                    g.left().iter().any(|gl| geq(gl, &ng)),
                    || format!("{g}: {n} < λ̄ = {upper} but no left option >= {n}"),
                );
            }
            if lower >= n {
                t.check(
                    g.right().iter().all(|gr| !geq(&ng, gr)),
                    || format!("{g}: ρ̄ = {lower} >= {n} but some right option <= {n}"),
                );
            } else {
                t.check(
                    g.right().iter().any(|gr| geq(&ng, gr)),
                    || format!("{g}: ρ̄ = {lower} < {n} but no right option <= {n}"),
                );
            }
        }
    })
}

/// On each linear piece of the raw scaffolds, a flat piece means no option
/// reaches the scaffold and a sloped piece means some option does.
pub fn comparison(e: &E, games: &[Game]) -> Report {
    run("comparison", games, |g, t| {
        if e.as_integer(g).is_some() {
            return;
        }
        let r = comparison_one(e, g, t);
        t.absorb(r, || format!("comparison for {g}"));
    })
}

fn comparison_one(e: &E, g: &Game, t: &mut Tally) -> Result<(), ThermoError> {
    let rec = e.cooling_record(g)?;
    let minus_one = D::int(-1);
    for left in [true, false] {
        let raw = if left { &rec.raw_left } else { &rec.raw_right };
        let grid = corpus::augmented_grid(raw.breakpoints().cloned(), &minus_one);
        for s in grid.iter().filter(|s| **s > minus_one) {
            let value = num(&raw.eval(s)?);
            let slope = raw.slope_left_of(s)?;
            if left {
                let shifted = g
                    .left()
                    .iter()
                    .map(|gl| Ok(e.cooled(gl, s)?.sub(&num(s))))
                    .collect::<Result<Vec<_>, ThermoError>>()?;
                if slope == Slope::Flat {
                    t.check(shifted.iter().all(|x| !geq(x, &value)), || {
                        format!("{g} at {s}: flat λ̃ but an option reaches {value}")
                    });
                } else {
                    t.check(shifted.iter().any(|x| geq(x, &value)), || {
                        format!("{g} at {s}: falling λ̃ but no option reaches {value}")
                    });
                }
            } else {
                let shifted = g
                    .right()
                    .iter()
                    .map(|gr| Ok(e.cooled(gr, s)?.add(&num(s))))
                    .collect::<Result<Vec<_>, ThermoError>>()?;
                if slope == Slope::Flat {
                    t.check(shifted.iter().all(|x| !geq(&value, x)), || {
                        format!("{g} at {s}: flat ρ̃ but an option reaches {value}")
                    });
                } else {
                    t.check(shifted.iter().any(|x| geq(&value, x)), || {
                        format!("{g} at {s}: rising ρ̃ but no option reaches {value}")
                    });
                }
            }
        }
    }
    Ok(())
}

/// At its temperature a non-integer game cools to something numberish that
/// is not a number.
pub fn tepid(e: &E, games: &[Game]) -> Report {
    run("tepid", games, |g, t| {
        let r = (|| {
            if let Extended::Finite(temp) = e.temperature(g)? {
                let c = e.cooled(g, &temp)?;
                t.check(e.is_numberish(&c) && !e.is_number(&c), || {
                    format!("{g} at t = {temp} cools to {c}")
                });
            }
            Ok(())
        })();
        t.absorb(r, || format!("tepid {g}"));
    })
}

/// Above the temperature the unmasked cooled game is already a number.
pub fn raw_freeze(e: &E, games: &[Game]) -> Report {
    run("raw freeze", games, |g, t| {
        let r = (|| {
            let tg = e.thermograph(g)?;
            let Extended::Finite(temp) = &tg.temp else {
                return Ok(());
            };
            for s in corpus::augmented_grid(tg.breakpoints(), &D::int(-1)) {
                if s <= *temp {
                    continue;
                }
                let c = e.cooled_raw(g, &s)?;
                t.check(e.as_number(&c).is_some(), || {
                    format!("{g} at {s} > {temp}: raw cooling gives {c}")
                });
            }
            Ok(())
        })();
        t.absorb(r, || format!("raw freeze {g}"));
    })
}

/// Cooling by zero changes nothing.
pub fn identity(e: &E, games: &[Game]) -> Report {
    run("identity", games, |g, t| {
        let r = e.cooled(g, &D::zero()).map(|c| {
            t.check(compare(&c, g) == GameOrdering::Equal, || format!("{g} cools by 0 to {c}"))
        });
        t.absorb(r, || format!("identity {g}"));
    })
}

/// The grid points `> -1` for a pair, with both thermographs' breakpoints.
fn pair_grid(e: &E, g: &Game, h: &Game) -> Result<Vec<D>, ThermoError> {
    let extra: Vec<D> = [g, h]
        .iter()
        .map(|x| e.thermograph(x).map(|tg| tg.breakpoints()))
        .collect::<Result<Vec<_>, _>>()?
        .concat();
    let mut grid = corpus::augmented_grid(extra, &D::int(-1));
    grid.retain(|s| *s > D::int(-1));
    Ok(grid)
}

pub fn homomorphism(e: &E, pairs: &[(Game, Game)], ts: &[D]) -> Report {
    run("homomorphism", pairs, |(g, h), t| {
        let sum = g.add(h);
        for s in ts {
            let r = (|| {
                let lhs = e.cooled(&sum, s)?;
                let rhs = e.cooled(g, s)?.add(&e.cooled(h, s)?);
                t.check(compare(&lhs, &rhs) == GameOrdering::Equal, || {
                    format!("({g}) + ({h}) at {s}: {lhs} vs {rhs}")
                });
                Ok(())
            })();
            t.absorb(r, || format!("homomorphism ({g}) + ({h}) at {s}"));
        }
    })
}

/// `g >= h` implies `g_t >= h_t` on pairs with `g >= h`.
pub fn order_preservation(e: &E, pairs: &[(Game, Game)]) -> Report {
    run("order preservation", pairs, |(g, h), t| {
        let r = (|| {
            t.check(geq(g, h), || format!("pair ({g}, {h}) is not ordered"));
            for s in pair_grid(e, g, h)? {
                let (cg, ch) = (e.cooled(g, &s)?, e.cooled(h, &s)?);
                t.check(geq(&cg, &ch), || format!("({g}) >= ({h}) but at {s}: {cg} vs {ch}"));
            }
            Ok(())
        })();
        t.absorb(r, || format!("order ({g}, {h})"));
    })
}

/// `g ⊳ h` implies `g_t ⊳ h_t - t`.
pub fn strict_order(e: &E, pairs: &[(Game, Game)]) -> Report {
    run("strict order", pairs, |(g, h), t| {
        let r = (|| {
            t.check(!geq(h, g), || format!("pair ({g}, {h}) has {h} >= {g}"));
            for s in pair_grid(e, g, h)? {
                let cg = e.cooled(g, &s)?;
                let ch = e.cooled(h, &s)?.sub(&num(&s));
                t.check(!geq(&ch, &cg), || format!("({g}) ⊳ ({h}) but at {s}: {cg} vs {ch}"));
            }
            Ok(())
        })();
        t.absorb(r, || format!("strict order ({g}, {h})"));
    })
}

/// `(g_t)_u = g_{t+u}` for grid `t > -1` and `u >= 0`.
pub fn composition(e: &E, games: &[Game]) -> Report {
    let ts: Vec<D> = corpus::grid().into_iter().filter(|s| *s > D::int(-1)).collect();
    let us: Vec<D> = corpus::grid().into_iter().filter(|u| *u >= D::zero()).collect();
    run("composition", games, |g, t| {
        for s in &ts {
            for u in &us {
                let r = (|| {
                    let twice = e.cooled(&e.cooled(g, s)?, u)?;
                    let once = e.cooled(g, &(s + u))?;
                    t.check(compare(&twice, &once) == GameOrdering::Equal, || {
                        format!("{g} at {s} then {u}: {twice} vs {once}")
                    });
                    Ok(())
                })();
                t.absorb(r, || format!("composition {g} at {s}, {u}"));
            }
        }
    })
}

pub fn sum_temperature(e: &E, pairs: &[(Game, Game)]) -> Report {
    run("sum temperature", pairs, |(g, h), t| {
        let r = (|| {
            let (a, b) = (e.temperature(g)?, e.temperature(h)?);
            let s = e.temperature(&g.add(h))?;
            let bound = a.max(b);
            t.check(s <= bound, || format!("t(({g}) + ({h})) = {s} > {bound}"));
            Ok(())
        })();
        t.absorb(r, || format!("sum temperature ({g}, {h})"));
    })
}

pub fn mean_additivity(e: &E, pairs: &[(Game, Game)]) -> Report {
    run("mean additivity", pairs, |(g, h), t| {
        let r = (|| {
            let m = e.mean_value(&g.add(h))?;
            let parts = e.mean_value(g)?.checked_add(&e.mean_value(h)?)?;
            t.check(m == parts, || format!("m(({g}) + ({h})) = {m} vs {parts}"));
            Ok(())
        })();
        t.absorb(r, || format!("mean ({g}, {h})"));
    })
}

/// The strict bound around `n` times the mean with `C = t + 1` at
/// `t = t(g) + 1`.
pub fn mean_bound(e: &E, games: &[Game], max_n: u32) -> Report {
    let cases: Vec<(Game, u32)> = games
        .iter()
        .flat_map(|g| (1..=max_n).map(move |n| (g.clone(), n)))
        .collect();
    run("mean bound", &cases, |(g, n), t| {
        let r = (|| {
            let at = match e.temperature(g)? {
                Extended::Finite(x) => x.checked_add(&D::one())?,
                _ => D::zero(),
            };
            let ok = e.mean_bound_check(g, *n, &at)?;
            t.check(ok, || format!("{n}·({g}) outside the bound at t = {at}"));
            Ok(())
        })();
        t.absorb(r, || format!("mean bound {n}·({g})"));
    })
}

pub fn integer_decision(e: &E, games: &[Game]) -> Report {
    run("integer decision", games, |g, t| {
        let r = e.integer_decision(g).map(|d| {
            let expected = e.as_integer(g);
            t.check(d == expected, || format!("{g}: decided {d:?}, actually {expected:?}"));
        });
        t.absorb(r, || format!("integer decision {g}"));
    })
}

/// Numbers do not change under cooling by `t >= 0`.
pub fn number_remark(e: &E, games: &[Game]) -> Report {
    let ts: Vec<D> = corpus::grid().into_iter().filter(|s| *s >= D::zero()).collect();
    run("numbers stay put", games, |g, t| {
        if !e.is_number(g) {
            return;
        }
        for s in &ts {
            let r = e.cooled(g, s).map(|c| {
                t.check(compare(&c, g) == GameOrdering::Equal, || format!("{g} cools by {s} to {c}"))
            });
            t.absorb(r, || format!("number {g} at {s}"));
        }
    })
}

/// Temperature classes against stops.
pub fn classification(e: &E, games: &[Game]) -> Report {
    run("classification", games, |g, t| {
        let r = e.classify(g).map(|c| {
            let numberish = e.is_numberish(g);
            let number = e.is_number(g);
            let expected = match (number, numberish) {
                (true, _) => Classification::Number,
                (false, true) => Classification::NumberishNotNumber,
                (false, false) => Classification::Hot,
            };
            t.check(c == expected, || format!("{g}: classified {c:?}, stops say {expected:?}"));
        });
        t.absorb(r, || format!("classify {g}"));
    })
}

/// Group and order laws of the game operations, and stop monotonicity.
pub fn game_laws(e: &E, pairs: &[(Game, Game)]) -> Report {
    run("game laws", pairs, |(g, h), t| {
        let zero = Game::zero();
        t.check(compare(&g.sub(g), &zero) == GameOrdering::Equal, || format!("{g} - {g} != 0"));
        t.check(compare(&g.add(h), &h.add(g)) == GameOrdering::Equal, || format!("({g}) + ({h}) not commutative"));
        let c = canonicalize(g);
        t.check(compare(&c, g) == GameOrdering::Equal && canonicalize(&c) == c, || {
            format!("canonical form {c} of {g}")
        });
        let (gh, hg) = (geq(g, h), geq(h, g));
        t.check((gh && hg) == (canonicalize(g) == canonicalize(h)), || {
            format!("({g}, {h}): equality disagrees with canonical forms")
        });
        let expected = match (gh, hg) {
            (true, true) => GameOrdering::Equal,
            (true, false) => GameOrdering::Greater,
            (false, true) => GameOrdering::Less,
            (false, false) => GameOrdering::Confused,
        };
        t.check(compare(g, h) == expected, || format!("compare({g}, {h})"));
        let (sg, sh) = (e.stops(g), e.stops(h));
        t.check(sg.left >= sg.right, || format!("{g}: L < R"));
        if gh {
            t.check(sg.left >= sh.left && sg.right >= sh.right, || {
                format!("({g}) >= ({h}) but stops do not follow")
            });
        }
        let sum = e.stops(&g.add(h));
        let hi = &sg.left + &sh.left;
        let lo = &sg.right + &sh.right;
        t.check(sum.left <= hi && sum.right >= lo, || {
            format!("stops of ({g}) + ({h}) outside [{lo}, {hi}]")
        });
    })
}

/// The mean-bound games: `{2|0}`, `{1|-1}`, `{3|{2|-1}}` and `*`.
pub fn mean_bound_games() -> Vec<Game> {
    let n = |x: i64| num(&D::int(x));
    vec![
        Game::new(vec![n(2)], vec![n(0)]),
        Game::new(vec![n(1)], vec![n(-1)]),
        Game::new(vec![n(3)], vec![Game::new(vec![n(2)], vec![n(-1)])]),
        Game::star(),
    ]
}

/// Every suite at the given bounds.
pub fn run_all(e: &E, b: &Bounds) -> Vec<Report> {
    let games = unary_suite(b);
    let young: Vec<Game> = games.iter().filter(|g| g.birthday() <= 4).cloned().collect();
    let pairs = pairs(b);
    let hom_ts: Vec<D> = ["-1/2", "0", "1/2", "1", "2"].iter().map(|s| s.parse().unwrap()).collect();
    vec![
        dyadic_numbers(e),
        existence(e, &games),
        integer_stop(e, &young),
        comparison(e, &young),
        tepid(e, &games),
        raw_freeze(e, &games),
        identity(e, &games),
        homomorphism(e, &pairs, &hom_ts),
        order_preservation(e, &ordered_pairs(b)),
        strict_order(e, &not_below_pairs(b)),
        composition(e, &young),
        sum_temperature(e, &pairs),
        mean_additivity(e, &pairs),
        mean_bound(e, &mean_bound_games(), 8),
        integer_decision(e, &games),
        number_remark(e, &games),
        classification(e, &games),
        game_laws(e, &pairs),
    ]
}
