//! Deterministic game collections for property checks.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dyadic::{Dyadic, DyadicInt};
use crate::games::{number_to_game, Game};

/// `0, *, 1, -1, 1/2, -1/2`.
pub fn atoms() -> Vec<Game> {
    let n = |k: i64, m: u32| number_to_game(&Dyadic::<i64>::frac(k, m));
    vec![Game::zero(), Game::star(), n(1, 0), n(-1, 0), n(1, 1), n(-1, 1)]
}

/// Every multiset of at most `k` elements of `items`.
pub fn multisets(items: &[Game], k: usize) -> Vec<Vec<Game>> {
    let mut out = vec![Vec::new()];
    let mut frontier = vec![(Vec::new(), 0usize)];
    for _ in 0..k {
        let mut next = Vec::new();
        for (set, from) in &frontier {
            for (i, g) in items.iter().enumerate().skip(*from) {
                let mut s: Vec<Game> = set.clone();
                s.push(g.clone());
                out.push(s.clone());
                next.push((s, i));
            }
        }
        frontier = next;
    }
    out
}

/// The atoms plus `{A|B}` for all multisets `A`, `B` of at most two atoms.
pub fn small_suite() -> Vec<Game> {
    let sets = multisets(&atoms(), 2);
    let mut games = atoms();
    for a in &sets {
        for b in &sets {
            games.push(Game::new(a.clone(), b.clone()));
        }
    }
    games
}

/// Two further layers of nesting over the small suite: `count` games of
/// birthday at most 4 and `count` of birthday at most 5, each with at most
/// two options per side.
pub fn deep_sample(count: usize, seed: u64) -> Vec<Game> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let small = small_suite();
    let layer = |pool: &[Game], rng: &mut ChaCha8Rng| -> Vec<Game> {
        (0..count)
            .map(|_| {
                let side = |rng: &mut ChaCha8Rng| -> Vec<Game> {
                    let k = rng.gen_range(0..=2);
                    (0..k).map(|_| pool.choose(rng).unwrap().clone()).collect()
                };
                let left = side(rng);
                let right = side(rng);
                Game::new(left, right)
            })
            .collect()
    };
    let four = layer(&small, &mut rng);
    let mut five = layer(&four, &mut rng);
    let mut out = four;
    out.append(&mut five);
    out
}

/// A random game of birthday at most `depth` with up to two options per
/// side; leaves are drawn from the atoms.
pub fn random_game<R: Rng>(rng: &mut R, depth: u32) -> Game {
    if depth == 0 {
        return Game::zero();
    }
    if depth <= 2 || rng.gen_bool(0.25) {
        let atoms = atoms();
        let pool: &[Game] = if depth >= 2 { &atoms } else { &atoms[..1] };
        if rng.gen_bool(0.5) {
            return pool.choose(rng).unwrap().clone();
        }
    }
    let side = |rng: &mut R| -> Vec<Game> {
        let k = rng.gen_range(0..=2);
        (0..k).map(|_| random_game(rng, depth - 1)).collect()
    };
    let left = side(rng);
    let right = side(rng);
    Game::new(left, right)
}

pub fn random_games(count: usize, depth: u32, seed: u64) -> Vec<Game> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_game(&mut rng, depth)).collect()
}

pub fn random_pairs(count: usize, depth: u32, seed: u64) -> Vec<(Game, Game)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| (random_game(&mut rng, depth), random_game(&mut rng, depth)))
        .collect()
}

/// `-3/4, -1/2, ..., 3` in steps of `1/4`.
pub fn grid<I: DyadicInt>() -> Vec<Dyadic<I>> {
    (-3..=12).map(|k| Dyadic::frac(k, 2)).collect()
}

/// Sorted union of the grid and `extra`, keeping only points `>= lo`.
pub fn augmented_grid<I: DyadicInt>(extra: impl IntoIterator<Item = Dyadic<I>>, lo: &Dyadic<I>) -> Vec<Dyadic<I>> {
    let mut ts: Vec<Dyadic<I>> = grid().into_iter().chain(extra).filter(|t| t >= lo).collect();
    ts.sort();
    ts.dedup();
    ts
}
