//! Short partizan games as hash-consed formal trees.
//!
//! Every [`Game`] is interned: two structurally identical trees (same left and
//! right option lists, in the same order) are the same node and compare equal
//! by identity. The structural operations here (sum, negation, comparison,
//! canonical form) do not depend on any number type and memoize into
//! process-wide tables keyed by node identity.

mod canonical;
mod order;
mod values;

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::atomic::{AtomicU32, AtomicUsize, Ordering as AtomicOrdering};
use std::sync::{Arc, LazyLock};

use dashmap::DashMap;

pub use canonical::canonicalize;
pub use order::{compare, geq, GameOrdering};
pub use values::{canonical_number_value, number_to_game, Stops};

/// Stable identity of an interned game node.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GameId(u32);

impl GameId {
    pub fn index(self) -> u32 {
        self.0
    }
}

struct Node {
    id: GameId,
    birthday: u32,
    left: Box<[Game]>,
    right: Box<[Game]>,
}

/// A formal short game `{ left options | right options }`.
#[derive(Clone)]
pub struct Game(Arc<Node>);

type NodeKey = (Box<[GameId]>, Box<[GameId]>);

static INTERNER: LazyLock<DashMap<NodeKey, Game>> = LazyLock::new(DashMap::new);
static NEXT_ID: AtomicU32 = AtomicU32::new(0);

impl Game {
    /// Intern `{ left | right }`. Option order and duplicates are kept.
    pub fn new(left: Vec<Game>, right: Vec<Game>) -> Game {
        let key: NodeKey = (
            left.iter().map(Game::id).collect(),
            right.iter().map(Game::id).collect(),
        );
        if let Some(existing) = INTERNER.get(&key) {
            return existing.clone();
        }
        INTERNER
            .entry(key)
            .or_insert_with(|| {
                let birthday = left
                    .iter()
                    .chain(right.iter())
                    .map(|g| g.birthday() + 1)
                    .max()
                    .unwrap_or(0);
                let id = GameId(NEXT_ID.fetch_add(1, AtomicOrdering::Relaxed));
                Game(Arc::new(Node {
                    id,
                    birthday,
                    left: left.into_boxed_slice(),
                    right: right.into_boxed_slice(),
                }))
            })
            .clone()
    }

    pub fn zero() -> Game {
        Game::new(vec![], vec![])
    }

    /// `* = {0|0}`.
    pub fn star() -> Game {
        let z = Game::zero();
        Game::new(vec![z.clone()], vec![z])
    }

    pub fn id(&self) -> GameId {
        self.0.id
    }

    pub fn left(&self) -> &[Game] {
        &self.0.left
    }

    pub fn right(&self) -> &[Game] {
        &self.0.right
    }

    /// Formal birthday: height of the tree, 0 for `{|}`.
    pub fn birthday(&self) -> u32 {
        self.0.birthday
    }

    pub fn is_zero_node(&self) -> bool {
        self.left().is_empty() && self.right().is_empty()
    }

    /// Mirror image: every left option becomes a right option, recursively.
    pub fn negate(&self) -> Game {
        if let Some(n) = CACHES.negate.get(&self.id()) {
            return n.clone();
        }
        let n = Game::new(
            self.right().iter().map(Game::negate).collect(),
            self.left().iter().map(Game::negate).collect(),
        );
        CACHES.insert_negate(self.id(), n.clone());
        CACHES.insert_negate(n.id(), self.clone());
        n
    }

    /// Disjunctive sum `{ G^L + H, G + H^L | G^R + H, G + H^R }`.
    pub fn add(&self, other: &Game) -> Game {
        if other.is_zero_node() {
            return self.clone();
        }
        if self.is_zero_node() {
            return other.clone();
        }
        let key = (self.id(), other.id());
        if let Some(s) = CACHES.sum.get(&key) {
            return s.clone();
        }
        let left = self
            .left()
            .iter()
            .map(|gl| gl.add(other))
            .chain(other.left().iter().map(|hl| self.add(hl)))
            .collect();
        let right = self
            .right()
            .iter()
            .map(|gr| gr.add(other))
            .chain(other.right().iter().map(|hr| self.add(hr)))
            .collect();
        let s = Game::new(left, right);
        CACHES.insert_sum(key, s.clone());
        s
    }

    /// `self + (-other)`.
    pub fn sub(&self, other: &Game) -> Game {
        self.add(&other.negate())
    }

    /// Deterministic structural order: birthday first, then option lists
    /// lexicographically. Independent of interning order.
    pub fn structural_cmp(&self, other: &Game) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        fn lex(a: &[Game], b: &[Game]) -> Ordering {
            a.len().cmp(&b.len()).then_with(|| {
                a.iter()
                    .zip(b)
                    .map(|(x, y)| x.structural_cmp(y))
                    .find(|o| o.is_ne())
                    .unwrap_or(Ordering::Equal)
            })
        }
        self.birthday()
            .cmp(&other.birthday())
            .then_with(|| lex(self.left(), other.left()))
            .then_with(|| lex(self.right(), other.right()))
    }

    /// Number of distinct nodes reachable from this one (itself included).
    pub fn dag_size(&self) -> usize {
        let mut seen = std::collections::HashSet::new();
        let mut stack = vec![self.clone()];
        while let Some(g) = stack.pop() {
            if seen.insert(g.id()) {
                stack.extend(g.left().iter().cloned());
                stack.extend(g.right().iter().cloned());
            }
        }
        seen.len()
    }
}

impl PartialEq for Game {
    fn eq(&self, other: &Self) -> bool {
        self.id() == other.id()
    }
}

impl Eq for Game {}

impl Hash for Game {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.id().hash(state);
    }
}

impl fmt::Debug for Game {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Process-wide memo tables for the scalar-free operations.
struct Caches {
    negate: DashMap<GameId, Game>,
    sum: DashMap<(GameId, GameId), Game>,
    geq: DashMap<(GameId, GameId), bool>,
    canonical: DashMap<GameId, Game>,
}

static CACHES: LazyLock<Caches> = LazyLock::new(|| Caches {
    negate: DashMap::new(),
    sum: DashMap::new(),
    geq: DashMap::new(),
    canonical: DashMap::new(),
});

/// 0 means unbounded.
static CACHE_LIMIT: AtomicUsize = AtomicUsize::new(0);

fn bounded_insert<K: Eq + Hash, V>(map: &DashMap<K, V>, key: K, value: V) {
    let limit = CACHE_LIMIT.load(AtomicOrdering::Relaxed);
    if limit > 0 && map.len() >= limit {
        map.clear();
    }
    map.insert(key, value);
}

impl Caches {
    fn insert_negate(&self, k: GameId, v: Game) {
        bounded_insert(&self.negate, k, v);
    }
    fn insert_sum(&self, k: (GameId, GameId), v: Game) {
        bounded_insert(&self.sum, k, v);
    }
    fn insert_geq(&self, k: (GameId, GameId), v: bool) {
        bounded_insert(&self.geq, k, v);
    }
    fn insert_canonical(&self, k: GameId, v: Game) {
        bounded_insert(&self.canonical, k, v);
    }
}

/// Cap every structural memo table at `limit` entries (a full table is
/// flushed before the next insert). `None` restores unbounded caching.
pub fn set_cache_limit(limit: Option<usize>) {
    CACHE_LIMIT.store(limit.unwrap_or(0), AtomicOrdering::Relaxed);
}

/// Drop all structural memo entries. Interned nodes stay alive.
pub fn clear_caches() {
    CACHES.negate.clear();
    CACHES.sum.clear();
    CACHES.geq.clear();
    CACHES.canonical.clear();
}

/// Number of interned nodes so far.
pub fn interned_count() -> usize {
    INTERNER.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interning_shares_identity() {
        let a = Game::new(vec![Game::zero()], vec![Game::zero()]);
        assert_eq!(a, Game::star());
        assert_eq!(a.id(), Game::star().id());
        let dup = Game::new(vec![Game::zero(), Game::zero()], vec![]);
        let single = Game::new(vec![Game::zero()], vec![]);
        assert_ne!(dup, single);
        assert_eq!(dup.left().len(), 2);
    }

    #[test]
    fn birthdays() {
        let one = Game::new(vec![Game::zero()], vec![]);
        let two = Game::new(vec![one.clone()], vec![]);
        assert_eq!(Game::zero().birthday(), 0);
        assert_eq!(Game::star().birthday(), 1);
        assert_eq!(Game::new(vec![two], vec![Game::zero()]).birthday(), 3);
    }

    #[test]
    fn negation() {
        let one = Game::new(vec![Game::zero()], vec![]);
        let two = Game::new(vec![one.clone()], vec![]);
        let switch = Game::new(vec![two.clone()], vec![Game::zero()]);
        assert_eq!(Game::zero().negate(), Game::zero());
        let neg = switch.negate();
        assert_eq!(neg.left(), &[Game::zero()]);
        assert_eq!(neg.right(), &[two.negate()]);
        assert_eq!(two.negate().right()[0], one.negate());
        assert_eq!(neg.negate(), switch);
    }

    #[test]
    fn adding_zero_is_identity() {
        let g = Game::new(vec![Game::star()], vec![Game::zero(), Game::star()]);
        assert_eq!(g.add(&Game::zero()), g);
        assert_eq!(Game::zero().add(&g), g);
    }

    #[test]
    fn sum_options() {
        let s = Game::star().add(&Game::star());
        assert_eq!(s.left(), &[Game::star(), Game::star()]);
        assert_eq!(s.right(), &[Game::star(), Game::star()]);
    }

    #[test]
    fn structural_order_is_total_and_deterministic() {
        let one = Game::new(vec![Game::zero()], vec![]);
        let games = [Game::zero(), Game::star(), one.clone(), one.negate()];
        for a in &games {
            for b in &games {
                assert_eq!(a.structural_cmp(b), b.structural_cmp(a).reverse());
                assert_eq!(a.structural_cmp(b).is_eq(), a == b);
            }
        }
    }
}
