use std::fmt;

use super::{Game, CACHES};

/// Outcome of comparing two games as values.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GameOrdering {
    Greater,
    Less,
    Equal,
    /// Neither `G >= H` nor `H >= G`.
    Confused,
}

impl fmt::Display for GameOrdering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GameOrdering::Greater => ">",
            GameOrdering::Less => "<",
            GameOrdering::Equal => "=",
            GameOrdering::Confused => "||",
        })
    }
}

/// `G >= H`: no right option of `G` is `<= H` and no left option of `H` is
/// `>= G`.
pub fn geq(g: &Game, h: &Game) -> bool {
    if g == h {
        return true;
    }
    let key = (g.id(), h.id());
    if let Some(v) = CACHES.geq.get(&key) {
        return *v;
    }
    let result =
        !g.right().iter().any(|gr| geq(h, gr)) && !h.left().iter().any(|hl| geq(hl, g));
    CACHES.insert_geq(key, result);
    result
}

pub fn compare(g: &Game, h: &Game) -> GameOrdering {
    match (geq(g, h), geq(h, g)) {
        (true, true) => GameOrdering::Equal,
        (true, false) => GameOrdering::Greater,
        (false, true) => GameOrdering::Less,
        (false, false) => GameOrdering::Confused,
    }
}
