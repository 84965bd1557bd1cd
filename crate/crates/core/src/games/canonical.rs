use super::{geq, Game, CACHES};

/// The canonical (simplest) form of `g`: dominated options removed and
/// reversible options bypassed until neither applies. Equal games have
/// identical canonical forms.
pub fn canonicalize(g: &Game) -> Game {
    if let Some(c) = CACHES.canonical.get(&g.id()) {
        return c.clone();
    }
    let mut left: Vec<Game> = g.left().iter().map(canonicalize).collect();
    let mut right: Vec<Game> = g.right().iter().map(canonicalize).collect();
    loop {
        left = undominated(left, |a, b| geq(a, b));
        right = undominated(right, |a, b| geq(b, a));
        let current = Game::new(left.clone(), right.clone());

        let mut changed = false;
        let mut next_left = Vec::with_capacity(left.len());
        for gl in &left {
            // G^L is reversible through G^LR when G^LR <= G
            match gl.right().iter().find(|glr| geq(&current, glr)) {
                Some(glr) => {
                    next_left.extend(glr.left().iter().cloned());
                    changed = true;
                }
                None => next_left.push(gl.clone()),
            }
        }
        let mut next_right = Vec::with_capacity(right.len());
        for gr in &right {
            match gr.left().iter().find(|grl| geq(grl, &current)) {
                Some(grl) => {
                    next_right.extend(grl.right().iter().cloned());
                    changed = true;
                }
                None => next_right.push(gr.clone()),
            }
        }
        if !changed {
            break;
        }
        left = next_left;
        right = next_right;
    }
    left.sort_by(|a, b| a.structural_cmp(b));
    right.sort_by(|a, b| a.structural_cmp(b));
    let c = Game::new(left, right);
    CACHES.insert_canonical(g.id(), c.clone());
    CACHES.insert_canonical(c.id(), c.clone());
    c
}

/// Drop duplicates and every option beaten by another one. `better(a, b)`
/// says `a` is at least as good as `b` for the owner of the options. All
/// inputs are canonical, so equal options are identical.
fn undominated(mut options: Vec<Game>, better: impl Fn(&Game, &Game) -> bool) -> Vec<Game> {
    options.sort_by_key(Game::id);
    options.dedup();
    let keep: Vec<bool> = options
        .iter()
        .map(|x| !options.iter().any(|y| y != x && better(y, x)))
        .collect();
    options
        .into_iter()
        .zip(keep)
        .filter_map(|(g, k)| k.then_some(g))
        .collect()
}
